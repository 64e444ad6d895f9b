//! The reflector onto relations without nontrivial cycles: collapse every
//! strongly connected component of the relation to a point.

use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;

use super::{compose_raw, identity_raw, Hom, Structure};

fn components(s: &Structure) -> Vec<Vec<usize>> {
    let n = s.sorts[0];
    let mut g = DiGraph::<(), ()>::with_capacity(n, s.rel.len());
    let nodes: Vec<_> = (0..n).map(|_| g.add_node(())).collect();
    for &(x, y) in &s.rel {
        if x != y {
            g.add_edge(nodes[x], nodes[y], ());
        }
    }
    tarjan_scc(&g).into_iter().map(|c| c.into_iter().map(|ix| ix.index()).collect()).collect()
}

/// True when the relation minus the diagonal has no directed cycle.
pub fn is_acyclic(s: &Structure) -> bool {
    components(s).iter().all(|c| c.len() == 1)
}

/// The quotient map `s → s'` collapsing cycles, iterated to a fixpoint.
pub fn reflect(s: &Structure) -> Hom {
    let mut acc = identity_raw(s);
    loop {
        let comps = components(&acc.cod);
        if comps.iter().all(|c| c.len() == 1) {
            return acc;
        }
        let n = acc.cod.sorts[0];
        let mut least = vec![0; n];
        for c in &comps {
            let lo = *c.iter().min().expect("nonempty component");
            c.iter().for_each(|&x| least[x] = lo);
        }
        // number classes by least member
        let mut index = vec![usize::MAX; n];
        let mut next = 0;
        let table: Vec<usize> = (0..n)
            .map(|x| {
                let r = least[x];
                if index[r] == usize::MAX {
                    index[r] = next;
                    next += 1;
                }
                index[r]
            })
            .collect();
        let mut rel: Vec<(usize, usize)> = acc.cod.rel.iter().map(|&(x, y)| (table[x], table[y])).collect();
        rel.sort_unstable();
        rel.dedup();
        let cod = Structure { sorts: vec![next], ops: vec![], rel };
        let step = Hom { dom: acc.cod.clone(), cod, maps: vec![table] };
        acc = compose_raw(&acc, &step);
    }
}
