//! Seeded random generators for the randomized suites.

use rand::seq::SliceRandom;
use rand::Rng;

use super::{enumerate, is_acyclic, Hom, Kind, StructCat, Structure};

/// A random object whose carriers are at most `max` (per sort).
pub fn object<R: Rng>(cat: &StructCat, max: usize, rng: &mut R) -> Structure {
    match cat.kind() {
        Kind::FinSet => cat.set(rng.gen_range(0..=max)),
        Kind::FinGraph => {
            let nv = rng.gen_range(0..=max);
            let ne = if nv == 0 { 0 } else { rng.gen_range(0..=max) };
            let edges: Vec<(usize, usize)> = (0..ne).map(|_| (rng.gen_range(0..nv), rng.gen_range(0..nv))).collect();
            cat.graph(nv, &edges).expect("endpoints in range")
        }
        Kind::RelSet => {
            let n = rng.gen_range(0..=max);
            let pairs: Vec<(usize, usize)> =
                (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).filter(|_| rng.gen_bool(0.3)).collect();
            cat.relation(n, &pairs).expect("in range")
        }
        Kind::AcyclicRel => {
            let n = rng.gen_range(0..=max);
            let mut order: Vec<usize> = (0..n).collect();
            order.shuffle(rng);
            let mut pairs = Vec::new();
            for i in 0..n {
                for j in i + 1..n {
                    if rng.gen_bool(0.4) {
                        pairs.push((order[i], order[j]));
                    }
                }
            }
            cat.relation(n, &pairs).expect("acyclic by construction")
        }
    }
}

/// A uniformly chosen morphism `x → y`, if there is one.
pub fn hom<R: Rng>(cat: &StructCat, x: &Structure, y: &Structure, rng: &mut R) -> Option<Hom> {
    enumerate::homs(cat.kind(), x, y).choose(rng).cloned()
}

/// An inclusion `c ↪ a` adding `extra` new elements (and, for graphs, edges)
/// with random structure touching them. With `regular = false` relational
/// kinds also gain pairs between old elements, so the inclusion stops
/// reflecting the relation whenever such a pair can be added.
pub fn extension<R: Rng>(cat: &StructCat, c: &Structure, extra: usize, regular: bool, rng: &mut R) -> Hom {
    let kind = cat.kind();
    let a = match kind {
        Kind::FinSet => cat.set(c.sorts[0] + extra),
        Kind::FinGraph => {
            let nv = c.sorts[0] + extra;
            let mut edges: Vec<(usize, usize)> = c.ops[0].iter().copied().zip(c.ops[1].iter().copied()).collect();
            if nv > 0 {
                for _ in 0..rng.gen_range(0..=extra) {
                    edges.push((rng.gen_range(0..nv), rng.gen_range(0..nv)));
                }
            }
            cat.graph(nv, &edges).expect("in range")
        }
        Kind::RelSet | Kind::AcyclicRel => {
            let old = c.sorts[0];
            let n = old + extra;
            let mut rel = c.rel.clone();
            let mut candidates: Vec<(usize, usize)> =
                (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).filter(|&(x, y)| x >= old || y >= old).collect();
            candidates.shuffle(rng);
            let take = rng.gen_range(0..=candidates.len().min(2 * extra + 1));
            let mut additions: Vec<(usize, usize)> = candidates.into_iter().take(take).collect();
            if !regular {
                let mut inner: Vec<(usize, usize)> =
                    (0..old).flat_map(|x| (0..old).map(move |y| (x, y))).filter(|p| !c.related(p.0, p.1)).collect();
                inner.shuffle(rng);
                additions.extend(inner.into_iter().take(1));
            }
            if kind == Kind::AcyclicRel {
                rel.extend((old..n).map(|i| (i, i)));
            }
            for p in additions {
                let mut trial = rel.clone();
                trial.push(p);
                trial.sort_unstable();
                trial.dedup();
                let s = Structure { sorts: vec![n], ops: vec![], rel: trial.clone() };
                if kind != Kind::AcyclicRel || is_acyclic(&s) {
                    rel = trial;
                }
            }
            rel.sort_unstable();
            rel.dedup();
            Structure { sorts: vec![n], ops: vec![], rel }
        }
    };
    let maps = c.sorts.iter().map(|&n| (0..n).collect()).collect();
    cat.morphism(c, &a, maps).expect("inclusion preserves structure")
}

/// An isomorphism `x' → x` from a randomly relabelled copy of `x`.
pub fn relabel<R: Rng>(cat: &StructCat, x: &Structure, rng: &mut R) -> Hom {
    let perms: Vec<Vec<usize>> = x
        .sorts
        .iter()
        .map(|&n| {
            let mut p: Vec<usize> = (0..n).collect();
            p.shuffle(rng);
            p
        })
        .collect();
    let copy = enumerate::permute(cat.kind(), x, &perms);
    let inverse = perms
        .iter()
        .map(|p| {
            let mut inv = vec![0; p.len()];
            p.iter().enumerate().for_each(|(old, &new)| inv[new] = old);
            inv
        })
        .collect();
    Hom { dom: copy, cod: x.clone(), maps: inverse }
}

/// A random inclusion with domain carriers at most `max` and up to `extra`
/// added elements.
pub fn mono<R: Rng>(cat: &StructCat, max: usize, extra: usize, regular: bool, rng: &mut R) -> Hom {
    let c = object(cat, max, rng);
    let k = rng.gen_range(0..=extra);
    extension(cat, &c, k, regular, rng)
}
