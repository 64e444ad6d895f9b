//! Exhaustive enumeration of small objects (up to isomorphism) and of
//! hom-sets, plus canonical forms.

use std::collections::BTreeSet;

use itertools::Itertools;

use super::{is_acyclic, Hom, Kind, Structure, EDGES, VERTICES};
use crate::error::{CatError, Result};

/// Largest carrier for which acyclic relations are enumerated; the number of
/// labelled relations grows as `2^(n(n-1))`.
const ACYCLIC_CARRIER_LIMIT: usize = 4;

fn size_of(kind: Kind, s: &Structure) -> usize {
    match kind {
        Kind::FinSet | Kind::AcyclicRel => s.sorts[0],
        Kind::FinGraph => s.total(),
        Kind::RelSet => s.sorts[0] + s.rel.len(),
    }
}

pub(super) fn objects(kind: Kind, bound: usize) -> Result<Vec<Structure>> {
    let mut found = BTreeSet::new();
    match kind {
        Kind::FinSet => {
            found.extend((0..=bound).map(|n| Structure { sorts: vec![n], ops: vec![], rel: vec![] }));
        }
        Kind::FinGraph => {
            for nv in 0..=bound {
                let max_e = if nv == 0 { 0 } else { bound - nv };
                for ne in 0..=max_e {
                    let ends: Vec<(usize, usize)> = (0..nv).cartesian_product(0..nv).collect();
                    for choice in (0..ne).map(|_| ends.iter()).multi_cartesian_product() {
                        let s = Structure {
                            sorts: vec![nv, ne],
                            ops: vec![choice.iter().map(|e| e.0).collect(), choice.iter().map(|e| e.1).collect()],
                            rel: vec![],
                        };
                        found.insert(canonical(kind, &s));
                    }
                    if ne == 0 {
                        found.insert(canonical(
                            kind,
                            &Structure { sorts: vec![nv, 0], ops: vec![vec![], vec![]], rel: vec![] },
                        ));
                    }
                }
            }
        }
        Kind::RelSet => {
            for n in 0..=bound {
                let pairs: Vec<(usize, usize)> = (0..n).cartesian_product(0..n).collect();
                for k in 0..=(bound - n).min(pairs.len()) {
                    for rel in pairs.iter().copied().combinations(k) {
                        let s = Structure { sorts: vec![n], ops: vec![], rel };
                        found.insert(canonical(kind, &s));
                    }
                }
            }
        }
        Kind::AcyclicRel => {
            if bound > ACYCLIC_CARRIER_LIMIT {
                return Err(CatError::ClosureOverflow(format!(
                    "acyclic relations are enumerated up to carrier {ACYCLIC_CARRIER_LIMIT}"
                )));
            }
            for n in 0..=bound {
                let off: Vec<(usize, usize)> = (0..n).cartesian_product(0..n).filter(|(x, y)| x != y).collect();
                for mask in 0u64..(1 << off.len()) {
                    let mut rel: Vec<(usize, usize)> = (0..n).map(|i| (i, i)).collect();
                    rel.extend(off.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &p)| p));
                    rel.sort_unstable();
                    let s = Structure { sorts: vec![n], ops: vec![], rel };
                    if is_acyclic(&s) {
                        found.insert(canonical(kind, &s));
                    }
                }
            }
        }
    }
    let mut list: Vec<Structure> = found.into_iter().collect();
    // ties broken by relation size, then lexicographically
    list.sort_by_cached_key(|s| (size_of(kind, s), s.rel.len(), s.clone()));
    Ok(list)
}

/// `s` with every sort relabelled by `perms[sort]` (old index → new index).
pub(super) fn permute(kind: Kind, s: &Structure, perms: &[Vec<usize>]) -> Structure {
    let ops = kind
        .ops()
        .iter()
        .enumerate()
        .map(|(k, &(src, tgt))| {
            let mut table = vec![0; s.sorts[src]];
            for e in 0..s.sorts[src] {
                table[perms[src][e]] = perms[tgt][s.ops[k][e]];
            }
            table
        })
        .collect();
    let mut rel: Vec<(usize, usize)> = s.rel.iter().map(|&(x, y)| (perms[0][x], perms[0][y])).collect();
    rel.sort_unstable();
    Structure { sorts: s.sorts.clone(), ops, rel }
}

/// Least relabelling of `s` in the derived order.
pub(super) fn canonical(kind: Kind, s: &Structure) -> Structure {
    s.sorts
        .iter()
        .map(|&n| (0..n).permutations(n))
        .multi_cartesian_product()
        .map(|perms| permute(kind, s, &perms))
        .min()
        .unwrap_or_else(|| s.clone())
}

struct HomSearch<'a> {
    kind: Kind,
    x: &'a Structure,
    y: &'a Structure,
    slots: Vec<(usize, usize)>,
    /// Relation pairs of `x` whose larger endpoint is the given element.
    rel_at: Vec<Vec<(usize, usize)>>,
    maps: Vec<Vec<usize>>,
    out: Vec<Hom>,
}

impl HomSearch<'_> {
    fn consistent(&self, sort: usize, e: usize) -> bool {
        for (k, &(src, tgt)) in self.kind.ops().iter().enumerate() {
            if src == sort && self.maps[tgt][self.x.ops[k][e]] != self.y.ops[k][self.maps[src][e]] {
                return false;
            }
        }
        if sort == 0 && !self.rel_at.is_empty() {
            let m = &self.maps[0];
            return self.rel_at[e].iter().all(|&(a, b)| self.y.related(m[a], m[b]));
        }
        true
    }

    fn run(&mut self, depth: usize) {
        if depth == self.slots.len() {
            self.out.push(Hom { dom: self.x.clone(), cod: self.y.clone(), maps: self.maps.clone() });
            return;
        }
        let (sort, e) = self.slots[depth];
        for v in 0..self.y.sorts[sort] {
            self.maps[sort][e] = v;
            if self.consistent(sort, e) {
                self.run(depth + 1);
            }
        }
    }
}

/// All structure-preserving maps `x → y`, lexicographic in the tables.
pub(super) fn homs(kind: Kind, x: &Structure, y: &Structure) -> Vec<Hom> {
    // operations point from edges to vertices, so vertices are assigned first
    debug_assert!(kind.ops().iter().all(|&(s, t)| s == EDGES && t == VERTICES));
    let slots: Vec<(usize, usize)> = (0..x.sorts.len()).flat_map(|s| (0..x.sorts[s]).map(move |e| (s, e))).collect();
    let rel_at = if kind.relational() {
        let mut at = vec![Vec::new(); x.sorts[0]];
        for &(a, b) in &x.rel {
            at[a.max(b)].push((a, b));
        }
        at
    } else {
        Vec::new()
    };
    let mut search =
        HomSearch { kind, x, y, slots, rel_at, maps: x.sorts.iter().map(|&n| vec![0; n]).collect(), out: Vec::new() };
    search.run(0);
    search.out
}
