//! Test-side oracles. They work on raw tables and never call the crate's
//! limit or colimit code.

#![allow(dead_code)]

use adhesive::{Hom, Kind, Square, StructCat, Structure};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Element tables of a square, per sort.
struct Tables<'a> {
    m: &'a [usize],
    f: &'a [usize],
    g: &'a [usize],
    n: &'a [usize],
    c: usize,
    a: usize,
    b: usize,
    d: usize,
}

fn sort_tables(sq: &Square<Hom>, s: usize) -> Tables<'_> {
    Tables {
        m: &sq.m.maps[s],
        f: &sq.f.maps[s],
        g: &sq.g.maps[s],
        n: &sq.n.maps[s],
        c: sq.m.dom.sorts[s],
        a: sq.m.cod.sorts[s],
        b: sq.f.cod.sorts[s],
        d: sq.g.cod.sorts[s],
    }
}

fn commutes(t: &Tables) -> bool {
    (0..t.c).all(|x| t.g[t.m[x]] == t.n[t.f[x]])
}

/// `C → A ×_D B` is a bijection of sets.
fn set_pullback(t: &Tables) -> bool {
    if !commutes(t) {
        return false;
    }
    let mut pairs = Vec::new();
    for x in 0..t.a {
        for y in 0..t.b {
            if t.g[x] == t.n[y] {
                pairs.push((x, y));
            }
        }
    }
    let mut image: Vec<(usize, usize)> = (0..t.c).map(|z| (t.m[z], t.f[z])).collect();
    image.sort_unstable();
    let before = image.len();
    image.dedup();
    image.len() == before && image.len() == pairs.len()
}

struct Dsu(Vec<usize>);

impl Dsu {
    fn find(&mut self, x: usize) -> usize {
        if self.0[x] != x {
            let r = self.find(self.0[x]);
            self.0[x] = r;
        }
        self.0[x]
    }
    fn union(&mut self, x: usize, y: usize) {
        let (a, b) = (self.find(x), self.find(y));
        self.0[a] = b;
    }
}

/// The classes of `A ⊔ B / m(c) ~ f(c)` map bijectively onto `D`.
fn set_pushout(t: &Tables) -> bool {
    if !commutes(t) {
        return false;
    }
    let mut dsu = Dsu((0..t.a + t.b).collect());
    for z in 0..t.c {
        dsu.union(t.m[z], t.a + t.f[z]);
    }
    let mut class_to_d = std::collections::HashMap::new();
    for x in 0..t.a + t.b {
        let d = if x < t.a { t.g[x] } else { t.n[x - t.a] };
        let r = dsu.find(x);
        if *class_to_d.entry(r).or_insert(d) != d {
            return false;
        }
    }
    let mut hit: Vec<usize> = class_to_d.values().copied().collect();
    hit.sort_unstable();
    hit.dedup();
    hit.len() == class_to_d.len() && hit.len() == t.d
}

fn related_image(h: &Hom, x: usize, y: usize) -> bool {
    h.cod.rel.contains(&(h.maps[0][x], h.maps[0][y]))
}

/// Pullback oracle for FinSet, FinGraph (sortwise) and RelSet (elements
/// plus: `C` relates exactly the pairs related in both `A` and `B`).
pub fn is_pullback(kind: Kind, sq: &Square<Hom>) -> bool {
    let sorts = sq.m.dom.sorts.len();
    if !(0..sorts).all(|s| set_pullback(&sort_tables(sq, s))) {
        return false;
    }
    match kind {
        Kind::FinSet | Kind::FinGraph => true,
        Kind::RelSet => {
            let c = sq.m.dom.sorts[0];
            (0..c).all(|x| {
                (0..c).all(|y| sq.m.dom.related(x, y) == (related_image(&sq.m, x, y) && related_image(&sq.f, x, y)))
            })
        }
        Kind::AcyclicRel => panic!("the oracle covers FinSet, FinGraph and RelSet"),
    }
}

/// Pushout oracle for FinSet, FinGraph (sortwise) and RelSet (elements
/// plus: `D` relates exactly the images of pairs in `A` or `B`).
pub fn is_pushout(kind: Kind, sq: &Square<Hom>) -> bool {
    let sorts = sq.m.dom.sorts.len();
    if !(0..sorts).all(|s| set_pushout(&sort_tables(sq, s))) {
        return false;
    }
    match kind {
        Kind::FinSet | Kind::FinGraph => true,
        Kind::RelSet => {
            let mut rel: Vec<(usize, usize)> = Vec::new();
            for h in [&sq.g, &sq.n] {
                rel.extend(h.dom.rel.iter().map(|&(x, y)| (h.maps[0][x], h.maps[0][y])));
            }
            rel.sort_unstable();
            rel.dedup();
            rel == sq.g.cod.rel
        }
        Kind::AcyclicRel => panic!("the oracle covers FinSet, FinGraph and RelSet"),
    }
}

/// Regular monos: injective in FinSet/FinGraph; injective and
/// relation-reflecting in RelSet.
pub fn is_regular_mono(kind: Kind, h: &Hom) -> bool {
    let injective = h.maps.iter().all(|t| {
        let mut v = t.clone();
        v.sort_unstable();
        v.windows(2).all(|w| w[0] != w[1])
    });
    match kind {
        Kind::FinSet | Kind::FinGraph => injective,
        _ => {
            let n = h.dom.sorts[0];
            injective && (0..n).all(|x| (0..n).all(|y| h.dom.related(x, y) || !related_image(h, x, y)))
        }
    }
}

/// All maps between plain sets of the given sizes.
pub fn all_tables(dom: usize, cod: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..dom {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..cod).map(move |y| {
                    let mut t = t.clone();
                    t.push(y);
                    t
                })
            })
            .collect();
    }
    out
}

pub fn set_map(cat: &StructCat, dom: usize, cod: usize, table: &[usize]) -> Hom {
    cat.map(&cat.set(dom), &cat.set(cod), table).unwrap()
}

pub fn size_of(s: &Structure) -> usize {
    s.sorts.iter().sum::<usize>() + s.rel.len()
}
