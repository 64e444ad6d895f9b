//! Concrete finite categories: finite sets, finite directed multigraphs,
//! sets with a binary relation, and the category of sets with a reflexive
//! relation admitting no nontrivial cycles.
//!
//! All four share one engine. An object is a [`Structure`]: one or more
//! sorted carriers (elements are `0..n`), unary operations between sorts
//! (graph source/target), and optionally a binary relation on sort 0. A
//! morphism is a [`Hom`]: one function per sort preserving operations and
//! the relation. Limits are computed sortwise; colimits are quotients of
//! coproducts, followed by the cycle-collapsing reflector for
//! [`Kind::AcyclicRel`].

mod enumerate;
pub mod gen;
pub mod json;
mod reflect;

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::category::{Category, Cospan, Span};
use crate::error::{CatError, Result};

pub use reflect::{is_acyclic, reflect};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    FinSet,
    FinGraph,
    RelSet,
    AcyclicRel,
}

/// Graph sorts.
pub const VERTICES: usize = 0;
pub const EDGES: usize = 1;

impl Kind {
    pub const ALL: [Kind; 4] = [Kind::FinSet, Kind::FinGraph, Kind::RelSet, Kind::AcyclicRel];

    pub fn name(self) -> &'static str {
        match self {
            Kind::FinSet => "finset",
            Kind::FinGraph => "fingraph",
            Kind::RelSet => "relset",
            Kind::AcyclicRel => "acyclicrel",
        }
    }

    pub fn from_name(s: &str) -> Option<Kind> {
        Kind::ALL.into_iter().find(|k| k.name() == s)
    }

    pub fn sorts(self) -> usize {
        match self {
            Kind::FinGraph => 2,
            _ => 1,
        }
    }

    /// Unary operations as `(source sort, target sort)`.
    pub fn ops(self) -> &'static [(usize, usize)] {
        match self {
            Kind::FinGraph => &[(EDGES, VERTICES), (EDGES, VERTICES)],
            _ => &[],
        }
    }

    pub fn relational(self) -> bool {
        matches!(self, Kind::RelSet | Kind::AcyclicRel)
    }

    /// Relation must be reflexive with no nontrivial directed cycles.
    pub fn acyclic(self) -> bool {
        self == Kind::AcyclicRel
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Structure {
    pub sorts: Vec<usize>,
    pub ops: Vec<Vec<usize>>,
    /// Sorted, deduplicated pairs on sort 0.
    pub rel: Vec<(usize, usize)>,
}

impl Structure {
    pub fn related(&self, x: usize, y: usize) -> bool {
        self.rel.binary_search(&(x, y)).is_ok()
    }

    pub fn total(&self) -> usize {
        self.sorts.iter().sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Hom {
    pub dom: Structure,
    pub cod: Structure,
    /// One table per sort, `dom → cod`.
    pub maps: Vec<Vec<usize>>,
}

impl Hom {
    pub fn is_injective(&self) -> bool {
        self.maps.iter().zip(&self.cod.sorts).all(|(map, &n)| {
            let mut seen = vec![false; n];
            map.iter().all(|&y| !std::mem::replace(&mut seen[y], true))
        })
    }

    pub fn is_surjective(&self) -> bool {
        self.maps.iter().zip(&self.cod.sorts).all(|(map, &n)| {
            let mut seen = vec![false; n];
            map.iter().for_each(|&y| seen[y] = true);
            seen.into_iter().all(|b| b)
        })
    }

    /// Injective and `x R y ⇔ f(x) R f(y)`.
    pub fn reflects_relation(&self) -> bool {
        let map = &self.maps[0];
        self.cod.rel.iter().all(|&(a, b)| match (position(map, a), position(map, b)) {
            (Some(x), Some(y)) => self.dom.related(x, y),
            _ => true,
        })
    }
}

fn position(map: &[usize], y: usize) -> Option<usize> {
    map.iter().position(|&v| v == y)
}

type HomCache = HashMap<(Structure, Structure), Arc<Vec<Hom>>>;

/// One of the four concrete categories.
#[derive(Debug)]
pub struct StructCat {
    kind: Kind,
    objects: Mutex<HashMap<usize, Arc<Vec<Structure>>>>,
    homs: Mutex<HomCache>,
}

impl Clone for StructCat {
    fn clone(&self) -> Self {
        StructCat::new(self.kind)
    }
}

impl PartialEq for StructCat {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}

const HOM_CACHE_LIMIT: usize = 200_000;

impl StructCat {
    pub fn new(kind: Kind) -> Self {
        StructCat { kind, objects: Mutex::new(HashMap::new()), homs: Mutex::new(HashMap::new()) }
    }

    pub fn finset() -> Self {
        Self::new(Kind::FinSet)
    }
    pub fn fingraph() -> Self {
        Self::new(Kind::FinGraph)
    }
    pub fn relset() -> Self {
        Self::new(Kind::RelSet)
    }
    pub fn acyclicrel() -> Self {
        Self::new(Kind::AcyclicRel)
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    // ---- object constructors -------------------------------------------

    /// A finite set `{0, .., n-1}`.
    pub fn set(&self, n: usize) -> Structure {
        assert_eq!(self.kind, Kind::FinSet, "set() is for FinSet");
        Structure { sorts: vec![n], ops: vec![], rel: vec![] }
    }

    /// A graph on `vertices` vertices; `edges[i] = (src, tgt)`.
    pub fn graph(&self, vertices: usize, edges: &[(usize, usize)]) -> Result<Structure> {
        if self.kind != Kind::FinGraph {
            return Err(CatError::TypeMismatch("graph() is for FinGraph".into()));
        }
        let s = Structure {
            sorts: vec![vertices, edges.len()],
            ops: vec![edges.iter().map(|e| e.0).collect(), edges.iter().map(|e| e.1).collect()],
            rel: vec![],
        };
        self.check_object(&s)?;
        Ok(s)
    }

    /// A relational object on `{0, .., n-1}`. For `AcyclicRel` the diagonal
    /// is added automatically.
    pub fn relation(&self, n: usize, pairs: &[(usize, usize)]) -> Result<Structure> {
        if !self.kind.relational() {
            return Err(CatError::TypeMismatch("relation() needs a relational kind".into()));
        }
        let mut rel: Vec<(usize, usize)> = pairs.to_vec();
        if self.kind.acyclic() {
            rel.extend((0..n).map(|i| (i, i)));
        }
        rel.sort_unstable();
        rel.dedup();
        let s = Structure { sorts: vec![n], ops: vec![], rel };
        self.check_object(&s)?;
        Ok(s)
    }

    /// Object with no elements.
    pub fn initial(&self) -> Structure {
        Structure { sorts: vec![0; self.kind.sorts()], ops: vec![vec![]; self.kind.ops().len()], rel: vec![] }
    }

    /// Terminal object: one element per sort, every operation constant, full relation.
    pub fn terminal(&self) -> Structure {
        Structure {
            sorts: vec![1; self.kind.sorts()],
            ops: vec![vec![0]; self.kind.ops().len()],
            rel: if self.kind.relational() { vec![(0, 0)] } else { vec![] },
        }
    }

    pub fn check_object(&self, s: &Structure) -> Result<()> {
        let k = self.kind;
        if s.sorts.len() != k.sorts() || s.ops.len() != k.ops().len() {
            return Err(CatError::Invalid(format!("signature mismatch for {}", k.name())));
        }
        for (op, &(src, tgt)) in s.ops.iter().zip(k.ops()) {
            if op.len() != s.sorts[src] || op.iter().any(|&y| y >= s.sorts[tgt]) {
                return Err(CatError::Invalid("operation table out of range".into()));
            }
        }
        if !k.relational() && !s.rel.is_empty() {
            return Err(CatError::Invalid(format!("{} objects carry no relation", k.name())));
        }
        let n = s.sorts[0];
        if s.rel.iter().any(|&(x, y)| x >= n || y >= n) || s.rel.windows(2).any(|w| w[0] >= w[1]) {
            return Err(CatError::Invalid("relation must be sorted, unique and in range".into()));
        }
        if k.acyclic() {
            if (0..n).any(|i| !s.related(i, i)) {
                return Err(CatError::Invalid("relation is not reflexive".into()));
            }
            if !is_acyclic(s) {
                return Err(CatError::Invalid("relation has a nontrivial cycle".into()));
            }
        }
        Ok(())
    }

    pub fn check_hom(&self, f: &Hom) -> Result<()> {
        if f.maps.len() != f.dom.sorts.len() || f.dom.sorts.len() != f.cod.sorts.len() {
            return Err(CatError::Invalid("sort count mismatch".into()));
        }
        for (s, map) in f.maps.iter().enumerate() {
            if map.len() != f.dom.sorts[s] || map.iter().any(|&y| y >= f.cod.sorts[s]) {
                return Err(CatError::Invalid(format!("map on sort {s} is not total into the codomain")));
            }
        }
        if !self.preserves_structure(f) {
            return Err(CatError::Invalid("map does not preserve structure".into()));
        }
        Ok(())
    }

    fn preserves_structure(&self, f: &Hom) -> bool {
        for (k, &(src, tgt)) in self.kind.ops().iter().enumerate() {
            for e in 0..f.dom.sorts[src] {
                if f.maps[tgt][f.dom.ops[k][e]] != f.cod.ops[k][f.maps[src][e]] {
                    return false;
                }
            }
        }
        let m = f.maps.first();
        f.dom.rel.iter().all(|&(x, y)| {
            let m = m.expect("relational kinds have sort 0");
            f.cod.related(m[x], m[y])
        })
    }

    /// Validated morphism from explicit tables.
    pub fn morphism(&self, dom: &Structure, cod: &Structure, maps: Vec<Vec<usize>>) -> Result<Hom> {
        let f = Hom { dom: dom.clone(), cod: cod.clone(), maps };
        self.check_hom(&f)?;
        Ok(f)
    }

    /// Single-sorted convenience.
    pub fn map(&self, dom: &Structure, cod: &Structure, table: &[usize]) -> Result<Hom> {
        self.morphism(dom, cod, vec![table.to_vec()])
    }

    /// The unique morphism into the terminal object.
    pub fn to_terminal(&self, x: &Structure) -> Hom {
        Hom { dom: x.clone(), cod: self.terminal(), maps: x.sorts.iter().map(|&n| vec![0; n]).collect() }
    }

    /// The unique morphism out of the initial object.
    pub fn from_initial(&self, x: &Structure) -> Hom {
        Hom { dom: self.initial(), cod: x.clone(), maps: vec![vec![]; x.sorts.len()] }
    }

    // ---- engine ---------------------------------------------------------

    /// `A + B` with its two injections.
    pub fn coproduct(&self, a: &Structure, b: &Structure) -> (Structure, Hom, Hom) {
        let sorts: Vec<usize> = a.sorts.iter().zip(&b.sorts).map(|(x, y)| x + y).collect();
        let ops = self
            .kind
            .ops()
            .iter()
            .enumerate()
            .map(|(k, &(_, tgt))| {
                let off = a.sorts[tgt];
                a.ops[k].iter().copied().chain(b.ops[k].iter().map(|&v| v + off)).collect()
            })
            .collect();
        let off = a.sorts[0];
        let mut rel: Vec<(usize, usize)> =
            a.rel.iter().copied().chain(b.rel.iter().map(|&(x, y)| (x + off, y + off))).collect();
        rel.sort_unstable();
        let sum = Structure { sorts, ops, rel };
        let inl = Hom { dom: a.clone(), cod: sum.clone(), maps: a.sorts.iter().map(|&n| (0..n).collect()).collect() };
        let inr = Hom {
            dom: b.clone(),
            cod: sum.clone(),
            maps: a.sorts.iter().zip(&b.sorts).map(|(&o, &n)| (o..o + n).collect()).collect(),
        };
        (sum, inl, inr)
    }

    /// Quotient of `s` by the equivalence generated by `pairs[sort]`, followed
    /// by the reflector when the kind requires it. Classes are numbered by
    /// their least member.
    pub fn quotient(&self, s: &Structure, pairs: &[Vec<(usize, usize)>]) -> Hom {
        let maps: Vec<Vec<usize>> = s
            .sorts
            .iter()
            .zip(pairs)
            .map(|(&n, ps)| {
                let mut uf = UnionFind::new(n);
                for &(x, y) in ps {
                    uf.union(x, y);
                }
                uf.canonical_classes()
            })
            .collect();
        let q = self.image_quotient(s, maps);
        if self.kind.acyclic() {
            let r = reflect(&q.cod);
            compose_raw(&q, &r)
        } else {
            q
        }
    }

    /// The structure induced on the codomain of a surjective class map.
    fn image_quotient(&self, s: &Structure, maps: Vec<Vec<usize>>) -> Hom {
        let sorts: Vec<usize> = maps.iter().map(|m| m.iter().max().map_or(0, |&v| v + 1)).collect();
        let ops = self
            .kind
            .ops()
            .iter()
            .enumerate()
            .map(|(k, &(src, tgt))| {
                let mut table = vec![0; sorts[src]];
                for e in 0..s.sorts[src] {
                    table[maps[src][e]] = maps[tgt][s.ops[k][e]];
                }
                table
            })
            .collect();
        let mut rel: Vec<(usize, usize)> = s.rel.iter().map(|&(x, y)| (maps[0][x], maps[0][y])).collect();
        rel.sort_unstable();
        rel.dedup();
        let cod = Structure { sorts, ops, rel };
        Hom { dom: s.clone(), cod, maps }
    }

    /// Pushout without the admissibility test.
    pub fn pushout_unchecked(&self, m: &Hom, f: &Hom) -> Result<Cospan<Hom>> {
        if m.dom != f.dom {
            return Err(CatError::TypeMismatch("pushout legs need a common domain".into()));
        }
        let (sum, inl, inr) = self.coproduct(&m.cod, &f.cod);
        let pairs: Vec<Vec<(usize, usize)>> = (0..sum.sorts.len())
            .map(|s| (0..m.dom.sorts[s]).map(|c| (inl.maps[s][m.maps[s][c]], inr.maps[s][f.maps[s][c]])).collect())
            .collect();
        let q = self.quotient(&sum, &pairs);
        Ok(Cospan { left: compose_raw(&inl, &q), right: compose_raw(&inr, &q) })
    }

    /// Whether the two injections into the pushout of `target ⇇ U_i` along
    /// the family agree, i.e. the family is jointly epimorphic.
    fn joint_cokernel_trivial(&self, family: &[Hom], target: &Structure) -> bool {
        let (sum, inl, inr) = self.coproduct(target, target);
        let pairs: Vec<Vec<(usize, usize)>> = (0..target.sorts.len())
            .map(|s| family.iter().flat_map(|f| f.maps[s].iter().map(|&y| (inl.maps[s][y], inr.maps[s][y]))).collect())
            .collect();
        let q = self.quotient(&sum, &pairs);
        compose_raw(&inl, &q) == compose_raw(&inr, &q)
    }

    fn canonical(&self, s: &Structure) -> Structure {
        enumerate::canonical(self.kind, s)
    }

    /// Canonical representative of the isomorphism class of `s`.
    pub fn canonical_form(&self, s: &Structure) -> Structure {
        self.canonical(s)
    }

    /// An isomorphism `x → y`, if one exists.
    pub fn find_iso(&self, x: &Structure, y: &Structure) -> Option<Hom> {
        if x.sorts != y.sorts || x.rel.len() != y.rel.len() {
            return None;
        }
        self.hom(x, y).into_iter().find(|f| self.is_iso(f))
    }
}

/// `g ∘ f` on raw tables, no type checks.
pub(crate) fn compose_raw(f: &Hom, g: &Hom) -> Hom {
    Hom {
        dom: f.dom.clone(),
        cod: g.cod.clone(),
        maps: f.maps.iter().zip(&g.maps).map(|(fm, gm)| fm.iter().map(|&x| gm[x]).collect()).collect(),
    }
}

pub(crate) fn identity_raw(x: &Structure) -> Hom {
    Hom { dom: x.clone(), cod: x.clone(), maps: x.sorts.iter().map(|&n| (0..n).collect()).collect() }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Roots are always the least element of their class.
    fn union(&mut self, x: usize, y: usize) {
        let (a, b) = (self.find(x), self.find(y));
        if a != b {
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            self.parent[hi] = lo;
        }
    }

    /// Class index of each element, classes numbered by least member.
    fn canonical_classes(&mut self) -> Vec<usize> {
        let n = self.parent.len();
        let mut index = vec![usize::MAX; n];
        let mut next = 0;
        let mut out = Vec::with_capacity(n);
        for x in 0..n {
            let r = self.find(x);
            if index[r] == usize::MAX {
                index[r] = next;
                next += 1;
            }
            out.push(index[r]);
        }
        out
    }
}

impl Category for StructCat {
    type Obj = Structure;
    type Mor = Hom;

    fn descriptor(&self) -> Value {
        Value::String(self.kind.name().to_string())
    }

    fn dom(&self, f: &Hom) -> Structure {
        f.dom.clone()
    }

    fn cod(&self, f: &Hom) -> Structure {
        f.cod.clone()
    }

    fn identity(&self, x: &Structure) -> Hom {
        identity_raw(x)
    }

    fn compose(&self, f: &Hom, g: &Hom) -> Result<Hom> {
        if f.cod != g.dom {
            return Err(CatError::NotComposable("cod(f) differs from dom(g)".into()));
        }
        Ok(compose_raw(f, g))
    }

    fn is_mono(&self, f: &Hom) -> bool {
        f.is_injective()
    }

    fn is_epi(&self, f: &Hom) -> bool {
        if self.kind.acyclic() {
            self.joint_cokernel_trivial(std::slice::from_ref(f), &f.cod)
        } else {
            f.is_surjective()
        }
    }

    fn is_iso(&self, f: &Hom) -> bool {
        f.is_injective() && f.is_surjective() && f.dom.rel.len() == f.cod.rel.len()
    }

    fn pullback(&self, f: &Hom, g: &Hom) -> Result<Span<Hom>> {
        if f.cod != g.cod {
            return Err(CatError::TypeMismatch("pullback legs need a common codomain".into()));
        }
        let (x, y) = (&f.dom, &g.dom);
        let nsorts = x.sorts.len();
        // index[s][i * |Y_s| + j] = position of (i, j) in P_s
        let mut index = Vec::with_capacity(nsorts);
        let mut pairs = Vec::with_capacity(nsorts);
        for s in 0..nsorts {
            let ny = y.sorts[s];
            let mut idx = vec![usize::MAX; x.sorts[s] * ny];
            let mut ps = Vec::new();
            for i in 0..x.sorts[s] {
                for j in 0..ny {
                    if f.maps[s][i] == g.maps[s][j] {
                        idx[i * ny + j] = ps.len();
                        ps.push((i, j));
                    }
                }
            }
            index.push(idx);
            pairs.push(ps);
        }
        let ops = self
            .kind
            .ops()
            .iter()
            .enumerate()
            .map(|(k, &(src, tgt))| {
                let ny = y.sorts[tgt];
                pairs[src].iter().map(|&(i, j)| index[tgt][x.ops[k][i] * ny + y.ops[k][j]]).collect()
            })
            .collect();
        let mut rel = Vec::new();
        if self.kind.relational() {
            let ny = y.sorts[0];
            for &(a, b) in &x.rel {
                for &(c, d) in &y.rel {
                    let (p, q) = (index[0][a * ny + c], index[0][b * ny + d]);
                    if p != usize::MAX && q != usize::MAX {
                        rel.push((p, q));
                    }
                }
            }
            rel.sort_unstable();
        }
        let apex = Structure { sorts: pairs.iter().map(Vec::len).collect(), ops, rel };
        let left = Hom {
            dom: apex.clone(),
            cod: x.clone(),
            maps: pairs.iter().map(|ps| ps.iter().map(|p| p.0).collect()).collect(),
        };
        let right =
            Hom { dom: apex, cod: y.clone(), maps: pairs.iter().map(|ps| ps.iter().map(|p| p.1).collect()).collect() };
        Ok(Span { left, right })
    }

    fn pullback_lift(&self, pb: &Span<Hom>, x: &Hom, y: &Hom) -> Option<Hom> {
        if x.dom != y.dom || x.cod != pb.left.cod || y.cod != pb.right.cod {
            return None;
        }
        let apex = &pb.left.dom;
        let maps: Option<Vec<Vec<usize>>> = (0..apex.sorts.len())
            .map(|s| {
                let mut lookup = HashMap::with_capacity(apex.sorts[s]);
                for p in 0..apex.sorts[s] {
                    lookup.insert((pb.left.maps[s][p], pb.right.maps[s][p]), p);
                }
                (0..x.dom.sorts[s]).map(|t| lookup.get(&(x.maps[s][t], y.maps[s][t])).copied()).collect()
            })
            .collect();
        let u = Hom { dom: x.dom.clone(), cod: apex.clone(), maps: maps? };
        self.preserves_structure(&u).then_some(u)
    }

    fn admits_pushout(&self, m: &Hom) -> bool {
        match self.kind {
            Kind::FinSet | Kind::FinGraph => m.is_injective(),
            Kind::RelSet | Kind::AcyclicRel => true,
        }
    }

    fn pushout(&self, m: &Hom, f: &Hom) -> Result<Cospan<Hom>> {
        if !self.admits_pushout(m) {
            return Err(CatError::NotAdmissible(format!("{} pushes out along monomorphisms only", self.kind.name())));
        }
        self.pushout_unchecked(m, f)
    }

    /// All four categories have every pushout; the admissible class only
    /// restricts [`Category::pushout`].
    fn pushout_any(&self, m: &Hom, f: &Hom) -> Result<Cospan<Hom>> {
        self.pushout_unchecked(m, f)
    }

    fn pushout_lift(&self, po: &Cospan<Hom>, x: &Hom, y: &Hom) -> Option<Hom> {
        if x.cod != y.cod || x.dom != po.left.dom || y.dom != po.right.dom {
            return None;
        }
        let d = &po.left.cod;
        let mut maps = Vec::with_capacity(d.sorts.len());
        for s in 0..d.sorts.len() {
            let mut table: Vec<Option<usize>> = vec![None; d.sorts[s]];
            for (leg, via) in [(&po.left, x), (&po.right, y)] {
                for e in 0..leg.dom.sorts[s] {
                    let slot = &mut table[leg.maps[s][e]];
                    match *slot {
                        None => *slot = Some(via.maps[s][e]),
                        Some(v) if v != via.maps[s][e] => return None,
                        Some(_) => {}
                    }
                }
            }
            maps.push(table.into_iter().collect::<Option<Vec<_>>>()?);
        }
        let u = Hom { dom: d.clone(), cod: x.cod.clone(), maps };
        self.preserves_structure(&u).then_some(u)
    }

    fn equalizer(&self, u: &Hom, v: &Hom) -> Result<Hom> {
        if u.dom != v.dom || u.cod != v.cod {
            return Err(CatError::TypeMismatch("equalizer needs a parallel pair".into()));
        }
        let x = &u.dom;
        let keep: Vec<Vec<usize>> =
            (0..x.sorts.len()).map(|s| (0..x.sorts[s]).filter(|&i| u.maps[s][i] == v.maps[s][i]).collect()).collect();
        Ok(self.induced_substructure(x, keep))
    }

    fn coequalizer(&self, u: &Hom, v: &Hom) -> Result<Hom> {
        if u.dom != v.dom || u.cod != v.cod {
            return Err(CatError::TypeMismatch("coequalizer needs a parallel pair".into()));
        }
        let pairs: Vec<Vec<(usize, usize)>> = (0..u.dom.sorts.len())
            .map(|s| u.maps[s].iter().copied().zip(v.maps[s].iter().copied()).collect())
            .collect();
        Ok(self.quotient(&u.cod, &pairs))
    }

    fn factor_through(&self, x: &Hom, mono: &Hom) -> Option<Hom> {
        if x.cod != mono.cod {
            return None;
        }
        let maps: Option<Vec<Vec<usize>>> = (0..x.dom.sorts.len())
            .map(|s| {
                let mut inv: Vec<Option<usize>> = vec![None; mono.cod.sorts[s]];
                for (i, &y) in mono.maps[s].iter().enumerate() {
                    if inv[y].is_some() {
                        return None;
                    }
                    inv[y] = Some(i);
                }
                x.maps[s].iter().map(|&y| inv[y]).collect()
            })
            .collect();
        let u = Hom { dom: x.dom.clone(), cod: mono.dom.clone(), maps: maps? };
        self.preserves_structure(&u).then_some(u)
    }

    fn is_jointly_epi(&self, family: &[Hom]) -> bool {
        let Some(first) = family.first() else {
            return false;
        };
        let target = &first.cod;
        if family.iter().any(|f| &f.cod != target) {
            return false;
        }
        if self.kind.acyclic() {
            return self.joint_cokernel_trivial(family, target);
        }
        (0..target.sorts.len()).all(|s| {
            let mut seen = vec![false; target.sorts[s]];
            for f in family {
                f.maps[s].iter().for_each(|&y| seen[y] = true);
            }
            seen.into_iter().all(|b| b)
        }) || target.total() == 0
    }

    fn objects(&self, bound: usize) -> Result<Vec<Structure>> {
        if let Some(v) = self.objects.lock().expect("cache").get(&bound) {
            return Ok(v.to_vec());
        }
        let list = Arc::new(enumerate::objects(self.kind, bound)?);
        self.objects.lock().expect("cache").insert(bound, list.clone());
        Ok(list.to_vec())
    }

    fn hom(&self, x: &Structure, y: &Structure) -> Vec<Hom> {
        let key = (x.clone(), y.clone());
        if let Some(v) = self.homs.lock().expect("cache").get(&key) {
            return v.to_vec();
        }
        let list = Arc::new(enumerate::homs(self.kind, x, y));
        let mut cache = self.homs.lock().expect("cache");
        if cache.len() > HOM_CACHE_LIMIT {
            cache.clear();
        }
        cache.insert(key, list.clone());
        list.to_vec()
    }

    fn size(&self, x: &Structure) -> usize {
        match self.kind {
            Kind::FinSet | Kind::AcyclicRel => x.sorts[0],
            Kind::FinGraph => x.total(),
            Kind::RelSet => x.sorts[0] + x.rel.len(),
        }
    }

    fn obj_to_json(&self, x: &Structure) -> Value {
        json::object_to_json(self.kind, x)
    }

    fn mor_to_json(&self, f: &Hom) -> Value {
        json::hom_to_json(self.kind, f)
    }

    fn mor_from_json(&self, v: &Value) -> Result<Hom> {
        json::hom_from_json(self, v)
    }
}

impl StructCat {
    /// Inclusion of the substructure on the kept elements (closed under the
    /// operations), with the induced relation.
    pub fn induced_substructure(&self, x: &Structure, keep: Vec<Vec<usize>>) -> Hom {
        let pos: Vec<Vec<usize>> = (0..x.sorts.len())
            .map(|s| {
                let mut p = vec![usize::MAX; x.sorts[s]];
                for (i, &e) in keep[s].iter().enumerate() {
                    p[e] = i;
                }
                p
            })
            .collect();
        let ops = self
            .kind
            .ops()
            .iter()
            .enumerate()
            .map(|(k, &(src, tgt))| keep[src].iter().map(|&e| pos[tgt][x.ops[k][e]]).collect())
            .collect();
        let rel = x
            .rel
            .iter()
            .filter_map(|&(a, b)| {
                let (p, q) = (pos[0][a], pos[0][b]);
                (p != usize::MAX && q != usize::MAX).then_some((p, q))
            })
            .collect();
        let sub = Structure { sorts: keep.iter().map(Vec::len).collect(), ops, rel };
        Hom { dom: sub, cod: x.clone(), maps: keep }
    }

    /// Identifies a monomorphism up to isomorphism of arrows over a fixed
    /// codomain: the least image (with transported relation) under the
    /// automorphisms of the codomain.
    pub fn mono_key(&self, m: &Hom) -> (Structure, Vec<Vec<usize>>, Vec<(usize, usize)>) {
        let image = |h: &Hom| {
            let sets: Vec<Vec<usize>> = h
                .maps
                .iter()
                .map(|t| {
                    let mut v = t.clone();
                    v.sort_unstable();
                    v
                })
                .collect();
            let mut rel: Vec<(usize, usize)> = h.dom.rel.iter().map(|&(x, y)| (h.maps[0][x], h.maps[0][y])).collect();
            rel.sort_unstable();
            (sets, rel)
        };
        let best = self
            .hom(&m.cod, &m.cod)
            .iter()
            .filter(|t| self.is_iso(t))
            .map(|t| image(&compose_raw(m, t)))
            .min()
            .unwrap_or_else(|| image(m));
        (m.cod.clone(), best.0, best.1)
    }

    /// Like [`StructCat::mono_key`] but also invariant under isomorphisms of
    /// the codomain, so two monos share a key iff they are isomorphic as
    /// arrows.
    pub fn arrow_key(&self, m: &Hom) -> (Structure, Vec<Vec<usize>>, Vec<(usize, usize)>) {
        let canon = self.canonical(&m.cod);
        let t = self.find_iso(&m.cod, &canon).expect("canonical form is isomorphic");
        self.mono_key(&compose_raw(m, &t))
    }

    /// Image factorization `f = n ∘ e` with `n` the inclusion of the induced
    /// substructure on the image (a regular monomorphism) and `e` the
    /// corestriction.
    pub fn image_factorization(&self, f: &Hom) -> (Hom, Hom) {
        let keep: Vec<Vec<usize>> = (0..f.cod.sorts.len())
            .map(|s| {
                let mut hit = vec![false; f.cod.sorts[s]];
                f.maps[s].iter().for_each(|&y| hit[y] = true);
                (0..f.cod.sorts[s]).filter(|&y| hit[y]).collect()
            })
            .collect();
        let n = self.induced_substructure(&f.cod, keep);
        let e = self.factor_through(f, &n).expect("every map factors through its image");
        (e, n)
    }
}
