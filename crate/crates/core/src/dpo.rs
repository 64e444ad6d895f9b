//! Double-pushout rewriting over graphs (and sets).
//!
//! A rule is a span `L ← K → R` of monos. Given a match `m: L → G` the
//! pushout complement `K → D → G` is built directly (delete the image of
//! `L \ l(K)`), certified with the pushout and pullback checks, and then `H`
//! is the pushout of `r` along `k: K → D`.
//!
//! Squares are oriented as everywhere else: the left one is
//! `(m = l, f = k, g = match, n = d)`, the right one `(m = r, f = k, g, n)`.

use rand::Rng;
use serde_json::{json, Value};

use crate::category::Category;
use crate::diagram::Square;
use crate::error::{CatError, Result};
use crate::instances::gen;
use crate::instances::json::{hom_between, object_from_json, Labeled};
use crate::instances::{Hom, Kind, StructCat, Structure};
use crate::universal::{is_pullback, is_pushout};
use crate::witness::Witness;

fn supported(cat: &StructCat) -> Result<()> {
    match cat.kind() {
        Kind::FinSet | Kind::FinGraph => Ok(()),
        k => Err(CatError::TypeMismatch(format!("rewriting is defined for finset and fingraph, not {}", k.name()))),
    }
}

fn sort_name(kind: Kind, s: usize) -> &'static str {
    match (kind, s) {
        (Kind::FinGraph, 0) => "vertex",
        (Kind::FinGraph, _) => "edge",
        _ => "element",
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rule {
    /// `l: K → L`
    pub l: Hom,
    /// `r: K → R`
    pub r: Hom,
    /// Element labels of `L`, used to read matches.
    pub lhs_labels: Vec<Vec<String>>,
}

impl Rule {
    pub fn new(cat: &StructCat, l: Hom, r: Hom) -> Result<Self> {
        supported(cat)?;
        cat.check_hom(&l)?;
        cat.check_hom(&r)?;
        if l.dom != r.dom {
            return Err(CatError::TypeMismatch("rule legs need a common interface K".into()));
        }
        if !cat.is_mono(&l) || !cat.is_mono(&r) {
            return Err(CatError::Invalid("rule legs must be monomorphisms".into()));
        }
        let lhs_labels = Labeled::plain(l.cod.clone()).labels;
        Ok(Rule { l, r, lhs_labels })
    }

    /// `L ← L → L`.
    pub fn identity(cat: &StructCat, x: &Structure) -> Self {
        let id = cat.identity(x);
        Rule { l: id.clone(), r: id, lhs_labels: Labeled::plain(x.clone()).labels }
    }

    pub fn lhs(&self) -> &Structure {
        &self.l.cod
    }

    /// `{"K":obj,"L":obj,"R":obj,"l":{on..},"r":{on..}}`; the legs are given
    /// by their tables only.
    pub fn from_json(cat: &StructCat, v: &Value) -> Result<Self> {
        supported(cat)?;
        let get = |k: &str| v.get(k).ok_or_else(|| CatError::Parse(format!("rule is missing `{k}`")));
        let k = object_from_json(cat, get("K")?)?;
        let l = object_from_json(cat, get("L")?)?;
        let r = object_from_json(cat, get("R")?)?;
        let leg_l = hom_between(cat, &k, &l, get("l")?)?;
        let leg_r = hom_between(cat, &k, &r, get("r")?)?;
        let mut rule = Rule::new(cat, leg_l, leg_r)?;
        rule.lhs_labels = l.labels;
        Ok(rule)
    }

    pub fn to_json(&self, cat: &StructCat) -> Value {
        let mut v = json!({
            "K": cat.obj_to_json(&self.l.dom),
            "L": cat.obj_to_json(&self.l.cod),
            "R": cat.obj_to_json(&self.r.cod),
        });
        v["l"] = tables(cat, &self.l);
        v["r"] = tables(cat, &self.r);
        v
    }
}

/// The `on` tables of a morphism without its endpoints.
fn tables(cat: &StructCat, f: &Hom) -> Value {
    let mut v = cat.mor_to_json(f);
    let o = v.as_object_mut().expect("morphisms serialize as objects");
    o.remove("dom");
    o.remove("cod");
    v
}

/// A host graph with an optional match, as read from a file:
/// `{"graph": obj, "match": {on..}}` or a bare object. Match tables are keyed
/// by the labels the rule gave `L`.
pub fn host_from_json(cat: &StructCat, rule: &Rule, v: &Value) -> Result<(Structure, Option<Hom>)> {
    supported(cat)?;
    let (gv, mv) = match v.get("graph") {
        Some(g) => (g, v.get("match")),
        None => (v, None),
    };
    let g = object_from_json(cat, gv)?;
    let m = match mv {
        Some(mv) => {
            let lhs = Labeled { obj: rule.lhs().clone(), labels: rule.lhs_labels.clone() };
            Some(hom_between(cat, &lhs, &g, mv)?)
        }
        None => None,
    };
    Ok((g.obj, m))
}

/// `K → D → G`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Complement {
    pub k: Hom,
    pub d: Hom,
}

impl Complement {
    pub fn square(&self, l: &Hom, m: &Hom) -> Square<Hom> {
        Square::new(l.clone(), self.k.clone(), m.clone(), self.d.clone())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ComplementOutcome {
    Found(Complement),
    /// The gluing condition fails; the value says where.
    NoComplement(Value),
}

/// First violation of the identification or dangling condition for `l`
/// and `m`, if any.
pub fn gluing_violation(cat: &StructCat, l: &Hom, m: &Hom) -> Result<Option<Value>> {
    supported(cat)?;
    if l.cod != m.dom {
        return Err(CatError::TypeMismatch("match must start at the rule's left-hand side".into()));
    }
    let kind = cat.kind();
    let g = &m.cod;
    let mut deleted: Vec<Vec<bool>> = g.sorts.iter().map(|&n| vec![false; n]).collect();
    for s in 0..g.sorts.len() {
        let mut kept_source = vec![false; l.cod.sorts[s]];
        l.maps[s].iter().for_each(|&x| kept_source[x] = true);
        let map = &m.maps[s];
        for x in 0..map.len() {
            for y in x + 1..map.len() {
                if map[x] == map[y] && !(kept_source[x] && kept_source[y]) {
                    return Ok(Some(json!({
                        "condition": "identification",
                        "sort": sort_name(kind, s),
                        "elements": [x, y],
                    })));
                }
            }
            if !kept_source[x] {
                deleted[s][map[x]] = true;
            }
        }
    }
    for (k, &(src, tgt)) in kind.ops().iter().enumerate() {
        for e in 0..g.sorts[src] {
            if !deleted[src][e] && deleted[tgt][g.ops[k][e]] {
                return Ok(Some(json!({
                    "condition": "dangling",
                    "sort": sort_name(kind, src),
                    "element": e,
                    "deleted": g.ops[k][e],
                })));
            }
        }
    }
    Ok(None)
}

/// The direct construction: `D` is `G` without the image of `L \ l(K)`.
pub fn pushout_complement(cat: &StructCat, l: &Hom, m: &Hom) -> Result<ComplementOutcome> {
    if let Some(why) = gluing_violation(cat, l, m)? {
        return Ok(ComplementOutcome::NoComplement(why));
    }
    if !cat.is_mono(l) {
        return Err(CatError::Invalid("the rule's left leg must be a monomorphism".into()));
    }
    let g = &m.cod;
    let keep: Vec<Vec<usize>> = (0..g.sorts.len())
        .map(|s| {
            let mut gone = vec![false; g.sorts[s]];
            let mut kept_source = vec![false; l.cod.sorts[s]];
            l.maps[s].iter().for_each(|&x| kept_source[x] = true);
            for (x, &y) in m.maps[s].iter().enumerate() {
                if !kept_source[x] {
                    gone[y] = true;
                }
            }
            (0..g.sorts[s]).filter(|&y| !gone[y]).collect()
        })
        .collect();
    let d = cat.induced_substructure(g, keep);
    let k = cat.factor_through(&cat.compose(l, m)?, &d).expect("the image of K survives deletion");
    Ok(ComplementOutcome::Found(Complement { k, d }))
}

#[derive(Debug, Clone)]
pub struct Derivation {
    pub m: Hom,
    pub complement: Complement,
    /// `R → H`
    pub h_r: Hom,
    /// `D → H`
    pub h_d: Hom,
    pub left: Square<Hom>,
    pub right: Square<Hom>,
    /// `is_pushout` and `is_pullback` on the left square, then the right.
    pub certificates: Vec<Witness>,
}

impl Derivation {
    pub fn result(&self) -> &Structure {
        &self.h_d.cod
    }

    pub fn certified(&self) -> bool {
        self.certificates.iter().all(Witness::passed)
    }

    pub fn to_json(&self, cat: &StructCat) -> Value {
        json!({
            "G": cat.obj_to_json(&self.m.cod),
            "D": cat.obj_to_json(&self.complement.d.dom),
            "H": cat.obj_to_json(self.result()),
            "match": tables(cat, &self.m),
            "k": tables(cat, &self.complement.k),
            "d": tables(cat, &self.complement.d),
            "r_star": tables(cat, &self.h_r),
            "d_star": tables(cat, &self.h_d),
            "certified": self.certified(),
            "certificates": self.certificates,
        })
    }
}

#[derive(Debug, Clone)]
pub enum Step {
    Applied(Box<Derivation>),
    Inapplicable(Value),
}

fn certify(cat: &StructCat, sq: &Square<Hom>, out: &mut Vec<Witness>) -> Result<()> {
    out.push(is_pushout(cat, sq)?);
    out.push(is_pullback(cat, sq)?);
    Ok(())
}

pub fn dpo_step(cat: &StructCat, rule: &Rule, m: &Hom) -> Result<Step> {
    cat.check_hom(m)?;
    let complement = match pushout_complement(cat, &rule.l, m)? {
        ComplementOutcome::Found(c) => c,
        ComplementOutcome::NoComplement(why) => return Ok(Step::Inapplicable(why)),
    };
    let po = cat.pushout(&rule.r, &complement.k)?;
    let left = complement.square(&rule.l, m);
    let right = Square::new(rule.r.clone(), complement.k.clone(), po.left.clone(), po.right.clone());
    let mut certificates = Vec::new();
    certify(cat, &left, &mut certificates)?;
    certify(cat, &right, &mut certificates)?;
    Ok(Step::Applied(Box::new(Derivation {
        m: m.clone(),
        complement,
        h_r: po.left,
        h_d: po.right,
        left,
        right,
        certificates,
    })))
}

/// Every complement `K → D' → G` with `D'` among the objects of size at
/// most `bound` (one per isomorphism class, all maps).
pub fn complements_within(cat: &StructCat, l: &Hom, m: &Hom, bound: usize) -> Result<Vec<Complement>> {
    let lm = cat.compose(l, m)?;
    let mut out = Vec::new();
    for x in cat.objects(bound)? {
        let into_g = cat.hom(&x, &m.cod);
        if into_g.is_empty() {
            continue;
        }
        for k in cat.hom(&l.dom, &x) {
            for d in &into_g {
                if cat.compose(&k, d)? != lm {
                    continue;
                }
                let c = Complement { k: k.clone(), d: d.clone() };
                if crate::universal::pushout_holds(cat, &c.square(l, m))? {
                    out.push(c);
                }
            }
        }
    }
    Ok(out)
}

/// An isomorphism `φ: D' → D` with `d ∘ φ = d'` and `φ ∘ k' = k`.
pub fn iso_over(cat: &StructCat, a: &Complement, b: &Complement) -> Option<Hom> {
    cat.hom(&a.d.dom, &b.d.dom)
        .into_iter()
        .find(|phi| cat.is_iso(phi) && cat.then(phi, &b.d) == a.d && cat.then(&a.k, phi) == b.k)
}

/// Searches complements up to `bound` and checks that they all agree with
/// the constructed one (or that none exist when construction refuses).
pub fn complement_uniqueness(cat: &StructCat, l: &Hom, m: &Hom, bound: usize) -> Result<Witness> {
    let constructed = pushout_complement(cat, l, m)?;
    let found = complements_within(cat, l, m, bound)?;
    let outcome = match &constructed {
        ComplementOutcome::Found(c) => found.iter().find(|alt| iso_over(cat, alt, c).is_none()).map(|alt| {
            json!({
                "reason": "complement not isomorphic over G to the constructed one",
                "D": cat.obj_to_json(&alt.d.dom),
                "k": tables(cat, &alt.k),
                "d": tables(cat, &alt.d),
            })
        }),
        ComplementOutcome::NoComplement(_) => found.first().map(|alt| {
            json!({
                "reason": "gluing condition fails but a complement exists",
                "D": cat.obj_to_json(&alt.d.dom),
                "k": tables(cat, &alt.k),
                "d": tables(cat, &alt.d),
            })
        }),
    };
    let subject = json!({ "l": cat.mor_to_json(l), "match": cat.mor_to_json(m) });
    let mut detail = json!({ "complements_found": found.len() });
    if let ComplementOutcome::NoComplement(why) = constructed {
        detail["gluing_violation"] = why;
    }
    Ok(Witness::from_outcome("complement_uniqueness", cat.descriptor(), subject, outcome)
        .with_bound(bound)
        .with_detail(detail))
}

/// A random rule `L ← K → R` (with `K` a random substructure of `L`) and a
/// random match into a random host with carriers at most 3.
pub fn random_case<R: Rng>(cat: &StructCat, rng: &mut R) -> Result<(Rule, Hom)> {
    supported(cat)?;
    loop {
        let lhs = gen::object(cat, 2, rng);
        let host = gen::object(cat, 3, rng);
        let Some(m) = gen::hom(cat, &lhs, &host, rng) else { continue };
        let mut keep: Vec<Vec<usize>> = Vec::with_capacity(lhs.sorts.len());
        for s in 0..lhs.sorts.len() {
            let ops: Vec<usize> =
                cat.kind().ops().iter().enumerate().filter(|(_, &(src, _))| src == s).map(|(k, _)| k).collect();
            let chosen = (0..lhs.sorts[s])
                .filter(|&x| ops.iter().all(|&k| keep[cat.kind().ops()[k].1].contains(&lhs.ops[k][x])))
                .filter(|_| rng.gen_bool(0.6))
                .collect();
            keep.push(chosen);
        }
        let l = cat.induced_substructure(&lhs, keep);
        let extra = rng.gen_range(0..=2);
        let r = gen::extension(cat, &l.dom, extra, true, rng);
        return Ok((Rule::new(cat, l, r)?, m));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(cat: &StructCat, v: usize, e: &[(usize, usize)]) -> Structure {
        cat.graph(v, e).unwrap()
    }

    #[test]
    fn identity_rule_keeps_the_host() {
        let cat = StructCat::fingraph();
        let l = graph(&cat, 2, &[(0, 1)]);
        let g = graph(&cat, 3, &[(0, 1), (1, 2)]);
        let rule = Rule::identity(&cat, &l);
        let m = cat.hom(&l, &g).remove(0);
        let Step::Applied(der) = dpo_step(&cat, &rule, &m).unwrap() else { panic!("applies") };
        assert!(der.certified());
        assert!(cat.find_iso(der.result(), &g).is_some());
    }

    #[test]
    fn dangling_edge_blocks_deletion() {
        let cat = StructCat::fingraph();
        let k = graph(&cat, 0, &[]);
        let l = graph(&cat, 1, &[]);
        let rule = Rule::new(&cat, cat.from_initial(&l), cat.identity(&k)).unwrap();
        let g = graph(&cat, 2, &[(0, 1)]);
        let m = cat.morphism(&l, &g, vec![vec![0], vec![]]).unwrap();
        let Step::Inapplicable(why) = dpo_step(&cat, &rule, &m).unwrap() else { panic!("dangling") };
        assert_eq!(why["condition"], "dangling");
    }
}
