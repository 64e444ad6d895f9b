//! Finite categories given by an explicit composition table.
//!
//! JSON form:
//!
//! ```json
//! { "objects": ["X", "Y"],
//!   "arrows": [{"id": "u", "src": "X", "tgt": "Y"}],
//!   "compose": [["u", "v", "w"]],
//!   "identities": {"X": "id_X"} }
//! ```
//!
//! A `compose` entry `[f, g, h]` says `h = g ∘ f` (first `f`, then `g`).
//! Identities may be omitted; missing ones are added as `id_<object>`, and
//! composites with identities never need listing. Every other composable
//! pair must appear exactly once (repeats must agree). Limits and colimits
//! are found by brute force over the whole table.

use std::collections::{BTreeMap, HashMap};

use serde_json::{json, Value};

use crate::category::{Category, Cospan, Span};
use crate::error::{CatError, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrow {
    pub id: String,
    pub src: usize,
    pub tgt: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    name: Option<String>,
    objects: Vec<String>,
    arrows: Vec<Arrow>,
    identities: Vec<usize>,
    /// `table[f * arrows + g] = g ∘ f` where defined.
    table: Vec<Option<usize>>,
    hom: Vec<Vec<Vec<usize>>>,
    by_name: HashMap<String, usize>,
}

fn parse_err(msg: impl Into<String>) -> CatError {
    CatError::Parse(msg.into())
}

impl Presentation {
    /// Builds and validates a presentation. `compose` lists `(f, g, g ∘ f)`
    /// by arrow index; `identities[x]` is `None` when one should be added.
    pub fn new(
        name: Option<String>,
        objects: Vec<String>,
        mut arrows: Vec<Arrow>,
        identities: Vec<Option<usize>>,
        compose: &[(usize, usize, usize)],
    ) -> Result<Self> {
        let mut obj_names = HashMap::new();
        for (i, o) in objects.iter().enumerate() {
            if obj_names.insert(o.clone(), i).is_some() {
                return Err(CatError::Invalid(format!("duplicate object `{o}`")));
            }
        }
        let mut ids = Vec::with_capacity(objects.len());
        for (x, given) in identities.into_iter().enumerate() {
            match given {
                Some(i) => ids.push(i),
                None => {
                    arrows.push(Arrow { id: format!("id_{}", objects[x]), src: x, tgt: x });
                    ids.push(arrows.len() - 1);
                }
            }
        }
        let mut by_name = HashMap::new();
        for (i, a) in arrows.iter().enumerate() {
            if a.src >= objects.len() || a.tgt >= objects.len() {
                return Err(CatError::Invalid(format!("arrow `{}` has an unknown endpoint", a.id)));
            }
            if by_name.insert(a.id.clone(), i).is_some() {
                return Err(CatError::Invalid(format!("duplicate arrow `{}`", a.id)));
            }
        }
        let k = arrows.len();
        for (x, &i) in ids.iter().enumerate() {
            if arrows[i].src != x || arrows[i].tgt != x {
                return Err(CatError::Invalid(format!("identity `{}` is not an endomorphism", arrows[i].id)));
            }
        }
        let mut table = vec![None; k * k];
        let set = |f: usize, g: usize, h: usize, table: &mut Vec<Option<usize>>| -> Result<()> {
            let slot = &mut table[f * k + g];
            match *slot {
                Some(old) if old != h => Err(CatError::Invalid(format!(
                    "conflicting composites for `{}` then `{}`",
                    arrows[f].id, arrows[g].id
                ))),
                _ => {
                    *slot = Some(h);
                    Ok(())
                }
            }
        };
        for &(f, g, h) in compose {
            let (af, ag, ah) = (&arrows[f], &arrows[g], &arrows[h]);
            if af.tgt != ag.src {
                return Err(CatError::NotComposable(format!("`{}` then `{}`", af.id, ag.id)));
            }
            if ah.src != af.src || ah.tgt != ag.tgt {
                return Err(CatError::Invalid(format!(
                    "composite `{}` of `{}` then `{}` has the wrong type",
                    ah.id, af.id, ag.id
                )));
            }
            set(f, g, h, &mut table)?;
        }
        for (f, a) in arrows.iter().enumerate() {
            set(ids[a.src], f, f, &mut table)?;
            set(f, ids[a.tgt], f, &mut table)?;
        }
        for f in 0..k {
            for g in 0..k {
                if arrows[f].tgt == arrows[g].src && table[f * k + g].is_none() {
                    return Err(CatError::Invalid(format!(
                        "no composite listed for `{}` then `{}`",
                        arrows[f].id, arrows[g].id
                    )));
                }
            }
        }
        let mut hom = vec![vec![Vec::new(); objects.len()]; objects.len()];
        for (i, a) in arrows.iter().enumerate() {
            hom[a.src][a.tgt].push(i);
        }
        let p = Presentation { name, objects, arrows, identities: ids, table, hom, by_name };
        p.check_associative()?;
        Ok(p)
    }

    fn check_associative(&self) -> Result<()> {
        for f in 0..self.arrows.len() {
            for &g in self.hom[self.arrows[f].tgt].iter().flatten() {
                let fg = self.comp(f, g);
                for &h in self.hom[self.arrows[g].tgt].iter().flatten() {
                    if self.comp(fg, h) != self.comp(f, self.comp(g, h)) {
                        return Err(CatError::Invalid(format!(
                            "composition is not associative on `{}`, `{}`, `{}`",
                            self.arrows[f].id, self.arrows[g].id, self.arrows[h].id
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let name = v.get("name").and_then(Value::as_str).map(str::to_string);
        let objects: Vec<String> = v
            .get("objects")
            .and_then(Value::as_array)
            .ok_or_else(|| parse_err("presentation needs an `objects` array"))?
            .iter()
            .map(|o| o.as_str().map(str::to_string).ok_or_else(|| parse_err("object ids must be strings")))
            .collect::<Result<_>>()?;
        let obj_index: HashMap<&str, usize> = objects.iter().enumerate().map(|(i, o)| (o.as_str(), i)).collect();
        let obj = |s: Option<&Value>| -> Result<usize> {
            let s = s.and_then(Value::as_str).ok_or_else(|| parse_err("arrow endpoints must be object ids"))?;
            obj_index.get(s).copied().ok_or_else(|| parse_err(format!("unknown object `{s}`")))
        };
        let mut arrows = Vec::new();
        for a in v
            .get("arrows")
            .and_then(Value::as_array)
            .ok_or_else(|| parse_err("presentation needs an `arrows` array"))?
        {
            let id = a.get("id").and_then(Value::as_str).ok_or_else(|| parse_err("arrow needs a string `id`"))?;
            arrows.push(Arrow { id: id.to_string(), src: obj(a.get("src"))?, tgt: obj(a.get("tgt"))? });
        }
        let arrow_index: HashMap<String, usize> = arrows.iter().enumerate().map(|(i, a)| (a.id.clone(), i)).collect();
        let arrow = |s: &Value| -> Result<usize> {
            let s = s.as_str().ok_or_else(|| parse_err("arrow references must be strings"))?;
            arrow_index.get(s).copied().ok_or_else(|| parse_err(format!("unknown arrow `{s}`")))
        };
        let mut identities = vec![None; objects.len()];
        if let Some(ids) = v.get("identities") {
            let ids = ids.as_object().ok_or_else(|| parse_err("`identities` must map objects to arrows"))?;
            for (o, a) in ids {
                let x = *obj_index.get(o.as_str()).ok_or_else(|| parse_err(format!("unknown object `{o}`")))?;
                identities[x] = Some(arrow(a)?);
            }
        }
        let mut compose = Vec::new();
        if let Some(rows) = v.get("compose") {
            for row in rows.as_array().ok_or_else(|| parse_err("`compose` must be an array"))? {
                match row.as_array().map(Vec::as_slice) {
                    Some([f, g, h]) => compose.push((arrow(f)?, arrow(g)?, arrow(h)?)),
                    _ => return Err(parse_err("compose rows are [f, g, g∘f] triples")),
                }
            }
        }
        Presentation::new(name, objects, arrows, identities, &compose)
    }

    /// Canonical JSON: every object, every arrow, identities, and the
    /// composites of non-identity pairs.
    pub fn to_json(&self) -> Value {
        let arrows: Vec<Value> = self
            .arrows
            .iter()
            .map(|a| json!({ "id": a.id, "src": self.objects[a.src], "tgt": self.objects[a.tgt] }))
            .collect();
        let mut compose = Vec::new();
        for f in 0..self.arrows.len() {
            if self.is_identity(f) {
                continue;
            }
            for &g in self.hom[self.arrows[f].tgt].iter().flatten() {
                if !self.is_identity(g) {
                    let h = self.comp(f, g);
                    compose.push(json!([self.arrows[f].id, self.arrows[g].id, self.arrows[h].id]));
                }
            }
        }
        let identities: BTreeMap<&str, &str> = self
            .identities
            .iter()
            .enumerate()
            .map(|(x, &i)| (self.objects[x].as_str(), self.arrows[i].id.as_str()))
            .collect();
        let mut out = json!({
            "objects": self.objects,
            "arrows": arrows,
            "compose": compose,
            "identities": identities,
        });
        if let Some(n) = &self.name {
            out["name"] = json!(n);
        }
        out
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn object_names(&self) -> &[String] {
        &self.objects
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn object(&self, name: &str) -> Option<usize> {
        self.objects.iter().position(|o| o == name)
    }

    pub fn arrow(&self, id: &str) -> Option<usize> {
        self.by_name.get(id).copied()
    }

    pub fn arrow_name(&self, f: usize) -> &str {
        &self.arrows[f].id
    }

    pub fn is_identity(&self, f: usize) -> bool {
        self.identities[self.arrows[f].src] == f
    }

    /// `g ∘ f` for a composable pair.
    pub fn comp(&self, f: usize, g: usize) -> usize {
        self.table[f * self.arrows.len() + g].expect("composable pair")
    }

    pub fn homset(&self, x: usize, y: usize) -> &[usize] {
        &self.hom[x][y]
    }

    /// Every `(f, g, g ∘ f)` with neither `f` nor `g` an identity.
    pub fn relations(&self) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for f in 0..self.arrows.len() {
            if self.is_identity(f) {
                continue;
            }
            for &g in self.hom[self.arrows[f].tgt].iter().flatten() {
                if !self.is_identity(g) {
                    out.push((f, g, self.comp(f, g)));
                }
            }
        }
        out
    }

    /// A generating set chosen greedily in arrow order: an arrow is kept when
    /// it is not yet a composite of the arrows kept before it.
    pub fn generators(&self) -> Vec<usize> {
        let k = self.arrows.len();
        let mut reached = vec![false; k];
        for &i in &self.identities {
            reached[i] = true;
        }
        let mut gens = Vec::new();
        for a in 0..k {
            if reached[a] {
                continue;
            }
            gens.push(a);
            reached[a] = true;
            loop {
                let mut grew = false;
                for f in 0..k {
                    if !reached[f] {
                        continue;
                    }
                    for &g in self.hom[self.arrows[f].tgt].iter().flatten() {
                        let h = self.comp(f, g);
                        if reached[g] && !reached[h] {
                            reached[h] = true;
                            grew = true;
                        }
                    }
                }
                if !grew {
                    break;
                }
            }
        }
        gens
    }

    fn cones_into(&self, x: usize, y: usize, t: usize) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.hom[t][x].iter().flat_map(move |&a| self.hom[t][y].iter().map(move |&b| (a, b)))
    }

    /// The unique `u: T → P` with `u;p1 = a`, `u;p2 = b`, if unique.
    fn unique_into(&self, p1: usize, p2: usize, a: usize, b: usize) -> Option<usize> {
        let t = self.arrows[a].src;
        let mut found = None;
        for &u in &self.hom[t][self.arrows[p1].src] {
            if self.comp(u, p1) == a && self.comp(u, p2) == b {
                if found.is_some() {
                    return None;
                }
                found = Some(u);
            }
        }
        found
    }

    fn unique_out(&self, i1: usize, i2: usize, a: usize, b: usize) -> Option<usize> {
        let t = self.arrows[a].tgt;
        let mut found = None;
        for &u in &self.hom[self.arrows[i1].tgt][t] {
            if self.comp(i1, u) == a && self.comp(i2, u) == b {
                if found.is_some() {
                    return None;
                }
                found = Some(u);
            }
        }
        found
    }

    fn is_pullback_span(&self, p1: usize, p2: usize, f: usize, g: usize) -> bool {
        let (x, y) = (self.arrows[f].src, self.arrows[g].src);
        (0..self.objects.len()).all(|t| {
            self.cones_into(x, y, t)
                .filter(|&(a, b)| self.comp(a, f) == self.comp(b, g))
                .all(|(a, b)| self.unique_into(p1, p2, a, b).is_some())
        })
    }

    fn is_pushout_cospan(&self, i1: usize, i2: usize, m: usize, f: usize) -> bool {
        let (a, b) = (self.arrows[m].tgt, self.arrows[f].tgt);
        (0..self.objects.len()).all(|t| {
            self.hom[a][t].iter().all(|&u| {
                self.hom[b][t]
                    .iter()
                    .filter(|&&v| self.comp(m, u) == self.comp(f, v))
                    .all(|&v| self.unique_out(i1, i2, u, v).is_some())
            })
        })
    }

    fn check_arrow(&self, f: usize) -> Result<()> {
        if f < self.arrows.len() {
            Ok(())
        } else {
            Err(CatError::TypeMismatch(format!("arrow index {f} out of range")))
        }
    }
}

impl Category for Presentation {
    type Obj = usize;
    type Mor = usize;

    fn descriptor(&self) -> Value {
        let mut d = json!({
            "kind": "presentation",
            "objects": self.objects.len(),
            "arrows": self.arrows.len(),
        });
        if let Some(n) = &self.name {
            d["name"] = json!(n);
        }
        d
    }

    fn dom(&self, f: &usize) -> usize {
        self.arrows[*f].src
    }

    fn cod(&self, f: &usize) -> usize {
        self.arrows[*f].tgt
    }

    fn identity(&self, x: &usize) -> usize {
        self.identities[*x]
    }

    fn compose(&self, f: &usize, g: &usize) -> Result<usize> {
        self.check_arrow(*f)?;
        self.check_arrow(*g)?;
        self.table[f * self.arrows.len() + g]
            .ok_or_else(|| CatError::NotComposable(format!("`{}` then `{}`", self.arrows[*f].id, self.arrows[*g].id)))
    }

    fn is_mono(&self, f: &usize) -> bool {
        let x = self.arrows[*f].src;
        (0..self.objects.len()).all(|t| {
            let hs = &self.hom[t][x];
            let mut images: Vec<usize> = hs.iter().map(|&a| self.comp(a, *f)).collect();
            images.sort_unstable();
            images.dedup();
            images.len() == hs.len()
        })
    }

    fn is_epi(&self, f: &usize) -> bool {
        let y = self.arrows[*f].tgt;
        (0..self.objects.len()).all(|t| {
            let hs = &self.hom[y][t];
            let mut images: Vec<usize> = hs.iter().map(|&a| self.comp(*f, a)).collect();
            images.sort_unstable();
            images.dedup();
            images.len() == hs.len()
        })
    }

    fn is_iso(&self, f: &usize) -> bool {
        let a = &self.arrows[*f];
        self.hom[a.tgt][a.src]
            .iter()
            .any(|&g| self.comp(*f, g) == self.identities[a.src] && self.comp(g, *f) == self.identities[a.tgt])
    }

    fn pullback(&self, f: &usize, g: &usize) -> Result<Span<usize>> {
        if self.arrows[*f].tgt != self.arrows[*g].tgt {
            return Err(CatError::TypeMismatch("pullback of a non-cospan".into()));
        }
        let (x, y) = (self.arrows[*f].src, self.arrows[*g].src);
        for p in 0..self.objects.len() {
            for (p1, p2) in self.cones_into(x, y, p) {
                if self.comp(p1, *f) == self.comp(p2, *g) && self.is_pullback_span(p1, p2, *f, *g) {
                    return Ok(Span { left: p1, right: p2 });
                }
            }
        }
        Err(CatError::UnsupportedLimit(format!(
            "no pullback of `{}` and `{}` in the presentation",
            self.arrows[*f].id, self.arrows[*g].id
        )))
    }

    fn pullback_lift(&self, pb: &Span<usize>, x: &usize, y: &usize) -> Option<usize> {
        if self.arrows[*x].src != self.arrows[*y].src {
            return None;
        }
        self.unique_into(pb.left, pb.right, *x, *y)
    }

    fn admits_pushout(&self, _m: &usize) -> bool {
        true
    }

    fn pushout(&self, m: &usize, f: &usize) -> Result<Cospan<usize>> {
        if self.arrows[*m].src != self.arrows[*f].src {
            return Err(CatError::TypeMismatch("pushout of a non-span".into()));
        }
        let (a, b) = (self.arrows[*m].tgt, self.arrows[*f].tgt);
        for d in 0..self.objects.len() {
            for &i1 in &self.hom[a][d] {
                for &i2 in &self.hom[b][d] {
                    if self.comp(*m, i1) == self.comp(*f, i2) && self.is_pushout_cospan(i1, i2, *m, *f) {
                        return Ok(Cospan { left: i1, right: i2 });
                    }
                }
            }
        }
        Err(CatError::UnsupportedColimit(format!(
            "no pushout of `{}` and `{}` in the presentation",
            self.arrows[*m].id, self.arrows[*f].id
        )))
    }

    fn pushout_lift(&self, po: &Cospan<usize>, x: &usize, y: &usize) -> Option<usize> {
        if self.arrows[*x].tgt != self.arrows[*y].tgt {
            return None;
        }
        self.unique_out(po.left, po.right, *x, *y)
    }

    fn equalizer(&self, u: &usize, v: &usize) -> Result<usize> {
        let x = self.arrows[*u].src;
        let equalizes = |e: usize| self.comp(e, *u) == self.comp(e, *v);
        for p in 0..self.objects.len() {
            for &e in &self.hom[p][x] {
                if !equalizes(e) {
                    continue;
                }
                let universal = (0..self.objects.len()).all(|t| {
                    self.hom[t][x]
                        .iter()
                        .filter(|&&a| equalizes(a))
                        .all(|&a| self.hom[t][p].iter().filter(|&&w| self.comp(w, e) == a).count() == 1)
                });
                if universal {
                    return Ok(e);
                }
            }
        }
        Err(CatError::UnsupportedLimit("no equalizer in the presentation".into()))
    }

    fn coequalizer(&self, u: &usize, v: &usize) -> Result<usize> {
        let y = self.arrows[*u].tgt;
        let coequalizes = |q: usize| self.comp(*u, q) == self.comp(*v, q);
        for p in 0..self.objects.len() {
            for &q in &self.hom[y][p] {
                if !coequalizes(q) {
                    continue;
                }
                let universal = (0..self.objects.len()).all(|t| {
                    self.hom[y][t]
                        .iter()
                        .filter(|&&a| coequalizes(a))
                        .all(|&a| self.hom[p][t].iter().filter(|&&w| self.comp(q, w) == a).count() == 1)
                });
                if universal {
                    return Ok(q);
                }
            }
        }
        Err(CatError::UnsupportedColimit("no coequalizer in the presentation".into()))
    }

    fn factor_through(&self, x: &usize, mono: &usize) -> Option<usize> {
        self.hom[self.arrows[*x].src][self.arrows[*mono].src].iter().copied().find(|&w| self.comp(w, *mono) == *x)
    }

    fn is_jointly_epi(&self, family: &[usize]) -> bool {
        let Some(&first) = family.first() else {
            return false;
        };
        let d = self.arrows[first].tgt;
        (0..self.objects.len()).all(|t| {
            let hs = &self.hom[d][t];
            hs.iter()
                .enumerate()
                .all(|(i, &u)| hs[i + 1..].iter().all(|&v| family.iter().any(|&h| self.comp(h, u) != self.comp(h, v))))
        })
    }

    fn objects(&self, _bound: usize) -> Result<Vec<usize>> {
        Ok((0..self.objects.len()).collect())
    }

    fn hom(&self, x: &usize, y: &usize) -> Vec<usize> {
        self.hom[*x][*y].clone()
    }

    fn size(&self, _x: &usize) -> usize {
        1
    }

    fn obj_to_json(&self, x: &usize) -> Value {
        json!(self.objects[*x])
    }

    fn mor_to_json(&self, f: &usize) -> Value {
        json!(self.arrows[*f].id)
    }

    fn mor_from_json(&self, v: &Value) -> Result<usize> {
        let s = v.as_str().ok_or_else(|| parse_err("arrow references must be strings"))?;
        self.arrow(s).ok_or_else(|| parse_err(format!("unknown arrow `{s}`")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// The walking arrow `0 → 1`.
    fn arrow_cat() -> Presentation {
        Presentation::from_json(&json!({
            "objects": ["0", "1"],
            "arrows": [{"id": "u", "src": "0", "tgt": "1"}],
        }))
        .unwrap()
    }

    #[test]
    fn identities_are_added() {
        let p = arrow_cat();
        assert_eq!(p.arrows().len(), 3);
        let u = p.arrow("u").unwrap();
        assert_eq!(p.comp(p.identity(&0), u), u);
        assert!(p.is_mono(&u) && p.is_epi(&u) && !p.is_iso(&u));
    }

    #[test]
    fn missing_composite_is_rejected() {
        let v = json!({
            "objects": ["0"],
            "arrows": [{"id": "e", "src": "0", "tgt": "0"}],
        });
        assert!(matches!(Presentation::from_json(&v), Err(CatError::Invalid(_))));
    }

    #[test]
    fn idempotent_roundtrips() {
        let v = json!({
            "objects": ["0"],
            "arrows": [{"id": "e", "src": "0", "tgt": "0"}],
            "compose": [["e", "e", "e"]],
        });
        let p = Presentation::from_json(&v).unwrap();
        let back = Presentation::from_json(&p.to_json()).unwrap();
        assert_eq!(p, back);
        assert_eq!(p.generators(), vec![0]);
    }

    #[test]
    fn bad_associativity_is_rejected() {
        // a;b = c and b;a = c' with a, b swapping, but c;a ≠ a;c'.
        let v = json!({
            "objects": ["0"],
            "arrows": [{"id": "a", "src": "0", "tgt": "0"}, {"id": "z", "src": "0", "tgt": "0"}],
            "identities": {},
            "compose": [["a", "a", "z"], ["a", "z", "a"], ["z", "a", "z"], ["z", "z", "z"]],
        });
        assert!(Presentation::from_json(&v).is_err());
    }

    #[test]
    fn pullback_over_terminal_in_arrow_category() {
        let p = arrow_cat();
        let u = p.arrow("u").unwrap();
        let id1 = p.identity(&1);
        let pb = p.pullback(&u, &id1).unwrap();
        assert_eq!(p.dom(&pb.left), 0);
        assert!(p.pullback(&u, &u).is_ok());
        let po = p.pushout(&u, &u).unwrap();
        assert_eq!(p.cod(&po.left), 1);
    }
}
