//! Set-valued contravariant functors.
//!
//! Elements of `F(X)` are indexed `0..|F(X)|`; the action of `f: X → Y` is
//! stored as a table from `F(Y)` to `F(X)`.
//!
//! JSON form (on a [`Presentation`]):
//!
//! ```json
//! { "sets": {"X": ["a", "b"], "Y": ["c"]},
//!   "maps": {"u": {"c": "a"}} }
//! ```
//!
//! `maps[u]` sends each element of `F(tgt u)` to one of `F(src u)`. Actions
//! of identities, and of composites whose factors are given, may be left
//! out; they are derived and then checked for functoriality.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::hash::Hash;

use serde_json::{json, Map, Value};

use crate::category::Category;
use crate::error::{CatError, Result};
use crate::presentation::Presentation;

/// Anything that evaluates like a presheaf on `C`.
pub trait SetFunctor<C: Category> {
    fn card(&self, cat: &C, x: &C::Obj) -> Result<usize>;
    /// `F(f): F(cod f) → F(dom f)`.
    fn act(&self, cat: &C, f: &C::Mor) -> Result<Vec<usize>>;
    /// Display form of element `i` of `F(x)`.
    fn element(&self, cat: &C, x: &C::Obj, i: usize) -> Value;
    fn to_json(&self, cat: &C) -> Value;
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presheaf {
    labels: Vec<Vec<Value>>,
    act: Vec<Vec<usize>>,
}

fn parse_err(msg: impl Into<String>) -> CatError {
    CatError::Parse(msg.into())
}

fn label_key(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// `F(g ∘ f) = F(f) ∘ F(g)`: apply `F(g)` first, then `F(f)`.
fn compose_action(ff: &[usize], fg: &[usize]) -> Vec<usize> {
    fg.iter().map(|&y| ff[y]).collect()
}

/// Fills in every action that follows from the known ones (`None` marks an
/// unknown action). Returns `false` on the first inconsistency.
fn propagate(rels: &[(usize, usize, usize)], act: &mut [Option<Vec<usize>>]) -> bool {
    loop {
        let mut grew = false;
        for &(f, g, h) in rels {
            if let (Some(ff), Some(fg)) = (&act[f], &act[g]) {
                let derived = compose_action(ff, fg);
                match &act[h] {
                    Some(fh) if *fh != derived => return false,
                    Some(_) => {}
                    None => {
                        act[h] = Some(derived);
                        grew = true;
                    }
                }
            }
        }
        if !grew {
            return true;
        }
    }
}

impl Presheaf {
    /// Builds a presheaf from sizes and a full set of actions, checking
    /// functoriality.
    pub fn new(p: &Presentation, sizes: &[usize], act: Vec<Vec<usize>>) -> Result<Self> {
        let labels = sizes.iter().map(|&n| (0..n).map(|i| json!(i)).collect()).collect();
        let f = Presheaf { labels, act };
        f.validate(p)?;
        Ok(f)
    }

    fn validate(&self, p: &Presentation) -> Result<()> {
        if self.labels.len() != p.object_names().len() || self.act.len() != p.arrows().len() {
            return Err(CatError::Invalid("presheaf does not match the presentation".into()));
        }
        for (i, a) in p.arrows().iter().enumerate() {
            let t = &self.act[i];
            if t.len() != self.labels[a.tgt].len() || t.iter().any(|&x| x >= self.labels[a.src].len()) {
                return Err(CatError::Invalid(format!("action of `{}` has the wrong type", a.id)));
            }
            if p.is_identity(i) && t.iter().enumerate().any(|(k, &x)| k != x) {
                return Err(CatError::Invalid(format!("identity `{}` does not act trivially", a.id)));
            }
        }
        for (f, g, h) in p.relations() {
            if compose_action(&self.act[f], &self.act[g]) != self.act[h] {
                return Err(CatError::Invalid(format!(
                    "not functorial on `{}` then `{}`",
                    p.arrow_name(f),
                    p.arrow_name(g)
                )));
            }
        }
        Ok(())
    }

    pub fn from_json(p: &Presentation, v: &Value) -> Result<Self> {
        let sets =
            v.get("sets").and_then(Value::as_object).ok_or_else(|| parse_err("presheaf needs a `sets` object"))?;
        let mut labels = vec![None; p.object_names().len()];
        for (o, elems) in sets {
            let x = p.object(o).ok_or_else(|| parse_err(format!("unknown object `{o}`")))?;
            let elems = elems.as_array().ok_or_else(|| parse_err(format!("F({o}) must be an array")))?;
            let mut seen = std::collections::HashSet::new();
            for e in elems {
                if !seen.insert(label_key(e)) {
                    return Err(parse_err(format!("F({o}) repeats element {e}")));
                }
            }
            labels[x] = Some(elems.clone());
        }
        let labels: Vec<Vec<Value>> = labels
            .into_iter()
            .enumerate()
            .map(|(x, l)| l.ok_or_else(|| parse_err(format!("no set given for `{}`", p.object_names()[x]))))
            .collect::<Result<_>>()?;
        let index: Vec<HashMap<String, usize>> =
            labels.iter().map(|l| l.iter().enumerate().map(|(i, e)| (label_key(e), i)).collect()).collect();
        let mut act: Vec<Option<Vec<usize>>> = vec![None; p.arrows().len()];
        for (i, a) in p.arrows().iter().enumerate() {
            if p.is_identity(i) {
                act[i] = Some((0..labels[a.src].len()).collect());
            }
        }
        if let Some(maps) = v.get("maps") {
            let maps = maps.as_object().ok_or_else(|| parse_err("`maps` must be an object"))?;
            for (id, table) in maps {
                let i = p.arrow(id).ok_or_else(|| parse_err(format!("unknown arrow `{id}`")))?;
                let a = &p.arrows()[i];
                let table = table.as_object().ok_or_else(|| parse_err(format!("map of `{id}` must be an object")))?;
                let mut t = vec![None; labels[a.tgt].len()];
                for (y, x) in table {
                    let yi = *index[a.tgt].get(y).ok_or_else(|| parse_err(format!("`{y}` is not in F(tgt {id})")))?;
                    let xi = *index[a.src]
                        .get(&label_key(x))
                        .ok_or_else(|| parse_err(format!("{x} is not in F(src {id})")))?;
                    t[yi] = Some(xi);
                }
                let t: Vec<usize> = t
                    .into_iter()
                    .collect::<Option<_>>()
                    .ok_or_else(|| parse_err(format!("map of `{id}` is partial")))?;
                act[i] = Some(t);
            }
        }
        let rels = p.relations();
        if !propagate(&rels, &mut act) {
            return Err(CatError::Invalid("given actions are not functorial".into()));
        }
        let act: Vec<Vec<usize>> = act
            .into_iter()
            .enumerate()
            .map(|(i, t)| t.ok_or_else(|| parse_err(format!("no action for `{}` and none derivable", p.arrow_name(i)))))
            .collect::<Result<_>>()?;
        let f = Presheaf { labels, act };
        f.validate(p)?;
        Ok(f)
    }

    /// The constant one-element presheaf.
    pub fn terminal(p: &Presentation) -> Self {
        let n = p.object_names().len();
        Presheaf::new(p, &vec![1; n], vec![vec![0]; p.arrows().len()]).expect("terminal presheaf is functorial")
    }

    /// `hom(-, x)` as an explicit presheaf; elements are arrow ids.
    pub fn representable(p: &Presentation, x: usize) -> Self {
        let n = p.object_names().len();
        let labels: Vec<Vec<Value>> =
            (0..n).map(|y| p.homset(y, x).iter().map(|&u| json!(p.arrow_name(u))).collect()).collect();
        let act = p
            .arrows()
            .iter()
            .enumerate()
            .map(|(f, a)| {
                p.homset(a.tgt, x)
                    .iter()
                    .map(|&u| {
                        let fu = p.comp(f, u);
                        p.homset(a.src, x).iter().position(|&v| v == fu).expect("composite lies in the hom-set")
                    })
                    .collect()
            })
            .collect();
        Presheaf { labels, act }
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.labels.iter().map(Vec::len).collect()
    }

    pub fn table(&self, f: usize) -> &[usize] {
        &self.act[f]
    }
}

impl SetFunctor<Presentation> for Presheaf {
    fn card(&self, _cat: &Presentation, x: &usize) -> Result<usize> {
        Ok(self.labels[*x].len())
    }

    fn act(&self, _cat: &Presentation, f: &usize) -> Result<Vec<usize>> {
        Ok(self.act[*f].clone())
    }

    fn element(&self, _cat: &Presentation, x: &usize, i: usize) -> Value {
        self.labels[*x][i].clone()
    }

    /// Lists every action except those of identities.
    fn to_json(&self, cat: &Presentation) -> Value {
        let sets: Map<String, Value> =
            cat.object_names().iter().zip(&self.labels).map(|(o, l)| (o.clone(), Value::Array(l.clone()))).collect();
        let mut maps = Map::new();
        for (i, a) in cat.arrows().iter().enumerate() {
            if cat.is_identity(i) {
                continue;
            }
            let t: BTreeMap<String, Value> = self.act[i]
                .iter()
                .enumerate()
                .map(|(y, &x)| (label_key(&self.labels[a.tgt][y]), self.labels[a.src][x].clone()))
                .collect();
            maps.insert(a.id.clone(), json!(t));
        }
        json!({ "sets": sets, "maps": maps })
    }
}

/// `hom(-, x)` on any category, evaluated on demand.
pub struct Representable<C: Category> {
    pub x: C::Obj,
    cache: RefCell<HashMap<C::Obj, (Vec<C::Mor>, HashMap<C::Mor, usize>)>>,
}

impl<C> Representable<C>
where
    C: Category,
    C::Obj: Eq + Hash,
    C::Mor: Eq + Hash,
{
    pub fn new(x: C::Obj) -> Self {
        Representable { x, cache: RefCell::new(HashMap::new()) }
    }

    fn with_hom<T>(&self, cat: &C, y: &C::Obj, k: impl FnOnce(&(Vec<C::Mor>, HashMap<C::Mor, usize>)) -> T) -> T {
        let mut cache = self.cache.borrow_mut();
        let entry = cache.entry(y.clone()).or_insert_with(|| {
            let hs = cat.hom(y, &self.x);
            let index = hs.iter().cloned().enumerate().map(|(i, u)| (u, i)).collect();
            (hs, index)
        });
        k(entry)
    }
}

impl<C> SetFunctor<C> for Representable<C>
where
    C: Category,
    C::Obj: Eq + Hash,
    C::Mor: Eq + Hash,
{
    fn card(&self, cat: &C, x: &C::Obj) -> Result<usize> {
        Ok(self.with_hom(cat, x, |(hs, _)| hs.len()))
    }

    fn act(&self, cat: &C, f: &C::Mor) -> Result<Vec<usize>> {
        let (src, tgt) = (cat.dom(f), cat.cod(f));
        let targets = self.with_hom(cat, &tgt, |(hs, _)| hs.clone());
        let mut out = Vec::with_capacity(targets.len());
        for u in &targets {
            let fu = cat.compose(f, u)?;
            let i = self.with_hom(cat, &src, |(_, index)| index.get(&fu).copied());
            out.push(i.ok_or_else(|| CatError::Invalid("hom-set enumeration is not closed".into()))?);
        }
        Ok(out)
    }

    fn element(&self, cat: &C, x: &C::Obj, i: usize) -> Value {
        self.with_hom(cat, x, |(hs, _)| cat.mor_to_json(&hs[i]))
    }

    fn to_json(&self, cat: &C) -> Value {
        json!({ "representable": cat.obj_to_json(&self.x) })
    }
}

/// Either form a presheaf serializes to: a table, or
/// `{"representable": "X"}`.
pub fn presheaf_from_json(p: &Presentation, v: &Value) -> Result<Box<dyn SetFunctor<Presentation>>> {
    match v.get("representable") {
        Some(x) => {
            let name = x.as_str().ok_or_else(|| parse_err("`representable` must name an object"))?;
            let x = p.object(name).ok_or_else(|| parse_err(format!("unknown object `{name}`")))?;
            Ok(Box::new(Representable::<Presentation>::new(x)))
        }
        None => Ok(Box::new(Presheaf::from_json(p, v)?)),
    }
}

/// Calls `visit` on every presheaf on `p` whose sets have at most `max`
/// elements, in a fixed order. Elements are numbered, so presheaves that
/// differ only by relabelling are all visited. Stops early when `visit`
/// returns `false`; returns the number visited.
pub fn for_each_presheaf(p: &Presentation, max: usize, mut visit: impl FnMut(&Presheaf) -> bool) -> usize {
    let n = p.object_names().len();
    let rels = p.relations();
    let mut by_arrow = vec![Vec::new(); p.arrows().len()];
    for (r, &(f, g, h)) in rels.iter().enumerate() {
        by_arrow[f].push(r);
        by_arrow[g].push(r);
        if h != f && h != g {
            by_arrow[h].push(r);
        }
    }
    let mut count = 0;
    let mut sizes = vec![0; n];
    loop {
        // F(Y) nonempty and an arrow X → Y force F(X) nonempty.
        let feasible = p.arrows().iter().all(|a| sizes[a.tgt] == 0 || sizes[a.src] > 0);
        if feasible {
            let solver = Solver { p, rels: &rels, by_arrow: &by_arrow, sizes: &sizes };
            let mut act: Vec<Option<Vec<usize>>> = vec![None; p.arrows().len()];
            for (i, a) in p.arrows().iter().enumerate() {
                if p.is_identity(i) {
                    act[i] = Some((0..sizes[a.src]).collect());
                }
            }
            let mut stop = false;
            solver.search(&mut act, &mut |f| {
                count += 1;
                if !visit(f) {
                    stop = true;
                }
                !stop
            });
            if stop {
                return count;
            }
        }
        // next size vector, odometer style
        let mut i = 0;
        loop {
            if i == n {
                return count;
            }
            if sizes[i] < max {
                sizes[i] += 1;
                break;
            }
            sizes[i] = 0;
            i += 1;
        }
    }
}

/// Backtracking with forward checking over the composition relations.
struct Solver<'a> {
    p: &'a Presentation,
    rels: &'a [(usize, usize, usize)],
    by_arrow: &'a [Vec<usize>],
    sizes: &'a [usize],
}

impl Solver<'_> {
    /// Derives composites from newly known arrows. `false` on conflict.
    fn propagate(&self, act: &mut [Option<Vec<usize>>], mut queue: Vec<usize>) -> bool {
        while let Some(a) = queue.pop() {
            for &r in &self.by_arrow[a] {
                let (f, g, h) = self.rels[r];
                let derived = match (&act[f], &act[g]) {
                    (Some(ff), Some(fg)) => compose_action(ff, fg),
                    _ => continue,
                };
                match &act[h] {
                    Some(fh) if *fh != derived => return false,
                    Some(_) => {}
                    None => {
                        act[h] = Some(derived);
                        queue.push(h);
                    }
                }
            }
        }
        true
    }

    /// Whether table `t` for arrow `a` agrees with every relation whose other
    /// two arrows are known.
    fn consistent(&self, act: &[Option<Vec<usize>>], a: usize, t: &[usize]) -> bool {
        let get = |x: usize| if x == a { Some(t) } else { act[x].as_deref() };
        self.by_arrow[a].iter().all(|&r| {
            let (f, g, h) = self.rels[r];
            match (get(f), get(g), get(h)) {
                (Some(ff), Some(fg), Some(fh)) => compose_action(ff, fg) == fh,
                _ => true,
            }
        })
    }

    /// The unknown arrow in the most relations whose other arrows are known.
    fn pick(&self, act: &[Option<Vec<usize>>]) -> Option<usize> {
        let mut best: Option<(usize, usize)> = None;
        for a in 0..act.len() {
            if act[a].is_some() {
                continue;
            }
            let score = self.by_arrow[a]
                .iter()
                .filter(|&&r| {
                    let (f, g, h) = self.rels[r];
                    [f, g, h].iter().all(|&x| x == a || act[x].is_some())
                })
                .count();
            if best.is_none_or(|(s, _)| score > s) {
                best = Some((score, a));
            }
        }
        best.map(|(_, a)| a)
    }

    fn search(&self, act: &mut Vec<Option<Vec<usize>>>, emit: &mut dyn FnMut(&Presheaf) -> bool) -> bool {
        let Some(a) = self.pick(act) else {
            let full: Vec<Vec<usize>> = act.iter().map(|t| t.clone().expect("every arrow assigned")).collect();
            let labels = self.sizes.iter().map(|&k| (0..k).map(|i| json!(i)).collect()).collect();
            let f = Presheaf { labels, act: full };
            debug_assert!(f.validate(self.p).is_ok());
            return emit(&f);
        };
        let arrow = &self.p.arrows()[a];
        let (dom, len) = (self.sizes[arrow.src], self.sizes[arrow.tgt]);
        if dom == 0 && len > 0 {
            return true;
        }
        let mut table = vec![0; len];
        loop {
            if self.consistent(act, a, &table) {
                let mut trial = act.clone();
                trial[a] = Some(table.clone());
                if self.propagate(&mut trial, vec![a]) && !self.search(&mut trial, emit) {
                    return false;
                }
            }
            let mut i = 0;
            loop {
                if i == len {
                    return true;
                }
                table[i] += 1;
                if table[i] < dom {
                    break;
                }
                table[i] = 0;
                i += 1;
            }
        }
    }
}
