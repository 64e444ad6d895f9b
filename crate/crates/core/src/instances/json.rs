//! JSON boundary for the concrete categories.
//!
//! Objects: `{"elems":[..]}` (sets), `{"V":[..],"E":[..],"src":{..},"tgt":{..}}`
//! (graphs), `{"elems":[..],"rel":[[x,y],..]}` (relations). Morphisms carry
//! their endpoints: `{"dom":obj,"cod":obj,"on":{x:y}}`, graphs use `onV`/`onE`.
//! Labels may be strings or numbers; internally elements are positions.

use std::collections::HashMap;

use serde_json::{json, Map, Value};

use super::{Hom, Kind, StructCat, Structure, EDGES, VERTICES};
use crate::error::{CatError, Result};

/// An object together with the labels it was written with.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Labeled {
    pub obj: Structure,
    pub labels: Vec<Vec<String>>,
}

impl Labeled {
    pub fn plain(obj: Structure) -> Self {
        let labels = obj.sorts.iter().map(|&n| (0..n).map(|i| i.to_string()).collect()).collect();
        Labeled { obj, labels }
    }

    fn index(&self, sort: usize) -> HashMap<&str, usize> {
        self.labels[sort].iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect()
    }
}

fn parse_err(msg: impl Into<String>) -> CatError {
    CatError::Parse(msg.into())
}

fn label(v: &Value) -> Result<String> {
    match v {
        Value::String(s) => Ok(s.clone()),
        Value::Number(n) => Ok(n.to_string()),
        other => Err(parse_err(format!("label must be a string or number, got {other}"))),
    }
}

fn label_list(v: Option<&Value>, field: &str) -> Result<Vec<String>> {
    let arr = v.and_then(Value::as_array).ok_or_else(|| parse_err(format!("missing array `{field}`")))?;
    let labels: Vec<String> = arr.iter().map(label).collect::<Result<_>>()?;
    let mut seen = std::collections::HashSet::new();
    if let Some(dup) = labels.iter().find(|l| !seen.insert(l.as_str())) {
        return Err(parse_err(format!("duplicate label `{dup}` in `{field}`")));
    }
    Ok(labels)
}

fn lookup(index: &HashMap<&str, usize>, v: &Value, what: &str) -> Result<usize> {
    let l = label(v)?;
    index.get(l.as_str()).copied().ok_or_else(|| parse_err(format!("unknown {what} `{l}`")))
}

/// A total table `dom labels → cod labels` from a JSON object.
fn table(v: Option<&Value>, field: &str, dom: &[String], cod: &HashMap<&str, usize>) -> Result<Vec<usize>> {
    let map = v.and_then(Value::as_object).ok_or_else(|| parse_err(format!("missing object `{field}`")))?;
    let dom_index: HashMap<&str, usize> = dom.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
    if let Some(extra) = map.keys().find(|k| !dom_index.contains_key(k.as_str())) {
        return Err(parse_err(format!("`{field}` maps unknown element `{extra}`")));
    }
    dom.iter()
        .map(|l| {
            let target = map.get(l).ok_or_else(|| parse_err(format!("`{field}` is not total: `{l}` unmapped")))?;
            lookup(cod, target, "target element")
        })
        .collect()
}

pub fn object_from_json(cat: &StructCat, v: &Value) -> Result<Labeled> {
    let kind = cat.kind();
    let o = v.as_object().ok_or_else(|| parse_err("object must be a JSON object"))?;
    let parsed = match kind {
        Kind::FinSet => {
            let elems = label_list(o.get("elems"), "elems")?;
            Labeled { obj: cat.set(elems.len()), labels: vec![elems] }
        }
        Kind::FinGraph => {
            let vs = label_list(o.get("V"), "V")?;
            let es = label_list(o.get("E"), "E")?;
            let vindex: HashMap<&str, usize> = vs.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
            let src = table(o.get("src"), "src", &es, &vindex)?;
            let tgt = table(o.get("tgt"), "tgt", &es, &vindex)?;
            let edges: Vec<(usize, usize)> = src.into_iter().zip(tgt).collect();
            Labeled { obj: cat.graph(vs.len(), &edges)?, labels: vec![vs, es] }
        }
        Kind::RelSet | Kind::AcyclicRel => {
            let elems = label_list(o.get("elems"), "elems")?;
            let index: HashMap<&str, usize> = elems.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
            let pairs = o
                .get("rel")
                .and_then(Value::as_array)
                .ok_or_else(|| parse_err("missing array `rel`"))?
                .iter()
                .map(|p| match p.as_array().map(Vec::as_slice) {
                    Some([x, y]) => Ok((lookup(&index, x, "element")?, lookup(&index, y, "element")?)),
                    _ => Err(parse_err("relation pairs must be [x, y]")),
                })
                .collect::<Result<Vec<_>>>()?;
            Labeled { obj: cat.relation(elems.len(), &pairs)?, labels: vec![elems] }
        }
    };
    Ok(parsed)
}

fn indices(n: usize) -> Vec<usize> {
    (0..n).collect()
}

fn int_table(map: &[usize]) -> Value {
    let mut m = Map::new();
    for (i, &v) in map.iter().enumerate() {
        m.insert(i.to_string(), json!(v));
    }
    Value::Object(m)
}

pub fn object_to_json(kind: Kind, s: &Structure) -> Value {
    match kind {
        Kind::FinSet => json!({ "elems": indices(s.sorts[0]) }),
        Kind::FinGraph => json!({
            "V": indices(s.sorts[VERTICES]),
            "E": indices(s.sorts[EDGES]),
            "src": int_table(&s.ops[0]),
            "tgt": int_table(&s.ops[1]),
        }),
        Kind::RelSet | Kind::AcyclicRel => json!({
            "elems": indices(s.sorts[0]),
            "rel": s.rel.iter().map(|&(x, y)| json!([x, y])).collect::<Vec<_>>(),
        }),
    }
}

pub fn hom_to_json(kind: Kind, f: &Hom) -> Value {
    let mut v = json!({
        "dom": object_to_json(kind, &f.dom),
        "cod": object_to_json(kind, &f.cod),
    });
    let o = v.as_object_mut().expect("object literal");
    if kind == Kind::FinGraph {
        o.insert("onV".into(), int_table(&f.maps[VERTICES]));
        o.insert("onE".into(), int_table(&f.maps[EDGES]));
    } else {
        o.insert("on".into(), int_table(&f.maps[0]));
    }
    v
}

/// A morphism between two already-parsed objects, from its `on` tables.
pub fn hom_between(cat: &StructCat, dom: &Labeled, cod: &Labeled, v: &Value) -> Result<Hom> {
    let o = v.as_object().ok_or_else(|| parse_err("morphism must be a JSON object"))?;
    let fields: &[&str] = if cat.kind() == Kind::FinGraph { &["onV", "onE"] } else { &["on"] };
    let maps = fields
        .iter()
        .enumerate()
        .map(|(s, field)| table(o.get(*field), field, &dom.labels[s], &cod.index(s)))
        .collect::<Result<Vec<_>>>()?;
    cat.morphism(&dom.obj, &cod.obj, maps)
}

/// A self-contained morphism `{"dom":..,"cod":..,"on":..}`.
pub fn hom_from_json(cat: &StructCat, v: &Value) -> Result<Hom> {
    let o = v.as_object().ok_or_else(|| parse_err("morphism must be a JSON object"))?;
    let dom = object_from_json(cat, o.get("dom").ok_or_else(|| parse_err("missing `dom`"))?)?;
    let cod = object_from_json(cat, o.get("cod").ok_or_else(|| parse_err("missing `cod`"))?)?;
    hom_between(cat, &dom, &cod, v)
}
