//! The shipped demo sites: one pushout square in FinSet, saturated into a
//! finite category that contains the kernel pairs of `f` and `g` and every
//! mediating map the square and those kernel pairs need.
//!
//! With `m = (0,1): 2 → 3` and `f` collapsing both points of `C = 2`:
//!
//! - four objects: `f: 2 → 2`, so `B = C` and `D = A`; objects `2, 3, 4, 5`;
//! - five objects: `f: 2 → 1`, so `B = 1`, `D = 2`; objects `1, 2, 3, 4, 5`.

use std::collections::{BTreeMap, BTreeSet};

use serde_json::{json, Value};

use crate::category::Category;
use crate::colimit::kernel_pair;
use crate::diagram::Square;
use crate::error::Result;
use crate::instances::{Hom, StructCat};
use crate::presentation::{Arrow, Presentation};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Demo {
    FourObject,
    FiveObject,
}

impl Demo {
    pub fn file_name(self) -> &'static str {
        match self {
            Demo::FourObject => "demo4.json",
            Demo::FiveObject => "demo5.json",
        }
    }

    /// The shipped site file.
    pub fn shipped(self) -> &'static str {
        match self {
            Demo::FourObject => include_str!("../../data/demo4.json"),
            Demo::FiveObject => include_str!("../../data/demo5.json"),
        }
    }

    pub fn from_name(s: &str) -> Option<Demo> {
        match s {
            "demo4" => Some(Demo::FourObject),
            "demo5" => Some(Demo::FiveObject),
            _ => None,
        }
    }
}

/// A presheaf on the five-object demo that fails the sheaf condition but is
/// k-separated, with jointly monic `F(δ)`, `F(m₂)`.
pub const REFUTATION_5: &str = include_str!("../../data/refute5.json");
/// A j-sheaf on the five-object demo that is not k-separated.
pub const UNSEPARATED_5: &str = include_str!("../../data/unseparated5.json");

/// Site JSON for the demo (presentation plus its one declared square).
pub fn demo_site_json(which: Demo) -> Result<Value> {
    let cat = StructCat::finset();
    let (two, three) = (cat.set(2), cat.set(3));
    let m = cat.map(&two, &three, &[0, 1])?;
    let (f, g, n) = match which {
        Demo::FourObject => {
            (cat.map(&two, &two, &[0, 0])?, cat.map(&three, &three, &[0, 0, 1])?, cat.map(&two, &three, &[0, 2])?)
        }
        Demo::FiveObject => {
            let (one, two_d) = (cat.set(1), cat.set(2));
            (cat.map(&two, &one, &[0, 0])?, cat.map(&three, &two_d, &[0, 0, 1])?, cat.map(&one, &two_d, &[0])?)
        }
    };
    let kf = kernel_pair(&cat, &f)?;
    let kg = kernel_pair(&cat, &g)?;
    let m2 = cat
        .pullback_lift(&kg.span(), &cat.then(&kf.p1, &m), &cat.then(&kf.p2, &m))
        .expect("kernel pairs admit the induced map");
    let named: Vec<(&str, Hom)> = vec![
        ("m", m.clone()),
        ("f", f.clone()),
        ("g", g.clone()),
        ("n", n.clone()),
        ("f1", kf.p1.clone()),
        ("f2", kf.p2.clone()),
        ("g1", kg.p1.clone()),
        ("g2", kg.p2.clone()),
        ("gamma", kf.diagonal.clone()),
        ("delta", kg.diagonal.clone()),
        ("m2", m2),
    ];
    let arrows = saturate(&cat, &named, &Square::new(m, f, g, n), &[kf.span(), kg.span()]);
    let mut sizes: Vec<usize> = arrows.iter().flat_map(|h| [h.dom.sorts[0], h.cod.sorts[0]]).collect();
    sizes.sort_unstable();
    sizes.dedup();
    let names: BTreeMap<&Hom, String> = {
        let mut out = BTreeMap::new();
        for (name, h) in &named {
            assert!(out.insert(h, name.to_string()).is_none(), "demo generators are distinct");
        }
        let mut k = 0;
        for h in &arrows {
            if out.contains_key(h) {
                continue;
            }
            let name = if h.dom == h.cod && h.maps[0].iter().enumerate().all(|(i, &x)| i == x) {
                format!("id_{}", h.dom.sorts[0])
            } else {
                k += 1;
                format!("a{k}")
            };
            out.insert(h, name);
        }
        out
    };
    let index: BTreeMap<&Hom, usize> = arrows.iter().enumerate().map(|(i, h)| (h, i)).collect();
    let obj = |n: usize| sizes.iter().position(|&s| s == n).expect("object present");
    let arrow_list: Vec<Arrow> = arrows
        .iter()
        .map(|h| Arrow { id: names[h].clone(), src: obj(h.dom.sorts[0]), tgt: obj(h.cod.sorts[0]) })
        .collect();
    let identities = sizes.iter().map(|&s| Some(index[&cat.identity(&cat.set(s))])).collect();
    let mut compose = Vec::new();
    for (i, a) in arrows.iter().enumerate() {
        for (j, b) in arrows.iter().enumerate() {
            if a.cod == b.dom {
                compose.push((i, j, index[&cat.then(a, b)]));
            }
        }
    }
    let name = match which {
        Demo::FourObject => "finset-demo-4",
        Demo::FiveObject => "finset-demo-5",
    };
    let p = Presentation::new(
        Some(name.to_string()),
        sizes.iter().map(|s| s.to_string()).collect(),
        arrow_list,
        identities,
        &compose,
    )?;
    let mut v = p.to_json();
    v["squares"] = json!([{ "m": "m", "f": "f", "g": "g", "n": "n" }]);
    Ok(v)
}

/// Closes the generators under composition, pushout mediators out of the
/// square, and pullback mediators into the given spans.
fn saturate(
    cat: &StructCat,
    named: &[(&str, Hom)],
    sq: &Square<Hom>,
    spans: &[crate::category::Span<Hom>],
) -> Vec<Hom> {
    let mut arrows: BTreeSet<Hom> = named.iter().map(|(_, h)| h.clone()).collect();
    let objects: BTreeSet<_> = arrows.iter().flat_map(|h| [h.dom.clone(), h.cod.clone()]).collect();
    for x in &objects {
        arrows.insert(cat.identity(x));
    }
    let po = crate::category::Cospan { left: sq.g.clone(), right: sq.n.clone() };
    loop {
        loop {
            let list: Vec<Hom> = arrows.iter().cloned().collect();
            let before = arrows.len();
            for a in &list {
                for b in &list {
                    if a.cod == b.dom {
                        arrows.insert(cat.then(a, b));
                    }
                }
            }
            if arrows.len() == before {
                break;
            }
        }
        let list: Vec<Hom> = arrows.iter().cloned().collect();
        let mut added = BTreeSet::new();
        let (a_obj, b_obj) = (sq.m.cod.clone(), sq.f.cod.clone());
        for u in list.iter().filter(|u| u.dom == a_obj) {
            for v in list.iter().filter(|v| v.dom == b_obj && v.cod == u.cod) {
                if cat.then(&sq.m, u) == cat.then(&sq.f, v) {
                    added.insert(cat.pushout_lift(&po, u, v).expect("pushout mediator"));
                }
            }
        }
        for span in spans {
            let (x, y) = (span.left.cod.clone(), span.right.cod.clone());
            for a in list.iter().filter(|a| a.cod == x) {
                for b in list.iter().filter(|b| b.cod == y && b.dom == a.dom) {
                    if let Some(w) = cat.pullback_lift(span, a, b) {
                        added.insert(w);
                    }
                }
            }
        }
        let before = arrows.len();
        arrows.extend(added);
        if arrows.len() == before {
            return arrows.into_iter().collect();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn demo_sizes() {
        let four = Presentation::from_json(&demo_site_json(Demo::FourObject).unwrap()).unwrap();
        assert_eq!(four.object_names(), ["2", "3", "4", "5"]);
        assert_eq!(four.arrows().len(), 146);
        let five = Presentation::from_json(&demo_site_json(Demo::FiveObject).unwrap()).unwrap();
        assert_eq!(five.object_names().len(), 5);
        assert_eq!(five.arrows().len(), 77);
    }
}
