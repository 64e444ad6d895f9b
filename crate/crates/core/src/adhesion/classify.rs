//! The adhesive / rm-adhesive / q-adhesive classification at a bound, and
//! the agreement of the three equivalent conditions for monomorphisms.

use std::collections::{BTreeMap, HashSet};
use std::hash::Hash;

use serde::Serialize;
use serde_json::{json, Value};

use super::morphism::{adhesive_failure_memo, pre_adhesive_failure};
use super::vk::van_kampen_failure;
use crate::category::Category;
use crate::colimit::{regular_mono_failure, union_data};
use crate::diagram::Square;
use crate::error::Result;
use crate::instances::StructCat;
use crate::probe::{probes_from, probes_into};
use crate::witness::Witness;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Flag {
    /// `"verified"` (at the bound) or `"refuted"`.
    pub status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl Flag {
    fn verified() -> Self {
        Flag { status: "verified", witness: None }
    }

    fn refuted(w: Witness) -> Self {
        Flag { status: "refuted", witness: Some(w) }
    }

    pub fn holds(&self) -> bool {
        self.status == "verified"
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Classification {
    pub category: Value,
    pub bound: usize,
    pub adhesive: Flag,
    pub rm_adhesive: Flag,
    pub q_adhesive: Flag,
    pub monos_checked: usize,
    pub regular_monos_checked: usize,
    pub regular_pairs_checked: usize,
}

/// Monomorphisms into objects of size at most `bound`, one per isomorphism
/// class of arrows as decided by `key`, grouped by codomain in canonical
/// order.
pub fn monos_by_codomain<C, K>(cat: &C, bound: usize, key: impl Fn(&C::Mor) -> K) -> Result<Vec<(C::Obj, Vec<C::Mor>)>>
where
    C: Category,
    K: Eq + Hash,
{
    let objects = cat.objects(bound)?;
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for x in &objects {
        let mut monos = Vec::new();
        for c in &objects {
            for m in cat.hom(c, x) {
                if cat.is_mono(&m) && seen.insert(key(&m)) {
                    monos.push(m);
                }
            }
        }
        out.push((x.clone(), monos));
    }
    Ok(out)
}

/// Classification with a caller-supplied notion of "same mono". The key must
/// identify monos up to isomorphism of arrows; it also memoizes the
/// pre-adhesive checks of pulled-back monos.
pub fn classify_with<C, K>(cat: &C, bound: usize, key: impl Fn(&C::Mor) -> K) -> Result<Classification>
where
    C: Category,
    K: Eq + Hash,
{
    let groups = monos_by_codomain(cat, bound, &key)?;
    let mut passed = HashSet::new();
    let mut adhesive = Flag::verified();
    let mut q = Flag::verified();
    let mut regular_by_target: Vec<Vec<C::Mor>> = Vec::new();
    let (mut monos_checked, mut regular_checked) = (0, 0);
    for (_, monos) in &groups {
        let mut regular = Vec::new();
        for m in monos {
            monos_checked += 1;
            let is_regular = regular_mono_failure(cat, m)?.is_none();
            if is_regular {
                regular_checked += 1;
                regular.push(m.clone());
            }
            if !adhesive.holds() && (!is_regular || !q.holds()) {
                continue;
            }
            if let Some(cex) = adhesive_failure_memo(cat, m, bound, |n| Some(key(n)), &mut passed)? {
                let w =
                    Witness::fail("is_adhesive_morphism", cat.descriptor(), cat.mor_to_json(m), cex).with_bound(bound);
                if adhesive.holds() {
                    adhesive = Flag::refuted(w.clone());
                }
                if is_regular && q.holds() {
                    q = Flag::refuted(w);
                }
            }
        }
        regular_by_target.push(regular);
    }

    let mut pairs_checked = 0;
    let rm = if let Some(w) = &q.witness {
        Flag::refuted(w.clone().with_note("q-adhesivity already fails"))
    } else {
        let mut found = None;
        'outer: for regular in &regular_by_target {
            for (i, m1) in regular.iter().enumerate() {
                for m2 in &regular[i + 1..] {
                    pairs_checked += 1;
                    if let Some(cex) = regular_union_failure(cat, m1, m2)? {
                        let subject = json!({ "m1": cat.mor_to_json(m1), "m2": cat.mor_to_json(m2) });
                        found = Some(Witness::fail("regular_union", cat.descriptor(), subject, cex).with_bound(bound));
                        break 'outer;
                    }
                }
            }
        }
        found.map_or_else(Flag::verified, Flag::refuted)
    };

    Ok(Classification {
        category: cat.descriptor(),
        bound,
        adhesive,
        rm_adhesive: rm,
        q_adhesive: q,
        monos_checked,
        regular_monos_checked: regular_checked,
        regular_pairs_checked: pairs_checked,
    })
}

/// `None` when the union of two regular subobjects is effective and regular.
pub fn regular_union_failure<C: Category>(cat: &C, m1: &C::Mor, m2: &C::Mor) -> Result<Option<Value>> {
    let u = union_data(cat, m1, m2)?;
    if !cat.is_mono(&u.x) {
        return Ok(Some(json!({ "reason": "union is not effective", "union": cat.mor_to_json(&u.x) })));
    }
    Ok(regular_mono_failure(cat, &u.x)?.map(|why| {
        json!({
            "reason": "union is not a regular monomorphism",
            "union": cat.mor_to_json(&u.x),
            "regular_mono": why,
        })
    }))
}

pub fn classify(cat: &StructCat, bound: usize) -> Result<Classification> {
    classify_with(cat, bound, |m| cat.arrow_key(m))
}

/// The three equivalent conditions on monomorphisms, decided independently.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Coherence {
    pub all_pre_adhesive: bool,
    pub all_adhesive: bool,
    pub all_van_kampen: bool,
}

impl Coherence {
    pub fn agree(&self) -> bool {
        self.all_pre_adhesive == self.all_adhesive && self.all_adhesive == self.all_van_kampen
    }
}

pub fn mono_coherence(cat: &StructCat, bound: usize) -> Result<Coherence> {
    let key = |m: &crate::instances::Hom| cat.arrow_key(m);
    let groups = monos_by_codomain(cat, bound, key)?;
    let mut passed = HashSet::new();
    let monos: Vec<_> = groups.into_iter().flat_map(|(_, ms)| ms).collect();
    let mut pre = true;
    let mut adh = true;
    let mut vk = true;
    let mut probe_cache = BTreeMap::new();
    for m in &monos {
        pre &= pre_adhesive_failure(cat, m, bound)?.is_none();
        adh &= adhesive_failure_memo(cat, m, bound, |n| Some(key(n)), &mut passed)?.is_none();
        for f in probes_from(cat, &m.dom, bound)? {
            let po = cat.pushout(m, &f)?;
            let sq = Square::new(m.clone(), f, po.left, po.right);
            let d = sq.g.cod.clone();
            if !probe_cache.contains_key(&d) {
                let probes = probes_into(cat, &d, bound)?;
                probe_cache.insert(d.clone(), probes);
            }
            vk &= van_kampen_failure(cat, &sq, &probe_cache[&d], bound)?.is_none();
        }
    }
    Ok(Coherence { all_pre_adhesive: pre, all_adhesive: adh, all_van_kampen: vk })
}
