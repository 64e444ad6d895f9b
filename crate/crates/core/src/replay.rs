//! Rerunning a witness from the data it carries.
//!
//! The category is rebuilt from the witness's descriptor (or, for sheaf
//! checks, from the site embedded in the subject), the check is dispatched
//! on its name, and the fresh witness is compared with the stored one.

use serde_json::{json, Value};

use crate::adhesion::cancellation::CancellationConfig;
use crate::adhesion::classify::regular_union_failure;
use crate::adhesion::{is_adhesive_morphism, is_pre_adhesive, is_stable_pushout, is_van_kampen};
use crate::category::Category;
use crate::colimit::{
    basic_lemma_squares, check_factorization, is_regular_mono, stable_factorization, stably_jointly_epi,
    union_effective,
};
use crate::diagram::Square;
use crate::dpo::complement_uniqueness;
use crate::error::{CatError, Result};
use crate::instances::{Kind, StructCat};
use crate::presheaf::presheaf_from_json;
use crate::probe::ProbeSet;
use crate::sheaf::{is_j_sheaf, is_k_separated, simplified_sheaf_check, Site};
use crate::universal::{is_pullback, is_pushout, paste_check, PasteMode};
use crate::witness::Witness;

fn field<'a>(v: &'a Value, k: &str) -> Result<&'a Value> {
    v.get(k).ok_or_else(|| CatError::Parse(format!("witness subject is missing `{k}`")))
}

fn need_bound(w: &Witness) -> Result<usize> {
    w.bound.ok_or_else(|| CatError::Parse(format!("`{}` witness carries no bound", w.check)))
}

fn instance(w: &Witness) -> Result<StructCat> {
    w.category
        .as_str()
        .and_then(Kind::from_name)
        .map(StructCat::new)
        .ok_or_else(|| CatError::Parse(format!("`{}` cannot be replayed on category {}", w.check, w.category)))
}

fn probes(cat: &StructCat, w: &Witness, target: &crate::instances::Structure) -> Result<ProbeSet<crate::Hom>> {
    match w.detail.as_ref().and_then(|d| d.get("probes")).and_then(Value::as_array) {
        Some(list) => Ok(ProbeSet::supplied(list.iter().map(|d| cat.mor_from_json(d)).collect::<Result<_>>()?)),
        None => ProbeSet::exhaustive(cat, target, need_bound(w)?),
    }
}

fn sheaf_check(w: &Witness) -> Result<Witness> {
    let site = Site::from_json(field(&w.subject, "site")?)?;
    let psh = presheaf_from_json(&site.cat, field(&w.subject, "presheaf")?)?;
    match w.check.as_str() {
        "is_j_sheaf" => is_j_sheaf(&site, psh.as_ref()),
        "simplified_sheaf_check" => simplified_sheaf_check(&site, psh.as_ref()),
        _ => is_k_separated(&site, psh.as_ref()),
    }
}

/// Reruns the check that produced `w`.
pub fn rerun(w: &Witness) -> Result<Witness> {
    if matches!(w.check.as_str(), "is_j_sheaf" | "simplified_sheaf_check" | "is_k_separated") {
        return sheaf_check(w);
    }
    let cat = instance(w)?;
    let s = &w.subject;
    let mor = |k: &str| cat.mor_from_json(field(s, k)?);
    let square = |v: &Value| Square::from_json(&cat, v);
    let out = match w.check.as_str() {
        "is_pullback" => is_pullback(&cat, &square(s)?)?,
        "is_pushout" => is_pushout(&cat, &square(s)?)?,
        "paste_check" => {
            let mode = match field(s, "mode")?.as_str() {
                Some("pullback") => PasteMode::Pullback,
                Some("pushout") => PasteMode::Pushout,
                _ => return Err(CatError::Parse("paste mode must be `pullback` or `pushout`".into())),
            };
            paste_check(&cat, &square(field(s, "left")?)?, &square(field(s, "right")?)?, mode)?
        }
        "is_stable_pushout" => {
            let sq = square(s)?;
            is_stable_pushout(&cat, &sq, &probes(&cat, w, &sq.g.cod)?)?
        }
        "is_van_kampen" => {
            let sq = square(s)?;
            is_van_kampen(&cat, &sq, &probes(&cat, w, &sq.g.cod)?, need_bound(w)?)?
        }
        "is_pre_adhesive" => is_pre_adhesive(&cat, &cat.mor_from_json(s)?, need_bound(w)?)?,
        "is_adhesive_morphism" => is_adhesive_morphism(&cat, &cat.mor_from_json(s)?, need_bound(w)?)?,
        "cancellation" => {
            let config = CancellationConfig::from_json(&cat, s)?;
            crate::adhesion::cancellation_lemma_check(&cat, &config, need_bound(w)?)?
        }
        "regular_union" => {
            let outcome = regular_union_failure(&cat, &mor("m1")?, &mor("m2")?)?;
            let mut fresh = Witness::from_outcome("regular_union", cat.descriptor(), s.clone(), outcome);
            fresh.bound = w.bound;
            fresh
        }
        "is_regular_mono" => is_regular_mono(&cat, &cat.mor_from_json(s)?)?,
        "union_effective" => union_effective(&cat, &mor("m1")?, &mor("m2")?)?.1,
        "basic_lemma" => basic_lemma_squares(&cat, &mor("m")?, &mor("f")?)?.1,
        "stable_factorization" => {
            let trace = stable_factorization(&cat, &mor("m1")?, &mor("m2")?)?;
            check_factorization(&cat, &trace, need_bound(w)?)?
        }
        "stably_jointly_epi" => stably_jointly_epi(&cat, &mor("m")?, &mor("f")?, need_bound(w)?)?,
        "complement_uniqueness" => complement_uniqueness(&cat, &mor("l")?, &mor("match")?, need_bound(w)?)?,
        other => return Err(CatError::Parse(format!("unknown check `{other}`"))),
    };
    Ok(out)
}

/// Fields that differ between the stored witness and a rerun. Notes are
/// commentary and are not compared.
pub fn differences(stored: &Witness, fresh: &Witness) -> Vec<&'static str> {
    let mut out = Vec::new();
    let pairs: [(&'static str, bool); 7] = [
        ("check", stored.check == fresh.check),
        ("category", stored.category == fresh.category),
        ("verdict", stored.verdict == fresh.verdict),
        ("bound", stored.bound == fresh.bound),
        ("subject", stored.subject == fresh.subject),
        ("counterexample", stored.counterexample == fresh.counterexample),
        ("detail", stored.detail == fresh.detail),
    ];
    for (name, same) in pairs {
        if !same {
            out.push(name);
        }
    }
    out
}

/// Reruns `w` and reports whether it reproduced.
pub fn replay(w: &Witness) -> Result<Value> {
    let fresh = rerun(w)?;
    let diff = differences(w, &fresh);
    Ok(json!({
        "check": w.check,
        "verdict": w.verdict,
        "replayed_verdict": fresh.verdict,
        "reproduced": diff.is_empty(),
        "differences": diff,
    }))
}

/// Every witness object inside a report: any JSON object with `check`,
/// `category`, `verdict` and `subject` keys.
pub fn collect_witnesses(report: &Value) -> Vec<Witness> {
    let mut out = Vec::new();
    fn walk(v: &Value, out: &mut Vec<Witness>) {
        match v {
            Value::Object(o) => {
                if ["check", "category", "verdict", "subject"].iter().all(|k| o.contains_key(*k)) {
                    if let Ok(w) = serde_json::from_value::<Witness>(v.clone()) {
                        out.push(w);
                        return;
                    }
                }
                o.values().for_each(|x| walk(x, out));
            }
            Value::Array(a) => a.iter().for_each(|x| walk(x, out)),
            _ => {}
        }
    }
    walk(report, &mut out);
    out
}
