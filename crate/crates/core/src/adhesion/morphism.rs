//! Pre-adhesive and adhesive morphisms.

use std::collections::HashSet;
use std::hash::Hash;

use serde_json::{json, Value};

use super::vk::stable_failure;
use crate::category::Category;
use crate::diagram::Square;
use crate::error::{CatError, Result};
use crate::probe::{probes_from, probes_into};
use crate::universal::pullback_holds;
use crate::witness::Witness;

/// First `f` out of `dom(m)` whose pushout along `m` is not a pullback or is
/// not stable. The pullback property is tested first.
pub fn pre_adhesive_failure<C: Category>(cat: &C, m: &C::Mor, bound: usize) -> Result<Option<Value>> {
    if !cat.admits_pushout(m) {
        return Err(CatError::UnsupportedColimit("no pushouts along this morphism".into()));
    }
    for f in probes_from(cat, &cat.dom(m), bound)? {
        let po = cat.pushout(m, &f)?;
        let sq = Square::new(m.clone(), f.clone(), po.left, po.right);
        if !pullback_holds(cat, &sq)? {
            return Ok(Some(json!({
                "reason": "pushout is not a pullback",
                "square": sq.to_json(cat),
            })));
        }
        let probes = probes_into(cat, &cat.cod(&sq.g), bound)?;
        if let Some(cube) = stable_failure(cat, &sq, &probes)? {
            return Ok(Some(json!({
                "reason": "pushout is not stable",
                "square": sq.to_json(cat),
                "cube": cube.to_json(cat),
            })));
        }
    }
    Ok(None)
}

/// Failure of `m` or of one of its pullbacks along probes into `cod(m)`.
pub fn adhesive_failure<C: Category>(cat: &C, m: &C::Mor, bound: usize) -> Result<Option<Value>> {
    let mut passed = HashSet::new();
    adhesive_failure_memo(cat, m, bound, |_| None::<()>, &mut passed)
}

/// [`adhesive_failure`] skipping pulled-back monos whose `key` is already
/// known to be pre-adhesive. `key` must identify arrows up to isomorphism;
/// returning `None` disables the memo for that arrow. Only passes are
/// remembered, so reported counterexamples are unaffected.
pub fn adhesive_failure_memo<C, K>(
    cat: &C,
    m: &C::Mor,
    bound: usize,
    key: impl Fn(&C::Mor) -> Option<K>,
    passed: &mut HashSet<K>,
) -> Result<Option<Value>>
where
    C: Category,
    K: Eq + Hash,
{
    let mut check = |n: &C::Mor| -> Result<Option<Value>> {
        let k = key(n);
        if k.as_ref().is_some_and(|k| passed.contains(k)) {
            return Ok(None);
        }
        let out = pre_adhesive_failure(cat, n, bound)?;
        if let (None, Some(k)) = (&out, k) {
            passed.insert(k);
        }
        Ok(out)
    };
    if let Some(v) = check(m)? {
        return Ok(Some(v));
    }
    for h in probes_into(cat, &cat.cod(m), bound)? {
        let pulled = cat.pullback(m, &h)?.right;
        if let Some(v) = check(&pulled)? {
            return Ok(Some(json!({
                "probe": cat.mor_to_json(&h),
                "pulled_back": cat.mor_to_json(&pulled),
                "failure": v,
            })));
        }
    }
    Ok(None)
}

pub fn is_pre_adhesive<C: Category>(cat: &C, m: &C::Mor, bound: usize) -> Result<Witness> {
    let outcome = pre_adhesive_failure(cat, m, bound)?;
    Ok(Witness::from_outcome("is_pre_adhesive", cat.descriptor(), cat.mor_to_json(m), outcome).with_bound(bound))
}

pub fn is_adhesive_morphism<C: Category>(cat: &C, m: &C::Mor, bound: usize) -> Result<Witness> {
    let outcome = adhesive_failure(cat, m, bound)?;
    Ok(Witness::from_outcome("is_adhesive_morphism", cat.descriptor(), cat.mor_to_json(m), outcome).with_bound(bound))
}
