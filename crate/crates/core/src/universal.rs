//! Deciding universal properties: build the canonical (co)limit, take the
//! comparison map, and test it for invertibility.

use serde_json::{json, Value};

use crate::category::Category;
use crate::diagram::Square;
use crate::error::{CatError, Result};
use crate::witness::Witness;

/// `None` when `sq` is a pullback, otherwise a description of why not.
pub fn pullback_failure<C: Category>(cat: &C, sq: &Square<C::Mor>) -> Result<Option<Value>> {
    sq.check(cat)?;
    let pb = cat.pullback(&sq.g, &sq.n)?;
    Ok(match cat.pullback_lift(&pb, &sq.m, &sq.f) {
        Some(u) if cat.is_iso(&u) => None,
        Some(u) => Some(json!({
            "reason": "comparison to the canonical pullback is not invertible",
            "canonical": { "left": cat.mor_to_json(&pb.left), "right": cat.mor_to_json(&pb.right) },
            "comparison": cat.mor_to_json(&u),
        })),
        None => Some(json!({ "reason": "no comparison to the canonical pullback" })),
    })
}

/// `None` when `sq` is a pushout, otherwise a description of why not.
pub fn pushout_failure<C: Category>(cat: &C, sq: &Square<C::Mor>) -> Result<Option<Value>> {
    sq.check(cat)?;
    let po = cat.pushout_any(&sq.m, &sq.f).map_err(|e| match e {
        CatError::NotAdmissible(s) => CatError::UnsupportedColimit(s),
        other => other,
    })?;
    Ok(match cat.pushout_lift(&po, &sq.g, &sq.n) {
        Some(u) if cat.is_iso(&u) => None,
        Some(u) => Some(json!({
            "reason": "comparison from the canonical pushout is not invertible",
            "canonical": { "left": cat.mor_to_json(&po.left), "right": cat.mor_to_json(&po.right) },
            "comparison": cat.mor_to_json(&u),
        })),
        None => Some(json!({ "reason": "no comparison from the canonical pushout" })),
    })
}

pub fn pullback_holds<C: Category>(cat: &C, sq: &Square<C::Mor>) -> Result<bool> {
    Ok(pullback_failure(cat, sq)?.is_none())
}

pub fn pushout_holds<C: Category>(cat: &C, sq: &Square<C::Mor>) -> Result<bool> {
    Ok(pushout_failure(cat, sq)?.is_none())
}

pub fn is_pullback<C: Category>(cat: &C, sq: &Square<C::Mor>) -> Result<Witness> {
    let outcome = pullback_failure(cat, sq)?;
    Ok(Witness::from_outcome("is_pullback", cat.descriptor(), sq.to_json(cat), outcome))
}

pub fn is_pushout<C: Category>(cat: &C, sq: &Square<C::Mor>) -> Result<Witness> {
    let outcome = pushout_failure(cat, sq)?;
    Ok(Witness::from_outcome("is_pushout", cat.descriptor(), sq.to_json(cat), outcome))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PasteMode {
    Pullback,
    Pushout,
}

impl PasteMode {
    pub fn name(self) -> &'static str {
        match self {
            PasteMode::Pullback => "pullback",
            PasteMode::Pushout => "pushout",
        }
    }
}

/// The horizontal composite of `left` followed by `right`, where
/// `right.m = left.n` is the shared edge.
pub fn paste<C: Category>(cat: &C, left: &Square<C::Mor>, right: &Square<C::Mor>) -> Result<Square<C::Mor>> {
    if left.n != right.m {
        return Err(CatError::EdgeMismatch);
    }
    Ok(Square::new(left.m.clone(), cat.compose(&left.f, &right.f)?, cat.compose(&left.g, &right.g)?, right.n.clone()))
}

/// Pasting and cancellation. In pullback mode: if the right square is a
/// pullback, the left one is a pullback exactly when the composite is. In
/// pushout mode: if the left square is a pushout, the right one is a pushout
/// exactly when the composite is.
pub fn paste_check<C: Category>(
    cat: &C,
    left: &Square<C::Mor>,
    right: &Square<C::Mor>,
    mode: PasteMode,
) -> Result<Witness> {
    let outer = paste(cat, left, right)?;
    let holds = |sq: &Square<C::Mor>| match mode {
        PasteMode::Pullback => pullback_holds(cat, sq),
        PasteMode::Pushout => pushout_holds(cat, sq),
    };
    let (l, r, o) = (holds(left)?, holds(right)?, holds(&outer)?);
    let ok = match mode {
        PasteMode::Pullback => !r || l == o,
        PasteMode::Pushout => !l || r == o,
    };
    let subject = json!({
        "mode": mode.name(),
        "left": left.to_json(cat),
        "right": right.to_json(cat),
    });
    let flags = json!({ "left": l, "right": r, "composite": o });
    let w = if ok {
        Witness::pass("paste_check", cat.descriptor(), subject)
    } else {
        Witness::fail("paste_check", cat.descriptor(), subject, flags.clone())
    };
    Ok(w.with_note(flags.to_string()))
}
