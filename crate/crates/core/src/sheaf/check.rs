//! The checks themselves, on any [`SetFunctor`].

use std::collections::HashMap;
use std::hash::Hash;

use serde_json::{json, Value};

use super::Site;
use crate::category::Category;
use crate::error::{CatError, Result};
use crate::presentation::Presentation;
use crate::presheaf::SetFunctor;
use crate::witness::Witness;

/// First pair of distinct indices with equal keys.
fn collision<K: Eq + Hash>(keys: impl IntoIterator<Item = K>) -> Option<(usize, usize)> {
    let mut seen = HashMap::new();
    for (i, k) in keys.into_iter().enumerate() {
        if let Some(&j) = seen.get(&k) {
            return Some((j, i));
        }
        seen.insert(k, i);
    }
    None
}

/// Whether `F(D) → L` is a bijection, where `L` is the set of pairs
/// `(a, b) ∈ F(A) × F(B)` with `F(m) a = F(f) b`, restricted to those with
/// `F(g₁) a = F(g₂) a` when `equalize` is given.
fn amalgamation_failure<C, P>(
    site: &Site<C>,
    psh: &P,
    i: usize,
    equalize: Option<(&C::Mor, &C::Mor)>,
) -> Result<Option<Value>>
where
    C: Category,
    C::Mor: Eq + Hash,
    P: SetFunctor<C> + ?Sized,
{
    let cat = &site.cat;
    let sq = &site.squares[i];
    let (a_obj, b_obj, d_obj) = (cat.cod(&sq.m), cat.cod(&sq.f), cat.cod(&sq.g));
    let fm = psh.act(cat, &sq.m)?;
    let ff = psh.act(cat, &sq.f)?;
    let fg = psh.act(cat, &sq.g)?;
    let fn_ = psh.act(cat, &sq.n)?;
    let eq = match equalize {
        Some((g1, g2)) => Some((psh.act(cat, g1)?, psh.act(cat, g2)?)),
        None => None,
    };
    if let Some((z1, z2)) = collision((0..fg.len()).map(|z| (fg[z], fn_[z]))) {
        return Ok(Some(json!({
            "square": i,
            "reason": "two elements of F(D) restrict to the same pair",
            "elements": [psh.element(cat, &d_obj, z1), psh.element(cat, &d_obj, z2)],
        })));
    }
    let image: std::collections::HashSet<(usize, usize)> = (0..fg.len()).map(|z| (fg[z], fn_[z])).collect();
    for a in 0..fm.len() {
        if let Some((g1, g2)) = &eq {
            if g1[a] != g2[a] {
                continue;
            }
        }
        for b in 0..ff.len() {
            if fm[a] == ff[b] && !image.contains(&(a, b)) {
                return Ok(Some(json!({
                    "square": i,
                    "reason": "compatible pair with no amalgamation in F(D)",
                    "pair": [psh.element(cat, &a_obj, a), psh.element(cat, &b_obj, b)],
                })));
            }
        }
    }
    Ok(None)
}

/// The limit condition of one square, with the kernel pair of `g`.
pub fn j_sheaf_square<C, P>(site: &Site<C>, psh: &P, i: usize) -> Result<Option<Value>>
where
    C: Category,
    C::Mor: Eq + Hash,
    P: SetFunctor<C> + ?Sized,
{
    let k = site.kernels(i)?;
    amalgamation_failure(site, psh, i, Some((&k.kernel_g.p1, &k.kernel_g.p2)))
}

/// Whether `F` sends square `i` to a pullback of sets.
pub fn pullback_square<C, P>(site: &Site<C>, psh: &P, i: usize) -> Result<Option<Value>>
where
    C: Category,
    C::Mor: Eq + Hash,
    P: SetFunctor<C> + ?Sized,
{
    amalgamation_failure(site, psh, i, None)
}

/// Whether `F(δ)` and `F(m₂)` are jointly monic for square `i`.
pub fn joint_monicity<C, P>(site: &Site<C>, psh: &P, i: usize) -> Result<Option<Value>>
where
    C: Category,
    C::Mor: Eq + Hash,
    P: SetFunctor<C> + ?Sized,
{
    let (delta, m2) = site.delta_m2(i)?;
    let cat = &site.cat;
    let fd = psh.act(cat, &delta)?;
    let fm2 = psh.act(cat, &m2)?;
    Ok(collision((0..fd.len()).map(|x| (fd[x], fm2[x]))).map(|(x, y)| {
        let a2 = cat.cod(&delta);
        json!({
            "square": i,
            "elements": [psh.element(cat, &a2, x), psh.element(cat, &a2, y)],
        })
    }))
}

/// First declared square whose limit diagram fails for `F`.
pub fn j_sheaf_failure<C, P>(site: &Site<C>, psh: &P) -> Result<Option<Value>>
where
    C: Category,
    C::Mor: Eq + Hash,
    P: SetFunctor<C> + ?Sized,
{
    for i in 0..site.squares.len() {
        if let Some(v) = j_sheaf_square(site, psh, i)? {
            return Ok(Some(v));
        }
    }
    Ok(None)
}

/// Per-square verdicts of the pullback form of the sheaf condition, next to
/// the full limit condition. `HypothesisFailed` if joint monicity fails.
pub fn simplified_outcome<C, P>(site: &Site<C>, psh: &P) -> Result<(Option<Value>, Vec<Value>)>
where
    C: Category,
    C::Mor: Eq + Hash,
    P: SetFunctor<C> + ?Sized,
{
    for i in 0..site.squares.len() {
        if let Some(v) = joint_monicity(site, psh, i)? {
            return Err(CatError::HypothesisFailed(v.to_string()));
        }
    }
    let mut first = None;
    let mut per_square = Vec::new();
    for i in 0..site.squares.len() {
        let pb = pullback_square(site, psh, i)?;
        let full = j_sheaf_square(site, psh, i)?;
        per_square.push(json!({
            "square": i,
            "pullback": pb.is_none(),
            "j_sheaf": full.is_none(),
            "agree": pb.is_none() == full.is_none(),
        }));
        if first.is_none() {
            first = pb;
        }
    }
    Ok((first, per_square))
}

pub fn k_separated_failure<C, P>(site: &Site<C>, psh: &P) -> Result<Option<Value>>
where
    C: Category,
    C::Mor: Eq + Hash,
    P: SetFunctor<C> + ?Sized,
{
    let cat = &site.cat;
    for fam in &site.k_families()?.families {
        let tables: Vec<Vec<usize>> = fam.members.iter().map(|h| psh.act(cat, h)).collect::<Result<_>>()?;
        let target = cat.cod(&fam.members[0]);
        let n = psh.card(cat, &target)?;
        if let Some((z1, z2)) = collision((0..n).map(|z| tables.iter().map(|t| t[z]).collect::<Vec<_>>())) {
            return Ok(Some(json!({
                "family": fam.to_json(cat),
                "elements": [psh.element(cat, &target, z1), psh.element(cat, &target, z2)],
            })));
        }
    }
    Ok(None)
}

fn subject(site: &Site<Presentation>, psh: &dyn SetFunctor<Presentation>) -> Value {
    json!({ "site": site.to_json(), "presheaf": psh.to_json(&site.cat) })
}

pub fn is_j_sheaf(site: &Site<Presentation>, psh: &dyn SetFunctor<Presentation>) -> Result<Witness> {
    let outcome = j_sheaf_failure(site, psh)?;
    Ok(Witness::from_outcome("is_j_sheaf", site.cat.descriptor(), subject(site, psh), outcome))
}

/// Pass iff every declared square goes to a pullback of sets. The witness
/// detail lists, per square, whether that agrees with [`is_j_sheaf`].
pub fn simplified_sheaf_check(site: &Site<Presentation>, psh: &dyn SetFunctor<Presentation>) -> Result<Witness> {
    let (outcome, per_square) = simplified_outcome(site, psh)?;
    Ok(Witness::from_outcome("simplified_sheaf_check", site.cat.descriptor(), subject(site, psh), outcome)
        .with_detail(json!(per_square)))
}

pub fn is_k_separated(site: &Site<Presentation>, psh: &dyn SetFunctor<Presentation>) -> Result<Witness> {
    let outcome = k_separated_failure(site, psh)?;
    let fams = site.k_families()?;
    Ok(Witness::from_outcome("is_k_separated", site.cat.descriptor(), subject(site, psh), outcome).with_detail(json!({
        "topology": "generated by j and all pullbacks of {m2, delta}",
        "families": fams.families.len(),
        "unavailable_pullbacks": fams.unavailable,
    })))
}
