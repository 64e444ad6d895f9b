//! The cancellation property of stable pushouts: given a stable pushout
//!
//! ```text
//! A₀ --b₂--> A₂
//! |b₁        |a₂
//! A₁ --a₁--> A
//! ```
//!
//! and, for `i = 1, 2`, rectangles `A'ᵢ → A' → B'` over `Aᵢ → A → B` whose
//! left square and composite are pullbacks, the common right square
//! `(p, f', f, q)` is a pullback.

use rand::Rng;
use serde_json::json;

use super::vk::stable_failure;
use crate::category::Category;
use crate::diagram::Square;
use crate::error::{CatError, Result};
use crate::instances::{gen, Hom, StructCat};
use crate::probe::probes_into;
use crate::universal::{paste, pullback_holds, pushout_holds};
use crate::witness::Witness;

#[derive(Debug, Clone, PartialEq)]
pub struct CancellationConfig<M> {
    /// `(b₁, b₂, a₁, a₂)`.
    pub pushout: Square<M>,
    /// `f: A → B`.
    pub f: M,
    /// `q: B' → B`.
    pub q: M,
    /// `p: A' → A`.
    pub p: M,
    /// `f': A' → B'`.
    pub f_prime: M,
    /// `pᵢ: A'ᵢ → Aᵢ`.
    pub p_i: [M; 2],
    /// `a'ᵢ: A'ᵢ → A'`.
    pub a_i_prime: [M; 2],
}

impl<M: Clone + PartialEq> CancellationConfig<M> {
    pub fn right_square(&self) -> Square<M> {
        Square::new(self.p.clone(), self.f_prime.clone(), self.f.clone(), self.q.clone())
    }

    pub fn left_square(&self, i: usize) -> Square<M> {
        let a = if i == 0 { &self.pushout.g } else { &self.pushout.n };
        Square::new(self.p_i[i].clone(), self.a_i_prime[i].clone(), a.clone(), self.p.clone())
    }

    pub fn to_json<C: Category<Mor = M>>(&self, cat: &C) -> serde_json::Value {
        json!({
            "pushout": self.pushout.to_json(cat),
            "f": cat.mor_to_json(&self.f),
            "q": cat.mor_to_json(&self.q),
            "p": cat.mor_to_json(&self.p),
            "f_prime": cat.mor_to_json(&self.f_prime),
            "p1": cat.mor_to_json(&self.p_i[0]),
            "p2": cat.mor_to_json(&self.p_i[1]),
            "a1_prime": cat.mor_to_json(&self.a_i_prime[0]),
            "a2_prime": cat.mor_to_json(&self.a_i_prime[1]),
        })
    }

    pub fn from_json<C: Category<Mor = M>>(cat: &C, v: &serde_json::Value) -> Result<Self> {
        let mor = |k: &str| {
            v.get(k)
                .ok_or_else(|| CatError::Parse(format!("configuration is missing `{k}`")))
                .and_then(|x| cat.mor_from_json(x))
        };
        Ok(CancellationConfig {
            pushout: Square::from_json(
                cat,
                v.get("pushout").ok_or_else(|| CatError::Parse("missing `pushout`".into()))?,
            )?,
            f: mor("f")?,
            q: mor("q")?,
            p: mor("p")?,
            f_prime: mor("f_prime")?,
            p_i: [mor("p1")?, mor("p2")?],
            a_i_prime: [mor("a1_prime")?, mor("a2_prime")?],
        })
    }
}

/// Verifies the hypotheses (stability at `bound`), then whether the right
/// square is a pullback.
pub fn cancellation_lemma_check<C: Category>(
    cat: &C,
    config: &CancellationConfig<C::Mor>,
    bound: usize,
) -> Result<Witness> {
    let po = &config.pushout;
    if !pushout_holds(cat, po)? {
        return Err(CatError::PreconditionUnmet("the first square is not a pushout".into()));
    }
    let probes = probes_into(cat, &cat.cod(&po.g), bound)?;
    if stable_failure(cat, po, &probes)?.is_some() {
        return Err(CatError::PreconditionUnmet("the pushout is not stable".into()));
    }
    let right = config.right_square();
    right.check(cat)?;
    for i in 0..2 {
        let left = config.left_square(i);
        if !pullback_holds(cat, &left)? {
            return Err(CatError::PreconditionUnmet(format!("left square {} is not a pullback", i + 1)));
        }
        if !pullback_holds(cat, &paste(cat, &left, &right)?)? {
            return Err(CatError::PreconditionUnmet(format!("rectangle {} is not a pullback", i + 1)));
        }
    }
    let outcome = (!pullback_holds(cat, &right)?).then(|| json!({ "right": right.to_json(cat) }));
    Ok(Witness::from_outcome("cancellation", cat.descriptor(), config.to_json(cat), outcome).with_bound(bound))
}

/// A random configuration satisfying the hypotheses, built over a pushout
/// along a monomorphism. Half the time `A'` is a relabelled pullback of
/// `f` and `q`; otherwise `A'`, `p` and `f'` are drawn at random and kept
/// only if the hypotheses hold.
pub fn random_config<R: Rng>(cat: &StructCat, bound: usize, rng: &mut R) -> Result<CancellationConfig<Hom>> {
    loop {
        let m = gen::mono(cat, 2, 2, true, rng);
        let b = gen::object(cat, 2, rng);
        let Some(f0) = gen::hom(cat, &m.dom, &b, rng) else { continue };
        let po = cat.pushout(&m, &f0)?;
        let pushout = Square::new(m, f0, po.left, po.right);
        let a = pushout.g.cod.clone();
        let bb = gen::object(cat, 2, rng);
        let Some(f) = gen::hom(cat, &a, &bb, rng) else { continue };
        let b2 = gen::object(cat, 2, rng);
        let Some(q) = gen::hom(cat, &b2, &bb, rng) else { continue };

        let (p, f_prime) = if rng.gen_bool(0.5) {
            let pb = cat.pullback(&f, &q)?;
            let twist = gen::relabel(cat, &pb.left.dom, rng);
            (cat.compose(&twist, &pb.left)?, cat.compose(&twist, &pb.right)?)
        } else {
            let a2 = gen::object(cat, 3, rng);
            let Some(p) = gen::hom(cat, &a2, &a, rng) else { continue };
            let fp = cat.compose(&p, &f)?;
            let candidates: Vec<Hom> = cat.hom(&a2, &b2).into_iter().filter(|x| cat.then(x, &q) == fp).collect();
            if candidates.is_empty() {
                continue;
            }
            (p, candidates[rng.gen_range(0..candidates.len())].clone())
        };
        let p1 = cat.pullback(&pushout.g, &p)?;
        let p2 = cat.pullback(&pushout.n, &p)?;
        let config =
            CancellationConfig { pushout, f, q, p, f_prime, p_i: [p1.left, p2.left], a_i_prime: [p1.right, p2.right] };
        match cancellation_lemma_check(cat, &config, bound) {
            Ok(_) => return Ok(config),
            Err(CatError::PreconditionUnmet(_)) => continue,
            Err(e) => return Err(e),
        }
    }
}
