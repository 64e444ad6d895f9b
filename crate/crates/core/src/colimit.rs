//! Kernel and cokernel pairs, regular monomorphisms, intersections and
//! effective unions, the squares around a pushout and its kernel pairs, the
//! (epi, regular mono) factorization of a union of two regular subobjects,
//! and the stably-jointly-epimorphic test.

use serde_json::{json, Value};

use crate::category::{Category, Cospan, Span};
use crate::diagram::Square;
use crate::error::{CatError, Result};
use crate::probe::probes_into;
use crate::universal::{pullback_holds, pushout_holds};
use crate::witness::Witness;

/// `p1, p2: X₂ ⇉ X` with the diagonal `X → X₂`.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelPair<M> {
    pub p1: M,
    pub p2: M,
    pub diagonal: M,
}

impl<M: Clone> KernelPair<M> {
    pub fn span(&self) -> Span<M> {
        Span { left: self.p1.clone(), right: self.p2.clone() }
    }
}

pub fn kernel_pair<C: Category>(cat: &C, f: &C::Mor) -> Result<KernelPair<C::Mor>> {
    let pb = cat.pullback(f, f)?;
    let id = cat.identity(&cat.dom(f));
    let diagonal = cat
        .pullback_lift(&pb, &id, &id)
        .ok_or_else(|| CatError::UnsupportedLimit("kernel pair admits no diagonal".into()))?;
    Ok(KernelPair { p1: pb.left, p2: pb.right, diagonal })
}

/// `i, j: X ⇉ X₁` with the codiagonal `X₁ → X`.
#[derive(Debug, Clone, PartialEq)]
pub struct CokernelPair<M> {
    pub i: M,
    pub j: M,
    pub codiagonal: M,
}

pub fn cokernel_pair<C: Category>(cat: &C, m: &C::Mor) -> Result<CokernelPair<C::Mor>> {
    let po = cat.pushout(m, m)?;
    let id = cat.identity(&cat.cod(m));
    let codiagonal = cat
        .pushout_lift(&po, &id, &id)
        .ok_or_else(|| CatError::UnsupportedColimit("cokernel pair admits no codiagonal".into()))?;
    Ok(CokernelPair { i: po.left, j: po.right, codiagonal })
}

/// `None` when `m` is the equalizer of its cokernel pair; otherwise the
/// equalizer and comparison that show it is not.
pub fn regular_mono_failure<C: Category>(cat: &C, m: &C::Mor) -> Result<Option<Value>> {
    if !cat.is_mono(m) {
        return Ok(Some(json!({ "reason": "not a monomorphism" })));
    }
    let cp = cokernel_pair(cat, m)?;
    let e = cat.equalizer(&cp.i, &cp.j)?;
    Ok(match cat.factor_through(m, &e) {
        Some(u) if cat.is_iso(&u) => None,
        Some(u) => Some(json!({
            "reason": "comparison to the equalizer of the cokernel pair is not invertible",
            "equalizer": cat.mor_to_json(&e),
            "comparison": cat.mor_to_json(&u),
        })),
        None => Some(json!({
            "reason": "does not factor through the equalizer of its cokernel pair",
            "equalizer": cat.mor_to_json(&e),
        })),
    })
}

pub fn regular_mono_holds<C: Category>(cat: &C, m: &C::Mor) -> Result<bool> {
    Ok(regular_mono_failure(cat, m)?.is_none())
}

/// Non-monomorphisms fail immediately, so the cokernel pair is only formed
/// along monomorphisms.
pub fn is_regular_mono<C: Category>(cat: &C, m: &C::Mor) -> Result<Witness> {
    let outcome = regular_mono_failure(cat, m)?;
    Ok(Witness::from_outcome("is_regular_mono", cat.descriptor(), cat.mor_to_json(m), outcome))
}

/// The intersection of two subobjects of a common object, as a subobject.
/// Also returns the pullback span `(A₀ → A₁, A₀ → A₂)`.
pub fn intersection<C: Category>(cat: &C, m1: &C::Mor, m2: &C::Mor) -> Result<(C::Mor, Span<C::Mor>)> {
    if cat.cod(m1) != cat.cod(m2) {
        return Err(CatError::TypeMismatch("subobjects of different objects".into()));
    }
    let pb = cat.pullback(m1, m2)?;
    Ok((cat.compose(&pb.left, m1)?, pb))
}

/// The pushout over the intersection and the induced map into the common
/// codomain.
#[derive(Debug, Clone)]
pub struct UnionData<M> {
    pub intersection: Span<M>,
    pub pushout: Cospan<M>,
    /// The induced map `x: D → X`.
    pub x: M,
}

pub fn union_data<C: Category>(cat: &C, m1: &C::Mor, m2: &C::Mor) -> Result<UnionData<C::Mor>> {
    let (_, pb) = intersection(cat, m1, m2)?;
    let po = cat.pushout(&pb.left, &pb.right)?;
    let x = cat
        .pushout_lift(&po, m1, m2)
        .ok_or_else(|| CatError::UnsupportedColimit("no map out of the union pushout".into()))?;
    Ok(UnionData { intersection: pb, pushout: po, x })
}

/// Passes when the induced map out of the pushout over the intersection is a
/// monomorphism, in which case it is returned as the union.
pub fn union_effective<C: Category>(cat: &C, m1: &C::Mor, m2: &C::Mor) -> Result<(Option<C::Mor>, Witness)> {
    let u = union_data(cat, m1, m2)?;
    let subject = json!({ "m1": cat.mor_to_json(m1), "m2": cat.mor_to_json(m2) });
    if cat.is_mono(&u.x) {
        let w = Witness::pass("union_effective", cat.descriptor(), subject);
        Ok((Some(u.x), w))
    } else {
        let cex = json!({ "x": cat.mor_to_json(&u.x) });
        Ok((None, Witness::fail("union_effective", cat.descriptor(), subject, cex)))
    }
}

/// The diagram built around the pushout of `m` and `f`:
///
/// ```text
/// C --γ--> C₂ ==f₁,f₂==> C --f--> B
/// |m       |m₂           |m       |n
/// A --δ--> A₂ ==g₁,g₂==> A --g--> D
/// ```
#[derive(Debug, Clone)]
pub struct BasicLemma<M> {
    pub pushout: Cospan<M>,
    pub kernel_f: KernelPair<M>,
    pub kernel_g: KernelPair<M>,
    pub m2: M,
    /// Left, the two central squares, right.
    pub squares: [Square<M>; 4],
}

pub const BASIC_SQUARE_NAMES: [&str; 4] = ["left", "central1", "central2", "right"];

pub fn basic_lemma_data<C: Category>(cat: &C, m: &C::Mor, f: &C::Mor) -> Result<BasicLemma<C::Mor>> {
    let po = cat.pushout(m, f)?;
    let (g, n) = (po.left.clone(), po.right.clone());
    let kf = kernel_pair(cat, f)?;
    let kg = kernel_pair(cat, &g)?;
    let m2 = cat
        .pullback_lift(&kg.span(), &cat.compose(&kf.p1, m)?, &cat.compose(&kf.p2, m)?)
        .ok_or_else(|| CatError::UnsupportedLimit("no induced map between kernel pairs".into()))?;
    let squares = [
        Square::new(m.clone(), kf.diagonal.clone(), kg.diagonal.clone(), m2.clone()),
        Square::new(m2.clone(), kf.p1.clone(), kg.p1.clone(), m.clone()),
        Square::new(m2.clone(), kf.p2.clone(), kg.p2.clone(), m.clone()),
        Square::new(m.clone(), f.clone(), g, n),
    ];
    Ok(BasicLemma { pushout: po, kernel_f: kf, kernel_g: kg, m2, squares })
}

/// Builds the diagram and checks that all four squares are both pushouts
/// and pullbacks.
pub fn basic_lemma_squares<C: Category>(cat: &C, m: &C::Mor, f: &C::Mor) -> Result<(BasicLemma<C::Mor>, Witness)> {
    let data = basic_lemma_data(cat, m, f)?;
    let mut failures = Vec::new();
    for (name, sq) in BASIC_SQUARE_NAMES.iter().zip(&data.squares) {
        let po = pushout_holds(cat, sq)?;
        let pb = pullback_holds(cat, sq)?;
        if !(po && pb) {
            failures.push(json!({ "square": name, "pushout": po, "pullback": pb }));
        }
    }
    let subject = json!({ "m": cat.mor_to_json(m), "f": cat.mor_to_json(f) });
    let outcome = (!failures.is_empty()).then_some(Value::Array(failures));
    let w = Witness::from_outcome("basic_lemma", cat.descriptor(), subject, outcome);
    Ok((data, w))
}

/// Every intermediate of the factorization of the union of two regular
/// subobjects `m1: A₁ → X`, `m2: A₂ → X`.
#[derive(Debug, Clone)]
pub struct FactorizationTrace<M> {
    pub m1: M,
    pub m2: M,
    /// `A₀ → A₁` and `A₀ → A₂`.
    pub intersection: Span<M>,
    /// `n₁: A₁ → A`, `n₂: A₂ → A`.
    pub union_pushout: Cospan<M>,
    /// The union `m: A → X`.
    pub union: M,
    pub i: M,
    pub j: M,
    pub e1: M,
    /// `ℓ: X₂ → X₁`.
    pub ell: M,
    pub e2: M,
    pub i2: M,
    pub j2: M,
    pub q: M,
    pub k: M,
    pub n: M,
    pub e: M,
}

impl<M: Clone> FactorizationTrace<M> {
    pub fn to_json<C: Category<Mor = M>>(&self, cat: &C) -> Value {
        let mj = |f: &M| cat.mor_to_json(f);
        let oj = |x: &C::Obj| cat.obj_to_json(x);
        json!({
            "m1": mj(&self.m1),
            "m2": mj(&self.m2),
            "A0": oj(&cat.dom(&self.intersection.left)),
            "A": oj(&cat.cod(&self.union_pushout.left)),
            "union": mj(&self.union),
            "i": mj(&self.i),
            "j": mj(&self.j),
            "X1": oj(&cat.cod(&self.i)),
            "e1": mj(&self.e1),
            "X2": oj(&cat.dom(&self.ell)),
            "ell": mj(&self.ell),
            "e2": mj(&self.e2),
            "i2": mj(&self.i2),
            "j2": mj(&self.j2),
            "Y": oj(&cat.cod(&self.q)),
            "q": mj(&self.q),
            "k": mj(&self.k),
            "B": oj(&cat.dom(&self.n)),
            "n": mj(&self.n),
            "e": mj(&self.e),
        })
    }
}

/// Runs the construction step by step: cokernel pair of `m1`, its pullback
/// along `m2`, the pushout `Y`, and the equalizer `n` of `(qi, qj)`; `e` is
/// the factorization of the union through `n`.
pub fn stable_factorization<C: Category>(cat: &C, m1: &C::Mor, m2: &C::Mor) -> Result<FactorizationTrace<C::Mor>> {
    for (name, m) in [("m1", m1), ("m2", m2)] {
        if !regular_mono_holds(cat, m)? {
            return Err(CatError::NotRegular(name.into()));
        }
    }
    let u = union_data(cat, m1, m2)?;
    let cp = cokernel_pair(cat, m1)?;
    let pb = cat.pullback(&cp.codiagonal, m2)?;
    let (ell, e2) = (pb.left.clone(), pb.right.clone());
    let id2 = cat.identity(&cat.dom(m2));
    let lift = |c: &C::Mor| -> Result<C::Mor> {
        cat.pullback_lift(&pb, &cat.compose(m2, c)?, &id2)
            .ok_or_else(|| CatError::UnsupportedLimit("cokernel pair does not pull back".into()))
    };
    let (i2, j2) = (lift(&cp.i)?, lift(&cp.j)?);
    let y = cat.pushout(&ell, &e2)?;
    let (q, k) = (y.left, y.right);
    let n = cat.equalizer(&cat.compose(&cp.i, &q)?, &cat.compose(&cp.j, &q)?)?;
    let e = cat
        .factor_through(&u.x, &n)
        .ok_or_else(|| CatError::UnsupportedLimit("union does not factor through n".into()))?;
    Ok(FactorizationTrace {
        m1: m1.clone(),
        m2: m2.clone(),
        intersection: u.intersection,
        union_pushout: u.pushout,
        union: u.x,
        i: cp.i,
        j: cp.j,
        e1: cp.codiagonal,
        ell,
        e2,
        i2,
        j2,
        q,
        k,
        n,
        e,
    })
}

/// Checks the postconditions of a trace: `n ∘ e` is the union, `n` is a
/// regular monomorphism, `e` is an epimorphism, and both properties survive
/// pulling back along every probe into `X` of size at most `bound`.
pub fn check_factorization<C: Category>(cat: &C, trace: &FactorizationTrace<C::Mor>, bound: usize) -> Result<Witness> {
    let subject = json!({ "m1": cat.mor_to_json(&trace.m1), "m2": cat.mor_to_json(&trace.m2) });
    let fail = |why: Value| Witness::fail("stable_factorization", cat.descriptor(), subject.clone(), why);
    if cat.compose(&trace.e, &trace.n)? != trace.union {
        return Ok(fail(json!({ "reason": "n ∘ e differs from the union" })).with_bound(bound));
    }
    if !regular_mono_holds(cat, &trace.n)? {
        return Ok(fail(json!({ "reason": "n is not a regular monomorphism" })).with_bound(bound));
    }
    if !cat.is_epi(&trace.e) {
        return Ok(fail(json!({ "reason": "e is not an epimorphism" })).with_bound(bound));
    }
    let x = cat.cod(&trace.n);
    for d in probes_into(cat, &x, bound)? {
        let pn = cat.pullback(&trace.n, &d)?;
        let pm = cat.pullback(&trace.union, &d)?;
        // e' : A' → B' with n' ∘ e' = m'
        let e_along = cat.pullback_lift(&pn, &cat.compose(&pm.left, &trace.e)?, &pm.right);
        let stable = match &e_along {
            Some(e2) => cat.is_epi(e2) && regular_mono_holds(cat, &pn.right)?,
            None => false,
        };
        if !stable {
            return Ok(fail(json!({ "reason": "not stable", "probe": cat.mor_to_json(&d) })).with_bound(bound));
        }
    }
    Ok(Witness::pass("stable_factorization", cat.descriptor(), subject).with_bound(bound))
}

/// For the pushout of `m` (a regular monomorphism) along `f`, whether `δ` and
/// `m₂` stay jointly epimorphic after pulling back along every probe into
/// `A₂` of size at most `bound`.
pub fn stably_jointly_epi<C: Category>(cat: &C, m: &C::Mor, f: &C::Mor, bound: usize) -> Result<Witness> {
    if !regular_mono_holds(cat, m)? {
        return Err(CatError::NotRegular("m".into()));
    }
    let data = basic_lemma_data(cat, m, f)?;
    let delta = &data.kernel_g.diagonal;
    let a2 = cat.cod(delta);
    let subject = json!({ "m": cat.mor_to_json(m), "f": cat.mor_to_json(f) });
    let mut probes = vec![cat.identity(&a2)];
    probes.extend(probes_into(cat, &a2, bound)?);
    for h in probes {
        let pd = cat.pullback(delta, &h)?;
        let pm = cat.pullback(&data.m2, &h)?;
        if !cat.is_jointly_epi(&[pd.right, pm.right]) {
            let cex = json!({ "probe": cat.mor_to_json(&h) });
            return Ok(Witness::fail("stably_jointly_epi", cat.descriptor(), subject, cex).with_bound(bound));
        }
    }
    Ok(Witness::pass("stably_jointly_epi", cat.descriptor(), subject).with_bound(bound))
}
