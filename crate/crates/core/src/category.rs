//! The contract every computable category in this crate satisfies.
//!
//! Composition is written diagrammatically in the API: `compose(f, g)` is
//! "first `f`, then `g`", i.e. `g ∘ f`. Limits and colimits come back as
//! canonical spans/cospans together with lifting functions, so universal
//! properties can be decided by building the canonical object and testing
//! the comparison map for invertibility.

use std::fmt::Debug;

use serde_json::Value;

use crate::error::Result;

/// `left: P → X`, `right: P → Y` with a common apex `P`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Span<M> {
    pub left: M,
    pub right: M,
}

/// `left: A → D`, `right: B → D` with a common vertex `D`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cospan<M> {
    pub left: M,
    pub right: M,
}

pub trait Category {
    type Obj: Clone + PartialEq + Debug;
    type Mor: Clone + PartialEq + Debug;

    /// Identifies the category inside serialized witnesses.
    fn descriptor(&self) -> Value;

    fn dom(&self, f: &Self::Mor) -> Self::Obj;
    fn cod(&self, f: &Self::Mor) -> Self::Obj;
    fn identity(&self, x: &Self::Obj) -> Self::Mor;
    /// `g ∘ f`. Fails with `NotComposable` unless `cod(f) = dom(g)`.
    fn compose(&self, f: &Self::Mor, g: &Self::Mor) -> Result<Self::Mor>;

    fn is_mono(&self, f: &Self::Mor) -> bool;
    fn is_epi(&self, f: &Self::Mor) -> bool;
    fn is_iso(&self, f: &Self::Mor) -> bool;

    /// Canonical pullback of the cospan `f: X → Z ← Y: g`.
    fn pullback(&self, f: &Self::Mor, g: &Self::Mor) -> Result<Span<Self::Mor>>;
    /// The unique `u` with `pb.left ∘ u = x` and `pb.right ∘ u = y`, if any.
    fn pullback_lift(&self, pb: &Span<Self::Mor>, x: &Self::Mor, y: &Self::Mor) -> Option<Self::Mor>;

    /// Whether `m` lies in the class this category pushes out along.
    fn admits_pushout(&self, m: &Self::Mor) -> bool;
    /// Canonical pushout of the span `A ← C → B` along `m: C → A`.
    fn pushout(&self, m: &Self::Mor, f: &Self::Mor) -> Result<Cospan<Self::Mor>>;
    /// Pushout of an arbitrary span, for deciding universal properties of
    /// squares whose `m` lies outside the admissible class. Defaults to
    /// [`Category::pushout`].
    fn pushout_any(&self, m: &Self::Mor, f: &Self::Mor) -> Result<Cospan<Self::Mor>> {
        self.pushout(m, f)
    }
    /// The unique `u` with `u ∘ po.left = x` and `u ∘ po.right = y`, if any.
    fn pushout_lift(&self, po: &Cospan<Self::Mor>, x: &Self::Mor, y: &Self::Mor) -> Option<Self::Mor>;

    /// Equalizer `e: E → X` of a parallel pair `u, v: X → Y`.
    fn equalizer(&self, u: &Self::Mor, v: &Self::Mor) -> Result<Self::Mor>;
    /// Coequalizer `q: Y → Q` of a parallel pair `u, v: X → Y`.
    fn coequalizer(&self, u: &Self::Mor, v: &Self::Mor) -> Result<Self::Mor>;
    /// The `u` with `mono ∘ u = x`, if `x` factors through `mono`.
    fn factor_through(&self, x: &Self::Mor, mono: &Self::Mor) -> Option<Self::Mor>;

    /// Whether the family (all with a common codomain) is jointly epimorphic.
    fn is_jointly_epi(&self, family: &[Self::Mor]) -> bool;

    /// Representatives of all objects of size at most `bound`, one per
    /// isomorphism class, in canonical order (size, then lexicographic).
    fn objects(&self, bound: usize) -> Result<Vec<Self::Obj>>;
    /// All morphisms `x → y`, in canonical order.
    fn hom(&self, x: &Self::Obj, y: &Self::Obj) -> Vec<Self::Mor>;
    fn size(&self, x: &Self::Obj) -> usize;

    fn obj_to_json(&self, x: &Self::Obj) -> Value;
    fn mor_to_json(&self, f: &Self::Mor) -> Value;
    fn mor_from_json(&self, v: &Value) -> Result<Self::Mor>;

    /// `compose` for callers that already know the pair is composable.
    fn then(&self, f: &Self::Mor, g: &Self::Mor) -> Self::Mor {
        self.compose(f, g).expect("composable by construction")
    }
}
