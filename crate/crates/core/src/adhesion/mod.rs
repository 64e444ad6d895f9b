//! Bounded decision procedures for stability, van Kampen squares, adhesive
//! morphisms and the adhesive / rm-adhesive / q-adhesive classification.
//!
//! "For every morphism" is read as "for every morphism out of (or into) an
//! object of size at most the bound", so every verdict is either verified at
//! a bound or refuted with a witness.

pub mod cancellation;
pub mod classify;
pub mod morphism;
pub mod vk;

pub use cancellation::{cancellation_lemma_check, CancellationConfig};
pub use classify::{classify, mono_coherence, Classification, Coherence, Flag};
pub use morphism::{is_adhesive_morphism, is_pre_adhesive};
pub use vk::{is_stable_pushout, is_van_kampen, pullback_cube};
