//! Finite, executable adhesivity theory.
//!
//! Four concrete categories ([`instances`]) share the [`Category`] contract.
//! On top of it sit universal-property checks ([`universal`]), the
//! kernel-pair / cokernel-pair / union / factorization constructions
//! ([`colimit`]), bounded decision procedures for stability, van Kampen
//! cubes and adhesivity ([`adhesion`]), sheaf conditions on finite
//! presentations ([`sheaf`]), and double-pushout rewriting ([`dpo`]).
//! Every check returns a [`Witness`] that can be replayed ([`replay`]).

pub mod adhesion;
pub mod category;
pub mod colimit;
pub mod diagram;
pub mod dpo;
pub mod error;
pub mod instances;
pub mod presentation;
pub mod presheaf;
pub mod probe;
pub mod replay;
pub mod report;
pub mod sheaf;
pub mod suites;
pub mod universal;
pub mod witness;

pub use category::{Category, Cospan, Span};
pub use diagram::{Cube, Square};
pub use error::{CatError, Result};
pub use instances::{Hom, Kind, StructCat, Structure};
pub use witness::{Verdict, Witness};
