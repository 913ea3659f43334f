//! Factorization invariants of finitely generated reduced commutative
//! semigroups, and exact fitting of their eventual quasipolynomial behaviour.

pub mod error;
pub mod factor;
pub mod invariants;
pub mod oracles;
pub mod parallel;
pub mod quasipoly;
pub mod reproduce;
pub mod semigroup;

pub use error::{Error, Result};
pub use factor::{contains, denumerant_table, factorizations, Factorization, FactorizationSet};
pub use semigroup::{AmbientSpec, Element, SemigroupPresentation, ValidationReport, Violation};
