//! Knot-theoretic invariants of cyclic branched covers.
//!
//! From a combinatorial knot presentation (braid word or planar diagram)
//! this crate computes, in exact arithmetic wherever possible:
//!
//! - Jones polynomial, knot determinant and `J'(-1)` (Kauffman bracket);
//! - Seifert matrices, Alexander polynomials and Tristram-Levine signatures;
//! - first homology of cyclic branched covers (Smith normal form) and the
//!   rational-homology-sphere test;
//! - the mapping-torus invariants built from signature sums, the monopole
//!   Lefschetz number with a user-supplied Froyshov correction term, the
//!   Casson invariant of Brieskorn spheres, and the `L_n` concordance
//!   invariant;
//! - two L-space obstructions with machine-checkable certificates.

pub mod algebra;
pub mod covers;
pub mod error;
pub mod gauge;
pub mod jones;
pub mod notation;
pub mod obstruct;
pub mod seifert;

pub use error::{Error, Result};
