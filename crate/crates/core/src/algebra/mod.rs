//! Exact integer and cyclotomic arithmetic: Laurent polynomials, cyclotomic
//! polynomials and ring elements, resultants, Smith normal form, and the
//! certified Hermitian signature engine.

pub mod cyclo;
pub mod fixed;
pub mod hermitian;
pub mod intpoly;
pub mod laurent;
pub mod snf;

pub use cyclo::{cyclo_rank, CycloElt};
pub use hermitian::{hermitian_signature, HermitianCycloMatrix, PrecisionPolicy};
pub use intpoly::{cyclotomic, euler_phi, is_zero_at_root, resultant_abs, IntPoly};
pub use laurent::LaurentPoly;
pub use snf::{smith_normal_form, AbelianGroupSnf};

/// Exact rational numbers, the only numeric type crossing module boundaries.
pub type Rational = num_rational::BigRational;
