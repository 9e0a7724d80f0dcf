//! First homology of cyclic branched covers.
//!
//! `H_1` of the n-fold cover branched over the knot is presented by the
//! block-circulant integer matrix realizing `V^T - t V` with `t` acting as
//! the cyclic shift of n blocks; its Smith normal form gives the group.
//! The Fox order formula provides an independent computation of the order.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::algebra::intpoly::IntPoly;
use crate::algebra::{resultant_abs, smith_normal_form, AbelianGroupSnf};
use crate::error::Result;
use crate::seifert::SeifertMatrix;

/// Homology of the n-fold cyclic branched cover.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BranchedCoverReport {
    pub n: u64,
    pub homology: AbelianGroupSnf,
    /// Group order, with 0 encoding an infinite group.
    pub order: BigInt,
    pub qhs: bool,
}

/// Smith normal form of the `(2g n) x (2g n)` block-circulant presentation
/// matrix: block row i carries `V^T` in block column i and `-V` in block
/// column i+1 mod n. Degree n = 1 is accepted for internal checks.
pub fn branched_homology(v: &SeifertMatrix, n: u64) -> BranchedCoverReport {
    assert!(n >= 1);
    let dim = v.dim();
    let n_us = n as usize;
    let size = dim * n_us;
    let mut mat = vec![vec![BigInt::zero(); size]; size];
    for block in 0..n_us {
        let next = (block + 1) % n_us;
        for i in 0..dim {
            for j in 0..dim {
                // V^T on the diagonal block
                mat[block * dim + i][block * dim + j] += BigInt::from(v.entry(j, i));
                // -V on the superdiagonal block (cyclic)
                mat[block * dim + i][next * dim + j] += BigInt::from(-v.entry(i, j));
            }
        }
    }
    let homology = smith_normal_form(&mat);
    let order = homology.order_or_zero();
    let qhs = homology.is_finite();
    BranchedCoverReport { n, homology, order, qhs }
}

/// `|prod_(m=1)^(n-1) Delta(exp(2 pi i m / n))|`, computed exactly as the
/// resultant of the Alexander polynomial with `(t^n - 1)/(t - 1)`;
/// 0 when some factor vanishes. Classical order formula for the branched
/// cover homology, used as an oracle against the Smith normal form route.
pub fn fox_order(v: &SeifertMatrix, n: u64) -> Result<BigInt> {
    assert!(n >= 1);
    if n == 1 {
        return Ok(BigInt::from(1));
    }
    let delta = v.alexander();
    let (poly, _) = delta.polynomial_part();
    let delta_poly = IntPoly::from_coeffs(poly.dense_coeffs());
    let cyclic_quotient = cyclotomic_quotient(n);
    resultant_abs(&delta_poly, &cyclic_quotient)
}

/// `(t^n - 1)/(t - 1) = 1 + t + ... + t^(n-1)`.
fn cyclotomic_quotient(n: u64) -> IntPoly {
    IntPoly::from_coeffs(vec![BigInt::from(1); n as usize])
}

/// True iff the n-fold branched cover is a rational homology sphere, i.e.
/// the Fox order is nonzero; equivalently the Alexander polynomial has no
/// root among the nontrivial n-th roots of unity.
pub fn is_qhs(v: &SeifertMatrix, n: u64) -> bool {
    (2..=n).all(|d| n % d != 0 || !v.alexander_vanishes_at(1, d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::notation::{parse_braid, torus_braid};
    use crate::seifert::seifert_matrix;

    fn sm(word: &str) -> SeifertMatrix {
        seifert_matrix(&parse_braid(word).unwrap()).unwrap()
    }

    #[test]
    fn double_cover_of_trefoil() {
        let rep = branched_homology(&sm("1 1 1"), 2);
        assert_eq!(rep.homology.invariant_factors, vec![BigInt::from(3)]);
        assert_eq!(rep.homology.free_rank, 0);
        assert_eq!(rep.order, BigInt::from(3));
        assert!(rep.qhs);
    }

    #[test]
    fn double_cover_of_figure_eight() {
        let rep = branched_homology(&sm("1 -2 1 -2"), 2);
        assert_eq!(rep.homology.invariant_factors, vec![BigInt::from(5)]);
        assert_eq!(rep.order, BigInt::from(5));
    }

    #[test]
    fn triple_cover_of_trefoil() {
        // Z/2 + Z/2, not Z/4
        let rep = branched_homology(&sm("1 1 1"), 3);
        assert_eq!(
            rep.homology.invariant_factors,
            vec![BigInt::from(2), BigInt::from(2)]
        );
        assert_eq!(rep.order, BigInt::from(4));
        assert_eq!(fox_order(&sm("1 1 1"), 3).unwrap(), BigInt::from(4));
    }

    #[test]
    fn sixfold_cover_of_trefoil_is_not_qhs() {
        let v = sm("1 1 1");
        let rep = branched_homology(&v, 6);
        assert!(rep.homology.free_rank > 0);
        assert_eq!(rep.order, BigInt::zero());
        assert!(!rep.qhs);
        assert_eq!(fox_order(&v, 6).unwrap(), BigInt::zero());
        assert!(!is_qhs(&v, 6));
    }

    #[test]
    fn fox_order_examples() {
        let v = sm("1 1 1");
        assert_eq!(fox_order(&v, 2).unwrap(), BigInt::from(3));
        // the 5-fold cover of the trefoil is the Poincare sphere
        assert_eq!(fox_order(&v, 5).unwrap(), BigInt::from(1));
    }

    #[test]
    fn qhs_examples() {
        let v = sm("1 1 1");
        assert!(is_qhs(&v, 2));
        assert!(!is_qhs(&v, 6));
        let unknot = seifert_matrix(&crate::notation::BraidWord::unknot()).unwrap();
        for n in 2..=8 {
            assert!(is_qhs(&unknot, n));
        }
    }

    #[test]
    fn identity_cover_is_trivial() {
        for word in ["1 1 1", "1 -2 1 -2", "1 1 1 1 1"] {
            let rep = branched_homology(&sm(word), 1);
            assert!(rep.homology.is_trivial(), "{word}");
        }
    }

    #[test]
    fn fox_order_matches_snf_on_small_knots() {
        for word in ["1 1 1", "1 -2 1 -2", "1 1 1 1 1", "1 1 1 -2 1 -2"] {
            let v = sm(word);
            for n in 2..=6 {
                assert_eq!(
                    fox_order(&v, n).unwrap(),
                    branched_homology(&v, n).order,
                    "{word} at n = {n}"
                );
            }
        }
    }

    #[test]
    fn double_cover_order_is_the_determinant() {
        for word in ["1 1 1", "1 -2 1 -2", "1 1 1 1 1", "1 1 1 -2 1 -2"] {
            let v = sm(word);
            assert_eq!(branched_homology(&v, 2).order, v.determinant(), "{word}");
        }
    }

    #[test]
    fn prime_power_covers_are_qhs() {
        for word in ["1 1 1", "1 -2 1 -2", "1 2 1 2", "1 1 1 -2 1 -2"] {
            let v = sm(word);
            for n in [2u64, 3, 4, 5, 7, 8, 9] {
                assert!(is_qhs(&v, n), "{word} at n = {n}");
            }
        }
    }

    #[test]
    fn brieskorn_cover_homology_is_trivial() {
        // Sigma(2,3,5): 2-fold cover of T(3,5) is an integral homology sphere
        let v = seifert_matrix(&torus_braid(3, 5).unwrap()).unwrap();
        let rep = branched_homology(&v, 2);
        assert!(rep.homology.is_trivial());
        assert_eq!(rep.order, BigInt::from(1));
    }

    #[test]
    fn signature_sum_gate_matches_is_qhs() {
        use crate::algebra::PrecisionPolicy;
        use crate::seifert::tl_signature_sum;
        let v = sm("1 1 1");
        assert!(matches!(
            tl_signature_sum(&v, 6, &PrecisionPolicy::default()),
            Err(Error::NotRationalHomologySphere(6))
        ));
        assert!(tl_signature_sum(&v, 5, &PrecisionPolicy::default()).is_ok());
    }
}
