//! Smith normal form of integer matrices, exact throughout.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

/// Invariant-factor decomposition of a finitely generated abelian group:
/// `Z/d_1 + ... + Z/d_r + Z^f` with `d_1 | d_2 | ... | d_r`, each `d_i >= 2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AbelianGroupSnf {
    pub invariant_factors: Vec<BigInt>,
    pub free_rank: usize,
}

impl AbelianGroupSnf {
    pub fn trivial() -> Self {
        AbelianGroupSnf { invariant_factors: vec![], free_rank: 0 }
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty() && self.free_rank == 0
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// Group order; None when infinite.
    pub fn order(&self) -> Option<BigInt> {
        if self.free_rank > 0 {
            return None;
        }
        Some(self.invariant_factors.iter().product())
    }

    /// Order with the convention that 0 encodes an infinite group.
    pub fn order_or_zero(&self) -> BigInt {
        self.order().unwrap_or_else(BigInt::zero)
    }
}

impl fmt::Display for AbelianGroupSnf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts: Vec<String> = self
            .invariant_factors
            .iter()
            .map(|d| format!("Z/{d}"))
            .collect();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// Smith normal form of an integer matrix, returning the cokernel
/// `Z^rows / im(M)` as invariant factors plus free rank.
///
/// Classical elimination with a smallest-nonzero-entry pivot heuristic to
/// keep coefficient growth down at block-circulant sizes.
pub fn smith_normal_form(mat: &[Vec<BigInt>]) -> AbelianGroupSnf {
    let rows = mat.len();
    let cols = if rows == 0 { 0 } else { mat[0].len() };
    let mut m: Vec<Vec<BigInt>> = mat.to_vec();
    debug_assert!(m.iter().all(|r| r.len() == cols));

    let mut diag: Vec<BigInt> = Vec::new();
    let mut k = 0usize;
    while k < rows.min(cols) {
        let Some((pi, pj)) = smallest_nonzero(&m, k) else {
            break;
        };
        m.swap(k, pi);
        for row in m.iter_mut() {
            row.swap(k, pj);
        }

        // Reduce row/column k until the pivot divides everything it meets.
        loop {
            let mut clean = true;
            for i in k + 1..rows {
                if m[i][k].is_zero() {
                    continue;
                }
                let q = rounded_quotient(&m[i][k], &m[k][k]);
                if !q.is_zero() {
                    for j in k..cols {
                        let t = &q * &m[k][j];
                        m[i][j] -= t;
                    }
                }
                if !m[i][k].is_zero() {
                    // remainder strictly smaller; promote it to the pivot
                    m.swap(k, i);
                    clean = false;
                }
            }
            for j in k + 1..cols {
                if m[k][j].is_zero() {
                    continue;
                }
                let q = rounded_quotient(&m[k][j], &m[k][k]);
                if !q.is_zero() {
                    for row in m.iter_mut().take(rows).skip(k) {
                        let t = &q * &row[k];
                        row[j] -= t;
                    }
                }
                if !m[k][j].is_zero() {
                    for row in m.iter_mut() {
                        row.swap(k, j);
                    }
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }

        // Enforce that the pivot divides the remaining submatrix.
        let mut fixed = false;
        'scan: for i in k + 1..rows {
            for j in k + 1..cols {
                if !(&m[i][j] % &m[k][k]).is_zero() {
                    for jj in k..cols {
                        let t = m[i][jj].clone();
                        m[k][jj] += t;
                    }
                    fixed = true;
                    break 'scan;
                }
            }
        }
        if fixed {
            continue; // redo this pivot with the enlarged row
        }

        diag.push(m[k][k].abs());
        k += 1;
    }

    let rank = diag.len();
    let mut factors: Vec<BigInt> = diag.into_iter().filter(|d| !d.is_one()).collect();
    factors.sort();
    debug_assert!(factors
        .windows(2)
        .all(|w| (&w[1] % &w[0]).is_zero()));
    AbelianGroupSnf { invariant_factors: factors, free_rank: rows - rank }
}

fn smallest_nonzero(m: &[Vec<BigInt>], k: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in k..m.len() {
        for j in k..m[i].len() {
            if m[i][j].is_zero() {
                continue;
            }
            match best {
                None => best = Some((i, j)),
                Some((bi, bj)) => {
                    if m[i][j].abs() < m[bi][bj].abs() {
                        best = Some((i, j));
                    }
                }
            }
        }
    }
    best
}

/// Quotient rounding to nearest, so remainders satisfy |r| <= |d|/2.
fn rounded_quotient(n: &BigInt, d: &BigInt) -> BigInt {
    let (mut q, r) = n.div_rem(d);
    let twice = BigInt::from(2) * r.abs();
    if twice > d.abs() {
        if (n.is_negative()) != (d.is_negative()) {
            q -= 1;
        } else {
            q += 1;
        }
    }
    q
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::intpoly::bareiss_determinant;
    use proptest::prelude::*;

    fn big(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    #[test]
    fn diagonal_matrix() {
        let snf = smith_normal_form(&big(&[&[2, 0], &[0, 6]]));
        assert_eq!(snf.invariant_factors, vec![BigInt::from(2), BigInt::from(6)]);
        assert_eq!(snf.free_rank, 0);
        assert_eq!(snf.order(), Some(BigInt::from(12)));
    }

    #[test]
    fn rank_deficient() {
        let snf = smith_normal_form(&big(&[&[2, 0], &[0, 0]]));
        assert_eq!(snf.invariant_factors, vec![BigInt::from(2)]);
        assert_eq!(snf.free_rank, 1);
        assert_eq!(snf.order(), None);
        assert_eq!(snf.order_or_zero(), BigInt::zero());
    }

    #[test]
    fn unit_factors_dropped() {
        let snf = smith_normal_form(&big(&[&[1, 2], &[3, 4]]));
        assert_eq!(snf.invariant_factors, vec![BigInt::from(2)]);
        assert_eq!(snf.free_rank, 0);
    }

    #[test]
    fn non_divisible_diagonal() {
        // diag(4, 6) ~ Z/2 + Z/12
        let snf = smith_normal_form(&big(&[&[4, 0], &[0, 6]]));
        assert_eq!(snf.invariant_factors, vec![BigInt::from(2), BigInt::from(12)]);
    }

    #[test]
    fn empty_and_zero() {
        assert!(smith_normal_form(&[]).is_trivial());
        let snf = smith_normal_form(&big(&[&[0, 0], &[0, 0]]));
        assert_eq!(snf.free_rank, 2);
        assert!(snf.invariant_factors.is_empty());
    }

    #[test]
    fn display() {
        let snf = smith_normal_form(&big(&[&[2, 0, 0], &[0, 2, 0], &[0, 0, 0]]));
        assert_eq!(snf.to_string(), "Z/2 + Z/2 + Z");
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn determinant_equals_factor_product(entries in proptest::collection::vec(-9i64..=9, 16)) {
            let mat: Vec<Vec<BigInt>> = (0..4)
                .map(|i| (0..4).map(|j| BigInt::from(entries[4 * i + j])).collect())
                .collect();
            let mut m = mat.clone();
            let det = bareiss_determinant(&mut m).abs();
            let snf = smith_normal_form(&mat);
            if det.is_zero() {
                prop_assert!(snf.free_rank > 0);
            } else {
                prop_assert_eq!(snf.free_rank, 0);
                prop_assert_eq!(snf.order().unwrap(), det);
            }
            // divisibility chain
            for w in snf.invariant_factors.windows(2) {
                prop_assert!((&w[1] % &w[0]).is_zero());
            }
        }
    }
}
