//! Dense integer polynomials: cyclotomic polynomials, exact division,
//! resultants.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::algebra::LaurentPoly;
use crate::error::{Error, Result};

/// A polynomial over Z, dense little-endian coefficients, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly { coeffs: vec![] }
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// `t^n - 1`.
    pub fn t_pow_minus_one(n: u64) -> Self {
        let mut coeffs = vec![BigInt::zero(); n as usize + 1];
        coeffs[0] = BigInt::from(-1);
        coeffs[n as usize] = BigInt::one();
        Self::from_coeffs(coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        if self.is_zero() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn mul(&self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::from_coeffs(out)
    }

    /// Division with remainder by a monic divisor; exact over Z.
    pub fn div_rem_monic(&self, divisor: &IntPoly) -> (IntPoly, IntPoly) {
        let d = divisor.degree().expect("divisor must be nonzero");
        assert!(divisor.leading().unwrap().is_one(), "divisor must be monic");
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); rem.len().saturating_sub(d)];
        while rem.len() > d && !rem.is_empty() {
            let lead = rem.last().unwrap().clone();
            if lead.is_zero() {
                rem.pop();
                continue;
            }
            let shift = rem.len() - 1 - d;
            quot[shift] = lead.clone();
            for i in 0..=d {
                let c = &divisor.coeffs[i] * &lead;
                rem[shift + i] -= c;
            }
            debug_assert!(rem.last().unwrap().is_zero());
            rem.pop();
        }
        (IntPoly::from_coeffs(quot), IntPoly::from_coeffs(rem))
    }

    /// True if `divisor | self` (divisor monic).
    pub fn divisible_by_monic(&self, divisor: &IntPoly) -> bool {
        self.div_rem_monic(divisor).1.is_zero()
    }

    pub fn to_laurent(&self) -> LaurentPoly {
        LaurentPoly::from_terms(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| (i as i64, c.clone())),
        )
    }
}

/// The d-th cyclotomic polynomial, by iterated exact division of `t^d - 1`
/// by the cyclotomic polynomials of the proper divisors.
pub fn cyclotomic(d: u64) -> IntPoly {
    assert!(d >= 1);
    let mut quotient = IntPoly::t_pow_minus_one(d);
    for e in 1..d {
        if d % e == 0 {
            let phi_e = cyclotomic(e);
            let (q, r) = quotient.div_rem_monic(&phi_e);
            debug_assert!(r.is_zero());
            quotient = q;
        }
    }
    quotient
}

/// Euler's totient.
pub fn euler_phi(d: u64) -> u64 {
    let mut n = d;
    let mut phi = d;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            phi -= phi / p;
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        phi -= phi / n;
    }
    phi
}

/// True iff `p(exp(2*pi*i*m/n)) = 0`, decided exactly: the evaluation point is
/// a primitive d-th root of unity for d = n/gcd(m,n), and vanishing there is
/// equivalent to the d-th cyclotomic polynomial dividing the polynomial part.
pub fn is_zero_at_root(p: &LaurentPoly, m: u64, n: u64) -> bool {
    assert!(0 < m && m < n, "need 0 < m < n");
    if p.is_zero() {
        return true;
    }
    let d = n / num_integer::gcd(m, n);
    let (poly, _) = p.polynomial_part();
    let ip = IntPoly::from_coeffs(poly.dense_coeffs());
    ip.divisible_by_monic(&cyclotomic(d))
}

/// |Res(p, q)| by fraction-free (Bareiss) elimination of the Sylvester matrix.
pub fn resultant_abs(p: &IntPoly, q: &IntPoly) -> Result<BigInt> {
    if p.is_zero() || q.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let n = p.degree().unwrap();
    let m = q.degree().unwrap();
    if n == 0 {
        return Ok(p.coeff(0).abs().pow(m as u32));
    }
    if m == 0 {
        return Ok(q.coeff(0).abs().pow(n as u32));
    }
    let size = n + m;
    let mut mat = vec![vec![BigInt::zero(); size]; size];
    for row in 0..m {
        for (i, c) in p.coeffs().iter().enumerate() {
            mat[row][row + n - i] = c.clone();
        }
    }
    for row in 0..n {
        for (i, c) in q.coeffs().iter().enumerate() {
            mat[m + row][row + m - i] = c.clone();
        }
    }
    Ok(bareiss_determinant(&mut mat).abs())
}

/// Fraction-free determinant; consumes the matrix.
pub fn bareiss_determinant(mat: &mut [Vec<BigInt>]) -> BigInt {
    let n = mat.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = 1i32;
    let mut prev = BigInt::one();
    for k in 0..n {
        // pivot
        if mat[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !mat[i][k].is_zero()) else {
                return BigInt::zero();
            };
            mat.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &mat[i][j] * &mat[k][k] - &mat[i][k] * &mat[k][j];
                let (q, r) = num_integer::Integer::div_rem(&v, &prev);
                debug_assert!(r.is_zero(), "Bareiss division must be exact");
                mat[i][j] = q;
            }
            mat[i][k] = BigInt::zero();
        }
        prev = mat[k][k].clone();
    }
    let det = mat[n - 1][n - 1].clone();
    if sign < 0 {
        -det
    } else {
        det
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_small() {
        assert_eq!(cyclotomic(1), IntPoly::from_i64(&[-1, 1]));
        assert_eq!(cyclotomic(2), IntPoly::from_i64(&[1, 1]));
        assert_eq!(cyclotomic(5), IntPoly::from_i64(&[1, 1, 1, 1, 1]));
        assert_eq!(cyclotomic(6), IntPoly::from_i64(&[1, -1, 1]));
    }

    #[test]
    fn cyclotomic_degree_and_product() {
        for n in 1..=30u64 {
            let mut prod = IntPoly::from_i64(&[1]);
            for d in 1..=n {
                if n % d == 0 {
                    let phi = cyclotomic(d);
                    assert_eq!(phi.degree().unwrap() as u64, euler_phi(d));
                    prod = prod.mul(&phi);
                }
            }
            assert_eq!(prod, IntPoly::t_pow_minus_one(n));
        }
    }

    #[test]
    fn zero_at_root() {
        // t - 1 + t^-1 vanishes at primitive 6th roots, not at 5th roots
        let p = LaurentPoly::from_terms([(1i64, 1i64), (0, -1), (-1, 1)]);
        assert!(is_zero_at_root(&p, 1, 6));
        assert!(!is_zero_at_root(&p, 1, 5));
        assert!(!is_zero_at_root(&LaurentPoly::one(), 1, 2));
        assert!(!is_zero_at_root(&LaurentPoly::one(), 3, 7));
    }

    #[test]
    fn resultants() {
        let a = IntPoly::from_i64(&[-2, 1]); // t - 2
        let b = IntPoly::from_i64(&[-3, 1]); // t - 3
        assert_eq!(resultant_abs(&a, &b).unwrap(), BigInt::one());

        let c = IntPoly::from_i64(&[1, -1, 1]); // t^2 - t + 1
        let d = IntPoly::from_i64(&[1, 1]); // t + 1
        assert_eq!(resultant_abs(&c, &d).unwrap(), BigInt::from(3));

        let e = IntPoly::from_i64(&[1, -3, 1]); // t^2 - 3t + 1
        assert_eq!(resultant_abs(&e, &d).unwrap(), BigInt::from(5));

        assert_eq!(
            resultant_abs(&IntPoly::zero(), &d),
            Err(Error::ZeroPolynomial)
        );
    }

    #[test]
    fn resultant_matches_root_products_over_cyclotomics() {
        // |Res(p, Phi_d)| = prod over primitive d-th roots w of |p(w)|;
        // check against exact norms for small d where the product is easy:
        // p = t - 2: |Res(p, Phi_d)| = |Phi_d(2)|.
        let p = IntPoly::from_i64(&[-2, 1]);
        for d in 1..=12u64 {
            let phi = cyclotomic(d);
            let val: BigInt = phi
                .coeffs()
                .iter()
                .enumerate()
                .map(|(i, c)| c * BigInt::from(2).pow(i as u32))
                .sum();
            assert_eq!(resultant_abs(&p, &phi).unwrap(), val.abs(), "d = {d}");
        }
    }

    #[test]
    fn bareiss_det() {
        let mut m = vec![
            vec![BigInt::from(1), BigInt::from(2)],
            vec![BigInt::from(3), BigInt::from(4)],
        ];
        assert_eq!(bareiss_determinant(&mut m), BigInt::from(-2));
        let mut sing = vec![
            vec![BigInt::from(1), BigInt::from(2)],
            vec![BigInt::from(2), BigInt::from(4)],
        ];
        assert_eq!(bareiss_determinant(&mut sing), BigInt::zero());
    }
}
