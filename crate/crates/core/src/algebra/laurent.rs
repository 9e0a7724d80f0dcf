//! Integer Laurent polynomials in one variable.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::algebra::Rational;

/// A Laurent polynomial with arbitrary-precision integer coefficients.
///
/// Stored as a map from exponent to coefficient; zero coefficients are never
/// kept, so equality of the maps is equality of polynomials.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly { coeffs: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::monomial(0, BigInt::one())
    }

    /// The monomial `c * t^e`.
    pub fn monomial(e: i64, c: impl Into<BigInt>) -> Self {
        let c = c.into();
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(e, c);
        }
        LaurentPoly { coeffs }
    }

    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c.into());
        }
        p
    }

    pub fn add_term(&mut self, e: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(e).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, e: i64) -> BigInt {
        self.coeffs.get(&e).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.coeffs.iter().map(|(&e, c)| (e, c))
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    /// Substitutes `t -> t^-1`.
    pub fn invert_variable(&self) -> Self {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(&e, c)| (-e, c.clone())).collect(),
        }
    }

    /// Formal derivative: `sum c_e t^e  ->  sum e c_e t^(e-1)`.
    pub fn derivative(&self) -> Self {
        let mut p = Self::zero();
        for (&e, c) in &self.coeffs {
            p.add_term(e - 1, c * BigInt::from(e));
        }
        p
    }

    /// Exact evaluation at a nonzero integer.
    pub fn eval_at_integer(&self, x: &BigInt) -> Rational {
        assert!(!x.is_zero(), "evaluation point must be nonzero");
        let mut acc = Rational::zero();
        for (&e, c) in &self.coeffs {
            let p = BigInt::from(x.clone()).pow(e.unsigned_abs() as u32);
            let term = if e >= 0 {
                Rational::from(c * p)
            } else {
                Rational::new(c.clone(), p)
            };
            acc += term;
        }
        acc
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(&e, k)| (e, k * c)).collect(),
        }
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(&e, c)| (e + k, c.clone())).collect(),
        }
    }

    /// The polynomial part `t^(-min_exp) * self`, together with the shift used.
    /// For the zero polynomial returns (0, 0).
    pub fn polynomial_part(&self) -> (Self, i64) {
        match self.min_exp() {
            None => (Self::zero(), 0),
            Some(m) if m >= 0 => (self.clone(), 0),
            Some(m) => (self.shift(-m), -m),
        }
    }

    /// Dense coefficient vector `[c_0, ..., c_deg]`; requires min_exp >= 0.
    pub fn dense_coeffs(&self) -> Vec<BigInt> {
        if self.is_zero() {
            return vec![];
        }
        let lo = self.min_exp().unwrap();
        assert!(lo >= 0, "dense_coeffs needs an honest polynomial");
        let hi = self.max_exp().unwrap();
        let mut v = vec![BigInt::zero(); hi as usize + 1];
        for (&e, c) in &self.coeffs {
            v[e as usize] = c.clone();
        }
        v
    }

    /// True if `p(t) == p(1/t)`.
    pub fn is_symmetric(&self) -> bool {
        *self == self.invert_variable()
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        Self::monomial(0, c)
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (&e, c) in &rhs.coeffs {
            out.add_term(e, c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (&e, c) in &rhs.coeffs {
            out.add_term(e, -c.clone());
        }
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (&e1, c1) in &self.coeffs {
            for (&e2, c2) in &rhs.coeffs {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(&e, c)| (e, -c.clone())).collect(),
        }
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        // highest power first
        let mut first = true;
        for (&e, c) in self.coeffs.iter().rev() {
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let show_coeff = !abs.is_one() || e == 0;
            if show_coeff {
                write!(f, "{abs}")?;
            }
            match e {
                0 => {}
                1 => write!(f, "{}t", if show_coeff { "*" } else { "" })?,
                _ => write!(f, "{}t^{}", if show_coeff { "*" } else { "" }, e)?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().copied())
    }

    #[test]
    fn mul_basic() {
        // (t - 1)(t + 1) = t^2 - 1
        let a = p(&[(1, 1), (0, -1)]);
        let b = p(&[(1, 1), (0, 1)]);
        assert_eq!(&a * &b, p(&[(2, 1), (0, -1)]));
    }

    #[test]
    fn invert_variable() {
        let a = p(&[(4, -1), (3, 1), (1, 1)]);
        assert_eq!(a.invert_variable(), p(&[(-4, -1), (-3, 1), (-1, 1)]));
    }

    #[test]
    fn derivative() {
        let a = p(&[(4, 1), (6, 1), (10, -1)]);
        assert_eq!(a.derivative(), p(&[(3, 4), (5, 6), (9, -10)]));
    }

    #[test]
    fn eval_at_minus_one() {
        let a = p(&[(4, 1), (6, 1), (10, -1)]);
        assert_eq!(a.eval_at_integer(&BigInt::from(-1)), Rational::from(BigInt::one()));
        let d = a.derivative();
        assert_eq!(d.eval_at_integer(&BigInt::from(-1)), Rational::zero());
        assert_eq!(
            LaurentPoly::one().eval_at_integer(&BigInt::from(-1)),
            Rational::from(BigInt::one())
        );
    }

    #[test]
    fn eval_with_negative_exponents() {
        // t^-1 + t at x = 2 -> 1/2 + 2 = 5/2
        let a = p(&[(-1, 1), (1, 1)]);
        assert_eq!(
            a.eval_at_integer(&BigInt::from(2)),
            Rational::new(BigInt::from(5), BigInt::from(2))
        );
    }

    #[test]
    fn zero_coeffs_never_stored() {
        let mut a = p(&[(2, 1)]);
        a.add_term(2, BigInt::from(-1));
        assert!(a.is_zero());
        assert_eq!(a, LaurentPoly::zero());
    }

    #[test]
    fn display() {
        let a = p(&[(4, -1), (3, 1), (1, 1)]);
        assert_eq!(a.to_string(), "-t^4 + t^3 + t");
        let b = p(&[(1, 1), (0, -1), (-1, 1)]);
        assert_eq!(b.to_string(), "t - 1 + t^-1");
    }
}
