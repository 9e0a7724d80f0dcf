//! Exact arithmetic in Z[zeta_d], the integer ring modulo the d-th
//! cyclotomic polynomial, plus exact rank computation over the fraction
//! field Q(zeta_d).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::algebra::intpoly::{cyclotomic, euler_phi, IntPoly};
use crate::algebra::LaurentPoly;

/// An element of Z[zeta_d] in the power basis 1, zeta, ..., zeta^(phi(d)-1),
/// reduced modulo the d-th cyclotomic polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycloElt {
    conductor: u64,
    coeffs: Vec<BigInt>, // length phi(d)
}

impl CycloElt {
    pub fn zero(d: u64) -> Self {
        CycloElt { conductor: d, coeffs: vec![BigInt::zero(); euler_phi(d) as usize] }
    }

    pub fn one(d: u64) -> Self {
        let mut e = Self::zero(d);
        if !e.coeffs.is_empty() {
            e.coeffs[0] = BigInt::one();
        }
        e
    }

    pub fn from_integer(d: u64, c: impl Into<BigInt>) -> Self {
        let mut e = Self::zero(d);
        let c = c.into();
        if !e.coeffs.is_empty() {
            e.coeffs[0] = c;
        } else {
            // phi(1) = 0 would be degenerate; conductor 1 means zeta = 1 and
            // the ring is Z, which we model with a single coefficient.
            e.coeffs = vec![c];
        }
        e
    }

    /// `zeta^k`, exponent taken modulo d.
    pub fn root_power(d: u64, k: i64) -> Self {
        let k = k.rem_euclid(d as i64) as u64;
        let mut raw = vec![BigInt::zero(); k as usize + 1];
        raw[k as usize] = BigInt::one();
        Self::reduce_raw(d, raw)
    }

    /// Evaluates a Laurent polynomial at `zeta_d^k`.
    pub fn from_laurent_at_root(p: &LaurentPoly, d: u64, k: i64) -> Self {
        let mut raw = vec![BigInt::zero(); d as usize];
        for (e, c) in p.terms() {
            let idx = (e * k).rem_euclid(d as i64) as usize;
            raw[idx] += c;
        }
        Self::reduce_raw(d, raw)
    }

    fn reduce_raw(d: u64, raw: Vec<BigInt>) -> Self {
        if d == 1 {
            let sum: BigInt = raw.into_iter().sum();
            return CycloElt { conductor: 1, coeffs: vec![sum] };
        }
        let phi = cyclotomic(d);
        let (_, rem) = IntPoly::from_coeffs(raw).div_rem_monic(&phi);
        let deg = euler_phi(d) as usize;
        let mut coeffs = rem.coeffs().to_vec();
        coeffs.resize(deg, BigInt::zero());
        CycloElt { conductor: d, coeffs }
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, rhs: &CycloElt) -> CycloElt {
        assert_eq!(self.conductor, rhs.conductor);
        CycloElt {
            conductor: self.conductor,
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn neg(&self) -> CycloElt {
        CycloElt {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, rhs: &CycloElt) -> CycloElt {
        assert_eq!(self.conductor, rhs.conductor);
        if self.conductor == 1 {
            return CycloElt {
                conductor: 1,
                coeffs: vec![&self.coeffs[0] * &rhs.coeffs[0]],
            };
        }
        let mut raw = vec![BigInt::zero(); 2 * self.coeffs.len()];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                raw[i + j] += a * b;
            }
        }
        Self::reduce_raw(self.conductor, raw)
    }

    /// Complex conjugation: `zeta -> zeta^(-1)`.
    pub fn conjugate(&self) -> CycloElt {
        if self.conductor <= 2 {
            return self.clone();
        }
        let d = self.conductor;
        let mut raw = vec![BigInt::zero(); d as usize];
        for (j, c) in self.coeffs.iter().enumerate() {
            let idx = ((d as i64 - j as i64) % d as i64) as usize % d as usize;
            raw[idx] += c;
        }
        Self::reduce_raw(d, raw)
    }
}

/// A polynomial-mod-Phi_d representative over Q, the field Q(zeta_d).
/// Internal to exact rank computations.
#[derive(Debug, Clone, PartialEq)]
struct FieldElt(Vec<BigRational>);

struct CycloField {
    modulus: Vec<BigRational>, // Phi_d, monic
    deg: usize,
}

impl CycloField {
    fn new(d: u64) -> Self {
        let phi = cyclotomic(d);
        let modulus: Vec<BigRational> = phi
            .coeffs()
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect();
        CycloField { deg: modulus.len() - 1, modulus }
    }

    fn from_cyclo(&self, e: &CycloElt) -> FieldElt {
        let mut v: Vec<BigRational> = e
            .coeffs
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect();
        v.resize(self.deg.max(1), BigRational::zero());
        FieldElt(v)
    }

    fn is_zero(&self, a: &FieldElt) -> bool {
        a.0.iter().all(|c| c.is_zero())
    }

    fn sub_mul(&self, a: &FieldElt, b: &FieldElt, f: &FieldElt) -> FieldElt {
        // a - f*b
        let prod = self.mul(f, b);
        FieldElt(
            a.0.iter()
                .zip(&prod.0)
                .map(|(x, y)| x - y)
                .collect(),
        )
    }

    fn mul(&self, a: &FieldElt, b: &FieldElt) -> FieldElt {
        if self.deg == 0 {
            return FieldElt(vec![&a.0[0] * &b.0[0]]);
        }
        let mut raw = vec![BigRational::zero(); 2 * self.deg];
        for (i, x) in a.0.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.0.iter().enumerate() {
                raw[i + j] += x * y;
            }
        }
        // reduce modulo the monic modulus
        for i in (self.deg..raw.len()).rev() {
            if raw[i].is_zero() {
                continue;
            }
            let lead = raw[i].clone();
            for k in 0..self.deg {
                let t = &lead * &self.modulus[k];
                raw[i - self.deg + k] -= t;
            }
            raw[i] = BigRational::zero();
        }
        raw.truncate(self.deg);
        FieldElt(raw)
    }

    /// Multiplicative inverse via the extended Euclidean algorithm in Q[x];
    /// valid because Phi_d is irreducible over Q.
    fn inverse(&self, a: &FieldElt) -> FieldElt {
        assert!(!self.is_zero(a), "inverse of zero");
        if self.deg == 0 {
            return FieldElt(vec![a.0[0].recip()]);
        }
        let mut r0 = self.modulus.clone();
        let mut r1 = a.0.clone();
        trim(&mut r1);
        let mut s0 = vec![BigRational::zero()];
        let mut s1 = vec![BigRational::one()];
        while !r1.is_empty() {
            let (q, r) = poly_div_rem(&r0, &r1);
            let s = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        // r0 is a nonzero constant gcd
        assert_eq!(r0.len(), 1, "cyclotomic modulus must be coprime to nonzero elements");
        let c = r0[0].recip();
        let mut inv: Vec<BigRational> = s0.iter().map(|x| x * &c).collect();
        inv.resize(self.deg, BigRational::zero());
        FieldElt(inv)
    }
}

fn trim(v: &mut Vec<BigRational>) {
    while v.last().map_or(false, |c| c.is_zero()) {
        v.pop();
    }
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(&mut out);
    out
}

fn poly_div_rem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    assert!(!b.is_empty());
    let mut rem = a.to_vec();
    trim(&mut rem);
    let db = b.len() - 1;
    let lead = b.last().unwrap();
    if rem.len() <= db {
        return (vec![], rem);
    }
    let mut quot = vec![BigRational::zero(); rem.len() - db];
    while rem.len() > db {
        let c = rem.last().unwrap() / lead;
        let shift = rem.len() - 1 - db;
        quot[shift] = c.clone();
        for i in 0..=db {
            let t = &c * &b[i];
            rem[shift + i] -= t;
        }
        rem.pop();
        trim(&mut rem);
        if rem.is_empty() {
            break;
        }
    }
    trim(&mut quot);
    (quot, rem)
}

/// Exact rank of a matrix with entries in Z[zeta_d], computed by Gaussian
/// elimination over the field Q(zeta_d).
pub fn cyclo_rank(entries: &[Vec<CycloElt>], d: u64) -> usize {
    let rows = entries.len();
    if rows == 0 {
        return 0;
    }
    let cols = entries[0].len();
    let field = CycloField::new(d);
    let mut m: Vec<Vec<FieldElt>> = entries
        .iter()
        .map(|row| row.iter().map(|e| field.from_cyclo(e)).collect())
        .collect();
    let mut rank = 0;
    let mut row = 0;
    for col in 0..cols {
        let Some(p) = (row..rows).find(|&i| !field.is_zero(&m[i][col])) else {
            continue;
        };
        m.swap(row, p);
        let inv = field.inverse(&m[row][col]);
        for i in row + 1..rows {
            if field.is_zero(&m[i][col]) {
                continue;
            }
            let f = field.mul(&m[i][col], &inv);
            for j in col..cols {
                m[i][j] = field.sub_mul(&m[i][j], &m[row][j], &f);
            }
        }
        rank += 1;
        row += 1;
        if row == rows {
            break;
        }
    }
    rank
}
