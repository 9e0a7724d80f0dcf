//! Minimal arbitrary-precision binary floating point on top of BigInt.
//!
//! Values are `m * 2^e` with the mantissa rounded to the context precision
//! after every operation. Deterministic by construction; used only inside
//! the signature engine, never across module boundaries.

use num_bigint::{BigInt, Sign};
use num_traits::{Signed, Zero};

#[derive(Debug, Clone, Copy)]
pub struct FloatCtx {
    pub prec: u64,
}

impl FloatCtx {
    pub fn new(prec: u64) -> Self {
        FloatCtx { prec }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fp {
    mantissa: BigInt,
    exp: i64,
}

impl Fp {
    pub fn zero() -> Self {
        Fp { mantissa: BigInt::zero(), exp: 0 }
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa.is_zero()
    }

    pub fn from_bigint(ctx: &FloatCtx, v: &BigInt) -> Self {
        Self::norm(ctx, v.clone(), 0)
    }

    pub fn from_i64(ctx: &FloatCtx, v: i64) -> Self {
        Self::from_bigint(ctx, &BigInt::from(v))
    }

    /// Rounds `num / den * 2^0` to the context precision.
    pub fn from_ratio(ctx: &FloatCtx, num: &BigInt, den: &BigInt) -> Self {
        assert!(!den.is_zero());
        if num.is_zero() {
            return Self::zero();
        }
        // shift enough that the quotient carries prec significant bits even
        // when the denominator is much wider than the numerator
        let extra = ctx.prec as i64 + 2 + (den.bits() as i64 - num.bits() as i64).max(0);
        let scaled = (num << extra as usize) / den;
        Self::norm(ctx, scaled, -extra)
    }

    fn norm(ctx: &FloatCtx, mut m: BigInt, mut e: i64) -> Self {
        if m.is_zero() {
            return Self::zero();
        }
        let bits = m.bits();
        if bits > ctx.prec {
            let drop = (bits - ctx.prec) as i64;
            // round the magnitude half away from zero; BigInt shifts floor,
            // so work on the absolute value
            let negative = m.sign() == Sign::Minus;
            let half = BigInt::from(1) << (drop - 1) as usize;
            let mut mag = m.abs() + half;
            mag >>= drop as usize;
            m = if negative { -mag } else { mag };
            e += drop;
        }
        if m.is_zero() {
            return Self::zero();
        }
        Fp { mantissa: m, exp: e }
    }

    pub fn add(&self, ctx: &FloatCtx, rhs: &Fp) -> Fp {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        // mantissas are not width-normalized, so negligibility must be
        // decided on magnitudes, not raw exponents
        let top_a = self.exp + self.mantissa.bits() as i64;
        let top_b = rhs.exp + rhs.mantissa.bits() as i64;
        let margin = ctx.prec as i64 + 4;
        if top_a > top_b + margin {
            return self.clone();
        }
        if top_b > top_a + margin {
            return rhs.clone();
        }
        // comparable magnitudes keep the alignment shift bounded
        let (lo, hi) = if self.exp <= rhs.exp { (self, rhs) } else { (rhs, self) };
        let shift = hi.exp - lo.exp;
        let m = (&hi.mantissa << shift as usize) + &lo.mantissa;
        Self::norm(ctx, m, lo.exp)
    }

    pub fn sub(&self, ctx: &FloatCtx, rhs: &Fp) -> Fp {
        self.add(ctx, &rhs.neg())
    }

    pub fn neg(&self) -> Fp {
        Fp { mantissa: -self.mantissa.clone(), exp: self.exp }
    }

    pub fn abs(&self) -> Fp {
        Fp { mantissa: self.mantissa.abs(), exp: self.exp }
    }

    pub fn mul(&self, ctx: &FloatCtx, rhs: &Fp) -> Fp {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        Self::norm(ctx, &self.mantissa * &rhs.mantissa, self.exp + rhs.exp)
    }

    pub fn div(&self, ctx: &FloatCtx, rhs: &Fp) -> Fp {
        assert!(!rhs.is_zero(), "division by zero");
        if self.is_zero() {
            return Self::zero();
        }
        // see from_ratio: the quotient needs prec significant bits no matter
        // how the operand mantissa widths compare
        let extra = ctx.prec as i64
            + 2
            + (rhs.mantissa.bits() as i64 - self.mantissa.bits() as i64).max(0);
        let m = (&self.mantissa << extra as usize) / &rhs.mantissa;
        Self::norm(ctx, m, self.exp - rhs.exp - extra)
    }

    pub fn sign(&self) -> i32 {
        match self.mantissa.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    /// Compare |self| with |rhs|.
    pub fn abs_cmp(&self, rhs: &Fp) -> std::cmp::Ordering {
        use std::cmp::Ordering;
        if self.is_zero() {
            return if rhs.is_zero() { Ordering::Equal } else { Ordering::Less };
        }
        if rhs.is_zero() {
            return Ordering::Greater;
        }
        let la = self.exp + self.mantissa.bits() as i64;
        let lb = rhs.exp + rhs.mantissa.bits() as i64;
        if la != lb {
            return la.cmp(&lb);
        }
        // same magnitude class; compare exactly
        let shift = (self.exp - rhs.exp).unsigned_abs() as usize;
        if self.exp >= rhs.exp {
            (self.mantissa.abs() << shift).cmp(&rhs.mantissa.abs())
        } else {
            self.mantissa.abs().cmp(&(rhs.mantissa.abs() << shift))
        }
    }

    /// log2 of the magnitude, approximately (for tolerance comparisons).
    pub fn log2_magnitude(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.exp + self.mantissa.bits() as i64)
        }
    }

    /// Lossy conversion for diagnostics only.
    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        let bits = self.mantissa.bits() as i64;
        if bits <= 52 {
            return self.mantissa.to_f64().unwrap() * 2f64.powi(self.exp as i32);
        }
        let m = (&self.mantissa >> (bits - 52) as usize).to_f64().unwrap();
        m * 2f64.powi((self.exp + bits - 52) as i32)
    }
}

/// Complex value in the same representation.
#[derive(Debug, Clone)]
pub struct Cx {
    pub re: Fp,
    pub im: Fp,
}

impl Cx {
    pub fn new(re: Fp, im: Fp) -> Self {
        Cx { re, im }
    }

    pub fn one(ctx: &FloatCtx) -> Self {
        Cx { re: Fp::from_i64(ctx, 1), im: Fp::zero() }
    }

    pub fn mul(&self, ctx: &FloatCtx, rhs: &Cx) -> Cx {
        Cx {
            re: self.re.mul(ctx, &rhs.re).sub(ctx, &self.im.mul(ctx, &rhs.im)),
            im: self.re.mul(ctx, &rhs.im).add(ctx, &self.im.mul(ctx, &rhs.re)),
        }
    }

    pub fn sub(&self, ctx: &FloatCtx, rhs: &Cx) -> Cx {
        Cx { re: self.re.sub(ctx, &rhs.re), im: self.im.sub(ctx, &rhs.im) }
    }

    pub fn div(&self, ctx: &FloatCtx, rhs: &Cx) -> Cx {
        let d = rhs.re.mul(ctx, &rhs.re).add(ctx, &rhs.im.mul(ctx, &rhs.im));
        let re = self.re.mul(ctx, &rhs.re).add(ctx, &self.im.mul(ctx, &rhs.im));
        let im = self.im.mul(ctx, &rhs.re).sub(ctx, &self.re.mul(ctx, &rhs.im));
        Cx { re: re.div(ctx, &d), im: im.div(ctx, &d) }
    }

    pub fn pow(&self, ctx: &FloatCtx, mut k: u64) -> Cx {
        let mut base = self.clone();
        let mut acc = Cx::one(ctx);
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(ctx, &base);
            }
            base = base.mul(ctx, &base);
            k >>= 1;
        }
        acc
    }
}

/// `exp(2*pi*i*k/d)` to the context precision, via Newton iteration on
/// `z^d - 1` from a double-precision seed. Roots of `z^d - 1` are simple and
/// well separated, so the iteration converges quadratically.
pub fn root_of_unity(ctx: &FloatCtx, d: u64, k: i64) -> Cx {
    let k = k.rem_euclid(d as i64) as u64;
    if d == 1 || k == 0 {
        return Cx::one(ctx);
    }
    if d == 2 {
        return Cx::new(Fp::from_i64(ctx, -1), Fp::zero());
    }
    if d == 4 {
        let one = Fp::from_i64(ctx, 1);
        return match k {
            1 => Cx::new(Fp::zero(), one),
            2 => Cx::new(one.neg(), Fp::zero()),
            _ => Cx::new(Fp::zero(), one.neg()),
        };
    }
    let theta = 2.0 * std::f64::consts::PI * (k as f64) / (d as f64);
    let seed_prec = FloatCtx::new(64);
    let mut z = Cx::new(f64_to_fp(&seed_prec, theta.cos()), f64_to_fp(&seed_prec, theta.sin()));
    // P-bit target: each step roughly doubles correct bits from ~50
    let mut bits = 50u64;
    let work = FloatCtx::new(ctx.prec + 32);
    while bits < ctx.prec + 16 {
        // z <- z - (z^d - 1) / (d z^(d-1))
        let zd1 = z.pow(&work, d - 1);
        let zd = zd1.mul(&work, &z);
        let num = Cx::new(zd.re.sub(&work, &Fp::from_i64(&work, 1)), zd.im.clone());
        let den = Cx::new(
            zd1.re.mul(&work, &Fp::from_i64(&work, d as i64)),
            zd1.im.mul(&work, &Fp::from_i64(&work, d as i64)),
        );
        z = z.sub(&work, &num.div(&work, &den));
        bits *= 2;
    }
    Cx::new(
        Fp::norm(ctx, z.re.mantissa, z.re.exp),
        Fp::norm(ctx, z.im.mantissa, z.im.exp),
    )
}

fn f64_to_fp(ctx: &FloatCtx, v: f64) -> Fp {
    if v == 0.0 {
        return Fp::zero();
    }
    let scaled = (v * 2f64.powi(60)).round() as i128;
    Fp::norm(ctx, BigInt::from(scaled), -60)
}
