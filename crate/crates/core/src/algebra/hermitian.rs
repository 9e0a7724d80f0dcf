//! Certified signature computation for Hermitian matrices with exact
//! cyclotomic entries.
//!
//! The strategy: nullity is decided exactly (rank over the cyclotomic field),
//! floating point only ever decides the signs of pivots that clear a
//! tolerance. A pivot below tolerance is declared zero only when the exact
//! nullity accounts for it; otherwise the working precision escalates.

use crate::algebra::cyclo::{cyclo_rank, CycloElt};
use crate::algebra::fixed::{root_of_unity, Cx, FloatCtx, Fp};
use crate::error::{Error, Result};

/// Precision policy for the embedded diagonalization.
///
/// Start at `start_bits` of mantissa with pivot zero-tolerance
/// `2^-(start_bits - tolerance_margin)` relative to the matrix norm
/// (100 bits and 2^-80 by default); on each escalation the precision doubles
/// and the tolerance deepens with it, up to `max_escalations` doublings.
#[derive(Debug, Clone, Copy)]
pub struct PrecisionPolicy {
    pub start_bits: u64,
    pub tolerance_margin: u64,
    pub max_escalations: u32,
}

impl Default for PrecisionPolicy {
    fn default() -> Self {
        PrecisionPolicy { start_bits: 100, tolerance_margin: 20, max_escalations: 4 }
    }
}

impl PrecisionPolicy {
    pub fn with_start_bits(bits: u64) -> Self {
        PrecisionPolicy { start_bits: bits.max(64), ..Default::default() }
    }
}

/// A square matrix over Z[zeta_d], embedded at `zeta_d -> exp(2*pi*i*r/d)`,
/// required to be Hermitian under that embedding.
#[derive(Debug, Clone)]
pub struct HermitianCycloMatrix {
    dim: usize,
    conductor: u64,
    root_index: i64,
    entries: Vec<CycloElt>, // row-major
}

impl HermitianCycloMatrix {
    pub fn new(
        dim: usize,
        conductor: u64,
        root_index: i64,
        entries: Vec<CycloElt>,
    ) -> Result<Self> {
        assert_eq!(entries.len(), dim * dim);
        let m = HermitianCycloMatrix { dim, conductor, root_index, entries };
        for i in 0..dim {
            for j in i..dim {
                if m.entry(j, i) != &m.entry(i, j).conjugate() {
                    return Err(Error::NotHermitian);
                }
            }
        }
        Ok(m)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, i: usize, j: usize) -> &CycloElt {
        &self.entries[i * self.dim + j]
    }

    fn rows(&self) -> Vec<Vec<CycloElt>> {
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self.entry(i, j).clone()).collect())
            .collect()
    }

    fn is_exactly_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }
}

/// Signature and nullity of a Hermitian cyclotomic matrix.
///
/// Realifies to a doubled real symmetric matrix (signature and nullity both
/// double there) and diagonalizes by congruence in escalating-precision
/// arithmetic, with the zero/nonzero split certified exactly.
pub fn hermitian_signature(
    h: &HermitianCycloMatrix,
    policy: &PrecisionPolicy,
) -> Result<(i64, usize)> {
    let n = h.dim;
    if n == 0 {
        return Ok((0, 0));
    }
    if h.is_exactly_zero() {
        return Ok((0, n));
    }

    let mut exact_nullity: Option<usize> = None;
    let mut prec = policy.start_bits;
    for _ in 0..=policy.max_escalations {
        let ctx = FloatCtx::new(prec + 32);
        let real = realify(h, &ctx);
        let scale_log2 = real
            .iter()
            .flatten()
            .filter_map(|v| v.log2_magnitude())
            .max()
            .expect("nonzero matrix");
        let tol_log2 = scale_log2 - (prec as i64 - policy.tolerance_margin as i64);

        let pivots = congruence_diagonalize(real, &ctx);
        let mut pos = 0i64;
        let mut neg = 0i64;
        let mut small = 0usize;
        for p in &pivots {
            match p.log2_magnitude() {
                Some(l) if l >= tol_log2 => {
                    if p.sign() > 0 {
                        pos += 1;
                    } else {
                        neg += 1;
                    }
                }
                _ => small += 1,
            }
        }

        if small == 0 {
            debug_assert_eq!((pos + neg) as usize, 2 * n);
            debug_assert_eq!((pos - neg) % 2, 0);
            return Ok(((pos - neg) / 2, 0));
        }

        let k = *exact_nullity
            .get_or_insert_with(|| n - cyclo_rank(&h.rows(), h.conductor));
        if small == 2 * k {
            debug_assert_eq!((pos - neg) % 2, 0);
            return Ok(((pos - neg) / 2, k));
        }
        prec *= 2;
    }
    Err(Error::PrecisionExhausted)
}

/// [[S, -T], [T, S]] for H = S + iT.
fn realify(h: &HermitianCycloMatrix, ctx: &FloatCtx) -> Vec<Vec<Fp>> {
    let n = h.dim;
    let phi = h
        .entries
        .iter()
        .map(|e| e.coeffs().len())
        .max()
        .unwrap_or(1);
    // powers of the embedded root
    let base = root_of_unity(ctx, h.conductor, h.root_index);
    let mut powers: Vec<Cx> = Vec::with_capacity(phi);
    powers.push(Cx::one(ctx));
    for j in 1..phi {
        let prev = powers[j - 1].clone();
        powers.push(prev.mul(ctx, &base));
    }

    let embed = |e: &CycloElt| -> Cx {
        let mut re = Fp::zero();
        let mut im = Fp::zero();
        for (j, c) in e.coeffs().iter().enumerate() {
            if num_traits::Zero::is_zero(c) {
                continue;
            }
            let cf = Fp::from_bigint(ctx, c);
            re = re.add(ctx, &cf.mul(ctx, &powers[j].re));
            im = im.add(ctx, &cf.mul(ctx, &powers[j].im));
        }
        Cx::new(re, im)
    };

    let mut real = vec![vec![Fp::zero(); 2 * n]; 2 * n];
    for i in 0..n {
        for j in 0..n {
            let z = embed(h.entry(i, j));
            real[i][j] = z.re.clone();
            real[n + i][n + j] = z.re;
            real[i][n + j] = z.im.neg();
            real[n + i][j] = z.im;
        }
    }
    real
}

/// Symmetric congruence diagonalization with magnitude pivoting; returns the
/// diagonal pivots. When the remaining diagonal is negligible against the
/// off-diagonal part, a congruence row/column addition first builds a usable
/// diagonal entry.
fn congruence_diagonalize(mut m: Vec<Vec<Fp>>, ctx: &FloatCtx) -> Vec<Fp> {
    let n = m.len();
    let mut pivots = Vec::with_capacity(n);
    for k in 0..n {
        // best diagonal and best off-diagonal entries of the trailing block
        let mut bd = k;
        for i in k + 1..n {
            if m[i][i].abs_cmp(&m[bd][bd]) == std::cmp::Ordering::Greater {
                bd = i;
            }
        }
        let mut bo: Option<(usize, usize)> = None;
        for i in k..n {
            for j in i + 1..n {
                if bo.map_or(true, |(p, q)| {
                    m[i][j].abs_cmp(&m[p][q]) == std::cmp::Ordering::Greater
                }) {
                    bo = Some((i, j));
                }
            }
        }

        let diag_ok = match bo {
            None => true,
            Some((p, q)) => {
                // treat the diagonal as usable unless it is 16x smaller
                let mut shifted = m[bd][bd].abs();
                shifted = shifted.mul(ctx, &Fp::from_i64(ctx, 16));
                shifted.abs_cmp(&m[p][q]) != std::cmp::Ordering::Less
            }
        };

        if m[bd][bd].is_zero() && bo.is_none() {
            // trailing block is exactly zero
            for _ in k..n {
                pivots.push(Fp::zero());
            }
            break;
        }

        let piv = if diag_ok {
            bd
        } else {
            let (p, q) = bo.unwrap();
            // pick the sign making |m_pp + m_qq + 2 s m_pq| largest
            let plus = m[p][p].add(ctx, &m[q][q]).add(
                ctx,
                &m[p][q].mul(ctx, &Fp::from_i64(ctx, 2)),
            );
            let minus = m[p][p].add(ctx, &m[q][q]).sub(
                ctx,
                &m[p][q].mul(ctx, &Fp::from_i64(ctx, 2)),
            );
            let s: i64 = if plus.abs_cmp(&minus) == std::cmp::Ordering::Less { -1 } else { 1 };
            let sf = Fp::from_i64(ctx, s);
            for j in k..n {
                let t = m[q][j].mul(ctx, &sf);
                m[p][j] = m[p][j].add(ctx, &t);
            }
            for row in m.iter_mut().take(n).skip(k) {
                let t = row[q].mul(ctx, &sf);
                row[p] = row[p].add(ctx, &t);
            }
            p
        };

        m.swap(k, piv);
        for row in m.iter_mut().take(n).skip(k) {
            row.swap(k, piv);
        }

        let d = m[k][k].clone();
        if d.is_zero() {
            // possible when the trailing block vanished except off-diagonal
            // dust below precision; record and continue
            pivots.push(d);
            continue;
        }
        let factors: Vec<Fp> = (k + 1..n).map(|i| m[i][k].div(ctx, &d)).collect();
        for i in k + 1..n {
            let fi = factors[i - k - 1].clone();
            for j in k + 1..=i {
                let t = fi.mul(ctx, &m[k][j]);
                m[i][j] = m[i][j].sub(ctx, &t);
            }
        }
        for i in k + 1..n {
            for j in i + 1..n {
                m[i][j] = m[j][i].clone();
            }
        }
        pivots.push(d);
    }
    pivots
}
