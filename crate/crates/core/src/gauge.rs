//! The gauge-theoretic quantities assembled from signature sums, branched
//! cover homology and the Jones polynomial.
//!
//! For the mapping torus of the covering translation of the n-fold cyclic
//! branched cover of a knot `K` in an integral homology sphere `Y`:
//!
//! ```text
//! lambda_FO  =  n lambda(Y) + (1/8) sum_(m=1)^(n-1) sign_(m/n)(K)
//! lambda_SW  =  -lambda_FO
//! Lef(tau*)  =  lambda_FO - h(Sigma, s)
//! ```
//!
//! The Froyshov invariant `h` is never computed here: it is consumed as an
//! input with a mandatory provenance string, recorded in every certificate.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::algebra::{PrecisionPolicy, Rational};
use crate::covers::{branched_homology, BranchedCoverReport};
use crate::error::{Error, Result};
use crate::jones::{jones, JonesReport};
use crate::notation::KnotPresentation;
use crate::seifert::{
    milnor_fiber_signature_oracle, seifert_matrix, signature_profile, tl_signature,
    SignatureMode, SignatureProfile,
};

/// A Froyshov invariant value supplied by the caller, with provenance.
///
/// The branched cover carries a unique spin^c structure fixed by the
/// covering translation (in fact a spin structure); `value` is the
/// Froyshov invariant of that structure. It is consumed, never computed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FroyshovInput {
    pub value: Rational,
    pub provenance: String,
}

/// Inputs for the mapping-torus invariants.
#[derive(Debug, Clone)]
pub struct GaugeInputs {
    pub presentation: KnotPresentation,
    /// Cover degree, at least 2.
    pub n: u64,
    /// Casson invariant of the base homology sphere Y; 0 for S^3.
    pub casson_base: Rational,
    pub froyshov: Option<FroyshovInput>,
}

impl GaugeInputs {
    pub fn new(presentation: impl Into<KnotPresentation>, n: u64) -> Self {
        assert!(n >= 2, "cover degree must be at least 2");
        GaugeInputs {
            presentation: presentation.into(),
            n,
            casson_base: Rational::zero(),
            froyshov: None,
        }
    }

    pub fn with_casson_base(mut self, lambda: Rational) -> Self {
        self.casson_base = lambda;
        self
    }

    pub fn with_froyshov(mut self, value: Rational, provenance: impl Into<String>) -> Self {
        self.froyshov = Some(FroyshovInput { value, provenance: provenance.into() });
        self
    }
}

/// Everything computed for one (knot, n) pair, with the ingredient
/// certificates.
#[derive(Debug, Clone)]
pub struct InvariantReport {
    pub lambda_fo: Rational,
    pub lambda_sw: Rational,
    pub lefschetz: Option<Rational>,
    pub l_n: Option<Rational>,
    pub signature_profile: SignatureProfile,
    pub cover: BranchedCoverReport,
    pub jones: Option<JonesReport>,
    pub froyshov: Option<FroyshovInput>,
}

fn rational(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

fn profile_for(inputs: &GaugeInputs, policy: &PrecisionPolicy) -> Result<SignatureProfile> {
    let braid = inputs.presentation.braid()?;
    let v = seifert_matrix(braid)?;
    signature_profile(&v, inputs.n, policy)
}

/// The h-free part `n lambda(Y) + (1/8) sum sign_(m/n)(K)` from a computed
/// signature profile.
pub fn lambda_fo_from_profile(profile: &SignatureProfile, n: u64, casson_base: &Rational) -> Rational {
    Rational::from_integer(BigInt::from(n)) * casson_base
        + Rational::from_integer(BigInt::from(profile.sum)) / Rational::from_integer(BigInt::from(8))
}

/// Furuta-Ohta invariant of the mapping torus.
pub fn lambda_fo_mapping_torus(inputs: &GaugeInputs, policy: &PrecisionPolicy) -> Result<Rational> {
    let profile = profile_for(inputs, policy)?;
    Ok(lambda_fo_from_profile(&profile, inputs.n, &inputs.casson_base))
}

/// Seiberg-Witten invariant of the mapping torus: `-lambda_FO`.
pub fn lambda_sw_mapping_torus(inputs: &GaugeInputs, policy: &PrecisionPolicy) -> Result<Rational> {
    Ok(-lambda_fo_mapping_torus(inputs, policy)?)
}

/// Monopole Lefschetz number of the covering translation:
/// `lambda_FO - h(Sigma, s)` with `h` supplied by the caller.
pub fn monopole_lefschetz(inputs: &GaugeInputs, policy: &PrecisionPolicy) -> Result<Rational> {
    let h = inputs.froyshov.as_ref().ok_or(Error::MissingFroyshov)?;
    Ok(lambda_fo_mapping_torus(inputs, policy)? - &h.value)
}

/// The concordance invariant `L_n(K)` for prime-power n and knots in the
/// 3-sphere: the monopole Lefschetz number of the covering translation.
pub fn l_n_invariant(inputs: &GaugeInputs, policy: &PrecisionPolicy) -> Result<Rational> {
    if !is_prime_power(inputs.n) {
        return Err(Error::NotPrimePower(inputs.n));
    }
    if !inputs.casson_base.is_zero() {
        return Err(Error::BaseNotS3);
    }
    monopole_lefschetz(inputs, policy)
}

pub fn is_prime_power(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut n = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            return n == 1;
        }
        p += 1;
    }
    true // n itself prime
}

/// Casson invariant of the double branched cover by Mullins's theorem:
/// `lambda(Sigma_2(K)) = -J'(-1)/12 + sign_(1/2)(K)/8`, for knots with
/// determinant 1 (so the double cover is an integral homology sphere).
pub fn casson_double_cover_mullins(
    presentation: &KnotPresentation,
    policy: &PrecisionPolicy,
) -> Result<Rational> {
    let braid = presentation.braid()?;
    let v = seifert_matrix(braid)?;
    let det = v.determinant();
    if !det.is_one() {
        return Err(Error::DetNotOne(det.to_string()));
    }
    let report = jones(presentation)?;
    let (sig_half, _) = tl_signature(&v, 1, 2, SignatureMode::Strict, policy)?;
    Ok(Rational::new(-report.jprime_at_minus_one, BigInt::from(12)) + rational(sig_half, 8))
}

/// Casson invariant of the Brieskorn sphere `Sigma(n, q, r)`:
/// `(1/8) sum_(m=1)^(n-1) sign_(m/n)(T(q, r))`, computed by the Brieskorn
/// lattice-point count. Symmetric in its arguments; always an integer.
pub fn brieskorn_casson(n: u64, q: u64, r: u64) -> Result<Rational> {
    if n < 2 || q < 2 || r < 2 || n.gcd(&q) != 1 || n.gcd(&r) != 1 || q.gcd(&r) != 1 {
        return Err(Error::NotPairwiseCoprime(n, q, r));
    }
    let count = milnor_fiber_signature_oracle(q, r, n);
    let lambda = rational(count, 8);
    assert!(lambda.is_integer(), "Brieskorn Casson invariant must be an integer");
    Ok(lambda)
}

/// Euler characteristic of the reduced monopole homology of an integral
/// homology sphere: `chi(HM_red) = lambda - h`.
pub fn chi_hm_red(lambda: &Rational, h: &Rational) -> Rational {
    lambda - h
}

/// Full assembly for one (knot, n) input; the Jones certificate is attached
/// when the diagram is within the crossing cap.
pub fn invariant_report(inputs: &GaugeInputs, policy: &PrecisionPolicy) -> Result<InvariantReport> {
    let braid = inputs.presentation.braid()?;
    let v = seifert_matrix(braid)?;
    let profile = signature_profile(&v, inputs.n, policy)?;
    let cover = branched_homology(&v, inputs.n);
    let lambda_fo = lambda_fo_from_profile(&profile, inputs.n, &inputs.casson_base);
    let lambda_sw = -lambda_fo.clone();
    let lefschetz = inputs
        .froyshov
        .as_ref()
        .map(|h| lambda_fo.clone() - &h.value);
    let l_n = match &lefschetz {
        Some(lef) if is_prime_power(inputs.n) && inputs.casson_base.is_zero() => Some(lef.clone()),
        _ => None,
    };
    let jones = jones(&inputs.presentation).ok();
    Ok(InvariantReport {
        lambda_fo,
        lambda_sw,
        lefschetz,
        l_n,
        signature_profile: profile,
        cover,
        jones,
        froyshov: inputs.froyshov.clone(),
    })
}
