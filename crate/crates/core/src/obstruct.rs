//! L-space obstruction verdicts with machine-checkable certificates.
//!
//! Two one-directional routes: the Jones route (determinant 1 and
//! `J'(-1) != 0` rules out L-spaces among all even-degree covers), and the
//! Lefschetz route (a nonzero Lefschetz number on reduced monopole homology
//! rules out the specific cover at hand). Certificate computation is kept
//! separate from rule application so the rules are testable on hypothetical
//! certificates.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::{PrecisionPolicy, Rational};
use crate::error::Result;
use crate::gauge::{is_prime_power, monopole_lefschetz, GaugeInputs};
use crate::jones::jones;
use crate::notation::KnotPresentation;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerdictKind {
    /// No even-degree cyclic branched cover of the knot is an L-space.
    NotLSpaceAllEvenCovers,
    /// The specific cover in the inputs is not an L-space.
    NotLSpaceThisCover,
    /// The obstruction does not apply; nothing is claimed.
    Inconclusive,
}

/// Certificate for the Jones route.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JonesCertificate {
    pub det: BigInt,
    pub jprime: BigInt,
}

/// Certificate for the Lefschetz route.
#[derive(Debug, Clone, PartialEq)]
pub struct LefschetzCertificate {
    pub n: u64,
    pub lefschetz: Rational,
    pub froyshov: Rational,
    pub froyshov_provenance: String,
    pub qhs: bool,
    /// For prime-power n the verdict is stable under smooth concordance.
    pub concordance_invariant: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Verdict {
    Jones { kind: VerdictKind, certificate: JonesCertificate },
    Lefschetz { kind: VerdictKind, certificate: LefschetzCertificate },
}

impl Verdict {
    pub fn kind(&self) -> VerdictKind {
        match self {
            Verdict::Jones { kind, .. } | Verdict::Lefschetz { kind, .. } => *kind,
        }
    }
}

/// `(det, J'(-1))` of a knot, the hypotheses of the Jones obstruction.
pub fn jones_certificate(presentation: &KnotPresentation) -> Result<JonesCertificate> {
    let report = jones(presentation)?;
    Ok(JonesCertificate { det: report.det, jprime: report.jprime_at_minus_one })
}

/// Pure rule application: the obstruction fires exactly when `det = 1` and
/// `J'(-1) != 0`; the rule is one-directional, everything else is
/// inconclusive.
pub fn jones_verdict(certificate: JonesCertificate) -> Verdict {
    let kind = if certificate.det.is_one() && !certificate.jprime.is_zero() {
        VerdictKind::NotLSpaceAllEvenCovers
    } else {
        VerdictKind::Inconclusive
    };
    Verdict::Jones { kind, certificate }
}

/// Lefschetz-route verdict for one cover: fires exactly when the monopole
/// Lefschetz number is nonzero (which forces nontrivial reduced monopole
/// homology). Requires the cover to be a rational homology sphere and the
/// Froyshov input to be supplied.
pub fn lefschetz_verdict(inputs: &GaugeInputs, policy: &PrecisionPolicy) -> Result<Verdict> {
    let lefschetz = monopole_lefschetz(inputs, policy)?;
    let h = inputs.froyshov.as_ref().expect("checked by monopole_lefschetz");
    let kind = if lefschetz.is_zero() {
        VerdictKind::Inconclusive
    } else {
        VerdictKind::NotLSpaceThisCover
    };
    Ok(Verdict::Lefschetz {
        kind,
        certificate: LefschetzCertificate {
            n: inputs.n,
            lefschetz,
            froyshov: h.value.clone(),
            froyshov_provenance: h.provenance.clone(),
            qhs: true, // enforced by the signature-sum precondition
            concordance_invariant: is_prime_power(inputs.n) && inputs.casson_base.is_zero(),
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::notation::{parse_braid, torus_braid, BraidWord};

    fn policy() -> PrecisionPolicy {
        PrecisionPolicy::default()
    }

    fn int(x: i64) -> Rational {
        Rational::from_integer(BigInt::from(x))
    }

    #[test]
    fn jones_certificates() {
        let t35 = jones_certificate(&torus_braid(3, 5).unwrap().into()).unwrap();
        assert_eq!((t35.det, t35.jprime), (BigInt::from(1), BigInt::from(0)));
        let trefoil = jones_certificate(&parse_braid("1 1 1").unwrap().into()).unwrap();
        assert_eq!((trefoil.det, trefoil.jprime), (BigInt::from(3), BigInt::from(8)));
        let unknot = jones_certificate(&BraidWord::unknot().into()).unwrap();
        assert_eq!((unknot.det, unknot.jprime), (BigInt::from(1), BigInt::from(0)));
    }

    #[test]
    fn jones_rule_table_is_exhaustive() {
        for det in [1i64, 3, 5] {
            for jprime in [-8i64, 0, 8] {
                let verdict = jones_verdict(JonesCertificate {
                    det: BigInt::from(det),
                    jprime: BigInt::from(jprime),
                });
                let expected = if det == 1 && jprime != 0 {
                    VerdictKind::NotLSpaceAllEvenCovers
                } else {
                    VerdictKind::Inconclusive
                };
                assert_eq!(verdict.kind(), expected, "det={det} jprime={jprime}");
            }
        }
    }

    #[test]
    fn lefschetz_verdicts() {
        let p = policy();
        let t37 = GaugeInputs::new(torus_braid(3, 7).unwrap(), 2).with_froyshov(int(0), "lit");
        let v = lefschetz_verdict(&t37, &p).unwrap();
        assert_eq!(v.kind(), VerdictKind::NotLSpaceThisCover);
        if let Verdict::Lefschetz { certificate, .. } = &v {
            assert_eq!(certificate.lefschetz, int(-1));
            assert!(certificate.concordance_invariant);
            assert!(certificate.qhs);
        } else {
            panic!("wrong certificate shape");
        }

        let t35 = GaugeInputs::new(torus_braid(3, 5).unwrap(), 2).with_froyshov(int(-1), "lit");
        assert_eq!(
            lefschetz_verdict(&t35, &p).unwrap().kind(),
            VerdictKind::Inconclusive
        );

        let unknot = GaugeInputs::new(BraidWord::unknot(), 2).with_froyshov(int(0), "lit");
        assert_eq!(
            lefschetz_verdict(&unknot, &p).unwrap().kind(),
            VerdictKind::Inconclusive
        );
    }

    #[test]
    fn lefschetz_requires_h_and_qhs() {
        let p = policy();
        let no_h = GaugeInputs::new(torus_braid(3, 7).unwrap(), 2);
        assert_eq!(lefschetz_verdict(&no_h, &p), Err(Error::MissingFroyshov));
        let not_qhs = GaugeInputs::new(parse_braid("1 1 1").unwrap(), 6).with_froyshov(int(0), "x");
        assert_eq!(
            lefschetz_verdict(&not_qhs, &p),
            Err(Error::NotRationalHomologySphere(6))
        );
    }

    #[test]
    fn poincare_sphere_cover_never_flagged() {
        // Sigma(2,3,5) is an L-space; neither route may claim otherwise.
        let p = policy();
        let knot: KnotPresentation = torus_braid(3, 5).unwrap().into();
        assert_eq!(
            jones_verdict(jones_certificate(&knot).unwrap()).kind(),
            VerdictKind::Inconclusive
        );
        let gauge = GaugeInputs::new(torus_braid(3, 5).unwrap(), 2)
            .with_froyshov(int(-1), "h(Sigma(2,3,5)) = -1");
        assert_eq!(
            lefschetz_verdict(&gauge, &p).unwrap().kind(),
            VerdictKind::Inconclusive
        );
    }
}
