//! Batch computation over ingested knot tables: one JSON-lines record per
//! (row, invariant, cover degree), rows independent, output in input order.

use std::time::{SystemTime, UNIX_EPOCH};

use rayon::prelude::*;
use serde_json::{json, Map, Value};

use covertor_core::algebra::PrecisionPolicy;
use covertor_core::covers::{branched_homology, fox_order};
use covertor_core::gauge::{
    casson_double_cover_mullins, invariant_report, GaugeInputs,
};
use covertor_core::jones::jones;
use covertor_core::notation::KnotPresentation;
use covertor_core::obstruct::{jones_certificate, jones_verdict, lefschetz_verdict};
use covertor_core::seifert::{seifert_matrix, signature_profile};
use covertor_core::Error;

use crate::output;
use crate::table::TableRow;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InvariantId {
    Jones,
    Alexander,
    Det,
    TlSum,
    Homology,
    LambdaFo,
    LambdaSw,
    Lefschetz,
    LN,
    Mullins,
    LspaceJones,
    LspaceLefschetz,
}

impl InvariantId {
    pub fn parse(text: &str) -> Result<Self, String> {
        Ok(match text {
            "jones" => Self::Jones,
            "alexander" => Self::Alexander,
            "det" => Self::Det,
            "tl-sum" => Self::TlSum,
            "homology" => Self::Homology,
            "lambda-fo" => Self::LambdaFo,
            "lambda-sw" => Self::LambdaSw,
            "lefschetz" => Self::Lefschetz,
            "l-n" => Self::LN,
            "mullins" => Self::Mullins,
            "lspace-jones" => Self::LspaceJones,
            "lspace-lefschetz" => Self::LspaceLefschetz,
            other => return Err(format!("unknown invariant {other:?}")),
        })
    }

    pub fn record_name(self) -> &'static str {
        match self {
            Self::Jones => "jones",
            Self::Alexander => "alexander",
            Self::Det => "det",
            Self::TlSum => "tl_signature_sum",
            Self::Homology => "branched_homology",
            Self::LambdaFo => "lambda_fo",
            Self::LambdaSw => "lambda_sw",
            Self::Lefschetz => "monopole_lefschetz",
            Self::LN => "l_n",
            Self::Mullins => "mullins_casson",
            Self::LspaceJones => "lspace_jones",
            Self::LspaceLefschetz => "lspace_lefschetz",
        }
    }

    pub fn per_cover(self) -> bool {
        matches!(
            self,
            Self::TlSum
                | Self::Homology
                | Self::LambdaFo
                | Self::LambdaSw
                | Self::Lefschetz
                | Self::LN
                | Self::LspaceLefschetz
        )
    }
}

#[derive(Debug, Clone)]
pub struct BatchConfig {
    pub invariants: Vec<InvariantId>,
    pub covers: Vec<u64>,
    pub deterministic: bool,
    pub jobs: usize,
    pub policy: PrecisionPolicy,
}

/// Runs the batch; returns serialized JSON lines in input-row order.
pub fn run_batch(rows: &[TableRow], config: &BatchConfig) -> Result<Vec<String>, String> {
    let compute = || -> Vec<Vec<String>> {
        rows.par_iter()
            .map(|row| row_records(row, config))
            .collect()
    };
    let per_row = if config.jobs == 0 {
        compute()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(config.jobs)
            .build()
            .map_err(|e| format!("cannot build thread pool: {e}"))?;
        pool.install(compute)
    };
    Ok(per_row.into_iter().flatten().collect())
}

fn row_records(row: &TableRow, config: &BatchConfig) -> Vec<String> {
    let mut lines = Vec::new();
    for &inv in &config.invariants {
        if inv.per_cover() {
            for &n in &config.covers {
                lines.push(render(row, inv, Some(n), config));
            }
        } else {
            lines.push(render(row, inv, None, config));
        }
    }
    lines
}

fn render(row: &TableRow, inv: InvariantId, n: Option<u64>, config: &BatchConfig) -> String {
    let mut record = Map::new();
    record.insert("name".into(), json!(row.name));
    record.insert("n".into(), json!(n));
    record.insert("invariant".into(), json!(inv.record_name()));
    match compute(row, inv, n, &config.policy) {
        Ok((value, certificate)) => {
            output::rational_fields(&mut record, &value);
            record.insert("certificate".into(), certificate);
        }
        Err(e) => {
            record.insert(
                "error".into(),
                json!({ "code": e.code(), "message": e.to_string() }),
            );
        }
    }
    record.insert("tool_version".into(), json!(TOOL_VERSION));
    if !config.deterministic {
        let secs = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        record.insert("timestamp".into(), json!(secs));
    }
    Value::Object(record).to_string()
}

type ComputeResult = Result<(covertor_core::algebra::Rational, Value), Error>;

fn rational_int(v: impl Into<num_bigint::BigInt>) -> covertor_core::algebra::Rational {
    covertor_core::algebra::Rational::from_integer(v.into())
}

fn compute(row: &TableRow, inv: InvariantId, n: Option<u64>, policy: &PrecisionPolicy) -> ComputeResult {
    let presentation: KnotPresentation =
        KnotPresentation::from_braid(row.braid.clone()).named(&row.name);
    // the braid is canonical; a pd column, when present, overrides the
    // diagram used on the pure Jones route
    let jones_presentation: KnotPresentation = match &row.pd {
        Some(pd) => KnotPresentation::from_diagram(pd.clone()).named(&row.name),
        None => presentation.clone(),
    };
    let gauge_inputs = |n: u64| -> Result<GaugeInputs, Error> {
        let mut inputs = GaugeInputs::new(row.braid.clone(), n);
        if let Some(h) = row.h_by_n.get(&n) {
            inputs = inputs.with_froyshov(h.value.clone(), h.provenance.clone());
        }
        Ok(inputs)
    };
    match inv {
        InvariantId::Jones => {
            let rep = jones(&jones_presentation)?;
            Ok((rational_int(rep.det.clone()), output::jones_certificate(&rep)))
        }
        InvariantId::Alexander => {
            let v = seifert_matrix(&row.braid)?;
            let det = v.determinant();
            let cert = json!({
                "alexander": output::laurent(v.alexander()),
                "det": output::big_int(&det),
            });
            Ok((rational_int(det), cert))
        }
        InvariantId::Det => {
            let v = seifert_matrix(&row.braid)?;
            let det = v.determinant();
            let cert = json!({ "alexander_at_minus_one": output::big_int(&det) });
            Ok((rational_int(det), cert))
        }
        InvariantId::TlSum => {
            let n = n.expect("per-cover invariant");
            let v = seifert_matrix(&row.braid)?;
            let profile = signature_profile(&v, n, policy)?;
            Ok((rational_int(profile.sum), output::signature_profile(&profile)))
        }
        InvariantId::Homology => {
            let n = n.expect("per-cover invariant");
            let v = seifert_matrix(&row.braid)?;
            let report = branched_homology(&v, n);
            let fox = fox_order(&v, n)?;
            // the two order computations are independent; a mismatch is an
            // internal fault and must not produce a silent record
            if fox != report.order {
                return Err(Error::Validation(format!(
                    "internal: Fox order {fox} disagrees with Smith normal form order {}",
                    report.order
                )));
            }
            let mut cert = output::cover_report(&report);
            cert.as_object_mut()
                .unwrap()
                .insert("fox_order".into(), output::big_int(&fox));
            Ok((rational_int(report.order.clone()), cert))
        }
        InvariantId::LambdaFo | InvariantId::LambdaSw | InvariantId::Lefschetz | InvariantId::LN => {
            let n = n.expect("per-cover invariant");
            let inputs = gauge_inputs(n)?;
            let report = invariant_report(&inputs, policy)?;
            let mut cert = Map::new();
            cert.insert("n".into(), json!(n));
            cert.insert("signature_profile".into(), output::signature_profile(&report.signature_profile));
            cert.insert("cover".into(), output::cover_report(&report.cover));
            if let Some(h) = &report.froyshov {
                cert.insert("froyshov".into(), output::froyshov(h));
            }
            let value = match inv {
                InvariantId::LambdaFo => report.lambda_fo.clone(),
                InvariantId::LambdaSw => report.lambda_sw.clone(),
                InvariantId::Lefschetz => report.lefschetz.clone().ok_or(Error::MissingFroyshov)?,
                InvariantId::LN => {
                    if !covertor_core::gauge::is_prime_power(n) {
                        return Err(Error::NotPrimePower(n));
                    }
                    cert.insert("concordance_invariant".into(), json!(true));
                    report.lefschetz.clone().ok_or(Error::MissingFroyshov)?
                }
                _ => unreachable!(),
            };
            Ok((value, Value::Object(cert)))
        }
        InvariantId::Mullins => {
            let value = casson_double_cover_mullins(&presentation, policy)?;
            let rep = jones(&presentation)?;
            let cert = json!({
                "jprime_at_minus_one": output::big_int(&rep.jprime_at_minus_one),
                "det": output::big_int(&rep.det),
            });
            Ok((value, cert))
        }
        InvariantId::LspaceJones => {
            let verdict = jones_verdict(jones_certificate(&jones_presentation)?);
            let fired = matches!(
                verdict.kind(),
                covertor_core::obstruct::VerdictKind::NotLSpaceAllEvenCovers
            );
            Ok((rational_int(fired as i64), output::verdict(&verdict)))
        }
        InvariantId::LspaceLefschetz => {
            let n = n.expect("per-cover invariant");
            let inputs = gauge_inputs(n)?;
            let verdict = lefschetz_verdict(&inputs, policy)?;
            let fired = matches!(
                verdict.kind(),
                covertor_core::obstruct::VerdictKind::NotLSpaceThisCover
            );
            Ok((rational_int(fired as i64), output::verdict(&verdict)))
        }
    }
}
