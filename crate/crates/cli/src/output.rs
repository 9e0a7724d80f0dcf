//! JSON encoding helpers shared by single-shot commands and batch records.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};

use covertor_core::algebra::{LaurentPoly, Rational};
use covertor_core::covers::BranchedCoverReport;
use covertor_core::gauge::FroyshovInput;
use covertor_core::jones::JonesReport;
use covertor_core::obstruct::{Verdict, VerdictKind};
use covertor_core::seifert::SignatureProfile;

/// Integers render as JSON numbers when they fit i64, decimal strings
/// otherwise, so records stay exact without float round-tripping.
pub fn big_int(v: &BigInt) -> Value {
    match v.to_i64() {
        Some(x) => json!(x),
        None => json!(v.to_string()),
    }
}

pub fn rational_fields(map: &mut Map<String, Value>, value: &Rational) {
    map.insert("num".into(), big_int(value.numer()));
    map.insert("den".into(), big_int(value.denom()));
}

pub fn rational(value: &Rational) -> Value {
    let mut m = Map::new();
    rational_fields(&mut m, value);
    Value::Object(m)
}

/// `[[exponent, coefficient], ...]`, highest exponent first.
pub fn laurent(p: &LaurentPoly) -> Value {
    let mut terms: Vec<Value> = p
        .terms()
        .map(|(e, c)| json!([e, big_int(c)]))
        .collect();
    terms.reverse();
    Value::Array(terms)
}

pub fn jones_certificate(report: &JonesReport) -> Value {
    json!({
        "jones": laurent(&report.jones),
        "det": big_int(&report.det),
        "jprime_at_minus_one": big_int(&report.jprime_at_minus_one),
    })
}

pub fn signature_profile(profile: &SignatureProfile) -> Value {
    json!({
        "n": profile.n,
        "values": profile.values.iter().map(|(m, s)| json!([m, s])).collect::<Vec<_>>(),
        "nullities": profile.nullities.iter().map(|(m, s)| json!([m, s])).collect::<Vec<_>>(),
        "sum": profile.sum,
    })
}

pub fn cover_report(report: &BranchedCoverReport) -> Value {
    json!({
        "n": report.n,
        "invariant_factors": report
            .homology
            .invariant_factors
            .iter()
            .map(big_int)
            .collect::<Vec<_>>(),
        "free_rank": report.homology.free_rank,
        "order": big_int(&report.order),
        "qhs": report.qhs,
        "group": report.homology.to_string(),
    })
}

pub fn froyshov(h: &FroyshovInput) -> Value {
    json!({
        "value": rational(&h.value),
        "provenance": h.provenance,
    })
}

pub fn verdict_kind(kind: VerdictKind) -> &'static str {
    match kind {
        VerdictKind::NotLSpaceAllEvenCovers => "NotLSpaceAllEvenCovers",
        VerdictKind::NotLSpaceThisCover => "NotLSpaceThisCover",
        VerdictKind::Inconclusive => "Inconclusive",
    }
}

pub fn verdict(v: &Verdict) -> Value {
    match v {
        Verdict::Jones { kind, certificate } => json!({
            "route": "jones",
            "verdict": verdict_kind(*kind),
            "det": big_int(&certificate.det),
            "jprime_at_minus_one": big_int(&certificate.jprime),
        }),
        Verdict::Lefschetz { kind, certificate } => json!({
            "route": "lefschetz",
            "verdict": verdict_kind(*kind),
            "n": certificate.n,
            "lefschetz": rational(&certificate.lefschetz),
            "froyshov": rational(&certificate.froyshov),
            "froyshov_provenance": certificate.froyshov_provenance,
            "qhs": certificate.qhs,
            "concordance_invariant": certificate.concordance_invariant,
        }),
    }
}
