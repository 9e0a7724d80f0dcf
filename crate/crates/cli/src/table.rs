//! Knot-table CSV ingestion.
//!
//! Required columns: `name`, `braid`. Optional: `pd`, `h2`..`h5` (Froyshov
//! inputs per cover degree, e.g. `-1 (source note)`), `h_provenance`
//! (fallback provenance for bare h values), `notes`. Froyshov values
//! without any provenance are rejected: the gauge layer refuses to consume
//! unattributed h-invariants.

use std::collections::BTreeMap;
use std::path::Path;

use num_bigint::BigInt;

use covertor_core::algebra::Rational;
use covertor_core::gauge::FroyshovInput;
use covertor_core::notation::{parse_braid, parse_pd, BraidWord, PlanarDiagram};

#[derive(Debug, Clone)]
pub struct TableRow {
    pub name: String,
    pub braid: BraidWord,
    pub pd: Option<PlanarDiagram>,
    pub h_by_n: BTreeMap<u64, FroyshovInput>,
    /// Free-form table metadata; carried for operators reading the CSV, not
    /// copied into records.
    #[allow(dead_code)]
    pub notes: Option<String>,
}

#[derive(Debug)]
pub struct IngestError {
    pub line: u64,
    pub message: String,
}

impl std::fmt::Display for IngestError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "row at line {}: {}", self.line, self.message)
    }
}

/// Parses an exact rational: `-1`, `3/4`, `-7/8`.
pub fn parse_rational(text: &str) -> Result<Rational, String> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let n: BigInt = num.parse().map_err(|_| format!("bad numerator {num:?}"))?;
    let d: BigInt = den.parse().map_err(|_| format!("bad denominator {den:?}"))?;
    if d == BigInt::from(0) {
        return Err("zero denominator".into());
    }
    Ok(Rational::new(n, d))
}

/// Parses an h cell: a rational optionally followed by a parenthesized
/// provenance note, e.g. `-1 (KM conventions)`.
fn parse_h_cell(cell: &str, fallback_provenance: Option<&str>) -> Result<FroyshovInput, String> {
    let cell = cell.trim();
    let (value_text, inline) = match cell.find('(') {
        Some(open) => {
            let close = cell.rfind(')').ok_or("unterminated provenance note")?;
            (&cell[..open], Some(cell[open + 1..close].trim().to_string()))
        }
        None => (cell, None),
    };
    let value = parse_rational(value_text)?;
    let provenance = inline
        .filter(|s| !s.is_empty())
        .or_else(|| fallback_provenance.map(str::to_string))
        .filter(|s| !s.is_empty())
        .ok_or("h value given without provenance")?;
    Ok(FroyshovInput { value, provenance })
}

pub struct Ingested {
    pub rows: Vec<TableRow>,
    pub errors: Vec<IngestError>,
}

/// Reads a knot table. Errors carry the CSV line number; the caller decides
/// whether they are fatal (`--lenient` skips bad rows).
pub fn ingest_csv(path: &Path) -> Result<Ingested, String> {
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .flexible(true)
        .from_path(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;

    let headers = reader
        .headers()
        .map_err(|e| format!("bad CSV header: {e}"))?
        .clone();
    let col = |name: &str| headers.iter().position(|h| h.eq_ignore_ascii_case(name));
    let name_col = col("name").ok_or("missing required column 'name'")?;
    let braid_col = col("braid").ok_or("missing required column 'braid'")?;
    let pd_col = col("pd");
    let prov_col = col("h_provenance");
    let notes_col = col("notes");
    let h_cols: Vec<(u64, usize)> = (2u64..=5)
        .filter_map(|n| col(&format!("h{n}")).map(|c| (n, c)))
        .collect();

    let mut rows = Vec::new();
    let mut errors = Vec::new();
    for record in reader.records() {
        let record = match record {
            Ok(r) => r,
            Err(e) => {
                errors.push(IngestError { line: e.position().map_or(0, |p| p.line()), message: e.to_string() });
                continue;
            }
        };
        let line = record.position().map_or(0, |p| p.line());
        let get = |i: usize| record.get(i).unwrap_or("").trim();
        let push_err = |message: String| IngestError { line, message };

        let name = get(name_col).to_string();
        if name.is_empty() {
            errors.push(push_err("empty knot name".into()));
            continue;
        }
        let braid = match parse_braid(get(braid_col)) {
            Ok(b) => b,
            Err(e) => {
                errors.push(push_err(format!("braid: {e}")));
                continue;
            }
        };
        let pd = match pd_col.map(get).filter(|s| !s.is_empty()) {
            None => None,
            Some(text) => match parse_pd(text) {
                Ok(pd) => Some(pd),
                Err(e) => {
                    errors.push(push_err(format!("pd: {e}")));
                    continue;
                }
            },
        };
        let fallback = prov_col.map(get).filter(|s| !s.is_empty());
        let mut h_by_n = BTreeMap::new();
        let mut h_ok = true;
        for &(n, c) in &h_cols {
            let cell = get(c);
            if cell.is_empty() {
                continue;
            }
            match parse_h_cell(cell, fallback) {
                Ok(h) => {
                    h_by_n.insert(n, h);
                }
                Err(e) => {
                    errors.push(IngestError { line, message: format!("h{n}: {e}") });
                    h_ok = false;
                    break;
                }
            }
        }
        if !h_ok {
            continue;
        }
        let notes = notes_col.map(get).filter(|s| !s.is_empty()).map(str::to_string);
        rows.push(TableRow { name, braid, pd, h_by_n, notes });
    }
    Ok(Ingested { rows, errors })
}
