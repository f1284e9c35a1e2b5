//! Run records as JSON lines, and the dimension-ratio CSV.
//!
//! Exact dimensions are always written as decimal strings. Floating values are
//! rounded to 15 significant digits before they are stored, so a record that
//! has been written once reads back bit-identical.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::diagram::YoungDiagram;
use crate::dimension::{dim_exact, log_dim, normalized_from_log};
use crate::error::{Error, Result};
use crate::numeric::ln_biguint;

/// Serde adapter: `BigUint` as a decimal string.
pub mod decimal {
    use num_bigint::BigUint;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_str_radix(10))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        let text = String::deserialize(d)?;
        BigUint::parse_bytes(text.as_bytes(), 10)
            .ok_or_else(|| serde::de::Error::custom(format!("not a decimal integer: {text:?}")))
    }
}

/// Serde adapter: `Option<BigUint>` as a decimal string or null.
pub mod decimal_opt {
    use num_bigint::BigUint;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &Option<BigUint>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(v) => s.serialize_str(&v.to_str_radix(10)),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigUint>, D::Error> {
        match Option::<String>::deserialize(d)? {
            None => Ok(None),
            Some(text) => BigUint::parse_bytes(text.as_bytes(), 10)
                .map(Some)
                .ok_or_else(|| {
                    serde::de::Error::custom(format!("not a decimal integer: {text:?}"))
                }),
        }
    }
}

/// Rounds to 15 significant decimal digits.
pub fn round_sig15(x: f64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    if !x.is_finite() {
        return x;
    }
    format!("{x:.14e}").parse().unwrap_or(x)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Source {
    Greedy,
    Shake,
    Branches,
    Astar,
    Improve,
    Oracle,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub n: usize,
    pub rows: YoungDiagram,
    pub log_dim: f64,
    #[serde(with = "decimal_opt")]
    pub dim: Option<BigUint>,
    pub c: f64,
    pub source: Source,
}

impl RunRecord {
    /// Builds a record; the exact dimension is skipped above `max_exact_n`.
    pub fn new(diagram: &YoungDiagram, source: Source, max_exact_n: Option<usize>) -> Self {
        let n = diagram.size();
        let ld = log_dim(diagram);
        let c = if n == 0 {
            0.0
        } else {
            normalized_from_log(n, ld)
        };
        let exact = max_exact_n.is_none_or(|cap| n <= cap);
        RunRecord {
            n,
            rows: diagram.clone(),
            log_dim: round_sig15(ld),
            dim: exact.then(|| dim_exact(diagram)),
            c: round_sig15(c),
            source,
        }
    }

    fn validate(&self) -> std::result::Result<(), String> {
        if self.rows.size() != self.n {
            return Err(format!(
                "rows {} have size {}, not n={}",
                self.rows,
                self.rows.size(),
                self.n
            ));
        }
        if let Some(dim) = &self.dim {
            let ln = ln_biguint(dim);
            if (self.log_dim - ln).abs() > 1e-9 * ln.abs().max(1.0) {
                return Err(format!(
                    "log_dim {} disagrees with ln(dim) = {ln}",
                    self.log_dim
                ));
            }
        }
        Ok(())
    }
}

pub fn write_records<W: Write>(records: &[RunRecord], mut out: W) -> Result<()> {
    for r in records {
        let line = serde_json::to_string(r).expect("records always serialize");
        writeln!(out, "{line}").map_err(|e| Error::io("<writer>", e))?;
    }
    Ok(())
}

/// Parses JSON lines; blank lines are skipped, line numbers are 1-based.
pub fn read_records<R: BufRead>(input: R) -> Result<Vec<RunRecord>> {
    let mut out = Vec::new();
    for (i, line) in input.lines().enumerate() {
        let line = line.map_err(|e| Error::io("<reader>", e))?;
        if line.trim().is_empty() {
            continue;
        }
        let record: RunRecord = serde_json::from_str(&line).map_err(|e| Error::Schema {
            line: i + 1,
            message: e.to_string(),
        })?;
        record.validate().map_err(|message| Error::Schema {
            line: i + 1,
            message,
        })?;
        out.push(record);
    }
    Ok(out)
}

pub fn emit_records(records: &[RunRecord], path: &Path) -> Result<()> {
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    let mut w = BufWriter::new(file);
    write_records(records, &mut w)?;
    w.flush().map_err(|e| Error::io(path, e))
}

pub fn load_records(path: &Path) -> Result<Vec<RunRecord>> {
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    read_records(BufReader::new(file))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RatioRow {
    pub n: usize,
    pub ratio: f64,
    pub log_ratio: f64,
    pub improved: bool,
}

/// The row for `new / old` from exact dimensions.
pub fn exact_ratio_row(n: usize, old: &BigUint, new: &BigUint) -> RatioRow {
    let q = BigRational::new(BigInt::from(new.clone()), BigInt::from(old.clone()));
    RatioRow {
        n,
        ratio: q.to_f64().unwrap_or(f64::NAN),
        log_ratio: ln_biguint(new) - ln_biguint(old),
        improved: new > old,
    }
}

/// `dim(new)/dim(old)` per size; exact when both sides carry exact dimensions.
pub fn ratio_rows(old: &[RunRecord], new: &[RunRecord]) -> Result<Vec<RatioRow>> {
    let old: BTreeMap<usize, &RunRecord> = old.iter().map(|r| (r.n, r)).collect();
    let new: BTreeMap<usize, &RunRecord> = new.iter().map(|r| (r.n, r)).collect();
    if !old.keys().eq(new.keys()) {
        let only_old: Vec<_> = old.keys().filter(|k| !new.contains_key(k)).collect();
        let only_new: Vec<_> = new.keys().filter(|k| !old.contains_key(k)).collect();
        return Err(Error::KeyMismatch(format!(
            "only in old: {only_old:?}, only in new: {only_new:?}"
        )));
    }
    let mut rows = Vec::with_capacity(old.len());
    for (&n, o) in &old {
        let nw = new[&n];
        let row = match (&o.dim, &nw.dim) {
            (Some(a), Some(b)) => exact_ratio_row(n, a, b),
            _ => {
                let log_ratio = nw.log_dim - o.log_dim;
                RatioRow {
                    n,
                    ratio: log_ratio.exp(),
                    log_ratio,
                    improved: log_ratio > 0.0,
                }
            }
        };
        rows.push(row);
    }
    Ok(rows)
}

pub fn write_ratio_rows<W: Write>(rows: &[RatioRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for row in rows {
        w.serialize(row)?;
    }
    w.flush().map_err(|e| Error::io("<csv>", e))
}

/// Writes `n,ratio,log_ratio,improved` for two record sets keyed by `n`.
pub fn ratios_csv(old: &[RunRecord], new: &[RunRecord], path: &Path) -> Result<Vec<RatioRow>> {
    let rows = ratio_rows(old, new)?;
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    write_ratio_rows(&rows, BufWriter::new(file))?;
    Ok(rows)
}
