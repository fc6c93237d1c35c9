//! Reference data (`family,p,N,error,rate` CSV) and table comparison.

use std::fmt::Write as _;

use serde::Serialize;

use crate::formats::format_sci;
use crate::study::ConvergenceTable;
use crate::{Error, Result};

pub const DEFAULT_TOL_ERROR: f64 = 0.02;
pub const DEFAULT_TOL_RATE: f64 = 0.05;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReferenceCell {
    pub family: String,
    pub p: usize,
    pub n: usize,
    pub error: f64,
    pub rate: Option<f64>,
}

/// Parse reference CSV. Lines starting with `#` and blank lines are skipped;
/// the first remaining line must be the header.
pub fn load_reference(text: &str) -> Result<Vec<ReferenceCell>> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    match lines.next() {
        Some((_, "family,p,N,error,rate")) => {}
        Some((line, _)) => {
            return Err(Error::Reference {
                line,
                msg: "expected header family,p,N,error,rate".into(),
            })
        }
        None => {
            return Err(Error::Reference {
                line: 0,
                msg: "no data".into(),
            })
        }
    }
    lines
        .map(|(line, l)| {
            let bad = |msg: &str| Error::Reference {
                line,
                msg: msg.to_string(),
            };
            let fields: Vec<&str> = l.split(',').map(str::trim).collect();
            let [family, p, n, error, rate] = fields[..] else {
                return Err(bad("expected 5 fields"));
            };
            Ok(ReferenceCell {
                family: family.to_string(),
                p: p.parse().map_err(|_| bad("bad degree"))?,
                n: n.parse().map_err(|_| bad("bad N"))?,
                error: error.parse().map_err(|_| bad("bad error value"))?,
                rate: if rate.is_empty() {
                    None
                } else {
                    Some(rate.parse().map_err(|_| bad("bad rate value"))?)
                },
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CellComparison {
    pub family: String,
    pub p: usize,
    pub n: usize,
    pub reference_error: f64,
    pub error: Option<f64>,
    pub error_deviation: Option<f64>,
    pub reference_rate: Option<f64>,
    pub rate: Option<f64>,
    pub rate_deviation: Option<f64>,
    pub passed: bool,
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComparisonReport {
    pub tol_error: f64,
    pub tol_rate: f64,
    pub cells: Vec<CellComparison>,
}

impl ComparisonReport {
    pub fn passed(&self) -> bool {
        !self.cells.is_empty() && self.cells.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CellComparison> {
        self.cells.iter().filter(|c| !c.passed)
    }

    pub fn max_error_deviation(&self) -> f64 {
        self.cells.iter().filter_map(|c| c.error_deviation).fold(0.0, f64::max)
    }

    pub fn max_rate_deviation(&self) -> f64 {
        self.cells.iter().filter_map(|c| c.rate_deviation).fold(0.0, f64::max)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.cells {
            let status = if c.passed { "ok  " } else { "FAIL" };
            write!(
                out,
                "{status} {:<10} p={} N={:<5} error {} (ref {}, dev {})",
                c.family,
                c.p,
                c.n,
                c.error.map_or("---".into(), |e| format_sci(e, 3)),
                format_sci(c.reference_error, 3),
                c.error_deviation.map_or("---".into(), |d| format!("{:.2}%", 100.0 * d)),
            )
            .unwrap();
            if let Some(rr) = c.reference_rate {
                write!(
                    out,
                    "  rate {} (ref {rr:.2})",
                    c.rate.map_or("---".into(), |r| format!("{r:.3}"))
                )
                .unwrap();
            }
            if let Some(note) = &c.note {
                write!(out, "  [{note}]").unwrap();
            }
            out.push('\n');
        }
        let failed = self.failures().count();
        writeln!(
            out,
            "{} of {} cells within tolerance (error {:.1}%, rate {:.2}); max error dev {:.3}%, max rate dev {:.3}",
            self.cells.len() - failed,
            self.cells.len(),
            100.0 * self.tol_error,
            self.tol_rate,
            100.0 * self.max_error_deviation(),
            self.max_rate_deviation(),
        )
        .unwrap();
        out
    }
}

/// Compare `table` cell by cell against `reference`: relative error
/// deviation against `tol_error`, absolute rate deviation against `tol_rate`.
pub fn compare_reference(
    table: &ConvergenceTable,
    reference: &[ReferenceCell],
    tol_error: f64,
    tol_rate: f64,
) -> ComparisonReport {
    let cells = reference
        .iter()
        .map(|r| {
            let row = table
                .rows
                .iter()
                .find(|c| c.family == r.family && c.p == r.p && c.n == r.n);
            let error = row.and_then(|c| c.error);
            let rate = row.and_then(|c| c.rate);
            let error_deviation = error.map(|e| (e - r.error).abs() / r.error.abs());
            let rate_deviation = match (rate, r.rate) {
                (Some(a), Some(b)) => Some((a - b).abs()),
                _ => None,
            };
            let note = match row {
                None => Some("missing cell".to_string()),
                Some(c) if c.error.is_none() => c.failure.clone().or(Some("failed".into())),
                Some(_) if r.rate.is_some() && rate.is_none() => Some("missing rate".into()),
                _ => None,
            };
            let passed = note.is_none()
                && error_deviation.is_some_and(|d| d <= tol_error)
                && rate_deviation.is_none_or(|d| d <= tol_rate);
            CellComparison {
                family: r.family.clone(),
                p: r.p,
                n: r.n,
                reference_error: r.error,
                error,
                error_deviation,
                reference_rate: r.rate,
                rate,
                rate_deviation,
                passed,
                note,
            }
        })
        .collect();
    ComparisonReport {
        tol_error,
        tol_rate,
        cells,
    }
}

/// Reference cells copied from a computed table (errors and rates at full precision).
pub fn reference_from_table(table: &ConvergenceTable) -> Vec<ReferenceCell> {
    table
        .rows
        .iter()
        .filter_map(|r| {
            Some(ReferenceCell {
                family: r.family.clone(),
                p: r.p,
                n: r.n,
                error: r.error?,
                rate: r.rate,
            })
        })
        .collect()
}
