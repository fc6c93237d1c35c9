//! The convergence study: every (family, p, N) cell is meshed, solved and
//! measured in the energy norm, then rates are attached to the finer rows.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::{SystemTime, UNIX_EPOCH};

use layermesh_core::fem::{energy_error, error_quadrature, galerkin_solve};
use layermesh_core::{paper_problem, MeshFamily, MeshParams};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::formats::format_sci;
use crate::{Error, Result};

pub const THREADS_ENV: &str = "LAYERMESH_THREADS";

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SigmaRule {
    /// `sigma = p + 1`
    DegreePlusOne,
    Fixed(f64),
}

impl SigmaRule {
    pub fn sigma(self, p: usize) -> f64 {
        match self {
            SigmaRule::DegreePlusOne => p as f64 + 1.0,
            SigmaRule::Fixed(s) => s,
        }
    }

    fn to_json(self) -> Value {
        match self {
            SigmaRule::DegreePlusOne => json!("p+1"),
            SigmaRule::Fixed(s) => json!(s),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Markdown,
    Csv,
    Json,
}

impl std::str::FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "markdown" => Ok(OutputFormat::Markdown),
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(Error::Config(format!("unknown output format {other:?}"))),
        }
    }
}

impl OutputFormat {
    pub fn name(self) -> &'static str {
        match self {
            OutputFormat::Markdown => "markdown",
            OutputFormat::Csv => "csv",
            OutputFormat::Json => "json",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StudyConfig {
    pub families: Vec<MeshFamily>,
    pub degrees: Vec<usize>,
    pub n_values: Vec<usize>,
    pub epsilon: f64,
    pub beta: f64,
    pub sigma_rule: SigmaRule,
    pub output_format: OutputFormat,
}

impl Default for StudyConfig {
    fn default() -> Self {
        StudyConfig {
            families: MeshFamily::ALL.to_vec(),
            degrees: vec![1, 2, 3],
            n_values: vec![64, 128, 256, 512],
            epsilon: 1e-6,
            beta: 1.0,
            sigma_rule: SigmaRule::DegreePlusOne,
            output_format: OutputFormat::Markdown,
        }
    }
}

/// On-disk form of [`StudyConfig`]; every field is optional and falls back to the defaults.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    families: Option<Vec<String>>,
    degrees: Option<Vec<usize>>,
    n_values: Option<Vec<usize>>,
    epsilon: Option<f64>,
    beta: Option<f64>,
    sigma_rule: Option<Value>,
    output_format: Option<String>,
}

impl StudyConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let file: ConfigFile = serde_json::from_str(text)?;
        let mut config = StudyConfig::default();
        if let Some(families) = file.families {
            config.families = families
                .iter()
                .map(|f| f.parse().map_err(|e| Error::Config(format!("{f:?}: {e}"))))
                .collect::<Result<_>>()?;
        }
        if let Some(d) = file.degrees {
            config.degrees = d;
        }
        if let Some(n) = file.n_values {
            config.n_values = n;
        }
        if let Some(e) = file.epsilon {
            config.epsilon = e;
        }
        if let Some(b) = file.beta {
            config.beta = b;
        }
        if let Some(rule) = file.sigma_rule {
            config.sigma_rule = match rule {
                Value::String(s) if s.replace(' ', "") == "p+1" => SigmaRule::DegreePlusOne,
                Value::Number(n) => SigmaRule::Fixed(n.as_f64().unwrap_or(f64::NAN)),
                other => {
                    return Err(Error::Config(format!(
                        "sigma_rule must be \"p+1\" or a number, got {other}"
                    )))
                }
            };
        }
        if let Some(f) = file.output_format {
            config.output_format = f.parse()?;
        }
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::Config(m.to_string()));
        if self.families.is_empty() || self.degrees.is_empty() || self.n_values.is_empty() {
            return bad("families, degrees and n_values must be non-empty");
        }
        if self.n_values.iter().any(|n| n % 2 != 0 || *n < 8) {
            return bad("every N must be even and at least 8");
        }
        if !self.n_values.windows(2).all(|w| w[0] < w[1]) {
            return bad("n_values must be sorted ascending without duplicates");
        }
        if self.degrees.iter().any(|&p| p == 0 || p > layermesh_core::fem::MAX_DEGREE) {
            return bad("degrees must lie in 1..=12");
        }
        if !(self.epsilon > 0.0 && self.epsilon.is_finite()) {
            return bad("epsilon must be positive and finite");
        }
        if !(self.beta > 0.0 && self.beta.is_finite()) {
            return bad("beta must be positive and finite");
        }
        if let SigmaRule::Fixed(s) = self.sigma_rule {
            if !(s > 0.0 && s.is_finite()) {
                return bad("sigma must be positive and finite");
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> Value {
        json!({
            "families": self.families.iter().map(|f| f.name()).collect::<Vec<_>>(),
            "degrees": self.degrees,
            "n_values": self.n_values,
            "epsilon": self.epsilon,
            "beta": self.beta,
            "sigma_rule": self.sigma_rule.to_json(),
            "output_format": self.output_format.name(),
        })
    }
}

/// One (family, p, N) cell of the study.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CellResult {
    pub family: String,
    pub p: usize,
    #[serde(rename = "N")]
    pub n: usize,
    pub sigma: f64,
    /// Energy-norm error; `None` when the cell failed.
    pub error: Option<f64>,
    pub gradient_part: Option<f64>,
    pub l2_part: Option<f64>,
    /// Observed order against the previous N of the same (family, p).
    pub rate: Option<f64>,
    /// Relative residual of the solved linear system.
    pub residual: Option<f64>,
    pub failure: Option<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceTable {
    pub rows: Vec<CellResult>,
    pub config: StudyConfig,
    pub timestamp: u64,
    pub version: String,
}

fn solve_cell(config: &StudyConfig, family: MeshFamily, p: usize, n: usize) -> CellResult {
    let sigma = config.sigma_rule.sigma(p);
    let mut cell = CellResult {
        family: family.name().to_string(),
        p,
        n,
        sigma,
        error: None,
        gradient_part: None,
        l2_part: None,
        rate: None,
        residual: None,
        failure: None,
    };
    let outcome = (|| -> layermesh_core::Result<_> {
        let params = MeshParams::new(config.epsilon, sigma, config.beta, n)?;
        let mesh = family.build(&params)?;
        let problem = paper_problem(config.epsilon)?;
        let solved = galerkin_solve(&problem, &mesh.nodes, p)?;
        let err = energy_error(&solved.solution, &problem, config.epsilon, error_quadrature(p))?;
        Ok((err, solved.residual))
    })();
    match outcome {
        Ok((err, residual)) => {
            cell.error = Some(err.total());
            cell.gradient_part = Some(err.gradient_part);
            cell.l2_part = Some(err.l2_part);
            cell.residual = Some(residual);
        }
        Err(e) => cell.failure = Some(e.to_string()),
    }
    cell
}

fn thread_count() -> usize {
    let available = std::thread::available_parallelism().map_or(1, |n| n.get());
    match std::env::var(THREADS_ENV).ok().and_then(|v| v.trim().parse::<usize>().ok()) {
        Some(cap) if cap >= 1 => cap.min(available.max(1)),
        _ => available,
    }
}

/// Run every cell of `config`. Failed cells are recorded, not propagated.
///
/// Cells run in parallel; `LAYERMESH_THREADS` caps the number of workers.
pub fn run_study(config: &StudyConfig) -> Result<ConvergenceTable> {
    run_study_with_workers(config, thread_count())
}

/// [`run_study`] with an explicit worker count.
pub fn run_study_with_workers(config: &StudyConfig, workers: usize) -> Result<ConvergenceTable> {
    config.validate()?;
    let mut families = config.families.clone();
    families.sort();
    families.dedup();
    let mut degrees = config.degrees.clone();
    degrees.sort_unstable();
    degrees.dedup();

    let jobs: Vec<(MeshFamily, usize, usize)> = families
        .iter()
        .flat_map(|&f| {
            degrees
                .iter()
                .flat_map(move |&p| config.n_values.iter().map(move |&n| (f, p, n)))
        })
        .collect();

    let slots: Vec<Mutex<Option<CellResult>>> = jobs.iter().map(|_| Mutex::new(None)).collect();
    let next = AtomicUsize::new(0);
    let workers = workers.min(jobs.len()).max(1);
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let k = next.fetch_add(1, Ordering::Relaxed);
                let Some(&(f, p, n)) = jobs.get(k) else { break };
                *slots[k].lock().unwrap() = Some(solve_cell(config, f, p, n));
            });
        }
    });
    let mut rows: Vec<CellResult> = slots
        .into_iter()
        .map(|s| s.into_inner().unwrap().expect("every job ran"))
        .collect();

    // jobs are ordered by (family, p, N), so the previous row is the coarser N
    for k in 1..rows.len() {
        let (prev, cur) = (&rows[k - 1], &rows[k]);
        if prev.family == cur.family && prev.p == cur.p {
            if let (Some(e0), Some(e1)) = (prev.error, cur.error) {
                let rate = (e0 / e1).ln() / (cur.n as f64 / prev.n as f64).ln();
                rows[k].rate = Some(rate);
            }
        }
    }

    Ok(ConvergenceTable {
        rows,
        config: config.clone(),
        timestamp: SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map_or(0, |d| d.as_secs()),
        version: format!("v{}", env!("CARGO_PKG_VERSION")),
    })
}

fn fmt_error(e: Option<f64>) -> String {
    e.map_or_else(|| "---".to_string(), |v| format_sci(v, 3))
}

fn fmt_rate(r: Option<f64>) -> String {
    r.map_or_else(String::new, |v| format!("{v:.2}"))
}

impl ConvergenceTable {
    pub fn get(&self, family: MeshFamily, p: usize, n: usize) -> Option<&CellResult> {
        self.rows
            .iter()
            .find(|r| r.family == family.name() && r.p == p && r.n == n)
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Markdown => self.to_markdown(),
            OutputFormat::Csv => self.to_csv(),
            OutputFormat::Json => self.to_json(),
        }
    }

    /// Long format, one row per cell, no metadata.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("family,p,N,error,rate\n");
        for r in &self.rows {
            writeln!(out, "{},{},{},{},{}", r.family, r.p, r.n, fmt_error(r.error), fmt_rate(r.rate))
                .unwrap();
        }
        out
    }

    pub fn to_json(&self) -> String {
        let v = json!({
            "metadata": {
                "config": self.config.to_json(),
                "timestamp": self.timestamp,
                "version": self.version,
            },
            "rows": self.rows,
        });
        serde_json::to_string_pretty(&v).expect("table serializes")
    }

    /// One block per degree, rows by N, an error and a rate column per family.
    pub fn to_markdown(&self) -> String {
        let mut families: Vec<&str> = Vec::new();
        for r in &self.rows {
            if !families.contains(&r.family.as_str()) {
                families.push(&r.family);
            }
        }
        let mut by_degree: BTreeMap<usize, Vec<&CellResult>> = BTreeMap::new();
        for r in &self.rows {
            by_degree.entry(r.p).or_default().push(r);
        }

        let mut out = String::new();
        for (p, cells) in by_degree {
            writeln!(out, "### p = {p}\n").unwrap();
            out.push_str("| N |");
            for f in &families {
                write!(out, " {f} | rate |").unwrap();
            }
            out.push_str("\n|---:|");
            out.push_str(&"---:|---:|".repeat(families.len()));
            out.push('\n');
            for &n in &self.config.n_values {
                write!(out, "| {n} |").unwrap();
                for f in &families {
                    let cell = cells.iter().find(|c| c.family == *f && c.n == n);
                    let (e, r) = cell.map_or((None, None), |c| (c.error, c.rate));
                    write!(out, " {} | {} |", fmt_error(e), fmt_rate(r)).unwrap();
                }
                out.push('\n');
            }
            out.push('\n');
        }
        out
    }
}
