//! Verification drivers and structured reports.

mod drivers;

use std::fmt::Write as _;
use std::time::Instant;

use serde::Serialize;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::rmatrix::Tau;
use crate::scalars::RankMode;

pub use drivers::{
    braiding_checks, combinatorics, duality, eigenvalue_checks, anticommutativity_checks, full_suite,
    hecke_selftest, poincare_biinv, poincare_left, spectrum_report, trace_identities,
};

/// Default memory budget: 2 GiB.
pub const DEFAULT_MEMORY_BUDGET: u128 = 2 << 30;

/// Environment variable overriding the memory budget (bytes).
pub const BUDGET_ENV: &str = "HECKE_MEMORY_BUDGET";

#[derive(Clone, Debug)]
pub struct Config {
    pub n: usize,
    /// `None` runs both signs
    pub tau: Option<Tau>,
    pub kmax: usize,
    pub mode: RankMode,
    pub seed: u64,
    pub memory_budget: u128,
    /// record wall times; disable for byte-identical reports
    pub timing: bool,
}

impl Config {
    pub fn new(n: usize, kmax: usize) -> Self {
        Config { n, tau: None, kmax, mode: RankMode::Exact, seed: 0, memory_budget: DEFAULT_MEMORY_BUDGET, timing: true }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::InvalidArgument(format!("N must be at least 2, got {}", self.n)));
        }
        if let RankMode::Modular { primes, trials, .. } = self.mode {
            if primes == 0 || trials == 0 {
                return Err(Error::InvalidArgument("primes and trials must be at least 1".into()));
            }
        }
        Ok(())
    }

    pub fn taus(&self) -> Vec<Tau> {
        match self.tau {
            Some(t) => vec![t],
            None => Tau::both().to_vec(),
        }
    }

    /// Rough memory need of an operator on `V^{⊗2k}` in the configured mode.
    pub fn estimate_bytes(&self, k: usize) -> u128 {
        let d = (self.n as u128).pow(2 * k as u32);
        let entry: u128 = if self.mode.is_exact() { 64 } else { 16 };
        d * d * entry
    }

    /// Rough memory need of computations that only touch a few vectors.
    pub fn estimate_vector_bytes(&self, k: usize) -> u128 {
        let d = (self.n as u128).pow(2 * k as u32);
        let entry: u128 = if self.mode.is_exact() { 64 } else { 16 };
        d * 256 * entry
    }

    pub fn check_vector_budget(&self, k: usize) -> Result<()> {
        let needed = self.estimate_vector_bytes(k);
        if needed > self.memory_budget {
            return Err(Error::BudgetExceeded { needed, budget: self.memory_budget });
        }
        Ok(())
    }

    pub fn check_budget(&self, k: usize) -> Result<()> {
        let needed = self.estimate_bytes(k);
        if needed > self.memory_budget {
            return Err(Error::BudgetExceeded { needed, budget: self.memory_budget });
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckRow {
    pub check: String,
    pub params: Value,
    pub expected: Value,
    pub computed: Value,
    pub pass: bool,
    pub mode: String,
    pub primes: Vec<u64>,
    pub ms: f64,
    /// where the expected value comes from
    pub provenance: String,
    /// set when the check was skipped by the memory guard
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub truncated: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl CheckRow {
    pub fn new(check: &str, params: Value, provenance: &str) -> Self {
        CheckRow {
            check: check.to_string(),
            params,
            expected: Value::Null,
            computed: Value::Null,
            pass: false,
            mode: "exact".into(),
            primes: Vec::new(),
            ms: 0.0,
            provenance: provenance.to_string(),
            truncated: false,
            note: None,
        }
    }

    pub fn values(mut self, expected: impl Serialize, computed: impl Serialize) -> Self {
        self.expected = serde_json::to_value(expected).unwrap_or(Value::Null);
        self.computed = serde_json::to_value(computed).unwrap_or(Value::Null);
        self.pass = self.expected == self.computed;
        self
    }

    pub fn pass(mut self, pass: bool) -> Self {
        self.pass = pass;
        self
    }

    pub fn modular(mut self, points: &[(u64, u64)]) -> Self {
        if !points.is_empty() {
            self.mode = "modular".into();
            let mut primes: Vec<u64> = points.iter().map(|p| p.0).collect();
            primes.dedup();
            self.primes = primes;
        }
        self
    }

    pub fn note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn truncated(check: &str, params: Value, provenance: &str, err: &Error) -> Self {
        let mut row = CheckRow::new(check, params, provenance);
        row.computed = Value::String("truncated".into());
        row.truncated = true;
        row.note = Some(err.to_string());
        row
    }
}

/// Times `f` and stores the elapsed milliseconds on the produced rows.
pub(crate) fn timed(cfg: &Config, f: impl FnOnce() -> Result<Vec<CheckRow>>) -> Result<Vec<CheckRow>> {
    let start = Instant::now();
    let mut rows = f()?;
    if cfg.timing {
        let ms = start.elapsed().as_secs_f64() * 1e3;
        let share = ms / rows.len().max(1) as f64;
        for r in &mut rows {
            r.ms = (share * 1000.0).round() / 1000.0;
        }
    }
    Ok(rows)
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Report {
    pub rows: Vec<CheckRow>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Pretty,
}

impl std::str::FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Format> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "pretty" => Ok(Format::Pretty),
            _ => Err(Error::InvalidArgument(format!("unknown format {s:?}"))),
        }
    }
}

fn flat(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

impl Report {
    pub fn new(rows: Vec<CheckRow>) -> Self {
        Report { rows }
    }

    pub fn extend(&mut self, rows: Vec<CheckRow>) {
        self.rows.extend(rows);
    }

    /// Every executed (non-truncated) check passed.
    pub fn all_pass(&self) -> bool {
        self.rows.iter().filter(|r| !r.truncated).all(|r| r.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRow> {
        self.rows.iter().filter(|r| !r.truncated && !r.pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.rows).expect("rows serialize")
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let io = |e: csv::Error| Error::Io(e.to_string());
        w.write_record(["check", "params", "expected", "computed", "pass", "mode", "primes", "ms", "provenance", "note"])
            .map_err(io)?;
        for r in &self.rows {
            let primes: Vec<String> = r.primes.iter().map(|p| p.to_string()).collect();
            w.write_record([
                r.check.clone(),
                flat(&r.params),
                flat(&r.expected),
                flat(&r.computed),
                r.pass.to_string(),
                r.mode.clone(),
                primes.join(" "),
                r.ms.to_string(),
                r.provenance.clone(),
                r.note.clone().unwrap_or_default(),
            ])
            .map_err(io)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| Error::Io(e.to_string()))
    }

    pub fn to_pretty(&self) -> String {
        let mut out = String::new();
        for r in &self.rows {
            let status = if r.truncated {
                "SKIP"
            } else if r.pass {
                "PASS"
            } else {
                "FAIL"
            };
            let _ = write!(out, "{status}  {:<22} {}  expected {}  computed {}", r.check, flat(&r.params), flat(&r.expected), flat(&r.computed));
            if r.mode == "modular" {
                let _ = write!(out, "  [modular, {} primes]", r.primes.len());
            }
            if let Some(n) = &r.note {
                let _ = write!(out, "  ({n})");
            }
            out.push('\n');
        }
        let failed = self.failures().count();
        let skipped = self.rows.iter().filter(|r| r.truncated).count();
        let _ = writeln!(out, "{} checks, {} failed, {} skipped", self.rows.len(), failed, skipped);
        out
    }

    pub fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Json => Ok(self.to_json()),
            Format::Csv => self.to_csv(),
            Format::Pretty => Ok(self.to_pretty()),
        }
    }
}
