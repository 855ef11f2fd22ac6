//! Run configuration, verification reports and their JSON/CSV forms.
//!
//! Every floating-point number is written with 17 significant digits so a
//! report can serve as a regression baseline; non-finite values become
//! `null`.

use std::collections::BTreeMap;
use std::io::{self, Write};

use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;
use serde_json::value::RawValue;

use crate::error::{Error, Result};

pub const DEFAULT_TOL_REL: f64 = 1e-9;
pub const DEFAULT_TOL_ABS: f64 = 1e-12;
pub const DEFAULT_MAX_TERMS: usize = 1_000_000;
pub const DEFAULT_FL_PARTIAL_N: usize = 10_000;
pub const DEFAULT_QUAD_TOL: f64 = 1e-10;

/// Knobs shared by every verification.
///
/// `tol_rel`/`tol_abs` are overrides: when either is set it replaces the
/// per-record tolerances and the unset one counts as 0.
#[derive(Debug, Clone, PartialEq)]
pub struct ToleranceConfig {
    pub tol_rel: Option<f64>,
    pub tol_abs: Option<f64>,
    pub max_terms: usize,
    pub fl_partial_n: usize,
    pub quad_tol: f64,
    pub workers: usize,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        Self {
            tol_rel: None,
            tol_abs: None,
            max_terms: DEFAULT_MAX_TERMS,
            fl_partial_n: DEFAULT_FL_PARTIAL_N,
            quad_tol: DEFAULT_QUAD_TOL,
            workers: std::thread::available_parallelism().map_or(1, |n| n.get()),
        }
    }
}

impl ToleranceConfig {
    pub fn validate(&self) -> Result<()> {
        let positive = |name: &str, v: Option<f64>| match v {
            Some(t) if !(t > 0.0 && t.is_finite()) => Err(Error::Config(format!(
                "{name} must be positive and finite, got {t}"
            ))),
            _ => Ok(()),
        };
        positive("tol_rel", self.tol_rel)?;
        positive("tol_abs", self.tol_abs)?;
        positive("quad_tol", Some(self.quad_tol))?;
        if self.max_terms < 100 {
            return Err(Error::Config(format!(
                "max_terms must be at least 100, got {}",
                self.max_terms
            )));
        }
        if self.fl_partial_n < 2 {
            return Err(Error::Config(format!(
                "fl_partial_n must be at least 2, got {}",
                self.fl_partial_n
            )));
        }
        if self.workers == 0 {
            return Err(Error::Config("workers must be at least 1".into()));
        }
        Ok(())
    }

    /// `(tol_rel, tol_abs)` to apply to a point whose own tolerances are given.
    pub fn tolerances(&self, own_rel: f64, own_abs: f64) -> (f64, f64) {
        match (self.tol_rel, self.tol_abs) {
            (None, None) => (own_rel, own_abs),
            (r, a) => (r.unwrap_or(0.0), a.unwrap_or(0.0)),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    SkippedPole,
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::SkippedPole => "skipped_pole",
        })
    }
}

/// One two-sided comparison at one grid point.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub id: String,
    #[serde(serialize_with = "ser_params")]
    pub params: BTreeMap<String, f64>,
    #[serde(serialize_with = "ser_num")]
    pub lhs: f64,
    #[serde(serialize_with = "ser_num")]
    pub rhs: f64,
    #[serde(serialize_with = "ser_num")]
    pub abs_err: f64,
    #[serde(serialize_with = "ser_num")]
    pub rel_err: f64,
    pub status: Status,
    pub terms_used: usize,
    pub method: String,
    #[serde(serialize_with = "ser_num")]
    pub elapsed_ms: f64,
}

impl VerificationReport {
    /// `|lhs - rhs|` and its size relative to `|rhs|`.
    pub fn errors(lhs: f64, rhs: f64) -> (f64, f64) {
        let abs = (lhs - rhs).abs();
        let rel = if abs == 0.0 { 0.0 } else { abs / rhs.abs() };
        (abs, rel)
    }

    pub fn params_label(&self) -> String {
        self.params
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
}

impl Summary {
    pub fn tally(reports: &[VerificationReport]) -> Self {
        reports.iter().fold(Summary::default(), |mut s, r| {
            match r.status {
                Status::Pass => s.pass += 1,
                Status::Fail => s.fail += 1,
                Status::SkippedPole => s.skipped += 1,
            }
            s
        })
    }
}

/// The configuration as echoed into a report document.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConfigEcho {
    #[serde(serialize_with = "ser_opt_num")]
    pub tol_rel: Option<f64>,
    #[serde(serialize_with = "ser_opt_num")]
    pub tol_abs: Option<f64>,
    pub max_terms: usize,
    pub fl_partial_n: usize,
    #[serde(serialize_with = "ser_num")]
    pub quad_tol: f64,
    pub workers: usize,
}

impl From<&ToleranceConfig> for ConfigEcho {
    fn from(c: &ToleranceConfig) -> Self {
        Self {
            tol_rel: c.tol_rel,
            tol_abs: c.tol_abs,
            max_terms: c.max_terms,
            fl_partial_n: c.fl_partial_n,
            quad_tol: c.quad_tol,
            workers: c.workers,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportDocument {
    pub version: String,
    pub timestamp: String,
    pub config: ConfigEcho,
    pub reports: Vec<VerificationReport>,
    pub summary: Summary,
}

impl ReportDocument {
    pub fn new(
        version: impl Into<String>,
        timestamp: impl Into<String>,
        config: &ToleranceConfig,
        reports: Vec<VerificationReport>,
    ) -> Self {
        let summary = Summary::tally(&reports);
        Self {
            version: version.into(),
            timestamp: timestamp.into(),
            config: config.into(),
            reports,
            summary,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }

    pub fn write_json(&self, mut out: impl Write) -> io::Result<()> {
        out.write_all(self.to_json().as_bytes())?;
        out.write_all(b"\n")
    }
}

/// 17 significant digits, or `None` for non-finite values.
pub fn format_num(x: f64) -> Option<String> {
    x.is_finite().then(|| format!("{x:.16e}"))
}

fn ser_num<S: Serializer>(x: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    match format_num(*x) {
        Some(text) => RawValue::from_string(text)
            .map_err(serde::ser::Error::custom)?
            .serialize(s),
        None => s.serialize_none(),
    }
}

fn ser_opt_num<S: Serializer>(x: &Option<f64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match x {
        Some(v) => ser_num(v, s),
        None => s.serialize_none(),
    }
}

fn ser_params<S: Serializer>(
    p: &BTreeMap<String, f64>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    struct Num(f64);
    impl Serialize for Num {
        fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
            ser_num(&self.0, s)
        }
    }
    let mut map = s.serialize_map(Some(p.len()))?;
    for (k, v) in p {
        map.serialize_entry(k, &Num(*v))?;
    }
    map.end()
}

/// One CSV row per report.
pub fn write_reports_csv(reports: &[VerificationReport], out: impl Write) -> io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record([
        "id",
        "params",
        "lhs",
        "rhs",
        "abs_err",
        "rel_err",
        "status",
        "terms_used",
        "method",
        "elapsed_ms",
    ])?;
    let num = |x: f64| format_num(x).unwrap_or_default();
    for r in reports {
        w.write_record([
            r.id.clone(),
            r.params_label(),
            num(r.lhs),
            num(r.rhs),
            num(r.abs_err),
            num(r.rel_err),
            r.status.to_string(),
            r.terms_used.to_string(),
            r.method.clone(),
            num(r.elapsed_ms),
        ])?;
    }
    w.flush()
}
