//! Serialized representation bundles.

use std::fmt::Write as _;
use std::str::FromStr;

use num_rational::BigRational;
use qsorep::algebra_check::SuiteReport;
use qsorep::{QMode, RepBundle};
use serde::{Deserialize, Serialize};

use crate::CliError;

pub const SCHEMA_VERSION: &str = "1";

/// How `q` was given on the command line.
#[derive(Debug, Clone, PartialEq)]
pub enum QSpec {
    Real(f64),
    /// `q = exp(i h)`.
    Polar(f64),
    /// Exact `s = q^(1/2)`.
    Exact(BigRational),
    Classical,
}

impl QSpec {
    pub fn mode(&self) -> Result<QMode, CliError> {
        let mode = match self {
            QSpec::Real(q) => QMode::real(*q),
            QSpec::Polar(h) => QMode::polar(*h),
            QSpec::Exact(s) => QMode::exact(s.clone()),
            QSpec::Classical => Ok(QMode::classical()),
        };
        mode.map_err(|e| CliError::Usage(e.to_string()))
    }

    pub fn to_field(&self) -> QField {
        let (mode, value) = match self {
            QSpec::Real(q) => ("real", format!("{q:?}")),
            QSpec::Polar(h) => ("polar", format!("{h:?}")),
            QSpec::Exact(s) => ("exact", s.to_string()),
            QSpec::Classical => ("classical", "1".to_string()),
        };
        QField {
            mode: mode.to_string(),
            value,
        }
    }

    pub fn from_field(field: &QField) -> Result<Self, CliError> {
        let bad = || CliError::Usage(format!("bad q field {}={}", field.mode, field.value));
        Ok(match field.mode.as_str() {
            "real" => QSpec::Real(field.value.parse().map_err(|_| bad())?),
            "polar" => QSpec::Polar(field.value.parse().map_err(|_| bad())?),
            "exact" => QSpec::Exact(BigRational::from_str(&field.value).map_err(|_| bad())?),
            "classical" => QSpec::Classical,
            _ => return Err(bad()),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QField {
    pub mode: String,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeneratorExport {
    pub k: usize,
    /// `[row, col, re, im]`
    pub entries: Vec<(usize, usize, f64, f64)>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckExport {
    pub relation: String,
    pub pair: (usize, usize),
    pub residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExportBundle {
    pub schema_version: String,
    /// Twice the signature entries.
    pub signature: Vec<i64>,
    pub n: usize,
    pub q: QField,
    /// Pattern rows from level `n` down to 2, as twice-integers.
    pub basis: Vec<Vec<Vec<i64>>>,
    pub generators: Vec<GeneratorExport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub checks: Option<Vec<CheckExport>>,
}

impl ExportBundle {
    pub fn new(bundle: &RepBundle, q: &QSpec, checks: Option<&SuiteReport>) -> Self {
        ExportBundle {
            schema_version: SCHEMA_VERSION.to_string(),
            signature: bundle.signature.twice_entries(),
            n: bundle.n(),
            q: q.to_field(),
            basis: bundle
                .basis
                .patterns()
                .iter()
                .map(|p| p.twice_rows())
                .collect(),
            generators: bundle
                .generators
                .iter()
                .map(|g| GeneratorExport {
                    k: g.k,
                    entries: g
                        .entries
                        .iter()
                        .map(|&(r, c, v)| (r, c, v.re, v.im))
                        .collect(),
                })
                .collect(),
            checks: checks.map(|s| {
                s.reports
                    .iter()
                    .map(|r| CheckExport {
                        relation: r.relation.to_string(),
                        pair: r.pair,
                        residual: r.residual,
                        tolerance: r.tolerance,
                        pass: r.pass,
                    })
                    .collect()
            }),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string(self).expect("plain data serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Triplet text: a `%` header, then per generator a `generator k nnz`
    /// line followed by `row col re im` lines.
    pub fn to_coo_text(&self) -> String {
        let mut out = String::new();
        let sig: Vec<String> = self.signature.iter().map(|t| t.to_string()).collect();
        let _ = writeln!(out, "% qsorep coo-text schema {}", self.schema_version);
        let _ = writeln!(
            out,
            "% n {} signature_twice {} q {} {} dim {}",
            self.n,
            sig.join(","),
            self.q.mode,
            self.q.value,
            self.dim()
        );
        for g in &self.generators {
            let _ = writeln!(out, "generator {} {}", g.k, g.entries.len());
            for (r, c, re, im) in &g.entries {
                let _ = writeln!(out, "{r} {c} {re:?} {im:?}");
            }
        }
        out
    }
}
