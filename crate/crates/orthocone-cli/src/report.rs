//! Report rows and writers for the verification commands.
//!
//! Every command emits one row per checked identity with the fixed column
//! set `(check_id, n, m, ell, params, residual, tolerance, status)`. CSV
//! output uses RFC-4180 quoting; JSON mirrors the rows as an array of
//! objects with the same keys. Reports carry no timestamps, so identical
//! configurations produce byte-identical files.

use std::fs::File;
use std::io::Write;
use std::path::Path;

use anyhow::{Context, Result};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Status {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
}

impl Status {
    fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
        }
    }
}

/// One checked identity. `residual` is the measured quantity, `tolerance`
/// the threshold applied to it; whether the check demands the residual to
/// stay below or above the threshold is decided at construction and
/// recorded in `status`.
#[derive(Debug, Clone, Serialize)]
pub struct ReportRow {
    pub check_id: &'static str,
    pub n: usize,
    pub m: usize,
    pub ell: usize,
    pub params: String,
    pub residual: f64,
    pub tolerance: f64,
    pub status: Status,
}

impl ReportRow {
    /// A row that passes when `residual < tolerance`.
    pub fn upper(
        check_id: &'static str,
        n: usize,
        m: usize,
        ell: usize,
        params: String,
        residual: f64,
        tolerance: f64,
    ) -> Self {
        let status = if residual < tolerance {
            Status::Pass
        } else {
            Status::Fail
        };
        ReportRow {
            check_id,
            n,
            m,
            ell,
            params,
            residual,
            tolerance,
            status,
        }
    }

    /// A row that passes when `residual > tolerance`; used for checks
    /// whose content is that a quantity stays away from zero, such as the
    /// not-an-eigenfunction floor.
    pub fn lower(
        check_id: &'static str,
        n: usize,
        m: usize,
        ell: usize,
        params: String,
        residual: f64,
        tolerance: f64,
    ) -> Self {
        let status = if residual > tolerance {
            Status::Pass
        } else {
            Status::Fail
        };
        ReportRow {
            check_id,
            n,
            m,
            ell,
            params,
            residual,
            tolerance,
            status,
        }
    }
}

pub fn write_csv(rows: &[ReportRow], path: &Path) -> Result<()> {
    let mut w = csv::Writer::from_path(path)
        .with_context(|| format!("cannot create report file {}", path.display()))?;
    w.write_record([
        "check_id",
        "n",
        "m",
        "ell",
        "params",
        "residual",
        "tolerance",
        "status",
    ])?;
    for r in rows {
        w.write_record([
            r.check_id,
            &r.n.to_string(),
            &r.m.to_string(),
            &r.ell.to_string(),
            &r.params,
            &format!("{:e}", r.residual),
            &format!("{:e}", r.tolerance),
            r.status.as_str(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_json(rows: &[ReportRow], path: &Path) -> Result<()> {
    let mut f = File::create(path)
        .with_context(|| format!("cannot create report file {}", path.display()))?;
    let body = serde_json::to_string_pretty(rows)?;
    f.write_all(body.as_bytes())?;
    f.write_all(b"\n")?;
    Ok(())
}
