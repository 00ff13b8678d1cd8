//! Newline-delimited JSON dataset: one row per admissible peak set.

use std::io::Write;

use anyhow::{Context, Result};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use peakpoly_core::{admissible_sets, root_report, PeakPolys, PeakSet, Tolerances};

use crate::json::{Float, Int};

pub const SCHEMA: &str = "peakpoly-dataset";
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RootKind {
    ExactInteger,
    Numerical,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RootEntry {
    pub re: Float,
    pub im: Float,
    pub kind: RootKind,
    pub residual: Float,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DatasetRow {
    #[serde(rename = "S")]
    pub s: Vec<u32>,
    /// Coefficients in the basis `C(x, j)`.
    pub poly_binomial_c0: Vec<Int>,
    /// `[numerator, denominator]` of the coefficient of `x^i`.
    pub poly_monomial: Vec<(Int, Int)>,
    /// `(Δ^j p_S)(m)` for `j = 0..=m`.
    pub diffs_at_m: Vec<Int>,
    pub roots: Vec<RootEntry>,
    pub certified: bool,
}

impl DatasetRow {
    pub fn set(&self) -> PeakSet {
        PeakSet::new(self.s.iter().copied())
    }

    /// Shape checks a consumer can rely on.
    pub fn check(&self) -> std::result::Result<(), String> {
        let s = self.set();
        if s.is_empty() || !s.is_admissible() || s.elements() != self.s.as_slice() {
            return Err(format!("bad set {:?}", self.s));
        }
        let m = s.largest().unwrap() as usize;
        if self.diffs_at_m.len() != m + 1 {
            return Err(format!("{} differences for m = {}", self.diffs_at_m.len(), m));
        }
        if !self.diffs_at_m[0].0.is_zero() || !self.diffs_at_m[m].0.is_zero() {
            return Err(String::from("first or last difference is nonzero"));
        }
        if self.roots.len() != m - 1 {
            return Err(format!("{} roots for degree {}", self.roots.len(), m - 1));
        }
        if self.poly_binomial_c0.len() != m || self.poly_monomial.len() != m {
            return Err(String::from("coefficient count does not match degree"));
        }
        if self.poly_monomial.iter().any(|(_, d)| !d.0.is_positive()) {
            return Err(String::from("nonpositive denominator"));
        }
        Ok(())
    }
}

/// Assembles the row for `s`; fails if the root iteration does not converge.
pub fn build_row(pp: &mut PeakPolys, s: &PeakSet, tol: &Tolerances) -> Result<DatasetRow> {
    let p = pp.poly(s);
    let m = s.largest().context("empty peak set")? as i64;
    let monomial = p.to_monomial();
    let at_m = p.recenter(m);
    let report = root_report(pp, s, tol.residual).with_context(|| format!("roots of {}", s))?;

    let mut roots: Vec<RootEntry> = report
        .exact_integer_roots
        .iter()
        .map(|&r| RootEntry {
            re: Float(r as f64),
            im: Float(0.0),
            kind: RootKind::ExactInteger,
            residual: Float(0.0),
        })
        .chain(report.residual_roots.iter().map(|r| RootEntry {
            re: Float(r.re),
            im: Float(r.im),
            kind: RootKind::Numerical,
            residual: Float(r.residual),
        }))
        .collect();
    roots.sort_by(|a, b| a.re.0.total_cmp(&b.re.0).then(a.im.0.total_cmp(&b.im.0)));

    Ok(DatasetRow {
        s: s.elements().to_vec(),
        poly_binomial_c0: p.coeffs().iter().cloned().map(Int).collect(),
        poly_monomial: monomial
            .coeffs()
            .iter()
            .map(|c| (Int(c.numer().clone()), Int(c.denom().clone())))
            .collect(),
        diffs_at_m: (0..=m as usize).map(|j| Int(at_m.coeff(j))).collect(),
        roots,
        certified: report.certified,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Header {
    pub schema: String,
    pub version: u32,
    pub max_peak: u32,
    pub residual_tol: Float,
    pub order: String,
    pub fields: Vec<(String, String)>,
}

pub fn header(max_peak: u32, tol: &Tolerances) -> Header {
    let fields = [
        ("S", "peak set, increasing"),
        (
            "poly_binomial_c0",
            "integer coefficients of p_S in the basis C(x, j), j = 0..deg",
        ),
        (
            "poly_monomial",
            "coefficient of x^i as [numerator, denominator], i = 0..deg",
        ),
        ("diffs_at_m", "(Δ^j p_S)(max S) for j = 0..max S"),
        (
            "roots",
            "all max S - 1 roots sorted by (re, im); kind exact-integer or numerical; \
             residual is |p(z)| for the monic deflated polynomial",
        ),
        (
            "certified",
            "numerical roots passed the residual and coefficient checks",
        ),
    ];
    Header {
        schema: String::from(SCHEMA),
        version: SCHEMA_VERSION,
        max_peak,
        residual_tol: Float(tol.residual),
        order: String::from("max(S) ascending, then lexicographic"),
        fields: fields
            .iter()
            .map(|(k, v)| (String::from(*k), String::from(*v)))
            .collect(),
    }
}

/// Every admissible set with `max <= max_peak`, in dataset order.
pub fn dataset_sets(max_peak: u32) -> Vec<PeakSet> {
    admissible_sets(max_peak)
}

/// Builds all rows on the current rayon pool, in dataset order.
pub fn build_rows(max_peak: u32, tol: &Tolerances) -> Result<Vec<DatasetRow>> {
    dataset_sets(max_peak)
        .par_iter()
        .map_init(PeakPolys::new, |pp, s| build_row(pp, s, tol))
        .collect()
}

/// Writes the header line and one line per row.
pub fn write_rows<W: Write + ?Sized>(out: &mut W, max_peak: u32, tol: &Tolerances, rows: &[DatasetRow]) -> Result<()> {
    writeln!(out, "{}", serde_json::to_string(&header(max_peak, tol))?).context("writing dataset header")?;
    for row in rows {
        writeln!(out, "{}", serde_json::to_string(row)?).context("writing dataset row")?;
    }
    out.flush().context("flushing dataset")
}

/// [`build_rows`] then [`write_rows`]; returns the row count.
pub fn write_dataset<W: Write + ?Sized>(out: &mut W, max_peak: u32, tol: &Tolerances) -> Result<usize> {
    let rows = build_rows(max_peak, tol)?;
    write_rows(out, max_peak, tol, &rows)?;
    Ok(rows.len())
}

/// Exact value of an [`Int`] column, for callers that want plain `BigInt`s.
pub fn ints(v: &[Int]) -> Vec<BigInt> {
    v.iter().map(|i| i.0.clone()).collect()
}
