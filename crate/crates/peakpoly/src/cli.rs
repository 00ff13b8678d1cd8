//! `peakpoly {poly|table|count|roots|verify|dataset}`.

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use peakpoly_core::{root_report, PeakPolys, PeakSet, Tolerances};

use crate::census::oracle_cap;
use crate::dataset::{build_rows, write_rows};
use crate::json;
use crate::sweep::{run_sweep, RunConfig, Summary};
use crate::UsageError;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INCONCLUSIVE: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "peakpoly", version, about = "Peak polynomials of permutations")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print p_S in the binomial and monomial bases.
    Poly(SetArgs),
    /// Print the forward difference table (Δ^j p_S)(k), 0 <= j, k <= max S.
    Table(SetArgs),
    /// Count permutations of [n] with peak set S.
    Count(CountArgs),
    /// Exact and numerical roots of p_S.
    Roots(RootsArgs),
    /// Check every admissible set up to --max-peak; one JSON line per set.
    Verify(SweepArgs),
    /// Write the NDJSON dataset for every admissible set up to --max-peak.
    Dataset(SweepArgs),
}

#[derive(Debug, Args)]
pub struct SetArgs {
    /// Peak set as comma-separated integers, e.g. 2,6,10
    #[arg(long = "set", value_name = "a,b,c")]
    pub set: String,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct CountArgs {
    /// Peak set as comma-separated integers; empty for no peaks
    #[arg(long = "set", value_name = "a,b,c")]
    pub set: String,
    #[arg(long, value_name = "N")]
    pub n: u32,
    /// Count signed permutations instead.
    #[arg(long)]
    pub signed: bool,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct RootsArgs {
    #[arg(long = "set", value_name = "a,b,c")]
    pub set: String,
    /// Residual tolerance for certifying numerical roots.
    #[arg(long, value_name = "T", default_value_t = 1e-9)]
    pub tol: f64,
    /// Write re,im,kind rows for a scatter plot.
    #[arg(long, value_name = "PATH")]
    pub csv: Option<PathBuf>,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long = "max-peak", value_name = "M", default_value_t = 10)]
    pub max_peak: u32,
    /// Compare against brute-force censuses of S_n for n up to N.
    #[arg(long = "oracle-n", value_name = "N", default_value_t = 8)]
    pub oracle_n: u32,
    /// Region tolerance for the root checks.
    #[arg(long, value_name = "T", default_value_t = 1e-6)]
    pub tol: f64,
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Worker threads; 0 uses every core.
    #[arg(long, value_name = "K", default_value_t = 0)]
    pub workers: usize,
    /// Accepted for symmetry with the other commands; output is always JSON.
    #[arg(long)]
    pub json: bool,
}

impl SweepArgs {
    pub fn config(&self) -> Result<RunConfig> {
        let cfg = RunConfig {
            max_peak: self.max_peak,
            oracle_n_max: self.oracle_n,
            oracle_cap: oracle_cap()?,
            tol: Tolerances {
                region: self.tol,
                ..Tolerances::default()
            },
            out: self.out.clone(),
            workers: self.workers,
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

/// Parses `"2,6,10"`. An empty string is the empty set.
pub fn parse_set(text: &str) -> std::result::Result<PeakSet, UsageError> {
    let mut values = Vec::new();
    for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let v: i64 = part
            .parse()
            .map_err(|_| UsageError(format!("--set: {:?} is not an integer", part)))?;
        if v < 0 || v > u32::MAX as i64 {
            return Err(UsageError(format!("--set: {} is out of range", v)));
        }
        if values.contains(&v) {
            return Err(UsageError(format!("--set: {} appears twice", v)));
        }
        values.push(v);
    }
    Ok(PeakSet::new(values.into_iter().map(|v| v as u32)))
}

fn admissible_nonempty(text: &str) -> Result<PeakSet> {
    let s = parse_set(text)?;
    if s.is_empty() {
        return Err(UsageError(String::from("--set must name at least one peak")).into());
    }
    if !s.is_admissible() {
        return Err(UsageError(format!(
            "peak set {} is not admissible: peaks must be >= 2 with no two consecutive",
            s
        ))
        .into());
    }
    Ok(s)
}

fn open_out(path: &Path) -> Result<BufWriter<File>> {
    Ok(BufWriter::new(
        File::create(path).with_context(|| format!("creating {}", path.display()))?,
    ))
}

fn cmd_poly(a: &SetArgs, out: &mut dyn Write) -> Result<i32> {
    let s = admissible_nonempty(&a.set)?;
    let p = PeakPolys::new().poly(&s);
    let mono = p.to_monomial();
    if a.json {
        let v = json!({
            "S": json::set(&s),
            "degree": p.degree(),
            "binomial_center": p.center(),
            "binomial": p.coeffs().iter().map(json::big).collect::<Vec<_>>(),
            "monomial": mono.coeffs().iter().map(|c| json!([json::big(c.numer()), json::big(c.denom())])).collect::<Vec<_>>(),
        });
        writeln!(out, "{}", v)?;
    } else {
        writeln!(out, "S = {}", s)?;
        writeln!(out, "degree {}", p.degree().unwrap_or(0))?;
        writeln!(out, "binomial: {}", p)?;
        writeln!(out, "monomial: {}", mono)?;
    }
    Ok(EXIT_OK)
}

fn cmd_table(a: &SetArgs, out: &mut dyn Write) -> Result<i32> {
    let s = admissible_nonempty(&a.set)?;
    let t = PeakPolys::new().difference_table(&s)?;
    if a.json {
        let rows: Vec<Value> = t
            .rows()
            .iter()
            .map(|r| Value::Array(r.iter().map(json::big).collect()))
            .collect();
        writeln!(out, "{}", json!({ "S": json::set(&s), "rows": rows }))?;
        return Ok(EXIT_OK);
    }
    let size = t.size();
    let cells: Vec<Vec<String>> = t
        .rows()
        .iter()
        .map(|r| r.iter().map(|v| v.to_string()).collect())
        .collect();
    let width = cells
        .iter()
        .flatten()
        .map(String::len)
        .chain([3, size.to_string().len()])
        .max()
        .unwrap();
    write!(out, "{:>w$} |", "j,k", w = width)?;
    for k in 0..size {
        write!(out, " {:>w$}", k, w = width)?;
    }
    writeln!(out)?;
    writeln!(out, "{}", "-".repeat((width + 1) * (size + 1) + 1))?;
    for (j, row) in cells.iter().enumerate() {
        write!(out, "{:>w$} |", j, w = width)?;
        for c in row {
            write!(out, " {:>w$}", c, w = width)?;
        }
        writeln!(out)?;
    }
    Ok(EXIT_OK)
}

fn cmd_count(a: &CountArgs, out: &mut dyn Write) -> Result<i32> {
    let s = parse_set(&a.set)?;
    if !s.is_admissible() {
        return Err(UsageError(format!("peak set {} is not admissible", s)).into());
    }
    let mut pp = PeakPolys::new();
    let count = if a.signed {
        pp.count_signed(&s, a.n)
    } else {
        pp.count_perms(&s, a.n)
    };
    if a.json {
        let v = json!({ "S": json::set(&s), "n": a.n, "signed": a.signed, "count": json::big(&count) });
        writeln!(out, "{}", v)?;
    } else {
        writeln!(out, "{}", count)?;
    }
    Ok(EXIT_OK)
}

fn cmd_roots(a: &RootsArgs, out: &mut dyn Write) -> Result<i32> {
    let s = admissible_nonempty(&a.set)?;
    if a.tol.is_nan() || a.tol <= 0.0 {
        return Err(UsageError(String::from("--tol must be positive")).into());
    }
    let report = root_report(&mut PeakPolys::new(), &s, a.tol)?;
    let code = if report.certified { EXIT_OK } else { EXIT_INCONCLUSIVE };
    if let Some(path) = &a.csv {
        let mut w = open_out(path)?;
        writeln!(w, "re,im,kind")?;
        for &r in &report.exact_integer_roots {
            writeln!(
                w,
                "{},{},exact-integer",
                json::float_text(r as f64),
                json::float_text(0.0)
            )?;
        }
        for r in &report.residual_roots {
            writeln!(w, "{},{},numerical", json::float_text(r.re), json::float_text(r.im))?;
        }
        w.flush().with_context(|| format!("writing {}", path.display()))?;
    }
    if a.json {
        let numeric: Vec<Value> = report
            .residual_roots
            .iter()
            .map(|r| json!({ "re": json::float(r.re), "im": json::float(r.im), "residual": json::float(r.residual) }))
            .collect();
        let v = json!({
            "S": json::set(&s),
            "exact_integer_roots": report.exact_integer_roots,
            "residual_roots": numeric,
            "certified": report.certified,
        });
        writeln!(out, "{}", v)?;
    } else {
        writeln!(out, "S = {}", s)?;
        let exact: Vec<String> = report.exact_integer_roots.iter().map(i64::to_string).collect();
        writeln!(out, "exact integer roots: {}", exact.join(" "))?;
        for r in &report.residual_roots {
            writeln!(
                out,
                "{} {:+}i  residual {:.1e}",
                json::float_text(r.re),
                r.im,
                r.residual
            )?;
        }
        if !report.certified {
            writeln!(out, "numerical roots NOT certified")?;
        }
    }
    Ok(code)
}

fn cmd_verify(a: &SweepArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let cfg = a.config()?;
    let reports = run_sweep(&cfg)?;
    let summary = Summary::from_reports(&reports);
    let mut file;
    let sink: &mut dyn Write = match &cfg.out {
        Some(path) => {
            file = open_out(path)?;
            &mut file
        }
        None => out,
    };
    for r in &reports {
        writeln!(sink, "{}", r.to_json())?;
    }
    writeln!(sink, "{}", summary.to_json())?;
    sink.flush()?;
    writeln!(err, "{} sets, max peak {}", summary.sets, cfg.max_peak)?;
    for (name, c) in &summary.counts {
        writeln!(
            err,
            "{:<32} pass {:>5}  fail {:>3}  inconclusive {:>3}  skip {:>5}",
            name, c[0], c[1], c[2], c[3]
        )?;
    }
    Ok(summary.exit_code())
}

fn cmd_dataset(a: &SweepArgs, out: &mut dyn Write) -> Result<i32> {
    let cfg = a.config()?;
    let rows = cfg.pool()?.install(|| build_rows(cfg.max_peak, &cfg.tol))?;
    match &cfg.out {
        Some(path) => write_rows(&mut open_out(path)?, cfg.max_peak, &cfg.tol, &rows)?,
        None => write_rows(out, cfg.max_peak, &cfg.tol, &rows)?,
    }
    Ok(EXIT_OK)
}

/// Runs one invocation and returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{}", text)
            } else {
                write!(out, "{}", text)
            };
            return e.exit_code();
        }
    };
    let result = match &cli.command {
        Command::Poly(a) => cmd_poly(a, out),
        Command::Table(a) => cmd_table(a, out),
        Command::Count(a) => cmd_count(a, out),
        Command::Roots(a) => cmd_roots(a, out),
        Command::Verify(a) => cmd_verify(a, out, err),
        Command::Dataset(a) => cmd_dataset(a, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {:#}", e);
            EXIT_USAGE
        }
    }
}
