//! Batch verification over every admissible set up to a bound.

use std::collections::BTreeMap;
use std::path::PathBuf;

use anyhow::Result;
use rayon::prelude::*;
use serde_json::{json, Value};

use peakpoly_core::gap3::gap3_positions;
use peakpoly_core::identities::EXACT_CHECKS;
use peakpoly_core::oracle::{count_inclusion_exclusion, PeakSetCensus};
use peakpoly_core::roots::match_translated;
use peakpoly_core::{
    admissible_sets, root_report, verify, Check, Outcome, PeakPolys, PeakSet, RootReport, Tolerances, Witness,
};

use crate::census::parallel_census;
use crate::json;
use crate::UsageError;

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub max_peak: u32,
    pub oracle_n_max: u32,
    pub oracle_cap: u32,
    pub tol: Tolerances,
    pub out: Option<PathBuf>,
    /// 0 lets the pool pick.
    pub workers: usize,
}

impl RunConfig {
    pub fn new(max_peak: u32) -> Self {
        RunConfig {
            max_peak,
            oracle_n_max: 8,
            oracle_cap: peakpoly_core::oracle::DEFAULT_CENSUS_CAP,
            tol: Tolerances::default(),
            out: None,
            workers: 0,
        }
    }

    pub fn validate(&self) -> std::result::Result<(), UsageError> {
        if self.max_peak < 3 {
            return Err(UsageError(format!(
                "--max-peak must be at least 3, got {}",
                self.max_peak
            )));
        }
        if self.oracle_n_max > self.oracle_cap {
            return Err(UsageError(format!(
                "--oracle-n {} exceeds the census cap {} (raise it with {})",
                self.oracle_n_max,
                self.oracle_cap,
                crate::census::CAP_VAR
            )));
        }
        if !(self.tol.region > 0.0 && self.tol.residual > 0.0) {
            return Err(UsageError(String::from("tolerances must be positive")));
        }
        Ok(())
    }

    pub fn pool(&self) -> Result<rayon::ThreadPool> {
        Ok(rayon::ThreadPoolBuilder::new().num_threads(self.workers).build()?)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
    Skip,
}

impl Status {
    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Inconclusive => "inconclusive",
            Status::Skip => "skip",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckRecord {
    pub name: &'static str,
    pub status: Status,
    pub numerical: bool,
    pub witness: Option<Value>,
}

impl CheckRecord {
    fn exact(name: &'static str, r: std::result::Result<(), String>) -> Self {
        match r {
            Ok(()) => CheckRecord {
                name,
                status: Status::Pass,
                numerical: false,
                witness: None,
            },
            Err(detail) => CheckRecord {
                name,
                status: Status::Fail,
                numerical: false,
                witness: Some(json!({ "detail": detail })),
            },
        }
    }

    fn skip(name: &'static str) -> Self {
        CheckRecord {
            name,
            status: Status::Skip,
            numerical: false,
            witness: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SetReport {
    pub set: PeakSet,
    pub checks: Vec<CheckRecord>,
}

impl SetReport {
    pub fn worst(&self) -> Status {
        self.checks
            .iter()
            .map(|c| c.status)
            .filter(|s| *s != Status::Skip)
            .max()
            .unwrap_or(Status::Pass)
    }

    pub fn to_json(&self) -> Value {
        let checks: Vec<Value> = self
            .checks
            .iter()
            .map(|c| {
                let mut v = json!({
                    "name": c.name,
                    "status": c.status.label(),
                    "numerical": c.numerical,
                });
                if let Some(w) = &c.witness {
                    v["witness"] = w.clone();
                }
                v
            })
            .collect();
        json!({
            "S": json::set(&self.set),
            "status": self.worst().label(),
            "checks": checks,
        })
    }
}

pub fn witness_json(w: &Witness) -> Value {
    match w {
        Witness::Coefficient { index, value } => json!({ "coefficient": index, "value": json::big(value) }),
        Witness::Root { re, im } => json!({ "re": json::float(*re), "im": json::float(*im) }),
        Witness::Classification { all_real, in_family } => json!({ "all_real": all_real, "in_family": in_family }),
    }
}

fn oracle_record(pp: &mut PeakPolys, s: &PeakSet, censuses: &BTreeMap<u32, PeakSetCensus>) -> CheckRecord {
    let m = s.largest().unwrap();
    let mut tested = false;
    for (&n, census) in censuses.range(m + 1..) {
        tested = true;
        let brute = census.get(s);
        let formula = pp.count_perms(s, n);
        let ie = match count_inclusion_exclusion(s, n) {
            Ok(v) => v,
            Err(e) => return CheckRecord::exact("oracle-equivalence", Err(e.to_string())),
        };
        if brute != formula || brute != ie {
            return CheckRecord::exact(
                "oracle-equivalence",
                Err(format!(
                    "n = {}: census {}, formula {}, inclusion-exclusion {}",
                    n, brute, formula, ie
                )),
            );
        }
    }
    if tested {
        CheckRecord::exact("oracle-equivalence", Ok(()))
    } else {
        CheckRecord::skip("oracle-equivalence")
    }
}

/// Degree bookkeeping and separation of exact and numerical roots.
pub fn root_accounting(report: &RootReport, tol: f64) -> std::result::Result<(), String> {
    let m = report.set.largest().unwrap() as usize;
    if report.degree() != m - 1 {
        return Err(format!("{} roots for degree {}", report.degree(), m - 1));
    }
    for r in &report.residual_roots {
        for &e in &report.exact_integer_roots {
            if (r.re - e as f64).hypot(r.im) <= tol {
                return Err(format!(
                    "numerical root {}{:+}i duplicates exact root {}",
                    r.re, r.im, e
                ));
            }
        }
    }
    Ok(())
}

/// Residual roots of `p_S` are those of `p_{S_R}` moved right by `m + 1`,
/// and residual roots of `p_{S+1}` are those of `p_S` moved right by one.
pub fn gap3_root_translation(pp: &mut PeakPolys, s: &PeakSet, tol: &Tolerances) -> std::result::Result<(), String> {
    let Some(&m) = gap3_positions(s).first() else {
        return Ok(());
    };
    let slack = 10.0 * tol.region;
    let err = |e: peakpoly_core::Error| e.to_string();
    let here = root_report(pp, s, tol.residual).map_err(err)?;
    let right = root_report(pp, &s.shifted_down(m + 1), tol.residual).map_err(err)?;
    let up = root_report(pp, &s.shifted(1), tol.residual).map_err(err)?;
    match_translated(&right.residual_roots, &here.residual_roots, (m + 1) as f64, slack)
        .map_err(|z| format!("right part root moved to {} has no partner", z))?;
    match_translated(&here.residual_roots, &up.residual_roots, 1.0, slack)
        .map_err(|z| format!("root moved to {} has no partner in the shifted set", z))?;
    Ok(())
}

/// Every check for one set.
pub fn check_set(
    pp: &mut PeakPolys,
    s: &PeakSet,
    censuses: &BTreeMap<u32, PeakSetCensus>,
    tol: &Tolerances,
) -> SetReport {
    let mut checks = Vec::new();
    for (name, check) in EXACT_CHECKS {
        checks.push(CheckRecord::exact(
            name,
            check(pp, s).map_err(|v| format!("{}: {}", v.identity, v.detail)),
        ));
    }
    checks.push(oracle_record(pp, s, censuses));

    match root_report(pp, s, tol.residual) {
        Ok(report) => {
            let mut rec = CheckRecord::exact("root-accounting", root_accounting(&report, tol.region));
            rec.numerical = !report.residual_roots.is_empty();
            checks.push(rec);
        }
        Err(e) => checks.push(CheckRecord {
            name: "root-accounting",
            status: Status::Inconclusive,
            numerical: true,
            witness: Some(json!({ "detail": e.to_string() })),
        }),
    }
    if gap3_positions(s).is_empty() {
        checks.push(CheckRecord::skip("gap3-root-translation"));
    } else {
        let mut rec = CheckRecord::exact("gap3-root-translation", gap3_root_translation(pp, s, tol));
        rec.numerical = true;
        checks.push(rec);
    }

    match verify(pp, s, &Check::ALL, tol) {
        Ok(verdicts) => {
            for v in verdicts {
                let (status, witness) = match &v.outcome {
                    Outcome::Pass => (Status::Pass, None),
                    Outcome::Fail(w) => (Status::Fail, Some(witness_json(w))),
                    Outcome::Inconclusive(why) => (Status::Inconclusive, Some(json!({ "detail": why }))),
                };
                checks.push(CheckRecord {
                    name: v.check.name(),
                    status,
                    numerical: v.numerical,
                    witness,
                });
            }
        }
        Err(e) => {
            for c in Check::ALL {
                checks.push(CheckRecord::exact(c.name(), Err(e.to_string())));
            }
        }
    }
    SetReport { set: s.clone(), checks }
}

/// Pass/fail/inconclusive/skip tallies per check name.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Summary {
    pub sets: usize,
    pub counts: BTreeMap<&'static str, [usize; 4]>,
}

impl Summary {
    pub fn from_reports(reports: &[SetReport]) -> Self {
        let mut s = Summary {
            sets: reports.len(),
            ..Summary::default()
        };
        for r in reports {
            for c in &r.checks {
                s.counts.entry(c.name).or_default()[c.status as usize] += 1;
            }
        }
        s
    }

    pub fn total(&self, status: Status) -> usize {
        self.counts.values().map(|c| c[status as usize]).sum()
    }

    /// 0 clean, 1 any failure, 3 inconclusive but no failure.
    pub fn exit_code(&self) -> i32 {
        if self.total(Status::Fail) > 0 {
            1
        } else if self.total(Status::Inconclusive) > 0 {
            3
        } else {
            0
        }
    }

    pub fn to_json(&self) -> Value {
        let per: serde_json::Map<String, Value> = self
            .counts
            .iter()
            .map(|(name, c)| {
                (
                    name.to_string(),
                    json!({ "pass": c[0], "fail": c[1], "inconclusive": c[2], "skip": c[3] }),
                )
            })
            .collect();
        json!({ "summary": { "sets": self.sets, "checks": per } })
    }
}

/// Censuses for `1..=oracle_n_max`, built on the current pool.
pub fn censuses(cfg: &RunConfig) -> Result<BTreeMap<u32, PeakSetCensus>> {
    (1..=cfg.oracle_n_max)
        .map(|n| Ok((n, parallel_census(n, cfg.oracle_cap)?)))
        .collect()
}

/// Runs the whole sweep; reports come back in iteration order.
pub fn run_sweep(cfg: &RunConfig) -> Result<Vec<SetReport>> {
    cfg.validate()?;
    let pool = cfg.pool()?;
    pool.install(|| {
        let censuses = censuses(cfg)?;
        let sets = admissible_sets(cfg.max_peak);
        Ok(sets
            .par_iter()
            .map_init(PeakPolys::new, |pp, s| check_set(pp, s, &censuses, &cfg.tol))
            .collect())
    })
}
