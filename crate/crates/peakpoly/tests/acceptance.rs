//! Acceptance run: one PASS/FAIL line per criterion, exit status 1 on any failure.
//!
//! Set `PEAKPOLY_ACCEPTANCE_FULL=1` for the extended run (max peak 15, census to 11).

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use peakpoly::census::parallel_census;
use peakpoly_core::gap3::gap3_positions;
use peakpoly_core::identities::{
    alternating_sum, in_gap_negation, index_roots, modulus_monotonicity, odd_gap_roots, strict_growth, symmetry,
    triple_agreement, y_intercept, Checked,
};
use peakpoly_core::oracle::{census_signed, count_inclusion_exclusion, q_count, tangent_numbers, PeakSetCensus};
use peakpoly_core::roots::match_translated;
use peakpoly_core::{
    admissible_sets, admissible_subsets_for, kasraoui_max, root_report, verify, Check, Outcome, PeakPolys, PeakSet,
    RationalPoly, Tolerances,
};

const REGION_TOL: f64 = 1e-6;
const RESIDUAL_TOL: f64 = 1e-9;
const REAL_TOL: f64 = 1e-6;
const TRANSLATION_TOL: f64 = 1e-5;
const TABLE_TIME: Duration = Duration::from_secs(1);
const MAX_PEAK: u32 = 12;
const ORACLE_N: u32 = 9;
const FULL_MAX_PEAK: u32 = 15;
const FULL_ORACLE_N: u32 = 11;
const GROWTH_SPAN: i64 = 5;
const MODULUS_EXTRA: i64 = 3;
const ALT_SUM_K: i64 = 8;
const GAP3_SAMPLES: usize = 50;
const TANGENT_K: usize = 6;
const TANGENT_CENSUS_N: u32 = 9;
const KASRAOUI_N: std::ops::RangeInclusive<u32> = 6..=10;
const SIGNED_N: u32 = 6;

const GOLDEN_TABLE: [[i64; 11]; 11] = [
    [-8, -4, 0, 2, 4, 6, 0, -18, -72, -196, 0],
    [4, 4, 2, 2, 2, -6, -18, -54, -124, 196, 3094],
    [0, -2, 0, 0, -8, -12, -36, -70, 320, 2898, 12376],
    [-2, 2, 0, -8, -4, -24, -34, 390, 2578, 9478, 26564],
    [4, -2, -8, 4, -20, -10, 424, 2188, 6900, 17086, 36376],
    [-6, -6, 12, -24, 10, 434, 1764, 4712, 10186, 19290, 33324],
    [0, 18, -36, 34, 424, 1330, 2948, 5474, 9104, 14034, 20460],
    [18, -54, 70, 390, 906, 1618, 2526, 3630, 4930, 6426, 8118],
    [-72, 124, 320, 516, 712, 908, 1104, 1300, 1496, 1692, 1888],
    [196; 11],
    [0; 11],
];

// tan x = x + x^3/3 + 2x^5/15 + 17x^7/315 + ...
const TAN_SERIES: [(i64, i64); 4] = [(1, 1), (1, 3), (2, 15), (17, 315)];
const TANGENT_VALUES: [i64; 7] = [1, 2, 16, 272, 7936, 353792, 22368256];

type Verdict = Result<String, String>;
type Criterion = (&'static str, fn(&Ctx) -> Verdict);

struct Ctx {
    max_peak: u32,
    oracle_n: u32,
    censuses: BTreeMap<u32, PeakSetCensus>,
}

impl Ctx {
    fn sets(&self) -> Vec<PeakSet> {
        admissible_sets(self.max_peak)
    }
}

fn tol() -> Tolerances {
    Tolerances {
        residual: RESIDUAL_TOL,
        region: REGION_TOL,
    }
}

fn each_set(
    sets: &[PeakSet],
    f: impl Fn(&mut PeakPolys, &PeakSet) -> Result<(), String> + Sync,
) -> Result<usize, String> {
    let errs: Vec<String> = sets
        .par_iter()
        .map_init(PeakPolys::new, |pp, s| f(pp, s).err().map(|e| format!("{}: {}", s, e)))
        .flatten()
        .collect();
    match errs.first() {
        None => Ok(sets.len()),
        Some(e) => Err(format!("{} failures, first {}", errs.len(), e)),
    }
}

fn checked(c: Checked) -> Result<(), String> {
    c.map_err(|v| format!("{}: {}", v.identity, v.detail))
}

fn golden_table(_: &Ctx) -> Verdict {
    let start = Instant::now();
    let t = PeakPolys::new()
        .difference_table(&PeakSet::new([2, 6, 10]))
        .map_err(|e| e.to_string())?;
    let took = start.elapsed();
    if t.size() != 11 {
        return Err(format!("table size {}", t.size()));
    }
    for (j, row) in GOLDEN_TABLE.iter().enumerate() {
        for (k, &v) in row.iter().enumerate() {
            if *t.get(j, k) != BigInt::from(v) {
                return Err(format!("entry ({}, {}) is {}, expected {}", j, k, t.get(j, k), v));
            }
        }
    }
    if took >= TABLE_TIME {
        return Err(format!("took {:?}", took));
    }
    Ok(format!("121 entries in {:?}", took))
}

fn oracle_equivalence(ctx: &Ctx) -> Verdict {
    let mut checked_pairs = 0;
    let mut pp = PeakPolys::new();
    for (&n, census) in &ctx.censuses {
        let fact: BigInt = (1..=n).map(BigInt::from).product();
        if census.total() != fact {
            return Err(format!("census({}) totals {}", n, census.total()));
        }
        for s in admissible_subsets_for(n) {
            let brute = census.get(&s);
            let formula = pp.count_perms(&s, n);
            let ie = count_inclusion_exclusion(&s, n).map_err(|e| e.to_string())?;
            if brute != formula || brute != ie {
                return Err(format!("{} n={}: census {} formula {} ie {}", s, n, brute, formula, ie));
            }
            checked_pairs += 1;
        }
        for s in census.counts.keys() {
            if !s.is_admissible_for(n) {
                return Err(format!("census({}) produced {}", n, s));
            }
        }
    }
    Ok(format!("{} (S, n) pairs, n <= {}", checked_pairs, ctx.oracle_n))
}

fn triple(ctx: &Ctx) -> Verdict {
    let n = each_set(&ctx.sets(), |pp, s| checked(triple_agreement(pp, s)))?;
    Ok(format!("{} sets, max <= {}", n, ctx.max_peak))
}

fn root_identities(ctx: &Ctx) -> Verdict {
    let n = each_set(&ctx.sets(), |pp, s| {
        checked(index_roots(pp, s))?;
        checked(odd_gap_roots(pp, s))?;
        checked(y_intercept(pp, s))?;
        checked(symmetry(pp, s))?;
        checked(in_gap_negation(pp, s))?;
        checked(alternating_sum(pp, s, ALT_SUM_K))?;
        checked(strict_growth(pp, s, GROWTH_SPAN))?;
        checked(modulus_monotonicity(pp, s, MODULUS_EXTRA))?;
        // the exception is exercised, not vacuous
        if s.contains(2) && s.len() >= 2 && !s.has_odd_gap() {
            let p1 = pp.eval(s, 1);
            if pp.eval(s, 3).abs() >= p1.abs() {
                return Err(String::from("exceptional pair does not violate the generic bound"));
            }
        }
        Ok(())
    })?;
    Ok(format!("8 identities on {} sets", n))
}

fn root_region(ctx: &Ctx) -> Verdict {
    let checks = [
        Check::Positivity,
        Check::BoundedRoots,
        Check::HalfPlaneImpliesPositivity,
    ];
    let n = each_set(&ctx.sets(), |pp, s| {
        let vs = verify(pp, s, &checks, &tol()).map_err(|e| e.to_string())?;
        for v in vs {
            if v.outcome != Outcome::Pass {
                return Err(format!("{}: {:?}", v.check.name(), v.outcome));
            }
        }
        Ok(())
    })?;
    Ok(format!(
        "positivity, bounded roots, half-plane implication on {} sets",
        n
    ))
}

// Restated from the classification: {2}, {2,4}, {3}, {3,5}, or S ending in
// a gap of 3, or ending in a gap of 3 followed by a gap of 2.
fn listed_family(s: &PeakSet) -> bool {
    let e = s.elements();
    if [&[2][..], &[2, 4], &[3], &[3, 5]].contains(&e) {
        return true;
    }
    let k = e.len();
    (k >= 2 && e[k - 1] - e[k - 2] == 3) || (k >= 3 && e[k - 1] - e[k - 2] == 2 && e[k - 2] - e[k - 3] == 3)
}

fn classification(ctx: &Ctx) -> Verdict {
    let members = ctx.sets().iter().filter(|s| listed_family(s)).count();
    let n = each_set(&ctx.sets(), |pp, s| {
        let report = root_report(pp, s, RESIDUAL_TOL).map_err(|e| e.to_string())?;
        let all_real = report.residual_roots.iter().all(|r| r.im.abs() <= REAL_TOL);
        if all_real != listed_family(s) {
            return Err(format!(
                "all real {} but family membership {}",
                all_real,
                listed_family(s)
            ));
        }
        if all_real && !report.residual_roots.is_empty() {
            return Err(format!(
                "{} real roots are not exact integers",
                report.residual_roots.len()
            ));
        }
        let v = verify(pp, s, &[Check::IntegralRoots], &tol()).map_err(|e| e.to_string())?;
        if v[0].outcome != Outcome::Pass {
            return Err(format!("library check: {:?}", v[0].outcome));
        }
        Ok(())
    })?;
    Ok(format!("{} sets, {} in the families", n, members))
}

fn gap_three(ctx: &Ctx) -> Verdict {
    let all: Vec<PeakSet> = ctx
        .sets()
        .into_iter()
        .filter(|s| !gap3_positions(s).is_empty())
        .collect();
    let take = GAP3_SAMPLES.min(all.len());
    let sample: Vec<PeakSet> = (0..take).map(|i| all[i * all.len() / take].clone()).collect();
    let x = RationalPoly::linear(&BigRational::zero());
    let n = each_set(&sample, |pp, s| {
        let target = pp.poly(s).to_monomial();
        for m in gap3_positions(s) {
            let f = pp.gap3_split_at(s, m).map_err(|e| e.to_string())?;
            if f.reconstruct() != target {
                return Err(format!("split at {} does not reconstruct", m));
            }
        }
        let c = pp.gap3_shift_constant(s).map_err(|e| e.to_string())?;
        let up = pp.poly(&s.shifted(1)).to_monomial();
        let rhs = &target.shift(&-BigRational::one()).scale(&c) * &x;
        if up != rhs {
            return Err(format!("shift identity fails with C = {}", c));
        }
        let m = gap3_positions(s)[0];
        let here = root_report(pp, s, RESIDUAL_TOL).map_err(|e| e.to_string())?;
        let right = root_report(pp, &s.shifted_down(m + 1), RESIDUAL_TOL).map_err(|e| e.to_string())?;
        let upr = root_report(pp, &s.shifted(1), RESIDUAL_TOL).map_err(|e| e.to_string())?;
        match_translated(
            &right.residual_roots,
            &here.residual_roots,
            (m + 1) as f64,
            TRANSLATION_TOL,
        )
        .map_err(|z| format!("right-part root {} unmatched", z))?;
        match_translated(&here.residual_roots, &upr.residual_roots, 1.0, TRANSLATION_TOL)
            .map_err(|z| format!("shifted root {} unmatched", z))?;
        Ok(())
    })?;
    Ok(format!("{} of {} gap-3 sets sampled", n, all.len()))
}

fn tan_coefficients(k_max: usize) -> Vec<BigRational> {
    // tan = sin / cos by power series division
    let len = 2 * k_max + 2;
    let mut fact = vec![BigInt::one()];
    for i in 1..len {
        let next = &fact[i - 1] * BigInt::from(i);
        fact.push(next);
    }
    let term =
        |i: usize, sign: bool| BigRational::new(if sign { -BigInt::one() } else { BigInt::one() }, fact[i].clone());
    let sin: Vec<BigRational> = (0..len)
        .map(|i| {
            if i % 2 == 1 {
                term(i, i % 4 == 3)
            } else {
                BigRational::zero()
            }
        })
        .collect();
    let cos: Vec<BigRational> = (0..len)
        .map(|i| {
            if i % 2 == 0 {
                term(i, i % 4 == 2)
            } else {
                BigRational::zero()
            }
        })
        .collect();
    let mut tan = vec![BigRational::zero(); len];
    for i in 0..len {
        let mut acc = sin[i].clone();
        for j in 0..i {
            acc -= &tan[j] * &cos[i - j];
        }
        tan[i] = acc;
    }
    (0..=k_max)
        .map(|k| &tan[2 * k + 1] * BigRational::from_integer(fact[2 * k + 1].clone()))
        .collect()
}

fn superset_formulas(ctx: &Ctx) -> Verdict {
    let mut pairs = 0;
    for (&n, census) in &ctx.censuses {
        for s in admissible_subsets_for(n) {
            let brute: BigInt = census
                .counts
                .iter()
                .filter(|(t, _)| s.elements().iter().all(|&i| t.contains(i)))
                .map(|(_, c)| c.clone())
                .sum();
            let q = q_count(&s, n).map_err(|e| e.to_string())?;
            if q != brute {
                return Err(format!("q_count({}, {}) = {}, census {}", s, n, q, brute));
            }
            pairs += 1;
        }
    }

    let tangents = tangent_numbers(TANGENT_K);
    let series = tan_coefficients(TANGENT_K);
    for k in 0..=TANGENT_K {
        if BigRational::from_integer(tangents[k].clone()) != series[k] || tangents[k] != BigInt::from(TANGENT_VALUES[k])
        {
            return Err(format!(
                "E_{} = {}, series {}, expected {}",
                2 * k + 1,
                tangents[k],
                series[k],
                TANGENT_VALUES[k]
            ));
        }
    }
    let mut fact = BigInt::one();
    for (k, &(num, den)) in TAN_SERIES.iter().enumerate() {
        if k > 0 {
            fact *= BigInt::from(2 * k) * BigInt::from(2 * k + 1);
        }
        if &tangents[k] * BigInt::from(den) != BigInt::from(num) * &fact {
            return Err(format!("E_{} disagrees with the printed series", 2 * k + 1));
        }
    }
    let mut alt = 0;
    for k in 1..=((TANGENT_CENSUS_N - 1) / 2) {
        let n = 2 * k + 1;
        let census = ctx.censuses.get(&n).ok_or(format!("no census for {}", n))?;
        let up_down = PeakSet::new((1..=k).map(|i| 2 * i));
        if census.get(&up_down) != tangents[k as usize] {
            return Err(format!(
                "{} alternating permutations of {}, E = {}",
                census.get(&up_down),
                n,
                tangents[k as usize]
            ));
        }
        alt += 1;
    }
    Ok(format!(
        "{} q_count pairs, E_1..E_{} vs series, {} alternating censuses",
        pairs,
        2 * TANGENT_K + 1,
        alt
    ))
}

fn kasraoui(_: &Ctx) -> Verdict {
    let mut pp = PeakPolys::new();
    for n in KASRAOUI_N {
        let (sets, max) = kasraoui_max(n).map_err(|e| e.to_string())?;
        let counts: Vec<(PeakSet, BigInt)> = admissible_subsets_for(n)
            .into_iter()
            .map(|s| {
                let c = pp.count_perms(&s, n);
                (s, c)
            })
            .collect();
        let best = counts.iter().map(|(_, c)| c.clone()).max().unwrap();
        let mut argmax: Vec<PeakSet> = counts.into_iter().filter(|(_, c)| *c == best).map(|(s, _)| s).collect();
        argmax.sort_by(PeakSet::sweep_cmp);
        if max != best || sets != argmax {
            return Err(format!(
                "n = {}: claimed {:?} {}, exhaustive {:?} {}",
                n, sets, max, argmax, best
            ));
        }
        let fact: BigInt = (1..=n).map(BigInt::from).product();
        let p3 = BigInt::from(3).pow(n / 3);
        let (lhs, rhs) = match n % 3 {
            0 => (BigInt::from(5) * &p3 * &best, BigInt::from(9) * &fact),
            1 => (BigInt::from(5) * &p3 * &best, BigInt::from(6) * &fact),
            _ => (&p3 * &best, fact),
        };
        if lhs != rhs {
            return Err(format!("n = {}: closed form disagrees with {}", n, best));
        }
    }
    Ok(format!("n = {}..={}", KASRAOUI_N.start(), KASRAOUI_N.end()))
}

fn signed(ctx: &Ctx) -> Verdict {
    let mut pp = PeakPolys::new();
    for n in 1..=SIGNED_N {
        let sc = census_signed(n).map_err(|e| e.to_string())?;
        let c = &ctx.censuses[&n];
        let scale = BigInt::from(2).pow(n);
        if sc.counts.len() != c.counts.len() {
            return Err(format!("n = {}: key sets differ", n));
        }
        for (s, v) in &c.counts {
            if sc.get(s) != &scale * v {
                return Err(format!("n = {} {}: signed {} vs 2^n * {}", n, s, sc.get(s), v));
            }
        }
        for s in admissible_subsets_for(n) {
            if pp.count_signed(&s, n) != sc.get(&s) {
                return Err(format!(
                    "n = {} {}: formula {} census {}",
                    n,
                    s,
                    pp.count_signed(&s, n),
                    sc.get(&s)
                ));
            }
        }
    }
    Ok(format!("n <= {}", SIGNED_N))
}

fn main() {
    let full = std::env::var_os("PEAKPOLY_ACCEPTANCE_FULL").is_some_and(|v| !v.is_empty() && v != "0");
    let (max_peak, oracle_n) = if full {
        (FULL_MAX_PEAK, FULL_ORACLE_N)
    } else {
        (MAX_PEAK, ORACLE_N)
    };
    let censuses = (1..=oracle_n)
        .map(|n| (n, parallel_census(n, oracle_n).expect("census")))
        .collect();
    let ctx = Ctx {
        max_peak,
        oracle_n,
        censuses,
    };

    let criteria: [Criterion; 10] = [
        ("difference table of {2,6,10}", golden_table),
        ("census = formula = inclusion-exclusion", oracle_equivalence),
        ("three constructions agree", triple),
        ("root and value identities", root_identities),
        ("positivity and bounded roots", root_region),
        ("real-rooted classification", classification),
        ("gap-3 structure", gap_three),
        ("superset counts and tangent numbers", superset_formulas),
        ("maximal peak sets", kasraoui),
        ("signed counts", signed),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(|| f(&ctx))).unwrap_or_else(|_| Err(String::from("panicked")));
        match result {
            Ok(msg) => println!(
                "criterion {:>2} PASS  {}: {} ({:.1?})",
                i + 1,
                name,
                msg,
                start.elapsed()
            ),
            Err(msg) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {}: {}", i + 1, name, msg);
            }
        }
    }
    if failed > 0 {
        println!("{} of {} criteria failed", failed, criteria.len());
        std::process::exit(1);
    }
    println!(
        "all {} criteria passed{}",
        criteria.len(),
        if full { " (extended run)" } else { "" }
    );
}
