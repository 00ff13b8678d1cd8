//! Roots of peak polynomials.
//!
//! Integer roots are found and removed exactly; what is left (degree at most
//! a handful at desk scale) goes to a double-precision Aberth-Ehrlich
//! iteration whose output is certified before use.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::TAU;
use core::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::float::FloatCore;
use num_traits::{Float, Signed, Zero};

use crate::error::{Error, Result};
use crate::peak::PeakPolys;
use crate::rational::RationalPoly;
use crate::set::PeakSet;

/// Iteration budget for [`find_complex_roots`].
pub const MAX_ITERATIONS: u32 = 2000;

/// Numerical tolerances used by the root checks.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Relative residual bound for certifying a numerical root.
    pub residual: f64,
    /// Additive slack for region membership and "is real" decisions.
    pub region: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            residual: 1e-9,
            region: 1e-6,
        }
    }
}

/// A root found numerically, with `|p̂(z)|` for the monic normalization `p̂`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NumericRoot {
    pub re: f64,
    pub im: f64,
    pub residual: f64,
}

impl NumericRoot {
    pub fn z(&self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }
}

/// Integers that theory guarantees to be roots of `p_S`: the elements of
/// `S` and `0..=b` when `b` is the left end of the last odd gap.
pub fn forced_roots(s: &PeakSet) -> Vec<i64> {
    let mut roots: BTreeSet<i64> = s.elements().iter().map(|&i| i as i64).collect();
    if let Some(b) = s.largest_odd_gap_left() {
        roots.extend(0..=b as i64);
    }
    roots.into_iter().collect()
}

fn require_nonempty_admissible(s: &PeakSet) -> Result<()> {
    if s.is_empty() {
        return Err(Error::EmptySet);
    }
    if !s.is_admissible() {
        return Err(Error::Inadmissible(s.clone()));
    }
    Ok(())
}

/// Exact synthetic division by `x - r`; fails unless `p(r) = 0`.
pub fn deflate(p: &RationalPoly, r: i64) -> Result<RationalPoly> {
    let (q, rem) = p.div_linear(&BigRational::from_integer(BigInt::from(r)));
    if !rem.is_zero() || p.is_zero() {
        return Err(Error::NotARoot(r));
    }
    Ok(q)
}

/// Integer roots of `p_S` with multiplicity, plus the quotient left after
/// dividing them all out. Candidates are the guaranteed roots and every
/// integer in `[-3, max(S)]`; each is confirmed by exact evaluation.
pub fn integer_root_deflation(pp: &mut PeakPolys, s: &PeakSet) -> Result<(Vec<i64>, RationalPoly)> {
    require_nonempty_admissible(s)?;
    let m = s.largest().unwrap() as i64;
    let mut candidates: BTreeSet<i64> = forced_roots(s).into_iter().collect();
    candidates.extend(-3..=m);
    let mut q = pp.poly(s).to_monomial();
    let mut roots = Vec::new();
    for r in candidates {
        while q.degree().unwrap_or(0) >= 1 {
            match deflate(&q, r) {
                Ok(next) => {
                    q = next;
                    roots.push(r);
                }
                Err(_) => break,
            }
        }
    }
    Ok((roots, q))
}

/// Multiset of exact integer roots of `p_S`, sorted.
pub fn known_integer_roots(pp: &mut PeakPolys, s: &PeakSet) -> Result<Vec<i64>> {
    integer_root_deflation(pp, s).map(|(roots, _)| roots)
}

fn horner(c: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::zero();
    let mut dp = Complex64::zero();
    for &a in c.iter().rev() {
        dp = dp * z + p;
        p = p * z + a;
    }
    (p, dp)
}

/// `max_i |c_i| |z|^i`.
fn magnitude_scale(c: &[f64], z: Complex64) -> f64 {
    let r = z.norm();
    let mut pow = 1.0;
    let mut best: f64 = 0.0;
    for &a in c {
        best = best.max(a.abs() * pow);
        pow *= r;
    }
    best
}

struct Iterated {
    roots: Vec<Complex64>,
    converged: bool,
    iterations: u32,
}

// Horner's rounding bound: |p(z)| below this is indistinguishable from zero.
fn rounding_bound(c: &[f64], z: Complex64) -> f64 {
    let r = z.norm();
    let abs_sum = c.iter().rev().fold(0.0, |acc, &a| acc * r + a.abs());
    4.0 * c.len() as f64 * f64::EPSILON * abs_sum
}

fn aberth(c: &[f64], max_iterations: u32) -> Iterated {
    let d = c.len() - 1;
    let radius = 1.0 + c[..d].iter().fold(0.0f64, |a, &x| a.max(x.abs()));
    let mut z: Vec<Complex64> = (0..d)
        .map(|k| Complex64::from_polar(radius, TAU * k as f64 / d as f64 + 0.4))
        .collect();
    let mut done = vec![false; d];
    let eps = 4.0 * f64::EPSILON;
    for it in 1..=max_iterations {
        for k in 0..d {
            if done[k] {
                continue;
            }
            let (p, dp) = horner(c, z[k]);
            if p.norm() <= rounding_bound(c, z[k]) {
                done[k] = true;
                continue;
            }
            let sum: Complex64 = (0..d).filter(|&j| j != k).map(|j| (z[k] - z[j]).inv()).sum();
            let ratio = p / dp;
            let mut step = ratio / (Complex64::new(1.0, 0.0) - ratio * sum);
            if !step.re.is_finite() || !step.im.is_finite() {
                step = Complex64::new(eps * (1.0 + z[k].norm()), eps);
            }
            z[k] -= step;
            if step.norm() <= eps * (1.0 + z[k].norm()) {
                done[k] = true;
            }
        }
        if done.iter().all(|&x| x) {
            return Iterated {
                roots: z,
                converged: true,
                iterations: it,
            };
        }
    }
    Iterated {
        roots: z,
        converged: false,
        iterations: max_iterations,
    }
}

// Real coefficients: pair each root in the upper half plane with its
// nearest partner below and make the pair exactly conjugate.
fn symmetrize(roots: &mut [Complex64], tol: f64) {
    let n = roots.len();
    let mut used = vec![false; n];
    for i in 0..n {
        if used[i] || roots[i].im <= tol {
            continue;
        }
        let target = roots[i].conj();
        let partner = (0..n)
            .filter(|&j| !used[j] && j != i && roots[j].im < -tol)
            .min_by(|&a, &b| (roots[a] - target).norm().total_cmp(&(roots[b] - target).norm()));
        if let Some(j) = partner {
            let re = 0.5 * (roots[i].re + roots[j].re);
            let im = 0.5 * (roots[i].im - roots[j].im);
            roots[i] = Complex64::new(re, im);
            roots[j] = Complex64::new(re, -im);
            used[i] = true;
            used[j] = true;
        }
    }
}

fn certify(c: &[f64], roots: &[Complex64], tol: f64) -> core::result::Result<(), &'static str> {
    for &z in roots {
        let (p, _) = horner(c, z);
        let r = p.norm();
        if r.is_nan() || r > tol * magnitude_scale(c, z) {
            return Err("residual above tolerance");
        }
    }
    // Expand prod (x - z_k) and prod (x + |z_k|) side by side.
    let d = roots.len();
    let mut e = vec![Complex64::zero(); d + 1];
    let mut a = vec![0.0f64; d + 1];
    e[0] = Complex64::new(1.0, 0.0);
    a[0] = 1.0;
    for (k, &z) in roots.iter().enumerate() {
        for i in (1..=k + 1).rev() {
            e[i] = e[i] - z * e[i - 1];
            a[i] += z.norm() * a[i - 1];
        }
    }
    // e[i] is the coefficient of x^(d-i).
    for i in 0..=d {
        let target = c[d - i];
        let scale = a[i].max(target.abs()).max(1.0);
        let gap = (e[i] - target).norm();
        if gap.is_nan() || gap > tol * d as f64 * scale {
            return Err("symmetric functions do not reproduce the coefficients");
        }
    }
    Ok(())
}

fn sort_roots(roots: &mut [NumericRoot]) {
    roots.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
}

fn solve(p: &RationalPoly, tol: f64) -> Result<(Vec<NumericRoot>, core::result::Result<(), &'static str>)> {
    let d = p.degree().ok_or(Error::DegreeTooSmall)?;
    if d == 0 {
        return Err(Error::DegreeTooSmall);
    }
    let c = p.monic().to_f64();
    if c.iter().any(|x| !x.is_finite()) {
        return Err(Error::Uncertified("coefficient overflows f64"));
    }
    let run = aberth(&c, MAX_ITERATIONS);
    if !run.converged {
        return Err(Error::NoConvergence(run.iterations));
    }
    let mut z = run.roots;
    symmetrize(&mut z, Float::sqrt(tol));
    let cert = certify(&c, &z, tol);
    let mut roots: Vec<NumericRoot> = z
        .iter()
        .map(|&z| NumericRoot {
            re: z.re,
            im: z.im,
            residual: horner(&c, z).0.norm(),
        })
        .collect();
    sort_roots(&mut roots);
    Ok((roots, cert))
}

/// All complex roots of `p` (degree >= 1) with multiplicity, sorted by real
/// then imaginary part. Fails on non-convergence or failed certification.
pub fn find_complex_roots(p: &RationalPoly, tol: f64) -> Result<Vec<NumericRoot>> {
    let (roots, cert) = solve(p, tol)?;
    cert.map_err(Error::Uncertified)?;
    Ok(roots)
}

/// Exact and numerical roots of one peak polynomial.
#[derive(Debug, Clone, PartialEq)]
pub struct RootReport {
    pub set: PeakSet,
    pub exact_integer_roots: Vec<i64>,
    pub residual_roots: Vec<NumericRoot>,
    pub certified: bool,
}

impl RootReport {
    pub fn degree(&self) -> usize {
        self.exact_integer_roots.len() + self.residual_roots.len()
    }

    /// Every root as a complex number, exact ones first.
    pub fn all_roots(&self) -> impl Iterator<Item = Complex64> + '_ {
        self.exact_integer_roots
            .iter()
            .map(|&r| Complex64::new(r as f64, 0.0))
            .chain(self.residual_roots.iter().map(NumericRoot::z))
    }
}

/// Roots of `p_S`. Non-convergence is an error; a converged run that fails
/// certification comes back with `certified == false`.
pub fn root_report(pp: &mut PeakPolys, s: &PeakSet, tol: f64) -> Result<RootReport> {
    let (exact, rest) = integer_root_deflation(pp, s)?;
    let (residual_roots, certified) = if rest.degree().unwrap_or(0) == 0 {
        (Vec::new(), true)
    } else {
        let (roots, cert) = solve(&rest, tol)?;
        (roots, cert.is_ok())
    };
    Ok(RootReport {
        set: s.clone(),
        exact_integer_roots: exact,
        residual_roots,
        certified,
    })
}

/// Checks run by [`verify`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Check {
    /// `(Δ^j p_S)(max S) > 0` for `1 <= j < max S`.
    Positivity,
    /// Every root lies in `|z| <= max S`, `Re z >= -3`.
    BoundedRoots,
    /// All roots real exactly for the listed families, and then integral.
    IntegralRoots,
    /// A real root above `max(S \ {max S})` must be `max S`.
    FinalRealRoot,
    /// No root with real part above `max S` forces positivity.
    HalfPlaneImpliesPositivity,
}

impl Check {
    pub const ALL: [Check; 5] = [
        Check::Positivity,
        Check::BoundedRoots,
        Check::IntegralRoots,
        Check::FinalRealRoot,
        Check::HalfPlaneImpliesPositivity,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::Positivity => "positivity",
            Check::BoundedRoots => "bounded-roots",
            Check::IntegralRoots => "integral-roots-classification",
            Check::FinalRealRoot => "final-real-root",
            Check::HalfPlaneImpliesPositivity => "half-plane-implies-positivity",
        }
    }

    pub fn from_name(name: &str) -> Option<Check> {
        Check::ALL.into_iter().find(|c| c.name() == name)
    }

    fn needs_roots(self) -> bool {
        !matches!(self, Check::Positivity)
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Data showing why a check failed.
#[derive(Debug, Clone, PartialEq)]
pub enum Witness {
    /// A forward difference `(Δ^index p_S)(max S)` that is not positive.
    Coefficient {
        index: usize,
        value: BigInt,
    },
    Root {
        re: f64,
        im: f64,
    },
    /// Observed realness of the roots against family membership.
    Classification {
        all_real: bool,
        in_family: bool,
    },
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Coefficient { index, value } => write!(f, "coefficient {} = {}", index, value),
            Witness::Root { re, im } => write!(f, "root {}{:+}i", re, im),
            Witness::Classification { all_real, in_family } => {
                write!(f, "all roots real: {}, listed family: {}", all_real, in_family)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Outcome {
    Pass,
    Fail(Witness),
    Inconclusive(String),
}

impl Outcome {
    pub fn label(&self) -> &'static str {
        match self {
            Outcome::Pass => "pass",
            Outcome::Fail(_) => "fail",
            Outcome::Inconclusive(_) => "inconclusive",
        }
    }
}

/// Result of one check on one set. `numerical` marks verdicts that rest on
/// floating-point roots rather than exact arithmetic alone.
#[derive(Debug, Clone, PartialEq)]
pub struct Verdict {
    pub check: Check,
    pub set: PeakSet,
    pub outcome: Outcome,
    pub numerical: bool,
}

impl Verdict {
    pub fn passed(&self) -> bool {
        self.outcome == Outcome::Pass
    }
}

/// Sets whose peak polynomial is conjectured to have only real roots:
/// `{2}`, `{2,4}`, `{3}`, `{3,5}`, and sets ending in gap 3 or gaps 3, 2.
pub fn in_real_rooted_family(s: &PeakSet) -> bool {
    let e = s.elements();
    if matches!(e, [2] | [2, 4] | [3] | [3, 5]) {
        return true;
    }
    let gaps: Vec<u32> = s.gaps().collect();
    matches!(gaps.as_slice(), [.., 3] | [.., 3, 2])
}

fn positivity(pp: &mut PeakPolys, s: &PeakSet) -> Outcome {
    let m = s.largest().unwrap();
    let at_m = pp.poly(s).recenter(m as i64);
    for j in 1..m as usize {
        let v = at_m.coeff(j);
        if !v.is_positive() {
            return Outcome::Fail(Witness::Coefficient { index: j, value: v });
        }
    }
    Outcome::Pass
}

fn root_witness(z: Complex64) -> Witness {
    Witness::Root { re: z.re, im: z.im }
}

fn bounded_roots(report: &RootReport, m: f64, tol: f64) -> Outcome {
    for &r in &report.exact_integer_roots {
        if r.unsigned_abs() as f64 > m || r < -3 {
            return Outcome::Fail(root_witness(Complex64::new(r as f64, 0.0)));
        }
    }
    for z in report.residual_roots.iter().map(NumericRoot::z) {
        if z.norm() > m + tol || z.re < -3.0 - tol {
            return Outcome::Fail(root_witness(z));
        }
    }
    Outcome::Pass
}

fn integral_roots(pp: &mut PeakPolys, s: &PeakSet, report: &RootReport, tol: f64) -> Outcome {
    let all_real = report.residual_roots.iter().all(|r| r.im.abs() <= tol);
    let in_family = in_real_rooted_family(s);
    if all_real != in_family {
        return Outcome::Fail(Witness::Classification { all_real, in_family });
    }
    if all_real {
        let p = pp.poly(s);
        for r in &report.residual_roots {
            let nearest = FloatCore::round(r.re);
            if (r.re - nearest).abs() > tol || !p.eval(nearest as i64).is_zero() {
                return Outcome::Fail(root_witness(r.z()));
            }
        }
    }
    Outcome::Pass
}

fn final_real_root(s: &PeakSet, report: &RootReport, tol: f64) -> Outcome {
    if s.len() < 2 {
        return Outcome::Pass;
    }
    let m = s.largest().unwrap() as i64;
    let s1 = s.without_max();
    let below = s1.largest().unwrap() as i64;
    if !report.exact_integer_roots.contains(&m) {
        return Outcome::Fail(root_witness(Complex64::new(m as f64, 0.0)));
    }
    for &r in &report.exact_integer_roots {
        if r > below && r != m {
            return Outcome::Fail(root_witness(Complex64::new(r as f64, 0.0)));
        }
    }
    for r in &report.residual_roots {
        // Non-integer real roots can never equal max S.
        if r.im.abs() <= tol && r.re > below as f64 + tol {
            return Outcome::Fail(root_witness(r.z()));
        }
    }
    Outcome::Pass
}

fn half_plane_implies_positivity(report: &RootReport, m: f64, tol: f64, positive: &Outcome) -> Outcome {
    let in_half_plane = report.all_roots().all(|z| z.re <= m + tol);
    match positive {
        Outcome::Fail(w) if in_half_plane => Outcome::Fail(w.clone()),
        _ => Outcome::Pass,
    }
}

/// Runs the requested checks on an admissible nonempty `S`.
///
/// Root-finding failures become [`Outcome::Inconclusive`] for the checks that
/// need roots; they are never reported as a pass.
pub fn verify(pp: &mut PeakPolys, s: &PeakSet, checks: &[Check], tol: &Tolerances) -> Result<Vec<Verdict>> {
    require_nonempty_admissible(s)?;
    let m = s.largest().unwrap() as f64;
    let report = if checks.iter().any(|c| c.needs_roots()) {
        Some(match root_report(pp, s, tol.residual) {
            Ok(r) if r.certified => Ok(r),
            Ok(_) => Err(String::from("numerical roots failed certification")),
            Err(e) => Err(alloc::format!("{}", e)),
        })
    } else {
        None
    };
    let positive = positivity(pp, s);
    let mut out = Vec::with_capacity(checks.len());
    for &check in checks {
        let (outcome, numerical) = match (check, &report) {
            (Check::Positivity, _) => (positive.clone(), false),
            (_, Some(Err(reason))) => (Outcome::Inconclusive(reason.clone()), true),
            (_, Some(Ok(report))) => {
                let numerical = !report.residual_roots.is_empty();
                let outcome = match check {
                    Check::BoundedRoots => bounded_roots(report, m, tol.region),
                    Check::IntegralRoots => integral_roots(pp, s, report, tol.region),
                    Check::FinalRealRoot => final_real_root(s, report, tol.region),
                    Check::HalfPlaneImpliesPositivity => {
                        half_plane_implies_positivity(report, m, tol.region, &positive)
                    }
                    Check::Positivity => unreachable!(),
                };
                (outcome, numerical)
            }
            (_, None) => unreachable!(),
        };
        out.push(Verdict {
            check,
            set: s.clone(),
            outcome,
            numerical,
        });
    }
    Ok(out)
}

/// Pairs every root of `a`, translated by `shift`, with a distinct root of
/// `b` within `tol`. Returns the first root that has no partner.
pub fn match_translated(
    a: &[NumericRoot],
    b: &[NumericRoot],
    shift: f64,
    tol: f64,
) -> core::result::Result<(), Complex64> {
    if a.len() != b.len() {
        return Err(Complex64::new(f64::NAN, f64::NAN));
    }
    let mut used = vec![false; b.len()];
    for r in a {
        let target = r.z() + shift;
        let best = (0..b.len())
            .filter(|&j| !used[j])
            .min_by(|&x, &y| (b[x].z() - target).norm().total_cmp(&(b[y].z() - target).norm()));
        match best {
            Some(j) if (b[j].z() - target).norm() <= tol => used[j] = true,
            _ => return Err(target),
        }
    }
    Ok(())
}
