//! Exact identities every peak polynomial satisfies, as reusable checks.
//!
//! Each check returns `Ok(())` or a [`Violation`] naming what broke. All of
//! them are exact; none touch floating point.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::binomial::binom_i64;
use crate::gap3::gap3_positions;
use crate::peak::{neg2_pow, table_shape_ok, PeakPolys};
use crate::rational::RationalPoly;
use crate::set::{admissible_subsets_for, PeakSet};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub identity: &'static str,
    pub set: PeakSet,
    pub detail: String,
}

pub type Checked = core::result::Result<(), Violation>;

fn fail(identity: &'static str, s: &PeakSet, detail: String) -> Checked {
    Err(Violation {
        identity,
        set: s.clone(),
        detail,
    })
}

fn max_of(s: &PeakSet) -> i64 {
    s.largest().map_or(0, i64::from)
}

/// Recursion, explicit coefficient formula and final-gap recursion agree.
pub fn triple_agreement(pp: &mut PeakPolys, s: &PeakSet) -> Checked {
    let main = pp.poly(s);
    match pp.poly_explicit(s) {
        Ok(e) if e == main => {}
        Ok(e) => return fail("triple-agreement", s, format!("explicit {} vs {}", e, main)),
        Err(e) => return fail("triple-agreement", s, format!("explicit: {}", e)),
    }
    if s.len() >= 2 {
        match pp.poly_final_gap(s) {
            Ok(f) if f == main => {}
            Ok(f) => return fail("triple-agreement", s, format!("final gap {} vs {}", f, main)),
            Err(e) => return fail("triple-agreement", s, format!("final gap: {}", e)),
        }
    }
    Ok(())
}

/// `p_S(i) = 0` for every `i` in `S`.
pub fn index_roots(pp: &mut PeakPolys, s: &PeakSet) -> Checked {
    for &i in s.elements() {
        let v = pp.eval(s, i as i64);
        if !v.is_zero() {
            return fail("index-roots", s, format!("p({}) = {}", i, v));
        }
    }
    Ok(())
}

/// `p_S` vanishes on `0..=b` when `b` is the left end of the last odd gap.
pub fn odd_gap_roots(pp: &mut PeakPolys, s: &PeakSet) -> Checked {
    if let Some(b) = s.largest_odd_gap_left() {
        for i in 0..=b as i64 {
            let v = pp.eval(s, i);
            if !v.is_zero() {
                return fail("odd-gap-roots", s, format!("p({}) = {}", i, v));
            }
        }
    }
    Ok(())
}

/// `p_S(0)` is 0 if `S` has an odd element and `(-2)^|S|` otherwise.
pub fn y_intercept(pp: &mut PeakPolys, s: &PeakSet) -> Checked {
    let expect = if s.elements().iter().any(|&i| i % 2 == 1) {
        BigInt::zero()
    } else {
        neg2_pow(s.len())
    };
    let got = pp.eval(s, 0);
    if got != expect {
        return fail("y-intercept", s, format!("p(0) = {}, expected {}", got, expect));
    }
    Ok(())
}

/// Closed forms for `p_S(0..=4)` match evaluation.
pub fn special_values(pp: &mut PeakPolys, s: &PeakSet) -> Checked {
    for j in 0..=4 {
        let closed = match pp.special_value(s, j) {
            Ok(v) => v,
            Err(e) => return fail("special-values", s, format!("{}", e)),
        };
        let got = pp.eval(s, j);
        if got != closed {
            return fail(
                "special-values",
                s,
                format!("p({}) = {}, closed form {}", j, got, closed),
            );
        }
    }
    Ok(())
}

/// `(Δ^j p_S)(0) = (-1)^(m+j) p_S(j)` for `0 <= j <= m`.
pub fn symmetry(pp: &mut PeakPolys, s: &PeakSet) -> Checked {
    let m = max_of(s);
    let at0 = pp.poly(s).recenter(0);
    for j in 0..=m {
        let lhs = at0.coeff(j as usize);
        let v = pp.eval(s, j);
        let rhs = if (m + j) % 2 == 0 { v } else { -v };
        if lhs != rhs {
            return fail("symmetry", s, format!("j = {}: {} vs {}", j, lhs, rhs));
        }
    }
    Ok(())
}

/// With `S = S_1 ∪ {m+k}`, `m = max S_1` (0 if `S_1` is empty):
/// `p_S(m+l) = -p_{S_1}(m+l)` for `1 <= l < k`.
pub fn in_gap_negation(pp: &mut PeakPolys, s: &PeakSet) -> Checked {
    if s.is_empty() {
        return Ok(());
    }
    let s1 = s.without_max();
    let m = max_of(&s1);
    let k = max_of(s) - m;
    for l in 1..k {
        let a = pp.eval(s, m + l);
        let b = pp.eval(&s1, m + l);
        if a != -&b {
            return fail("in-gap-negation", s, format!("l = {}: {} vs {}", l, a, b));
        }
    }
    Ok(())
}

/// `sum_{j=1}^{k-1} (-1)^(k-1-j) p_S(m+j) C(m+k, m+j) = 2 p_S(m+k) [k even]`
/// for `0 <= k <= k_max`.
pub fn alternating_sum(pp: &mut PeakPolys, s: &PeakSet, k_max: i64) -> Checked {
    let m = max_of(s);
    for k in 0..=k_max {
        let mut lhs = BigInt::zero();
        for j in 1..k {
            let term = pp.eval(s, m + j) * binom_i64(m + k, (m + j) as usize);
            if (k - 1 - j) % 2 == 0 {
                lhs += term;
            } else {
                lhs -= term;
            }
        }
        let rhs = if k % 2 == 0 {
            BigInt::from(2) * pp.eval(s, m + k)
        } else {
            BigInt::zero()
        };
        if lhs != rhs {
            return fail("alternating-sum", s, format!("k = {}: {} vs {}", k, lhs, rhs));
        }
    }
    Ok(())
}

/// `p_S(j) < p_S(j+1)` for `m <= j < m + span`.
pub fn strict_growth(pp: &mut PeakPolys, s: &PeakSet, span: i64) -> Checked {
    let m = max_of(s);
    for j in m..m + span {
        let a = pp.eval(s, j);
        let b = pp.eval(s, j + 1);
        if a >= b {
            return fail("strict-growth", s, format!("p({}) = {} >= p({}) = {}", j, a, j + 1, b));
        }
    }
    Ok(())
}

/// `|p_S(j)| <= |p_S(k)|` for `1 <= j < k <= m + extra` whenever
/// `p_S(k) != 0`. For `{2}` strictly inside `S` with no odd gap the pair
/// `(1, 3)` is exempt and instead must satisfy
/// `p_S(1) = -2 p_S(3) = -(-2)^(|S|-1)`.
pub fn modulus_monotonicity(pp: &mut PeakPolys, s: &PeakSet, extra: i64) -> Checked {
    let top = max_of(s) + extra;
    let vals: Vec<BigInt> = (0..=top).map(|j| pp.eval(s, j)).collect();
    let exempt = s.contains(2) && s.len() >= 2 && !s.has_odd_gap();
    if exempt {
        let p1 = &vals[1];
        let p3 = &vals[3];
        if *p1 != -neg2_pow(s.len() - 1) || *p1 != BigInt::from(-2) * p3 {
            return fail(
                "modulus-monotonicity",
                s,
                format!("exceptional values p(1) = {}, p(3) = {}", p1, p3),
            );
        }
    }
    for k in 2..=top as usize {
        if vals[k].is_zero() {
            continue;
        }
        for j in 1..k {
            if exempt && (j, k) == (1, 3) {
                continue;
            }
            if vals[j].abs() > vals[k].abs() {
                return fail(
                    "modulus-monotonicity",
                    s,
                    format!("|p({})| = {} > |p({})| = {}", j, vals[j].abs(), k, vals[k].abs()),
                );
            }
        }
    }
    Ok(())
}

/// If `p_S(j) != 0` for some `j >= 1`, every zero at `k` in `j..=m` lies in `S`.
pub fn zero_location(pp: &mut PeakPolys, s: &PeakSet) -> Checked {
    let m = max_of(s);
    let first = (1..=m).find(|&j| !pp.eval(s, j).is_zero());
    if let Some(j) = first {
        for k in j..=m {
            if pp.eval(s, k).is_zero() && !s.contains(k as u32) {
                return fail("zero-location", s, format!("p({}) != 0 but p({}) = 0", j, k));
            }
        }
    }
    Ok(())
}

/// Difference table: row `m` zero, row `m-1` positive, entry `(0, m)` zero.
pub fn table_shape(pp: &mut PeakPolys, s: &PeakSet) -> Checked {
    match pp.difference_table(s) {
        Ok(t) if table_shape_ok(&t) => Ok(()),
        Ok(_) => fail("table-shape", s, String::from("unexpected table shape")),
        Err(e) => fail("table-shape", s, format!("{}", e)),
    }
}

/// Every gap-of-three split reconstructs `p_S`, the shift identity
/// `p_{S+1}(x) = C(S) p_S(x-1) x` holds, and a recognized closed-form family
/// matches.
pub fn gap3_structure(pp: &mut PeakPolys, s: &PeakSet) -> Checked {
    let positions = gap3_positions(s);
    if positions.is_empty() {
        return Ok(());
    }
    let target = pp.poly(s).to_monomial();
    for m in positions {
        let split = match pp.gap3_split_at(s, m) {
            Ok(f) => f,
            Err(e) => return fail("gap3-split", s, format!("{}", e)),
        };
        if split.reconstruct() != target {
            return fail("gap3-split", s, format!("split at {} does not reconstruct", m));
        }
    }
    let c = match pp.gap3_shift_constant(s) {
        Ok(c) => c,
        Err(e) => return fail("gap3-shift", s, format!("{}", e)),
    };
    let shifted = pp.poly(&s.shifted(1)).to_monomial();
    let minus_one = BigRational::from_integer(-BigInt::one());
    let rhs = target.shift(&minus_one).mul_linear(&BigRational::zero()).scale(&c);
    if shifted != rhs {
        return fail("gap3-shift", s, format!("C(S) = {}", c));
    }
    if let Some(f) = pp.factored_family(s) {
        if f.poly() != target {
            return fail("factored-family", s, format!("{:?}", f.family));
        }
    }
    Ok(())
}

/// A named exact check with its default window.
pub type NamedCheck = (&'static str, fn(&mut PeakPolys, &PeakSet) -> Checked);

/// Every per-set exact check, in reporting order.
pub const EXACT_CHECKS: &[NamedCheck] = &[
    ("triple-agreement", triple_agreement),
    ("index-roots", index_roots),
    ("odd-gap-roots", odd_gap_roots),
    ("y-intercept", y_intercept),
    ("special-values", special_values),
    ("symmetry", symmetry),
    ("in-gap-negation", in_gap_negation),
    ("alternating-sum", |pp, s| alternating_sum(pp, s, 8)),
    ("strict-growth", |pp, s| strict_growth(pp, s, 5)),
    ("modulus-monotonicity", |pp, s| modulus_monotonicity(pp, s, 3)),
    ("zero-location", zero_location),
    ("table-shape", table_shape),
    ("gap3-structure", gap3_structure),
];

/// Runs [`EXACT_CHECKS`] and collects the failures.
pub fn all_exact(pp: &mut PeakPolys, s: &PeakSet) -> Vec<Violation> {
    EXACT_CHECKS
        .iter()
        .filter_map(|(_, check)| check(pp, s).err())
        .collect()
}

/// `sum over admissible S ⊆ {2..n-1} of count_perms(S, n) = n!`.
pub fn counts_sum_to_factorial(pp: &mut PeakPolys, n: u32) -> core::result::Result<(), (BigInt, BigInt)> {
    let total: BigInt = admissible_subsets_for(n).iter().map(|s| pp.count_perms(s, n)).sum();
    let fact: BigInt = (1..=n).map(BigInt::from).product();
    if total == fact {
        Ok(())
    } else {
        Err((total, fact))
    }
}

/// Whether `p` has exactly the given integer roots as a multiset, with
/// nothing left over. Handy for the closed-form families.
pub fn splits_over(p: &RationalPoly, roots: &[i64]) -> bool {
    let lead = match p.leading() {
        Some(l) => l.clone(),
        None => return false,
    };
    RationalPoly::from_integer_roots(&lead, roots) == *p
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::set::admissible_sets;

    #[test]
    fn everything_holds_to_nine() {
        let mut pp = PeakPolys::new();
        for s in admissible_sets(9) {
            let v = all_exact(&mut pp, &s);
            assert!(v.is_empty(), "{:?}", v);
        }
        for n in 1..=8 {
            assert_eq!(counts_sum_to_factorial(&mut pp, n), Ok(()));
        }
    }

    #[test]
    fn exception_is_real() {
        // {2,4}: p(1) = 2, p(3) = -1 so the generic inequality fails at (1,3).
        let mut pp = PeakPolys::new();
        let s = PeakSet::new([2, 4]);
        assert_eq!(pp.eval(&s, 1), BigInt::from(2));
        assert_eq!(pp.eval(&s, 3), BigInt::from(-1));
        assert!(modulus_monotonicity(&mut pp, &s, 3).is_ok());
    }

    #[test]
    fn splitting() {
        let mut pp = PeakPolys::new();
        let p = pp.poly(&PeakSet::new([2, 5])).to_monomial();
        assert!(splits_over(&p, &[0, 1, 2, 5]));
        assert!(!splits_over(&p, &[0, 1, 2, 4]));
    }
}
