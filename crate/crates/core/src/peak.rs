//! Peak polynomials and the permutation counts they encode.
//!
//! For an admissible nonempty `S` with `m = max(S)`, the number of
//! permutations of `[n]` whose peak set is exactly `S` equals
//! `p_S(n) * 2^(n - |S| - 1)` for `n >= m`, where `p_S` has degree `m - 1`.
//! `p_∅ = 1` and `p_S = 0` for inadmissible `S`.
//!
//! Three independent constructions are provided:
//!
//! * [`PeakPolys::poly`]: the main recursion
//!   `p_S(x) = p_{S1}(m-1) C(x, m-1) - 2 p_{S1}(x) - p_{S2}(x)` with
//!   `S1 = S \ {m}` and `S2 = S1 ∪ {m-1}`, memoized;
//! * [`PeakPolys::poly_explicit`]: closed-form coefficients in the binomial
//!   basis centered at 0;
//! * [`PeakPolys::poly_final_gap`]: the recursion on the final gap `k`,
//!   `p_S(x) = -2 p_{S1}(x) [k even] + sum_{j=1}^{k-1} (-1)^(k-1-j) p_{S1}(m+j) C(x, m+j)`.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::binomial::{vandermonde_shift, BinomialPoly};
use crate::error::{Error, Result};
use crate::set::PeakSet;

fn pow2(e: usize) -> BigInt {
    BigInt::one() << e
}

/// `(-2)^e`.
pub(crate) fn neg2_pow(e: usize) -> BigInt {
    let p = pow2(e);
    if e % 2 == 1 {
        -p
    } else {
        p
    }
}

fn sign(e: usize) -> BigInt {
    if e.is_multiple_of(2) {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

/// `p_{m}(x) = C(x-1, m-1) - 1`, at center 0.
pub fn single_peak_poly(m: u32) -> BinomialPoly {
    if m < 2 {
        return BinomialPoly::zero(0);
    }
    vandermonde_shift(m as usize).sub(&BinomialPoly::constant(0, BigInt::one()))
}

/// Memoizing calculator for peak polynomials and everything derived from
/// them. All polynomials it returns are centered at 0.
#[derive(Debug, Default, Clone)]
pub struct PeakPolys {
    memo: BTreeMap<PeakSet, BinomialPoly>,
}

impl PeakPolys {
    pub fn new() -> Self {
        Self::default()
    }

    /// Number of memoized sets.
    pub fn cached(&self) -> usize {
        self.memo.len()
    }

    /// `p_S` by the main recursion. Inadmissible sets give the zero polynomial.
    pub fn poly(&mut self, s: &PeakSet) -> BinomialPoly {
        self.fill(s);
        self.lookup(s)
    }

    fn lookup(&self, s: &PeakSet) -> BinomialPoly {
        if !s.is_admissible() {
            return BinomialPoly::zero(0);
        }
        if s.is_empty() {
            return BinomialPoly::constant(0, BigInt::one());
        }
        self.memo[s].clone()
    }

    fn fill(&mut self, s: &PeakSet) {
        if !s.is_admissible() || s.is_empty() || self.memo.contains_key(s) {
            return;
        }
        let m = s.largest().unwrap();
        let p = if s.len() == 1 {
            single_peak_poly(m)
        } else {
            let s1 = s.without_max();
            let s2 = s1.with(m - 1);
            self.fill(&s1);
            self.fill(&s2);
            let p1 = self.lookup(&s1);
            let p2 = self.lookup(&s2);
            BinomialPoly::basis(0, m as usize - 1)
                .scale(&p1.eval(m as i64 - 1))
                .sub(&p1.scale(&BigInt::from(2)))
                .sub(&p2)
        };
        self.memo.insert(s.clone(), p);
    }

    pub fn eval(&mut self, s: &PeakSet, n: i64) -> BigInt {
        self.poly(s).eval(n)
    }

    /// `p_S` from its closed-form coefficients `d_j` in the basis `C(x, j)`.
    ///
    /// `d_j = (-1)^(m-j-1) (-2)^(|S ∩ (j,∞)| - 1) p_{S ∩ [j]}(j)`. If some gap
    /// is odd and `b` is the left end of the last one, the sum starts at `j = b`;
    /// otherwise the constant term is corrected by `-(-2)^(|S|-1)`. The prefix
    /// values `p_{S ∩ [j]}(j)` are computed with this same formula.
    pub fn poly_explicit(&self, s: &PeakSet) -> Result<BinomialPoly> {
        if s.is_empty() {
            return Err(Error::EmptySet);
        }
        if !s.is_admissible() {
            return Err(Error::Inadmissible(s.clone()));
        }
        let mut prefix_memo = BTreeMap::new();
        Ok(explicit_inner(s, &mut prefix_memo))
    }

    /// `p_S` by recursing on the final gap; needs `|S| >= 2`.
    pub fn poly_final_gap(&self, s: &PeakSet) -> Result<BinomialPoly> {
        if s.len() < 2 {
            return Err(Error::TooFewPeaks {
                set: s.clone(),
                needed: 2,
                got: s.len(),
            });
        }
        if !s.is_admissible() {
            return Err(Error::Inadmissible(s.clone()));
        }
        Ok(final_gap_inner(s))
    }

    /// `|{π ∈ S_n : P(π) = S}|`, zero unless `S` is `n`-admissible.
    pub fn count_perms(&mut self, s: &PeakSet, n: u32) -> BigInt {
        if n == 0 || !s.is_admissible_for(n) {
            return BigInt::zero();
        }
        if s.is_empty() {
            return pow2(n as usize - 1);
        }
        self.eval(s, n as i64) * pow2(n as usize - s.len() - 1)
    }

    /// Same count over signed permutations of `[n]`: `2^n` times the plain one.
    pub fn count_signed(&mut self, s: &PeakSet, n: u32) -> BigInt {
        self.count_perms(s, n) * pow2(n as usize)
    }

    /// The `(m+1) x (m+1)` table of `(Δ^j p_S)(k)`.
    pub fn difference_table(&mut self, s: &PeakSet) -> Result<DifferenceTable> {
        if s.is_empty() {
            return Err(Error::EmptySet);
        }
        if !s.is_admissible() {
            return Err(Error::Inadmissible(s.clone()));
        }
        let m = s.largest().unwrap() as usize;
        let mut column = self.poly(s);
        let mut entries = vec![vec![BigInt::zero(); m + 1]; m + 1];
        for k in 0..=m {
            for (j, row) in entries.iter_mut().enumerate() {
                row[k] = column.coeff(j);
            }
            column = column.step_center(true);
        }
        Ok(DifferenceTable {
            set: s.clone(),
            entries,
        })
    }

    /// `p_S(j)` for `j` in `0..=4` from the piecewise closed forms.
    pub fn special_value(&self, s: &PeakSet, j: i64) -> Result<BigInt> {
        if !(0..=4).contains(&j) {
            return Err(Error::SpecialValueOutOfRange(j));
        }
        if !s.is_admissible() {
            return Err(Error::Inadmissible(s.clone()));
        }
        Ok(special_value_closed_form(s, j as u32))
    }
}

fn explicit_inner(s: &PeakSet, memo: &mut BTreeMap<PeakSet, BinomialPoly>) -> BinomialPoly {
    if let Some(p) = memo.get(s) {
        return p.clone();
    }
    let m = s.largest().unwrap() as usize;
    let mut d = Vec::with_capacity(m);
    for j in 0..m {
        let prefix = s.up_to(j as u32);
        let value = if prefix.is_empty() {
            BigInt::one()
        } else {
            explicit_inner(&prefix, memo).eval(j as i64)
        };
        let above = s.count_above(j as u32);
        d.push(sign(m - j - 1) * neg2_pow(above - 1) * value);
    }
    match s.largest_odd_gap_left() {
        Some(b) => {
            for dj in d.iter_mut().take(b as usize) {
                *dj = BigInt::zero();
            }
        }
        None => {
            d[0] -= neg2_pow(s.len() - 1);
        }
    }
    let p = BinomialPoly::new(0, d);
    memo.insert(s.clone(), p.clone());
    p
}

fn final_gap_inner(s: &PeakSet) -> BinomialPoly {
    if s.len() == 1 {
        return single_peak_poly(s.largest().unwrap());
    }
    let s1 = s.without_max();
    let m = s1.largest().unwrap() as usize;
    let k = s.largest().unwrap() as usize - m;
    let p1 = final_gap_inner(&s1);
    let mut p = if k.is_multiple_of(2) {
        p1.scale(&BigInt::from(-2))
    } else {
        BinomialPoly::zero(0)
    };
    for j in 1..k {
        let term = BinomialPoly::basis(0, m + j).scale(&(sign(k - 1 - j) * p1.eval((m + j) as i64)));
        p = p.add(&term);
    }
    p
}

fn special_value_closed_form(s: &PeakSet, j: u32) -> BigInt {
    let size = s.len();
    let odd_gap_from = |j: u32| s.largest_odd_gap_left().is_some_and(|b| b >= j);
    let generic = || -neg2_pow(size.saturating_sub(1));
    if s.is_empty() {
        return BigInt::one();
    }
    match j {
        0 => {
            if s.elements().iter().any(|&i| i % 2 == 1) {
                BigInt::zero()
            } else {
                neg2_pow(size)
            }
        }
        1 => {
            if s.has_odd_gap() {
                BigInt::zero()
            } else {
                generic()
            }
        }
        2 => {
            if s.contains(2) || s.has_odd_gap() {
                BigInt::zero()
            } else {
                generic()
            }
        }
        3 => {
            if s.contains(3) || odd_gap_from(3) {
                BigInt::zero()
            } else if s.largest() == Some(2) {
                BigInt::one()
            } else if s.contains(2) {
                -neg2_pow(size - 2)
            } else {
                generic()
            }
        }
        _ => {
            if s.contains(4) || odd_gap_from(4) {
                BigInt::zero()
            } else if size == 1 && s.largest().unwrap() <= 3 {
                BigInt::from(2)
            } else if !s.contains(2) && !s.contains(3) && !s.has_odd_gap() {
                generic()
            } else {
                neg2_pow(size - 1)
            }
        }
    }
}

/// `entries[j][k] = (Δ^j p_S)(k)` for `0 <= j, k <= max(S)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DifferenceTable {
    set: PeakSet,
    entries: Vec<Vec<BigInt>>,
}

impl DifferenceTable {
    pub fn set(&self) -> &PeakSet {
        &self.set
    }

    /// Number of rows (and columns), `max(S) + 1`.
    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, j: usize, k: usize) -> &BigInt {
        &self.entries[j][k]
    }

    pub fn row(&self, j: usize) -> &[BigInt] {
        &self.entries[j]
    }

    pub fn column(&self, k: usize) -> Vec<BigInt> {
        self.entries.iter().map(|r| r[k].clone()).collect()
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.entries
    }
}

/// Whether every entry of the row `m - 1` is positive and row `m` vanishes.
pub(crate) fn table_shape_ok(t: &DifferenceTable) -> bool {
    let m = t.size() - 1;
    t.row(m).iter().all(Zero::is_zero) && t.row(m - 1).iter().all(Signed::is_positive) && t.get(0, m).is_zero()
}
