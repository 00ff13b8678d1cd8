//! Factorizations forced by a gap of three, and the fully factored families.
//!
//! If consecutive peaks `m < m + 3` occur in `S`, then with `S_L` the part of
//! `S` up to `m` and `S_R` the rest shifted down by `m + 1`,
//!
//! ```text
//! p_S(x) = p_{S_L}(m+1) / (2 (m+1)!) * p_{S_R}(x - (m+1)) * prod_{k=0}^{m} (x - k)
//! ```

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};
use crate::peak::PeakPolys;
use crate::rational::RationalPoly;
use crate::set::PeakSet;

fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn ratio(num: BigInt, den: BigInt) -> BigRational {
    BigRational::new(num, den)
}

/// One split of `S` at a gap of three.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gap3Factorization {
    /// Elements up to and including the gap's left end `m`.
    pub left: PeakSet,
    /// Elements past the gap shifted down by `m + 1`; always starts at 2.
    pub right: PeakSet,
    /// Left end of the gap.
    pub m: u32,
    /// `p_{S_L}(m+1) / (2 (m+1)!)`.
    pub scalar: BigRational,
    right_poly: RationalPoly,
}

impl Gap3Factorization {
    /// The product form as a monomial-basis polynomial.
    pub fn reconstruct(&self) -> RationalPoly {
        let shifted = self.right_poly.shift(&rat(-(self.m as i64 + 1)));
        let roots: Vec<i64> = (0..=self.m as i64).collect();
        &RationalPoly::from_integer_roots(&self.scalar, &roots) * &shifted
    }
}

/// Left endpoints of every gap of exactly three, left to right.
pub fn gap3_positions(s: &PeakSet) -> Vec<u32> {
    s.elements()
        .windows(2)
        .filter(|w| w[1] - w[0] == 3)
        .map(|w| w[0])
        .collect()
}

impl PeakPolys {
    /// Split at the leftmost gap of three.
    pub fn gap3_split(&mut self, s: &PeakSet) -> Result<Gap3Factorization> {
        let m = *gap3_positions(s)
            .first()
            .ok_or_else(|| Error::NoGapOfThree(s.clone()))?;
        self.gap3_split_at(s, m)
    }

    /// Split at the gap of three whose left end is `m`.
    pub fn gap3_split_at(&mut self, s: &PeakSet, m: u32) -> Result<Gap3Factorization> {
        if !s.is_admissible() {
            return Err(Error::Inadmissible(s.clone()));
        }
        if !gap3_positions(s).contains(&m) {
            return Err(Error::NoGapOfThree(s.clone()));
        }
        let left = s.up_to(m);
        let right = s.shifted_down(m + 1);
        let scalar = ratio(self.eval(&left, m as i64 + 1), BigInt::from(2) * factorial(m + 1));
        let right_poly = self.poly(&right).to_monomial();
        Ok(Gap3Factorization {
            left,
            right,
            m,
            scalar,
            right_poly,
        })
    }

    /// The constant `C(S) = p_{S_L+1}(m+2) / ((m+2) p_{S_L}(m+1))` with
    /// `p_{S+1}(x) = C(S) p_S(x-1) x`, using the leftmost gap of three.
    pub fn gap3_shift_constant(&mut self, s: &PeakSet) -> Result<BigRational> {
        let split = self.gap3_split(s)?;
        let m = split.m as i64;
        let num = self.eval(&split.left.shifted(1), m + 2);
        let den = BigInt::from(m + 2) * self.eval(&split.left, m + 1);
        Ok(ratio(num, den))
    }

    /// Closed-form factorization when `S` belongs to one of the families whose
    /// peak polynomial splits into linear factors over the integers.
    pub fn factored_family(&mut self, s: &PeakSet) -> Option<FactoredPoly> {
        if !s.is_admissible() || s.len() < 2 {
            return None;
        }
        let e = s.elements();
        let gaps: Vec<u32> = s.gaps().collect();
        let last = gaps.len() - 1;
        let first = e[0] as i64;

        if gaps.iter().all(|&g| g == 3) {
            let k = gaps.len() as i64;
            let scalar = ratio(
                BigInt::from(first - 1),
                BigInt::from(2) * factorial(first as u32 + 1) * BigInt::from(12).pow(k as u32 - 1),
            );
            let mut roots = alloc::vec![first + 3 * k];
            roots.extend(0..=first + 3 * (k - 1));
            return Some(FactoredPoly::new(FactoredFamily::ArithmeticGap3, scalar, roots));
        }
        if gaps.len() >= 2 && gaps[last] == 2 && gaps[..last].iter().all(|&g| g == 3) {
            let k = last as i64;
            let scalar = ratio(
                BigInt::from(first - 1),
                factorial(first as u32 + 1) * BigInt::from(12).pow(k as u32),
            );
            let mut roots = alloc::vec![first + 3 * k + 2, first + 3 * k, first + 3 * k - 5];
            roots.extend(0..=first + 3 * (k - 1));
            return Some(FactoredPoly::new(FactoredFamily::ArithmeticGap3ThenGap2, scalar, roots));
        }
        if gaps[last] == 3 {
            let m = e[e.len() - 2];
            let s1 = s.without_max();
            let scalar = ratio(self.eval(&s1, m as i64 + 1), BigInt::from(2) * factorial(m + 1));
            let mut roots = alloc::vec![m as i64 + 3];
            roots.extend(0..=m as i64);
            return Some(FactoredPoly::new(FactoredFamily::FinalGap3, scalar, roots));
        }
        if gaps.len() >= 2 && gaps[last] == 2 && gaps[last - 1] == 3 {
            let m = e[e.len() - 3];
            let base = s.without_max().without_max();
            let scalar = ratio(self.eval(&base, m as i64 + 1), BigInt::from(12) * factorial(m + 1));
            let m = m as i64;
            let mut roots = alloc::vec![m + 5, m + 3, m - 2];
            roots.extend(0..=m);
            return Some(FactoredPoly::new(FactoredFamily::FinalGap3ThenGap2, scalar, roots));
        }
        None
    }
}

/// Which closed form produced a [`FactoredPoly`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FactoredFamily {
    /// `{m, m+3, ..., m+3k}`.
    ArithmeticGap3,
    /// `{m, m+3, ..., m+3k, m+3k+2}`.
    ArithmeticGap3ThenGap2,
    /// Any set ending in a gap of three.
    FinalGap3,
    /// Any set ending in gaps three then two.
    FinalGap3ThenGap2,
}

/// `scalar * prod (x - r)` over integer roots, listed with multiplicity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactoredPoly {
    pub family: FactoredFamily,
    pub scalar: BigRational,
    pub roots: Vec<i64>,
}

impl FactoredPoly {
    fn new(family: FactoredFamily, scalar: BigRational, mut roots: Vec<i64>) -> Self {
        roots.sort_unstable();
        FactoredPoly { family, scalar, roots }
    }

    pub fn poly(&self) -> RationalPoly {
        RationalPoly::from_integer_roots(&self.scalar, &self.roots)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[u32]) -> PeakSet {
        PeakSet::new(v.iter().copied())
    }

    #[test]
    fn split_of_2_5() {
        let mut pp = PeakPolys::new();
        let s = set(&[2, 5]);
        let f = pp.gap3_split(&s).unwrap();
        assert_eq!(f.left, set(&[2]));
        assert_eq!(f.right, set(&[2]));
        assert_eq!(f.scalar, ratio(BigInt::from(1), BigInt::from(12)));
        let expect = RationalPoly::from_integer_roots(&f.scalar, &[0, 1, 2, 5]);
        assert_eq!(f.reconstruct(), expect);
        assert_eq!(pp.poly(&s).to_monomial(), expect);
        assert!(matches!(pp.gap3_split(&set(&[2, 4])), Err(Error::NoGapOfThree(_))));
    }

    #[test]
    fn shift_constant_of_2_5() {
        let mut pp = PeakPolys::new();
        let c = pp.gap3_shift_constant(&set(&[2, 5])).unwrap();
        assert_eq!(c, ratio(BigInt::from(1), BigInt::from(2)));
        let p36 = pp.poly(&set(&[3, 6])).to_monomial();
        let expect = RationalPoly::from_integer_roots(&ratio(BigInt::from(1), BigInt::from(24)), &[0, 1, 2, 3, 6]);
        assert_eq!(p36, expect);
        let p25 = pp.poly(&set(&[2, 5])).to_monomial();
        let rhs = p25.shift(&rat(-1)).mul_linear(&rat(0)).scale(&c);
        assert_eq!(p36, rhs);
    }

    #[test]
    fn factored_families() {
        let mut pp = PeakPolys::new();
        let f = pp.factored_family(&set(&[2, 5, 8])).unwrap();
        assert_eq!(f.family, FactoredFamily::ArithmeticGap3);
        assert_eq!(f.scalar, ratio(BigInt::from(1), BigInt::from(2 * 6 * 12)));
        assert_eq!(f.roots, alloc::vec![0, 1, 2, 3, 4, 5, 8]);
        assert_eq!(f.poly(), pp.poly(&set(&[2, 5, 8])).to_monomial());

        let g = pp.factored_family(&set(&[2, 5, 7])).unwrap();
        assert_eq!(g.roots, alloc::vec![0, 0, 1, 2, 5, 7]);
        assert_eq!(g.poly(), pp.poly(&set(&[2, 5, 7])).to_monomial());

        assert_eq!(pp.factored_family(&set(&[2, 4])), None);
        assert_eq!(pp.factored_family(&set(&[4])), None);
    }
}
