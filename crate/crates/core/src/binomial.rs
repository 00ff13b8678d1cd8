//! Integer-valued polynomials in a shifted binomial basis.
//!
//! A [`BinomialPoly`] centered at `c` with coefficients `a_0..a_d` stands for
//! `sum_j a_j * C(x - c, j)`. Coefficient `j` is exactly the forward
//! difference `(Δ^j p)(c)`, so moving the center one step is the Newton
//! column update `(Δ^j p)(c + 1) = (Δ^j p)(c) + (Δ^{j+1} p)(c)`.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::rational::RationalPoly;

/// Generalized binomial coefficient `n (n-1) ... (n-j+1) / j!`.
///
/// Defined for every integer `n`, including negative ones.
pub fn binom(n: &BigInt, j: usize) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..j {
        // acc == C(n, i) here, so the division is exact.
        acc *= n - BigInt::from(i);
        acc /= BigInt::from(i + 1);
    }
    acc
}

/// [`binom`] for machine-sized `n`.
pub fn binom_i64(n: i64, j: usize) -> BigInt {
    binom(&BigInt::from(n), j)
}

/// Polynomial with integer coefficients in the basis `{ C(x - center, j) }`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinomialPoly {
    center: i64,
    coeffs: Vec<BigInt>,
}

impl BinomialPoly {
    pub fn new(center: i64, coeffs: Vec<BigInt>) -> Self {
        let mut p = BinomialPoly { center, coeffs };
        p.trim();
        p
    }

    pub fn zero(center: i64) -> Self {
        BinomialPoly {
            center,
            coeffs: Vec::new(),
        }
    }

    pub fn constant(center: i64, value: BigInt) -> Self {
        BinomialPoly::new(center, vec![value])
    }

    /// The basis vector `C(x - center, j)`.
    pub fn basis(center: i64, j: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); j + 1];
        coeffs[j] = BigInt::one();
        BinomialPoly { center, coeffs }
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn center(&self) -> i64 {
        self.center
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient `j`, zero past the degree.
    pub fn coeff(&self, j: usize) -> BigInt {
        self.coeffs.get(j).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, n: i64) -> BigInt {
        let shift = BigInt::from(n) - BigInt::from(self.center);
        let mut basis = BigInt::one();
        let mut acc = BigInt::zero();
        for (j, a) in self.coeffs.iter().enumerate() {
            if j > 0 {
                basis *= &shift - BigInt::from(j - 1);
                basis /= BigInt::from(j);
            }
            if !a.is_zero() {
                acc += a * &basis;
            }
        }
        acc
    }

    /// `Δp`, kept at the same center: the coefficient sequence shifted left.
    pub fn forward_difference(&self) -> Self {
        BinomialPoly {
            center: self.center,
            coeffs: self.coeffs.iter().skip(1).cloned().collect(),
        }
    }

    /// Moves the center by one in either direction.
    pub fn step_center(&self, forward: bool) -> Self {
        let mut coeffs = self.coeffs.clone();
        let d = coeffs.len();
        if forward {
            // (Δ^j p)(c+1) = (Δ^j p)(c) + (Δ^{j+1} p)(c)
            for j in 0..d.saturating_sub(1) {
                let next = coeffs[j + 1].clone();
                coeffs[j] += next;
            }
        } else {
            // Top row is constant; solve downward for (Δ^j p)(c-1).
            for j in (0..d.saturating_sub(1)).rev() {
                let next = coeffs[j + 1].clone();
                coeffs[j] -= next;
            }
        }
        BinomialPoly::new(if forward { self.center + 1 } else { self.center - 1 }, coeffs)
    }

    /// The same polynomial expanded around `new_center`.
    pub fn recenter(&self, new_center: i64) -> Self {
        let mut p = self.clone();
        while p.center < new_center {
            p = p.step_center(true);
        }
        while p.center > new_center {
            p = p.step_center(false);
        }
        p
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        BinomialPoly::new(self.center, self.coeffs.iter().map(|a| a * k).collect())
    }

    /// Sum of two polynomials; `other` is recentered first if needed.
    pub fn add(&self, other: &BinomialPoly) -> Self {
        let other = other.recenter(self.center);
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len).map(|j| self.coeff(j) + other.coeff(j)).collect();
        BinomialPoly::new(self.center, coeffs)
    }

    pub fn sub(&self, other: &BinomialPoly) -> Self {
        self.add(&other.scale(&BigInt::from(-1)))
    }

    /// Exact conversion to the monomial basis.
    pub fn to_monomial(&self) -> RationalPoly {
        let mut acc = RationalPoly::zero();
        let mut basis = RationalPoly::one();
        let c = BigInt::from(self.center);
        for (j, a) in self.coeffs.iter().enumerate() {
            if j > 0 {
                // C(x-c, j) = C(x-c, j-1) * (x - c - (j-1)) / j
                let root = BigRational::from_integer(&c + BigInt::from(j - 1));
                basis = basis
                    .mul_linear(&root)
                    .scale(&BigRational::new(BigInt::one(), BigInt::from(j)));
            }
            if !a.is_zero() {
                acc = &acc + &basis.scale(&BigRational::from_integer(a.clone()));
            }
        }
        acc
    }
}

/// `C(x - 1, m - 1)` at center 0, i.e. coefficients `(-1)^(m-1-k)` for `k < m`.
///
/// # Panics
/// If `m == 0`.
pub fn vandermonde_shift(m: usize) -> BinomialPoly {
    assert!(m >= 1, "vandermonde_shift needs m >= 1");
    let coeffs = (0..m)
        .map(|k| {
            if (m - 1 - k).is_multiple_of(2) {
                BigInt::one()
            } else {
                -BigInt::one()
            }
        })
        .collect();
    BinomialPoly::new(0, coeffs)
}

impl fmt::Debug for BinomialPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinomialPoly(center={}, {:?})", self.center, self.coeffs)
    }
}

impl fmt::Display for BinomialPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (j, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let sign = if a.is_negative() { "-" } else { "+" };
            if first {
                if a.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", sign)?;
            }
            first = false;
            let mag = a.abs();
            let arg = match self.center {
                0 => alloc::string::String::from("x"),
                c if c > 0 => alloc::format!("x-{}", c),
                c => alloc::format!("x+{}", -c),
            };
            if j == 0 {
                write!(f, "{}", mag)?;
            } else if mag.is_one() {
                write!(f, "C({}, {})", arg, j)?;
            } else {
                write!(f, "{}*C({}, {})", mag, arg, j)?;
            }
        }
        Ok(())
    }
}
