//! Dense univariate polynomials over the rationals, monomial basis.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// `c_0 + c_1 x + ... + c_d x^d` with exact rational coefficients.
///
/// The coefficient vector never ends in a zero; the zero polynomial has no
/// coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct RationalPoly {
    coeffs: Vec<BigRational>,
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl RationalPoly {
    pub fn new(coeffs: Vec<BigRational>) -> Self {
        let mut p = RationalPoly { coeffs };
        while p.coeffs.last().is_some_and(Zero::is_zero) {
            p.coeffs.pop();
        }
        p
    }

    pub fn from_integers(coeffs: &[i64]) -> Self {
        RationalPoly::new(coeffs.iter().map(|&c| rat(c)).collect())
    }

    pub fn zero() -> Self {
        RationalPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        RationalPoly {
            coeffs: vec![BigRational::one()],
        }
    }

    pub fn constant(c: BigRational) -> Self {
        RationalPoly::new(vec![c])
    }

    /// `x - r`.
    pub fn linear(r: &BigRational) -> Self {
        RationalPoly::new(vec![-r.clone(), BigRational::one()])
    }

    /// `scalar * prod (x - r)` over the given integer roots.
    pub fn from_integer_roots(scalar: &BigRational, roots: &[i64]) -> Self {
        roots
            .iter()
            .fold(RationalPoly::constant(scalar.clone()), |p, &r| p.mul_linear(&rat(r)))
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_int(&self, x: i64) -> BigRational {
        self.eval(&rat(x))
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        RationalPoly::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// `self * (x - r)`.
    pub fn mul_linear(&self, r: &BigRational) -> Self {
        if self.is_zero() {
            return RationalPoly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i + 1] += c;
            out[i] -= c * r;
        }
        RationalPoly::new(out)
    }

    /// Synthetic division by `x - r`: returns `(quotient, remainder)`.
    pub fn div_linear(&self, r: &BigRational) -> (RationalPoly, BigRational) {
        let d = match self.degree() {
            None | Some(0) => return (RationalPoly::zero(), self.coeff(0)),
            Some(d) => d,
        };
        let mut q = vec![BigRational::zero(); d];
        let mut carry = BigRational::zero();
        for i in (0..=d).rev() {
            carry = carry * r + &self.coeffs[i];
            if i > 0 {
                q[i - 1] = carry.clone();
            }
        }
        (RationalPoly::new(q), carry)
    }

    /// `q(x) = p(x + a)`.
    pub fn shift(&self, a: &BigRational) -> Self {
        let step = RationalPoly::new(vec![a.clone(), BigRational::one()]);
        self.coeffs.iter().rev().fold(RationalPoly::zero(), |acc, c| {
            &(&acc * &step) + &RationalPoly::constant(c.clone())
        })
    }

    /// Monic copy; the zero polynomial stays zero.
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => RationalPoly::zero(),
            Some(lead) => {
                let inv = lead.recip();
                self.scale(&inv)
            }
        }
    }

    /// Coefficients rounded to `f64`, constant term first.
    pub fn to_f64(&self) -> Vec<f64> {
        self.coeffs.iter().map(|c| c.to_f64().unwrap_or(f64::NAN)).collect()
    }
}

impl Add for &RationalPoly {
    type Output = RationalPoly;
    fn add(self, rhs: &RationalPoly) -> RationalPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        RationalPoly::new((0..len).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &RationalPoly {
    type Output = RationalPoly;
    fn sub(self, rhs: &RationalPoly) -> RationalPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        RationalPoly::new((0..len).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &RationalPoly {
    type Output = RationalPoly;
    fn mul(self, rhs: &RationalPoly) -> RationalPoly {
        if self.is_zero() || rhs.is_zero() {
            return RationalPoly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RationalPoly::new(out)
    }
}

impl Neg for &RationalPoly {
    type Output = RationalPoly;
    fn neg(self) -> RationalPoly {
        RationalPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl fmt::Debug for RationalPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalPoly({})", self)
    }
}

impl fmt::Display for RationalPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            let mag = c.abs();
            let show_mag = i == 0 || !mag.is_one();
            if show_mag {
                if mag.is_integer() {
                    write!(f, "{}", mag.numer())?;
                } else {
                    write!(f, "({}/{})", mag.numer(), mag.denom())?;
                }
            }
            match i {
                0 => {}
                1 => write!(f, "{}x", if show_mag { "*" } else { "" })?,
                _ => write!(f, "{}x^{}", if show_mag { "*" } else { "" }, i)?,
            }
        }
        Ok(())
    }
}
