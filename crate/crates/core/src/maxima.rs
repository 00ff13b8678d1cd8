//! Peak sets of `S_n` carrying the most permutations.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};
use crate::set::PeakSet;

fn progression(start: u32, step: u32, below: u32) -> impl Iterator<Item = u32> {
    (0..).map(move |i| start + i * step).take_while(move |&x| x < below)
}

/// The maximizing peak sets of `S_n` (`n >= 6`) and the common maximum count.
///
/// * `n ≡ 0 (mod 3)`: `{3,6,9,..}` and `{4,7,10,..}`, count `(1/5) 3^(2-l) n!`;
/// * `n ≡ 1 (mod 3)`: `{3,6,..,3s, 3s+2, 3s+5, ..}` for `1 <= s < l`,
///   count `(2/5) 3^(1-l) n!`;
/// * `n ≡ 2 (mod 3)`: `{3,6,9,..}`, count `3^(-l) n!`;
///
/// all intersected with `[n-1]`, where `l = floor(n/3)`.
pub fn kasraoui_max(n: u32) -> Result<(Vec<PeakSet>, BigInt)> {
    if n < 6 {
        return Err(Error::LengthTooSmall(n));
    }
    let l = n / 3;
    let mut sets = match n % 3 {
        0 => alloc::vec![PeakSet::new(progression(3, 3, n)), PeakSet::new(progression(4, 3, n)),],
        1 => (1..l)
            .map(|s| PeakSet::new(progression(3, 3, 3 * s + 1).chain(progression(3 * s + 2, 3, n))))
            .collect(),
        _ => alloc::vec![PeakSet::new(progression(3, 3, n))],
    };
    sets.sort_by(PeakSet::sweep_cmp);
    sets.dedup();

    let n_fact: BigInt = (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k));
    let three = |e: i64| -> BigRational {
        let p = BigInt::from(3).pow(e.unsigned_abs() as u32);
        if e >= 0 {
            BigRational::from_integer(p)
        } else {
            BigRational::new(BigInt::one(), p)
        }
    };
    let l = l as i64;
    let factor = match n % 3 {
        0 => BigRational::new(BigInt::from(1), BigInt::from(5)) * three(2 - l),
        1 => BigRational::new(BigInt::from(2), BigInt::from(5)) * three(1 - l),
        _ => three(-l),
    };
    let count = factor * BigRational::from_integer(n_fact);
    debug_assert!(count.is_integer());
    Ok((sets, count.to_integer()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[u32]) -> PeakSet {
        PeakSet::new(v.iter().copied())
    }

    #[test]
    fn small_cases() {
        let (sets, count) = kasraoui_max(6).unwrap();
        assert_eq!(sets, alloc::vec![set(&[3]), set(&[4])]);
        assert_eq!(count, BigInt::from(144));
        let (sets, count) = kasraoui_max(7).unwrap();
        assert_eq!(sets, alloc::vec![set(&[3, 5])]);
        assert_eq!(count, BigInt::from(672));
        let (sets, count) = kasraoui_max(8).unwrap();
        assert_eq!(sets, alloc::vec![set(&[3, 6])]);
        assert_eq!(count, BigInt::from(4480));
        assert_eq!(kasraoui_max(5), Err(Error::LengthTooSmall(5)));
    }
}
