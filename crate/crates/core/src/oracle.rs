//! Ground truth that does not go through peak polynomials: exhaustive
//! enumeration of `S_n` and `B_n`, tangent numbers, and counting by
//! inclusion-exclusion over alternating runs.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::set::{admissible_subsets_for, PeakSet};

/// Largest `n` enumerated by [`census`] unless the caller raises the cap.
pub const DEFAULT_CENSUS_CAP: u32 = 11;
/// Largest `n` enumerated by [`census_signed`].
pub const SIGNED_CENSUS_CAP: u32 = 7;
/// Peak masks are `u64`; this is the hard ceiling for any cap.
pub const HARD_CENSUS_CAP: u32 = 20;

/// Number of permutations of `[n]` for each peak set that occurs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeakSetCensus {
    pub n: u32,
    pub counts: BTreeMap<PeakSet, BigInt>,
}

impl PeakSetCensus {
    /// Count for `s`, zero if `s` never occurs.
    pub fn get(&self, s: &PeakSet) -> BigInt {
        self.counts.get(s).cloned().unwrap_or_default()
    }

    pub fn total(&self) -> BigInt {
        self.counts.values().sum()
    }

    /// Builds a census from per-mask counts (bit `i` set when `i` is a peak).
    pub fn from_masks(n: u32, masks: &[u64]) -> Self {
        let counts = masks
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(mask, &c)| (mask_to_set(mask as u64), BigInt::from(c)))
            .collect();
        PeakSetCensus { n, counts }
    }
}

fn mask_to_set(mask: u64) -> PeakSet {
    PeakSet::new((0..64).filter(|b| mask >> b & 1 == 1))
}

#[inline]
fn peak_mask<T: Ord>(w: &[T]) -> u64 {
    let mut mask = 0u64;
    for i in 1..w.len().saturating_sub(1) {
        if w[i - 1] < w[i] && w[i] > w[i + 1] {
            mask |= 1 << (i + 1);
        }
    }
    mask
}

/// Visits every ordering of `items` (Heap's algorithm, iterative).
fn for_each_permutation<T, F: FnMut(&[T])>(items: &mut [T], mut visit: F) {
    let n = items.len();
    let mut c = vec![0usize; n];
    visit(items);
    let mut i = 1;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                items.swap(0, i);
            } else {
                items.swap(c[i], i);
            }
            visit(items);
            c[i] += 1;
            i = 1;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

fn check_bound(n: u32, cap: u32) -> Result<()> {
    let max = cap.min(HARD_CENSUS_CAP);
    if n == 0 || n > max {
        return Err(Error::LengthOutOfRange { n, min: 1, max });
    }
    Ok(())
}

/// Per-mask counts for the permutations of `[n]` starting with `first`
/// (1-based value). The slices for `first = 1..=n` partition `S_n`.
pub fn census_masks_with_first(n: u32, first: u32) -> Vec<u64> {
    let n = n as usize;
    let mut counts = vec![0u64; 1 << n];
    let mut word = vec![first as u8];
    let mut rest: Vec<u8> = (1..=n as u8).filter(|&v| v as u32 != first).collect();
    word.extend_from_slice(&rest);
    for_each_permutation(&mut rest, |tail| {
        word[1..].copy_from_slice(tail);
        counts[peak_mask(&word) as usize] += 1;
    });
    counts
}

/// Exhaustive peak-set census of `S_n`, `1 <= n <= cap`.
pub fn census_with_cap(n: u32, cap: u32) -> Result<PeakSetCensus> {
    check_bound(n, cap)?;
    let mut total = vec![0u64; 1 << n];
    for first in 1..=n {
        for (t, c) in total.iter_mut().zip(census_masks_with_first(n, first)) {
            *t += c;
        }
    }
    Ok(PeakSetCensus::from_masks(n, &total))
}

/// [`census_with_cap`] at [`DEFAULT_CENSUS_CAP`].
pub fn census(n: u32) -> Result<PeakSetCensus> {
    census_with_cap(n, DEFAULT_CENSUS_CAP)
}

/// Exhaustive peak-set census of the signed permutations `B_n`, `n <= 7`.
pub fn census_signed(n: u32) -> Result<PeakSetCensus> {
    check_bound(n, SIGNED_CENSUS_CAP)?;
    let n = n as usize;
    let mut counts = vec![0u64; 1 << n];
    let mut perm: Vec<i32> = (1..=n as i32).collect();
    let mut word = vec![0i32; n];
    for_each_permutation(&mut perm, |p| {
        for signs in 0u32..(1 << n) {
            for (k, (&v, w)) in p.iter().zip(word.iter_mut()).enumerate() {
                *w = if signs >> k & 1 == 1 { -v } else { v };
            }
            counts[peak_mask(&word) as usize] += 1;
        }
    });
    Ok(PeakSetCensus::from_masks(n as u32, &counts))
}

/// Euler zigzag numbers `E_0 ..= E_n` from the boustrophedon triangle.
pub fn zigzag_numbers(n: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::one()];
    let mut row = vec![BigInt::one()];
    for i in 1..=n {
        // Entringer: E(i, 0) = 0, E(i, k) = E(i, k-1) + E(i-1, i-k)
        let mut next = vec![BigInt::zero(); i + 1];
        for k in 1..=i {
            next[k] = &next[k - 1] + &row[i - k];
        }
        out.push(next[i].clone());
        row = next;
    }
    out
}

/// Tangent numbers `E_1, E_3, ..., E_{2 k_max + 1}`.
pub fn tangent_numbers(k_max: usize) -> Vec<BigInt> {
    zigzag_numbers(2 * k_max + 1).into_iter().skip(1).step_by(2).collect()
}

/// Partition of an admissible set into maximal runs `{i, i+2, i+4, ...}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlternatingDecomposition {
    pub blocks: Vec<PeakSet>,
}

impl AlternatingDecomposition {
    /// Union of the blocks.
    pub fn reassemble(&self) -> PeakSet {
        PeakSet::new(self.blocks.iter().flat_map(|b| b.elements().iter().copied()))
    }
}

pub fn alternating_decomposition(s: &PeakSet) -> Result<AlternatingDecomposition> {
    if !s.is_admissible() {
        return Err(Error::Inadmissible(s.clone()));
    }
    let mut blocks: Vec<Vec<u32>> = Vec::new();
    for &i in s.elements() {
        match blocks.last_mut() {
            Some(run) if i - run.last().unwrap() == 2 => run.push(i),
            _ => blocks.push(vec![i]),
        }
    }
    Ok(AlternatingDecomposition {
        blocks: blocks.into_iter().map(PeakSet::new).collect(),
    })
}

fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

fn check_length(s: &PeakSet, n: u32) -> Result<()> {
    if !s.is_admissible() {
        return Err(Error::Inadmissible(s.clone()));
    }
    let min = s.largest().map_or(1, |m| m + 1);
    if n < min {
        return Err(Error::LengthOutOfRange { n, min, max: u32::MAX });
    }
    Ok(())
}

fn q_count_with(s: &PeakSet, n: u32, tangents: &[BigInt]) -> BigInt {
    let dec = alternating_decomposition(s).expect("admissible");
    let mut q = BigRational::from_integer(factorial(n));
    for block in &dec.blocks {
        let k = block.len();
        q *= BigRational::new(tangents[k].clone(), factorial(2 * k as u32 + 1));
    }
    debug_assert!(q.is_integer());
    q.to_integer()
}

/// `|{π ∈ S_n : S ⊆ P(π)}| = n! prod_r E_{2|A_r|+1} / (2|A_r|+1)!` over the
/// alternating runs `A_r` of `S`; needs `n >= max(S) + 1`.
pub fn q_count(s: &PeakSet, n: u32) -> Result<BigInt> {
    check_length(s, n)?;
    let tangents = tangent_numbers(s.len());
    Ok(q_count_with(s, n, &tangents))
}

/// `|P_S(n)| = sum_{T ⊇ S} (-1)^|T - S| |Q_T(n)|` over admissible
/// `T ⊆ {2, ..., n-1}`.
pub fn count_inclusion_exclusion(s: &PeakSet, n: u32) -> Result<BigInt> {
    check_length(s, n)?;
    let tangents = tangent_numbers(n as usize / 2 + 1);
    let mut total = BigInt::zero();
    for t in admissible_subsets_for(n) {
        if !s.elements().iter().all(|&i| t.contains(i)) {
            continue;
        }
        let term = q_count_with(&t, n, &tangents);
        if (t.len() - s.len()).is_multiple_of(2) {
            total += term;
        } else {
            total -= term;
        }
    }
    Ok(total)
}

/// Positions `i ∈ {2, ..., n-1}` outside `S` and not adjacent to any element
/// of `S`: the places an admissible superset could add a peak.
///
/// `n` must be `max(S) + 1` or `max(S) + 2`.
pub fn free_indices(s: &PeakSet, n: u32) -> Result<Vec<u32>> {
    if !s.is_admissible() {
        return Err(Error::Inadmissible(s.clone()));
    }
    let m = s.largest().ok_or(Error::EmptySet)?;
    if n != m + 1 && n != m + 2 {
        return Err(Error::LengthOutOfRange {
            n,
            min: m + 1,
            max: m + 2,
        });
    }
    Ok((2..n).filter(|&i| far_from(s, i)).collect())
}

/// Free indices read literally as `i ∈ [m+2]`, not a peak and not adjacent
/// to one. Never empty, since `m + 2` always qualifies.
pub fn free_indices_in_first_m_plus_2(s: &PeakSet) -> Vec<u32> {
    let m = s.largest().unwrap_or(0);
    (1..=m + 2).filter(|&i| far_from(s, i)).collect()
}

fn far_from(s: &PeakSet, i: u32) -> bool {
    s.elements().iter().all(|&p| p.abs_diff(i) >= 2)
}
