//! Peak sets and the peak statistic on sequences.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

/// A finite set of positive indices, stored in increasing order.
///
/// Any set can be represented; [`PeakSet::is_admissible`] tells whether it
/// can be the peak set of some permutation.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PeakSet(Vec<u32>);

impl PeakSet {
    pub fn empty() -> Self {
        PeakSet(Vec::new())
    }

    /// Builds a set from arbitrary elements; order and repeats are ignored.
    pub fn new<I: IntoIterator<Item = u32>>(elements: I) -> Self {
        let set: BTreeSet<u32> = elements.into_iter().collect();
        PeakSet(set.into_iter().collect())
    }

    pub fn elements(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn largest(&self) -> Option<u32> {
        self.0.last().copied()
    }

    pub fn smallest(&self) -> Option<u32> {
        self.0.first().copied()
    }

    pub fn contains(&self, i: u32) -> bool {
        self.0.binary_search(&i).is_ok()
    }

    /// Admissible for some `n`: smallest element at least 2 and no two
    /// consecutive integers. The empty set is admissible.
    pub fn is_admissible(&self) -> bool {
        match self.0.first() {
            None => true,
            Some(&first) => first >= 2 && self.0.windows(2).all(|w| w[1] - w[0] >= 2),
        }
    }

    /// Admissible and every element below `n`.
    pub fn is_admissible_for(&self, n: u32) -> bool {
        self.is_admissible() && self.largest().is_none_or(|m| m < n)
    }

    /// Differences between consecutive elements.
    pub fn gaps(&self) -> impl Iterator<Item = u32> + '_ {
        self.0.windows(2).map(|w| w[1] - w[0])
    }

    /// Left endpoint of the rightmost odd gap, if any gap is odd.
    pub fn largest_odd_gap_left(&self) -> Option<u32> {
        self.0
            .windows(2)
            .filter(|w| (w[1] - w[0]) % 2 == 1)
            .map(|w| w[0])
            .next_back()
    }

    pub fn has_odd_gap(&self) -> bool {
        self.largest_odd_gap_left().is_some()
    }

    /// `S` without its maximum.
    pub fn without_max(&self) -> PeakSet {
        let mut v = self.0.clone();
        v.pop();
        PeakSet(v)
    }

    pub fn with(&self, i: u32) -> PeakSet {
        PeakSet::new(self.0.iter().copied().chain(core::iter::once(i)))
    }

    /// Elements `<= j`.
    pub fn up_to(&self, j: u32) -> PeakSet {
        PeakSet(self.0.iter().copied().filter(|&i| i <= j).collect())
    }

    /// Number of elements `> j`.
    pub fn count_above(&self, j: u32) -> usize {
        self.0.iter().filter(|&&i| i > j).count()
    }

    /// Every element shifted by `k`.
    pub fn shifted(&self, k: u32) -> PeakSet {
        PeakSet(self.0.iter().map(|&i| i + k).collect())
    }

    /// Every element shifted down by `k`; elements `<= k` are dropped.
    pub fn shifted_down(&self, k: u32) -> PeakSet {
        PeakSet(self.0.iter().filter(|&&i| i > k).map(|&i| i - k).collect())
    }

    /// Ordering by maximum first, then lexicographic on the elements.
    pub fn sweep_cmp(&self, other: &PeakSet) -> core::cmp::Ordering {
        self.largest().cmp(&other.largest()).then_with(|| self.0.cmp(&other.0))
    }
}

impl FromIterator<u32> for PeakSet {
    fn from_iter<I: IntoIterator<Item = u32>>(iter: I) -> Self {
        PeakSet::new(iter)
    }
}

impl fmt::Debug for PeakSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for PeakSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", i)?;
        }
        write!(f, "}}")
    }
}

/// Peak set of a sequence of distinct values, positions counted from 1.
pub fn peak_set_of(perm: &[i64]) -> Result<PeakSet> {
    let mut seen = BTreeSet::new();
    for &v in perm {
        if !seen.insert(v) {
            return Err(Error::DuplicateEntry(v));
        }
    }
    Ok(PeakSet(
        perm.windows(3)
            .enumerate()
            .filter(|(_, w)| w[0] < w[1] && w[1] > w[2])
            .map(|(i, _)| i as u32 + 2)
            .collect(),
    ))
}

/// All admissible nonempty sets with maximum at most `max_peak`, ordered by
/// maximum and then lexicographically.
pub fn admissible_sets(max_peak: u32) -> Vec<PeakSet> {
    let mut out = Vec::new();
    for m in 2..=max_peak {
        let mut prefix = Vec::new();
        extend_below(m, 2, &mut prefix, &mut out);
    }
    out.sort_by(PeakSet::sweep_cmp);
    out
}

// Emits every admissible set with maximum `m` whose smaller elements are
// chosen from `lo..m-1`.
fn extend_below(m: u32, lo: u32, prefix: &mut Vec<u32>, out: &mut Vec<PeakSet>) {
    let mut with_max = prefix.clone();
    with_max.push(m);
    out.push(PeakSet(with_max));
    for i in lo..m.saturating_sub(1) {
        prefix.push(i);
        extend_below(m, i + 2, prefix, out);
        prefix.pop();
    }
}

/// Admissible subsets (including the empty set) of `{2, ..., n-1}`.
pub fn admissible_subsets_for(n: u32) -> Vec<PeakSet> {
    let mut out = alloc::vec![PeakSet::empty()];
    out.extend(admissible_sets(n.saturating_sub(1)));
    out
}
