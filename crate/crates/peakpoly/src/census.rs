//! Brute-force census spread over a thread pool.

use rayon::prelude::*;

use peakpoly_core::oracle::{census_masks_with_first, PeakSetCensus, DEFAULT_CENSUS_CAP, HARD_CENSUS_CAP};
use peakpoly_core::Error;

use crate::UsageError;

pub const CAP_VAR: &str = "PEAKPOLY_ORACLE_CAP";

/// Largest `n` the census may enumerate: `PEAKPOLY_ORACLE_CAP` if set,
/// otherwise the library default.
pub fn oracle_cap() -> Result<u32, UsageError> {
    match std::env::var(CAP_VAR) {
        Err(_) => Ok(DEFAULT_CENSUS_CAP),
        Ok(v) => {
            let cap: u32 = v
                .trim()
                .parse()
                .map_err(|_| UsageError(format!("{} must be a positive integer, got {:?}", CAP_VAR, v)))?;
            if cap == 0 || cap > HARD_CENSUS_CAP {
                return Err(UsageError(format!(
                    "{} = {} is outside 1..={}",
                    CAP_VAR, cap, HARD_CENSUS_CAP
                )));
            }
            Ok(cap)
        }
    }
}

/// Same result as the sequential census, one task per first letter.
pub fn parallel_census(n: u32, cap: u32) -> Result<PeakSetCensus, Error> {
    let max = cap.min(HARD_CENSUS_CAP);
    if n == 0 || n > max {
        return Err(Error::LengthOutOfRange { n, min: 1, max });
    }
    let total = (1..=n)
        .into_par_iter()
        .map(|first| census_masks_with_first(n, first))
        .reduce(
            || vec![0u64; 1 << n],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        );
    Ok(PeakSetCensus::from_masks(n, &total))
}
