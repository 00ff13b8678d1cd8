use crate::set::PeakSet;

/// Precondition failures reported by the library.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("sequence repeats the value {0}; a permutation needs distinct entries")]
    DuplicateEntry(i64),
    #[error("peak set {0} is not admissible")]
    Inadmissible(PeakSet),
    #[error("operation needs a nonempty peak set")]
    EmptySet,
    #[error("peak set {set} has {got} elements, need at least {needed}")]
    TooFewPeaks { set: PeakSet, needed: usize, got: usize },
    #[error("peak set {0} has no two consecutive elements differing by 3")]
    NoGapOfThree(PeakSet),
    #[error("closed-form special values exist for 0..=4 only, got {0}")]
    SpecialValueOutOfRange(i64),
    #[error("maximizing peak sets are characterized for n >= 6 only, got {0}")]
    LengthTooSmall(u32),
    #[error("n = {n} is outside the supported range {min}..={max}")]
    LengthOutOfRange { n: u32, min: u32, max: u32 },
    #[error("{0} is not an exact root")]
    NotARoot(i64),
    #[error("root finding needs a polynomial of degree >= 1")]
    DegreeTooSmall,
    #[error("root iteration did not converge after {0} iterations")]
    NoConvergence(u32),
    #[error("numerical roots failed certification: {0}")]
    Uncertified(&'static str),
}

pub type Result<T> = core::result::Result<T, Error>;
