//! Peak polynomials of the symmetric group.
//!
//! `p_S(x)` is the polynomial with `|P_S(n)| = p_S(n) 2^(n-|S|-1)` for every
//! `n > max S`, where `P_S(n)` is the set of permutations of `[n]` whose
//! peak set is `S`. Polynomials are kept exactly in a shifted binomial basis.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod binomial;
pub mod error;
pub mod gap3;
pub mod identities;
pub mod maxima;
pub mod oracle;
pub mod peak;
pub mod rational;
pub mod roots;
pub mod set;

pub use binomial::{binom, BinomialPoly};
pub use error::{Error, Result};
pub use gap3::{FactoredFamily, FactoredPoly, Gap3Factorization};
pub use maxima::kasraoui_max;
pub use peak::{single_peak_poly, DifferenceTable, PeakPolys};
pub use rational::RationalPoly;
pub use roots::{
    find_complex_roots, known_integer_roots, root_report, verify, Check, NumericRoot, Outcome, RootReport, Tolerances,
    Verdict, Witness,
};
pub use set::{admissible_sets, admissible_subsets_for, peak_set_of, PeakSet};
