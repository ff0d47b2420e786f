//! Lower-bound constructions: explicit progression-free sets and the subset
//! systems that encode them.

pub mod behrend;
pub mod coding;
pub mod digits;
pub mod frequency;
pub mod r4;

pub use behrend::{behrend_shell, shell_counts, theoretical_constants, ShellSpec, TheoreticalConstants};
pub use coding::{
    binomial, bound_theorem_const, bound_theorem_const_with, coding_system, greedy_codes, komlos_set, komlos_size,
    komlos_system, BoundBreakdown, BoundTerm,
};
pub use digits::{
    classify_digit_aps, frequency_cascade, primepower_digits_a, primepower_digits_b, DigitReport, DigitSet, Family,
};
pub use frequency::{equal_frequency_set, mod11_k4, multinomial, salem_spencer_odd};
pub use r4::r4_system;

use crate::error::{Error, Result};
use crate::group::GroupParams;
use crate::pointset::PointSet;

/// Concatenation product: (u, v) ↦ u followed by v, in Z_m^(n1+n2).
///
/// Freeness of both factors carries over when m is a prime power. For other
/// m, differences of coprime orders below k can combine into a proper k-AP.
pub fn product(s1: &PointSet, s2: &PointSet) -> Result<PointSet> {
    let (p1, p2) = (s1.params(), s2.params());
    if p1.m() != p2.m() {
        return Err(Error::usage(format!("modulus mismatch: {} vs {}", p1.m(), p2.m())));
    }
    let params = GroupParams::new(p1.m(), p1.n() + p2.n())?;
    let shift = p1
        .index_len()
        .ok_or_else(|| Error::usage(format!("{p1} is too large for indexed point sets")))?;
    if params.index_len().is_none() {
        return Err(Error::usage(format!("{params} is too large for indexed point sets")));
    }
    let idx = s2
        .members()
        .iter()
        .flat_map(|&b| s1.members().iter().map(move |&a| a + b * shift))
        .collect();
    PointSet::from_indices(params, idx)
}

/// size^(1/n).
pub fn alpha_estimate(size: u128, n: u32) -> f64 {
    (size as f64).powf(1.0 / n as f64)
}
