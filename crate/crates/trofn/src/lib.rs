//! Exact arithmetic for trapezoidal ordered fuzzy numbers.
//!
//! An ordered fuzzy number carries an orientation on top of its membership
//! function: the quadruple `Tr(a, b, c, d)` is read left to right, so
//! `Tr(1, 2, 3, 4)` and `Tr(4, 3, 2, 1)` describe the same trapezoid with
//! opposite orientations and are distinct values here. The component-wise
//! (Kosiński) sum of two such numbers can fail to be a fuzzy number at all;
//! the revised sum defined in [`ofn`] repairs that, at the price of losing
//! associativity and permutation invariance. The [`spectrum`] module
//! enumerates every association tree and operand ordering of a sum chain and
//! aggregates the distinct outcomes, which is the honest way to report a
//! result that depends on evaluation order.
//!
//! All coordinates are exact rationals ([`ExactNumber`]); no floating point
//! is used anywhere, so the case splits inside the revised sum are decided
//! exactly and repeated runs produce identical output.

#![allow(clippy::result_large_err)]

pub mod cli;
pub mod exact;
pub mod ofn;
pub mod spectrum;

pub use exact::{ExactNumber, ParseExactError};
pub use ofn::{is_proper_fn_quadruple, Orientation, SumFailure, TrOFN};
pub use spectrum::{
    association_spectrum, catalan, enumerate_association_trees, full_spectrum, left_fold_sum,
    permutation_spectrum, AssocTree, Association, EvaluationDescriptor, Spectrum, SpectrumEntry,
    SpectrumError, SpectrumLimits,
};
