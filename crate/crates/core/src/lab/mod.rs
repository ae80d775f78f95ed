//! Empirical checks of incentive properties over discretised bid spaces.
//!
//! A grid sweep certifies a property on finitely many profiles; it does not
//! prove it. Every comparison is exact.

mod grid;
mod overbid;
mod sampling;
mod search;
mod sweep;

pub use grid::BidGrid;
pub use overbid::{
    check_overbid_dominance, check_overbid_lines, lemma8_boundary, BoundaryCase, Opponents, OverbidOutcome,
    OverbidPath, OverbidReport,
};
pub use sampling::{
    certify_secc_sampled, random_bid_profile, random_interest_profile, SamplingOptions, SeccCertification,
};
pub use search::{search_violation, SearchOutcome};
pub use sweep::{check_nondecreasing, sweep_nondecreasing, SweepReport, ViolationReport};

/// Default cap on payment-rule evaluations per sweep.
pub const DEFAULT_BUDGET: usize = 10_000_000;
