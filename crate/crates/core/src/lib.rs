//! Winner determination, core constraints and core-selecting payment rules
//! for single-minded combinatorial auctions, with conflict-graph analysis
//! and a property lab for monotonicity and overbidding checks.
//!
//! All arithmetic is exact (`Ratio<i128>`).

pub mod auction;
pub mod conflict_graph;
pub mod core_constraints;
pub mod error;
pub mod instances;
pub mod lab;
pub mod lp;
pub mod payments;
pub mod qp;
pub mod rational;

pub use auction::{
    all_efficient_allocations, is_efficient, max_welfare, reported_welfare, winner_determination, Allocation,
    BidProfile, BidderSet, InterestProfile, ItemBundle, ValuationProfile,
};
pub use conflict_graph::{
    build_conflict_graph, classify, contains_induced_subgraph, graph_to_interest_profile, is_complete_multipartite,
    maximal_independent_sets, ConflictGraph, GraphClassification,
};
pub use core_constraints::{
    detect_secc, enumerate_core_constraints, is_constraint_redundant, minimum_revenue, CoreConstraint, CoreSystem,
};
pub use error::{Error, Result};
pub use payments::{
    first_price, proportional_payment, proxy_payment, vcg_payments, vn_payment, vn_payment_secc, PaymentRule,
    PaymentVector, SeccSolution,
};
pub use rational::Rational;
