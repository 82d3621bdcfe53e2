//! Oriented `k`-uniform hypergraphs and Property O.
//!
//! An oriented `k`-graph has Property O when every linear order of its
//! vertices makes at least one edge consistent, i.e. lists the edge's
//! vertices in tuple order. This crate builds the known small and general
//! constructions, decides Property O two independent ways, computes
//! order-coverage statistics, and runs exhaustive and random tournament
//! experiments.

pub mod arith;
pub mod constructions;
pub mod coverage;
pub mod error;
pub mod hypergraph;
pub mod montecarlo;
pub mod order;
pub mod perm;
pub mod rng;
pub mod search;
mod states;
pub mod tournament;
pub mod verify;

pub use arith::count_consistent_orders;
pub use constructions::{
    construct, construct_claim1, construct_cyclic_triangle, construct_general, construct_h1,
    construct_h2, structured_verify_general, theorem2_edge_count, Family, GeneralLayout,
    ReplacementPlan, StructuredReport,
};
pub use coverage::{coverage_histogram, lower_bound_audit, AuditReport, CoverageHistogram};
pub use error::{Error, Result};
pub use hypergraph::{OrientedEdge, OrientedHypergraph, Violation};
pub use montecarlo::{estimate_property_o_rate, random_tournament, TrialSummary};
pub use order::{is_consistent, LinearOrder};
pub use search::{
    edge_minimality, enumerate_tournaments, prove_vertex_lower_bound, CensusOptions, EdgeVerdict,
    SearchReport, Visit,
};
pub use verify::{
    check_property_o, find_violating_order_backtracking, find_violating_order_exhaustive, Method,
    MethodChoice, Verdict, VerificationCertificate, VerifyOptions,
};
