//! Radio numbers of trees: lower bounds, certificate orderings, exact
//! solvers, and composed tree families.
//!
//! A radio labeling of a graph assigns non-negative integer labels so that
//! `d(u,v) + |f(u)-f(v)| >= diam + 1` for every pair of distinct vertices;
//! the radio number is the smallest achievable span. For trees the span is
//! bounded below in terms of the distances to the weight center(s), and
//! the bound is attained exactly when a certificate vertex ordering
//! exists. This crate computes the bounds, finds or refutes certificates,
//! cross-checks everything against an exhaustive oracle at small orders,
//! and builds composed families whose radio numbers follow in closed form
//! from their base trees.

#![forbid(unsafe_code)]

pub mod compose;
pub mod corpus;
pub mod labeling;
pub mod metrics;
pub mod solvers;
pub mod tree;

pub use compose::{
    compose_dk, compose_sk, compose_wk, k_double_star, k_star, predicted_rn, reconcile,
    ComposeError, CompositionSpec, Family, PredictionReport, Provenance, ReconcileOptions,
};
pub use corpus::{prufer_decode, random_tree};
pub use labeling::{
    label_from_ordering, ordering_valid, verify_radio, LabelingError, OrderingVerdict,
    RadioLabeling, RadioVerdict, VertexOrdering,
};
pub use metrics::{Branch, MetricsError, TreeProfile};
pub use solvers::{exact_rn, search_ordering, ExactResult, SearchOutcome, SolverError};
pub use tree::{Tree, TreeError, TreeStats};
