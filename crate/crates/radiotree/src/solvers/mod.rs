//! Solvers: certificate-ordering search and the exhaustive radio-number
//! oracle.
//!
//! The two are implemented independently (separate pruning logic) so each
//! can cross-check the other: the search finds an ordering certifying that
//! the level lower bound is attained, or proves none exists; the oracle
//! computes the radio number by exhausting all vertex orderings with
//! greedy minimal labels.

mod oracle;
mod search;

pub use oracle::exact_rn;
pub use search::search_ordering;

use thiserror::Error;

use crate::labeling::{RadioLabeling, VertexOrdering};

/// Result of the certificate-ordering search.
#[derive(Debug, Clone)]
pub enum SearchOutcome {
    /// A certificate ordering exists; `labeling` is the optimal labeling
    /// it induces.
    Found {
        ordering: VertexOrdering,
        labeling: RadioLabeling,
        nodes_explored: u64,
    },
    /// The full search space was exhausted: no certificate ordering
    /// exists, so the level lower bound is strict for this tree.
    Exhausted { nodes_explored: u64 },
    /// The node budget ran out before the search could conclude.
    BudgetExceeded { nodes_explored: u64 },
}

impl SearchOutcome {
    pub fn nodes_explored(&self) -> u64 {
        match self {
            SearchOutcome::Found { nodes_explored, .. }
            | SearchOutcome::Exhausted { nodes_explored }
            | SearchOutcome::BudgetExceeded { nodes_explored } => *nodes_explored,
        }
    }

    pub fn found(&self) -> Option<(&VertexOrdering, &RadioLabeling)> {
        match self {
            SearchOutcome::Found {
                ordering, labeling, ..
            } => Some((ordering, labeling)),
            _ => None,
        }
    }

    pub fn is_exhausted(&self) -> bool {
        matches!(self, SearchOutcome::Exhausted { .. })
    }
}

/// Exact radio number with an optimal witness labeling.
#[derive(Debug, Clone)]
pub struct ExactResult {
    pub rn: u64,
    pub witness: RadioLabeling,
    pub nodes_explored: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolverError {
    #[error(
        "tree has {order} vertices, above the cap {cap}; raise the cap to force \
         (runtime grows factorially)"
    )]
    CapExceeded { order: usize, cap: usize },
    #[error("node budget exhausted after {nodes_explored} nodes without a proven result")]
    BudgetExceeded { nodes_explored: u64 },
}
