//! Composed tree families built from base trees with unique weight
//! centers, plus the closed-form predictions for their radio numbers and
//! the machinery to reconcile predictions against computed values.
//!
//! Three constructions are supported:
//!
//! * `wk`: merge the weight centers of k base trees into a single vertex.
//! * `sk`: attach k copies of a base tree to the leaves of a k-leaf star,
//!   identifying each copy's weight center with one leaf.
//! * `dk`: attach 2k copies of a base tree to the leaves of a k-double
//!   star (two adjacent hubs with k leaves each), identifying centers
//!   with leaves.

use std::fmt;
use std::fmt::Write as _;

use thiserror::Error;

use crate::metrics::{MetricsError, TreeProfile};
use crate::solvers::{exact_rn, search_ordering, SearchOutcome, SolverError};
use crate::tree::Tree;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Wk,
    Sk,
    Dk,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Wk => write!(f, "wk"),
            Family::Sk => write!(f, "sk"),
            Family::Dk => write!(f, "dk"),
        }
    }
}

/// Origin of a composed-tree vertex: a hub vertex introduced by the
/// construction (the merged center for `wk`, star/double-star hubs for
/// `sk`/`dk`), or a vertex carried over from a base copy. Identified
/// center vertices are recorded as base vertices of their copy.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    Hub,
    Base { base: usize, vertex: usize },
}

/// Recipe that produced a composed tree, with per-vertex provenance.
#[derive(Debug, Clone)]
pub struct CompositionSpec {
    pub family: Family,
    pub k: usize,
    pub bases: Vec<Tree>,
    pub provenance: Vec<Provenance>,
}

impl CompositionSpec {
    /// Provenance sidecar: one line per composed vertex, either
    /// `id hub` or `id base_index base_vertex`.
    pub fn provenance_text(&self) -> String {
        let mut out = String::new();
        for (id, prov) in self.provenance.iter().enumerate() {
            match prov {
                Provenance::Hub => {
                    let _ = writeln!(out, "{id} hub");
                }
                Provenance::Base { base, vertex } => {
                    let _ = writeln!(out, "{id} {base} {vertex}");
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComposeError {
    #[error("{family} composition requires k >= {min}, got {k}")]
    KTooSmall { family: Family, min: usize, k: usize },
    #[error("wk composition requires at least 2 base trees, got {got}")]
    TooFewBases { got: usize },
    #[error("base tree {index} has two weight centers; composition requires a unique center")]
    BaseHasTwoCenters { index: usize },
    #[error("base tree {index} is too small to certify (diameter below 2)")]
    BaseTooSmall { index: usize },
    #[error("expected {expected} base radio numbers, got {got}")]
    BaseRnCountMismatch { expected: usize, got: usize },
    #[error("composed tree metrics: {0}")]
    Metrics(#[from] MetricsError),
    #[error("solver: {0}")]
    Solver(#[from] SolverError),
}

/// Star with `k` leaves: center 0, leaves `1..=k`.
pub fn k_star(k: usize) -> Result<Tree, ComposeError> {
    if k < 1 {
        return Err(ComposeError::KTooSmall {
            family: Family::Sk,
            min: 1,
            k,
        });
    }
    Ok(Tree::from_edges(k + 1, (1..=k).map(|i| (0, i))).expect("star is a tree"))
}

/// Two adjacent hubs 0 and 1 with `k` leaves each; order 2k + 2.
pub fn k_double_star(k: usize) -> Result<Tree, ComposeError> {
    if k < 1 {
        return Err(ComposeError::KTooSmall {
            family: Family::Dk,
            min: 1,
            k,
        });
    }
    let mut edges = vec![(0, 1)];
    edges.extend((0..k).map(|i| (0, 2 + i)));
    edges.extend((0..k).map(|i| (1, 2 + k + i)));
    Ok(Tree::from_edges(2 * k + 2, edges).expect("double star is a tree"))
}

fn unique_center(base: &Tree, index: usize) -> Result<usize, ComposeError> {
    if base.order() == 1 {
        return Ok(0);
    }
    let prof = TreeProfile::compute(base).expect("p >= 2");
    match prof.centers[..] {
        [w] => Ok(w),
        _ => Err(ComposeError::BaseHasTwoCenters { index }),
    }
}

/// Merge the weight centers of all bases into one vertex (id 0).
/// Order: sum of base orders - k + 1.
pub fn compose_wk(bases: Vec<Tree>) -> Result<(Tree, CompositionSpec), ComposeError> {
    let k = bases.len();
    if k < 2 {
        return Err(ComposeError::TooFewBases { got: k });
    }
    let centers: Vec<usize> = bases
        .iter()
        .enumerate()
        .map(|(i, b)| unique_center(b, i))
        .collect::<Result<_, _>>()?;

    let mut provenance = vec![Provenance::Hub];
    let mut edges = Vec::new();
    for (i, base) in bases.iter().enumerate() {
        let offset = provenance.len();
        // Dense ids for this base's non-center vertices, in id order.
        let map: Vec<usize> = {
            let mut next = offset;
            (0..base.order())
                .map(|v| {
                    if v == centers[i] {
                        0
                    } else {
                        let id = next;
                        next += 1;
                        id
                    }
                })
                .collect()
        };
        for v in 0..base.order() {
            if v != centers[i] {
                provenance.push(Provenance::Base { base: i, vertex: v });
            }
        }
        edges.extend(base.edges().iter().map(|&(u, v)| (map[u], map[v])));
    }

    let p = provenance.len();
    let tree = Tree::from_edges(p, edges).expect("center merge of trees is a tree");
    assert_composed_centers(&tree, Family::Wk);
    let spec = CompositionSpec {
        family: Family::Wk,
        k,
        bases,
        provenance,
    };
    debug_assert_provenance(&spec, p);
    Ok((tree, spec))
}

/// Attach k copies of `base` to a k-leaf star, identifying each copy's
/// weight center with one leaf. Order: k * n0 + 1.
pub fn compose_sk(base: Tree, k: usize) -> Result<(Tree, CompositionSpec), ComposeError> {
    if k < 2 {
        return Err(ComposeError::KTooSmall {
            family: Family::Sk,
            min: 2,
            k,
        });
    }
    let center = unique_center(&base, 0)?;
    let n0 = base.order();

    let mut provenance = vec![Provenance::Hub];
    let mut edges = Vec::new();
    for copy in 0..k {
        let offset = 1 + copy * n0;
        provenance.extend((0..n0).map(|v| Provenance::Base { base: copy, vertex: v }));
        edges.push((0, offset + center));
        edges.extend(
            base.edges()
                .iter()
                .map(|&(u, v)| (offset + u, offset + v)),
        );
    }

    let p = k * n0 + 1;
    let tree = Tree::from_edges(p, edges).expect("star attachment is a tree");
    assert_composed_centers(&tree, Family::Sk);
    let spec = CompositionSpec {
        family: Family::Sk,
        k,
        bases: vec![base],
        provenance,
    };
    debug_assert_provenance(&spec, p);
    Ok((tree, spec))
}

/// Attach 2k copies of `base` to a k-double star, identifying each copy's
/// weight center with one leaf. Order: 2(k * n0 + 1).
pub fn compose_dk(base: Tree, k: usize) -> Result<(Tree, CompositionSpec), ComposeError> {
    if k < 1 {
        return Err(ComposeError::KTooSmall {
            family: Family::Dk,
            min: 1,
            k,
        });
    }
    let center = unique_center(&base, 0)?;
    let n0 = base.order();

    let mut provenance = vec![Provenance::Hub, Provenance::Hub];
    let mut edges = vec![(0, 1)];
    for copy in 0..2 * k {
        let offset = 2 + copy * n0;
        let hub = if copy < k { 0 } else { 1 };
        provenance.extend((0..n0).map(|v| Provenance::Base { base: copy, vertex: v }));
        edges.push((hub, offset + center));
        edges.extend(
            base.edges()
                .iter()
                .map(|&(u, v)| (offset + u, offset + v)),
        );
    }

    let p = 2 * (k * n0 + 1);
    let tree = Tree::from_edges(p, edges).expect("double-star attachment is a tree");
    assert_composed_centers(&tree, Family::Dk);
    let spec = CompositionSpec {
        family: Family::Dk,
        k,
        bases: vec![base],
        provenance,
    };
    debug_assert_provenance(&spec, p);
    Ok((tree, spec))
}

/// The constructions pin the composed tree's weight centers to the hub
/// vertices; check it rather than assume it.
fn assert_composed_centers(tree: &Tree, family: Family) {
    if tree.order() < 2 {
        return;
    }
    let prof = TreeProfile::compute(tree).expect("p >= 2");
    match family {
        Family::Wk | Family::Sk => assert_eq!(
            prof.centers,
            vec![0],
            "{family} composition must have its hub as unique weight center"
        ),
        Family::Dk => assert_eq!(
            prof.centers,
            vec![0, 1],
            "dk composition must have the two hubs as adjacent weight centers"
        ),
    }
}

fn debug_assert_provenance(spec: &CompositionSpec, p: usize) {
    debug_assert_eq!(spec.provenance.len(), p);
    let mut seen = std::collections::HashSet::new();
    let mut hubs = 0;
    for prov in &spec.provenance {
        match prov {
            Provenance::Hub => hubs += 1,
            Provenance::Base { base, vertex } => {
                debug_assert!(seen.insert((*base, *vertex)), "provenance must be injective");
            }
        }
    }
    let expected_hubs = match spec.family {
        Family::Wk | Family::Sk => 1,
        Family::Dk => 2,
    };
    debug_assert_eq!(hubs, expected_hubs);
}

/// Closed-form radio-number prediction for a composed tree, given the
/// base radio numbers and the composed diameter (always computed from the
/// constructed tree, never assumed).
pub fn predicted_rn(
    spec: &CompositionSpec,
    base_rns: &[u64],
    composed_diameter: usize,
) -> Result<i64, ComposeError> {
    let expected = match spec.family {
        Family::Wk => spec.k,
        Family::Sk | Family::Dk => 1,
    };
    if base_rns.len() != expected {
        return Err(ComposeError::BaseRnCountMismatch {
            expected,
            got: base_rns.len(),
        });
    }
    let d = composed_diameter as i64;
    let k = spec.k as i64;
    match spec.family {
        Family::Wk => {
            let mut total = 0i64;
            for (i, base) in spec.bases.iter().enumerate() {
                let n_i = base.order() as i64;
                let d_i = base
                    .diameter()
                    .map_err(|_| ComposeError::BaseTooSmall { index: i })?
                    as i64;
                total += base_rns[i] as i64 + (n_i - 1) * (d - d_i);
            }
            Ok(total - k + 1)
        }
        Family::Sk => {
            let base = &spec.bases[0];
            let n0 = base.order() as i64;
            let d0 = base
                .diameter()
                .map_err(|_| ComposeError::BaseTooSmall { index: 0 })? as i64;
            Ok(k * (base_rns[0] as i64 + n0 * (d - d0 - 2) + d0) + 1)
        }
        Family::Dk => {
            let base = &spec.bases[0];
            let n0 = base.order() as i64;
            let d0 = base
                .diameter()
                .map_err(|_| ComposeError::BaseTooSmall { index: 0 })? as i64;
            Ok(2 * k * (base_rns[0] as i64 + n0 * (d - d0 - 3) + d0) + d)
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct ReconcileOptions {
    /// Oracle cap: the exact leg runs only when the composed order is at
    /// most this.
    pub cap: usize,
    pub budget: Option<u64>,
}

impl Default for ReconcileOptions {
    fn default() -> Self {
        ReconcileOptions {
            cap: 10,
            budget: None,
        }
    }
}

/// Prediction versus computation for one composed tree.
///
/// `base_values[i]` is base i's certificate span when the base certifies
/// (then it equals the base's radio number); for an uncertified base the
/// base's level lower bound is used instead and `base_certified[i]` is
/// false, so the prediction degrades to bound composition and the report
/// says so.
#[derive(Debug, Clone)]
pub struct PredictionReport {
    pub family: Family,
    pub k: usize,
    pub composed_order: usize,
    pub composed_diameter: usize,
    pub base_values: Vec<u64>,
    pub base_certified: Vec<bool>,
    pub predicted: i64,
    pub bound: i64,
    /// Span of the certificate found on the composed tree, when one exists.
    pub search_span: Option<u64>,
    /// Oracle radio number of the composed tree, when within the cap.
    pub exact: Option<u64>,
}

impl PredictionReport {
    pub fn bases_certified(&self) -> bool {
        self.base_certified.iter().all(|&c| c)
    }

    pub fn predicted_matches_bound(&self) -> bool {
        self.predicted == self.bound
    }

    pub fn search_attains_prediction(&self) -> bool {
        self.search_span.map(|s| s as i64) == Some(self.predicted)
    }

    pub fn exact_matches_prediction(&self) -> bool {
        match self.exact {
            Some(rn) => rn as i64 == self.predicted,
            None => true,
        }
    }

    /// All agreement flags on the legs that ran.
    pub fn all_agree(&self) -> bool {
        self.predicted_matches_bound()
            && self.search_attains_prediction()
            && self.exact_matches_prediction()
    }
}

/// Certify the bases, then compare the closed-form prediction against the
/// composed tree's lower bound, certificate search, and (within the cap)
/// the exact oracle. Disagreement is reported, not an error.
pub fn reconcile(
    spec: &CompositionSpec,
    composed: &Tree,
    opts: &ReconcileOptions,
) -> Result<PredictionReport, ComposeError> {
    let mut base_values = Vec::with_capacity(spec.bases.len());
    let mut base_certified = Vec::with_capacity(spec.bases.len());
    for (i, base) in spec.bases.iter().enumerate() {
        let prof =
            TreeProfile::compute(base).map_err(|_| ComposeError::BaseTooSmall { index: i })?;
        let bound = prof
            .level_lower_bound()
            .map_err(|_| ComposeError::BaseTooSmall { index: i })?;
        match search_ordering(base, &prof, opts.budget) {
            SearchOutcome::Found { labeling, .. } => {
                base_values.push(labeling.span());
                base_certified.push(true);
            }
            SearchOutcome::Exhausted { .. } => {
                base_values.push(bound as u64);
                base_certified.push(false);
            }
            SearchOutcome::BudgetExceeded { nodes_explored } => {
                return Err(ComposeError::Solver(SolverError::BudgetExceeded {
                    nodes_explored,
                }))
            }
        }
    }

    let composed_prof = TreeProfile::compute(composed)?;
    let bound = composed_prof.level_lower_bound()?;
    let predicted = predicted_rn(spec, &base_values, composed_prof.diameter)?;

    let search_span = match search_ordering(composed, &composed_prof, opts.budget) {
        SearchOutcome::Found { labeling, .. } => Some(labeling.span()),
        SearchOutcome::Exhausted { .. } => None,
        SearchOutcome::BudgetExceeded { nodes_explored } => {
            return Err(ComposeError::Solver(SolverError::BudgetExceeded {
                nodes_explored,
            }))
        }
    };

    let exact = if composed.order() <= opts.cap {
        Some(exact_rn(composed, opts.cap, opts.budget)?.rn)
    } else {
        None
    };

    Ok(PredictionReport {
        family: spec.family,
        k: spec.k,
        composed_order: composed.order(),
        composed_diameter: composed_prof.diameter,
        base_values,
        base_certified,
        predicted,
        bound,
        search_span,
        exact,
    })
}
