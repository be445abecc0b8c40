//! Exhaustive radio-number oracle.
//!
//! Depth-first search over all vertex orderings. For a fixed prefix the
//! next vertex always receives the minimal feasible label (an exchange
//! argument shows the greedy label is optimal per ordering), and branches
//! whose next label already reaches the incumbent span are pruned. The
//! returned value is therefore exact; running out of budget is an error,
//! never an approximate answer.

use crate::labeling::{verify_radio, RadioLabeling};
use crate::metrics::TreeProfile;
use crate::tree::Tree;

use super::{search_ordering, ExactResult, SearchOutcome, SolverError};

/// Exact radio number of `tree`, refusing trees larger than `cap`.
/// `budget` limits oracle search nodes; `None` means no limit.
pub fn exact_rn(tree: &Tree, cap: usize, budget: Option<u64>) -> Result<ExactResult, SolverError> {
    let p = tree.order();
    if p > cap {
        return Err(SolverError::CapExceeded { order: p, cap });
    }
    if p == 1 {
        return Ok(ExactResult {
            rn: 0,
            witness: RadioLabeling::new(vec![0]),
            nodes_explored: 0,
        });
    }
    let d = tree.diameter().expect("p >= 2");

    // Incumbent: the certificate labeling when the search finds one,
    // otherwise greedy labels along the identity ordering.
    let mut best = greedy_labels(tree, d, (0..p).collect::<Vec<_>>().as_slice());
    if let Ok(prof) = TreeProfile::compute(tree) {
        if let SearchOutcome::Found { labeling, .. } = search_ordering(tree, &prof, budget) {
            if verify_radio(tree, &labeling).passed() && labeling.span() < best.span() {
                best = labeling;
            }
        }
    }

    let mut dfs = Dfs {
        tree,
        d1: d as u64 + 1,
        limit: budget.unwrap_or(u64::MAX),
        nodes: 0,
        best_span: best.span(),
        best_labels: best.labels().to_vec(),
        labels: vec![0; p],
        seq: Vec::with_capacity(p),
        placed: vec![false; p],
        // req[v] = minimal feasible label for v given the current prefix.
        req: vec![0; p],
    };
    dfs.run()?;

    let witness = RadioLabeling::new(dfs.best_labels);
    debug_assert!(verify_radio(tree, &witness).passed());
    debug_assert_eq!(witness.span(), dfs.best_span);
    Ok(ExactResult {
        rn: dfs.best_span,
        witness,
        nodes_explored: dfs.nodes,
    })
}

/// Minimal-label assignment along a fixed ordering: each vertex gets the
/// smallest label satisfying the radio condition against all earlier ones.
pub(crate) fn greedy_labels(tree: &Tree, d: usize, order: &[usize]) -> RadioLabeling {
    let d1 = d as u64 + 1;
    let mut labels = vec![0u64; tree.order()];
    for (k, &v) in order.iter().enumerate() {
        let req = order[..k]
            .iter()
            .map(|&u| labels[u] + d1.saturating_sub(tree.dist(u, v) as u64))
            .max()
            .unwrap_or(0);
        labels[v] = req;
    }
    RadioLabeling::new(labels)
}

struct Dfs<'a> {
    tree: &'a Tree,
    d1: u64,
    limit: u64,
    nodes: u64,
    best_span: u64,
    best_labels: Vec<u64>,
    labels: Vec<u64>,
    seq: Vec<usize>,
    placed: Vec<bool>,
    req: Vec<u64>,
}

impl Dfs<'_> {
    fn run(&mut self) -> Result<(), SolverError> {
        self.descend(0)
    }

    fn descend(&mut self, max_label: u64) -> Result<(), SolverError> {
        let p = self.tree.order();
        if self.seq.len() == p {
            if max_label < self.best_span {
                self.best_span = max_label;
                self.best_labels = self.labels.clone();
            }
            return Ok(());
        }
        let depth = self.seq.len();
        for v in 0..p {
            if self.placed[v] {
                continue;
            }
            let label = if depth == 0 { 0 } else { self.req[v] };
            // Labels only grow along an ordering; no improvement possible.
            if depth > 0 && label >= self.best_span {
                continue;
            }
            if self.nodes >= self.limit {
                return Err(SolverError::BudgetExceeded {
                    nodes_explored: self.nodes,
                });
            }
            self.nodes += 1;

            self.labels[v] = label;
            self.placed[v] = true;
            self.seq.push(v);
            let saved_req = self.req.clone();
            for u in 0..p {
                if !self.placed[u] {
                    let need = label + (self.d1 - self.tree.dist(v, u) as u64);
                    if need > self.req[u] {
                        self.req[u] = need;
                    }
                }
            }

            self.descend(max_label.max(label))?;

            self.req = saved_req;
            self.seq.pop();
            self.placed[v] = false;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Tree {
        Tree::from_edges(n, (0..n - 1).map(|i| (i, i + 1))).unwrap()
    }

    fn star(k: usize) -> Tree {
        Tree::from_edges(k + 1, (1..=k).map(|i| (0, i))).unwrap()
    }

    #[test]
    fn baseline_values() {
        assert_eq!(exact_rn(&path(3), 10, None).unwrap().rn, 3);
        assert_eq!(exact_rn(&path(4), 10, None).unwrap().rn, 5);
        assert_eq!(exact_rn(&star(3), 10, None).unwrap().rn, 4);
        assert_eq!(exact_rn(&star(4), 10, None).unwrap().rn, 5);
    }

    #[test]
    fn p3_witness_matches_golden() {
        let res = exact_rn(&path(3), 10, None).unwrap();
        assert_eq!(res.witness.labels(), &[2, 0, 3]);
    }

    #[test]
    fn p4_witness_is_optimal_and_verified() {
        let t = path(4);
        let res = exact_rn(&t, 10, None).unwrap();
        assert_eq!(res.witness.span(), 5);
        assert!(verify_radio(&t, &res.witness).passed());
    }

    #[test]
    fn p5_exceeds_its_level_bound() {
        let t = path(5);
        let res = exact_rn(&t, 10, None).unwrap();
        assert_eq!(res.rn, 10);
        let prof = TreeProfile::compute(&t).unwrap();
        assert_eq!(prof.level_lower_bound().unwrap(), 9);
    }

    #[test]
    fn p2_is_trivial() {
        assert_eq!(exact_rn(&path(2), 10, None).unwrap().rn, 1);
    }

    #[test]
    fn refuses_above_cap() {
        let t = path(12);
        assert_eq!(
            exact_rn(&t, 10, None).unwrap_err(),
            SolverError::CapExceeded { order: 12, cap: 10 }
        );
    }

    #[test]
    fn budget_exhaustion_is_an_error() {
        let t = path(8);
        match exact_rn(&t, 10, Some(3)) {
            Err(SolverError::BudgetExceeded { .. }) => {}
            other => panic!("expected budget error, got {other:?}"),
        }
    }

    #[test]
    fn deterministic_witness() {
        let t = path(6);
        let a = exact_rn(&t, 10, None).unwrap();
        let b = exact_rn(&t, 10, None).unwrap();
        assert_eq!(a.rn, b.rn);
        assert_eq!(a.witness, b.witness);
        assert_eq!(a.nodes_explored, b.nodes_explored);
    }
}
