//! Backtracking search for a certificate ordering.
//!
//! Phase 1 builds one ordering greedily (alternate branches, largest
//! remaining branch first, deepest vertex first) and accepts it if it
//! passes the certificate check. Phase 2 is exhaustive backtracking over
//! order positions with incremental pair-condition checking, so an
//! `Exhausted` outcome proves no certificate ordering exists.

use crate::labeling::{label_from_ordering, ordering_valid, VertexOrdering};
use crate::metrics::{Branch, TreeProfile};
use crate::tree::Tree;

use super::SearchOutcome;

/// Search for a certificate ordering. Deterministic given the tree and
/// budget; `None` means no node limit.
pub fn search_ordering(tree: &Tree, prof: &TreeProfile, budget: Option<u64>) -> SearchOutcome {
    let mut ctx = Ctx {
        tree,
        prof,
        limit: budget.unwrap_or(u64::MAX),
        nodes: 0,
    };

    match greedy(&mut ctx) {
        Greedy::OutOfBudget => {
            return SearchOutcome::BudgetExceeded {
                nodes_explored: ctx.nodes,
            }
        }
        Greedy::Complete(order) => {
            let ordering = VertexOrdering::new(order).expect("greedy emits a permutation");
            if ordering_valid(tree, prof, &ordering).passed() {
                let labeling = label_from_ordering(tree, prof, &ordering)
                    .expect("ordering just validated");
                return SearchOutcome::Found {
                    ordering,
                    labeling,
                    nodes_explored: ctx.nodes,
                };
            }
        }
        Greedy::Stuck => {}
    }

    backtrack(&mut ctx)
}

struct Ctx<'a> {
    tree: &'a Tree,
    prof: &'a TreeProfile,
    limit: u64,
    nodes: u64,
}

impl Ctx<'_> {
    /// Charge one placement against the budget; false means stop.
    fn charge(&mut self) -> bool {
        if self.nodes >= self.limit {
            return false;
        }
        self.nodes += 1;
        true
    }

    fn start_vertex(&self) -> usize {
        self.prof.centers[0]
    }

    /// In the two-center case the opposite center is pinned to the final
    /// position.
    fn reserved_last(&self) -> Option<usize> {
        match self.prof.centers[..] {
            [_, w2] => Some(w2),
            _ => None,
        }
    }
}

enum Greedy {
    Complete(Vec<usize>),
    Stuck,
    OutOfBudget,
}

/// Side of a vertex: the center its branch hangs from (centers count as
/// their own side).
fn side_of(prof: &TreeProfile, v: usize) -> usize {
    match prof.branch_of[v] {
        Branch::Center => v,
        Branch::Rooted { center, .. } => center,
    }
}

fn greedy(ctx: &mut Ctx) -> Greedy {
    let p = ctx.tree.order();
    let prof = ctx.prof;
    let two_centers = prof.centers.len() == 2;
    let reserved = ctx.reserved_last();

    let mut order = Vec::with_capacity(p);
    let mut placed = vec![false; p];
    if !ctx.charge() {
        return Greedy::OutOfBudget;
    }
    let start = ctx.start_vertex();
    order.push(start);
    placed[start] = true;

    let middle = if two_centers { p - 1 } else { p };
    while order.len() < middle {
        let prev = *order.last().unwrap();
        // Candidates: unplaced, unreserved, and in a different branch
        // (one center) or on the opposite side (two centers).
        let best = (0..p)
            .filter(|&v| !placed[v] && Some(v) != reserved)
            .filter(|&v| {
                if two_centers {
                    side_of(prof, v) != side_of(prof, prev)
                } else {
                    prof.branch_of[v] != prof.branch_of[prev]
                }
            })
            .map(|v| {
                let remaining = match prof.branch_of[v] {
                    Branch::Center => 1,
                    Branch::Rooted { center, root } => (0..p)
                        .filter(|&u| {
                            !placed[u] && prof.branch_of[u] == Branch::Rooted { center, root }
                        })
                        .count(),
                };
                (remaining, prof.levels[v], v)
            })
            // Largest remaining branch, then deepest vertex, then lowest id.
            .max_by(|a, b| a.0.cmp(&b.0).then(a.1.cmp(&b.1)).then(b.2.cmp(&a.2)));
        match best {
            Some((_, _, v)) => {
                if !ctx.charge() {
                    return Greedy::OutOfBudget;
                }
                order.push(v);
                placed[v] = true;
            }
            None => return Greedy::Stuck,
        }
    }
    if let Some(w2) = reserved {
        if !ctx.charge() {
            return Greedy::OutOfBudget;
        }
        order.push(w2);
    }
    Greedy::Complete(order)
}

fn backtrack(ctx: &mut Ctx) -> SearchOutcome {
    let p = ctx.tree.order();
    let mut state = Backtrack {
        order: Vec::with_capacity(p),
        placed: vec![false; p],
        // pre[i] = sum of levels of the first i placed vertices.
        pre: vec![0i64; p + 1],
        center_neighbors_left: 0,
    };

    let start = ctx.start_vertex();
    if let [w] = ctx.prof.centers[..] {
        state.center_neighbors_left = ctx.tree.neighbors(w).len();
    }
    if !ctx.charge() {
        return SearchOutcome::BudgetExceeded {
            nodes_explored: ctx.nodes,
        };
    }
    state.place(ctx, start);

    match extend(ctx, &mut state) {
        Step::Found(order) => {
            let ordering = VertexOrdering::new(order).expect("search emits a permutation");
            debug_assert!(ordering_valid(ctx.tree, ctx.prof, &ordering).passed());
            let labeling =
                label_from_ordering(ctx.tree, ctx.prof, &ordering).expect("ordering validated");
            SearchOutcome::Found {
                ordering,
                labeling,
                nodes_explored: ctx.nodes,
            }
        }
        Step::Exhausted => SearchOutcome::Exhausted {
            nodes_explored: ctx.nodes,
        },
        Step::OutOfBudget => SearchOutcome::BudgetExceeded {
            nodes_explored: ctx.nodes,
        },
    }
}

enum Step {
    Found(Vec<usize>),
    Exhausted,
    OutOfBudget,
}

struct Backtrack {
    order: Vec<usize>,
    placed: Vec<bool>,
    pre: Vec<i64>,
    /// Unplaced neighbors of the single center; one must stay for the
    /// final position.
    center_neighbors_left: usize,
}

impl Backtrack {
    fn place(&mut self, ctx: &Ctx, v: usize) {
        let i = self.order.len();
        self.pre[i + 1] = self.pre[i] + ctx.prof.levels[v] as i64;
        self.order.push(v);
        self.placed[v] = true;
        if let [w] = ctx.prof.centers[..] {
            if ctx.tree.neighbors(w).contains(&v) {
                self.center_neighbors_left -= 1;
            }
        }
    }

    fn unplace(&mut self, ctx: &Ctx) {
        let v = self.order.pop().unwrap();
        self.placed[v] = false;
        if let [w] = ctx.prof.centers[..] {
            if ctx.tree.neighbors(w).contains(&v) {
                self.center_neighbors_left += 1;
            }
        }
    }

    /// Pair condition of candidate `v` at the next position against every
    /// placed prefix vertex.
    fn admissible(&self, ctx: &Ctx, v: usize) -> bool {
        let j = self.order.len();
        let d_eps = (ctx.prof.diameter + ctx.prof.epsilon as usize) as i64;
        let d1 = ctx.prof.diameter as i64 + 1;
        let pre_j1 = self.pre[j] + ctx.prof.levels[v] as i64;
        for i in 0..j {
            let s = (self.pre[j] - self.pre[i]) + (pre_j1 - self.pre[i + 1]);
            let required = s - (j - i) as i64 * d_eps + d1;
            if (ctx.tree.dist(self.order[i], v) as i64) < required {
                return false;
            }
        }
        true
    }
}

fn extend(ctx: &mut Ctx, state: &mut Backtrack) -> Step {
    let p = ctx.tree.order();
    let j = state.order.len();
    if j == p {
        return Step::Found(state.order.clone());
    }

    let single_center = ctx.prof.centers.len() == 1;
    let reserved = ctx.reserved_last();
    // With no unplaced center-neighbor left, the final slot cannot be
    // filled legally.
    if single_center && state.center_neighbors_left == 0 {
        return Step::Exhausted;
    }

    for v in 0..p {
        if state.placed[v] {
            continue;
        }
        let is_last = j == p - 1;
        if let Some(w2) = reserved {
            if (v == w2) != is_last {
                continue;
            }
        }
        if single_center && is_last {
            let w = ctx.prof.centers[0];
            if !ctx.tree.neighbors(w).contains(&v) {
                continue;
            }
        }
        if !state.admissible(ctx, v) {
            continue;
        }
        if !ctx.charge() {
            return Step::OutOfBudget;
        }
        state.place(ctx, v);
        match extend(ctx, state) {
            Step::Exhausted => state.unplace(ctx),
            done => return done,
        }
    }
    Step::Exhausted
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::labeling::verify_radio;

    fn path(n: usize) -> Tree {
        Tree::from_edges(n, (0..n - 1).map(|i| (i, i + 1))).unwrap()
    }

    fn star(k: usize) -> Tree {
        Tree::from_edges(k + 1, (1..=k).map(|i| (0, i))).unwrap()
    }

    fn search(tree: &Tree) -> SearchOutcome {
        let prof = TreeProfile::compute(tree).unwrap();
        search_ordering(tree, &prof, None)
    }

    #[test]
    fn finds_certificate_for_p4() {
        let t = path(4);
        match search(&t) {
            SearchOutcome::Found {
                ordering, labeling, ..
            } => {
                assert_eq!(ordering.as_slice(), &[1, 3, 0, 2]);
                assert_eq!(labeling.span(), 5);
                assert!(verify_radio(&t, &labeling).passed());
            }
            other => panic!("expected Found, got {other:?}"),
        }
    }

    #[test]
    fn finds_certificate_for_k14() {
        let t = star(4);
        let outcome = search(&t);
        let (_, labeling) = outcome.found().expect("star certifies");
        assert_eq!(labeling.span(), 5);
    }

    #[test]
    fn exhausts_on_p5() {
        // The 5-vertex path does not attain its level lower bound.
        assert!(search(&path(5)).is_exhausted());
    }

    #[test]
    fn finds_certificate_for_p6() {
        let outcome = search(&path(6));
        let (_, labeling) = outcome.found().expect("even paths certify");
        assert_eq!(labeling.span(), 13);
    }

    #[test]
    fn exhausts_on_p7() {
        assert!(search(&path(7)).is_exhausted());
    }

    #[test]
    fn tiny_budget_aborts() {
        let t = path(6);
        let prof = TreeProfile::compute(&t).unwrap();
        let outcome = search_ordering(&t, &prof, Some(2));
        assert!(matches!(outcome, SearchOutcome::BudgetExceeded { .. }));
    }

    #[test]
    fn deterministic_across_runs() {
        let t = path(6);
        let prof = TreeProfile::compute(&t).unwrap();
        let a = search_ordering(&t, &prof, None);
        let b = search_ordering(&t, &prof, None);
        assert_eq!(a.nodes_explored(), b.nodes_explored());
        assert_eq!(
            a.found().map(|(o, _)| o.as_slice().to_vec()),
            b.found().map(|(o, _)| o.as_slice().to_vec())
        );
    }
}
