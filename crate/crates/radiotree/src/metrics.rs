//! Weight centers, vertex levels, branch assignment, and the two lower
//! bounds on the radio number of a tree.
//!
//! The weight of a tree from a vertex `v` is the sum of distances from `v`
//! to every vertex; weight centers are the vertices attaining the minimum.
//! Every tree has one or two weight centers, and two only if they are
//! adjacent and removing the edge between them leaves two equal-sized
//! components. Levels measure distance to the nearest weight center.

use thiserror::Error;

use crate::tree::Tree;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MetricsError {
    #[error("tree must have at least 2 vertices")]
    OrderTooSmall,
    #[error("bound requires diameter >= 2, tree has diameter {d}")]
    DiameterTooSmall { d: usize },
}

/// Branch assignment of a vertex: either a weight center itself, or the
/// branch rooted at `root`, a neighbor of `center`, that contains the
/// vertex. In the two-center case `center` identifies which half the
/// branch hangs from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    Center,
    Rooted { center: usize, root: usize },
}

/// Derived metrics of a tree rooted at its weight center(s).
#[derive(Debug, Clone)]
pub struct TreeProfile {
    pub order: usize,
    pub diameter: usize,
    /// Sum of distances from each vertex to all vertices.
    pub weights: Vec<u64>,
    /// Minimum weight over all vertices.
    pub tree_weight: u64,
    /// Weight centers, sorted; always one or two of them.
    pub centers: Vec<usize>,
    /// 1 for a one-center tree, 0 for a two-center tree.
    pub epsilon: u32,
    /// Distance from each vertex to its nearest weight center.
    pub levels: Vec<u32>,
    /// Sum of all levels.
    pub total_level: u64,
    /// Branch assignment per vertex.
    pub branch_of: Vec<Branch>,
}

impl TreeProfile {
    pub fn compute(tree: &Tree) -> Result<Self, MetricsError> {
        let p = tree.order();
        if p < 2 {
            return Err(MetricsError::OrderTooSmall);
        }
        let diameter = tree.diameter().expect("p >= 2");

        let weights: Vec<u64> = (0..p)
            .map(|v| (0..p).map(|u| tree.dist(u, v) as u64).sum())
            .collect();
        let tree_weight = *weights.iter().min().unwrap();
        let centers: Vec<usize> = (0..p).filter(|&v| weights[v] == tree_weight).collect();

        assert!(
            centers.len() == 1 || centers.len() == 2,
            "a tree has one or two weight centers, got {centers:?}"
        );
        if let [w, w2] = centers[..] {
            assert_eq!(tree.dist(w, w2), 1, "two weight centers must be adjacent");
            let near_w = (0..p).filter(|&u| tree.dist(u, w) < tree.dist(u, w2)).count();
            assert_eq!(2 * near_w, p, "two-center halves must have equal size");
        }
        let epsilon = if centers.len() == 1 { 1 } else { 0 };

        let levels: Vec<u32> = (0..p)
            .map(|u| centers.iter().map(|&c| tree.dist(u, c)).min().unwrap() as u32)
            .collect();
        let total_level: u64 = levels.iter().map(|&l| l as u64).sum();

        // w(T) = L(T) for one center, L(T) + p/2 for two.
        if epsilon == 1 {
            assert_eq!(tree_weight, total_level);
        } else {
            assert_eq!(tree_weight, total_level + (p / 2) as u64);
        }

        let branch_of: Vec<Branch> = (0..p)
            .map(|u| {
                if levels[u] == 0 {
                    return Branch::Center;
                }
                let center = *centers
                    .iter()
                    .min_by_key(|&&c| tree.dist(u, c))
                    .unwrap();
                let root = *tree
                    .neighbors(center)
                    .iter()
                    .find(|&&b| tree.dist(b, u) == levels[u] as usize - 1)
                    .expect("some neighbor of the center lies on the path to u");
                Branch::Rooted { center, root }
            })
            .collect();

        Ok(TreeProfile {
            order: p,
            diameter,
            weights,
            tree_weight,
            centers,
            epsilon,
            levels,
            total_level,
            branch_of,
        })
    }

    pub fn is_center(&self, v: usize) -> bool {
        self.levels[v] == 0
    }

    /// Lower bound (p-1)(d+1) + 1 - 2 w(T), via the tree weight.
    pub fn weight_lower_bound(&self) -> Result<i64, MetricsError> {
        self.require_diameter()?;
        let p = self.order as i64;
        let d = self.diameter as i64;
        Ok((p - 1) * (d + 1) + 1 - 2 * self.tree_weight as i64)
    }

    /// Lower bound (p-1)(d+eps) - 2 L(T) + eps, via the total level.
    pub fn level_lower_bound(&self) -> Result<i64, MetricsError> {
        self.require_diameter()?;
        Ok(level_bound_value(
            self.order,
            self.diameter,
            self.epsilon,
            self.total_level,
        ))
    }

    fn require_diameter(&self) -> Result<(), MetricsError> {
        if self.diameter < 2 {
            return Err(MetricsError::DiameterTooSmall { d: self.diameter });
        }
        Ok(())
    }
}

/// The level-bound formula without the diameter guard; shared with the
/// labeling construction, which wants the raw value.
pub(crate) fn level_bound_value(p: usize, d: usize, epsilon: u32, total_level: u64) -> i64 {
    let eps = epsilon as i64;
    (p as i64 - 1) * (d as i64 + eps) - 2 * total_level as i64 + eps
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
    fn p3_profile() {
        let prof = TreeProfile::compute(&path(3)).unwrap();
        assert_eq!(prof.centers, vec![1]);
        assert_eq!(prof.epsilon, 1);
        assert_eq!(prof.levels, vec![1, 0, 1]);
        assert_eq!(prof.total_level, 2);
    }

    #[test]
    fn p4_profile_two_centers() {
        let prof = TreeProfile::compute(&path(4)).unwrap();
        assert_eq!(prof.centers, vec![1, 2]);
        assert_eq!(prof.epsilon, 0);
        assert_eq!(prof.levels, vec![1, 0, 0, 1]);
        assert_eq!(prof.total_level, 2);
        assert_eq!(prof.weights, vec![6, 4, 4, 6]);
    }

    #[test]
    fn k14_profile() {
        let prof = TreeProfile::compute(&star(4)).unwrap();
        assert_eq!(prof.centers, vec![0]);
        assert_eq!(prof.epsilon, 1);
        assert_eq!(prof.total_level, 4);
        assert_eq!(prof.tree_weight, 4);
    }

    #[test]
    fn weight_bound_examples() {
        let p3 = TreeProfile::compute(&path(3)).unwrap();
        assert_eq!(p3.weight_lower_bound().unwrap(), 3);
        let p4 = TreeProfile::compute(&path(4)).unwrap();
        assert_eq!(p4.weight_lower_bound().unwrap(), 5);
        let k14 = TreeProfile::compute(&star(4)).unwrap();
        assert_eq!(k14.weight_lower_bound().unwrap(), 5);
    }

    #[test]
    fn level_bound_examples() {
        let p4 = TreeProfile::compute(&path(4)).unwrap();
        assert_eq!(p4.level_lower_bound().unwrap(), 5);
        let k14 = TreeProfile::compute(&star(4)).unwrap();
        assert_eq!(k14.level_lower_bound().unwrap(), 5);
    }

    #[test]
    fn level_bound_on_composed_double_star_shape() {
        // p = 8, d = 5, two centers, L(T) = 10.
        let t = Tree::from_edges(
            8,
            [(0, 1), (0, 2), (1, 3), (2, 4), (2, 5), (3, 6), (3, 7)],
        )
        .unwrap();
        let prof = TreeProfile::compute(&t).unwrap();
        assert_eq!(prof.centers, vec![0, 1]);
        assert_eq!(prof.epsilon, 0);
        assert_eq!(prof.total_level, 10);
        assert_eq!(prof.level_lower_bound().unwrap(), 15);
    }

    #[test]
    fn bounds_reject_small_diameter() {
        let p2 = TreeProfile::compute(&path(2)).unwrap();
        assert_eq!(
            p2.level_lower_bound().unwrap_err(),
            MetricsError::DiameterTooSmall { d: 1 }
        );
        assert_eq!(
            p2.weight_lower_bound().unwrap_err(),
            MetricsError::DiameterTooSmall { d: 1 }
        );
    }

    #[test]
    fn profile_rejects_single_vertex() {
        let t = Tree::from_edges(1, []).unwrap();
        assert_eq!(
            TreeProfile::compute(&t).unwrap_err(),
            MetricsError::OrderTooSmall
        );
    }

    #[test]
    fn branches_on_p4() {
        let prof = TreeProfile::compute(&path(4)).unwrap();
        assert_eq!(prof.branch_of[1], Branch::Center);
        assert_eq!(prof.branch_of[2], Branch::Center);
        assert_eq!(prof.branch_of[0], Branch::Rooted { center: 1, root: 0 });
        assert_eq!(prof.branch_of[3], Branch::Rooted { center: 2, root: 3 });
    }

    #[test]
    fn branches_on_deep_tree() {
        // Spider: center 0, legs 1-2 and 3-4.
        let t = Tree::from_edges(5, [(0, 1), (1, 2), (0, 3), (3, 4)]).unwrap();
        let prof = TreeProfile::compute(&t).unwrap();
        assert_eq!(prof.branch_of[2], Branch::Rooted { center: 0, root: 1 });
        assert_eq!(prof.branch_of[1], Branch::Rooted { center: 0, root: 1 });
        assert_eq!(prof.branch_of[4], Branch::Rooted { center: 0, root: 3 });
    }
}
