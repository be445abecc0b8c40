//! Tree representation: parsing, validation, all-pairs distances, and DOT
//! export.
//!
//! Vertex ids are dense integers `0..p`. A `Tree` is immutable once built
//! and carries its full distance matrix, computed by one BFS per vertex at
//! construction time.

use std::collections::VecDeque;
use std::fmt::Write as _;

use thiserror::Error;

/// Errors from tree construction and parsing.
///
/// For `Tree::from_edges` the `line` fields hold the 1-based index of the
/// offending edge instead of a file line.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error("line {line}: {reason}")]
    Malformed { line: usize, reason: String },
    #[error("line {line}: vertex id {id} out of range (vertex count is {p})")]
    IdOutOfRange { line: usize, id: usize, p: usize },
    #[error("line {line}: duplicate edge {u} {v}")]
    DuplicateEdge { line: usize, u: usize, v: usize },
    #[error("line {line}: cycle detected")]
    CycleDetected { line: usize },
    #[error("tree is disconnected")]
    Disconnected,
    #[error("expected {expected} edges, found {found}")]
    WrongEdgeCount { expected: usize, found: usize },
    #[error("diameter is undefined for a single-vertex tree")]
    DiameterUndefined,
}

/// An unrooted tree on vertices `0..p` with precomputed hop distances.
#[derive(Debug, Clone)]
pub struct Tree {
    p: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
    dist: Vec<u32>, // row-major p*p
}

/// Diameter and per-vertex eccentricities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeStats {
    pub diameter: usize,
    pub eccentricity: Vec<usize>,
}

impl Tree {
    /// Build a tree from an edge list, validating connectivity and
    /// acyclicity. Rejects self-loops, duplicate edges and out-of-range ids.
    pub fn from_edges<I>(p: usize, edges: I) -> Result<Self, TreeError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let tagged: Vec<(usize, usize, usize)> = edges
            .into_iter()
            .enumerate()
            .map(|(i, (u, v))| (i + 1, u, v))
            .collect();
        Self::build(p, tagged)
    }

    /// Parse the plain-text tree format: `#`-prefixed lines and blank lines
    /// are ignored; the first data line is the vertex count `p`; the next
    /// `p - 1` data lines are edges `u v`.
    pub fn parse(text: &str) -> Result<Self, TreeError> {
        let mut p: Option<usize> = None;
        let mut edges: Vec<(usize, usize, usize)> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            match p {
                None => {
                    let count: usize = line.parse().map_err(|_| TreeError::Malformed {
                        line: line_no,
                        reason: format!("expected vertex count, got {line:?}"),
                    })?;
                    if count == 0 {
                        return Err(TreeError::Malformed {
                            line: line_no,
                            reason: "vertex count must be at least 1".into(),
                        });
                    }
                    p = Some(count);
                }
                Some(count) => {
                    if edges.len() == count - 1 {
                        return Err(TreeError::Malformed {
                            line: line_no,
                            reason: format!("unexpected extra line after {} edges", count - 1),
                        });
                    }
                    let mut it = line.split_whitespace();
                    let (a, b) = match (it.next(), it.next(), it.next()) {
                        (Some(a), Some(b), None) => (a, b),
                        _ => {
                            return Err(TreeError::Malformed {
                                line: line_no,
                                reason: format!("expected edge \"u v\", got {line:?}"),
                            })
                        }
                    };
                    let parse_id = |tok: &str| -> Result<usize, TreeError> {
                        tok.parse().map_err(|_| TreeError::Malformed {
                            line: line_no,
                            reason: format!("invalid vertex id {tok:?}"),
                        })
                    };
                    edges.push((line_no, parse_id(a)?, parse_id(b)?));
                }
            }
        }
        let p = p.ok_or(TreeError::Malformed {
            line: 1,
            reason: "empty input: missing vertex count".into(),
        })?;
        if edges.len() != p - 1 {
            return Err(TreeError::WrongEdgeCount {
                expected: p - 1,
                found: edges.len(),
            });
        }
        Self::build(p, edges)
    }

    fn build(p: usize, tagged_edges: Vec<(usize, usize, usize)>) -> Result<Self, TreeError> {
        if p == 0 {
            return Err(TreeError::Malformed {
                line: 1,
                reason: "vertex count must be at least 1".into(),
            });
        }
        if tagged_edges.len() != p - 1 {
            return Err(TreeError::WrongEdgeCount {
                expected: p - 1,
                found: tagged_edges.len(),
            });
        }

        let mut seen = std::collections::HashSet::new();
        let mut dsu: Vec<usize> = (0..p).collect();
        fn find(dsu: &mut [usize], mut x: usize) -> usize {
            while dsu[x] != x {
                dsu[x] = dsu[dsu[x]];
                x = dsu[x];
            }
            x
        }

        let mut edges = Vec::with_capacity(p - 1);
        let mut adj = vec![Vec::new(); p];
        for (line, u, v) in tagged_edges {
            for id in [u, v] {
                if id >= p {
                    return Err(TreeError::IdOutOfRange { line, id, p });
                }
            }
            if u == v {
                return Err(TreeError::CycleDetected { line });
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(TreeError::DuplicateEdge { line, u, v });
            }
            let (ru, rv) = (find(&mut dsu, u), find(&mut dsu, v));
            if ru == rv {
                return Err(TreeError::CycleDetected { line });
            }
            dsu[ru] = rv;
            adj[u].push(v);
            adj[v].push(u);
            edges.push((u, v));
        }

        // p-1 merging edges leave exactly one component; re-check anyway.
        let root = find(&mut dsu, 0);
        if (0..p).any(|v| find(&mut dsu, v) != root) {
            return Err(TreeError::Disconnected);
        }

        let mut dist = vec![0u32; p * p];
        for src in 0..p {
            let row = bfs_distances(&adj, src);
            dist[src * p..(src + 1) * p].copy_from_slice(&row);
        }
        Ok(Tree { p, edges, adj, dist })
    }

    /// Number of vertices.
    pub fn order(&self) -> usize {
        self.p
    }

    /// Edges in construction order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Neighbors of `v`.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    /// Hop distance between `u` and `v`.
    pub fn dist(&self, u: usize, v: usize) -> usize {
        self.dist[u * self.p + v] as usize
    }

    /// Eccentricity of `v` (distance to the farthest vertex).
    pub fn eccentricity(&self, v: usize) -> usize {
        self.dist[v * self.p..(v + 1) * self.p]
            .iter()
            .copied()
            .max()
            .unwrap_or(0) as usize
    }

    /// Diameter and eccentricities; single-vertex trees are rejected.
    pub fn stats(&self) -> Result<TreeStats, TreeError> {
        if self.p < 2 {
            return Err(TreeError::DiameterUndefined);
        }
        let eccentricity: Vec<usize> = (0..self.p).map(|v| self.eccentricity(v)).collect();
        let diameter = eccentricity.iter().copied().max().unwrap();
        Ok(TreeStats {
            diameter,
            eccentricity,
        })
    }

    /// Maximum pairwise distance, from the distance matrix.
    pub fn diameter(&self) -> Result<usize, TreeError> {
        Ok(self.stats()?.diameter)
    }

    /// Diameter by the double-sweep method: BFS from vertex 0 to the
    /// farthest vertex `x`, then the farthest distance from `x`. Kept
    /// separate from the matrix route so the two can cross-check.
    pub fn diameter_double_sweep(&self) -> Result<usize, TreeError> {
        if self.p < 2 {
            return Err(TreeError::DiameterUndefined);
        }
        let first = bfs_distances(&self.adj, 0);
        let x = (0..self.p).max_by_key(|&v| first[v]).unwrap();
        let second = bfs_distances(&self.adj, x);
        Ok(second.iter().copied().max().unwrap() as usize)
    }

    /// Render in the plain-text tree format.
    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.p);
        for &(u, v) in &self.edges {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }

    /// Render as an undirected DOT graph. With `labels`, each node is
    /// annotated `id:label`.
    pub fn to_dot(&self, labels: Option<&[u64]>) -> String {
        let mut out = String::from("graph {\n");
        for v in 0..self.p {
            match labels {
                Some(f) => {
                    let _ = writeln!(out, "  {v} [label=\"{v}:{}\"];", f[v]);
                }
                None => {
                    let _ = writeln!(out, "  {v};");
                }
            }
        }
        for &(u, v) in &self.edges {
            let _ = writeln!(out, "  {u} -- {v};");
        }
        out.push_str("}\n");
        out
    }
}

pub(crate) fn bfs_distances(adj: &[Vec<usize>], src: usize) -> Vec<u32> {
    let mut dist = vec![u32::MAX; adj.len()];
    dist[src] = 0;
    let mut queue = VecDeque::from([src]);
    while let Some(u) = queue.pop_front() {
        for &v in &adj[u] {
            if dist[v] == u32::MAX {
                dist[v] = dist[u] + 1;
                queue.push_back(v);
            }
        }
    }
    debug_assert!(dist.iter().all(|&d| d != u32::MAX));
    dist
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Tree {
        Tree::from_edges(n, (0..n - 1).map(|i| (i, i + 1))).unwrap()
    }

    #[test]
    fn parse_p3() {
        let t = Tree::parse("3\n0 1\n1 2").unwrap();
        assert_eq!(t.order(), 3);
        assert_eq!(t.dist(0, 2), 2);
        assert_eq!(t.dist(0, 1), 1);
    }

    #[test]
    fn parse_p4_diameter() {
        let t = Tree::parse("4\n0 1\n1 2\n2 3").unwrap();
        assert_eq!(t.diameter().unwrap(), 3);
        assert_eq!(t.dist(0, 3), 3);
    }

    #[test]
    fn parse_detects_cycle() {
        let err = Tree::parse("4\n0 1\n1 2\n2 0").unwrap_err();
        assert_eq!(err, TreeError::CycleDetected { line: 4 });
    }

    #[test]
    fn parse_rejects_self_loop_as_cycle() {
        let err = Tree::parse("3\n0 1\n2 2").unwrap_err();
        assert_eq!(err, TreeError::CycleDetected { line: 3 });
    }

    #[test]
    fn parse_rejects_duplicate_edge_either_orientation() {
        let err = Tree::parse("3\n0 1\n1 0").unwrap_err();
        assert_eq!(err, TreeError::DuplicateEdge { line: 3, u: 1, v: 0 });
    }

    #[test]
    fn parse_rejects_out_of_range_id() {
        let err = Tree::parse("3\n0 1\n1 5").unwrap_err();
        assert_eq!(err, TreeError::IdOutOfRange { line: 3, id: 5, p: 3 });
    }

    #[test]
    fn parse_rejects_malformed_edge_line() {
        let err = Tree::parse("3\n0 1\n1").unwrap_err();
        assert!(matches!(err, TreeError::Malformed { line: 3, .. }));
    }

    #[test]
    fn parse_rejects_truncated_input() {
        let err = Tree::parse("4\n0 1\n1 2").unwrap_err();
        assert_eq!(
            err,
            TreeError::WrongEdgeCount {
                expected: 3,
                found: 2
            }
        );
    }

    #[test]
    fn parse_rejects_extra_lines() {
        let err = Tree::parse("3\n0 1\n1 2\n0 2").unwrap_err();
        assert!(matches!(err, TreeError::Malformed { line: 4, .. }));
    }

    #[test]
    fn parse_skips_comments_and_blanks() {
        let t = Tree::parse("# a path\n\n3\n# edges follow\n0 1\n\n1 2\n").unwrap();
        assert_eq!(t.order(), 3);
        assert_eq!(t.dist(0, 2), 2);
    }

    #[test]
    fn star_distances() {
        let t = Tree::from_edges(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        for i in 1..4 {
            for j in 1..4 {
                if i != j {
                    assert_eq!(t.dist(i, j), 2);
                }
            }
            assert_eq!(t.dist(0, i), 1);
        }
        assert_eq!(t.diameter().unwrap(), 2);
    }

    #[test]
    fn k14_diameter() {
        let t = Tree::from_edges(5, [(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        assert_eq!(t.diameter().unwrap(), 2);
    }

    // 8-vertex tree: two hubs, each carrying a 3-vertex branch.
    #[test]
    fn double_star_composition_shape_diameter() {
        let t = Tree::from_edges(
            8,
            [(0, 1), (0, 2), (1, 3), (2, 4), (2, 5), (3, 6), (3, 7)],
        )
        .unwrap();
        assert_eq!(t.diameter().unwrap(), 5);
        assert_eq!(t.diameter_double_sweep().unwrap(), 5);
    }

    #[test]
    fn single_vertex_diameter_undefined() {
        let t = Tree::from_edges(1, []).unwrap();
        assert_eq!(t.diameter().unwrap_err(), TreeError::DiameterUndefined);
    }

    #[test]
    fn matrix_matches_rerooted_bfs() {
        let t = path(7);
        for src in 0..7 {
            let row = bfs_distances(&t.adj, src);
            for v in 0..7 {
                assert_eq!(t.dist(src, v), row[v] as usize);
            }
        }
    }

    #[test]
    fn text_round_trip() {
        let t = path(5);
        let again = Tree::parse(&t.to_text()).unwrap();
        assert_eq!(t.edges(), again.edges());
        assert_eq!(t.dist, again.dist);
    }

    #[test]
    fn dot_export_with_labels() {
        let t = Tree::parse("3\n0 1\n1 2").unwrap();
        let dot = t.to_dot(Some(&[2, 0, 3]));
        assert!(dot.contains("0 [label=\"0:2\"];"));
        assert!(dot.contains("0 -- 1;"));
        let plain = t.to_dot(None);
        assert!(plain.contains("  2;\n"));
    }
}
