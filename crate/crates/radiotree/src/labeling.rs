//! Radio labelings: feasibility checking against the radio condition,
//! certificate orderings, and the optimal labeling a certificate induces.
//!
//! A radio labeling assigns non-negative integer labels such that
//! `d(u,v) + |f(u)-f(v)| >= diam + 1` for every pair of distinct vertices.
//! A certificate ordering is a linear order of the vertices whose induced
//! labeling attains the level lower bound exactly.

use std::fmt;

use thiserror::Error;

use crate::metrics::{level_bound_value, TreeProfile};
use crate::tree::Tree;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LabelingError {
    #[error("line {line}: {reason}")]
    Malformed { line: usize, reason: String },
    #[error("line {line}: vertex {v} labeled more than once")]
    DuplicateVertex { line: usize, v: usize },
    #[error("line {line}: vertex id {v} out of range for {p} data lines")]
    VertexOutOfRange { line: usize, v: usize, p: usize },
    #[error("labeling is empty")]
    Empty,
    #[error("order is not a permutation of 0..{p}")]
    NotAPermutation { p: usize },
    #[error("ordering is not a valid certificate: {verdict}")]
    InvalidOrdering { verdict: OrderingVerdict },
}

/// A vertex-indexed assignment of non-negative integer labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RadioLabeling {
    labels: Vec<u64>,
}

impl RadioLabeling {
    pub fn new(labels: Vec<u64>) -> Self {
        assert!(!labels.is_empty(), "labeling must cover at least one vertex");
        RadioLabeling { labels }
    }

    pub fn labels(&self) -> &[u64] {
        &self.labels
    }

    pub fn get(&self, v: usize) -> u64 {
        self.labels[v]
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Span: largest label minus smallest label.
    pub fn span(&self) -> u64 {
        let max = *self.labels.iter().max().unwrap();
        let min = *self.labels.iter().min().unwrap();
        max - min
    }

    /// The vertex order induced by sorting labels ascending. Labels of a
    /// radio labeling are distinct, so ties cannot arise there.
    pub fn induced_ordering(&self) -> VertexOrdering {
        let mut order: Vec<usize> = (0..self.labels.len()).collect();
        order.sort_by_key(|&v| (self.labels[v], v));
        VertexOrdering { order }
    }

    /// Parse the labeling file format: one `vertex label` pair per data
    /// line, `#` comments and blank lines ignored. Every vertex `0..p`
    /// (p = number of data lines) must appear exactly once.
    pub fn parse(text: &str) -> Result<Self, LabelingError> {
        let mut pairs: Vec<(usize, usize, u64)> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut it = line.split_whitespace();
            let (a, b) = match (it.next(), it.next(), it.next()) {
                (Some(a), Some(b), None) => (a, b),
                _ => {
                    return Err(LabelingError::Malformed {
                        line: line_no,
                        reason: format!("expected \"vertex label\", got {line:?}"),
                    })
                }
            };
            let v: usize = a.parse().map_err(|_| LabelingError::Malformed {
                line: line_no,
                reason: format!("invalid vertex id {a:?}"),
            })?;
            let label: u64 = b.parse().map_err(|_| LabelingError::Malformed {
                line: line_no,
                reason: format!("invalid label {b:?}"),
            })?;
            pairs.push((line_no, v, label));
        }
        if pairs.is_empty() {
            return Err(LabelingError::Empty);
        }
        let p = pairs.len();
        let mut labels = vec![None; p];
        for (line, v, label) in pairs {
            if v >= p {
                return Err(LabelingError::VertexOutOfRange { line, v, p });
            }
            if labels[v].is_some() {
                return Err(LabelingError::DuplicateVertex { line, v });
            }
            labels[v] = Some(label);
        }
        Ok(RadioLabeling {
            labels: labels.into_iter().map(|l| l.unwrap()).collect(),
        })
    }

    /// Render in the labeling file format, one `vertex label` line per
    /// vertex in id order.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (v, label) in self.labels.iter().enumerate() {
            out.push_str(&format!("{v} {label}\n"));
        }
        out
    }
}

/// A permutation of the vertices `0..p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexOrdering {
    order: Vec<usize>,
}

impl VertexOrdering {
    pub fn new(order: Vec<usize>) -> Result<Self, LabelingError> {
        let p = order.len();
        let mut seen = vec![false; p];
        for &v in &order {
            if v >= p || seen[v] {
                return Err(LabelingError::NotAPermutation { p });
            }
            seen[v] = true;
        }
        Ok(VertexOrdering { order })
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }
}

/// Outcome of checking a labeling against the radio condition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RadioVerdict {
    Pass { span: u64 },
    /// First violating pair in lexicographic order, with the shortfall
    /// `(d+1) - d(u,v) - |f(u)-f(v)|`.
    Fail { u: usize, v: usize, deficit: u64 },
}

impl RadioVerdict {
    pub fn passed(&self) -> bool {
        matches!(self, RadioVerdict::Pass { .. })
    }
}

/// Check every vertex pair against `d(u,v) + |f(u)-f(v)| >= diam + 1`.
pub fn verify_radio(tree: &Tree, labeling: &RadioLabeling) -> RadioVerdict {
    let p = tree.order();
    assert_eq!(labeling.len(), p, "labeling must cover all vertices");
    if p == 1 {
        return RadioVerdict::Pass { span: 0 };
    }
    let d = tree.diameter().expect("p >= 2") as i64;
    for u in 0..p {
        for v in (u + 1)..p {
            let diff = labeling.get(u).abs_diff(labeling.get(v)) as i64;
            let deficit = (d + 1) - tree.dist(u, v) as i64 - diff;
            if deficit > 0 {
                return RadioVerdict::Fail {
                    u,
                    v,
                    deficit: deficit as u64,
                };
            }
        }
    }
    RadioVerdict::Pass {
        span: labeling.span(),
    }
}

/// Outcome of checking an ordering against the certificate conditions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrderingVerdict {
    Pass,
    /// Endpoint condition violated: the vertex at `position` is not
    /// allowed there (first position must be a weight center; the last
    /// must be the other center, or a neighbor of the single center).
    FailEndpoints { position: usize, vertex: usize },
    /// Pair condition violated at order positions `i < j`: the distance
    /// between the two vertices falls short of the required separation.
    FailPair {
        i: usize,
        j: usize,
        required: i64,
        actual: usize,
    },
}

impl OrderingVerdict {
    pub fn passed(&self) -> bool {
        matches!(self, OrderingVerdict::Pass)
    }
}

impl fmt::Display for OrderingVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrderingVerdict::Pass => write!(f, "pass"),
            OrderingVerdict::FailEndpoints { position, vertex } => write!(
                f,
                "endpoint condition violated at position {position} (vertex {vertex})"
            ),
            OrderingVerdict::FailPair {
                i,
                j,
                required,
                actual,
            } => write!(
                f,
                "pair condition violated at positions ({i}, {j}): distance {actual} < required {required}"
            ),
        }
    }
}

/// Check the two certificate conditions: (a) the order starts at a weight
/// center and ends at the other center (two-center case) or at a neighbor
/// of the center (one-center case); (b) for all positions i < j,
///
/// ```text
/// d(u_i, u_j) >= sum_{t=i}^{j-1} (L(u_t) + L(u_{t+1})) - (j-i)(d+eps) + (d+1)
/// ```
///
/// checked with prefix sums of levels, first violation in lexicographic
/// (i, j) order.
pub fn ordering_valid(tree: &Tree, prof: &TreeProfile, ord: &VertexOrdering) -> OrderingVerdict {
    let p = tree.order();
    assert_eq!(ord.len(), p, "ordering must cover all vertices");
    let order = ord.as_slice();

    // Condition (a).
    match prof.centers[..] {
        [w] => {
            if order[0] != w {
                return OrderingVerdict::FailEndpoints {
                    position: 0,
                    vertex: order[0],
                };
            }
            let last = order[p - 1];
            if p > 1 && !tree.neighbors(w).contains(&last) {
                return OrderingVerdict::FailEndpoints {
                    position: p - 1,
                    vertex: last,
                };
            }
        }
        [w, w2] => {
            let (first, last) = (order[0], order[p - 1]);
            if first != w && first != w2 {
                return OrderingVerdict::FailEndpoints {
                    position: 0,
                    vertex: first,
                };
            }
            if !(first == w && last == w2 || first == w2 && last == w) {
                return OrderingVerdict::FailEndpoints {
                    position: p - 1,
                    vertex: last,
                };
            }
        }
        _ => unreachable!("profile guarantees one or two centers"),
    }

    // Condition (b). pre[i] = sum of levels of the first i order entries.
    let d_eps = (prof.diameter + prof.epsilon as usize) as i64;
    let d1 = prof.diameter as i64 + 1;
    let mut pre = vec![0i64; p + 1];
    for (i, &u) in order.iter().enumerate() {
        pre[i + 1] = pre[i] + prof.levels[u] as i64;
    }
    for i in 0..p {
        for j in (i + 1)..p {
            // sum_{t=i}^{j-1} (L(u_t) + L(u_{t+1}))
            let s = (pre[j] - pre[i]) + (pre[j + 1] - pre[i + 1]);
            let required = s - (j - i) as i64 * d_eps + d1;
            let actual = tree.dist(order[i], order[j]);
            if (actual as i64) < required {
                return OrderingVerdict::FailPair {
                    i,
                    j,
                    required,
                    actual,
                };
            }
        }
    }
    OrderingVerdict::Pass
}

/// Build the labeling induced by a certificate ordering:
/// `f(u_0) = 0`, `f(u_{i+1}) = f(u_i) + (d+eps) - L(u_i) - L(u_{i+1})`.
///
/// The result attains the level lower bound exactly and satisfies the
/// radio condition.
pub fn label_from_ordering(
    tree: &Tree,
    prof: &TreeProfile,
    ord: &VertexOrdering,
) -> Result<RadioLabeling, LabelingError> {
    let verdict = ordering_valid(tree, prof, ord);
    if !verdict.passed() {
        return Err(LabelingError::InvalidOrdering { verdict });
    }
    let order = ord.as_slice();
    let d_eps = (prof.diameter + prof.epsilon as usize) as i64;
    let mut labels = vec![0u64; order.len()];
    let mut current: i64 = 0;
    for pair in order.windows(2) {
        let (prev, next) = (pair[0], pair[1]);
        let step = d_eps - prof.levels[prev] as i64 - prof.levels[next] as i64;
        assert!(
            step >= 1,
            "valid certificate orderings step by at least 1 (got {step})"
        );
        current += step;
        labels[next] = current as u64;
    }
    let labeling = RadioLabeling::new(labels);
    debug_assert_eq!(
        labeling.span() as i64,
        level_bound_value(prof.order, prof.diameter, prof.epsilon, prof.total_level)
    );
    debug_assert!(verify_radio(tree, &labeling).passed());
    Ok(labeling)
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

    fn ord(v: &[usize]) -> VertexOrdering {
        VertexOrdering::new(v.to_vec()).unwrap()
    }

    #[test]
    fn verify_p3_pass() {
        let t = path(3);
        let f = RadioLabeling::new(vec![2, 0, 3]);
        assert_eq!(verify_radio(&t, &f), RadioVerdict::Pass { span: 3 });
    }

    #[test]
    fn verify_p3_fail_first_pair() {
        let t = path(3);
        let f = RadioLabeling::new(vec![0, 1, 2]);
        assert_eq!(
            verify_radio(&t, &f),
            RadioVerdict::Fail {
                u: 0,
                v: 1,
                deficit: 1
            }
        );
    }

    #[test]
    fn verify_p4_pass() {
        let t = path(4);
        let f = RadioLabeling::new(vec![3, 0, 5, 2]);
        assert_eq!(verify_radio(&t, &f), RadioVerdict::Pass { span: 5 });
    }

    #[test]
    fn span_examples() {
        assert_eq!(RadioLabeling::new(vec![2, 0, 3]).span(), 3);
        assert_eq!(RadioLabeling::new(vec![0]).span(), 0);
        assert_eq!(RadioLabeling::new(vec![3, 0, 5, 2]).span(), 5);
    }

    #[test]
    fn ordering_valid_k14() {
        let t = star(4);
        let prof = TreeProfile::compute(&t).unwrap();
        assert!(ordering_valid(&t, &prof, &ord(&[0, 1, 2, 3, 4])).passed());
    }

    #[test]
    fn ordering_valid_p4() {
        let t = path(4);
        let prof = TreeProfile::compute(&t).unwrap();
        assert!(ordering_valid(&t, &prof, &ord(&[1, 3, 0, 2])).passed());
    }

    #[test]
    fn ordering_invalid_endpoint() {
        let t = path(4);
        let prof = TreeProfile::compute(&t).unwrap();
        assert_eq!(
            ordering_valid(&t, &prof, &ord(&[1, 0, 2, 3])),
            OrderingVerdict::FailEndpoints {
                position: 3,
                vertex: 3
            }
        );
    }

    #[test]
    fn labels_from_p4_certificate() {
        let t = path(4);
        let prof = TreeProfile::compute(&t).unwrap();
        let f = label_from_ordering(&t, &prof, &ord(&[1, 3, 0, 2])).unwrap();
        assert_eq!(f.labels(), &[3, 0, 5, 2]);
        assert_eq!(f.span(), 5);
    }

    #[test]
    fn labels_from_k14_certificate() {
        let t = star(4);
        let prof = TreeProfile::compute(&t).unwrap();
        let f = label_from_ordering(&t, &prof, &ord(&[0, 1, 2, 3, 4])).unwrap();
        assert_eq!(f.labels(), &[0, 2, 3, 4, 5]);
        assert_eq!(f.span(), 5);
    }

    #[test]
    fn labels_from_p3_certificate() {
        let t = path(3);
        let prof = TreeProfile::compute(&t).unwrap();
        let f = label_from_ordering(&t, &prof, &ord(&[1, 2, 0])).unwrap();
        assert_eq!(f.labels(), &[3, 0, 2]);
        assert_eq!(f.span(), 3);
    }

    #[test]
    fn invalid_ordering_is_an_error() {
        let t = path(4);
        let prof = TreeProfile::compute(&t).unwrap();
        let err = label_from_ordering(&t, &prof, &ord(&[1, 0, 2, 3])).unwrap_err();
        assert!(matches!(err, LabelingError::InvalidOrdering { .. }));
    }

    #[test]
    fn labeling_text_round_trip() {
        let f = RadioLabeling::new(vec![3, 0, 5, 2]);
        let parsed = RadioLabeling::parse(&f.to_text()).unwrap();
        assert_eq!(f, parsed);
    }

    #[test]
    fn labeling_parse_rejects_bad_input() {
        assert!(matches!(
            RadioLabeling::parse("0 1\n0 2").unwrap_err(),
            LabelingError::DuplicateVertex { line: 2, v: 0 }
        ));
        assert!(matches!(
            RadioLabeling::parse("0 1\n7 2").unwrap_err(),
            LabelingError::VertexOutOfRange { line: 2, v: 7, .. }
        ));
        assert!(matches!(
            RadioLabeling::parse("# only comments\n").unwrap_err(),
            LabelingError::Empty
        ));
    }

    #[test]
    fn ordering_must_be_permutation() {
        assert!(VertexOrdering::new(vec![0, 0, 1]).is_err());
        assert!(VertexOrdering::new(vec![0, 3, 1]).is_err());
        assert!(VertexOrdering::new(vec![2, 0, 1]).is_ok());
    }

    #[test]
    fn induced_ordering_sorts_by_label() {
        let f = RadioLabeling::new(vec![3, 0, 5, 2]);
        assert_eq!(f.induced_ordering().as_slice(), &[1, 3, 0, 2]);
    }
}
