//! Seeded random tree generation for test corpora.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use rand::Rng;

use crate::tree::Tree;

/// Decode a Pruefer sequence over `0..seq.len()+2` into a tree. The
/// decoding is a bijection onto labeled trees, so uniform sequences give
/// uniform trees.
pub fn prufer_decode(seq: &[usize]) -> Tree {
    let p = seq.len() + 2;
    assert!(seq.iter().all(|&s| s < p), "sequence entry out of range");
    let mut degree = vec![1u32; p];
    for &s in seq {
        degree[s] += 1;
    }
    let mut leaves: BinaryHeap<Reverse<usize>> = (0..p)
        .filter(|&v| degree[v] == 1)
        .map(Reverse)
        .collect();
    let mut edges = Vec::with_capacity(p - 1);
    for &s in seq {
        let Reverse(leaf) = leaves.pop().expect("a leaf always remains");
        edges.push((leaf, s));
        degree[s] -= 1;
        if degree[s] == 1 {
            leaves.push(Reverse(s));
        }
    }
    let Reverse(u) = leaves.pop().unwrap();
    let Reverse(v) = leaves.pop().unwrap();
    edges.push((u, v));
    Tree::from_edges(p, edges).expect("decoded sequence is a tree")
}

/// Uniform random labeled tree on `p` vertices.
pub fn random_tree<R: Rng + ?Sized>(p: usize, rng: &mut R) -> Tree {
    assert!(p >= 1);
    match p {
        1 => Tree::from_edges(1, []).unwrap(),
        2 => Tree::from_edges(2, [(0, 1)]).unwrap(),
        _ => {
            let seq: Vec<usize> = (0..p - 2).map(|_| rng.gen_range(0..p)).collect();
            prufer_decode(&seq)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn decode_known_sequence() {
        // Sequence (3, 3) on 4 vertices: star at 3.
        let t = prufer_decode(&[3, 3]);
        assert_eq!(t.order(), 4);
        for v in 0..3 {
            assert_eq!(t.dist(3, v), 1);
        }
    }

    #[test]
    fn random_trees_are_valid_and_seeded() {
        let mut a = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let mut b = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for p in 1..20 {
            let ta = random_tree(p, &mut a);
            let tb = random_tree(p, &mut b);
            assert_eq!(ta.order(), p);
            assert_eq!(ta.edges(), tb.edges());
        }
    }
}
