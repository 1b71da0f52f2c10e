//! Complete multipartite graphs and their gonality witnesses: one chip
//! on every topological vertex outside the largest part.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::divisor::Divisor;
use crate::error::{Error, Result};
use crate::graph::MultiGraph;

/// Skeleton of K_{n1,...,ns} with parts sorted ascending. Vertices are
/// named p{i}.{j}; edges run between all pairs in distinct parts, in
/// lexicographic part order.
pub fn multipartite_skeleton(parts: &[usize]) -> Result<MultiGraph> {
    if parts.len() < 2 {
        return Err(Error::Precondition("need at least two parts".into()));
    }
    if parts.iter().any(|&n| n == 0) {
        return Err(Error::Precondition("parts must be nonempty".into()));
    }
    let mut parts = parts.to_vec();
    parts.sort_unstable();
    let mut names: Vec<String> = Vec::new();
    let mut offsets = Vec::new();
    for (i, &n) in parts.iter().enumerate() {
        offsets.push(names.len());
        for j in 0..n {
            names.push(format!("p{}.{}", i + 1, j + 1));
        }
    }
    let mut edges = Vec::new();
    for i in 0..parts.len() {
        for j in i + 1..parts.len() {
            for a in 0..parts[i] {
                for b in 0..parts[j] {
                    edges.push((offsets[i] + a, offsets[j] + b));
                }
            }
        }
    }
    Ok(MultiGraph::from_indexed(names, edges))
}

/// Realize K_{n1,...,ns} at the given lengths and place one chip on each
/// topological vertex outside the largest part. The degree is the sum
/// of all but the largest part, which is exactly the gonality.
pub fn multipartite_divisor(parts: &[usize], lengths: &[usize]) -> Result<(MultiGraph, Divisor)> {
    let sk = multipartite_skeleton(parts)?;
    let g = super::realize(&sk, lengths)?;
    let mut sorted = parts.to_vec();
    sorted.sort_unstable();
    let chips: usize = sorted[..sorted.len() - 1].iter().sum();
    let mut d = Divisor::zero(&g);
    // Skeleton vertices keep ids 0.. in the realization, parts in
    // ascending order, so the first `chips` vertices are the small parts.
    for v in 0..chips {
        d.add(v, 1)?;
    }
    Ok((g, d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reduce;

    #[test]
    fn k33_witness() {
        let sk = multipartite_skeleton(&[3, 3]).unwrap();
        assert_eq!(sk.genus().unwrap(), 4);
        let lengths = alloc::vec![1; sk.edge_count()];
        let (g, d) = multipartite_divisor(&[3, 3], &lengths).unwrap();
        assert_eq!(d.degree(), 3);
        assert!(reduce::rank_at_least(&g, &d, 1).unwrap().holds());
    }

    #[test]
    fn k4_as_all_singletons() {
        let sk = multipartite_skeleton(&[1, 1, 1, 1]).unwrap();
        assert_eq!(sk.genus().unwrap(), 3);
        let lengths = alloc::vec![1; sk.edge_count()];
        let (g, d) = multipartite_divisor(&[1, 1, 1, 1], &lengths).unwrap();
        assert_eq!(d.degree(), 3);
        assert!(reduce::rank_at_least(&g, &d, 1).unwrap().holds());
    }

    #[test]
    fn star_is_a_tree() {
        let sk = multipartite_skeleton(&[1, 3]).unwrap();
        assert_eq!(sk.genus().unwrap(), 0);
        let lengths = alloc::vec![2; sk.edge_count()];
        let (g, d) = multipartite_divisor(&[3, 1], &lengths).unwrap();
        assert_eq!(d.degree(), 1);
        assert!(reduce::rank_at_least(&g, &d, 1).unwrap().holds());
    }
}
