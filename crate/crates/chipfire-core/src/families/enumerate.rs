//! Exhaustive enumeration of connected trivalent multigraphs (loops and
//! parallel edges allowed) up to isomorphism. A genus-g trivalent graph
//! has 2g - 2 vertices and 3g - 3 edges.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::{multigraph_isomorphism, MultiGraph, VertexId};

/// All connected trivalent multigraphs of the given genus, up to
/// isomorphism, ordered by canonical code ascending.
pub fn enumerate_trivalent(genus: usize) -> Result<Vec<MultiGraph>> {
    if genus < 2 {
        return Err(Error::Precondition("trivalent enumeration needs genus >= 2".into()));
    }
    if genus > 6 {
        return Err(Error::ResourceLimit(format!(
            "trivalent enumeration capped at genus 6 (requested {genus})"
        )));
    }
    let n = 2 * genus - 2;
    let mut reps: BTreeMap<Vec<u64>, Vec<MultiGraph>> = BTreeMap::new();
    let mut residual = vec![3usize; n];
    let mut mults: Vec<(VertexId, VertexId, usize)> = Vec::new();
    search(n, 0, 0, &mut residual, &mut mults, &mut reps);
    let mut out: Vec<(Vec<(VertexId, VertexId)>, MultiGraph)> = reps
        .into_values()
        .flatten()
        .map(|g| (canonical_code(&g), g))
        .collect();
    out.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(out.into_iter().map(|(_, g)| g).collect())
}

fn search(
    n: usize,
    i: VertexId,
    j: VertexId,
    residual: &mut Vec<usize>,
    mults: &mut Vec<(VertexId, VertexId, usize)>,
    reps: &mut BTreeMap<Vec<u64>, Vec<MultiGraph>>,
) {
    if i == n {
        finish(n, mults, reps);
        return;
    }
    if j == n {
        // Row i complete; its degree must be exactly 3.
        if residual[i] == 0 {
            search(n, i + 1, i + 1, residual, mults, reps);
        }
        return;
    }
    let max = if i == j { residual[i] / 2 } else { residual[i].min(residual[j]) };
    for m in 0..=max {
        let cost_i = if i == j { 2 * m } else { m };
        residual[i] -= cost_i;
        if i != j {
            residual[j] -= m;
        }
        if m > 0 {
            mults.push((i, j, m));
        }
        search(n, i, j + 1, residual, mults, reps);
        if m > 0 {
            mults.pop();
        }
        residual[i] += cost_i;
        if i != j {
            residual[j] += m;
        }
    }
}

fn finish(
    n: usize,
    mults: &[(VertexId, VertexId, usize)],
    reps: &mut BTreeMap<Vec<u64>, Vec<MultiGraph>>,
) {
    let names: Vec<String> = (0..n).map(|v| format!("v{v}")).collect();
    let mut edges = Vec::new();
    for &(u, v, m) in mults {
        for _ in 0..m {
            edges.push((u, v));
        }
    }
    let g = MultiGraph::from_indexed(names, edges);
    if !g.is_connected() {
        return;
    }
    let key = invariant(&g);
    let bucket = reps.entry(key).or_default();
    if bucket.iter().any(|r| multigraph_isomorphism(r, &g).is_some()) {
        return;
    }
    bucket.push(g);
}

/// Cheap isomorphism invariant for bucketing.
fn invariant(g: &MultiGraph) -> Vec<u64> {
    let n = g.vertex_count();
    let mut per_vertex: Vec<u64> = (0..n)
        .map(|v| {
            let mut mult: BTreeMap<VertexId, u64> = BTreeMap::new();
            for &(e, w) in g.incident(v) {
                if !(w == v && g.is_loop(e)) {
                    *mult.entry(w).or_insert(0) += 1;
                }
            }
            let mut ms: Vec<u64> = mult.values().copied().collect();
            ms.sort_unstable();
            let mut code = g.loop_count_at(v) as u64;
            for m in ms {
                code = code * 8 + m;
            }
            code
        })
        .collect();
    per_vertex.sort_unstable();
    // Append the triangle count as a second separator.
    let mut tri = 0u64;
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                let m = |x: VertexId, y: VertexId| {
                    g.incident(x).iter().filter(|&&(e, w)| w == y && !g.is_loop(e)).count() as u64
                };
                tri += m(a, b) * m(b, c) * m(a, c);
            }
        }
    }
    per_vertex.push(tri);
    per_vertex
}

/// Minimal edge-multiset encoding over all vertex relabelings; a total
/// order on isomorphism classes.
pub fn canonical_code(g: &MultiGraph) -> Vec<(VertexId, VertexId)> {
    let n = g.vertex_count();
    let mut perm: Vec<VertexId> = (0..n).collect();
    let mut best: Option<Vec<(VertexId, VertexId)>> = None;
    permute(&mut perm, 0, &mut |p| {
        let mut code: Vec<(VertexId, VertexId)> = g
            .edges()
            .iter()
            .map(|&(u, v)| {
                let (a, b) = (p[u], p[v]);
                (a.min(b), a.max(b))
            })
            .collect();
        code.sort_unstable();
        match &best {
            Some(b) if *b <= code => {}
            _ => best = Some(code),
        }
    });
    best.unwrap_or_default()
}

fn permute(perm: &mut Vec<VertexId>, k: usize, visit: &mut impl FnMut(&[VertexId])) {
    if k == perm.len() {
        visit(perm);
        return;
    }
    for i in k..perm.len() {
        perm.swap(k, i);
        permute(perm, k + 1, visit);
        perm.swap(k, i);
    }
}

/// Predicate helpers for catalog filtering.
pub fn has_topological_loop(g: &MultiGraph) -> bool {
    g.edges().iter().any(|&(u, v)| u == v)
}

pub fn has_bridge(g: &MultiGraph) -> bool {
    !g.bridges().is_empty()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_for_small_genus() {
        assert_eq!(enumerate_trivalent(2).unwrap().len(), 2);
        assert_eq!(enumerate_trivalent(3).unwrap().len(), 5);
    }

    #[test]
    fn genus_two_types_are_theta_and_dumbbell() {
        let types = enumerate_trivalent(2).unwrap();
        let theta =
            MultiGraph::build(&["v", "w"], &[("v", "w"), ("v", "w"), ("v", "w")]).unwrap();
        let dumbbell =
            MultiGraph::build(&["u", "v"], &[("u", "u"), ("u", "v"), ("v", "v")]).unwrap();
        assert!(types.iter().any(|t| multigraph_isomorphism(t, &theta).is_some()));
        assert!(types.iter().any(|t| multigraph_isomorphism(t, &dumbbell).is_some()));
    }

    #[test]
    fn deterministic_order() {
        let a = enumerate_trivalent(3).unwrap();
        let b = enumerate_trivalent(3).unwrap();
        let codes_a: Vec<_> = a.iter().map(canonical_code).collect();
        let codes_b: Vec<_> = b.iter().map(canonical_code).collect();
        assert_eq!(codes_a, codes_b);
        let mut sorted = codes_a.clone();
        sorted.sort();
        assert_eq!(codes_a, sorted);
    }

    #[test]
    fn resource_guard() {
        assert!(enumerate_trivalent(7).is_err());
    }
}
