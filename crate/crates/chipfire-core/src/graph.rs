//! Finite multigraphs with loops and parallel edges, plus the surgeries
//! used throughout: subdivision, smoothing, contraction of topological
//! edges, bridge decomposition and skeleton isomorphism.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

pub type VertexId = usize;
pub type EdgeId = usize;

/// A finite multigraph. Vertices carry stable names; edges carry stable
/// ids (their index) so parallel edges and loops stay individually
/// addressable, which Dhar burning needs for multiplicity counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiGraph {
    names: Vec<String>,
    edges: Vec<(VertexId, VertexId)>,
    /// Half-edge incidence: loops appear twice at their vertex, so
    /// `incidence[v].len()` is the valence with the loop convention.
    incidence: Vec<Vec<(EdgeId, VertexId)>>,
}

impl MultiGraph {
    /// Build a graph from vertex names and named edge endpoints.
    pub fn build<S: AsRef<str>>(vertices: &[S], edges: &[(S, S)]) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::EmptyGraph);
        }
        let names: Vec<String> = vertices.iter().map(|s| s.as_ref().to_string()).collect();
        let mut index = BTreeMap::new();
        for (i, n) in names.iter().enumerate() {
            if index.insert(n.clone(), i).is_some() {
                return Err(Error::Precondition(format!("duplicate vertex name {n}")));
            }
        }
        let mut idx_edges = Vec::with_capacity(edges.len());
        for (u, v) in edges {
            let (u, v) = (u.as_ref(), v.as_ref());
            let iu = *index.get(u).ok_or_else(|| Error::UnknownEndpoint {
                edge: format!("{u} {v}"),
                endpoint: u.to_string(),
            })?;
            let iv = *index.get(v).ok_or_else(|| Error::UnknownEndpoint {
                edge: format!("{u} {v}"),
                endpoint: v.to_string(),
            })?;
            idx_edges.push((iu, iv));
        }
        Ok(Self::from_indexed(names, idx_edges))
    }

    /// Build from pre-resolved vertex indices. Callers must pass valid ids.
    pub fn from_indexed(names: Vec<String>, edges: Vec<(VertexId, VertexId)>) -> Self {
        let mut incidence = vec![Vec::new(); names.len()];
        for (e, &(u, v)) in edges.iter().enumerate() {
            incidence[u].push((e, v));
            incidence[v].push((e, u));
        }
        MultiGraph { names, edges, incidence }
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn name(&self, v: VertexId) -> &str {
        &self.names[v]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn vertex_by_name(&self, name: &str) -> Result<VertexId> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    pub fn endpoints(&self, e: EdgeId) -> Result<(VertexId, VertexId)> {
        self.edges.get(e).copied().ok_or(Error::UnknownEdge(e))
    }

    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    /// Half-edge incidence at `v`; a loop contributes two entries.
    pub fn incident(&self, v: VertexId) -> &[(EdgeId, VertexId)] {
        &self.incidence[v]
    }

    /// Valence with loops counting twice.
    pub fn valence(&self, v: VertexId) -> usize {
        self.incidence[v].len()
    }

    pub fn is_loop(&self, e: EdgeId) -> bool {
        let (u, v) = self.edges[e];
        u == v
    }

    pub fn loop_count_at(&self, v: VertexId) -> usize {
        self.incidence[v].iter().filter(|&&(e, w)| w == v && self.is_loop(e)).count() / 2
    }

    pub fn is_connected(&self) -> bool {
        if self.names.is_empty() {
            return false;
        }
        let mut seen = vec![false; self.names.len()];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut reached = 1;
        while let Some(v) = stack.pop() {
            for &(_, w) in &self.incidence[v] {
                if !seen[w] {
                    seen[w] = true;
                    reached += 1;
                    stack.push(w);
                }
            }
        }
        reached == self.names.len()
    }

    /// First Betti number |E| - |V| + 1 of a connected graph.
    pub fn genus(&self) -> Result<usize> {
        if !self.is_connected() {
            return Err(Error::Disconnected);
        }
        Ok(self.edges.len() + 1 - self.names.len())
    }

    /// Unit-length graph distances from `source`.
    pub fn distances_from(&self, source: VertexId) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.names.len()];
        dist[source] = Some(0);
        let mut frontier = vec![source];
        let mut d = 0usize;
        while !frontier.is_empty() {
            d += 1;
            let mut next = Vec::new();
            for &v in &frontier {
                for &(_, w) in &self.incidence[v] {
                    if dist[w].is_none() {
                        dist[w] = Some(d);
                        next.push(w);
                    }
                }
            }
            frontier = next;
        }
        dist
    }

    fn fresh_name(&self, base: &str, taken: &mut BTreeSet<String>) -> String {
        let mut name = base.to_string();
        while taken.contains(&name) {
            name.push('\'');
        }
        taken.insert(name.clone());
        name
    }

    /// Replace edge `e` by a path with `k - 1` fresh bivalent interior
    /// vertices. `k = 1` returns the graph unchanged. Other edge ids are
    /// stable; the first segment keeps id `e`, the rest are appended.
    pub fn subdivide(&self, e: EdgeId, k: usize) -> Result<MultiGraph> {
        let (u, v) = self.endpoints(e)?;
        if k == 0 {
            return Err(Error::Precondition("subdivision factor must be >= 1".into()));
        }
        if k == 1 {
            return Ok(self.clone());
        }
        let mut names = self.names.clone();
        let mut taken: BTreeSet<String> = names.iter().cloned().collect();
        let mut interior = Vec::with_capacity(k - 1);
        for i in 1..k {
            let base = format!("{}.{}.{}", self.names[u], self.names[v], i);
            let name = self.fresh_name(&base, &mut taken);
            interior.push(names.len());
            names.push(name);
        }
        let mut edges = self.edges.clone();
        edges[e] = (u, interior[0]);
        for w in 0..k - 2 {
            edges.push((interior[w], interior[w + 1]));
        }
        edges.push((interior[k - 2], v));
        Ok(MultiGraph::from_indexed(names, edges))
    }

    /// Valence-(>= 3) vertices and the maximal bivalent paths between
    /// them. Rejects pure cycles and dangling valence-1 vertices.
    pub fn topological_decomposition(&self) -> Result<(Vec<VertexId>, Vec<TopologicalEdge>)> {
        self.decomposition_with_base(None)
    }

    /// Like `topological_decomposition`, but `base` (when given) counts
    /// as a topological vertex regardless of valence. This is the escape
    /// hatch for pure cycles.
    pub fn decomposition_with_base(
        &self,
        base: Option<VertexId>,
    ) -> Result<(Vec<VertexId>, Vec<TopologicalEdge>)> {
        if !self.is_connected() {
            return Err(Error::Disconnected);
        }
        for v in 0..self.vertex_count() {
            if self.valence(v) == 1 {
                return Err(Error::DanglingVertex(self.names[v].clone()));
            }
        }
        let mut topo: Vec<VertexId> =
            (0..self.vertex_count()).filter(|&v| self.valence(v) >= 3).collect();
        if let Some(b) = base {
            if !topo.contains(&b) {
                topo.push(b);
                topo.sort_unstable();
            }
        }
        if topo.is_empty() {
            return Err(Error::PureCycle);
        }
        let is_topo = {
            let mut f = vec![false; self.vertex_count()];
            for &t in &topo {
                f[t] = true;
            }
            f
        };
        let mut used = vec![false; self.edge_count()];
        let mut tedges = Vec::new();
        for &t in &topo {
            // Walk each unused half-edge out of t through bivalent vertices.
            for slot in 0..self.incidence[t].len() {
                let (e0, mut cur) = self.incidence[t][slot];
                if used[e0] {
                    continue;
                }
                used[e0] = true;
                let mut interior = Vec::new();
                let mut path = vec![e0];
                let mut prev_edge = e0;
                while !is_topo[cur] {
                    interior.push(cur);
                    // A bivalent non-topological vertex has exactly two
                    // half-edges; continue along the one we did not enter by.
                    let (en, wn) = self
                        .incidence[cur]
                        .iter()
                        .copied()
                        .find(|&(e, _)| e != prev_edge && !used[e])
                        .ok_or(Error::PureCycle)?;
                    used[en] = true;
                    path.push(en);
                    prev_edge = en;
                    cur = wn;
                }
                tedges.push(TopologicalEdge {
                    endpoints: (t, cur),
                    interior,
                    edge_ids: path,
                });
            }
        }
        debug_assert!(used.iter().all(|&u| u));
        Ok((topo, tedges))
    }

    /// Collapse all vertices of a non-loop topological edge to one. The
    /// merged vertex keeps the lexicographically smaller endpoint name.
    /// Genus is preserved: length(eps) edges and length(eps) vertices go.
    pub fn contract_topological_edge(
        &self,
        eps: &TopologicalEdge,
    ) -> Result<(MultiGraph, ContractionMap)> {
        let (a, b) = eps.endpoints;
        if a == b {
            return Err(Error::LoopContraction);
        }
        for &e in &eps.edge_ids {
            let (u, v) = self.endpoints(e)?;
            let on_path = |x: VertexId| x == a || x == b || eps.interior.contains(&x);
            if !on_path(u) || !on_path(v) {
                return Err(Error::EdgeNotInGraph);
            }
        }
        let keep = if self.names[a] <= self.names[b] { a } else { b };
        let mut dying: BTreeSet<VertexId> = eps.interior.iter().copied().collect();
        dying.insert(a);
        dying.insert(b);
        dying.remove(&keep);

        let mut vertex_map = vec![usize::MAX; self.vertex_count()];
        let mut names = Vec::new();
        for v in 0..self.vertex_count() {
            if dying.contains(&v) {
                continue;
            }
            vertex_map[v] = names.len();
            names.push(self.names[v].clone());
        }
        let target_of = |v: VertexId, map: &[usize]| -> VertexId {
            if v == keep || dying.contains(&v) {
                map[keep]
            } else {
                map[v]
            }
        };
        let gone: BTreeSet<EdgeId> = eps.edge_ids.iter().copied().collect();
        let mut edges = Vec::new();
        for (e, &(u, v)) in self.edges.iter().enumerate() {
            if gone.contains(&e) {
                continue;
            }
            edges.push((target_of(u, &vertex_map), target_of(v, &vertex_map)));
        }
        let target = MultiGraph::from_indexed(names, edges);
        let full_map: Vec<VertexId> =
            (0..self.vertex_count()).map(|v| target_of(v, &vertex_map)).collect();
        Ok((target, ContractionMap { vertex_map: full_map }))
    }

    /// Edges whose removal disconnects the graph. Loops and members of
    /// parallel classes are never bridges.
    pub fn bridges(&self) -> Vec<EdgeId> {
        // Iterative DFS lowlink, tracking the edge id used to enter each
        // vertex so parallel edges are distinguished.
        let n = self.vertex_count();
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![0usize; n];
        let mut out = Vec::new();
        let mut timer = 0usize;
        for start in 0..n {
            if disc[start] != usize::MAX {
                continue;
            }
            let mut stack: Vec<(VertexId, Option<EdgeId>, usize)> = vec![(start, None, 0)];
            disc[start] = timer;
            low[start] = timer;
            timer += 1;
            while !stack.is_empty() {
                let top = stack.len() - 1;
                let (v, pe, slot) = stack[top];
                if slot < self.incidence[v].len() {
                    stack[top].2 += 1;
                    let (e, w) = self.incidence[v][slot];
                    if Some(e) == pe || (w == v && self.is_loop(e)) {
                        continue;
                    }
                    if disc[w] == usize::MAX {
                        disc[w] = timer;
                        low[w] = timer;
                        timer += 1;
                        stack.push((w, Some(e), 0));
                    } else {
                        low[v] = low[v].min(disc[w]);
                    }
                } else {
                    stack.pop();
                    if let Some(&(p, _, _)) = stack.last() {
                        low[p] = low[p].min(low[v]);
                        if low[v] > disc[p] {
                            out.push(pe.expect("non-root has parent edge"));
                        }
                    }
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// One entry per bridge with the genera of the two sides, smaller
    /// first. Empty for bridgeless graphs.
    pub fn bridge_decomposition(&self) -> Result<Vec<(EdgeId, usize, usize)>> {
        if !self.is_connected() {
            return Err(Error::Disconnected);
        }
        let mut out = Vec::new();
        for e in self.bridges() {
            let (side, _) = self.split_component(e, self.edges[e].0);
            let v1 = side.len();
            let e1 = self
                .edges
                .iter()
                .enumerate()
                .filter(|&(f, &(u, v))| f != e && side.contains(&u) && side.contains(&v))
                .count();
            let g1 = e1 + 1 - v1;
            let g2 = self.genus()? - g1;
            out.push((e, g1.min(g2), g1.max(g2)));
        }
        Ok(out)
    }

    /// Vertices reachable from `from` without crossing edge `cut`.
    pub fn split_component(&self, cut: EdgeId, from: VertexId) -> (BTreeSet<VertexId>, Vec<EdgeId>) {
        let mut seen = BTreeSet::new();
        seen.insert(from);
        let mut stack = vec![from];
        while let Some(v) = stack.pop() {
            for &(e, w) in &self.incidence[v] {
                if e == cut {
                    continue;
                }
                if seen.insert(w) {
                    stack.push(w);
                }
            }
        }
        let edges = self
            .edges
            .iter()
            .enumerate()
            .filter(|&(f, &(u, v))| f != cut && seen.contains(&u) && seen.contains(&v))
            .map(|(f, _)| f)
            .collect();
        (seen, edges)
    }

    /// The deflated skeleton: one vertex per topological vertex, one edge
    /// per topological edge. Second component maps skeleton vertex ids
    /// back to ambient ids.
    pub fn skeleton(&self) -> Result<(MultiGraph, Vec<VertexId>)> {
        let (topo, tedges) = self.topological_decomposition()?;
        let mut back = BTreeMap::new();
        for (i, &t) in topo.iter().enumerate() {
            back.insert(t, i);
        }
        let names = topo.iter().map(|&t| self.names[t].clone()).collect();
        let edges = tedges.iter().map(|te| (back[&te.endpoints.0], back[&te.endpoints.1])).collect();
        Ok((MultiGraph::from_indexed(names, edges), topo))
    }

    /// Decide homeomorphism by comparing deflated skeletons. Returns a
    /// witness bijection on ambient topological vertex ids when true.
    pub fn skeleton_isomorphic(&self, other: &MultiGraph) -> Result<Option<Vec<(VertexId, VertexId)>>> {
        let (s1, back1) = self.skeleton()?;
        let (s2, back2) = other.skeleton()?;
        Ok(multigraph_isomorphism(&s1, &s2)
            .map(|m| m.into_iter().enumerate().map(|(a, b)| (back1[a], back2[b])).collect()))
    }
}

/// A maximal path of bivalent vertices between two topological vertices.
/// Length is `1 + interior.len()`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TopologicalEdge {
    pub endpoints: (VertexId, VertexId),
    /// Interior bivalent vertices ordered from `endpoints.0` to `.1`.
    pub interior: Vec<VertexId>,
    /// Underlying edge ids in path order.
    pub edge_ids: Vec<EdgeId>,
}

impl TopologicalEdge {
    pub fn length(&self) -> usize {
        self.edge_ids.len()
    }

    pub fn is_loop(&self) -> bool {
        self.endpoints.0 == self.endpoints.1
    }

    /// Vertex at `dist` steps from `endpoints.0` along the path
    /// (0 gives the first endpoint, `length()` the second).
    pub fn vertex_at(&self, dist: usize) -> Option<VertexId> {
        if dist == 0 {
            Some(self.endpoints.0)
        } else if dist < self.length() {
            Some(self.interior[dist - 1])
        } else if dist == self.length() {
            Some(self.endpoints.1)
        } else {
            None
        }
    }
}

/// Witness of a topological-edge contraction: a total, surjective map
/// from source vertices to target vertices, injective off the collapsed
/// edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContractionMap {
    pub vertex_map: Vec<VertexId>,
}

/// All vertex isomorphisms a -> b, in deterministic backtracking order.
/// Small skeletons only; used to enumerate candidate rule frames.
pub fn all_isomorphisms(a: &MultiGraph, b: &MultiGraph) -> Vec<Vec<VertexId>> {
    let mut out = Vec::new();
    iso_search(a, b, &mut |m| {
        out.push(m.to_vec());
        true
    });
    out
}

/// Backtracking multigraph isomorphism. Intended for the desk-scale
/// skeletons that show up here (at most a dozen topological vertices).
pub fn multigraph_isomorphism(a: &MultiGraph, b: &MultiGraph) -> Option<Vec<VertexId>> {
    let mut found = None;
    iso_search(a, b, &mut |m| {
        found = Some(m.to_vec());
        false
    });
    found
}

fn mult_between(g: &MultiGraph, u: VertexId, v: VertexId) -> usize {
    if u == v {
        g.loop_count_at(u)
    } else {
        g.incident(u).iter().filter(|&&(e, w)| w == v && !g.is_loop(e)).count()
    }
}

/// Visit isomorphisms a -> b in deterministic order; the visitor returns
/// false to stop the search.
fn iso_search(a: &MultiGraph, b: &MultiGraph, visit: &mut impl FnMut(&[VertexId]) -> bool) {
    let n = a.vertex_count();
    if n != b.vertex_count() || a.edge_count() != b.edge_count() {
        return;
    }
    // Per-vertex invariant: valence, loop count, sorted multiplicities of
    // parallel classes to distinct neighbours.
    fn profile(g: &MultiGraph, v: VertexId) -> (usize, usize, Vec<usize>) {
        let mut mult: BTreeMap<VertexId, usize> = BTreeMap::new();
        for &(e, w) in g.incident(v) {
            if !(w == v && g.is_loop(e)) {
                *mult.entry(w).or_insert(0) += 1;
            }
        }
        let mut m: Vec<usize> = mult.values().copied().collect();
        m.sort_unstable();
        (g.valence(v), g.loop_count_at(v), m)
    }
    let pa: Vec<_> = (0..n).map(|v| profile(a, v)).collect();
    let pb: Vec<_> = (0..n).map(|v| profile(b, v)).collect();
    {
        let mut sa = pa.clone();
        let mut sb = pb.clone();
        sa.sort();
        sb.sort();
        if sa != sb {
            return;
        }
    }
    fn extend(
        a: &MultiGraph,
        b: &MultiGraph,
        pa: &[(usize, usize, Vec<usize>)],
        pb: &[(usize, usize, Vec<usize>)],
        map: &mut Vec<VertexId>,
        used: &mut Vec<bool>,
        v: usize,
        visit: &mut impl FnMut(&[VertexId]) -> bool,
    ) -> bool {
        let n = a.vertex_count();
        if v == n {
            return visit(map);
        }
        for w in 0..n {
            if used[w] || pa[v] != pb[w] {
                continue;
            }
            let ok = (0..v).all(|u| mult_between(a, u, v) == mult_between(b, map[u], w))
                && mult_between(a, v, v) == mult_between(b, w, w);
            if ok {
                map[v] = w;
                used[w] = true;
                let keep_going = extend(a, b, pa, pb, map, used, v + 1, visit);
                used[w] = false;
                if !keep_going {
                    return false;
                }
            }
        }
        true
    }
    let mut map = vec![0usize; n];
    let mut used = vec![false; n];
    extend(a, b, &pa, &pb, &mut map, &mut used, 0, visit);
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> MultiGraph {
        MultiGraph::build(&["a", "b", "c"], &[("a", "b"), ("b", "c"), ("c", "a")]).unwrap()
    }

    fn theta() -> MultiGraph {
        MultiGraph::build(&["v", "w"], &[("v", "w"), ("v", "w"), ("v", "w")]).unwrap()
    }

    #[test]
    fn build_and_genus() {
        let t = triangle();
        assert_eq!(t.vertex_count(), 3);
        assert_eq!(t.edge_count(), 3);
        assert_eq!(t.genus().unwrap(), 1);

        let th = theta();
        assert_eq!(th.vertex_count(), 2);
        assert_eq!(th.edge_count(), 3);
        assert_eq!(th.genus().unwrap(), 2);

        // Figure-style genus-4 check: 5 vertices, 8 edges.
        let g = MultiGraph::build(
            &["a", "b", "c", "d", "e"],
            &[
                ("a", "b"),
                ("b", "e"),
                ("e", "c"),
                ("c", "a"),
                ("a", "d"),
                ("d", "b"),
                ("b", "c"),
                ("c", "d"),
            ],
        )
        .unwrap();
        assert_eq!(g.genus().unwrap(), 4);

        let k33 = MultiGraph::build(
            &["a1", "a2", "a3", "b1", "b2", "b3"],
            &[
                ("a1", "b1"),
                ("a1", "b2"),
                ("a1", "b3"),
                ("a2", "b1"),
                ("a2", "b2"),
                ("a2", "b3"),
                ("a3", "b1"),
                ("a3", "b2"),
                ("a3", "b3"),
            ],
        )
        .unwrap();
        assert_eq!(k33.genus().unwrap(), 4);
    }

    #[test]
    fn build_rejects_unknown_endpoint() {
        let err = MultiGraph::build(&["a"], &[("x", "b")]).unwrap_err();
        assert!(matches!(err, Error::UnknownEndpoint { .. }));
    }

    #[test]
    fn loop_valence_convention() {
        let g = MultiGraph::build(&["v", "w"], &[("v", "v"), ("v", "w")]).unwrap();
        assert_eq!(g.valence(0), 3);
        assert_eq!(g.loop_count_at(0), 1);
        // Degree-sum identity: sum (val - 2) = 2g - 2.
        let s: i64 = (0..g.vertex_count()).map(|v| g.valence(v) as i64 - 2).sum();
        assert_eq!(s, 2 * g.genus().unwrap() as i64 - 2);
    }

    #[test]
    fn subdivision_preserves_genus() {
        let t = triangle();
        let s = t.subdivide(0, 2).unwrap();
        assert_eq!(s.vertex_count(), 4);
        assert_eq!(s.edge_count(), 4);
        assert_eq!(s.genus().unwrap(), 1);
        assert_eq!(t.subdivide(1, 1).unwrap(), t);

        let mut th = theta();
        for e in 0..3 {
            th = th.subdivide(e, 3).unwrap();
        }
        assert_eq!(th.genus().unwrap(), 2);
        assert_eq!(th.vertex_count(), 2 + 3 * 2);
    }

    #[test]
    fn decomposition_of_subdivided_theta() {
        let th = theta().subdivide(0, 3).unwrap();
        let (topo, tedges) = th.topological_decomposition().unwrap();
        assert_eq!(topo.len(), 2);
        let mut lens: Vec<usize> = tedges.iter().map(|t| t.length()).collect();
        lens.sort_unstable();
        assert_eq!(lens, vec![1, 1, 3]);
    }

    #[test]
    fn decomposition_rejects_pure_cycle_and_dangling() {
        let c5 = MultiGraph::build(
            &["1", "2", "3", "4", "5"],
            &[("1", "2"), ("2", "3"), ("3", "4"), ("4", "5"), ("5", "1")],
        )
        .unwrap();
        assert_eq!(c5.topological_decomposition().unwrap_err(), Error::PureCycle);
        let (topo, tedges) = c5.decomposition_with_base(Some(0)).unwrap();
        assert_eq!(topo, vec![0]);
        assert_eq!(tedges.len(), 1);
        assert!(tedges[0].is_loop());
        assert_eq!(tedges[0].length(), 5);

        let dangling =
            MultiGraph::build(&["a", "b", "c"], &[("a", "b"), ("b", "c"), ("b", "c"), ("b", "c")])
                .unwrap();
        assert!(matches!(
            dangling.topological_decomposition().unwrap_err(),
            Error::DanglingVertex(_)
        ));
    }

    #[test]
    fn contraction_preserves_genus() {
        // Contracting one theta edge leaves two loops at a single vertex.
        let th = theta();
        let (_, tedges) = th.topological_decomposition().unwrap();
        let (c, map) = th.contract_topological_edge(&tedges[0]).unwrap();
        assert_eq!(c.vertex_count(), 1);
        assert_eq!(c.edge_count(), 2);
        assert_eq!(c.genus().unwrap(), 2);
        assert_eq!(map.vertex_map, vec![0, 0]);

        // Same after inflating the contracted edge to length 3.
        let th3 = theta().subdivide(0, 3).unwrap();
        let (_, tedges) = th3.topological_decomposition().unwrap();
        let long = tedges.iter().find(|t| t.length() == 3).unwrap();
        let (c, _) = th3.contract_topological_edge(long).unwrap();
        assert_eq!(c.vertex_count(), 1);
        assert_eq!(c.genus().unwrap(), 2);

        // Triangle edge contraction gives a 2-vertex banana. A triangle
        // has no valence-3 vertex, so hand the edge over directly.
        let t = triangle();
        let eps = TopologicalEdge { endpoints: (0, 1), interior: vec![], edge_ids: vec![0] };
        let (c, _) = t.contract_topological_edge(&eps).unwrap();
        assert_eq!(c.vertex_count(), 2);
        assert_eq!(c.genus().unwrap(), 1);
    }

    #[test]
    fn contraction_rejects_loops() {
        let g = MultiGraph::build(&["v", "w"], &[("v", "v"), ("v", "w"), ("v", "w"), ("w", "w")])
            .unwrap();
        let (_, tedges) = g.topological_decomposition().unwrap();
        let lp = tedges.iter().find(|t| t.is_loop()).unwrap();
        assert_eq!(g.contract_topological_edge(lp).unwrap_err(), Error::LoopContraction);
    }

    #[test]
    fn bridge_decomposition_cases() {
        let dumbbell =
            MultiGraph::build(&["u", "v"], &[("u", "u"), ("u", "v"), ("v", "v")]).unwrap();
        assert_eq!(dumbbell.bridge_decomposition().unwrap(), vec![(1, 1, 1)]);

        assert!(theta().bridge_decomposition().unwrap().is_empty());

        // Two thetas joined by a bridge: one bridge separating genera (2, 2).
        let g = MultiGraph::build(
            &["a", "b", "c", "d"],
            &[
                ("a", "b"),
                ("a", "b"),
                ("a", "b"),
                ("b", "c"),
                ("c", "d"),
                ("c", "d"),
                ("c", "d"),
            ],
        )
        .unwrap();
        assert_eq!(g.bridge_decomposition().unwrap(), vec![(3, 2, 2)]);
    }

    #[test]
    fn skeleton_isomorphism_cases() {
        let th = theta();
        let th_sub = theta().subdivide(1, 4).unwrap();
        assert!(th.skeleton_isomorphic(&th_sub).unwrap().is_some());

        let dumbbell =
            MultiGraph::build(&["u", "v"], &[("u", "u"), ("u", "v"), ("v", "v")]).unwrap();
        assert!(th.skeleton_isomorphic(&dumbbell).unwrap().is_none());

        let w = th.skeleton_isomorphic(&th).unwrap().unwrap();
        assert_eq!(w, vec![(0, 0), (1, 1)]);
    }

    #[test]
    fn topological_vertex_bound() {
        // Trivalent graphs meet the 2g - 2 bound with equality.
        let k33 = MultiGraph::build(
            &["a1", "a2", "a3", "b1", "b2", "b3"],
            &[
                ("a1", "b1"),
                ("a1", "b2"),
                ("a1", "b3"),
                ("a2", "b1"),
                ("a2", "b2"),
                ("a2", "b3"),
                ("a3", "b1"),
                ("a3", "b2"),
                ("a3", "b3"),
            ],
        )
        .unwrap();
        let (topo, _) = k33.topological_decomposition().unwrap();
        assert_eq!(topo.len(), 2 * k33.genus().unwrap() - 2);
    }
}
