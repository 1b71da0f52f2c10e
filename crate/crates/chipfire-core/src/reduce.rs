//! Dhar's burning algorithm, q-reduced divisors, effectiveness of
//! classes, divisor rank, and first-burn subgraph extraction.

use alloc::vec;
use alloc::vec::Vec;

use crate::divisor::{fire_set, Divisor, FiringScript};
use crate::error::{Error, Result};
use crate::graph::{EdgeId, MultiGraph, VertexId};

/// Transcript of one burning pass started at `source`.
#[derive(Debug, Clone)]
pub struct BurnReport {
    pub source: VertexId,
    pub burnt: Vec<bool>,
    pub burnt_edges: Vec<bool>,
    /// Round at which each vertex burned; the source burns in round 1.
    pub arrival_round: Vec<Option<u32>>,
    /// Burn order: rounds in sequence, ids ascending within a round.
    pub order: Vec<VertexId>,
}

impl BurnReport {
    pub fn unburnt(&self) -> Vec<VertexId> {
        self.burnt.iter().enumerate().filter(|&(_, &b)| !b).map(|(v, _)| v).collect()
    }

    pub fn all_burnt(&self) -> bool {
        self.burnt.iter().all(|&b| b)
    }
}

/// One synchronous-round pass of the burning rule: a vertex burns when
/// its burning incident edge count strictly exceeds its chips. Requires
/// chips >= 0 away from the source. Loops at unburnt vertices contribute
/// nothing; loops at burnt vertices are burnt edges.
pub fn burn(g: &MultiGraph, d: &Divisor, q: VertexId) -> Result<BurnReport> {
    if d.len() != g.vertex_count() {
        return Err(Error::DivisorGraphMismatch);
    }
    if q >= g.vertex_count() {
        return Err(Error::UnknownVertex(alloc::format!("#{q}")));
    }
    for v in 0..g.vertex_count() {
        if v != q && d.get(v) < 0 {
            return Err(Error::NegativeChips(g.name(v).into()));
        }
    }
    let n = g.vertex_count();
    let mut burnt = vec![false; n];
    let mut burnt_edges = vec![false; g.edge_count()];
    let mut arrival = vec![None; n];
    let mut burning_count = vec![0i64; n];
    let mut order = Vec::with_capacity(n);

    burnt[q] = true;
    arrival[q] = Some(1);
    order.push(q);
    let mut frontier = vec![q];
    let mut round = 1u32;
    while !frontier.is_empty() {
        for &v in &frontier {
            for &(e, w) in g.incident(v) {
                if !burnt_edges[e] {
                    burnt_edges[e] = true;
                    if !burnt[w] {
                        burning_count[w] += 1;
                    }
                }
            }
        }
        round += 1;
        let mut next = Vec::new();
        for v in 0..n {
            if !burnt[v] && burning_count[v] > d.get(v) {
                next.push(v);
            }
        }
        for &v in &next {
            burnt[v] = true;
            arrival[v] = Some(round);
            order.push(v);
        }
        frontier = next;
    }
    Ok(BurnReport { source: q, burnt, burnt_edges, arrival_round: arrival, order })
}

/// Reduce `d` to its unique q-reduced representative, returning the
/// normalized firing-script witness.
///
/// Phase 1 clears negative chips off `q` by firing balls around `q`;
/// phase 2 iterates Dhar passes, firing the unburnt set. Both phases are
/// guarded by `cap` passes and fail loudly rather than loop.
pub fn q_reduce(
    g: &MultiGraph,
    d: &Divisor,
    q: VertexId,
    cap: usize,
) -> Result<(Divisor, FiringScript)> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    if d.len() != g.vertex_count() {
        return Err(Error::DivisorGraphMismatch);
    }
    if q >= g.vertex_count() {
        return Err(Error::UnknownVertex(alloc::format!("#{q}")));
    }
    let n = g.vertex_count();
    let mut cur = d.clone();
    let mut script = FiringScript::zero(g);
    let dist = g.distances_from(q);
    let mut iters = 0usize;

    // Phase 1: drive debts toward q.
    loop {
        let k = (0..n)
            .filter(|&v| v != q && cur.get(v) < 0)
            .filter_map(|v| dist[v])
            .min();
        let Some(k) = k else { break };
        debug_assert!(k >= 1);
        let ball: Vec<VertexId> = (0..n).filter(|&v| dist[v].is_some_and(|dv| dv < k)).collect();
        cur = fire_set(g, &cur, &ball)?;
        for &v in &ball {
            script.bump(v)?;
        }
        iters += 1;
        if iters > cap {
            return Err(Error::IterationCap(cap));
        }
    }

    // Phase 2: Dhar passes.
    loop {
        let report = burn(g, &cur, q)?;
        if report.all_burnt() {
            break;
        }
        let unburnt = report.unburnt();
        cur = fire_set(g, &cur, &unburnt)?;
        for &v in &unburnt {
            script.bump(v)?;
        }
        iters += 1;
        if iters > cap {
            return Err(Error::IterationCap(cap));
        }
    }
    script.normalize();
    Ok((cur, script))
}

/// A divisor class is effective iff its reduced form is; the outcome is
/// independent of the reduction basepoint.
pub fn class_effective(g: &MultiGraph, d: &Divisor) -> Result<bool> {
    class_effective_at(g, d, 0, crate::DEFAULT_ITER_CAP)
}

pub fn class_effective_at(g: &MultiGraph, d: &Divisor, q: VertexId, cap: usize) -> Result<bool> {
    if d.degree() < 0 {
        return Ok(false);
    }
    let (r, _) = q_reduce(g, d, q, cap)?;
    Ok(r.get(q) >= 0)
}

/// Outcome of a rank-at-least probe.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RankProbe {
    AtLeast,
    /// Lexicographically first effective divisor E of the probed degree
    /// with [d - E] not effective.
    Failure(Divisor),
}

impl RankProbe {
    pub fn holds(&self) -> bool {
        matches!(self, RankProbe::AtLeast)
    }
}

/// Early-exit test for rank(d) >= r. Enumerates candidate effective E of
/// degree r as nondecreasing vertex multisets, reducing toward each
/// support vertex in turn and failing fast.
pub fn rank_at_least(g: &MultiGraph, d: &Divisor, r: u32) -> Result<RankProbe> {
    rank_at_least_capped(g, d, r, crate::DEFAULT_ITER_CAP)
}

pub fn rank_at_least_capped(g: &MultiGraph, d: &Divisor, r: u32, cap: usize) -> Result<RankProbe> {
    if r == 0 {
        return Ok(if class_effective_at(g, d, 0, cap)? {
            RankProbe::AtLeast
        } else {
            RankProbe::Failure(Divisor::zero(g))
        });
    }
    if !class_effective_at(g, d, 0, cap)? {
        // Not even rank 0; the zero-padded witness at the first vertex.
        let mut e = Divisor::zero(g);
        e.set(0, r as i64);
        return Ok(RankProbe::Failure(e));
    }
    match probe(g, d, 0, r, cap)? {
        None => Ok(RankProbe::AtLeast),
        Some(multiset) => {
            let mut e = Divisor::zero(g);
            for v in multiset {
                e.add(v, 1)?;
            }
            Ok(RankProbe::Failure(e))
        }
    }
}

/// Returns the lex-first failing multiset suffix drawn from vertices
/// >= lo, or None if every completion keeps the class effective.
fn probe(
    g: &MultiGraph,
    d: &Divisor,
    lo: VertexId,
    remaining: u32,
    cap: usize,
) -> Result<Option<Vec<VertexId>>> {
    debug_assert!(remaining >= 1);
    for v in lo..g.vertex_count() {
        let (red, _) = q_reduce(g, d, v, cap)?;
        if red.get(v) < 1 {
            // [d - (v)] is not effective, and subtracting more keeps it
            // that way, so pad the witness with copies of v.
            return Ok(Some(vec![v; remaining as usize]));
        }
        if remaining > 1 {
            let mut next = red;
            next.add(v, -1)?;
            if let Some(mut suffix) = probe(g, &next, v, remaining - 1, cap)? {
                suffix.insert(0, v);
                return Ok(Some(suffix));
            }
        }
    }
    Ok(None)
}

/// Exact divisor rank: -1 for non-effective classes, else the largest k
/// such that removing any effective degree-k divisor leaves an effective
/// class.
pub fn rank(g: &MultiGraph, d: &Divisor) -> Result<i64> {
    rank_capped(g, d, crate::DEFAULT_ITER_CAP)
}

pub fn rank_capped(g: &MultiGraph, d: &Divisor, cap: usize) -> Result<i64> {
    if !class_effective_at(g, d, 0, cap)? {
        return Ok(-1);
    }
    let max = d.degree().max(0) as u32;
    for k in 1..=max {
        if !rank_at_least_capped(g, d, k, cap)?.holds() {
            return Ok(k as i64 - 1);
        }
    }
    Ok(max as i64)
}

/// The closure of the subgraph burnt on the first Dhar pass for D - (v),
/// fired at v, together with D restricted to it.
#[derive(Debug, Clone)]
pub struct FirstBurnConfiguration {
    pub subgraph: MultiGraph,
    /// Subgraph vertex id -> ambient vertex id.
    pub ambient_vertex: Vec<VertexId>,
    /// Subgraph edge id -> ambient edge id.
    pub ambient_edge: Vec<EdgeId>,
    /// D restricted to the subgraph.
    pub restricted: Divisor,
    /// The fire source, as a subgraph vertex id.
    pub basepoint: VertexId,
}

pub fn first_burn_configuration(
    g: &MultiGraph,
    d: &Divisor,
    v: VertexId,
) -> Result<FirstBurnConfiguration> {
    if d.len() != g.vertex_count() {
        return Err(Error::DivisorGraphMismatch);
    }
    if !d.is_effective() {
        return Err(Error::Precondition("divisor must be effective".into()));
    }
    if d.get(v) != 0 {
        return Err(Error::Precondition(alloc::format!(
            "fire source {} lies in the divisor support",
            g.name(v)
        )));
    }
    let mut probe = d.clone();
    probe.add(v, -1)?;
    let report = burn(g, &probe, v)?;

    let mut keep_vertex = report.burnt.clone();
    for (e, &(a, b)) in g.edges().iter().enumerate() {
        if report.burnt_edges[e] {
            keep_vertex[a] = true;
            keep_vertex[b] = true;
        }
    }
    let ambient_vertex: Vec<VertexId> =
        (0..g.vertex_count()).filter(|&u| keep_vertex[u]).collect();
    let mut local = vec![usize::MAX; g.vertex_count()];
    for (i, &u) in ambient_vertex.iter().enumerate() {
        local[u] = i;
    }
    let names = ambient_vertex.iter().map(|&u| g.name(u).into()).collect();
    let mut edges = Vec::new();
    let mut ambient_edge = Vec::new();
    for (e, &(a, b)) in g.edges().iter().enumerate() {
        if report.burnt_edges[e] {
            edges.push((local[a], local[b]));
            ambient_edge.push(e);
        }
    }
    let subgraph = MultiGraph::from_indexed(names, edges);
    let restricted = Divisor::from_chips(ambient_vertex.iter().map(|&u| d.get(u)).collect());
    Ok(FirstBurnConfiguration {
        subgraph,
        ambient_vertex,
        ambient_edge,
        restricted,
        basepoint: local[v],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::divisor::apply_script;

    fn triangle() -> MultiGraph {
        MultiGraph::build(&["u", "v", "w"], &[("u", "v"), ("v", "w"), ("w", "u")]).unwrap()
    }

    #[test]
    fn burn_triangle_two_chips() {
        let g = triangle();
        // D - (q) for D = 2(u), fire at q = w: u keeps 2 firefighters
        // against 2 burning edges, so u stays unburnt.
        let mut d = Divisor::from_named(&g, &[("u", 2)]).unwrap();
        let q = g.vertex_by_name("w").unwrap();
        d.add(q, -1).unwrap();
        let r = burn(&g, &d, q).unwrap();
        assert_eq!(r.unburnt(), vec![g.vertex_by_name("u").unwrap()]);
        // All three edges still burn via v and w.
        assert!(r.burnt_edges.iter().all(|&b| b));
    }

    #[test]
    fn burn_reduced_divisor_burns_everything() {
        let g = triangle();
        let d = Divisor::from_named(&g, &[("u", 2)]).unwrap();
        let r = burn(&g, &d, 0).unwrap();
        assert!(r.all_burnt());
        assert_eq!(r.arrival_round[0], Some(1));
        assert_eq!(r.arrival_round[1], Some(2));
    }

    #[test]
    fn burn_star_strict_inequality() {
        let g = MultiGraph::build(
            &["center", "l1", "l2", "l3"],
            &[("center", "l1"), ("center", "l2"), ("center", "l3")],
        )
        .unwrap();
        let d = Divisor::from_named(&g, &[("l1", 1), ("l2", 1), ("l3", 1)]).unwrap();
        let r = burn(&g, &d, 0).unwrap();
        // One burning edge never exceeds one firefighter.
        assert_eq!(r.order, vec![0]);
        assert_eq!(r.unburnt().len(), 3);
    }

    #[test]
    fn burn_rejects_negative_chips() {
        let g = triangle();
        let d = Divisor::from_named(&g, &[("v", -1)]).unwrap();
        assert!(matches!(burn(&g, &d, 0).unwrap_err(), Error::NegativeChips(_)));
    }

    #[test]
    fn reduce_triangle() {
        let g = triangle();
        let d = Divisor::from_named(&g, &[("u", 2)]).unwrap();
        let q = g.vertex_by_name("w").unwrap();
        let (r, s) = q_reduce(&g, &d, q, 10_000).unwrap();
        assert_eq!(r.chips(), &[0, 1, 1]);
        // Witness: fire u once.
        assert_eq!(s.counts(), &[1, 0, 0]);
        assert_eq!(apply_script(&g, &d, &s).unwrap(), r);
        // Idempotent, and the reduced form burns completely.
        let (r2, s2) = q_reduce(&g, &r, q, 10_000).unwrap();
        assert_eq!(r2, r);
        assert_eq!(s2.counts(), &[0, 0, 0]);
        assert!(burn(&g, &r, q).unwrap().all_burnt());
    }

    #[test]
    fn reduce_path_moves_chip_to_base() {
        let g = MultiGraph::build(&["a", "b", "c"], &[("a", "b"), ("b", "c")]).unwrap();
        let d = Divisor::from_named(&g, &[("c", 1)]).unwrap();
        let (r, s) = q_reduce(&g, &d, 0, 10_000).unwrap();
        assert_eq!(r.chips(), &[1, 0, 0]);
        assert_eq!(apply_script(&g, &d, &s).unwrap(), r);
    }

    #[test]
    fn reduce_handles_negative_chips() {
        let g = triangle();
        let d = Divisor::from_named(&g, &[("u", 2), ("v", -1)]).unwrap();
        let (r, s) = q_reduce(&g, &d, 0, 10_000).unwrap();
        assert!(r.get(1) >= 0 && r.get(2) >= 0);
        assert_eq!(apply_script(&g, &d, &s).unwrap(), r);
        assert_eq!(r.degree(), 1);
    }

    #[test]
    fn effectiveness() {
        let g = triangle();
        assert!(class_effective(&g, &Divisor::from_named(&g, &[("u", 1)]).unwrap()).unwrap());
        assert!(!class_effective(&g, &Divisor::from_named(&g, &[("u", -1)]).unwrap()).unwrap());
        // (2, -1, 0) reduces to an effective degree-1 divisor.
        assert!(
            class_effective(&g, &Divisor::from_named(&g, &[("u", 2), ("v", -1)]).unwrap())
                .unwrap()
        );
    }

    #[test]
    fn rank_small_cases() {
        let g = triangle();
        assert_eq!(rank(&g, &Divisor::from_named(&g, &[("u", 2)]).unwrap()).unwrap(), 1);
        assert_eq!(rank(&g, &Divisor::from_named(&g, &[("u", 1)]).unwrap()).unwrap(), 0);
        assert_eq!(rank(&g, &Divisor::from_named(&g, &[("u", -1)]).unwrap()).unwrap(), -1);

        // Canonical divisor of the theta graph has rank g - 1 = 1.
        let th = MultiGraph::build(&["v", "w"], &[("v", "w"), ("v", "w"), ("v", "w")]).unwrap();
        let k = crate::divisor::canonical_divisor(&th);
        assert_eq!(rank(&th, &k).unwrap(), 1);
    }

    #[test]
    fn rank_probe_witness() {
        let g = triangle();
        let d = Divisor::from_named(&g, &[("u", 1)]).unwrap();
        match rank_at_least(&g, &d, 1).unwrap() {
            RankProbe::Failure(e) => {
                assert_eq!(e.degree(), 1);
                // Lex-first failing probe is a chip at u itself? No: [d - (u)]
                // is the zero class, which is effective; the first failure
                // sits at v.
                assert_eq!(e.chips(), &[0, 1, 0]);
            }
            RankProbe::AtLeast => panic!("rank of a single chip on a cycle is 0"),
        }
        assert!(rank_at_least(&g, &d, 0).unwrap().holds());
    }

    #[test]
    fn first_burn_closure_on_triangle() {
        let g = triangle();
        let d = Divisor::from_named(&g, &[("u", 2)]).unwrap();
        let v = g.vertex_by_name("v").unwrap();
        let cfg = first_burn_configuration(&g, &d, v).unwrap();
        // Everything burns except u, which enters through the closure.
        assert_eq!(cfg.subgraph.vertex_count(), 3);
        assert_eq!(cfg.subgraph.edge_count(), 3);
        assert_eq!(cfg.restricted.degree(), 2);

        let err = first_burn_configuration(&g, &d, 0).unwrap_err();
        assert!(matches!(err, Error::Precondition(_)));
    }

    #[test]
    fn first_burn_two_triangle_bridge() {
        let b = MultiGraph::build(
            &["x", "y", "z", "p", "q", "r"],
            &[("x", "y"), ("y", "z"), ("z", "x"), ("z", "p"), ("p", "q"), ("q", "r"), ("r", "p")],
        )
        .unwrap();
        let d = Divisor::from_named(&b, &[("q", 1), ("r", 1)]).unwrap();
        let cfg = first_burn_configuration(&b, &d, 0).unwrap();
        // Fire from x: the left triangle and the bridge burn; q and r hold
        // the fire, entering only through the closure.
        let names: Vec<&str> =
            cfg.ambient_vertex.iter().map(|&u| b.name(u)).collect();
        assert_eq!(names, vec!["x", "y", "z", "p", "q", "r"]);
        assert_eq!(cfg.subgraph.edge_count(), 6); // all but the far edge q-r...
    }
}
