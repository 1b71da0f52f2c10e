//! Replayable evidence that a divisor has degree <= d and rank >= 1:
//! serialized graph and divisor plus, for every vertex v, an effective
//! representative of D - (v) with the firing script that produces it.

use std::collections::BTreeMap;

use chipfire_core::divisor::apply_script;
use chipfire_core::{reduce, Divisor, FiringScript, MultiGraph};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct GraphJson {
    pub vertices: Vec<String>,
    pub edges: Vec<(String, String)>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct WitnessJson {
    pub vertex: String,
    /// Effective representative of D - (vertex), explicit zeros included.
    pub effective: BTreeMap<String, i64>,
    /// Firing script taking D - (vertex) to `effective`.
    pub script: BTreeMap<String, i64>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct Certificate {
    pub graph: GraphJson,
    pub divisor: BTreeMap<String, i64>,
    pub degree_bound: i64,
    pub rank_claim: i64,
    pub witnesses: Vec<WitnessJson>,
    pub registry_version: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

pub fn graph_to_json(g: &MultiGraph) -> GraphJson {
    GraphJson {
        vertices: g.names().to_vec(),
        edges: g
            .edges()
            .iter()
            .map(|&(u, v)| (g.name(u).to_string(), g.name(v).to_string()))
            .collect(),
    }
}

pub fn graph_from_json(j: &GraphJson) -> Result<MultiGraph, chipfire_core::Error> {
    let vs: Vec<&str> = j.vertices.iter().map(|s| s.as_str()).collect();
    let es: Vec<(&str, &str)> =
        j.edges.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
    MultiGraph::build(&vs, &es)
}

pub fn divisor_to_json(g: &MultiGraph, d: &Divisor) -> BTreeMap<String, i64> {
    (0..g.vertex_count()).map(|v| (g.name(v).to_string(), d.get(v))).collect()
}

pub fn divisor_from_json(
    g: &MultiGraph,
    j: &BTreeMap<String, i64>,
) -> Result<Divisor, chipfire_core::Error> {
    let mut d = Divisor::zero(g);
    for (name, &n) in j {
        let v = g.vertex_by_name(name)?;
        d.set(v, n);
    }
    Ok(d)
}

/// Build a rank-1 certificate by reducing D - (v) at every vertex. Fails
/// if any reduction comes out non-effective (the divisor then does not
/// have rank >= 1).
pub fn certify_rank1(
    g: &MultiGraph,
    d: &Divisor,
    degree_bound: i64,
    registry_version: &str,
    cap: usize,
) -> Result<Certificate, chipfire_core::Error> {
    if !d.is_effective() || d.degree() > degree_bound {
        return Err(chipfire_core::Error::Precondition(
            "certificates need an effective divisor within the degree bound".into(),
        ));
    }
    let mut witnesses = Vec::with_capacity(g.vertex_count());
    for v in 0..g.vertex_count() {
        let mut probe = d.clone();
        probe.add(v, -1)?;
        let (eff, script) = reduce::q_reduce(g, &probe, v, cap)?;
        if !eff.is_effective() {
            return Err(chipfire_core::Error::Precondition(format!(
                "divisor does not cover vertex {}",
                g.name(v)
            )));
        }
        debug_assert_eq!(apply_script(g, &probe, &script)?, eff);
        witnesses.push(WitnessJson {
            vertex: g.name(v).to_string(),
            effective: divisor_to_json(g, &eff),
            script: script_to_json(g, &script),
        });
    }
    Ok(Certificate {
        graph: graph_to_json(g),
        divisor: divisor_to_json(g, d),
        degree_bound,
        rank_claim: 1,
        witnesses,
        registry_version: registry_version.to_string(),
        timing_ms: None,
    })
}

pub fn script_to_json(g: &MultiGraph, s: &FiringScript) -> BTreeMap<String, i64> {
    (0..g.vertex_count()).map(|v| (g.name(v).to_string(), s.counts()[v])).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn certificate_for_triangle_double_chip() {
        let g = MultiGraph::build(&["u", "v", "w"], &[("u", "v"), ("v", "w"), ("w", "u")])
            .unwrap();
        let d = Divisor::from_named(&g, &[("u", 2)]).unwrap();
        let cert = certify_rank1(&g, &d, 3, "v1", 100_000).unwrap();
        assert_eq!(cert.witnesses.len(), 3);
        assert_eq!(cert.rank_claim, 1);
        // Single chips on a cycle have rank 0: certification must fail.
        let bad = Divisor::from_named(&g, &[("u", 1)]).unwrap();
        assert!(certify_rank1(&g, &bad, 3, "v1", 100_000).is_err());
    }
}
