//! Standalone certificate re-verification. This module deliberately
//! avoids the reduction and rank machinery: it checks certificates by
//! pure integer arithmetic on the Laplacian, so a certificate stands on
//! its own evidence.

use std::collections::BTreeMap;

use crate::certificate::{graph_from_json, Certificate};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Accept,
    Reject(String),
}

impl Verdict {
    pub fn is_accept(&self) -> bool {
        matches!(self, Verdict::Accept)
    }
}

fn reject(msg: impl Into<String>) -> Verdict {
    Verdict::Reject(msg.into())
}

pub fn replay(cert: &Certificate) -> Verdict {
    let Ok(g) = graph_from_json(&cert.graph) else {
        return reject("graph does not parse");
    };
    if !g.is_connected() {
        return reject("graph is disconnected");
    }
    let n = g.vertex_count();
    let lookup = |m: &BTreeMap<String, i64>| -> Option<Vec<i64>> {
        if m.len() != n {
            return None;
        }
        let mut out = vec![0i64; n];
        for (name, &c) in m {
            out[g.vertex_by_name(name).ok()?] = c;
        }
        Some(out)
    };
    let Some(d) = lookup(&cert.divisor) else {
        return reject("divisor does not cover the vertex set exactly");
    };
    if d.iter().any(|&c| c < 0) {
        return reject("certified divisor is not effective");
    }
    let degree: i64 = d.iter().sum();
    if degree > cert.degree_bound {
        return reject("divisor degree exceeds the claimed bound");
    }
    if cert.rank_claim != 1 {
        return reject("only rank-1 certificates are replayable");
    }
    if cert.witnesses.len() != n {
        return reject("witness count differs from the vertex count");
    }
    let mut seen = vec![false; n];
    for w in &cert.witnesses {
        let Ok(v) = g.vertex_by_name(&w.vertex) else {
            return reject(format!("witness names unknown vertex {}", w.vertex));
        };
        if std::mem::replace(&mut seen[v], true) {
            return reject(format!("duplicate witness for {}", w.vertex));
        }
        let (Some(eff), Some(script)) = (lookup(&w.effective), lookup(&w.script)) else {
            return reject(format!("witness for {} has bad vertex maps", w.vertex));
        };
        if eff.iter().any(|&c| c < 0) {
            return reject(format!("witness for {} is not effective", w.vertex));
        }
        // Replay: D - (v) - L*script must equal the recorded divisor.
        let mut replayed = d.clone();
        replayed[v] -= 1;
        for &(a, b) in g.edges() {
            if a == b {
                continue;
            }
            let flow = script[a] - script[b];
            replayed[a] -= flow;
            replayed[b] += flow;
        }
        if replayed != eff {
            return reject(format!("script replay mismatch at witness {}", w.vertex));
        }
    }
    Verdict::Accept
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certificate::certify_rank1;
    use chipfire_core::{Divisor, MultiGraph};

    fn sample() -> Certificate {
        let g = MultiGraph::build(&["u", "v", "w"], &[("u", "v"), ("v", "w"), ("w", "u")])
            .unwrap();
        let d = Divisor::from_named(&g, &[("u", 2)]).unwrap();
        certify_rank1(&g, &d, 3, "v1", 100_000).unwrap()
    }

    #[test]
    fn accepts_valid_certificates() {
        assert!(replay(&sample()).is_accept());
    }

    #[test]
    fn rejects_corrupted_chip_counts() {
        let mut cert = sample();
        *cert.divisor.get_mut("u").unwrap() += 1;
        assert!(!replay(&cert).is_accept());

        let mut cert = sample();
        *cert.witnesses[0].effective.iter_mut().next().unwrap().1 += 1;
        assert!(!replay(&cert).is_accept());

        let mut cert = sample();
        *cert.witnesses[1].script.iter_mut().next().unwrap().1 += 1;
        assert!(!replay(&cert).is_accept());
    }
}
