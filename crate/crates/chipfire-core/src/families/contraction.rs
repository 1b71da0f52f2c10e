//! Divisors on contracted graphs: registered contraction rules first,
//! then the loop and bridge lemmas, then plain search. Every produced
//! divisor is rank-verified before being returned.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::bn;
use crate::divisor::Divisor;
use crate::error::{Error, Result};
use crate::graph::{multigraph_isomorphism, MultiGraph};
use crate::reduce;

use super::{lemmas, paper_divisor_on, Instance, Registry};

#[derive(Debug, Clone)]
pub struct ContractionWitness {
    pub divisor: Divisor,
    pub route: String,
    pub boundary_hits: Vec<String>,
}

/// Find a rank-1 divisor of degree within the gonality bound on a
/// (possibly repeatedly) contracted graph.
pub fn contraction_divisor(reg: &Registry, g: &MultiGraph) -> Result<ContractionWitness> {
    let genus = g.genus()?;
    let bound = bn::gonality_bound(genus);
    let mut failures: Vec<String> = Vec::new();

    // Registered rules: catalog families and contracted shapes alike.
    if let Ok(inst) = Instance::new(g) {
        for fam in reg.families.iter().filter(|f| f.genus == genus) {
            if multigraph_isomorphism(&fam.skeleton, &inst.skeleton).is_none() {
                continue;
            }
            match paper_divisor_on(fam, g) {
                Ok(applied) => {
                    if applied.divisor.degree() <= bound
                        && reduce::rank_at_least(g, &applied.divisor, 1)?.holds()
                    {
                        return Ok(ContractionWitness {
                            divisor: applied.divisor,
                            route: format!("rule:{}:{}", fam.id, applied.case),
                            boundary_hits: applied.boundary_hits,
                        });
                    }
                    failures.push(format!("{}:{} failed verification", fam.id, applied.case));
                }
                Err(e) => failures.push(format!("{}: {e}", fam.id)),
            }
        }
    }

    // Loop lemma.
    if matches!(genus, 4 | 5) {
        if let Ok(w) = lemmas::loop_lemma_divisor(g) {
            if w.divisor.degree() <= bound && reduce::rank_at_least(g, &w.divisor, 1)?.holds() {
                return Ok(ContractionWitness {
                    divisor: w.divisor,
                    route: w.route,
                    boundary_hits: Vec::new(),
                });
            }
        }
    }

    // Bridge lemma over any admissible decomposition.
    for (bridge, g1, g2) in g.bridge_decomposition()? {
        if g1 == 0 || (g1 % 2 == 1 && g2 % 2 == 1) {
            continue;
        }
        let (s1, s2) = lemmas::split_at_bridge(g, bridge)?;
        let w1 = side_witness(&s1.graph)?;
        let w2 = side_witness(&s2.graph)?;
        if let (Some(d1), Some(d2)) = (w1, w2) {
            if let Ok(d) = lemmas::bridge_lemma_divisor(g, bridge, &d1, &d2) {
                if d.degree() <= bound && reduce::rank_at_least(g, &d, 1)?.holds() {
                    return Ok(ContractionWitness {
                        divisor: d,
                        route: format!("bridge_lemma({g1},{g2})"),
                        boundary_hits: Vec::new(),
                    });
                }
            }
        }
    }

    // Plain search over reduced divisors.
    match bn::gonality(g, bound)? {
        bn::GonalityOutcome::Exact { witness, .. } => Ok(ContractionWitness {
            divisor: witness,
            route: "search".into(),
            boundary_hits: Vec::new(),
        }),
        bn::GonalityOutcome::ExceedsMax { .. } => Err(Error::Precondition(format!(
            "no rank-1 divisor within degree {bound} (routes tried: {})",
            failures.join("; ")
        ))),
    }
}

fn side_witness(side: &MultiGraph) -> Result<Option<Divisor>> {
    let genus = side.genus()?;
    match bn::gonality(side, bn::gonality_bound(genus))? {
        bn::GonalityOutcome::Exact { witness, .. } => Ok(Some(witness)),
        bn::GonalityOutcome::ExceedsMax { .. } => Ok(None),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{realize, Registry};

    #[test]
    fn first_family_contractions_have_witnesses() {
        let reg = Registry::load().unwrap();
        let fam = reg.by_id("g4.t14").unwrap();
        let g = realize(&fam.skeleton, &[1, 1, 1, 1, 1, 1, 1, 1, 1]).unwrap();
        let (_, tedges) = g.topological_decomposition().unwrap();
        for te in tedges.iter().filter(|t| !t.is_loop()) {
            let (contracted, _) = g.contract_topological_edge(te).unwrap();
            let w = contraction_divisor(&reg, &contracted).unwrap();
            assert!(w.divisor.degree() <= 3, "route {}", w.route);
            assert!(reduce::rank_at_least(&contracted, &w.divisor, 1).unwrap().holds());
        }
    }

    #[test]
    fn side_contraction_matches_registered_shape() {
        // Contracting a side edge of the genus-4 ladder type lands on
        // the registered contracted shape, so the rule route fires.
        let reg = Registry::load().unwrap();
        let fam = reg.by_id("g4.t14").unwrap();
        let g = realize(&fam.skeleton, &[1, 1, 2, 2, 1, 1, 2, 1, 1]).unwrap();
        let (_, tedges) = g.topological_decomposition().unwrap();
        let p = g.vertex_by_name("p").unwrap();
        let c = g.vertex_by_name("c").unwrap();
        let side = tedges
            .iter()
            .find(|t| t.endpoints == (p, c) || t.endpoints == (c, p))
            .unwrap();
        let (contracted, _) = g.contract_topological_edge(side).unwrap();
        let w = contraction_divisor(&reg, &contracted).unwrap();
        assert!(w.divisor.degree() <= 3);
        assert!(w.route.starts_with("rule:g4.c14"), "route was {}", w.route);
    }
}
