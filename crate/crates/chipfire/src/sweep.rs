//! Verification campaigns: every catalog family, every length assignment
//! with entries in 1..=max_length (mixed-radix order, resumable), with
//! optional contraction sequences along shortest edges, certificates per
//! instance, and a deterministic report.

use std::collections::HashMap;
use std::io::Write;
use std::path::PathBuf;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use chipfire_core::bn::{self, gonality_bound};
use chipfire_core::families::{
    catalog, contraction::contraction_divisor, paper_divisor_on, realize, CatalogEntry,
    CatalogFilter, Registry, REGISTRY_VERSION,
};
use chipfire_core::{reduce, Divisor, MultiGraph};

use crate::certificate::{certify_rank1, Certificate};

#[derive(Debug, Clone)]
pub struct SweepSpec {
    pub genus: usize,
    /// Restrict to these catalog ids; None sweeps everything.
    pub families: Option<Vec<String>>,
    pub max_length: usize,
    pub include_contractions: bool,
    pub contraction_depth: usize,
    pub jobs: usize,
    pub resume_from: usize,
    pub out: Option<PathBuf>,
}

#[derive(Debug)]
pub struct SweepReport {
    pub lines: Vec<String>,
    pub instances: u64,
    pub failures: u64,
    pub elapsed_ms: u128,
}

impl SweepReport {
    pub fn render(&self) -> String {
        let mut out = String::new();
        for l in &self.lines {
            out.push_str(l);
            out.push('\n');
        }
        out.push_str(&format!(
            "total: {} instances, {} failures\nelapsed_ms: {}\n",
            self.instances, self.failures, self.elapsed_ms
        ));
        out
    }
}

struct ItemOutcome {
    family: String,
    instances: u64,
    failures: Vec<String>,
    certs: Vec<(String, Certificate)>,
}

/// Search-backed witness cache: divisors supported on skeleton vertices
/// that verified once are retried first on sibling assignments.
pub struct WitnessCache {
    map: Mutex<HashMap<String, Vec<Vec<i64>>>>,
}

impl WitnessCache {
    pub fn new() -> Self {
        WitnessCache { map: Mutex::new(HashMap::new()) }
    }

    fn candidates(&self, id: &str) -> Vec<Vec<i64>> {
        self.map.lock().unwrap().get(id).cloned().unwrap_or_default()
    }

    fn learn(&self, id: &str, chips: Vec<i64>) {
        let mut m = self.map.lock().unwrap();
        let list = m.entry(id.to_string()).or_default();
        if !list.contains(&chips) {
            list.push(chips);
        }
    }
}

impl Default for WitnessCache {
    fn default() -> Self {
        Self::new()
    }
}

/// Produce a witness for one realized catalog instance: the registered
/// construction when there is one, otherwise cached candidates then a
/// bounded search. Returns the divisor and the route taken.
pub fn witness_for(
    entry: &CatalogEntry,
    g: &MultiGraph,
    cache: &WitnessCache,
) -> Result<(Divisor, String), chipfire_core::Error> {
    let bound = gonality_bound(entry.skeleton.genus()?);
    if let Some(fam) = entry.family {
        let applied = paper_divisor_on(fam, g)?;
        return Ok((applied.divisor, format!("rule:{}:{}", fam.id, applied.case)));
    }
    let n = entry.skeleton.vertex_count();
    for cand in cache.candidates(&entry.id) {
        let mut chips = vec![0i64; g.vertex_count()];
        chips[..n].copy_from_slice(&cand);
        let d = Divisor::from_chips(chips);
        if d.degree() <= bound && reduce::rank_at_least(g, &d, 1)?.holds() {
            return Ok((d, "cache".into()));
        }
    }
    match bn::gonality(g, bound)? {
        bn::GonalityOutcome::Exact { witness, .. } => {
            if witness.chips()[n..].iter().all(|&c| c == 0) {
                cache.learn(&entry.id, witness.chips()[..n].to_vec());
            }
            Ok((witness, "search".into()))
        }
        bn::GonalityOutcome::ExceedsMax { .. } => Err(chipfire_core::Error::Precondition(
            format!("no witness within degree {bound} for {}", entry.id),
        )),
    }
}

fn lengths_of(index: usize, edges: usize, max_length: usize) -> Vec<usize> {
    let mut x = index;
    (0..edges)
        .map(|_| {
            let l = 1 + (x % max_length);
            x /= max_length;
            l
        })
        .collect()
}

/// Shortest-length non-loop topological edges of a realized graph.
fn shortest_contractions(g: &MultiGraph) -> Vec<chipfire_core::TopologicalEdge> {
    let Ok((_, tedges)) = g.topological_decomposition() else { return Vec::new() };
    let min = tedges
        .iter()
        .filter(|t| !t.is_loop())
        .map(|t| t.length())
        .min();
    match min {
        Some(m) => tedges.into_iter().filter(|t| !t.is_loop() && t.length() == m).collect(),
        None => Vec::new(),
    }
}

pub fn run_sweep(reg: &Registry, spec: &SweepSpec) -> Result<SweepReport, chipfire_core::Error> {
    let start = Instant::now();
    let entries: Vec<CatalogEntry> = catalog(reg, spec.genus, CatalogFilter::ALL)?
        .into_iter()
        .filter(|e| match &spec.families {
            Some(ids) => ids.iter().any(|id| *id == e.id),
            None => true,
        })
        .collect();
    if entries.is_empty() {
        return Err(chipfire_core::Error::Precondition("no catalog families selected".into()));
    }
    let per_entry: Vec<usize> = entries
        .iter()
        .map(|e| spec.max_length.pow(e.skeleton.edge_count() as u32))
        .collect();
    let total: usize = per_entry.iter().sum();
    let first = spec.resume_from.min(total);

    let cache = WitnessCache::new();
    let bound = gonality_bound(spec.genus);
    let next = AtomicUsize::new(first);
    let outcomes: Mutex<Vec<ItemOutcome>> = Mutex::new(Vec::new());
    let cap = crate::iter_cap();

    let jobs = spec.jobs.max(1);
    std::thread::scope(|scope| {
        for _ in 0..jobs {
            scope.spawn(|| loop {
                let idx = next.fetch_add(1, Ordering::Relaxed);
                if idx >= total {
                    break;
                }
                let (mut entry_idx, mut local) = (0usize, idx);
                while local >= per_entry[entry_idx] {
                    local -= per_entry[entry_idx];
                    entry_idx += 1;
                }
                let entry = &entries[entry_idx];
                let outcome = process_item(entry, local, spec, bound, &cache, cap, idx);
                outcomes.lock().unwrap().push(outcome);
            });
        }
    });

    let mut all = outcomes.into_inner().unwrap();
    all.sort_by(|a, b| a.certs.first().map(|c| c.0.clone()).cmp(&b.certs.first().map(|c| c.0.clone())));

    // Persist certificates (single writer) and aggregate.
    if let Some(dir) = &spec.out {
        std::fs::create_dir_all(dir).map_err(io_err)?;
        for o in &all {
            for (name, cert) in &o.certs {
                let path = dir.join(format!("{name}.json"));
                let mut f = std::fs::File::create(path).map_err(io_err)?;
                let body = serde_json::to_string_pretty(cert).expect("serializable");
                f.write_all(body.as_bytes()).map_err(io_err)?;
            }
        }
    }

    let mut per_family: std::collections::BTreeMap<String, (u64, u64)> =
        std::collections::BTreeMap::new();
    let mut failure_lines = Vec::new();
    let mut instances = 0u64;
    let mut failures = 0u64;
    for o in &all {
        let slot = per_family.entry(o.family.clone()).or_insert((0, 0));
        slot.0 += o.instances;
        slot.1 += o.failures.len() as u64;
        instances += o.instances;
        failures += o.failures.len() as u64;
        failure_lines.extend(o.failures.iter().cloned());
    }
    let mut lines: Vec<String> = per_family
        .into_iter()
        .map(|(id, (n, f))| format!("family {id}: {n} instances, {f} failures"))
        .collect();
    failure_lines.sort();
    lines.extend(failure_lines);
    Ok(SweepReport { lines, instances, failures, elapsed_ms: start.elapsed().as_millis() })
}

fn io_err(e: std::io::Error) -> chipfire_core::Error {
    chipfire_core::Error::Precondition(format!("io error: {e}"))
}

fn process_item(
    entry: &CatalogEntry,
    assignment: usize,
    spec: &SweepSpec,
    bound: i64,
    cache: &WitnessCache,
    cap: usize,
    global_idx: usize,
) -> ItemOutcome {
    let lengths = lengths_of(assignment, entry.skeleton.edge_count(), spec.max_length);
    let mut out = ItemOutcome {
        family: entry.id.clone(),
        instances: 0,
        failures: Vec::new(),
        certs: Vec::new(),
    };
    let name = format!("{}-{global_idx}", entry.id);
    match verify_instance(entry, &lengths, bound, cache, cap) {
        Ok((g, cert)) => {
            out.instances += 1;
            out.certs.push((name.clone(), cert));
            if spec.include_contractions && spec.contraction_depth >= 1 {
                contract_recursively(
                    &g,
                    entry,
                    spec.contraction_depth,
                    bound,
                    cap,
                    &name,
                    &mut out,
                );
            }
        }
        Err(e) => {
            out.instances += 1;
            out.failures.push(format!("FAIL {} {:?}: {e}", entry.id, lengths));
        }
    }
    out
}

fn verify_instance(
    entry: &CatalogEntry,
    lengths: &[usize],
    bound: i64,
    cache: &WitnessCache,
    cap: usize,
) -> Result<(MultiGraph, Certificate), chipfire_core::Error> {
    let g = realize(&entry.skeleton, lengths)?;
    let (d, _route) = witness_for(entry, &g, cache)?;
    let cert = certify_rank1(&g, &d, bound, REGISTRY_VERSION, cap)?;
    Ok((g, cert))
}

fn contract_recursively(
    g: &MultiGraph,
    entry: &CatalogEntry,
    depth: usize,
    bound: i64,
    cap: usize,
    name: &str,
    out: &mut ItemOutcome,
) {
    let reg = match Registry::load() {
        Ok(r) => r,
        Err(e) => {
            out.failures.push(format!("FAIL {name}: registry reload: {e}"));
            return;
        }
    };
    contract_step(g, entry, &reg, depth, bound, cap, name, out);
}

#[allow(clippy::too_many_arguments)]
fn contract_step(
    g: &MultiGraph,
    entry: &CatalogEntry,
    reg: &Registry,
    depth: usize,
    bound: i64,
    cap: usize,
    name: &str,
    out: &mut ItemOutcome,
) {
    for (i, te) in shortest_contractions(g).iter().enumerate() {
        let sub = format!("{name}c{i}");
        let Ok((contracted, _)) = g.contract_topological_edge(te) else {
            out.failures.push(format!("FAIL {sub}: contraction failed"));
            out.instances += 1;
            continue;
        };
        out.instances += 1;
        match contraction_divisor(reg, &contracted)
            .and_then(|w| certify_rank1(&contracted, &w.divisor, bound, REGISTRY_VERSION, cap))
        {
            Ok(cert) => {
                out.certs.push((sub.clone(), cert));
                if depth >= 2 {
                    contract_step(&contracted, entry, reg, depth - 1, bound, cap, &sub, out);
                }
            }
            Err(e) => out.failures.push(format!("FAIL {sub}: {e}")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_sweep_passes() {
        let reg = Registry::load().unwrap();
        let spec = SweepSpec {
            genus: 4,
            families: Some(vec!["g4.t05".into(), "g4.t14".into()]),
            max_length: 1,
            include_contractions: false,
            contraction_depth: 0,
            jobs: 2,
            resume_from: 0,
            out: None,
        };
        let rep = run_sweep(&reg, &spec).unwrap();
        assert_eq!(rep.instances, 2);
        assert_eq!(rep.failures, 0);
    }

    #[test]
    fn resume_skips_items() {
        let reg = Registry::load().unwrap();
        let spec = SweepSpec {
            genus: 4,
            families: Some(vec!["g4.t05".into()]),
            max_length: 1,
            include_contractions: false,
            contraction_depth: 0,
            jobs: 1,
            resume_from: 1,
            out: None,
        };
        let rep = run_sweep(&reg, &spec).unwrap();
        assert_eq!(rep.instances, 0);
    }
}
