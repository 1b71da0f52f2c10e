//! Construction rules as data: each family carries a skeleton, a frame
//! normalization guard, and an ordered list of guarded chip placements.
//! Rules are written against the skeleton's own labels and applied to
//! any homeomorphic graph by matching skeletons and transporting the
//! placements along the isomorphism.

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::divisor::Divisor;
use crate::error::{Error, Result};
use crate::graph::{all_isomorphisms, MultiGraph, TopologicalEdge, VertexId};

/// Integer expression over skeleton-edge lengths.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Len(usize),
    Const(i64),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Min(Box<Expr>, Box<Expr>),
}

impl Expr {
    pub fn eval(&self, lens: &[i64]) -> i64 {
        match self {
            Expr::Len(e) => lens[*e],
            Expr::Const(c) => *c,
            Expr::Add(a, b) => a.eval(lens) + b.eval(lens),
            Expr::Sub(a, b) => a.eval(lens) - b.eval(lens),
            Expr::Min(a, b) => a.eval(lens).min(b.eval(lens)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Guard {
    True,
    Le(Expr, Expr),
    Lt(Expr, Expr),
    Eq(Expr, Expr),
    And(Box<Guard>, Box<Guard>),
}

impl Guard {
    pub fn eval(&self, lens: &[i64]) -> bool {
        match self {
            Guard::True => true,
            Guard::Le(a, b) => a.eval(lens) <= b.eval(lens),
            Guard::Lt(a, b) => a.eval(lens) < b.eval(lens),
            Guard::Eq(a, b) => a.eval(lens) == b.eval(lens),
            Guard::And(a, b) => a.eval(lens) && b.eval(lens),
        }
    }
}

#[derive(Debug, Clone)]
pub enum Placement {
    At { count: i64, vertex: VertexId },
    /// Walk from `anchor` along the listed skeleton edges and drop the
    /// chips `dist` steps in, clamped to the path.
    Path { count: i64, anchor: VertexId, edges: Vec<usize>, dist: Expr },
}

#[derive(Debug, Clone)]
pub struct RuleCase {
    pub name: String,
    pub guard: Guard,
    pub placements: Vec<Placement>,
}

#[derive(Debug, Clone)]
pub struct Family {
    pub id: String,
    pub genus: usize,
    pub skeleton: MultiGraph,
    pub edge_names: Vec<String>,
    /// Frame chooser: the first skeleton isomorphism satisfying this
    /// guard fixes how rule labels land on the instance.
    pub normalize: Guard,
    pub cases: Vec<RuleCase>,
    /// Families whose construction is a computed lemma rather than a
    /// placement table ("loop_lemma").
    pub via: Option<String>,
    /// Fall back to a bounded search when the placement fails rank
    /// verification (set for the one catalog figure whose drawn rule is
    /// not robust across integer edge lengths).
    pub fallback_search: bool,
}

/// Result of applying a family rule to a homeomorphic instance.
#[derive(Debug, Clone)]
pub struct Applied {
    pub divisor: Divisor,
    pub case: String,
    /// Names of further cases whose guards also held; boundaries resolve
    /// to the first match but are recorded for audit.
    pub boundary_hits: Vec<String>,
}

/// The instance side of a match: a graph together with its topological
/// decomposition, cached because callers match several families.
pub struct Instance<'g> {
    pub graph: &'g MultiGraph,
    pub topo: Vec<VertexId>,
    pub tedges: Vec<TopologicalEdge>,
    pub skeleton: MultiGraph,
}

impl<'g> Instance<'g> {
    pub fn new(graph: &'g MultiGraph) -> Result<Self> {
        let (topo, tedges) = graph.topological_decomposition()?;
        Ok(Self::from_parts(graph, topo, tedges))
    }

    pub fn from_parts(
        graph: &'g MultiGraph,
        topo: Vec<VertexId>,
        tedges: Vec<TopologicalEdge>,
    ) -> Self {
        let mut local = BTreeMap::new();
        for (i, &t) in topo.iter().enumerate() {
            local.insert(t, i);
        }
        let names = topo.iter().map(|&t| graph.name(t).to_string()).collect();
        let edges = tedges
            .iter()
            .map(|te| (local[&te.endpoints.0], local[&te.endpoints.1]))
            .collect();
        let skeleton = MultiGraph::from_indexed(names, edges);
        Instance { graph, topo, tedges, skeleton }
    }

    /// Ambient vertex `dist` steps from `from` along topological edge
    /// `te`; `from` must be one of its endpoints.
    fn walk(&self, te: usize, from: VertexId, dist: usize) -> Result<VertexId> {
        let t = &self.tedges[te];
        if from == t.endpoints.0 {
            t.vertex_at(dist)
        } else if from == t.endpoints.1 {
            t.vertex_at(t.length() - dist)
        } else {
            None
        }
        .ok_or_else(|| Error::Registry("walk distance exceeds edge length".into()))
    }
}

impl Family {
    /// Apply this family's rule to a graph homeomorphic to its skeleton.
    pub fn apply(&self, inst: &Instance) -> Result<Applied> {
        let isos = all_isomorphisms(&self.skeleton, &inst.skeleton);
        if isos.is_empty() {
            return Err(Error::Registry(format!(
                "graph is not homeomorphic to family {}",
                self.id
            )));
        }
        for iso in &isos {
            let Some(edge_map) = edge_map_for(&self.skeleton, inst, iso) else { continue };
            let lens: Vec<i64> =
                edge_map.iter().map(|&te| inst.tedges[te].length() as i64).collect();
            if !self.normalize.eval(&lens) {
                continue;
            }
            return self.apply_in_frame(inst, iso, &edge_map, &lens);
        }
        Err(Error::Registry(format!(
            "no frame of family {} satisfies its normalization",
            self.id
        )))
    }

    fn apply_in_frame(
        &self,
        inst: &Instance,
        iso: &[VertexId],
        edge_map: &[usize],
        lens: &[i64],
    ) -> Result<Applied> {
        let mut chosen: Option<&RuleCase> = None;
        let mut hits = Vec::new();
        for case in &self.cases {
            if case.guard.eval(lens) {
                if chosen.is_none() {
                    chosen = Some(case);
                } else {
                    hits.push(case.name.clone());
                }
            }
        }
        let Some(case) = chosen else {
            return Err(Error::Registry(format!(
                "family {}: no case guard holds (guards not exhaustive)",
                self.id
            )));
        };
        let mut d = Divisor::zero(inst.graph);
        for p in &case.placements {
            match p {
                Placement::At { count, vertex } => {
                    d.add(inst.topo[iso[*vertex]], *count)?;
                }
                Placement::Path { count, anchor, edges, dist } => {
                    let mut cur = inst.topo[iso[*anchor]];
                    let total: i64 =
                        edges.iter().map(|&e| inst.tedges[edge_map[e]].length() as i64).sum();
                    let mut t = dist.eval(lens).clamp(0, total);
                    let mut landed = cur;
                    for &e in edges {
                        let te = edge_map[e];
                        let len = inst.tedges[te].length() as i64;
                        let step = t.min(len);
                        landed = inst.walk(te, cur, step as usize)?;
                        t -= step;
                        if t == 0 {
                            break;
                        }
                        cur = inst.walk(te, cur, len as usize)?;
                    }
                    d.add(landed, *count)?;
                }
            }
        }
        Ok(Applied { divisor: d, case: case.name.clone(), boundary_hits: hits })
    }
}

/// Map family edge ids to instance topological-edge indices under a
/// vertex isomorphism. Within a parallel class, family edges in listing
/// order match instance edges sorted by length (shortest first), so a
/// rule's first banana copy is the short one.
fn edge_map_for(skel: &MultiGraph, inst: &Instance, iso: &[VertexId]) -> Option<Vec<usize>> {
    let mut map = vec![usize::MAX; skel.edge_count()];
    let mut classes: BTreeMap<(VertexId, VertexId), Vec<usize>> = BTreeMap::new();
    for (e, &(u, v)) in skel.edges().iter().enumerate() {
        classes.entry((u.min(v), u.max(v))).or_default().push(e);
    }
    for ((u, v), fam_edges) in classes {
        let (tu, tv) = (iso[u], iso[v]);
        let key = (tu.min(tv), tu.max(tv));
        let mut inst_edges: Vec<usize> = inst
            .skeleton
            .edges()
            .iter()
            .enumerate()
            .filter(|&(_, &(a, b))| (a.min(b), a.max(b)) == key)
            .map(|(i, _)| i)
            .collect();
        if inst_edges.len() != fam_edges.len() {
            return None;
        }
        inst_edges.sort_by_key(|&i| (inst.tedges[i].length(), i));
        for (fe, ie) in fam_edges.into_iter().zip(inst_edges) {
            map[fe] = ie;
        }
    }
    Some(map)
}

// ---------------------------------------------------------------------
// Registry text format.
//
//   version 1
//   family <id> genus <n>
//   vertices <name>...
//   edge <name>: <u> <v>
//   normalize <guard>            (optional)
//   case <name>: <guard>
//   chip <count> at <vertex>
//   chip <count> path <anchor> <edge>... dist <expr>
//   end
//
// Guards: comparisons joined by 'and'; comparisons use <=, <, >=, >, ==
// over expressions built from integers, len(edge), +, -, min(a, b).
// ---------------------------------------------------------------------

struct RawCase {
    name: String,
    guard_src: String,
    chips: Vec<RawChip>,
}

enum RawChip {
    At { count: i64, vertex: String },
    Path { count: i64, anchor: String, edges: Vec<String>, dist_src: String },
}

pub fn parse_registry(text: &str) -> Result<Vec<Family>> {
    let mut families = Vec::new();
    let mut version_seen = false;

    type RawFamily = (
        String,
        usize,
        Vec<String>,
        Vec<(String, String, String)>,
        String,
        Vec<RawCase>,
        Option<String>,
        bool,
    );
    let mut cur: Option<RawFamily> = None;
    for (lno, raw) in text.lines().enumerate() {
        let line = match raw.find('#') {
            Some(i) => raw[..i].trim(),
            None => raw.trim(),
        };
        if line.is_empty() {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        match toks[0] {
            "version" => version_seen = true,
            "family" => {
                if cur.is_some() {
                    return Err(err(lno, "nested family (missing 'end'?)"));
                }
                if toks.len() != 4 || toks[2] != "genus" {
                    return Err(err(lno, "family syntax: family <id> genus <n>"));
                }
                let genus = toks[3].parse().map_err(|_| err(lno, "bad genus"))?;
                cur = Some((
                    toks[1].to_string(),
                    genus,
                    Vec::new(),
                    Vec::new(),
                    String::from("true"),
                    Vec::new(),
                    None,
                    false,
                ));
            }
            "vertices" => {
                let f = cur.as_mut().ok_or_else(|| err(lno, "vertices outside family"))?;
                f.2 = toks[1..].iter().map(|s| s.to_string()).collect();
            }
            "edge" => {
                let f = cur.as_mut().ok_or_else(|| err(lno, "edge outside family"))?;
                if toks.len() != 4 || !toks[1].ends_with(':') {
                    return Err(err(lno, "edge syntax: edge <name>: <u> <v>"));
                }
                f.3.push((
                    toks[1].trim_end_matches(':').to_string(),
                    toks[2].to_string(),
                    toks[3].to_string(),
                ));
            }
            "normalize" => {
                let f = cur.as_mut().ok_or_else(|| err(lno, "normalize outside family"))?;
                f.4 = line["normalize".len()..].trim().to_string();
            }
            "via" => {
                let f = cur.as_mut().ok_or_else(|| err(lno, "via outside family"))?;
                f.6 = Some(
                    toks.get(1)
                        .ok_or_else(|| err(lno, "via needs a construction name"))?
                        .to_string(),
                );
            }
            "fallback" => {
                let f = cur.as_mut().ok_or_else(|| err(lno, "fallback outside family"))?;
                if toks.get(1) != Some(&"search") {
                    return Err(err(lno, "only 'fallback search' is supported"));
                }
                f.7 = true;
            }
            "case" => {
                let f = cur.as_mut().ok_or_else(|| err(lno, "case outside family"))?;
                let rest = line["case".len()..].trim();
                let (name, guard) = rest
                    .split_once(':')
                    .ok_or_else(|| err(lno, "case syntax: case <name>: <guard>"))?;
                f.5.push(RawCase {
                    name: name.trim().to_string(),
                    guard_src: guard.trim().to_string(),
                    chips: Vec::new(),
                });
            }
            "chip" => {
                let f = cur.as_mut().ok_or_else(|| err(lno, "chip outside family"))?;
                let case = f.5.last_mut().ok_or_else(|| err(lno, "chip outside case"))?;
                let count: i64 = toks
                    .get(1)
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| err(lno, "bad chip count"))?;
                match toks.get(2) {
                    Some(&"at") => {
                        let v = *toks.get(3).ok_or_else(|| err(lno, "chip at <vertex>"))?;
                        case.chips.push(RawChip::At { count, vertex: v.to_string() });
                    }
                    Some(&"path") => {
                        let di = toks
                            .iter()
                            .position(|&t| t == "dist")
                            .ok_or_else(|| err(lno, "path placement needs dist"))?;
                        if di < 4 {
                            return Err(err(lno, "path needs an anchor and edges"));
                        }
                        case.chips.push(RawChip::Path {
                            count,
                            anchor: toks[3].to_string(),
                            edges: toks[4..di].iter().map(|s| s.to_string()).collect(),
                            dist_src: toks[di + 1..].join(" "),
                        });
                    }
                    _ => return Err(err(lno, "chip syntax: chip <n> at <v> | chip <n> path ...")),
                }
            }
            "end" => {
                let (id, genus, vertices, edges, normalize_src, raw_cases, via, fb) =
                    cur.take().ok_or_else(|| err(lno, "'end' outside family"))?;
                families.push(resolve_family(
                    lno,
                    id,
                    genus,
                    vertices,
                    edges,
                    &normalize_src,
                    raw_cases,
                    via,
                    fb,
                )?);
            }
            other => return Err(err(lno, &format!("unexpected token {other}"))),
        }
    }
    if cur.is_some() {
        return Err(Error::Registry("registry ends inside a family".into()));
    }
    if !version_seen {
        return Err(Error::Registry("registry missing version line".into()));
    }
    Ok(families)
}

fn err(lno: usize, msg: &str) -> Error {
    Error::Registry(format!("line {}: {}", lno + 1, msg))
}

#[allow(clippy::too_many_arguments)]
fn resolve_family(
    lno: usize,
    id: String,
    genus: usize,
    vertices: Vec<String>,
    edges: Vec<(String, String, String)>,
    normalize_src: &str,
    raw_cases: Vec<RawCase>,
    via: Option<String>,
    fallback_search: bool,
) -> Result<Family> {
    let vs: Vec<&str> = vertices.iter().map(|s| s.as_str()).collect();
    let es: Vec<(&str, &str)> = edges.iter().map(|(_, a, b)| (a.as_str(), b.as_str())).collect();
    let skeleton = MultiGraph::build(&vs, &es)
        .map_err(|e| err(lno, &format!("family {id}: bad skeleton: {e}")))?;
    if skeleton.genus().map_err(|e| err(lno, &format!("{e}")))? != genus {
        return Err(err(lno, &format!("family {id}: skeleton genus mismatch")));
    }
    let vmap: BTreeMap<&str, usize> =
        vertices.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();
    let emap: BTreeMap<&str, usize> =
        edges.iter().enumerate().map(|(i, (n, _, _))| (n.as_str(), i)).collect();
    let edge_names = edges.iter().map(|(n, _, _)| n.clone()).collect();
    let normalize = parse_guard(lno, normalize_src, &emap)?;
    let mut cases = Vec::new();
    for rc in raw_cases {
        let guard = parse_guard(lno, &rc.guard_src, &emap)?;
        let mut placements = Vec::new();
        for chip in rc.chips {
            placements.push(match chip {
                RawChip::At { count, vertex } => Placement::At {
                    count,
                    vertex: *vmap
                        .get(vertex.as_str())
                        .ok_or_else(|| err(lno, &format!("unknown vertex {vertex}")))?,
                },
                RawChip::Path { count, anchor, edges, dist_src } => Placement::Path {
                    count,
                    anchor: *vmap
                        .get(anchor.as_str())
                        .ok_or_else(|| err(lno, &format!("unknown vertex {anchor}")))?,
                    edges: edges
                        .iter()
                        .map(|e| {
                            emap.get(e.as_str())
                                .copied()
                                .ok_or_else(|| err(lno, &format!("unknown edge {e}")))
                        })
                        .collect::<Result<_>>()?,
                    dist: parse_expr(lno, &dist_src, &emap)?,
                },
            });
        }
        cases.push(RuleCase { name: rc.name, guard, placements });
    }
    Ok(Family { id, genus, skeleton, edge_names, normalize, cases, via, fallback_search })
}

fn parse_guard(lno: usize, src: &str, emap: &BTreeMap<&str, usize>) -> Result<Guard> {
    let src = src.trim();
    if src.is_empty() || src == "true" {
        return Ok(Guard::True);
    }
    let mut guard: Option<Guard> = None;
    for part in src.split(" and ") {
        let g = parse_cmp(lno, part.trim(), emap)?;
        guard = Some(match guard {
            None => g,
            Some(prev) => Guard::And(Box::new(prev), Box::new(g)),
        });
    }
    guard.ok_or_else(|| err(lno, "empty guard"))
}

fn parse_cmp(lno: usize, src: &str, emap: &BTreeMap<&str, usize>) -> Result<Guard> {
    for (op, flip, strict, eq) in [
        ("<=", false, false, false),
        (">=", true, false, false),
        ("==", false, false, true),
        ("<", false, true, false),
        (">", true, true, false),
    ] {
        if let Some(i) = src.find(op) {
            let lhs = parse_expr(lno, &src[..i], emap)?;
            let rhs = parse_expr(lno, &src[i + op.len()..], emap)?;
            let (a, b) = if flip { (rhs, lhs) } else { (lhs, rhs) };
            return Ok(if eq {
                Guard::Eq(a, b)
            } else if strict {
                Guard::Lt(a, b)
            } else {
                Guard::Le(a, b)
            });
        }
    }
    Err(err(lno, &format!("cannot parse comparison '{src}'")))
}

/// Expressions: sums and differences of atoms; atoms are integers,
/// len(edge) or min(expr, expr).
fn parse_expr(lno: usize, src: &str, emap: &BTreeMap<&str, usize>) -> Result<Expr> {
    let toks = tokenize(src);
    let (expr, rest) = parse_sum(lno, &toks, 0, emap)?;
    if rest != toks.len() {
        return Err(err(lno, &format!("trailing tokens in expression '{src}'")));
    }
    Ok(expr)
}

fn tokenize(src: &str) -> Vec<String> {
    let mut toks = Vec::new();
    let mut cur = String::new();
    for ch in src.chars() {
        match ch {
            '(' | ')' | ',' | '+' | '-' => {
                if !cur.is_empty() {
                    toks.push(core::mem::take(&mut cur));
                }
                toks.push(ch.to_string());
            }
            c if c.is_whitespace() => {
                if !cur.is_empty() {
                    toks.push(core::mem::take(&mut cur));
                }
            }
            c => cur.push(c),
        }
    }
    if !cur.is_empty() {
        toks.push(cur);
    }
    toks
}

fn parse_sum(
    lno: usize,
    toks: &[String],
    mut pos: usize,
    emap: &BTreeMap<&str, usize>,
) -> Result<(Expr, usize)> {
    let (mut acc, next) = parse_atom(lno, toks, pos, emap)?;
    pos = next;
    while pos < toks.len() && (toks[pos] == "+" || toks[pos] == "-") {
        let op = toks[pos].clone();
        let (rhs, next) = parse_atom(lno, toks, pos + 1, emap)?;
        pos = next;
        acc = if op == "+" {
            Expr::Add(Box::new(acc), Box::new(rhs))
        } else {
            Expr::Sub(Box::new(acc), Box::new(rhs))
        };
    }
    Ok((acc, pos))
}

fn parse_atom(
    lno: usize,
    toks: &[String],
    pos: usize,
    emap: &BTreeMap<&str, usize>,
) -> Result<(Expr, usize)> {
    let tok = toks.get(pos).ok_or_else(|| err(lno, "expression ended early"))?;
    if tok == "min" {
        if toks.get(pos + 1).map(|s| s.as_str()) != Some("(") {
            return Err(err(lno, "min needs '('"));
        }
        let (a, p) = parse_sum(lno, toks, pos + 2, emap)?;
        if toks.get(p).map(|s| s.as_str()) != Some(",") {
            return Err(err(lno, "min needs ','"));
        }
        let (b, p) = parse_sum(lno, toks, p + 1, emap)?;
        if toks.get(p).map(|s| s.as_str()) != Some(")") {
            return Err(err(lno, "min needs ')'"));
        }
        return Ok((Expr::Min(Box::new(a), Box::new(b)), p + 1));
    }
    if tok == "len" {
        if toks.get(pos + 1).map(|s| s.as_str()) != Some("(") {
            return Err(err(lno, "len needs '('"));
        }
        let name = toks.get(pos + 2).ok_or_else(|| err(lno, "len needs an edge"))?;
        if toks.get(pos + 3).map(|s| s.as_str()) != Some(")") {
            return Err(err(lno, "len needs ')'"));
        }
        let e = emap
            .get(name.as_str())
            .ok_or_else(|| err(lno, &format!("unknown edge {name}")))?;
        return Ok((Expr::Len(*e), pos + 4));
    }
    if let Ok(n) = tok.parse::<i64>() {
        return Ok((Expr::Const(n), pos + 1));
    }
    Err(err(lno, &format!("cannot parse expression token '{tok}'")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_apply_small_rule() {
        let text = "\
version 1
family test.theta genus 2
vertices v w
edge e1: v w
edge e2: v w
edge e3: v w
normalize len(e1) <= len(e2)
case long: len(e3) >= 2
chip 1 at v
chip 1 path w e3 dist min(len(e1), len(e3) - 1)
case short: len(e3) < 2
chip 2 at w
end
";
        let fams = parse_registry(text).unwrap();
        assert_eq!(fams.len(), 1);
        let f = &fams[0];
        assert_eq!(f.cases.len(), 2);

        // Realize a theta with edge lengths 3, 1, 2 (ids 0, 1, 2).
        let g = MultiGraph::build(&["v", "w"], &[("v", "w"), ("v", "w"), ("v", "w")])
            .unwrap()
            .subdivide(0, 3)
            .unwrap()
            .subdivide(2, 2)
            .unwrap();
        let inst = Instance::new(&g).unwrap();
        let applied = f.apply(&inst).unwrap();
        // Lengths sorted per class: e1 -> 1, e2 -> 2, e3 -> 3 is not
        // forced (e3 is its own slot in the same class); the frame maps
        // the three copies sorted ascending, so e1=1, e2=2, e3=3 and the
        // 'long' case fires: one chip at v, one at distance min(1, 2)
        // from w along the length-3 copy.
        assert_eq!(applied.case, "long");
        assert_eq!(applied.divisor.degree(), 2);
    }

    #[test]
    fn guards_must_be_exhaustive() {
        let text = "\
version 1
family test.gap genus 2
vertices v w
edge e1: v w
edge e2: v w
edge e3: v w
case never: len(e1) < 0
chip 1 at v
end
";
        let fams = parse_registry(text).unwrap();
        let g = MultiGraph::build(&["v", "w"], &[("v", "w"), ("v", "w"), ("v", "w")]).unwrap();
        let inst = Instance::new(&g).unwrap();
        assert!(fams[0].apply(&inst).is_err());
    }
}
