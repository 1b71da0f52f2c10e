//! Text formats for graphs and divisors.
//!
//! Graph files are UTF-8 lines: `#` starts a comment, the first
//! non-comment line is `vertices: v1 v2 ...`, and each following line is
//! `edge: u v` (loops as `edge: u u`; duplicate lines are parallel
//! edges). A marked base vertex survives round trips as a `# base: v`
//! comment. Divisor lines read `chips: v1=n1 v2=n2 ...` with omitted
//! vertices at zero.

use chipfire_core::{Divisor, MultiGraph};
use std::fmt;

#[derive(Debug)]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for ParseError {}

fn err(line: usize, message: impl Into<String>) -> ParseError {
    ParseError { line, message: message.into() }
}

#[derive(Debug, Clone)]
pub struct GraphFile {
    pub graph: MultiGraph,
    pub base: Option<usize>,
}

pub fn parse_graph(text: &str) -> Result<GraphFile, ParseError> {
    let mut vertices: Option<Vec<String>> = None;
    let mut edges: Vec<(String, String)> = Vec::new();
    let mut base: Option<String> = None;
    for (i, raw) in text.lines().enumerate() {
        let lno = i + 1;
        let line = raw.trim();
        if let Some(rest) = line.strip_prefix('#') {
            let rest = rest.trim();
            if let Some(b) = rest.strip_prefix("base:") {
                base = Some(b.trim().to_string());
            }
            continue;
        }
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("vertices:") {
            if vertices.is_some() {
                return Err(err(lno, "duplicate vertices line"));
            }
            let names: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
            if names.is_empty() {
                return Err(err(lno, "vertices line is empty"));
            }
            vertices = Some(names);
        } else if let Some(rest) = line.strip_prefix("edge:") {
            let parts: Vec<&str> = rest.split_whitespace().collect();
            if parts.len() != 2 {
                return Err(err(lno, "edge lines need exactly two endpoints"));
            }
            if vertices.is_none() {
                return Err(err(lno, "edge before the vertices line"));
            }
            edges.push((parts[0].to_string(), parts[1].to_string()));
        } else {
            return Err(err(lno, format!("unrecognized line '{line}'")));
        }
    }
    let vertices = vertices.ok_or_else(|| err(text.lines().count(), "missing vertices line"))?;
    let vs: Vec<&str> = vertices.iter().map(|s| s.as_str()).collect();
    let es: Vec<(&str, &str)> = edges.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
    let graph = MultiGraph::build(&vs, &es).map_err(|e| err(0, e.to_string()))?;
    let base = match base {
        Some(name) => {
            Some(graph.vertex_by_name(&name).map_err(|e| err(0, e.to_string()))?)
        }
        None => None,
    };
    Ok(GraphFile { graph, base })
}

pub fn serialize_graph(g: &MultiGraph, base: Option<usize>) -> String {
    let mut out = String::new();
    if let Some(b) = base {
        out.push_str(&format!("# base: {}\n", g.name(b)));
    }
    out.push_str("vertices:");
    for n in g.names() {
        out.push(' ');
        out.push_str(n);
    }
    out.push('\n');
    for &(u, v) in g.edges() {
        out.push_str(&format!("edge: {} {}\n", g.name(u), g.name(v)));
    }
    out
}

/// Parse a `chips:` line (or bare `v=n` pairs) against a graph.
pub fn parse_divisor(g: &MultiGraph, text: &str) -> Result<Divisor, ParseError> {
    let mut d = Divisor::zero(g);
    for (i, raw) in text.lines().enumerate() {
        let lno = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let rest = line.strip_prefix("chips:").unwrap_or(line);
        for pair in rest.split_whitespace() {
            let (name, n) = pair
                .split_once('=')
                .ok_or_else(|| err(lno, format!("expected v=n, got '{pair}'")))?;
            let v = g
                .vertex_by_name(name)
                .map_err(|e| err(lno, e.to_string()))?;
            let n: i64 = n.parse().map_err(|_| err(lno, format!("bad chip count '{n}'")))?;
            d.add(v, n).map_err(|e| err(lno, e.to_string()))?;
        }
    }
    Ok(d)
}

pub fn serialize_divisor(g: &MultiGraph, d: &Divisor) -> String {
    let mut out = String::from("chips:");
    for v in 0..g.vertex_count() {
        if d.get(v) != 0 {
            out.push_str(&format!(" {}={}", g.name(v), d.get(v)));
        }
    }
    out.push('\n');
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graph_round_trip_is_edge_multiset_identical() {
        let text = "# a theta graph\nvertices: v w\nedge: v w\nedge: v w\nedge: v w\n";
        let parsed = parse_graph(text).unwrap();
        assert_eq!(parsed.graph.vertex_count(), 2);
        assert_eq!(parsed.graph.edge_count(), 3);
        let back = serialize_graph(&parsed.graph, None);
        let again = parse_graph(&back).unwrap();
        assert_eq!(parsed.graph, again.graph);
    }

    #[test]
    fn base_vertex_survives_round_trip() {
        let text = "# base: c\nvertices: a b c\nedge: a b\nedge: b c\nedge: c a\n";
        let parsed = parse_graph(text).unwrap();
        assert_eq!(parsed.base, Some(2));
        let back = serialize_graph(&parsed.graph, parsed.base);
        assert_eq!(parse_graph(&back).unwrap().base, Some(2));
    }

    #[test]
    fn divisor_parsing() {
        let g = MultiGraph::build(&["u", "v", "w"], &[("u", "v"), ("v", "w"), ("w", "u")])
            .unwrap();
        let d = parse_divisor(&g, "chips: u=2 w=-1\n").unwrap();
        assert_eq!(d.chips(), &[2, 0, -1]);
        assert!(parse_divisor(&g, "chips: x=1").is_err());
        assert!(parse_divisor(&g, "chips: u=abc").is_err());
        let line = serialize_divisor(&g, &d);
        assert_eq!(parse_divisor(&g, &line).unwrap(), d);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let bad = "vertices: a b\nedge: a\n";
        let e = parse_graph(bad).unwrap_err();
        assert_eq!(e.line, 2);
    }
}
