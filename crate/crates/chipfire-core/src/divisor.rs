//! Divisors, chip-firing moves, the canonical divisor and linear
//! equivalence over the integer Laplacian lattice.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::{MultiGraph, VertexId};
use crate::reduce;

/// An integer chip assignment on the vertices of a fixed graph. Values
/// are 64-bit with overflow detection; firing scripts at desk scale stay
/// far from the boundary, and we want a loud failure if they ever don't.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Divisor {
    chips: Vec<i64>,
}

impl Divisor {
    pub fn zero(g: &MultiGraph) -> Self {
        Divisor { chips: vec![0; g.vertex_count()] }
    }

    pub fn from_chips(chips: Vec<i64>) -> Self {
        Divisor { chips }
    }

    /// Chips listed as (vertex name, count); omitted vertices get 0.
    pub fn from_named(g: &MultiGraph, entries: &[(&str, i64)]) -> Result<Self> {
        let mut d = Self::zero(g);
        for &(name, n) in entries {
            let v = g.vertex_by_name(name)?;
            d.chips[v] = d.chips[v].checked_add(n).ok_or(Error::ChipOverflow)?;
        }
        Ok(d)
    }

    pub fn chips(&self) -> &[i64] {
        &self.chips
    }

    pub fn get(&self, v: VertexId) -> i64 {
        self.chips[v]
    }

    pub fn set(&mut self, v: VertexId, n: i64) {
        self.chips[v] = n;
    }

    pub fn add(&mut self, v: VertexId, n: i64) -> Result<()> {
        self.chips[v] = self.chips[v].checked_add(n).ok_or(Error::ChipOverflow)?;
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.chips.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chips.is_empty()
    }

    pub fn degree(&self) -> i64 {
        self.chips.iter().sum()
    }

    pub fn is_effective(&self) -> bool {
        self.chips.iter().all(|&c| c >= 0)
    }

    pub fn support(&self) -> Vec<VertexId> {
        self.chips.iter().enumerate().filter(|&(_, &c)| c != 0).map(|(v, _)| v).collect()
    }

    /// Pointwise difference `self - other`.
    pub fn minus(&self, other: &Divisor) -> Result<Divisor> {
        if self.len() != other.len() {
            return Err(Error::DivisorGraphMismatch);
        }
        let chips = self
            .chips
            .iter()
            .zip(&other.chips)
            .map(|(&a, &b)| a.checked_sub(b).ok_or(Error::ChipOverflow))
            .collect::<Result<_>>()?;
        Ok(Divisor { chips })
    }

    pub fn plus(&self, other: &Divisor) -> Result<Divisor> {
        if self.len() != other.len() {
            return Err(Error::DivisorGraphMismatch);
        }
        let chips = self
            .chips
            .iter()
            .zip(&other.chips)
            .map(|(&a, &b)| a.checked_add(b).ok_or(Error::ChipOverflow))
            .collect::<Result<_>>()?;
        Ok(Divisor { chips })
    }

    fn check_graph(&self, g: &MultiGraph) -> Result<()> {
        if self.len() != g.vertex_count() {
            return Err(Error::DivisorGraphMismatch);
        }
        Ok(())
    }
}

/// Net firing counts per vertex; negative entries are borrowings.
/// Applying a script to `D` yields `D - L*counts` for the graph
/// Laplacian `L`, so degree is preserved.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FiringScript {
    counts: Vec<i64>,
}

impl FiringScript {
    pub fn zero(g: &MultiGraph) -> Self {
        FiringScript { counts: vec![0; g.vertex_count()] }
    }

    pub fn from_counts(counts: Vec<i64>) -> Self {
        FiringScript { counts }
    }

    pub fn counts(&self) -> &[i64] {
        &self.counts
    }

    pub fn bump(&mut self, v: VertexId) -> Result<()> {
        self.counts[v] = self.counts[v].checked_add(1).ok_or(Error::ChipOverflow)?;
        Ok(())
    }

    pub fn minus(&self, other: &FiringScript) -> Result<FiringScript> {
        if self.counts.len() != other.counts.len() {
            return Err(Error::DivisorGraphMismatch);
        }
        let counts = self
            .counts
            .iter()
            .zip(&other.counts)
            .map(|(&a, &b)| a.checked_sub(b).ok_or(Error::ChipOverflow))
            .collect::<Result<_>>()?;
        Ok(FiringScript { counts })
    }

    /// Shift so the minimum count is zero. Scripts on a connected graph
    /// are unique up to adding constants; normalizing keeps golden tests
    /// deterministic.
    pub fn normalize(&mut self) {
        if let Some(&m) = self.counts.iter().min() {
            for c in &mut self.counts {
                *c -= m;
            }
        }
    }
}

/// One chip-firing move: `v` sends one chip along each incident edge.
/// Loops are net-neutral but count toward valence.
pub fn fire_vertex(g: &MultiGraph, d: &Divisor, v: VertexId) -> Result<Divisor> {
    if v >= g.vertex_count() {
        return Err(Error::UnknownVertex(alloc::format!("#{v}")));
    }
    d.check_graph(g)?;
    let mut out = d.clone();
    for &(_, w) in g.incident(v) {
        out.add(v, -1)?;
        out.add(w, 1)?;
    }
    Ok(out)
}

/// Fire every vertex of `set` once; equals composing `fire_vertex` over
/// the set in any order, and only boundary edges move chips.
pub fn fire_set(g: &MultiGraph, d: &Divisor, set: &[VertexId]) -> Result<Divisor> {
    d.check_graph(g)?;
    let mut member = vec![false; g.vertex_count()];
    for &v in set {
        if v >= g.vertex_count() {
            return Err(Error::UnknownVertex(alloc::format!("#{v}")));
        }
        member[v] = true;
    }
    let mut out = d.clone();
    for v in 0..g.vertex_count() {
        if !member[v] {
            continue;
        }
        for &(_, w) in g.incident(v) {
            if !member[w] {
                out.add(v, -1)?;
                out.add(w, 1)?;
            }
        }
    }
    Ok(out)
}

/// Apply a full firing script: `D - L*counts`.
pub fn apply_script(g: &MultiGraph, d: &Divisor, s: &FiringScript) -> Result<Divisor> {
    d.check_graph(g)?;
    if s.counts.len() != g.vertex_count() {
        return Err(Error::DivisorGraphMismatch);
    }
    let mut out = d.clone();
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        let _ = e;
        let flow = s.counts[u].checked_sub(s.counts[v]).ok_or(Error::ChipOverflow)?;
        out.add(u, flow.checked_neg().ok_or(Error::ChipOverflow)?)?;
        out.add(v, flow)?;
    }
    Ok(out)
}

/// K_G = sum over v of (val(v) - 2) chips; degree 2g - 2.
pub fn canonical_divisor(g: &MultiGraph) -> Divisor {
    Divisor::from_chips((0..g.vertex_count()).map(|v| g.valence(v) as i64 - 2).collect())
}

/// Linear equivalence with an explicit firing-script witness, decided by
/// equality of q-reduced forms (the reduced representative is unique).
pub fn linearly_equivalent(
    g: &MultiGraph,
    d1: &Divisor,
    d2: &Divisor,
) -> Result<Option<FiringScript>> {
    d1.check_graph(g)?;
    d2.check_graph(g)?;
    if d1.degree() != d2.degree() {
        return Ok(None);
    }
    let q = 0;
    let (r1, s1) = reduce::q_reduce(g, d1, q, crate::DEFAULT_ITER_CAP)?;
    let (r2, s2) = reduce::q_reduce(g, d2, q, crate::DEFAULT_ITER_CAP)?;
    if r1 != r2 {
        return Ok(None);
    }
    // d1 - L s1 = r = d2 - L s2, so applying (s1 - s2) to d1 gives d2.
    let mut s = s1.minus(&s2)?;
    s.normalize();
    Ok(Some(s))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> MultiGraph {
        MultiGraph::build(&["u", "v", "w"], &[("u", "v"), ("v", "w"), ("w", "u")]).unwrap()
    }

    /// The 5-vertex genus-4 graph used in the chip-firing walkthrough.
    fn fig1() -> MultiGraph {
        MultiGraph::build(
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
        .unwrap()
    }

    #[test]
    fn fire_vertex_walkthrough() {
        let g = fig1();
        let d = Divisor::from_named(&g, &[("a", 1), ("d", 2), ("c", 4), ("e", -1), ("b", -1)])
            .unwrap();
        let fired = fire_vertex(&g, &d, g.vertex_by_name("c").unwrap()).unwrap();
        let expect =
            Divisor::from_named(&g, &[("a", 2), ("d", 3), ("c", 0), ("e", 0), ("b", 0)]).unwrap();
        assert_eq!(fired, expect);
        assert_eq!(fired.degree(), d.degree());
    }

    #[test]
    fn fire_valence_two() {
        let g = triangle();
        let d = Divisor::from_named(&g, &[("u", 2)]).unwrap();
        let fired = fire_vertex(&g, &d, 0).unwrap();
        assert_eq!(fired.chips(), &[0, 1, 1]);
    }

    #[test]
    fn fire_all_is_identity() {
        let g = fig1();
        let d = Divisor::from_named(&g, &[("a", 3), ("b", -2), ("e", 7)]).unwrap();
        let all: Vec<_> = (0..g.vertex_count()).collect();
        assert_eq!(fire_set(&g, &d, &all).unwrap(), d);
        let mut cur = d.clone();
        for v in 0..g.vertex_count() {
            cur = fire_vertex(&g, &cur, v).unwrap();
        }
        assert_eq!(cur, d);
    }

    #[test]
    fn fire_set_matches_composition_and_boundary() {
        let g = fig1();
        let d = Divisor::from_named(&g, &[("c", 5)]).unwrap();
        let set = [0usize, 2, 3];
        let via_set = fire_set(&g, &d, &set).unwrap();
        let mut via_seq = d.clone();
        for &v in &set {
            via_seq = fire_vertex(&g, &via_seq, v).unwrap();
        }
        assert_eq!(via_set, via_seq);

        assert_eq!(fire_set(&g, &d, &[1]).unwrap(), fire_vertex(&g, &d, 1).unwrap());

        // Two triangles joined by a bridge: firing the left triangle
        // moves exactly one chip across the bridge.
        let b = MultiGraph::build(
            &["x", "y", "z", "p", "q", "r"],
            &[("x", "y"), ("y", "z"), ("z", "x"), ("z", "p"), ("p", "q"), ("q", "r"), ("r", "p")],
        )
        .unwrap();
        let d0 = Divisor::from_named(&b, &[("z", 1)]).unwrap();
        let fired = fire_set(&b, &d0, &[0, 1, 2]).unwrap();
        let expect = Divisor::from_named(&b, &[("p", 1)]).unwrap();
        assert_eq!(fired, expect);
    }

    #[test]
    fn loops_are_net_neutral() {
        let g = MultiGraph::build(&["v", "w"], &[("v", "v"), ("v", "w")]).unwrap();
        let d = Divisor::from_named(&g, &[("v", 5)]).unwrap();
        let fired = fire_vertex(&g, &d, 0).unwrap();
        // Valence 3, but the loop returns two chips: net -1 at v.
        assert_eq!(fired.chips(), &[4, 1]);
    }

    #[test]
    fn canonical_divisor_values() {
        let cn = MultiGraph::build(&["1", "2", "3", "4"], &[("1", "2"), ("2", "3"), ("3", "4"), ("4", "1")])
            .unwrap();
        assert_eq!(canonical_divisor(&cn).chips(), &[0, 0, 0, 0]);

        let th = MultiGraph::build(&["v", "w"], &[("v", "w"), ("v", "w"), ("v", "w")]).unwrap();
        assert_eq!(canonical_divisor(&th).chips(), &[1, 1]);
        assert_eq!(canonical_divisor(&th).degree(), 2);

        let g = fig1();
        let k = canonical_divisor(&g);
        let expect =
            Divisor::from_named(&g, &[("a", 1), ("b", 2), ("c", 2), ("d", 1), ("e", 0)]).unwrap();
        assert_eq!(k, expect);
        assert_eq!(k.degree(), 2 * g.genus().unwrap() as i64 - 2);
    }

    #[test]
    fn equivalence_with_witness() {
        let g = fig1();
        let left = Divisor::from_named(&g, &[("a", 1), ("d", 2), ("c", 4), ("e", -1), ("b", -1)])
            .unwrap();
        let right =
            Divisor::from_named(&g, &[("a", 2), ("d", 3), ("c", 0), ("e", 0), ("b", 0)]).unwrap();
        let script = linearly_equivalent(&g, &left, &right).unwrap().expect("equivalent");
        // The witness replays exactly, and is the single firing of c.
        assert_eq!(apply_script(&g, &left, &script).unwrap(), right);
        let c = g.vertex_by_name("c").unwrap();
        let expect: Vec<i64> =
            (0..g.vertex_count()).map(|v| if v == c { 1 } else { 0 }).collect();
        assert_eq!(script.counts(), &expect[..]);
    }

    #[test]
    fn tree_divisors_of_equal_degree_are_equivalent() {
        let path =
            MultiGraph::build(&["a", "b", "c", "d"], &[("a", "b"), ("b", "c"), ("c", "d")])
                .unwrap();
        let d1 = Divisor::from_named(&path, &[("a", 1)]).unwrap();
        let d2 = Divisor::from_named(&path, &[("d", 1)]).unwrap();
        let s = linearly_equivalent(&path, &d1, &d2).unwrap().expect("trees: same degree");
        assert_eq!(apply_script(&path, &d1, &s).unwrap(), d2);
    }

    #[test]
    fn degree_obstruction() {
        let g = triangle();
        let d1 = Divisor::from_named(&g, &[("u", 1)]).unwrap();
        let d2 = Divisor::zero(&g);
        assert!(linearly_equivalent(&g, &d1, &d2).unwrap().is_none());
    }
}
