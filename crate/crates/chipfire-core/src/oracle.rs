//! Independent oracles used to cross-check the production algorithms.
//!
//! Nothing here calls into `reduce`; equivalence is decided by solving
//! the Laplacian system over exact rationals, and rank by enumerating
//! effective divisors outright. Intended for small graphs in tests and
//! the acceptance suite.

use alloc::vec;
use alloc::vec::Vec;

use crate::divisor::Divisor;
use crate::error::{Error, Result};
use crate::graph::MultiGraph;

/// Exact rational with i128 backing; enough headroom for the tiny
/// Laplacian systems the oracle sees.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Frac {
    num: i128,
    den: i128,
}

impl Frac {
    fn new(num: i128, den: i128) -> Result<Self> {
        if den == 0 {
            return Err(Error::ChipOverflow);
        }
        let g = gcd(num.unsigned_abs(), den.unsigned_abs()) as i128;
        let sign = if den < 0 { -1 } else { 1 };
        Ok(Frac { num: sign * num / g.max(1), den: (den / g.max(1)).abs().max(1) })
    }

    fn int(n: i128) -> Self {
        Frac { num: n, den: 1 }
    }

    fn is_zero(self) -> bool {
        self.num == 0
    }

    fn is_integer(self) -> bool {
        self.den == 1
    }

    fn sub(self, o: Frac) -> Result<Frac> {
        let num = self
            .num
            .checked_mul(o.den)
            .and_then(|a| o.num.checked_mul(self.den).and_then(|b| a.checked_sub(b)))
            .ok_or(Error::ChipOverflow)?;
        let den = self.den.checked_mul(o.den).ok_or(Error::ChipOverflow)?;
        Frac::new(num, den)
    }

    fn mul(self, o: Frac) -> Result<Frac> {
        Frac::new(
            self.num.checked_mul(o.num).ok_or(Error::ChipOverflow)?,
            self.den.checked_mul(o.den).ok_or(Error::ChipOverflow)?,
        )
    }

    fn div(self, o: Frac) -> Result<Frac> {
        if o.num == 0 {
            return Err(Error::ChipOverflow);
        }
        Frac::new(
            self.num.checked_mul(o.den).ok_or(Error::ChipOverflow)?,
            self.den.checked_mul(o.num).ok_or(Error::ChipOverflow)?,
        )
    }
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Laplacian of the graph: L[v][v] = valence minus twice the loop count,
/// L[u][v] = -(multiplicity of u-v edges). Loops drop out entirely, as
/// they must for chip-firing.
pub fn laplacian(g: &MultiGraph) -> Vec<Vec<i64>> {
    let n = g.vertex_count();
    let mut l = vec![vec![0i64; n]; n];
    for &(u, v) in g.edges() {
        if u == v {
            continue;
        }
        l[u][u] += 1;
        l[v][v] += 1;
        l[u][v] -= 1;
        l[v][u] -= 1;
    }
    l
}

/// Decide d1 ~ d2 by solving L f = d1 - d2 with f(0) = 0 over the
/// rationals and checking integrality of the solution.
pub fn equivalent_by_lattice(g: &MultiGraph, d1: &Divisor, d2: &Divisor) -> Result<bool> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    if d1.degree() != d2.degree() {
        return Ok(false);
    }
    let n = g.vertex_count();
    if n == 1 {
        return Ok(true);
    }
    let l = laplacian(g);
    // Unknowns f(1), ..., f(n-1); rows are the charge equations at
    // vertices 1..n-1 (the row at 0 is dependent).
    let m = n - 1;
    let mut a = vec![vec![Frac::int(0); m + 1]; m];
    for r in 0..m {
        for c in 0..m {
            a[r][c] = Frac::int(l[r + 1][c + 1] as i128);
        }
        a[r][m] = Frac::int((d1.get(r + 1) - d2.get(r + 1)) as i128);
    }
    // Gaussian elimination with exact arithmetic.
    let mut row = 0;
    for col in 0..m {
        let Some(p) = (row..m).find(|&r| !a[r][col].is_zero()) else { continue };
        a.swap(row, p);
        let pivot = a[row][col];
        for r in 0..m {
            if r != row && !a[r][col].is_zero() {
                let factor = a[r][col].div(pivot)?;
                for c in col..=m {
                    let sub = factor.mul(a[row][c])?;
                    a[r][c] = a[r][c].sub(sub)?;
                }
            }
        }
        row += 1;
        if row == m {
            break;
        }
    }
    // The reduced Laplacian of a connected graph is invertible, so a
    // unique solution exists; read it off and test integrality.
    for r in 0..m {
        let col = (0..m).find(|&c| !a[r][c].is_zero());
        match col {
            Some(c) => {
                let val = a[r][m].div(a[r][c])?;
                if !val.is_integer() {
                    return Ok(false);
                }
                let _ = c;
            }
            None => {
                if !a[r][m].is_zero() {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// All effective divisors of the given degree, in lexicographic chip
/// order.
pub fn effective_divisors(n_vertices: usize, degree: i64) -> Vec<Divisor> {
    let mut out = Vec::new();
    if degree < 0 {
        return out;
    }
    let mut chips = vec![0i64; n_vertices];
    fn go(chips: &mut Vec<i64>, pos: usize, left: i64, out: &mut Vec<Divisor>) {
        if pos + 1 == chips.len() {
            chips[pos] = left;
            out.push(Divisor::from_chips(chips.clone()));
            chips[pos] = 0;
            return;
        }
        for take in 0..=left {
            chips[pos] = take;
            go(chips, pos + 1, left - take, out);
        }
        chips[pos] = 0;
    }
    go(&mut chips, 0, degree, &mut out);
    out
}

/// Effectiveness of a class, decided purely by the lattice oracle:
/// scan every effective divisor of the same degree for an equivalent one.
pub fn class_effective_naive(g: &MultiGraph, d: &Divisor) -> Result<bool> {
    if d.degree() < 0 {
        return Ok(false);
    }
    for e in effective_divisors(g.vertex_count(), d.degree()) {
        if equivalent_by_lattice(g, d, &e)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Brute-force rank straight from the definition.
pub fn rank_naive(g: &MultiGraph, d: &Divisor) -> Result<i64> {
    if !class_effective_naive(g, d)? {
        return Ok(-1);
    }
    let mut k = 1i64;
    loop {
        let all_pass = effective_divisors(g.vertex_count(), k)
            .into_iter()
            .map(|e| d.minus(&e).and_then(|dd| class_effective_naive(g, &dd)))
            .collect::<Result<Vec<bool>>>()?
            .into_iter()
            .all(|b| b);
        if !all_pass {
            return Ok(k - 1);
        }
        k += 1;
        if k > d.degree() {
            return Ok(d.degree());
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::divisor::canonical_divisor;
    use crate::reduce;

    fn triangle() -> MultiGraph {
        MultiGraph::build(&["u", "v", "w"], &[("u", "v"), ("v", "w"), ("w", "u")]).unwrap()
    }

    #[test]
    fn lattice_oracle_agrees_with_reduction() {
        let g = triangle();
        let d1 = Divisor::from_named(&g, &[("u", 2)]).unwrap();
        let d2 = Divisor::from_named(&g, &[("v", 1), ("w", 1)]).unwrap();
        assert!(equivalent_by_lattice(&g, &d1, &d2).unwrap());
        let d3 = Divisor::from_named(&g, &[("u", 1), ("v", 1)]).unwrap();
        // (2,0,0) ~ (1,1,0)? Firing u gives (0,1,1). On C3 the degree-2
        // classes (2,0,0) and (1,1,0) differ.
        assert!(!equivalent_by_lattice(&g, &d1, &d3).unwrap());
        assert_eq!(
            reduce::q_reduce(&g, &d1, 0, 1000).unwrap().0,
            reduce::q_reduce(&g, &d2, 0, 1000).unwrap().0
        );
    }

    #[test]
    fn naive_rank_small() {
        let g = triangle();
        assert_eq!(rank_naive(&g, &Divisor::from_named(&g, &[("u", 2)]).unwrap()).unwrap(), 1);
        assert_eq!(rank_naive(&g, &Divisor::from_named(&g, &[("u", 1)]).unwrap()).unwrap(), 0);
        let th = MultiGraph::build(&["v", "w"], &[("v", "w"), ("v", "w"), ("v", "w")]).unwrap();
        assert_eq!(rank_naive(&th, &canonical_divisor(&th)).unwrap(), 1);
    }

    #[test]
    fn effective_enumeration_counts() {
        assert_eq!(effective_divisors(3, 2).len(), 6);
        assert_eq!(effective_divisors(2, 0).len(), 1);
        assert_eq!(effective_divisors(4, -1).len(), 0);
    }
}
