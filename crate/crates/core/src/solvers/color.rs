//! The color-coded graphs `G(f, b1)` and `G(f, h)`.

use crate::analysis::is_rooted_oriented_path;
use crate::graph::Graph;
use crate::path::RootedPathStructure;
use crate::structure::{Structure, EDGE};

use super::SolveError;

/// Pairwise inclusion tables for building `G(f, b1)` repeatedly over one
/// `(P, B)`. Entry `x * n + y` answers a question about the pair `(x, y)`.
pub(crate) struct TablesA {
    n: usize,
    k: usize,
    /// `atyp(e_2) ⊆ atyp(x, y)`, used for even colours.
    even: Vec<bool>,
    /// `atyp(e_2^{-1}) ⊆ atyp(x, y)`, used for odd colours.
    odd: Vec<bool>,
    /// `atyp(e_1) ⊆ atyp(x, y)`.
    first: Vec<bool>,
}

impl TablesA {
    pub(crate) fn new(p: &RootedPathStructure, b: &Structure) -> Self {
        let n = b.len();
        let e1 = p.edge_type(1);
        let e2 = p.edge_type(2);
        let e2_rev = e2.swap();
        let mut even = vec![false; n * n];
        let mut odd = vec![false; n * n];
        let mut first = vec![false; n * n];
        for x in 0..n {
            for y in 0..n {
                if x != y {
                    even[x * n + y] = e2.holds_in(b, x, y);
                    odd[x * n + y] = e2_rev.holds_in(b, x, y);
                    first[x * n + y] = e1.holds_in(b, x, y);
                }
            }
        }
        TablesA { n, k: p.k(), even, odd, first }
    }

    pub(crate) fn first(&self, b1: usize, x: usize) -> bool {
        self.first[b1 * self.n + x]
    }

    pub(crate) fn has_successor(&self, b1: usize) -> bool {
        (0..self.n).any(|x| self.first(b1, x))
    }

    /// Fills `g` (a graph on `n` vertices with `b1` absent) with the edges
    /// of `G(f, b1)`.
    pub(crate) fn fill(&self, f: &[u8], b1: usize, g: &mut Graph) {
        g.clear_edges();
        let n = self.n;
        for x in 0..n {
            if x == b1 {
                continue;
            }
            let cx = f[x] as usize;
            if cx >= self.k || (cx == 2 && !self.first(b1, x)) {
                continue;
            }
            let table = if cx.is_multiple_of(2) { &self.even } else { &self.odd };
            for y in 0..n {
                if y != b1 && f[y] as usize == cx + 1 && table[x * n + y] {
                    g.add_edge(x, y);
                }
            }
        }
    }
}

/// `G(f, b1)`: vertices `B \ {b1}`; `{b, b'}` is an edge when
/// `f(b) + 1 = f(b')`, `atyp(e_2^{-f(b)}) ⊆ atyp(b, b')`, and, if
/// `f(b) = 2`, also `atyp(e_1) ⊆ atyp(b1, b)`. `f` is indexed by element.
pub fn color_graph_a(p: &RootedPathStructure, b: &Structure, f: &[u8], b1: usize) -> Result<Graph, SolveError> {
    if b1 >= b.len() {
        return Err(SolveError::UnknownElement(b1));
    }
    if f.len() != b.len() {
        return Err(SolveError::BadColoring);
    }
    let mut g = Graph::with_vertices(b.len(), (0..b.len()).filter(|&x| x != b1));
    if p.k() >= 3 {
        TablesA::new(p, b).fill(f, b1, &mut g);
    }
    Ok(g)
}

/// `G(f, h)` for a rooted oriented path: vertices `B` minus
/// `h(p_1..p_{C-1})`, where `C = h.len()`; `{b, b'}` is an edge when
/// `(b, b') ∈ E^B`, `|f(b) - f(b')| = 1`, both colours are at least `C`,
/// `(p_{f(b)}, p_{f(b')}) ∈ E^P`, and an endpoint of colour `C` is `h(p_C)`.
pub fn color_graph_tail(p: &RootedPathStructure, b: &Structure, f: &[u8], h: &[usize]) -> Result<Graph, SolveError> {
    if !is_rooted_oriented_path(p).map_err(|_| SolveError::NotOrientedPath)? {
        return Err(SolveError::NotOrientedPath);
    }
    if f.len() != b.len() {
        return Err(SolveError::BadColoring);
    }
    if h.is_empty() || h.len() > p.k() {
        return Err(SolveError::BadPrefix);
    }
    if let Some(&bad) = h.iter().find(|&&x| x >= b.len()) {
        return Err(SolveError::UnknownElement(bad));
    }
    Ok(tail_graph(p, b, f, h))
}

pub(crate) fn tail_graph(p: &RootedPathStructure, b: &Structure, f: &[u8], h: &[usize]) -> Graph {
    let c = h.len();
    let hc = h[c - 1];
    let excluded = &h[..c - 1];
    let mut g = Graph::with_vertices(b.len(), (0..b.len()).filter(|x| !excluded.contains(x)));
    let colour_ok = |x: usize| {
        let fx = f[x] as usize;
        fx >= c && fx <= p.k() && (fx != c || x == hc)
    };
    for t in b.relation(EDGE).into_iter().flatten() {
        let (x, y) = (t[0], t[1]);
        if !g.has_vertex(x) || !g.has_vertex(y) || !colour_ok(x) || !colour_ok(y) {
            continue;
        }
        let (fx, fy) = (f[x] as usize, f[y] as usize);
        if fx.abs_diff(fy) == 1 && p.base().contains_tuple(EDGE, &[p.point(fx), p.point(fy)]) {
            g.add_edge(x, y);
        }
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reductions::families::gen_family;

    #[test]
    fn identity_coloring_contains_the_path() {
        for n in 3..=8 {
            let p = gen_family(1, n).unwrap();
            let b = p.base();
            let mut f = vec![0u8; b.len()];
            for j in 1..=p.k() {
                f[p.point(j)] = j as u8;
            }
            let g = color_graph_a(&p, b, &f, p.point(1)).unwrap();
            for j in 2..p.k() {
                assert!(g.has_edge(p.point(j), p.point(j + 1)), "size {n}, edge {j}");
            }
            assert_eq!(g.edge_count(), p.k() - 2);
        }
    }

    #[test]
    fn constant_coloring_has_no_edges() {
        let p = gen_family(1, 5).unwrap();
        let f = vec![3u8; 5];
        assert_eq!(color_graph_a(&p, p.base(), &f, 0).unwrap().edge_count(), 0);
        assert_eq!(color_graph_tail(&p, p.base(), &f, &[0]).unwrap().edge_count(), 0);
    }

    #[test]
    fn colour_two_needs_a_b1_successor() {
        let p = gen_family(1, 4).unwrap();
        let b = p.base();
        // p2 is coloured 2 but b1 = p3 has no e_1-successor at p2
        let f = vec![4, 2, 3, 4];
        let g = color_graph_a(&p, b, &f, 2).unwrap();
        assert_eq!(g.degree(1), 0);
        assert!(color_graph_a(&p, b, &f, 9).is_err());
    }

    #[test]
    fn tail_graph_on_the_identity() {
        let p = gen_family(1, 6).unwrap();
        let b = p.base();
        let mut f = vec![0u8; 6];
        for j in 1..=6 {
            f[p.point(j)] = j as u8;
        }
        for c in 1..=3 {
            let h: Vec<usize> = (1..=c).map(|j| p.point(j)).collect();
            let g = color_graph_tail(&p, b, &f, &h).unwrap();
            for j in c..6 {
                assert!(g.has_edge(p.point(j), p.point(j + 1)));
            }
            for j in 1..c {
                assert!(!g.has_vertex(p.point(j)));
            }
        }
    }

    #[test]
    fn stray_colour_c_vertex_is_isolated() {
        let p = gen_family(1, 4).unwrap();
        let b = p.base();
        // p3 has colour C = 2 but h(p_2) = p2
        let f = vec![1, 2, 2, 3];
        let g = color_graph_tail(&p, b, &f, &[0, 1]).unwrap();
        assert_eq!(g.degree(2), 0);
        assert!(color_graph_tail(&gen_family(4, 5).unwrap(), b, &f, &[0]).is_err());
    }
}
