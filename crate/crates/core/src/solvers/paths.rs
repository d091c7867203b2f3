//! Reachability and bounded simple-path search.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::graph::Graph;

use super::SolveError;

fn check_vertex(g: &Graph, v: usize) -> Result<(), SolveError> {
    if g.has_vertex(v) {
        Ok(())
    } else {
        Err(SolveError::UnknownVertex(v))
    }
}

/// BFS distances from `s`; `None` for unreachable vertices.
pub fn distances(g: &Graph, s: usize) -> Vec<Option<usize>> {
    let mut dist = vec![None; g.capacity()];
    let mut queue = VecDeque::from([s]);
    dist[s] = Some(0);
    while let Some(u) = queue.pop_front() {
        let du = dist[u].expect("queued vertices have a distance");
        for &w in g.neighbors(u) {
            if dist[w].is_none() {
                dist[w] = Some(du + 1);
                queue.push_back(w);
            }
        }
    }
    dist
}

pub fn connected(g: &Graph, s: usize, t: usize) -> Result<bool, SolveError> {
    check_vertex(g, s)?;
    check_vertex(g, t)?;
    Ok(distances(g, s)[t].is_some())
}

/// Is there an `s`-`t` path of length at most `l`? `s = t` has length 0.
pub fn solve_ustcon(g: &Graph, s: usize, t: usize, l: usize) -> Result<bool, SolveError> {
    check_vertex(g, s)?;
    check_vertex(g, t)?;
    Ok(distances(g, s)[t].is_some_and(|d| d <= l))
}

/// A shortest path from some vertex in `sources` to some vertex in
/// `targets`, listed from its source end.
pub fn shortest_path_between(g: &Graph, sources: &[usize], targets: &[bool]) -> Option<Vec<usize>> {
    let mut parent = vec![usize::MAX; g.capacity()];
    let mut seen = vec![false; g.capacity()];
    let mut queue = VecDeque::new();
    for &s in sources {
        if !seen[s] {
            seen[s] = true;
            queue.push_back(s);
        }
    }
    while let Some(u) = queue.pop_front() {
        if targets[u] {
            let mut path = vec![u];
            let mut cur = u;
            while parent[cur] != usize::MAX {
                cur = parent[cur];
                path.push(cur);
            }
            path.reverse();
            return Some(path);
        }
        for &w in g.neighbors(u) {
            if !seen[w] {
                seen[w] = true;
                parent[w] = u;
                queue.push_back(w);
            }
        }
    }
    None
}

fn dfs(g: &Graph, path: &mut Vec<usize>, on_path: &mut [bool], len: usize, target: Option<usize>) -> bool {
    let u = *path.last().expect("path starts at s");
    if path.len() - 1 == len {
        return target.is_none_or(|t| t == u);
    }
    for &w in g.neighbors(u) {
        if on_path[w] || target == Some(w) && path.len() < len {
            continue;
        }
        on_path[w] = true;
        path.push(w);
        if dfs(g, path, on_path, len, target) {
            return true;
        }
        path.pop();
        on_path[w] = false;
    }
    false
}

fn bounded_search(g: &Graph, s: usize, len: usize, target: Option<usize>) -> Option<Vec<usize>> {
    let mut on_path = vec![false; g.capacity()];
    on_path[s] = true;
    let mut path = vec![s];
    dfs(g, &mut path, &mut on_path, len, target).then_some(path)
}

/// A simple `s`-`t` path with exactly `len` edges.
pub fn find_exact_path(g: &Graph, s: usize, t: usize, len: usize) -> Option<Vec<usize>> {
    if !g.has_vertex(s) || !g.has_vertex(t) || (len == 0) != (s == t) {
        return None;
    }
    bounded_search(g, s, len, Some(t))
}

/// A simple path with exactly `len` edges starting at `s`. One exists iff
/// some simple path from `s` has length at least `len`.
pub fn find_long_path(g: &Graph, s: usize, len: usize) -> Option<Vec<usize>> {
    if !g.has_vertex(s) {
        return None;
    }
    bounded_search(g, s, len, None)
}

/// An instance of the long-short path problem.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LongShortInstance {
    pub graph: Graph,
    pub s: usize,
    pub t: usize,
    pub k: usize,
    pub l: usize,
}

impl LongShortInstance {
    pub fn new(graph: Graph, s: usize, t: usize, k: usize, l: usize) -> Result<Self, SolveError> {
        check_vertex(&graph, s)?;
        check_vertex(&graph, t)?;
        if k >= l {
            return Err(SolveError::BadLongShort { k, l });
        }
        Ok(LongShortInstance { graph, s, t, k, l })
    }
}

/// Which branch of the long-short disjunction holds, with a witness path.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum LongShortWitness {
    /// A simple path with exactly `l` edges starting at `s`.
    Long(Vec<usize>),
    /// A simple `s`-`t` path with exactly `k` edges.
    Short(Vec<usize>),
}

/// Decides the long-short problem on raw arguments, returning a witness.
/// The short branch is tried first.
pub fn longshort_witness(g: &Graph, s: usize, t: usize, k: usize, l: usize) -> Option<LongShortWitness> {
    if let Some(p) = find_exact_path(g, s, t, k) {
        return Some(LongShortWitness::Short(p));
    }
    find_long_path(g, s, l).map(LongShortWitness::Long)
}

/// Does `G` have a simple path of length at least `l` with endpoint `s`, or a
/// simple `s`-`t` path of length exactly `k`?
pub fn solve_longshort(inst: &LongShortInstance) -> bool {
    longshort_witness(&inst.graph, inst.s, inst.t, inst.k, inst.l).is_some()
}

/// Decision procedure for the long-short problem, as used by the
/// color-coded recursion.
pub trait LongShortOracle {
    fn longshort(&self, g: &Graph, s: usize, t: usize, k: usize, l: usize) -> bool;
}

/// The exhaustive depth-bounded search.
#[derive(Debug, Clone, Copy, Default)]
pub struct ExactLongShort;

impl LongShortOracle for ExactLongShort {
    fn longshort(&self, g: &Graph, s: usize, t: usize, k: usize, l: usize) -> bool {
        longshort_witness(g, s, t, k, l).is_some()
    }
}

impl<F: Fn(&Graph, usize, usize, usize, usize) -> bool> LongShortOracle for F {
    fn longshort(&self, g: &Graph, s: usize, t: usize, k: usize, l: usize) -> bool {
        self(g, s, t, k, l)
    }
}
