//! Long-short path instances as embedding instances.

use crate::graph::Graph;
use crate::path::RootedPathStructure;
use crate::structure::{Structure, Vocabulary, EDGE, ROOT};

use super::families::make_p_kl;
use super::gadget::ReductionError;

/// Maps `(G, s, t, k, l)` to `(P_{k,l}, G')`. `G'` adds fresh vertices
/// `q1..q_{l-k}` to `G`, a single arc `t -> q1` and both directions
/// between consecutive `q`s; every edge of `G` appears in both directions
/// and `root = {s}`. Vertex `v` of `G` keeps index `v` in `G'` (absent
/// vertices of `G` are skipped, so indices match when all are present).
pub fn reduce_longshort(
    g: &Graph,
    s: usize,
    t: usize,
    k: usize,
    l: usize,
) -> Result<(RootedPathStructure, Structure), ReductionError> {
    let p = make_p_kl(k, l)?;
    for v in [s, t] {
        if !g.has_vertex(v) {
            return Err(ReductionError::UnknownVertex(v));
        }
    }
    let verts: Vec<usize> = g.vertices().collect();
    let idx = |v: usize| verts.binary_search(&v).expect("vertex of G");
    let n = verts.len();
    let mut universe: Vec<String> = verts.iter().map(|v| format!("v{v}")).collect();
    universe.extend((1..=l - k).map(|i| format!("q{i}")));
    let mut arcs = Vec::new();
    for (u, v) in g.edges() {
        arcs.push(vec![idx(u), idx(v)]);
        arcs.push(vec![idx(v), idx(u)]);
    }
    arcs.push(vec![idx(t), n]);
    for i in 0..l - k - 1 {
        arcs.push(vec![n + i, n + i + 1]);
        arcs.push(vec![n + i + 1, n + i]);
    }
    let gp = Structure::from_indices(Vocabulary::rooted_digraph(), universe, [(ROOT, vec![vec![idx(s)]]), (EDGE, arcs)])
        .expect("valid target");
    Ok((p, gp))
}
