//! The grid structure `B(G, P, X, s, t)` that turns short `s`-`t` paths of
//! an undirected graph into embeddings of a rooted path structure.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::analysis::{max_degree, unfoldable_edges};
use crate::graph::Graph;
use crate::path::RootedPathStructure;
use crate::structure::{Structure, ROOT};

use super::families::FamilyError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error("unknown vertex {0}")]
    UnknownVertex(usize),
    #[error("edge set must be strictly increasing indices in 1..{k}, got {got:?}")]
    BadEdgeSet { k: usize, got: Vec<usize> },
    #[error("structure has {found} unfoldable edges, need {needed}")]
    TooFewUnfoldable { needed: usize, found: usize },
    #[error("no edge is unfoldable of degree {0}")]
    NoEdgeOfDegree(usize),
    #[error("supply exhausted after {0} candidates")]
    SupplyExhausted(usize),
    #[error("case must be 1 or 2, got {0}")]
    BadCase(u8),
}

/// Inputs of the grid construction. `x` holds 1-based edge indices.
#[derive(Debug, Clone)]
pub struct GadgetSpec {
    pub graph: Graph,
    pub p: RootedPathStructure,
    pub x: Vec<usize>,
    pub s: usize,
    pub t: usize,
}

impl GadgetSpec {
    pub fn new(graph: Graph, p: RootedPathStructure, x: Vec<usize>, s: usize, t: usize) -> Result<Self, ReductionError> {
        for v in [s, t] {
            if !graph.has_vertex(v) {
                return Err(ReductionError::UnknownVertex(v));
            }
        }
        let k = p.k();
        let increasing = x.windows(2).all(|w| w[0] < w[1]);
        if !increasing || x.iter().any(|&i| i == 0 || i >= k) {
            return Err(ReductionError::BadEdgeSet { k, got: x });
        }
        Ok(GadgetSpec { graph, p, x, s, t })
    }

    fn vertices(&self) -> Vec<usize> {
        self.graph.vertices().collect()
    }

    /// Universe index of `(g, u)` in the built structure, where `u` is an
    /// element of `P`'s universe.
    pub fn element(&self, g: usize, u: usize) -> Option<usize> {
        let row = self.graph.vertices().position(|v| v == g)?;
        (u < self.p.k()).then_some(row * self.p.k() + u)
    }
}

/// Builds `B(G, P, X, s, t)`: universe `G × P`, `root = {(s, p_1)}`, and for
/// every other symbol exactly the tuples `((g_j, q_j))_j` such that
/// `(q_j)_j ∈ R^P` lies within `{p_i, p_{i+1}}` and each component is
/// `(g, p_i)` or `(g', p_{i+1})`, where `g' = t` on the last edge, `g = s` at
/// the first edge of `X`, and `g = g'` or `{g, g'} ∈ E^G` according to
/// whether `e_i` is outside or inside `X`.
pub fn build_b(spec: &GadgetSpec) -> Structure {
    let p = &spec.p;
    let k = p.k();
    let base = p.base();
    let verts = spec.vertices();
    let row_of = |g: usize| verts.binary_search(&g).expect("vertex of G");
    let mut pos = vec![0; k];
    for j in 1..=k {
        pos[p.point(j)] = j;
    }
    let first_x = spec.x.first().copied();
    let universe: Vec<String> =
        verts.iter().flat_map(|g| base.universe().iter().map(move |name| format!("{g}:{name}"))).collect();

    let mut relations: Vec<(String, Vec<Vec<usize>>)> = Vec::new();
    for (symbol, tuples) in base.relations() {
        if symbol == ROOT {
            continue;
        }
        let mut out = BTreeSet::new();
        for tuple in tuples {
            let lo = tuple.iter().map(|&u| pos[u]).min().expect("arity >= 1");
            let hi = tuple.iter().map(|&u| pos[u]).max().expect("arity >= 1");
            let columns: Vec<usize> = match hi - lo {
                0 => [lo.wrapping_sub(1), lo].into_iter().filter(|&i| i >= 1 && i < k).collect(),
                1 => vec![lo],
                _ => unreachable!("tuples of a path structure span at most one edge"),
            };
            for i in columns {
                let in_x = spec.x.binary_search(&i).is_ok();
                for &g in &verts {
                    if first_x == Some(i) && g != spec.s {
                        continue;
                    }
                    let nexts = std::iter::once(g).chain(if in_x { spec.graph.neighbors(g).to_vec() } else { Vec::new() });
                    for g2 in nexts {
                        if i + 1 == k && g2 != spec.t {
                            continue;
                        }
                        let img = tuple
                            .iter()
                            .map(|&u| {
                                let row = if pos[u] == i { row_of(g) } else { row_of(g2) };
                                row * k + u
                            })
                            .collect::<Vec<_>>();
                        out.insert(img);
                    }
                }
            }
        }
        relations.push((symbol.to_string(), out.into_iter().collect()));
    }
    if base.vocabulary().contains(ROOT) {
        let root = row_of(spec.s) * k + p.point(1);
        relations.push((ROOT.to_string(), vec![vec![root]]));
    }
    Structure::from_indices(base.vocabulary().clone(), universe, relations).expect("grid structure is valid")
}

/// The edges immediately preceding the first `l` unfoldable edges.
pub fn select_x_case1(p: &RootedPathStructure, l: usize) -> Result<Vec<usize>, ReductionError> {
    let unf = unfoldable_edges(p);
    if unf.len() < l {
        return Err(ReductionError::TooFewUnfoldable { needed: l, found: unf.len() });
    }
    Ok(unf[..l].iter().map(|&i| i - 1).collect())
}

/// With `e_i` the first edge unfoldable of degree `l`, the edges
/// `e_{i-l}..e_{i-1}`.
pub fn select_x_case2(p: &RootedPathStructure, l: usize) -> Result<Vec<usize>, ReductionError> {
    if l == 0 {
        return Ok(Vec::new());
    }
    let i = (1..p.k())
        .find(|&i| max_degree(p, i).expect("edge index in range") >= l)
        .ok_or(ReductionError::NoEdgeOfDegree(l))?;
    Ok((i - l..i).collect())
}

/// Picks the first structure from `supply` (called with 0, 1, ...; at most
/// `scan_limit` times) whose edge set for `case` exists, and builds the grid
/// for it. Returns the structure, the grid and the chosen edge set.
pub fn reduce_ustcon(
    graph: &Graph,
    s: usize,
    t: usize,
    l: usize,
    mut supply: impl FnMut(usize) -> Option<RootedPathStructure>,
    case: u8,
    scan_limit: usize,
) -> Result<(RootedPathStructure, Structure, Vec<usize>), ReductionError> {
    let select = match case {
        1 => select_x_case1,
        2 => select_x_case2,
        other => return Err(ReductionError::BadCase(other)),
    };
    for j in 0..scan_limit {
        let Some(p) = supply(j) else { break };
        if let Ok(x) = select(&p, l) {
            let spec = GadgetSpec::new(graph.clone(), p, x, s, t)?;
            let b = build_b(&spec);
            return Ok((spec.p, b, spec.x));
        }
    }
    Err(ReductionError::SupplyExhausted(scan_limit))
}

/// The stretched copy of `P` along an `s`-`t` walk `path` with at most
/// `|X|` steps: `p_j` goes to row `path[m]`, where `m` counts the edges of
/// `X` before `e_j`, capped at the last step. Indexed by `P`'s universe.
pub fn stretched_witness(spec: &GadgetSpec, path: &[usize]) -> Option<Vec<usize>> {
    if path.is_empty() || path.len() > spec.x.len() + 1 {
        return None;
    }
    let last = path.len() - 1;
    let mut out = vec![0; spec.p.k()];
    for j in 1..=spec.p.k() {
        let crossed = spec.x.iter().filter(|&&i| i < j).count().min(last);
        let u = spec.p.point(j);
        out[u] = spec.element(path[crossed], u)?;
    }
    Some(out)
}
