//! The recursive color-coding decider for classes with boundedly many
//! critical edges.
//!
//! Each level works on a suffix `P↑j` of the input path and an induced
//! substructure of the target whose root has been moved. Small levels are
//! solved by brute force. Otherwise the level picks the least `a` with
//! `1 < a < k - d` such that none of `e_{a+1}..e_{a+d}` is unfoldable. For
//! `a > 2` it guesses an embedding of `P↓a` and recurses on `P↑a`. For
//! `a = 2` it searches the graphs `G(f, b1)`: first for a colour-2 to
//! colour-`k` connection, then, through the long-short oracle, for an exact
//! path up to the next critical edge, after which it recurses.

use std::collections::{HashMap, HashSet};

use serde::Serialize;

use crate::analysis::{critical_edges, per_edge_degrees};
use crate::graph::Graph;
use crate::path::RootedPathStructure;
use crate::structure::{Structure, ROOT};

use super::brute::brute_force_embedding;
use super::color::TablesA;
use super::hashing::HashFamily;
use super::paths::{find_exact_path, find_long_path, shortest_path_between, LongShortOracle};
use super::SolveError;

/// Tuning knobs shared by the color-coded deciders.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AcConfig {
    /// Largest `k` handled by color coding; larger levels use brute force.
    pub k_max: usize,
    /// Factor on `log2 n` in the prime bound of the hash family.
    pub log_multiplier: f64,
}

impl Default for AcConfig {
    fn default() -> Self {
        AcConfig { k_max: 4, log_multiplier: 1.0 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ColorLoop {
    /// The colour-2 to colour-`k` connectivity loop.
    Connect,
    /// The oracle loop followed by recursion.
    Oracle,
}

/// One accepting run of a color-coded loop, with the level it ran on.
/// `witness` maps the level's `P` universe into the level's `B` universe.
#[derive(Debug, Clone)]
pub struct AcAccept {
    pub kind: ColorLoop,
    pub depth: usize,
    pub p: RootedPathStructure,
    pub b: Structure,
    pub witness: Vec<usize>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct AcStats {
    pub levels: usize,
    pub max_depth: usize,
    pub brute_force: usize,
    pub case_prefix: usize,
    pub case_color: usize,
    pub hash_fallbacks: usize,
    pub oracle_queries: usize,
    pub memo_hits: usize,
}

#[derive(Debug, Clone)]
pub struct AcOutcome {
    /// An embedding of `P` into `B`, indexed by `P`'s universe.
    pub witness: Option<Vec<usize>>,
    pub accepts: Vec<AcAccept>,
    pub stats: AcStats,
    /// `c + C + 1` for the input: unfoldable plus critical edges plus one.
    pub depth_bound: usize,
}

impl AcOutcome {
    pub fn accepted(&self) -> bool {
        self.witness.is_some()
    }
}

/// Decides whether `p` embeds into `b`, returning a witness on success.
pub fn algorithm_ac<O: LongShortOracle>(
    p: &RootedPathStructure,
    b: &Structure,
    oracle: &O,
    cfg: &AcConfig,
) -> Result<AcOutcome, SolveError> {
    if !p.base().vocabulary().same_as(b.vocabulary()) {
        return Err(SolveError::VocabularyMismatch);
    }
    let degrees = per_edge_degrees(p);
    let depth_bound = degrees.iter().filter(|&&d| d >= 1).count() + critical_edges(p).len() + 1;
    let mut run = Run {
        top_p: p,
        top_b: b,
        oracle,
        cfg,
        suffixes: HashMap::new(),
        memo: HashMap::new(),
        families: HashMap::new(),
        accepts: Vec::new(),
        stats: AcStats::default(),
    };
    let keep: Vec<usize> = (0..b.len()).collect();
    let positional = run.solve(0, keep, None, 1);
    let witness = positional.map(|w| {
        let mut out = vec![0; p.k()];
        for (j, &x) in w.iter().enumerate() {
            out[p.point(j + 1)] = x;
        }
        out
    });
    Ok(AcOutcome { witness, accepts: run.accepts, stats: run.stats, depth_bound })
}

type MemoKey = (usize, Vec<usize>, Option<usize>);

struct Run<'a, O> {
    top_p: &'a RootedPathStructure,
    top_b: &'a Structure,
    oracle: &'a O,
    cfg: &'a AcConfig,
    suffixes: HashMap<usize, RootedPathStructure>,
    memo: HashMap<MemoKey, Option<Vec<usize>>>,
    families: HashMap<(usize, usize), Option<Vec<Vec<u8>>>>,
    accepts: Vec<AcAccept>,
    stats: AcStats,
}

/// Result of a level in the level's own indices: `w[j]` is the image of
/// `p_{j+1}`.
type Positional = Option<Vec<usize>>;

impl<O: LongShortOracle> Run<'_, O> {
    /// Solves `(P↑(offset+1), B[keep])`, rooted at `root` when given.
    /// Works and answers in top-level indices of `B`.
    fn solve(&mut self, offset: usize, keep: Vec<usize>, root: Option<usize>, depth: usize) -> Positional {
        let key = (offset, keep, root);
        if let Some(hit) = self.memo.get(&key) {
            self.stats.memo_hits += 1;
            return hit.clone();
        }
        let (offset, keep, root) = key;
        self.stats.levels += 1;
        self.stats.max_depth = self.stats.max_depth.max(depth);
        let p = self
            .suffixes
            .entry(offset)
            .or_insert_with(|| self.top_p.cut_up(offset + 1).expect("offset within the path"))
            .clone();
        let (mut b, _) = self.top_b.induced(&keep);
        if let Some(r) = root {
            let local = keep.binary_search(&r).expect("root is kept");
            b = b.with_singleton(ROOT, local);
        }
        let local = self.level(&p, &b, offset, &keep, depth);
        let result = local.map(|w| w.into_iter().map(|x| keep[x]).collect::<Vec<_>>());
        self.memo.insert((offset, keep, root), result.clone());
        result
    }

    fn brute(&mut self, p: &RootedPathStructure, b: &Structure) -> Positional {
        self.stats.brute_force += 1;
        let map = brute_force_embedding(p.base(), b).expect("shared vocabulary")?;
        Some(p.enumeration().iter().map(|&u| map[u]).collect())
    }

    fn level(&mut self, p: &RootedPathStructure, b: &Structure, offset: usize, keep: &[usize], depth: usize) -> Positional {
        let k = p.k();
        let n = b.len();
        let degrees = per_edge_degrees(p);
        let c = degrees.iter().filter(|&&d| d >= 1).count();
        let d = degrees.iter().copied().max().unwrap_or(0);
        if k <= 2 + c * d + d || n <= k {
            return self.brute(p, b);
        }
        let unfoldable = |j: usize| degrees[j - 1] >= 1;
        let Some(a) = (2..k - d).find(|&a| (a + 1..=a + d).all(|j| !unfoldable(j))) else {
            return self.brute(p, b);
        };
        debug_assert!(
            (1..k - a).all(|i| p.edge_type(a + i).is_subset(&p.edge_type_power(a, i))),
            "every later edge type is contained in the matching power of e_a"
        );
        if a > 2 {
            self.stats.case_prefix += 1;
            return self.prefix_case(p, b, a, offset, keep, depth);
        }
        if k > self.cfg.k_max {
            return self.brute(p, b);
        }
        let Some(colorings) = self.colorings(n, k) else {
            self.stats.hash_fallbacks += 1;
            return self.brute(p, b);
        };
        self.stats.case_color += 1;
        self.color_case(p, b, &colorings, offset, keep, depth)
    }

    /// The distinct colorings `B -> {2..k}` of the family, or `None` when
    /// the family misses some `(k-1)`-subset.
    fn colorings(&mut self, n: usize, k: usize) -> Option<Vec<Vec<u8>>> {
        let mult = self.cfg.log_multiplier;
        self.families
            .entry((n, k))
            .or_insert_with(|| {
                let fam = HashFamily::new(n, (k - 1) * (k - 1), mult);
                fam.is_perfect_for(k - 1).then(|| fam.colorings(2, k as u8))
            })
            .clone()
    }

    fn prefix_case(
        &mut self,
        p: &RootedPathStructure,
        b: &Structure,
        a: usize,
        offset: usize,
        keep: &[usize],
        depth: usize,
    ) -> Positional {
        for h in prefix_embeddings(p, b, a) {
            let used: HashSet<usize> = h[..a - 1].iter().map(|&x| keep[x]).collect();
            let next_keep: Vec<usize> = keep.iter().copied().filter(|x| !used.contains(x)).collect();
            if let Some(rest) = self.solve(offset + a - 1, next_keep, Some(keep[h[a - 1]]), depth + 1) {
                let local_of = local_index(keep);
                let mut w = h[..a - 1].to_vec();
                w.extend(rest.iter().map(|x| local_of[x]));
                return Some(w);
            }
        }
        None
    }

    fn color_case(
        &mut self,
        p: &RootedPathStructure,
        b: &Structure,
        colorings: &[Vec<u8>],
        offset: usize,
        keep: &[usize],
        depth: usize,
    ) -> Positional {
        let k = p.k();
        let n = b.len();
        let tables = TablesA::new(p, b);
        // Colour classes only matter off b1, so collapse colorings that
        // differ at b1 alone. A b1 without an e_1-successor leaves every
        // colour-2 vertex isolated and cannot lead to acceptance.
        let per_b1: Vec<(usize, Vec<Vec<u8>>)> = (0..n)
            .filter(|&b1| tables.has_successor(b1))
            .map(|b1| {
                let mut seen = HashSet::new();
                let fs = colorings
                    .iter()
                    .filter_map(|f| {
                        let mut g = f.clone();
                        g[b1] = 0;
                        seen.insert(g.clone()).then_some(g)
                    })
                    .collect();
                (b1, fs)
            })
            .collect();

        for (b1, fs) in &per_b1 {
            let b1 = *b1;
            let mut g = Graph::with_vertices(n, (0..n).filter(|&x| x != b1));
            for f in fs {
                tables.fill(f, b1, &mut g);
                let sources: Vec<usize> = (0..n).filter(|&x| x != b1 && f[x] == 2).collect();
                let targets: Vec<bool> = (0..n).map(|x| x != b1 && f[x] as usize == k).collect();
                if let Some(path) = shortest_path_between(&g, &sources, &targets) {
                    let mut w = vec![b1];
                    w.extend_from_slice(&path[..k - 1]);
                    self.record(ColorLoop::Connect, depth, p, b, &w);
                    return Some(w);
                }
            }
        }

        let i = second_loop_index(p);
        for (b1, fs) in &per_b1 {
            let b1 = *b1;
            let mut g = Graph::with_vertices(n, (0..n).filter(|&x| x != b1));
            for f in fs {
                let starts: Vec<usize> = (0..n).filter(|&x| x != b1 && f[x] == 2 && tables.first(b1, x)).collect();
                let ends: Vec<usize> = (0..n).filter(|&x| x != b1 && f[x] as usize == i).collect();
                if starts.is_empty() || ends.is_empty() {
                    continue;
                }
                tables.fill(f, b1, &mut g);
                for &s in &starts {
                    for &t in &ends {
                        self.stats.oracle_queries += 1;
                        if !self.oracle.longshort(&g, s, t, i - 2, k - 2) {
                            continue;
                        }
                        let Some(path) = find_exact_path(&g, s, t, i - 2) else {
                            // Only the long branch holds: a path of length
                            // k-2 from a colour-2 vertex already embeds P.
                            if let Some(long) = find_long_path(&g, s, k - 2) {
                                let mut w = vec![b1];
                                w.extend(long);
                                self.record(ColorLoop::Oracle, depth, p, b, &w);
                                return Some(w);
                            }
                            continue;
                        };
                        let mut next_keep: Vec<usize> = (0..n)
                            .filter(|&x| x != b1 && (x == t || (f[x] as usize > i && f[x] as usize <= k)))
                            .map(|x| keep[x])
                            .collect();
                        next_keep.sort_unstable();
                        if let Some(rest) = self.solve(offset + i - 1, next_keep, Some(keep[t]), depth + 1) {
                            let local_of = local_index(keep);
                            let mut w = vec![b1];
                            w.extend_from_slice(&path[..path.len() - 1]);
                            w.extend(rest.iter().map(|x| local_of[x]));
                            self.record(ColorLoop::Oracle, depth, p, b, &w);
                            return Some(w);
                        }
                    }
                }
            }
        }
        None
    }

    fn record(&mut self, kind: ColorLoop, depth: usize, p: &RootedPathStructure, b: &Structure, positional: &[usize]) {
        let mut witness = vec![0; p.k()];
        for (j, &x) in positional.iter().enumerate() {
            witness[p.point(j + 1)] = x;
        }
        self.accepts.push(AcAccept { kind, depth, p: p.clone(), b: b.clone(), witness });
    }
}

fn local_index(keep: &[usize]) -> HashMap<usize, usize> {
    keep.iter().enumerate().map(|(i, &x)| (x, i)).collect()
}

/// The cut point of the oracle loop: one before the first critical edge
/// after `e_2`, or `k - 1` when there is none. Up to that point every edge
/// type equals the matching power of `e_2`.
pub fn second_loop_index(p: &RootedPathStructure) -> usize {
    critical_edges(p).into_iter().find(|&m| m >= 3).map_or(p.k() - 1, |m| m - 1)
}

/// All embeddings of `P↓len` into `b`, positionally (`h[j]` is the image of
/// `p_{j+1}`), in lexicographic order.
pub(crate) fn prefix_embeddings(p: &RootedPathStructure, b: &Structure, len: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut h = Vec::with_capacity(len);
    let mut used = vec![false; b.len()];
    let unary = p.base().atomic_type(p.point(1), p.point(1));
    extend_prefix(p, b, len, &unary, &mut h, &mut used, &mut out);
    out
}

fn extend_prefix(
    p: &RootedPathStructure,
    b: &Structure,
    len: usize,
    unary: &crate::structure::AtomicType,
    h: &mut Vec<usize>,
    used: &mut [bool],
    out: &mut Vec<Vec<usize>>,
) {
    if h.len() == len {
        out.push(h.clone());
        return;
    }
    let j = h.len();
    for x in 0..b.len() {
        if used[x] {
            continue;
        }
        let ok = if j == 0 { unary.holds_in(b, x, x) } else { p.edge_type(j).holds_in(b, h[j - 1], x) };
        if !ok {
            continue;
        }
        used[x] = true;
        h.push(x);
        extend_prefix(p, b, len, unary, h, used, out);
        h.pop();
        used[x] = false;
    }
}
