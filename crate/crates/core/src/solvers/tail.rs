//! The color-coded decider for rooted oriented paths whose edges alternate
//! from some index `C` on.

use serde::Serialize;

use crate::analysis::{alternating_tail_constant, is_rooted_oriented_path};
use crate::path::RootedPathStructure;
use crate::structure::Structure;

use super::ac::{prefix_embeddings, AcConfig};
use super::brute::brute_force_embedding;
use super::color::tail_graph;
use super::hashing::HashFamily;
use super::paths::shortest_path_between;
use super::SolveError;

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct TailStats {
    pub brute_force: bool,
    pub hash_fallback: bool,
    pub prefixes: usize,
    pub graphs: usize,
}

#[derive(Debug, Clone)]
pub struct TailOutcome {
    /// An embedding of `P` into `B`, indexed by `P`'s universe.
    pub witness: Option<Vec<usize>>,
    pub stats: TailStats,
}

impl TailOutcome {
    pub fn accepted(&self) -> bool {
        self.witness.is_some()
    }
}

/// Decides whether `p` embeds into `b` for a rooted oriented path `p` with
/// a `c`-alternating tail. Guesses an embedding `h` of `P↓c` and a coloring
/// `f` with `f(h(p_c)) = c`, then looks in `G(f, h)` for a path from `h(p_c)`
/// to a colour-`k` vertex.
pub fn algorithm_b(p: &RootedPathStructure, b: &Structure, c: usize, cfg: &AcConfig) -> Result<TailOutcome, SolveError> {
    if !p.base().vocabulary().same_as(b.vocabulary()) {
        return Err(SolveError::VocabularyMismatch);
    }
    if !is_rooted_oriented_path(p).map_err(|_| SolveError::NotOrientedPath)? {
        return Err(SolveError::NotOrientedPath);
    }
    let needed = alternating_tail_constant(p).map_err(|_| SolveError::NotOrientedPath)?;
    if c == 0 || needed > c {
        return Err(SolveError::TailNotAlternating { c, needed });
    }
    let k = p.k();
    let n = b.len();
    let mut stats = TailStats::default();
    let brute = |mut stats: TailStats| {
        stats.brute_force = true;
        let witness = brute_force_embedding(p.base(), b).expect("shared vocabulary");
        Ok(TailOutcome { witness, stats })
    };
    if k <= c || n < 2 || k - c + 2 > cfg.k_max {
        return brute(stats);
    }
    let colours = k - c + 1;
    let fam = HashFamily::new(n, colours * colours, cfg.log_multiplier);
    if !fam.is_perfect_for(colours) {
        stats.hash_fallback = true;
        return brute(stats);
    }
    let colorings = fam.colorings(c as u8, k as u8);
    for h in prefix_embeddings(p, b, c) {
        stats.prefixes += 1;
        let hc = h[c - 1];
        let mut targets = vec![false; n];
        for f in colorings.iter().filter(|f| f[hc] as usize == c) {
            stats.graphs += 1;
            let g = tail_graph(p, b, f, &h);
            for (x, t) in targets.iter_mut().enumerate() {
                *t = g.has_vertex(x) && f[x] as usize == k;
            }
            if let Some(path) = shortest_path_between(&g, &[hc], &targets) {
                let mut positional = h[..c - 1].to_vec();
                positional.extend_from_slice(&path[..=k - c]);
                let mut witness = vec![0; k];
                for (j, &x) in positional.iter().enumerate() {
                    witness[p.point(j + 1)] = x;
                }
                return Ok(TailOutcome { witness: Some(witness), stats });
            }
        }
    }
    Ok(TailOutcome { witness: None, stats })
}
