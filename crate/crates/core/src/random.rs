//! Seeded instance generators for the verification harness.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::graph::Graph;
use crate::path::RootedPathStructure;
use crate::reductions::{gen_family, make_p_kl, oriented_path};
use crate::structure::{Structure, ROOT};

/// The generator used throughout: ChaCha8 seeded from a 64-bit integer.
pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FamilyKind {
    #[serde(rename = "1")]
    One,
    #[serde(rename = "2")]
    Two,
    #[serde(rename = "3")]
    Three,
    #[serde(rename = "4")]
    Four,
    Pkl,
}

impl FamilyKind {
    pub const ALL: [FamilyKind; 5] = [FamilyKind::One, FamilyKind::Two, FamilyKind::Three, FamilyKind::Four, FamilyKind::Pkl];

    /// A member with `size` elements (`size >= 3`). For `Pkl` the split
    /// point `k` is drawn uniformly from `0..size-1`.
    pub fn generate<R: Rng>(self, size: usize, rng: &mut R) -> RootedPathStructure {
        let id = match self {
            FamilyKind::One => 1,
            FamilyKind::Two => 2,
            FamilyKind::Three => 3,
            FamilyKind::Four => 4,
            FamilyKind::Pkl => {
                let l = size - 1;
                return make_p_kl(rng.gen_range(0..l), l).expect("k < l");
            }
        };
        gen_family(id, size).expect("size >= 3")
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            FamilyKind::One => "1",
            FamilyKind::Two => "2",
            FamilyKind::Three => "3",
            FamilyKind::Four => "4",
            FamilyKind::Pkl => "Pkl",
        };
        f.write_str(s)
    }
}

impl FromStr for FamilyKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "1" => Ok(FamilyKind::One),
            "2" => Ok(FamilyKind::Two),
            "3" => Ok(FamilyKind::Three),
            "4" => Ok(FamilyKind::Four),
            "Pkl" | "pkl" => Ok(FamilyKind::Pkl),
            other => Err(format!("unknown family `{other}`; expected 1, 2, 3, 4 or Pkl")),
        }
    }
}

/// A random member of one of `kinds` with size in `min..=max`.
pub fn random_family_member<R: Rng>(rng: &mut R, kinds: &[FamilyKind], min: usize, max: usize) -> (FamilyKind, RootedPathStructure) {
    let kind = *kinds.choose(rng).expect("at least one family");
    let size = rng.gen_range(min.max(3)..=max.max(3));
    (kind, kind.generate(size, rng))
}

/// A target over `p`'s vocabulary with `n` elements `b1..bn`. With
/// probability 1/2 (when `n >= |p|`) a copy of `p` is planted under a random
/// injection; then 1 or 2 random root elements are added and every other
/// relation receives each non-constant tuple with a density drawn from
/// `[0.1, 0.35)`.
pub fn planted_target<R: Rng>(rng: &mut R, p: &Structure, n: usize) -> Structure {
    let mut relations: Vec<(String, Vec<Vec<usize>>)> =
        p.vocabulary().symbols().map(|(s, _)| (s.to_string(), Vec::new())).collect();
    if n >= p.len() && rng.gen_bool(0.5) {
        let mut image: Vec<usize> = (0..n).collect();
        image.shuffle(rng);
        for (slot, (symbol, _)) in relations.iter_mut().zip(p.vocabulary().symbols()) {
            for t in p.relation(symbol).into_iter().flatten() {
                slot.1.push(t.iter().map(|&x| image[x]).collect());
            }
        }
    }
    let density = rng.gen_range(0.1..0.35);
    for ((symbol, tuples), (_, arity)) in relations.iter_mut().zip(p.vocabulary().symbols()) {
        if symbol == ROOT {
            for _ in 0..rng.gen_range(1..=2) {
                tuples.push(vec![rng.gen_range(0..n)]);
            }
            continue;
        }
        let total = n.checked_pow(arity as u32).filter(|&t| t <= 1 << 16).unwrap_or(0);
        for code in 0..total {
            let mut t = Vec::with_capacity(arity);
            let mut c = code;
            for _ in 0..arity {
                t.push(c % n);
                c /= n;
            }
            let constant = arity > 1 && t.iter().all(|&x| x == t[0]);
            if !constant && rng.gen_bool(density) {
                tuples.push(t);
            }
        }
    }
    Structure::from_indices(p.vocabulary().clone(), (1..=n).map(|i| format!("b{i}")).collect(), relations)
        .expect("generated target is valid")
}

/// A random rooted oriented path with `k` elements whose alternating tail
/// constant is at most `c`: the first `c - 1` edges are random and every
/// later edge reverses its predecessor.
pub fn random_tail_path<R: Rng>(rng: &mut R, k: usize, c: usize) -> RootedPathStructure {
    let mut forward: Vec<bool> = Vec::with_capacity(k.saturating_sub(1));
    for i in 1..k {
        let f = if i < c.max(2) { rng.gen_bool(0.5) } else { !forward[i - 2] };
        forward.push(f);
    }
    oriented_path(&forward)
}

/// `G(n, prob)`: every pair is an edge independently with probability
/// `prob`.
pub fn er_graph<R: Rng>(rng: &mut R, n: usize, prob: f64) -> Graph {
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(prob.clamp(0.0, 1.0)) {
                g.add_edge(u, v);
            }
        }
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::{alternating_tail_constant, is_rooted_oriented_path};

    #[test]
    fn seeded_generation_is_repeatable() {
        let make = || {
            let mut rng = ChaCha8Rng::seed_from_u64(7);
            let (_, p) = random_family_member(&mut rng, &FamilyKind::ALL, 3, 7);
            let b = planted_target(&mut rng, p.base(), 9);
            (p.base().to_raw(), b.to_raw(), er_graph(&mut rng, 8, 0.25).edges())
        };
        assert_eq!(make(), make());
    }

    #[test]
    fn tail_paths_alternate() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let k = rng.gen_range(2..=9);
            let c = rng.gen_range(1..=3);
            let p = random_tail_path(&mut rng, k, c);
            assert_eq!(p.k(), k);
            assert!(is_rooted_oriented_path(&p).unwrap());
            assert!(alternating_tail_constant(&p).unwrap() <= c);
        }
    }

    #[test]
    fn family_kinds_parse() {
        for kind in FamilyKind::ALL {
            assert_eq!(kind.to_string().parse::<FamilyKind>(), Ok(kind));
        }
        assert!("5".parse::<FamilyKind>().is_err());
    }

    #[test]
    fn targets_have_roots_and_no_loops() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let p = gen_family(2, 5).unwrap();
        for _ in 0..50 {
            let b = planted_target(&mut rng, p.base(), 6);
            assert!(!b.relation(ROOT).unwrap().is_empty());
            assert!(b.relation("E").unwrap().iter().all(|t| t[0] != t[1]));
        }
    }
}
