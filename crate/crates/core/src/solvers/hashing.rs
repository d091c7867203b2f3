//! The hash family `h_{p,q}(m) = (q*m mod p) mod r` used for color coding.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HashAssignment {
    pub p: u64,
    pub q: u64,
    pub range_size: u64,
}

impl HashAssignment {
    pub fn eval(&self, m: u64) -> u64 {
        (self.q * m % self.p) % self.range_size
    }

    /// True iff the hash takes pairwise distinct values on `xs`.
    pub fn injective_on(&self, xs: &[u64]) -> bool {
        let mut seen = HashSet::with_capacity(xs.len());
        xs.iter().all(|&m| seen.insert(self.eval(m)))
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// `range_size * ceil(multiplier * log2 n)`, the exclusive bound on `p`.
pub fn prime_bound(n: usize, range_size: usize, multiplier: f64) -> u64 {
    let log = (n.max(2) as f64).log2();
    let factor = (multiplier * log).ceil().max(1.0) as u64;
    range_size as u64 * factor
}

/// All `(p, q)` with `p` prime below [`prime_bound`] and `q < p`, in
/// increasing order, using multiplier 1.
pub fn enumerate_hashes(n: usize, range_size: usize) -> impl Iterator<Item = HashAssignment> {
    enumerate_hashes_with(n, range_size, 1.0)
}

pub fn enumerate_hashes_with(n: usize, range_size: usize, multiplier: f64) -> impl Iterator<Item = HashAssignment> {
    let bound = prime_bound(n, range_size, multiplier);
    let r = range_size as u64;
    (2..bound).filter(|&p| is_prime(p)).flat_map(move |p| (0..p).map(move |q| HashAssignment { p, q, range_size: r }))
}

/// Subset-count ceiling for the exhaustive perfectness check.
const MAX_SUBSETS_CHECKED: u128 = 5_000_000;

fn binomial(n: usize, r: usize) -> u128 {
    if r > n {
        return 0;
    }
    (0..r).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// The members of the hash family for one `(n, range_size)`.
#[derive(Debug, Clone)]
pub struct HashFamily {
    pub n: usize,
    pub range_size: usize,
    pub hashes: Vec<HashAssignment>,
}

impl HashFamily {
    pub fn new(n: usize, range_size: usize, multiplier: f64) -> Self {
        HashFamily { n, range_size, hashes: enumerate_hashes_with(n, range_size, multiplier).collect() }
    }

    /// The first member injective on `xs` (elements of `[n]`, 1-based).
    pub fn injective_member(&self, xs: &[u64]) -> Option<HashAssignment> {
        self.hashes.iter().copied().find(|h| h.injective_on(xs))
    }

    /// A member injective on all of `[n]`.
    pub fn fully_injective(&self) -> Option<HashAssignment> {
        let all: Vec<u64> = (1..=self.n as u64).collect();
        self.injective_member(&all)
    }

    /// Does every `r`-subset of `[n]` have an injective member? Returns
    /// false without checking when there are too many subsets to try.
    pub fn is_perfect_for(&self, r: usize) -> bool {
        if r > self.n {
            return true;
        }
        if r > self.range_size {
            return false;
        }
        if self.fully_injective().is_some() {
            return true;
        }
        if binomial(self.n, r) > MAX_SUBSETS_CHECKED {
            return false;
        }
        let mut subset: Vec<u64> = (1..=r as u64).collect();
        loop {
            if self.injective_member(&subset).is_none() {
                return false;
            }
            // next r-subset of [n] in lexicographic order
            let mut i = r;
            loop {
                if i == 0 {
                    return true;
                }
                i -= 1;
                if subset[i] < (self.n - r + i + 1) as u64 {
                    break;
                }
            }
            subset[i] += 1;
            for j in i + 1..r {
                subset[j] = subset[j - 1] + 1;
            }
        }
    }

    /// The distinct restrictions to `[n]` of `g ∘ h` over all members `h`
    /// and all `g: {0..range_size-1} -> {lo..=hi}`. Entry `m-1` of each
    /// coloring is the colour of `m`. When some member is injective on
    /// `[n]`, these are all colorings of `[n]`.
    pub fn colorings(&self, lo: u8, hi: u8) -> Vec<Vec<u8>> {
        let colours = (hi - lo + 1) as usize;
        if self.fully_injective().is_some() {
            return all_colorings(self.n, lo, colours);
        }
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for h in &self.hashes {
            let values: Vec<usize> = (1..=self.n as u64).map(|m| h.eval(m) as usize).collect();
            let mut image: Vec<usize> = values.clone();
            image.sort_unstable();
            image.dedup();
            let mut slot = vec![0; self.range_size];
            for (i, &v) in image.iter().enumerate() {
                slot[v] = i;
            }
            for g in all_colorings(image.len(), lo, colours) {
                let f: Vec<u8> = values.iter().map(|&v| g[slot[v]]).collect();
                if seen.insert(f.clone()) {
                    out.push(f);
                }
            }
        }
        out
    }
}

/// Every map from `n` positions to `lo..lo+colours`, in lexicographic order.
pub fn all_colorings(n: usize, lo: u8, colours: usize) -> Vec<Vec<u8>> {
    let total = colours.pow(n as u32);
    let mut out = Vec::with_capacity(total);
    let mut cur = vec![lo; n];
    for _ in 0..total {
        out.push(cur.clone());
        for j in (0..n).rev() {
            if ((cur[j] - lo) as usize) + 1 < colours {
                cur[j] += 1;
                break;
            }
            cur[j] = lo;
        }
    }
    out
}
