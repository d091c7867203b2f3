//! Decision procedures for embedding and path problems.

pub mod ac;
pub mod brute;
pub mod color;
pub mod hashing;
pub mod paths;
pub mod tail;

use thiserror::Error;

pub use ac::{algorithm_ac, second_loop_index, AcAccept, AcConfig, AcOutcome, AcStats, ColorLoop};
pub use brute::{brute_force_embedding, brute_force_homomorphism, is_embedding, is_homomorphism};
pub use color::{color_graph_a, color_graph_tail};
pub use hashing::{enumerate_hashes, enumerate_hashes_with, HashAssignment, HashFamily};
pub use paths::{
    connected, find_exact_path, find_long_path, solve_longshort, solve_ustcon, ExactLongShort, LongShortInstance,
    LongShortOracle,
};
pub use tail::{algorithm_b, TailOutcome, TailStats};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("vocabulary mismatch between source and target")]
    VocabularyMismatch,
    #[error("unknown vertex {0}")]
    UnknownVertex(usize),
    #[error("unknown element {0}")]
    UnknownElement(usize),
    #[error("long-short instances need k < l, got k = {k}, l = {l}")]
    BadLongShort { k: usize, l: usize },
    #[error("coloring length differs from the universe size")]
    BadColoring,
    #[error("prefix map must cover p_1..p_C for 1 <= C <= k")]
    BadPrefix,
    #[error("not a rooted oriented path")]
    NotOrientedPath,
    #[error("tail is not {c}-alternating; the least constant is {needed}")]
    TailNotAlternating { c: usize, needed: usize },
}
