//! Embedding problems for rooted path structures.
//!
//! Relational structures and their atomic types live in [`structure`];
//! [`path`] validates rooted path structures and cuts them. [`analysis`]
//! computes unfoldability and critical edges, [`solvers`] holds the exact
//! deciders (brute force, color-coded recursion, tail algorithm) and
//! [`reductions`] builds the hardness gadgets and the example families.

pub mod analysis;
pub mod graph;
pub mod io;
pub mod path;
pub mod random;
pub mod reductions;
pub mod solvers;
pub mod structure;
pub mod verify;

#[cfg(test)]
mod properties;

pub use graph::Graph;
pub use path::{as_rooted_path, RootedPathStructure};
pub use structure::{Atom, AtomicType, RawStructure, Structure, StructureError, Vocabulary};
