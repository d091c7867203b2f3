//! Generators for the four example families and for the structures `P_{k,l}`.

use thiserror::Error;

use crate::path::RootedPathStructure;
use crate::structure::{Structure, Vocabulary, EDGE, ROOT};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("unknown family {0}; expected 1, 2, 3 or 4")]
    UnknownFamily(u8),
    #[error("size {0} too small; families need at least 3 elements")]
    TooSmall(usize),
    #[error("need k < l, got k = {k}, l = {l}")]
    BadParameters { k: usize, l: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Dir {
    Forward,
    Backward,
    Both,
}

/// Builds the rooted path `p1..pn` (root `p1`) with the given per-edge
/// orientations.
fn oriented(dirs: &[Dir]) -> RootedPathStructure {
    let n = dirs.len() + 1;
    let mut arcs = Vec::new();
    for (i, d) in dirs.iter().enumerate() {
        if matches!(d, Dir::Forward | Dir::Both) {
            arcs.push(vec![i, i + 1]);
        }
        if matches!(d, Dir::Backward | Dir::Both) {
            arcs.push(vec![i + 1, i]);
        }
    }
    let s = Structure::from_indices(
        Vocabulary::rooted_digraph(),
        (1..=n).map(|i| format!("p{i}")).collect(),
        [(ROOT, vec![vec![0]]), (EDGE, arcs)],
    )
    .expect("generated structure is valid");
    RootedPathStructure::new(s).expect("generated structure is a rooted path")
}

/// The rooted path `p1..pn` whose edge `e_i` points forward iff
/// `forward[i - 1]`.
pub fn oriented_path(forward: &[bool]) -> RootedPathStructure {
    oriented(&forward.iter().map(|&f| if f { Dir::Forward } else { Dir::Backward }).collect::<Vec<_>>())
}

fn alternating(len: usize) -> impl Iterator<Item = Dir> {
    (0..len).map(|j| if j % 2 == 0 { Dir::Forward } else { Dir::Backward })
}

/// Family 1: alternating paths. Family 2: alternating paths with every arc
/// subdivided (`F F B B F F ...`). Family 3: an alternating path followed by
/// one edge that repeats the previous orientation. Family 4: an undirected
/// prefix of `ceil((n-1)/2)` edges, rooted at its free end, continued by an
/// alternating path.
pub fn gen_family(id: u8, size: usize) -> Result<RootedPathStructure, FamilyError> {
    if !(1..=4).contains(&id) {
        return Err(FamilyError::UnknownFamily(id));
    }
    if size < 3 {
        return Err(FamilyError::TooSmall(size));
    }
    let m = size - 1;
    let dirs: Vec<Dir> = match id {
        1 => alternating(m).collect(),
        2 => (0..m).map(|j| if (j / 2) % 2 == 0 { Dir::Forward } else { Dir::Backward }).collect(),
        3 => {
            let mut d: Vec<Dir> = alternating(m - 1).collect();
            d.push(*d.last().expect("m >= 2"));
            d
        }
        _ => {
            let prefix = m.div_ceil(2);
            std::iter::repeat_n(Dir::Both, prefix).chain(alternating(m - prefix)).collect()
        }
    };
    Ok(oriented(&dirs))
}

/// `P_{k,l}`: the path `p1..p_{l+1}` with both directions on every edge
/// except `e_{k+1}`, which only points forward.
pub fn make_p_kl(k: usize, l: usize) -> Result<RootedPathStructure, FamilyError> {
    if k >= l {
        return Err(FamilyError::BadParameters { k, l });
    }
    let dirs: Vec<Dir> = (0..l).map(|j| if j == k { Dir::Forward } else { Dir::Both }).collect();
    Ok(oriented(&dirs))
}
