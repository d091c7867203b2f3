//! Exhaustive search for homomorphisms and embeddings.

use crate::structure::Structure;

use super::SolveError;

/// Tuples of `a` grouped by their largest component, so a partial map over
/// `0..=j` can be checked as soon as element `j` is assigned.
fn tuples_by_last(a: &Structure) -> Vec<Vec<(&str, &[usize])>> {
    let mut out = vec![Vec::new(); a.len()];
    for (symbol, tuples) in a.relations() {
        for t in tuples {
            let last = *t.iter().max().expect("arity >= 1");
            out[last].push((symbol, t.as_slice()));
        }
    }
    out
}

fn search(a: &Structure, b: &Structure, injective: bool) -> Result<Option<Vec<usize>>, SolveError> {
    if !a.vocabulary().same_as(b.vocabulary()) {
        return Err(SolveError::VocabularyMismatch);
    }
    if injective && a.len() > b.len() {
        return Ok(None);
    }
    let checks = tuples_by_last(a);
    let mut map = vec![usize::MAX; a.len()];
    let mut used = vec![false; b.len()];
    let mut buf = Vec::new();
    let found = extend(0, &checks, b, injective, &mut map, &mut used, &mut buf);
    Ok(found.then_some(map))
}

fn extend(
    j: usize,
    checks: &[Vec<(&str, &[usize])>],
    b: &Structure,
    injective: bool,
    map: &mut [usize],
    used: &mut [bool],
    buf: &mut Vec<usize>,
) -> bool {
    if j == map.len() {
        return true;
    }
    for image in 0..b.len() {
        if injective && used[image] {
            continue;
        }
        map[j] = image;
        let ok = checks[j].iter().all(|(symbol, t)| {
            buf.clear();
            buf.extend(t.iter().map(|&e| map[e]));
            b.contains_tuple(symbol, buf)
        });
        if !ok {
            continue;
        }
        used[image] = true;
        if extend(j + 1, checks, b, injective, map, used, buf) {
            return true;
        }
        used[image] = false;
    }
    map[j] = usize::MAX;
    false
}

/// The lexicographically least injective homomorphism from `a` to `b`,
/// compared as the vector `(h(a_0), h(a_1), ...)` in universe order.
pub fn brute_force_embedding(a: &Structure, b: &Structure) -> Result<Option<Vec<usize>>, SolveError> {
    search(a, b, true)
}

/// The lexicographically least homomorphism from `a` to `b`.
pub fn brute_force_homomorphism(a: &Structure, b: &Structure) -> Result<Option<Vec<usize>>, SolveError> {
    search(a, b, false)
}

/// True iff `map` sends every tuple of `a` to a tuple of `b`.
pub fn is_homomorphism(a: &Structure, b: &Structure, map: &[usize]) -> bool {
    if map.len() != a.len() || map.iter().any(|&x| x >= b.len()) {
        return false;
    }
    let mut buf = Vec::new();
    a.relations().all(|(symbol, tuples)| {
        b.vocabulary().arity(symbol) == a.vocabulary().arity(symbol)
            && tuples.iter().all(|t| {
                buf.clear();
                buf.extend(t.iter().map(|&e| map[e]));
                b.contains_tuple(symbol, &buf)
            })
    })
}

/// True iff `map` is an injective homomorphism from `a` to `b`.
pub fn is_embedding(a: &Structure, b: &Structure, map: &[usize]) -> bool {
    if !is_homomorphism(a, b, map) {
        return false;
    }
    let mut seen = vec![false; b.len()];
    map.iter().all(|&x| !std::mem::replace(&mut seen[x], true))
}
