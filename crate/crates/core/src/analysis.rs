//! Unfoldability, critical edges and alternating tails of rooted path
//! structures.
//!
//! Edge `e_i` is *unfoldable of degree d* when `i > d` and, for every
//! `l` in `1..=d`, `atyp(e_i)` is not contained in `atyp(e_{i-l}^{-l})`.
//! Every edge is unfoldable of degree 0 and the property is monotone in `d`,
//! so each edge has a well-defined maximal degree. An edge is *unfoldable*
//! when that maximum is at least 1 and *critical* when `i > 1` and
//! `atyp(e_i) != atyp(e_{i-1}^{-1})`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::path::RootedPathStructure;
use crate::structure::{StructureError, Vocabulary, EDGE, ROOT};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalysisError {
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error("wrong vocabulary: expected exactly {{root/1, E/2}}")]
    WrongVocabulary,
    #[error("not a rooted oriented path")]
    NotOrientedPath,
    #[error("empty sample")]
    EmptySample,
}

/// Per-structure summary of the quantities above. Edge indices are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub per_edge_degree: Vec<usize>,
    pub unfoldability_degree: usize,
    pub unfoldable_edges: Vec<usize>,
    pub critical_edges: Vec<usize>,
    pub max_edge_degree: usize,
    #[serde(rename = "alternating_tail_C")]
    pub alternating_tail_c: Option<usize>,
}

pub fn is_unfoldable(p: &RootedPathStructure, i: usize, d: usize) -> Result<bool, AnalysisError> {
    p.check_edge(i)?;
    if i <= d {
        return Ok(false);
    }
    let ty = p.edge_type(i);
    Ok((1..=d).all(|l| !ty.is_subset(&p.edge_type_power(i - l, l))))
}

/// The largest `d` such that `e_i` is unfoldable of degree `d`.
pub fn max_degree(p: &RootedPathStructure, i: usize) -> Result<usize, AnalysisError> {
    p.check_edge(i)?;
    let ty = p.edge_type(i);
    let mut d = 0;
    while d + 1 < i && !ty.is_subset(&p.edge_type_power(i - d - 1, d + 1)) {
        d += 1;
    }
    Ok(d)
}

pub fn per_edge_degrees(p: &RootedPathStructure) -> Vec<usize> {
    (1..p.k()).map(|i| max_degree(p, i).expect("edge index in range")).collect()
}

/// Sum of the maximal degrees of all edges.
pub fn unfoldability_degree(p: &RootedPathStructure) -> usize {
    per_edge_degrees(p).iter().sum()
}

/// Indices of the edges unfoldable of degree 1.
pub fn unfoldable_edges(p: &RootedPathStructure) -> Vec<usize> {
    (2..p.k()).filter(|&i| !p.edge_type(i).is_subset(&p.edge_type_power(i - 1, 1))).collect()
}

pub fn critical_edges(p: &RootedPathStructure) -> Vec<usize> {
    (2..p.k()).filter(|&i| *p.edge_type(i) != p.edge_type_power(i - 1, 1)).collect()
}

/// Upper bound `c + t(c+1)` on the number of critical edges of a structure
/// with `c` unfoldable edges over a vocabulary with `t` two-variable atoms.
pub fn critical_bound(c: usize, t: usize) -> usize {
    c + t * (c + 1)
}

/// Number of atomic formulas in two variables: one per symbol and pattern
/// in `{1,2}^arity`, plus equality.
pub fn two_var_atom_count(vocab: &Vocabulary) -> usize {
    vocab.symbols().map(|(_, a)| 1usize << a).sum::<usize>() + 1
}

pub fn is_rooted_oriented_path(p: &RootedPathStructure) -> Result<bool, AnalysisError> {
    let v = p.base().vocabulary();
    if v.len() != 2 || v.arity(ROOT) != Some(1) || v.arity(EDGE) != Some(2) {
        return Err(AnalysisError::WrongVocabulary);
    }
    let base = p.base();
    let arcs = base.relation(EDGE).expect("E declared");
    if arcs.iter().any(|t| t[0] == t[1]) {
        return Ok(false);
    }
    Ok(p.edges().into_iter().all(|(a, b)| base.contains_tuple(EDGE, &[a, b]) != base.contains_tuple(EDGE, &[b, a])))
}

/// The least `C >= 1` such that no edge `e_i` with `i >= C` is unfoldable.
pub fn alternating_tail_constant(p: &RootedPathStructure) -> Result<usize, AnalysisError> {
    if !is_rooted_oriented_path(p)? {
        return Err(AnalysisError::NotOrientedPath);
    }
    Ok(unfoldable_edges(p).last().map_or(1, |&i| i + 1))
}

pub fn analyze(p: &RootedPathStructure) -> AnalysisReport {
    let per_edge_degree = per_edge_degrees(p);
    let unfoldable: Vec<usize> =
        per_edge_degree.iter().enumerate().filter(|(_, &d)| d >= 1).map(|(i, _)| i + 1).collect();
    AnalysisReport {
        unfoldability_degree: per_edge_degree.iter().sum(),
        max_edge_degree: per_edge_degree.iter().copied().max().unwrap_or(0),
        per_edge_degree,
        unfoldable_edges: unfoldable,
        critical_edges: critical_edges(p),
        alternating_tail_c: alternating_tail_constant(p).ok(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    /// Every unfoldability degree is at most the bound.
    WithinBound,
    ExceedsBound,
}

/// Classification of a finite sample against a degree bound.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub bound: usize,
    pub reports: Vec<AnalysisReport>,
    pub verdict: Verdict,
    pub max_unfoldability_degree: usize,
    /// For samples made only of rooted oriented paths: the least common
    /// alternating-tail constant.
    pub common_tail_constant: Option<usize>,
    pub tail_within_bound: Option<bool>,
}

pub fn classify(sample: &[RootedPathStructure], bound: usize) -> Result<Classification, AnalysisError> {
    if sample.is_empty() {
        return Err(AnalysisError::EmptySample);
    }
    let reports: Vec<AnalysisReport> = sample.iter().map(analyze).collect();
    let max_deg = reports.iter().map(|r| r.unfoldability_degree).max().expect("non-empty");
    let common_tail = reports
        .iter()
        .map(|r| r.alternating_tail_c)
        .collect::<Option<Vec<_>>>()
        .map(|cs| cs.into_iter().max().expect("non-empty"));
    Ok(Classification {
        bound,
        verdict: if max_deg <= bound { Verdict::WithinBound } else { Verdict::ExceedsBound },
        max_unfoldability_degree: max_deg,
        tail_within_bound: common_tail.map(|c| c <= bound),
        common_tail_constant: common_tail,
        reports,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reductions::families::{gen_family, make_p_kl};
    use crate::structure::Structure;

    // Independent oracle: decides "unfoldable of degree d" straight from
    // the element pairs, recomputing every atomic type.
    fn oracle_unfoldable(p: &RootedPathStructure, i: usize, d: usize) -> bool {
        let s = p.base();
        let e = |j: usize| (p.point(j), p.point(j + 1));
        if i <= d {
            return false;
        }
        let (a, b) = e(i);
        let ty = s.atomic_type(a, b);
        (1..=d).all(|l| {
            let (x, y) = e(i - l);
            let (x, y) = if l % 2 == 0 { (x, y) } else { (y, x) };
            !ty.is_subset(&s.atomic_type(x, y))
        })
    }

    fn oracle_max_degree(p: &RootedPathStructure, i: usize) -> usize {
        (0..p.k()).rev().find(|&d| oracle_unfoldable(p, i, d)).unwrap()
    }

    #[test]
    fn degree_zero_always_holds() {
        let p = gen_family(3, 7).unwrap();
        for i in 1..p.k() {
            assert!(is_unfoldable(&p, i, 0).unwrap());
        }
        assert!(is_unfoldable(&p, 0, 0).is_err());
        assert!(is_unfoldable(&p, 7, 0).is_err());
    }

    #[test]
    fn family_one_has_no_unfoldable_edges() {
        for n in 3..=10 {
            let p = gen_family(1, n).unwrap();
            assert_eq!(unfoldability_degree(&p), 0);
            for i in 1..p.k() {
                assert!(!is_unfoldable(&p, i, 1).unwrap());
                assert_eq!(max_degree(&p, i).unwrap(), 0);
            }
        }
    }

    #[test]
    fn family_two_even_edges_are_exactly_the_unfoldable_ones() {
        let p = gen_family(2, 9).unwrap();
        assert_eq!(unfoldable_edges(&p), vec![2, 4, 6, 8]);
        // e_2 stops at degree 1 because of the i > d side condition; later
        // even edges reach degree 2 and fail at 3, where e_{i-3}^{-1} matches.
        assert!(is_unfoldable(&p, 2, 1).unwrap());
        assert!(!is_unfoldable(&p, 2, 2).unwrap());
        for i in [4, 6, 8] {
            assert!(is_unfoldable(&p, i, 2).unwrap());
            assert!(!is_unfoldable(&p, i, 3).unwrap());
        }
        let degrees: Vec<usize> = (1..9).map(|i| oracle_max_degree(&p, i)).collect();
        assert_eq!(degrees, vec![0, 1, 0, 2, 0, 2, 0, 2]);
        assert_eq!(per_edge_degrees(&p), degrees);
        assert_eq!(unfoldability_degree(&p), 7);
    }

    #[test]
    fn family_three_last_edge_degree_is_capped_by_its_index() {
        for n in 4..=10 {
            let p = gen_family(3, n).unwrap();
            let last = p.k() - 1;
            assert_eq!(unfoldable_edges(&p), vec![last]);
            assert_eq!(max_degree(&p, last).unwrap(), last - 1);
            assert_eq!(max_degree(&p, last).unwrap(), oracle_max_degree(&p, last));
            assert_eq!(critical_edges(&p), vec![2, last]);
            assert_eq!(alternating_tail_constant(&p).unwrap(), last + 1);
        }
    }

    #[test]
    fn family_four_is_foldable_with_two_critical_edges() {
        for n in 4..=12 {
            let p = gen_family(4, n).unwrap();
            assert_eq!(unfoldability_degree(&p), 0, "size {n}");
            assert_eq!(critical_edges(&p).len(), 2, "size {n}");
            assert!(!is_rooted_oriented_path(&p).unwrap());
        }
    }

    #[test]
    fn critical_examples() {
        for fam in 1..=4 {
            for n in 3..=9 {
                let p = gen_family(fam, n).unwrap();
                assert!(critical_edges(&p).contains(&2));
            }
        }
        assert_eq!(critical_bound(0, 3), 3);
        assert_eq!(critical_bound(2, 5), 17);
    }

    #[test]
    fn atom_counts() {
        assert_eq!(two_var_atom_count(&Vocabulary::rooted_digraph()), 7);
        assert_eq!(two_var_atom_count(&Vocabulary::new([("E", 2)]).unwrap()), 5);
    }

    #[test]
    fn oriented_paths() {
        assert!(is_rooted_oriented_path(&gen_family(1, 5).unwrap()).unwrap());
        assert!(!is_rooted_oriented_path(&gen_family(4, 6).unwrap()).unwrap());
        // p1 -> p2 plus a loop at p2
        let looped = Structure::from_indices(
            Vocabulary::rooted_digraph(),
            vec!["p1".into(), "p2".into()],
            [(ROOT, vec![vec![0]]), (EDGE, vec![vec![0, 1], vec![1, 1]])],
        )
        .unwrap();
        let looped = RootedPathStructure::new(looped).unwrap();
        assert!(!is_rooted_oriented_path(&looped).unwrap());
        let wrong = Structure::from_indices(
            Vocabulary::new([(ROOT, 1), ("R", 2)]).unwrap(),
            vec!["a".into(), "b".into()],
            [(ROOT, vec![vec![0]]), ("R", vec![vec![0, 1]])],
        )
        .unwrap();
        let wrong = RootedPathStructure::new(wrong).unwrap();
        assert_eq!(is_rooted_oriented_path(&wrong), Err(AnalysisError::WrongVocabulary));
    }

    #[test]
    fn alternating_tail_of_the_nine_point_picture() {
        // p2->p1, p2->p3, p3->p4, then alternating
        let arcs = [(1, 0), (1, 2), (2, 3), (4, 3), (4, 5), (6, 5), (6, 7), (8, 7)];
        let s = Structure::from_indices(
            Vocabulary::rooted_digraph(),
            (1..=9).map(|i| format!("p{i}")).collect(),
            [(ROOT, vec![vec![0]]), (EDGE, arcs.iter().map(|&(a, b)| vec![a, b]).collect())],
        )
        .unwrap();
        let p = RootedPathStructure::new(s).unwrap();
        assert_eq!(alternating_tail_constant(&p).unwrap(), 4);
        assert_eq!(alternating_tail_constant(&gen_family(1, 6).unwrap()).unwrap(), 1);
        assert_eq!(alternating_tail_constant(&gen_family(4, 6).unwrap()), Err(AnalysisError::NotOrientedPath));
    }

    #[test]
    fn p_kl_has_one_unfoldable_edge() {
        for l in 1..=7 {
            for k in 0..l {
                let p = make_p_kl(k, l).unwrap();
                let r = analyze(&p);
                if k + 3 <= l + 1 {
                    assert_eq!(r.unfoldable_edges, vec![k + 2], "k={k} l={l}");
                    assert_eq!(r.max_edge_degree, 1);
                } else {
                    assert!(r.unfoldable_edges.is_empty());
                }
            }
        }
    }

    #[test]
    fn classification() {
        let ones: Vec<_> = (3..=10).map(|n| gen_family(1, n).unwrap()).collect();
        let c = classify(&ones, 0).unwrap();
        assert_eq!(c.verdict, Verdict::WithinBound);
        assert_eq!(c.common_tail_constant, Some(1));

        let threes: Vec<_> = (4..=10).map(|n| gen_family(3, n).unwrap()).collect();
        let c = classify(&threes, 3).unwrap();
        assert_eq!(c.verdict, Verdict::ExceedsBound);
        assert_eq!(c.tail_within_bound, Some(false));

        let twos = vec![gen_family(2, 5).unwrap(), gen_family(2, 9).unwrap()];
        let c = classify(&twos, 4).unwrap();
        let degs: Vec<usize> = c.reports.iter().map(|r| r.unfoldability_degree).collect();
        assert_eq!(degs, vec![3, 7]);
        assert_eq!(c.verdict, Verdict::ExceedsBound);

        let mixed = vec![gen_family(1, 5).unwrap(), gen_family(4, 6).unwrap()];
        assert_eq!(classify(&mixed, 0).unwrap().common_tail_constant, None);
        assert_eq!(classify(&[], 0).unwrap_err(), AnalysisError::EmptySample);
    }

    #[test]
    fn report_field_names() {
        let json = serde_json::to_value(analyze(&gen_family(1, 3).unwrap())).unwrap();
        let keys: Vec<&str> = json.as_object().unwrap().keys().map(String::as_str).collect();
        for k in [
            "per_edge_degree",
            "unfoldability_degree",
            "unfoldable_edges",
            "critical_edges",
            "max_edge_degree",
            "alternating_tail_C",
        ] {
            assert!(keys.contains(&k), "{k}");
        }
    }
}
