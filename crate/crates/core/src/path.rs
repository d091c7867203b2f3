//! Rooted path structures and the two cut operations.

use crate::structure::{edge_power, AtomicType, Structure, StructureError, ROOT};

/// A structure whose Gaifman graph is a path and whose `root` relation is a
/// single endpoint.
///
/// Points and edges are numbered from 1 as `p_1..p_k` and `e_1..e_{k-1}`,
/// with `e_i = (p_i, p_{i+1})`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootedPathStructure {
    base: Structure,
    enumeration: Vec<usize>,
    edge_types: Vec<AtomicType>,
}

impl RootedPathStructure {
    /// Validates that `base` is a rooted path structure and computes its
    /// unique enumeration.
    pub fn new(base: Structure) -> Result<Self, StructureError> {
        if base.vocabulary().arity(ROOT) != Some(1) {
            return Err(StructureError::MissingRoot);
        }
        let gaifman = base.gaifman();
        let order = gaifman.path_enumeration().ok_or_else(|| {
            let why = if gaifman.edge_count() >= base.len() {
                "Gaifman graph has a cycle"
            } else if gaifman.vertices().any(|v| gaifman.degree(v) > 2) {
                "Gaifman graph branches"
            } else {
                "Gaifman graph is disconnected"
            };
            StructureError::NotAPath(why.to_string())
        })?;
        let roots = base.relation(ROOT).expect("root declared");
        if roots.len() != 1 {
            return Err(StructureError::BadRoot(format!("root has {} elements, expected 1", roots.len())));
        }
        let root = roots.iter().next().expect("one tuple")[0];
        let enumeration = if order[0] == root {
            order
        } else if *order.last().expect("non-empty") == root {
            order.into_iter().rev().collect()
        } else {
            return Err(StructureError::BadRoot(format!("`{}` is not an endpoint", base.name(root))));
        };
        let edge_types = enumeration.windows(2).map(|w| base.atomic_type(w[0], w[1])).collect();
        Ok(RootedPathStructure { base, enumeration, edge_types })
    }

    pub fn base(&self) -> &Structure {
        &self.base
    }

    pub fn into_base(self) -> Structure {
        self.base
    }

    /// Number of points `k`.
    pub fn k(&self) -> usize {
        self.enumeration.len()
    }

    /// Number of edges `k - 1`.
    pub fn edge_count(&self) -> usize {
        self.enumeration.len() - 1
    }

    /// Universe indices of `p_1..p_k`.
    pub fn enumeration(&self) -> &[usize] {
        &self.enumeration
    }

    /// Universe index of `p_i` (1-based).
    pub fn point(&self, i: usize) -> usize {
        self.enumeration[i - 1]
    }

    /// `e_i = (p_i, p_{i+1})` as universe indices (1-based).
    pub fn edge(&self, i: usize) -> (usize, usize) {
        (self.enumeration[i - 1], self.enumeration[i])
    }

    /// The edge list `e_1..e_{k-1}`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (1..self.k()).map(|i| self.edge(i)).collect()
    }

    /// `atyp(e_i)`.
    pub fn edge_type(&self, i: usize) -> &AtomicType {
        &self.edge_types[i - 1]
    }

    /// `atyp(e_i^{-l})`.
    pub fn edge_type_power(&self, i: usize, l: usize) -> AtomicType {
        let (a, b) = edge_power(self.edge(i), l);
        self.base.atomic_type(a, b)
    }

    pub fn check_point(&self, i: usize) -> Result<(), StructureError> {
        if i == 0 || i > self.k() {
            return Err(StructureError::IndexOutOfRange { index: i, max: self.k() });
        }
        Ok(())
    }

    pub fn check_edge(&self, i: usize) -> Result<(), StructureError> {
        if i == 0 || i >= self.k() {
            return Err(StructureError::IndexOutOfRange { index: i, max: self.k().saturating_sub(1) });
        }
        Ok(())
    }

    /// `P↓i`: the substructure induced on `p_1..p_i`.
    pub fn cut_down(&self, i: usize) -> Result<RootedPathStructure, StructureError> {
        self.check_point(i)?;
        let keep = self.ordered_subset(&self.enumeration[..i]);
        RootedPathStructure::new(self.base.induced(&keep).0)
    }

    /// `P↑i`: the substructure induced on `p_i..p_k` with `p_i` as the new
    /// root.
    pub fn cut_up(&self, i: usize) -> Result<RootedPathStructure, StructureError> {
        self.check_point(i)?;
        let keep = self.ordered_subset(&self.enumeration[i - 1..]);
        let (sub, _) = self.base.induced(&keep);
        let new_root = sub.element(self.base.name(self.point(i))).expect("kept");
        RootedPathStructure::new(sub.with_singleton(ROOT, new_root))
    }

    // Elements of `points` in the base universe order.
    fn ordered_subset(&self, points: &[usize]) -> Vec<usize> {
        let mut mark = vec![false; self.base.len()];
        for &p in points {
            mark[p] = true;
        }
        (0..self.base.len()).filter(|&e| mark[e]).collect()
    }
}

/// Validates `s` as a rooted path structure.
pub fn as_rooted_path(s: Structure) -> Result<RootedPathStructure, StructureError> {
    RootedPathStructure::new(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::{RawStructure, Vocabulary, EDGE};

    fn digraph(n: usize, root: usize, arcs: &[(usize, usize)]) -> Structure {
        Structure::from_indices(
            Vocabulary::rooted_digraph(),
            (1..=n).map(|i| format!("p{i}")).collect(),
            [(ROOT, vec![vec![root]]), (EDGE, arcs.iter().map(|&(a, b)| vec![a, b]).collect())],
        )
        .unwrap()
    }

    #[test]
    fn enumeration_starts_at_root() {
        let p = as_rooted_path(digraph(3, 2, &[(0, 1), (2, 1)])).unwrap();
        assert_eq!(p.enumeration(), &[2, 1, 0]);
        assert_eq!(p.edges(), vec![(2, 1), (1, 0)]);
    }

    #[test]
    fn rejects_triangles_and_inner_roots() {
        let tri = digraph(3, 0, &[(0, 1), (1, 2), (2, 0)]);
        assert!(matches!(as_rooted_path(tri), Err(StructureError::NotAPath(_))));
        let mid = digraph(3, 1, &[(0, 1), (1, 2)]);
        assert!(matches!(as_rooted_path(mid), Err(StructureError::BadRoot(_))));
        let gap = digraph(4, 0, &[(0, 1), (2, 3)]);
        assert!(matches!(as_rooted_path(gap), Err(StructureError::NotAPath(_))));
        let raw = RawStructure {
            vocabulary: [("root".to_string(), 1), ("E".to_string(), 2)].into_iter().collect(),
            universe: vec!["a".into(), "b".into()],
            relations: [("E".to_string(), vec![vec!["a".to_string(), "b".to_string()]])].into_iter().collect(),
        };
        let no_root = Structure::from_raw(&raw).unwrap();
        assert!(matches!(as_rooted_path(no_root), Err(StructureError::BadRoot(_))));
    }

    #[test]
    fn cuts() {
        let p = as_rooted_path(digraph(4, 0, &[(0, 1), (2, 1), (2, 3)])).unwrap();
        assert_eq!(p.cut_down(4).unwrap(), p);
        assert_eq!(p.cut_up(1).unwrap(), p);
        let down = p.cut_down(1).unwrap();
        assert_eq!(down.base().universe(), &["p1".to_string()]);
        let up = p.cut_up(4).unwrap();
        assert_eq!(up.base().universe(), &["p4".to_string()]);
        assert_eq!(up.base().relation(ROOT).unwrap().len(), 1);
        let up2 = p.cut_up(2).unwrap();
        let names: Vec<&str> = up2.enumeration().iter().map(|&e| up2.base().name(e)).collect();
        assert_eq!(names, ["p2", "p3", "p4"]);
        assert!(p.cut_up(0).is_err());
        assert!(p.cut_down(5).is_err());
    }
}
