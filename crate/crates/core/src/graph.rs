//! Simple undirected graphs over dense vertex indices.

use std::fmt;

/// An irreflexive undirected graph on vertex indices `0..capacity`.
///
/// Vertices can be absent, so a graph built over a structure's universe can
/// drop a few elements without renumbering the rest.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    present: Vec<bool>,
    adj: Vec<Vec<usize>>,
}

impl Graph {
    /// A graph on `n` vertices and no edges.
    pub fn new(n: usize) -> Self {
        Graph { present: vec![true; n], adj: vec![Vec::new(); n] }
    }

    /// A graph over indices `0..n` in which only `vertices` are present.
    pub fn with_vertices(n: usize, vertices: impl IntoIterator<Item = usize>) -> Self {
        let mut present = vec![false; n];
        for v in vertices {
            present[v] = true;
        }
        Graph { present, adj: vec![Vec::new(); n] }
    }

    /// Builds a graph on `n` vertices from an edge list. Panics on loops or
    /// out-of-range endpoints.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut g = Graph::new(n);
        for (u, v) in edges {
            assert!(g.add_edge(u, v), "invalid edge ({u}, {v})");
        }
        g
    }

    /// Size of the index space (present or not).
    pub fn capacity(&self) -> usize {
        self.present.len()
    }

    pub fn has_vertex(&self, v: usize) -> bool {
        self.present.get(v).copied().unwrap_or(false)
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> + '_ {
        self.present.iter().enumerate().filter(|(_, &p)| p).map(|(v, _)| v)
    }

    pub fn vertex_count(&self) -> usize {
        self.present.iter().filter(|&&p| p).count()
    }

    /// Adds `{u, v}`. Returns false (and changes nothing) for loops and
    /// absent endpoints; adding an existing edge is a no-op returning true.
    pub fn add_edge(&mut self, u: usize, v: usize) -> bool {
        if u == v || !self.has_vertex(u) || !self.has_vertex(v) {
            return false;
        }
        if !self.adj[u].contains(&v) {
            self.adj[u].push(v);
            self.adj[v].push(u);
        }
        true
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.has_vertex(u) && self.adj[u].contains(&v)
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = self
            .adj
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
            .collect();
        out.sort_unstable();
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Removes all edges but keeps the vertex set and the allocations.
    pub fn clear_edges(&mut self) {
        for ns in &mut self.adj {
            ns.clear();
        }
    }

    /// If the present vertices form a path, returns its enumeration starting
    /// from the endpoint with the smaller index. A single vertex is a path.
    pub fn path_enumeration(&self) -> Option<Vec<usize>> {
        let n = self.vertex_count();
        if n == 0 {
            return None;
        }
        if self.edge_count() != n - 1 {
            return None;
        }
        if n == 1 {
            return self.vertices().next().map(|v| vec![v]);
        }
        let start = self.vertices().find(|&v| self.degree(v) == 1)?;
        let mut order = vec![start];
        let mut prev = usize::MAX;
        let mut cur = start;
        loop {
            if self.degree(cur) > 2 {
                return None;
            }
            let next = self.adj[cur].iter().copied().find(|&w| w != prev);
            match next {
                Some(w) if order.len() < n => {
                    prev = cur;
                    cur = w;
                    order.push(w);
                }
                _ => break,
            }
        }
        (order.len() == n).then_some(order)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("vertices", &self.vertices().collect::<Vec<_>>())
            .field("edges", &self.edges())
            .finish()
    }
}
