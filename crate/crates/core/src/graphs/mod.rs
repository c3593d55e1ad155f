//! Exact graph invariants: (weighted) independence number, independence
//! degree, minimal independence number, maximal cliques and the fractional
//! packing number.

mod bitset;
pub mod cliques;
pub mod dimacs;
pub mod mis;
pub mod packing;

pub use bitset::BitSet;
pub use cliques::maximal_cliques;
pub use mis::{
    independence_degree, independence_number, minimal_independence_number,
    min_degree_below, BranchAndBound, BruteForce, MisOptions, MisProblem, MisResult, MisSolver,
    MinimalIndependence,
};
pub use packing::fractional_packing_number;

/// Vertex cap applied to exact solver instances unless overridden.
pub const DEFAULT_VERTEX_CAP: usize = 2000;

/// Simple undirected graph stored as a symmetric bitset adjacency matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<BitSet>,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph {
            adj: vec![BitSet::new(n); n],
        }
    }

    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut g = Self::new(n);
        for (u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Self::new(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v);
            }
        }
        g
    }

    pub fn num_vertices(&self) -> usize {
        self.adj.len()
    }

    /// Adds `{u, v}`; self-loops are ignored.
    pub fn add_edge(&mut self, u: usize, v: usize) {
        if u != v {
            self.adj[u].insert(v);
            self.adj[v].insert(u);
        }
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &BitSet {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count()
    }

    pub fn num_edges(&self) -> usize {
        self.adj.iter().map(BitSet::count).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v` in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, n)| n.iter().filter(move |&v| v > u).map(move |v| (u, v)))
    }

    /// Induced subgraph on `keep`, renumbered in the given order.
    pub fn induced(&self, keep: &[usize]) -> Graph {
        let mut g = Graph::new(keep.len());
        for (i, &u) in keep.iter().enumerate() {
            for (j, &v) in keep.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    pub fn complement(&self) -> Graph {
        let n = self.num_vertices();
        let mut g = Graph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                if !self.has_edge(u, v) {
                    g.add_edge(u, v);
                }
            }
        }
        g
    }

    pub fn is_independent(&self, set: &[usize]) -> bool {
        set.iter()
            .enumerate()
            .all(|(i, &u)| set[i + 1..].iter().all(|&v| u != v && !self.has_edge(u, v)))
    }

    pub fn is_clique(&self, set: &[usize]) -> bool {
        set.iter()
            .enumerate()
            .all(|(i, &u)| set[i + 1..].iter().all(|&v| self.has_edge(u, v)))
    }

    /// Vertices other than `v` not adjacent to `v`.
    pub fn non_neighbors(&self, v: usize) -> BitSet {
        let mut s = BitSet::full(self.num_vertices());
        s.difference_with(&self.adj[v]);
        s.remove(v);
        s
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph({} vertices, {} edges)", self.num_vertices(), self.num_edges())
    }
}
