//! Simple undirected graphs on at most 64 vertices, stored as adjacency bitsets.

use thiserror::Error;

use crate::bitset::{VertexSet, MAX_VERTICES};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("malformed encoding: {0}")]
    MalformedEncoding(String),
    #[error("graph has {0} vertices; at most {MAX_VERTICES} are supported")]
    TooLarge(usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("token {0:?} is not a non-negative integer")]
    NonInteger(String),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("vertex set is empty")]
    EmptySet,
    #[error("graph is disconnected: vertices {0} and {1} are not joined by a path")]
    Disconnected(usize, usize),
}

/// An immutable-by-convention simple graph. Vertices are `0..n`.
///
/// Adjacency is symmetric and irreflexive. Connectivity is not enforced here;
/// metric operations check it when building a distance matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<VertexSet>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self, GraphError> {
        if n > MAX_VERTICES {
            return Err(GraphError::TooLarge(n));
        }
        Ok(Graph {
            n,
            adj: vec![VertexSet::EMPTY; n],
        })
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::empty(n)?;
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Builds a graph from raw neighbourhood bitsets, checking symmetry and range.
    pub fn from_adjacency(adj: Vec<VertexSet>) -> Result<Self, GraphError> {
        let n = adj.len();
        if n > MAX_VERTICES {
            return Err(GraphError::TooLarge(n));
        }
        let all = VertexSet::full(n);
        for (u, &nu) in adj.iter().enumerate() {
            if nu.contains(u) {
                return Err(GraphError::SelfLoop(u));
            }
            if let Some(v) = nu.difference(all).first() {
                return Err(GraphError::VertexOutOfRange { vertex: v, n });
            }
            for v in nu {
                if !adj[v].contains(u) {
                    return Err(GraphError::MalformedEncoding(format!(
                        "asymmetric adjacency between {u} and {v}"
                    )));
                }
            }
        }
        Ok(Graph { n, adj })
    }

    pub(crate) fn add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        for w in [u, v] {
            if w >= self.n {
                return Err(GraphError::VertexOutOfRange { vertex: w, n: self.n });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        self.adj[u].insert(v);
        self.adj[v].insert(u);
        Ok(())
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> VertexSet {
        self.adj[v]
    }

    #[inline]
    pub fn adjacency(&self) -> &[VertexSet] {
        &self.adj
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|s| s.len()).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| {
            self.adj[u]
                .difference(VertexSet::full(u + 1))
                .iter()
                .map(move |v| (u, v))
        })
    }

    /// `{ w : wu and wv are edges }`.
    #[inline]
    pub fn common_neighbors(&self, u: usize, v: usize) -> VertexSet {
        self.adj[u].intersection(self.adj[v])
    }

    /// Vertices reachable from `start` using only vertices of `within`.
    pub fn reach_within(&self, start: usize, within: VertexSet) -> VertexSet {
        let mut seen = VertexSet::singleton(start);
        let mut frontier = seen;
        while !frontier.is_empty() {
            let mut next = VertexSet::EMPTY;
            for v in frontier {
                next = next.union(self.adj[v]);
            }
            frontier = next.intersection(within).difference(seen);
            seen = seen.union(frontier);
        }
        seen
    }

    /// Whether the subgraph induced by `s` is connected (the empty set is not).
    pub fn is_connected_within(&self, s: VertexSet) -> bool {
        match s.first() {
            None => false,
            Some(v) => self.reach_within(v, s) == s,
        }
    }

    /// The null graph counts as disconnected.
    pub fn is_connected(&self) -> bool {
        self.is_connected_within(self.vertices())
    }

    /// Fails with the least unreachable pair when the graph is disconnected.
    pub fn ensure_connected(&self) -> Result<(), GraphError> {
        if self.n == 0 {
            return Err(GraphError::EmptySet);
        }
        let reach = self.reach_within(0, self.vertices());
        match self.vertices().difference(reach).first() {
            None => Ok(()),
            Some(v) => Err(GraphError::Disconnected(0, v)),
        }
    }

    /// Subgraph induced by `s`, relabelled `0..|s|` in increasing vertex order.
    pub fn induced_subgraph(&self, s: VertexSet) -> Result<Graph, GraphError> {
        if s.is_empty() {
            return Err(GraphError::EmptySet);
        }
        if let Some(v) = s.difference(self.vertices()).first() {
            return Err(GraphError::VertexOutOfRange { vertex: v, n: self.n });
        }
        let kept = s.to_vec();
        let mut index = [usize::MAX; MAX_VERTICES];
        for (i, &v) in kept.iter().enumerate() {
            index[v] = i;
        }
        let adj = kept
            .iter()
            .map(|&v| self.adj[v].intersection(s).iter().map(|w| index[w]).collect())
            .collect();
        Ok(Graph { n: kept.len(), adj })
    }

    /// Removes one vertex; the others keep their relative order.
    pub fn without_vertex(&self, v: usize) -> Result<Graph, GraphError> {
        self.induced_subgraph(self.vertices().without(v))
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n);
        let mut adj = vec![VertexSet::EMPTY; self.n];
        for (u, v) in self.edges() {
            adj[perm[u]].insert(perm[v]);
            adj[perm[v]].insert(perm[u]);
        }
        Graph { n: self.n, adj }
    }

    /// Number of edges inside `s`.
    pub fn edges_within(&self, s: VertexSet) -> usize {
        s.iter().map(|v| self.adj[v].intersection(s).len()).sum::<usize>() / 2
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, edges=", self.n)?;
        f.debug_list().entries(self.edges()).finish()?;
        write!(f, ")")
    }
}

/// Named small graphs used by tests, examples and the CLI fixtures.
pub mod named {
    use super::Graph;

    pub fn path(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).expect("valid path")
    }

    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3);
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).expect("valid cycle")
    }

    pub fn complete(n: usize) -> Graph {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        Graph::from_edges(n, edges).expect("valid complete graph")
    }

    /// 5-cycle 0-1-2-3-4 with the chord 1-4; 0 is the roof apex.
    pub fn house() -> Graph {
        Graph::from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (1, 4)]).expect("valid house")
    }

    /// K4 minus the edge 2-3.
    pub fn diamond() -> Graph {
        Graph::from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)]).expect("valid diamond")
    }

    pub fn petersen() -> Graph {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
        }
        Graph::from_edges(10, edges).expect("valid Petersen graph")
    }

    /// Two disjoint 4-cycles (0-1-2-3, 4-5-6-7) and a vertex 8 adjacent to all.
    pub fn two_c4_plus_apex() -> Graph {
        let mut edges = vec![(0, 1), (1, 2), (2, 3), (3, 0), (4, 5), (5, 6), (6, 7), (7, 4)];
        edges.extend((0..8).map(|v| (v, 8)));
        Graph::from_edges(9, edges).expect("valid fixture")
    }
}
