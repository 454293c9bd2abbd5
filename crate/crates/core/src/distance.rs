//! All-pairs shortest-path distances by bitset breadth-first search.

use crate::bitset::VertexSet;
use crate::graph::{Graph, GraphError};

/// Shortest-path lengths (in edges) of a connected graph. `d[u][v] <= n - 1 < 64`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DistanceMatrix {
    n: usize,
    d: Vec<u8>,
}

/// Computes exact distances for every ordered pair.
///
/// Fails with the least unreachable pair `(u, v)` if the graph is disconnected.
pub fn apsp(g: &Graph) -> Result<DistanceMatrix, GraphError> {
    let n = g.n();
    if n == 0 {
        return Err(GraphError::EmptySet);
    }
    let all = g.vertices();
    let mut d = vec![0u8; n * n];
    for s in 0..n {
        let row = &mut d[s * n..(s + 1) * n];
        let mut seen = VertexSet::singleton(s);
        let mut frontier = seen;
        let mut level = 0u8;
        while !frontier.is_empty() {
            level += 1;
            let mut next = VertexSet::EMPTY;
            for v in frontier {
                next = next.union(g.neighbors(v));
            }
            frontier = next.difference(seen);
            for v in frontier {
                row[v] = level;
            }
            seen = seen.union(frontier);
        }
        if let Some(v) = all.difference(seen).first() {
            return Err(GraphError::Disconnected(s.min(v), s.max(v)));
        }
    }
    Ok(DistanceMatrix { n, d })
}

impl DistanceMatrix {
    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, u: usize, v: usize) -> u32 {
        self.d[u * self.n + v] as u32
    }

    /// Row `u` as a slice of distances.
    #[inline]
    pub fn row(&self, u: usize) -> &[u8] {
        &self.d[u * self.n..(u + 1) * self.n]
    }

    pub fn diameter(&self) -> u32 {
        self.d.iter().copied().max().unwrap_or(0) as u32
    }

    /// `d(u,v) = d(u,z) + d(z,v)`.
    #[inline]
    pub fn is_between(&self, z: usize, u: usize, v: usize) -> bool {
        self.get(u, v) == self.get(u, z) + self.get(z, v)
    }

    /// One of the three vertices lies between the other two.
    #[inline]
    pub fn collinear(&self, u: usize, v: usize, z: usize) -> bool {
        self.is_between(z, u, v) || self.is_between(u, z, v) || self.is_between(v, u, z)
    }

    /// `I(u,v)`: every vertex between `u` and `v`, endpoints included.
    pub fn interval(&self, u: usize, v: usize) -> VertexSet {
        let (ru, rv) = (self.row(u), self.row(v));
        let duv = ru[v];
        (0..self.n).filter(|&z| ru[z] + rv[z] == duv).collect()
    }

    /// Members of the line through `u` and `v`: every `z` collinear with them.
    pub fn line_members(&self, u: usize, v: usize) -> VertexSet {
        let (ru, rv) = (self.row(u), self.row(v));
        let duv = ru[v];
        (0..self.n)
            .filter(|&z| {
                let (a, b) = (ru[z], rv[z]);
                a + b == duv || a == duv + b || b == duv + a
            })
            .collect()
    }

    /// Vertices at distance exactly `k` from `u`.
    pub fn sphere(&self, u: usize, k: u32) -> VertexSet {
        let r = self.row(u);
        (0..self.n).filter(|&z| r[z] as u32 == k).collect()
    }
}

impl std::fmt::Debug for DistanceMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_list().entries((0..self.n).map(|u| self.row(u))).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;

    #[test]
    fn cycle_and_path_distances() {
        let c5 = apsp(&named::cycle(5)).unwrap();
        assert_eq!(c5.get(0, 2), 2);
        assert_eq!(c5.get(0, 3), 2);
        let p4 = apsp(&named::path(4)).unwrap();
        assert_eq!(p4.get(0, 3), 3);
        assert_eq!(p4.diameter(), 3);
    }

    #[test]
    fn disconnected_is_an_error() {
        let g = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(apsp(&g), Err(GraphError::Disconnected(0, 2)));
    }

    #[test]
    fn single_vertex() {
        let dm = apsp(&named::complete(1)).unwrap();
        assert_eq!(dm.get(0, 0), 0);
    }

    #[test]
    fn betweenness_examples() {
        let p3 = apsp(&named::path(3)).unwrap();
        assert!(p3.is_between(1, 0, 2));
        assert!(p3.collinear(0, 2, 1));
        assert_eq!(p3.interval(0, 2).to_vec(), vec![0, 1, 2]);
        let c5 = apsp(&named::cycle(5)).unwrap();
        // d(0,1)=1, d(0,3)=2, d(3,1)=2
        assert!(!c5.is_between(3, 0, 1));
        assert!(!c5.collinear(0, 1, 3));
        for u in 0..5 {
            for v in 0..5 {
                assert!(c5.is_between(u, u, v));
                assert!(c5.collinear(u, v, u));
            }
        }
        let k3 = apsp(&named::complete(3)).unwrap();
        assert_eq!(k3.interval(0, 1).to_vec(), vec![0, 1]);
        let c4 = apsp(&named::cycle(4)).unwrap();
        assert_eq!(c4.interval(0, 2).to_vec(), vec![0, 1, 2, 3]);
    }
}
