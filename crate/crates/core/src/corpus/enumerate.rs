use std::collections::BTreeMap;

use rayon::prelude::*;

use super::canon::{canonical_form, CanonicalCode};
use super::CorpusError;
use crate::bitset::VertexSet;
use crate::graph::Graph;

/// Largest order the builtin enumerator handles; larger corpora come from a
/// graph6 stream produced by an external generator.
pub const BUILTIN_MAX_ORDER: usize = 8;

fn check_order(n: usize) -> Result<(), CorpusError> {
    if n == 0 || n > BUILTIN_MAX_ORDER {
        return Err(CorpusError::ScaleLimit {
            n,
            max: BUILTIN_MAX_ORDER,
        });
    }
    Ok(())
}

/// One representative per isomorphism class of connected graphs on `n`
/// vertices, canonically labeled, in canonical-code order.
pub fn enumerate_connected(n: usize) -> Result<Vec<Graph>, CorpusError> {
    check_order(n)?;
    Ok(grow(n, true))
}

/// One representative per isomorphism class of all graphs on `n` vertices.
pub fn enumerate_graphs(n: usize) -> Result<Vec<Graph>, CorpusError> {
    check_order(n)?;
    Ok(grow(n, false))
}

/// Every connected graph has a vertex whose removal leaves it connected, so
/// adding a vertex with a nonempty neighbourhood to each connected graph on
/// `n - 1` vertices reaches every class on `n`. Without the connectivity
/// requirement any neighbourhood is allowed.
fn grow(n: usize, connected: bool) -> Vec<Graph> {
    let mut level = vec![Graph::empty(1).expect("one vertex")];
    for k in 2..=n {
        let parents = level;
        let first_subset = u64::from(connected);
        let children: Vec<(CanonicalCode, Graph)> = parents
            .par_iter()
            .flat_map_iter(|p| (first_subset..1u64 << (k - 1)).map(move |s| extend(p, VertexSet::from_bits(s))))
            .map(|g| {
                let (c, code) = canonical_form(&g);
                (code, c)
            })
            .collect();
        let unique: BTreeMap<CanonicalCode, Graph> = children.into_iter().collect();
        level = unique.into_values().collect();
    }
    level
}

fn extend(g: &Graph, neighbours: VertexSet) -> Graph {
    let k = g.n();
    let mut adj: Vec<VertexSet> = g.adjacency().to_vec();
    for v in neighbours.iter() {
        adj[v].insert(k);
    }
    adj.push(neighbours);
    Graph::from_adjacency(adj).expect("extension stays simple")
}

/// Every labeled graph on `n` vertices, one per edge subset, in increasing
/// order of the edge mask over the lexicographic list of vertex pairs.
pub fn labeled_graphs(n: usize) -> Result<LabeledGraphs, CorpusError> {
    check_order(n)?;
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    Ok(LabeledGraphs {
        n,
        end: 1u64 << pairs.len(),
        pairs,
        next: 0,
    })
}

#[derive(Debug, Clone)]
pub struct LabeledGraphs {
    n: usize,
    pairs: Vec<(usize, usize)>,
    next: u64,
    end: u64,
}

impl Iterator for LabeledGraphs {
    type Item = Graph;

    fn next(&mut self) -> Option<Graph> {
        if self.next == self.end {
            return None;
        }
        let mask = self.next;
        self.next += 1;
        let edges = self
            .pairs
            .iter()
            .enumerate()
            .filter(|&(i, _)| mask >> i & 1 == 1)
            .map(|(_, &e)| e);
        Some(Graph::from_edges(self.n, edges).expect("pairs are in range"))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.end - self.next) as usize;
        (left, Some(left))
    }
}

impl ExactSizeIterator for LabeledGraphs {}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_connected_counts() {
        let counts: Vec<usize> = (1..=6).map(|n| enumerate_connected(n).unwrap().len()).collect();
        assert_eq!(counts, [1, 1, 2, 6, 21, 112]);
    }

    #[test]
    fn small_total_counts() {
        let counts: Vec<usize> = (1..=5).map(|n| enumerate_graphs(n).unwrap().len()).collect();
        assert_eq!(counts, [1, 2, 4, 11, 34]);
    }

    #[test]
    fn order_limits() {
        assert!(matches!(enumerate_connected(9), Err(CorpusError::ScaleLimit { n: 9, .. })));
        assert!(matches!(enumerate_connected(0), Err(CorpusError::ScaleLimit { n: 0, .. })));
        assert!(labeled_graphs(11).is_err());
    }

    #[test]
    fn labeled_count() {
        assert_eq!(labeled_graphs(4).unwrap().count(), 64);
        let connected = labeled_graphs(4).unwrap().filter(Graph::is_connected).count();
        assert_eq!(connected, 38);
    }
}
