//! Lines of a graph metric, good pairs, and the edge / good-pair line families.
//!
//! The line through `u` and `v` is the set of vertices `z` such that one of
//! `u`, `v`, `z` lies on a shortest path between the other two. Lines are
//! identified by their member bitset.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;
use thiserror::Error;

use crate::bitset::VertexSet;
use crate::distance::{apsp, DistanceMatrix};
use crate::graph::{Graph, GraphError};

/// An unordered vertex pair, stored with the smaller vertex first.
pub type Pair = (usize, usize);

#[inline]
pub fn pair(u: usize, v: usize) -> Pair {
    if u <= v {
        (u, v)
    } else {
        (v, u)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LineError {
    #[error("a line needs two distinct vertices, got {0} twice")]
    DegeneratePair(usize),
}

/// A line together with the pairs known to generate it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Line {
    pub members: VertexSet,
    /// Sorted, each pair normalized by [`pair`].
    pub generators: Vec<Pair>,
}

/// A connected graph with its distance matrix and a table of all pair lines.
#[derive(Clone)]
pub struct MetricGraph {
    graph: Graph,
    dist: DistanceMatrix,
    line_table: Vec<VertexSet>,
}

impl MetricGraph {
    pub fn new(graph: Graph) -> Result<Self, GraphError> {
        let dist = apsp(&graph)?;
        let n = graph.n();
        let mut line_table = vec![VertexSet::EMPTY; n * n];
        for u in 0..n {
            for v in u + 1..n {
                let m = dist.line_members(u, v);
                line_table[u * n + v] = m;
                line_table[v * n + u] = m;
            }
        }
        Ok(MetricGraph {
            graph,
            dist,
            line_table,
        })
    }

    #[inline]
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    #[inline]
    pub fn dist(&self) -> &DistanceMatrix {
        &self.dist
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.graph.n()
    }

    #[inline]
    pub fn d(&self, u: usize, v: usize) -> u32 {
        self.dist.get(u, v)
    }

    #[inline]
    pub fn interval(&self, u: usize, v: usize) -> VertexSet {
        self.dist.interval(u, v)
    }

    /// Members of the line through `u != v`.
    #[inline]
    pub fn line_members(&self, u: usize, v: usize) -> VertexSet {
        debug_assert_ne!(u, v);
        self.line_table[u * self.n() + v]
    }

    pub fn line(&self, u: usize, v: usize) -> Result<Line, LineError> {
        if u == v {
            return Err(LineError::DegeneratePair(u));
        }
        Ok(Line {
            members: self.line_members(u, v),
            generators: vec![pair(u, v)],
        })
    }

    #[inline]
    pub fn is_universal(&self, members: VertexSet) -> bool {
        members == self.graph.vertices()
    }

    /// Least common neighbour `c` of `u` and `v` with equal lines `uc` and `cv`,
    /// provided `d(u,v) = 2`.
    pub fn good_pair_witness(&self, u: usize, v: usize) -> Option<usize> {
        if u == v || self.d(u, v) != 2 {
            return None;
        }
        self.graph
            .common_neighbors(u, v)
            .iter()
            .find(|&c| self.line_members(u, c) == self.line_members(c, v))
    }

    pub fn is_good_pair(&self, u: usize, v: usize) -> bool {
        self.good_pair_witness(u, v).is_some()
    }

    /// Lexicographically least pair `u < v` at distance `k` whose line is universal.
    fn universal_pair_at(&self, k: u32) -> Option<Pair> {
        let n = self.n();
        (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .find(|&(u, v)| self.d(u, v) == k && self.is_universal(self.line_members(u, v)))
    }

    pub fn universal_edge(&self) -> Option<Pair> {
        self.universal_pair_at(1)
    }

    /// Least universal pair at distance exactly 2 (any 2-pair, good or not).
    pub fn universal_two_pair(&self) -> Option<Pair> {
        self.universal_pair_at(2)
    }

    /// Every distinct line, with generators grouped and families tagged.
    pub fn all_lines(&self) -> LineFamily {
        let n = self.n();
        let mut entries: BTreeMap<VertexSet, LineEntry> = BTreeMap::new();
        let mut good_pairs = BTreeSet::new();
        for u in 0..n {
            for v in u + 1..n {
                let members = self.line_members(u, v);
                let entry = entries.entry(members).or_insert_with(|| LineEntry {
                    line: Line {
                        members,
                        generators: Vec::new(),
                    },
                    edges: Vec::new(),
                    good_pairs: Vec::new(),
                    two_pairs: Vec::new(),
                });
                entry.line.generators.push((u, v));
                match self.d(u, v) {
                    1 => entry.edges.push((u, v)),
                    2 => {
                        entry.two_pairs.push((u, v));
                        if self.is_good_pair(u, v) {
                            entry.good_pairs.push((u, v));
                            good_pairs.insert((u, v));
                        }
                    }
                    _ => {}
                }
            }
        }
        LineFamily {
            vertices: self.graph.vertices(),
            entries,
            good_pairs,
        }
    }
}

/// Convenience wrapper: lines of a connected graph.
pub fn all_lines(g: &Graph) -> Result<LineFamily, GraphError> {
    Ok(MetricGraph::new(g.clone())?.all_lines())
}

#[derive(Debug, Clone)]
struct LineEntry {
    line: Line,
    edges: Vec<Pair>,
    good_pairs: Vec<Pair>,
    two_pairs: Vec<Pair>,
}

/// Family tag used in reports. A line in both families is reported as `L1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum FamilyTag {
    L1,
    L2,
    #[serde(rename = "other")]
    Other,
}

/// All distinct lines of one graph.
#[derive(Debug, Clone)]
pub struct LineFamily {
    vertices: VertexSet,
    entries: BTreeMap<VertexSet, LineEntry>,
    good_pairs: BTreeSet<Pair>,
}

impl LineFamily {
    /// Number of distinct lines.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Lines in increasing order of member bitset.
    pub fn lines(&self) -> impl Iterator<Item = &Line> {
        self.entries.values().map(|e| &e.line)
    }

    pub fn get(&self, members: VertexSet) -> Option<&Line> {
        self.entries.get(&members).map(|e| &e.line)
    }

    /// Lines generated by at least one edge.
    pub fn l1(&self) -> BTreeSet<VertexSet> {
        self.filtered(|e| !e.edges.is_empty())
    }

    /// Lines generated by at least one good pair.
    pub fn l2(&self) -> BTreeSet<VertexSet> {
        self.filtered(|e| !e.good_pairs.is_empty())
    }

    /// Lines generated by at least one pair at distance exactly 2.
    pub fn two_pair_lines(&self) -> BTreeSet<VertexSet> {
        self.filtered(|e| !e.two_pairs.is_empty())
    }

    fn filtered(&self, keep: impl Fn(&LineEntry) -> bool) -> BTreeSet<VertexSet> {
        self.entries
            .iter()
            .filter(|(_, e)| keep(e))
            .map(|(&m, _)| m)
            .collect()
    }

    pub fn is_universal(&self, members: VertexSet) -> bool {
        members == self.vertices
    }

    pub fn has_universal_line(&self) -> bool {
        self.entries.contains_key(&self.vertices)
    }

    pub fn good_pairs(&self) -> &BTreeSet<Pair> {
        &self.good_pairs
    }

    /// Edges generating the line `members` (empty if it is not a line).
    pub fn edge_generators(&self, members: VertexSet) -> &[Pair] {
        self.entries.get(&members).map_or(&[], |e| &e.edges)
    }

    /// Good pairs generating the line `members`.
    pub fn good_generators(&self, members: VertexSet) -> &[Pair] {
        self.entries.get(&members).map_or(&[], |e| &e.good_pairs)
    }

    pub fn tag(&self, members: VertexSet) -> FamilyTag {
        match self.entries.get(&members) {
            Some(e) if !e.edges.is_empty() => FamilyTag::L1,
            Some(e) if !e.good_pairs.is_empty() => FamilyTag::L2,
            _ => FamilyTag::Other,
        }
    }

    /// Report rows, one per distinct line.
    pub fn records(&self) -> Vec<LineRecord> {
        self.entries
            .values()
            .map(|e| LineRecord {
                members: e.line.members,
                generators: e.line.generators.clone(),
                family: self.tag(e.line.members),
                universal: self.is_universal(e.line.members),
            })
            .collect()
    }
}

/// JSON shape of one line in reports.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LineRecord {
    pub members: VertexSet,
    pub generators: Vec<Pair>,
    pub family: FamilyTag,
    pub universal: bool,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;

    fn mg(g: Graph) -> MetricGraph {
        MetricGraph::new(g).unwrap()
    }

    fn set(v: &[usize]) -> VertexSet {
        v.iter().copied().collect()
    }

    #[test]
    fn line_examples() {
        let c4 = mg(named::cycle(4));
        assert_eq!(c4.line(0, 1).unwrap().members, set(&[0, 1, 2, 3]));
        assert!(c4.is_universal(c4.line_members(0, 1)));
        let k3 = mg(named::complete(3));
        assert_eq!(k3.line(0, 1).unwrap().members, set(&[0, 1]));
        assert!(!k3.is_universal(k3.line_members(0, 1)));
        let c5 = mg(named::cycle(5));
        assert_eq!(c5.line(0, 1).unwrap().members, set(&[0, 1, 2, 4]));
        assert_eq!(c5.line(1, 1), Err(LineError::DegeneratePair(1)));
        let p3 = mg(named::path(3));
        assert!(p3.is_universal(p3.line_members(0, 1)));
    }

    #[test]
    fn good_pair_examples() {
        let c4 = mg(named::cycle(4));
        assert!(c4.is_good_pair(0, 2));
        assert!(!c4.is_good_pair(0, 1));
        let k3 = mg(named::complete(3));
        assert!(!k3.is_good_pair(0, 1));
        // Both edge lines of P4 touching vertex 1 are universal.
        let p4 = mg(named::path(4));
        assert_eq!(p4.good_pair_witness(0, 2), Some(1));
    }

    #[test]
    fn family_sizes() {
        let k3 = mg(named::complete(3)).all_lines();
        assert_eq!(k3.len(), 3);
        assert!(k3.lines().all(|l| l.members.len() == 2));
        let c5 = mg(named::cycle(5)).all_lines();
        assert_eq!(c5.len(), 10);
        assert_eq!(c5.lines().filter(|l| l.members.len() == 4).count(), 5);
        assert_eq!(c5.lines().filter(|l| l.members.len() == 3).count(), 5);
    }

    #[test]
    fn universal_pairs() {
        let p3 = mg(named::path(3));
        assert_eq!(p3.universal_edge(), Some((0, 1)));
        let k3 = mg(named::complete(3));
        assert_eq!(k3.universal_edge(), None);
        assert_eq!(k3.universal_two_pair(), None);
    }

    #[test]
    fn records_tag_families() {
        let fam = mg(named::cycle(4)).all_lines();
        let recs = fam.records();
        // Every C4 line is universal: the single line carries all 6 pairs.
        assert_eq!(recs.len(), 1);
        assert_eq!(recs[0].family, FamilyTag::L1);
        assert!(recs[0].universal);
        let json = serde_json::to_string(&recs[0]).unwrap();
        assert_eq!(
            json,
            r#"{"members":[0,1,2,3],"generators":[[0,1],[0,2],[0,3],[1,2],[1,3],[2,3]],"family":"L1","universal":true}"#
        );
    }
}
