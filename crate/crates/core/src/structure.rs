//! Forbidden induced subgraphs (house, hole), C4-modules and the reduction
//! that strips C4-modules one vertex at a time.

use itertools::Itertools;
use serde::Serialize;
use thiserror::Error;

use crate::bitset::VertexSet;
use crate::format::to_graph6;
use crate::graph::{Graph, GraphError};
use crate::lines::MetricGraph;

/// Largest graph accepted by the subset-enumeration hole finder.
pub const HOLE_SEARCH_LIMIT: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error("hole search supports at most {HOLE_SEARCH_LIMIT} vertices, got {0}")]
    ScaleLimit(usize),
    #[error("precondition unmet: {0}")]
    PreconditionUnmet(String),
    #[error("removing vertex {0} of a C4-module disconnected the graph")]
    DisconnectedAfterRemoval(usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Least 5-subset (lexicographically) inducing a house.
pub fn find_house(g: &Graph) -> Option<VertexSet> {
    if g.n() < 5 {
        return None;
    }
    (0..g.n())
        .filter(|&v| g.degree(v) >= 2)
        .combinations(5)
        .map(|c| c.into_iter().collect::<VertexSet>())
        .find(|&s| induces_house(g, s))
}

/// Degree sequence (3,3,2,2,2) with the two degree-3 vertices adjacent forces
/// a house; non-adjacent degree-3 vertices would give K_{2,3} instead.
fn induces_house(g: &Graph, s: VertexSet) -> bool {
    let mut deg3 = VertexSet::EMPTY;
    for v in s {
        match g.neighbors(v).intersection(s).len() {
            2 => {}
            3 => deg3.insert(v),
            _ => return false,
        }
    }
    if deg3.len() != 2 {
        return false;
    }
    let a = deg3.first().expect("two members");
    g.has_edge(a, deg3.without(a).first().expect("two members"))
}

/// Smallest hole (chordless cycle on at least 5 vertices), least subset first
/// among those of minimum size.
pub fn find_hole(g: &Graph) -> Result<Option<VertexSet>, StructureError> {
    if g.n() > HOLE_SEARCH_LIMIT {
        return Err(StructureError::ScaleLimit(g.n()));
    }
    let candidates: Vec<usize> = (0..g.n()).filter(|&v| g.degree(v) >= 2).collect();
    for k in 5..=candidates.len() {
        let mut search = HoleSearch {
            g,
            candidates: &candidates,
            size: k,
        };
        if let Some(s) = search.descend(0, VertexSet::EMPTY) {
            return Ok(Some(s));
        }
    }
    Ok(None)
}

struct HoleSearch<'a> {
    g: &'a Graph,
    candidates: &'a [usize],
    size: usize,
}

impl HoleSearch<'_> {
    fn descend(&mut self, next: usize, chosen: VertexSet) -> Option<VertexSet> {
        if chosen.len() == self.size {
            let two_regular = chosen
                .iter()
                .all(|v| self.g.neighbors(v).intersection(chosen).len() == 2);
            return (two_regular && self.g.is_connected_within(chosen)).then_some(chosen);
        }
        let needed = self.size - chosen.len();
        if self.candidates.len() - next < needed {
            return None;
        }
        for i in next..=self.candidates.len() - needed {
            let v = self.candidates[i];
            let with = chosen.with(v);
            // Induced degrees only grow as vertices are added.
            if self.g.neighbors(v).intersection(chosen).len() > 2
                || chosen
                    .intersection(self.g.neighbors(v))
                    .iter()
                    .any(|w| self.g.neighbors(w).intersection(with).len() > 2)
            {
                continue;
            }
            if let Some(found) = self.descend(i + 1, with) {
                return Some(found);
            }
        }
        None
    }
}

pub fn is_hh_free(g: &Graph) -> Result<bool, StructureError> {
    Ok(find_house(g).is_none() && find_hole(g)?.is_none())
}

pub fn is_hole_free(g: &Graph) -> Result<bool, StructureError> {
    Ok(find_hole(g)?.is_none())
}

/// An induced 4-cycle `x0-x1-x2-x3-x0` whose vertex set is a module: every
/// other vertex sees all four or none of them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct C4Module {
    pub cycle: [usize; 4],
}

impl C4Module {
    pub fn vertices(&self) -> VertexSet {
        self.cycle.iter().copied().collect()
    }

    /// Checks both defining conditions against `g`.
    pub fn is_valid_in(&self, g: &Graph) -> bool {
        let s = self.vertices();
        s.len() == 4
            && (0..4).all(|i| {
                let (a, b, c) = (self.cycle[i], self.cycle[(i + 1) % 4], self.cycle[(i + 2) % 4]);
                g.has_edge(a, b) && !g.has_edge(a, c)
            })
            && is_module(g, s)
    }
}

/// If `s` induces a 4-cycle, returns it as `(x0, x1, x2, x3)` with `x0 = min s`
/// and `x1 < x3`.
fn induced_c4(g: &Graph, s: VertexSet) -> Option<[usize; 4]> {
    if s.len() != 4 || !s.iter().all(|v| g.neighbors(v).intersection(s).len() == 2) {
        return None;
    }
    // The only 2-regular graph on four vertices is C4.
    let x0 = s.first()?;
    let nb = g.neighbors(x0).intersection(s);
    let x1 = nb.first()?;
    let x3 = nb.without(x1).first()?;
    let x2 = s.difference(nb).without(x0).first()?;
    Some([x0, x1, x2, x3])
}

fn is_module(g: &Graph, s: VertexSet) -> bool {
    g.vertices()
        .difference(s)
        .iter()
        .all(|z| {
            let seen = g.neighbors(z).intersection(s);
            seen.is_empty() || seen == s
        })
}

/// Every induced 4-cycle, in lexicographic order of vertex sets.
pub fn induced_c4s(g: &Graph) -> Vec<[usize; 4]> {
    (0..g.n())
        .filter(|&v| g.degree(v) >= 2)
        .combinations(4)
        .filter_map(|c| induced_c4(g, c.into_iter().collect()))
        .collect()
}

pub fn all_c4_modules(g: &Graph) -> Vec<C4Module> {
    induced_c4s(g)
        .into_iter()
        .filter(|c| is_module(g, c.iter().copied().collect()))
        .map(|cycle| C4Module { cycle })
        .collect()
}

/// Lexicographically least C4-module. A C4 with no outside vertex counts.
pub fn find_c4_module(g: &Graph) -> Option<C4Module> {
    (0..g.n())
        .filter(|&v| g.degree(v) >= 2)
        .combinations(4)
        .filter_map(|c| induced_c4(g, c.into_iter().collect()))
        .find(|c| is_module(g, c.iter().copied().collect()))
        .map(|cycle| C4Module { cycle })
}

/// One removal step, in the labels of the original graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReductionStep {
    pub vertex: usize,
    pub module: C4Module,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionTrace {
    pub removed: Vec<ReductionStep>,
    /// The irreducible graph, relabelled `0..result.n()`.
    pub result: Graph,
    /// `labels[i]` is the original label of result vertex `i`.
    pub labels: Vec<usize>,
}

impl ReductionTrace {
    /// Graphs visited by the reduction, original first, irreducible last.
    pub fn chain(&self, original: &Graph) -> Result<Vec<Graph>, GraphError> {
        let mut out = vec![original.clone()];
        let mut present = original.vertices();
        for step in &self.removed {
            present.remove(step.vertex);
            out.push(original.induced_subgraph(present)?);
        }
        Ok(out)
    }
}

impl Serialize for ReductionTrace {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = serializer.serialize_struct("ReductionTrace", 2)?;
        st.serialize_field("removed", &self.removed)?;
        st.serialize_field("result_graph6", &to_graph6(&self.result))?;
        st.end()
    }
}

/// Repeatedly deletes `x0` (the least vertex) of the least C4-module until
/// none is left.
pub fn reduce_c4_modules(g: &Graph) -> Result<ReductionTrace, StructureError> {
    g.ensure_connected()?;
    let mut current = g.clone();
    let mut labels: Vec<usize> = (0..g.n()).collect();
    let mut removed = Vec::new();
    while let Some(module) = find_c4_module(&current) {
        let x0 = module.cycle[0];
        let next = current.without_vertex(x0)?;
        if !next.is_connected() {
            return Err(StructureError::DisconnectedAfterRemoval(labels[x0]));
        }
        removed.push(ReductionStep {
            vertex: labels[x0],
            module: C4Module {
                cycle: module.cycle.map(|v| labels[v]),
            },
        });
        labels.remove(x0);
        current = next;
    }
    Ok(ReductionTrace {
        removed,
        result: current,
        labels,
    })
}

/// For a cycle `(x1, .., xk)` with `k >= 5`, chord `x2xk`, and `x1`, `x2`
/// without further neighbours on the cycle, reports whether `x3xk` is an edge.
///
/// The graph must be {house, hole}-free; any unmet hypothesis is an error.
pub fn check_roof(g: &Graph, cycle: &[usize]) -> Result<bool, StructureError> {
    if !is_hh_free(g)? {
        return Err(StructureError::PreconditionUnmet("graph is not {house, hole}-free".into()));
    }
    check_roof_unchecked(g, cycle)
}

fn unmet(msg: &str) -> StructureError {
    StructureError::PreconditionUnmet(msg.into())
}

fn check_roof_unchecked(g: &Graph, cycle: &[usize]) -> Result<bool, StructureError> {
    let k = cycle.len();
    if k < 5 {
        return Err(unmet("cycle must have at least 5 vertices"));
    }
    if let Some(&v) = cycle.iter().find(|&&v| v >= g.n()) {
        return Err(GraphError::VertexOutOfRange { vertex: v, n: g.n() }.into());
    }
    let on_cycle: VertexSet = cycle.iter().copied().collect();
    if on_cycle.len() != k {
        return Err(unmet("cycle repeats a vertex"));
    }
    if !(0..k).all(|i| g.has_edge(cycle[i], cycle[(i + 1) % k])) {
        return Err(unmet("consecutive vertices must be adjacent"));
    }
    let (x1, x2, x3, xk) = (cycle[0], cycle[1], cycle[2], cycle[k - 1]);
    if !g.has_edge(x2, xk) {
        return Err(unmet("x2xk must be an edge"));
    }
    let expect_x1: VertexSet = [x2, xk].into_iter().collect();
    let expect_x2: VertexSet = [x1, x3, xk].into_iter().collect();
    if g.neighbors(x1).intersection(on_cycle) != expect_x1
        || g.neighbors(x2).intersection(on_cycle) != expect_x2
    {
        return Err(unmet("x1 or x2 has another neighbour on the cycle"));
    }
    Ok(g.has_edge(x3, xk))
}

/// Outcome of scanning all cycles that satisfy the roof hypotheses.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RoofScan {
    /// Number of `(x1, x2, x3, xk)` configurations admitting such a cycle.
    pub configurations: usize,
    /// First configuration seen, as a full cycle.
    pub example: Option<Vec<usize>>,
    /// First cycle violating the conclusion (no `x3xk` edge).
    pub violation: Option<Vec<usize>>,
}

/// Enumerates roof configurations: a triangle `x1 x2 xk`, a neighbour `x3` of
/// `x2` outside `N[x1]`, and a path from `x3` to `xk` whose inner vertices
/// avoid `N[x1] ∪ N[x2]`. Every hypothesis-satisfying cycle has this shape.
pub fn scan_roof_cycles(g: &Graph) -> RoofScan {
    let mut scan = RoofScan::default();
    for x1 in 0..g.n() {
        for x2 in g.neighbors(x1) {
            let closed1 = g.neighbors(x1).with(x1);
            let closed2 = g.neighbors(x2).with(x2);
            let inner = g.vertices().difference(closed1.union(closed2));
            for xk in g.common_neighbors(x1, x2) {
                for x3 in g.neighbors(x2).difference(closed1).without(xk) {
                    let Some(path) = inner_path(g, x3, xk, inner) else {
                        continue;
                    };
                    let mut cycle = vec![x1, x2];
                    cycle.extend(path);
                    scan.configurations += 1;
                    if scan.example.is_none() {
                        scan.example = Some(cycle.clone());
                    }
                    if !g.has_edge(x3, xk) && scan.violation.is_none() {
                        scan.violation = Some(cycle);
                    }
                }
            }
        }
    }
    scan
}

/// Shortest path `from, w1, .., wm, to` with `m >= 1` and every `wi` in `inner`.
fn inner_path(g: &Graph, from: usize, to: usize, inner: VertexSet) -> Option<Vec<usize>> {
    let mut parent = [usize::MAX; 64];
    let mut seen = g.neighbors(from).intersection(inner);
    for w in seen {
        parent[w] = from;
    }
    let mut frontier = seen;
    loop {
        if let Some(end) = frontier.intersection(g.neighbors(to)).first() {
            let mut path = vec![to, end];
            let mut cur = end;
            while parent[cur] != from {
                cur = parent[cur];
                path.push(cur);
            }
            path.push(from);
            path.reverse();
            return Some(path);
        }
        let mut next = VertexSet::EMPTY;
        for v in frontier {
            for w in g.neighbors(v).intersection(inner).difference(seen) {
                if !next.contains(w) {
                    parent[w] = v;
                    next.insert(w);
                }
            }
        }
        if next.is_empty() {
            return None;
        }
        seen = seen.union(next);
        frontier = next;
    }
}

/// A vertex `z` at distance `k` from two consecutive vertices of an induced
/// 4-cycle and at distance `k + 1` from the other two.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct C4DistanceViolation {
    pub cycle: [usize; 4],
    pub vertex: usize,
}

pub fn c4_distance_violation(mg: &MetricGraph) -> Option<C4DistanceViolation> {
    for cycle in induced_c4s(mg.graph()) {
        for z in 0..mg.n() {
            for i in 0..4 {
                let d = |j: usize| mg.d(z, cycle[(i + j) % 4]);
                let k = d(0);
                if d(1) == k && d(2).min(d(3)) > k {
                    return Some(C4DistanceViolation { cycle, vertex: z });
                }
            }
        }
    }
    None
}

/// True when no vertex contradicts the 4-cycle distance lemma.
pub fn check_c4_distance_lemma(mg: &MetricGraph) -> bool {
    c4_distance_violation(mg).is_none()
}
