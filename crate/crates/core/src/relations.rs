//! The three ways two vertex pairs can generate the same line, and parallelograms.
//!
//! * alpha: some shortest path contains both pairs;
//! * beta: both pairs are edges and form opposite sides of a parallelogram;
//! * gamma: the pairs interleave as a parallelogram `(u, x, v, y)` and both
//!   lines coincide with both intervals.
//!
//! A path visiting the union in the order `t1, .., tm` exists as a shortest
//! path exactly when `d(t1, tm) = Σ d(ti, ti+1)`: concatenating shortest
//! subpaths realizes it, and any shortest path through them induces such an
//! order. The alpha search therefore only tests that identity.

use itertools::Itertools;
use serde::Serialize;
use thiserror::Error;

use crate::distance::DistanceMatrix;
use crate::lines::{pair, MetricGraph, Pair};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RelationError {
    #[error("parallelogram vertices must be pairwise distinct: {0:?}")]
    NotDistinct([usize; 4]),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RelationTag {
    Alpha,
    Beta,
    Gamma,
    None,
}

/// A relation tag with the ordering that witnesses it (empty for `None`).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Relation {
    pub relation: RelationTag,
    pub witness: Vec<usize>,
}

fn distinct4(t: [usize; 4]) -> bool {
    t.iter().tuple_combinations().all(|(a, b)| a != b)
}

/// `b ∈ I(a,c)`, `c ∈ I(b,d)`, `d ∈ I(c,a)`, `a ∈ I(d,b)` for distinct vertices.
pub fn is_parallelogram(dm: &DistanceMatrix, t: [usize; 4]) -> Result<bool, RelationError> {
    if !distinct4(t) {
        return Err(RelationError::NotDistinct(t));
    }
    Ok(parallelogram(dm, t))
}

#[inline]
pub(crate) fn parallelogram(dm: &DistanceMatrix, [a, b, c, d]: [usize; 4]) -> bool {
    dm.is_between(b, a, c) && dm.is_between(c, b, d) && dm.is_between(d, c, a) && dm.is_between(a, d, b)
}

/// Least ordering of `p ∪ q` along which distances add up, if any.
pub fn alpha_related(dm: &DistanceMatrix, p: Pair, q: Pair) -> Option<Vec<usize>> {
    let union: Vec<usize> = [p.0, p.1, q.0, q.1].into_iter().sorted().dedup().collect();
    let m = union.len();
    union.into_iter().permutations(m).find(|t| {
        let walk: u32 = t.windows(2).map(|w| dm.get(w[0], w[1])).sum();
        walk == dm.get(t[0], t[m - 1])
    })
}

/// Both pairs are edges and `(u,v,x,y)` or `(u,v,y,x)` is a parallelogram.
pub fn beta_related(mg: &MetricGraph, p: Pair, q: Pair) -> Option<[usize; 4]> {
    let ((u, v), (x, y)) = (pair(p.0, p.1), pair(q.0, q.1));
    if mg.d(u, v) != 1 || mg.d(x, y) != 1 {
        return None;
    }
    [[u, v, x, y], [u, v, y, x]]
        .into_iter()
        .find(|&t| distinct4(t) && parallelogram(mg.dist(), t))
}

/// `(u,x,v,y)` is a parallelogram and `line(uv) = I(u,v) = I(x,y) = line(xy)`.
pub fn gamma_related(mg: &MetricGraph, p: Pair, q: Pair) -> Option<[usize; 4]> {
    let ((u, v), (x, y)) = (pair(p.0, p.1), pair(q.0, q.1));
    let t = [u, x, v, y];
    if !distinct4(t) || !parallelogram(mg.dist(), t) {
        return None;
    }
    let line_uv = mg.line_members(u, v);
    (line_uv == mg.interval(u, v)
        && line_uv == mg.interval(x, y)
        && line_uv == mg.line_members(x, y))
    .then_some(t)
}

/// First relation that holds, in the order alpha, beta, gamma.
pub fn classify_relation(mg: &MetricGraph, p: Pair, q: Pair) -> Relation {
    if let Some(w) = alpha_related(mg.dist(), p, q) {
        return Relation {
            relation: RelationTag::Alpha,
            witness: w,
        };
    }
    if let Some(w) = beta_related(mg, p, q) {
        return Relation {
            relation: RelationTag::Beta,
            witness: w.to_vec(),
        };
    }
    if let Some(w) = gamma_related(mg, p, q) {
        return Relation {
            relation: RelationTag::Gamma,
            witness: w.to_vec(),
        };
    }
    Relation {
        relation: RelationTag::None,
        witness: Vec::new(),
    }
}
