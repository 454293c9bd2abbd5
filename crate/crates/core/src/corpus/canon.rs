//! Canonical labeling by colour refinement plus individualization.
//!
//! The search tree is the usual one: refine the ordered partition to an
//! equitable one, branch on every vertex of the first non-singleton cell,
//! and keep the largest relabeled adjacency code over all leaves. Branches
//! that differ only by swapping two twins are isomorphic, so only one vertex
//! per set of mutual twins in a cell is tried.

use crate::bitset::VertexSet;
use crate::graph::Graph;

/// Adjacency rows of the canonically relabeled graph. Two graphs are
/// isomorphic exactly when their codes are equal.
pub type CanonicalCode = Vec<u64>;

/// Canonical relabeling of `g` together with its code.
pub fn canonical_form(g: &Graph) -> (Graph, CanonicalCode) {
    let (code, order) = canonical_order(g);
    let mut perm = vec![0; g.n()];
    for (new, &old) in order.iter().enumerate() {
        perm[old] = new;
    }
    (g.permuted(&perm), code)
}

pub fn canonical_code(g: &Graph) -> CanonicalCode {
    canonical_order(g).0
}

pub fn is_isomorphic(a: &Graph, b: &Graph) -> bool {
    a.n() == b.n() && a.edge_count() == b.edge_count() && canonical_code(a) == canonical_code(b)
}

fn canonical_order(g: &Graph) -> (CanonicalCode, Vec<usize>) {
    let mut best: Option<(CanonicalCode, Vec<usize>)> = None;
    let start = refine(g, vec![g.vertices().to_vec()]);
    search(g, start, &mut best);
    best.unwrap_or_default()
}

type Partition = Vec<Vec<usize>>;

/// Splits cells by neighbour counts into every cell until the partition is
/// equitable. The result depends only on the input partition up to
/// isomorphism, which is what makes the leaf codes comparable.
fn refine(g: &Graph, mut cells: Partition) -> Partition {
    loop {
        let masks: Vec<VertexSet> = cells.iter().map(|c| c.iter().copied().collect()).collect();
        let mut next: Partition = Vec::with_capacity(cells.len());
        for cell in &cells {
            if cell.len() == 1 {
                next.push(cell.clone());
                continue;
            }
            let mut keyed: Vec<(Vec<usize>, usize)> = cell
                .iter()
                .map(|&v| {
                    let sig = masks.iter().map(|m| g.neighbors(v).intersection(*m).len()).collect();
                    (sig, v)
                })
                .collect();
            keyed.sort();
            for group in keyed.chunk_by(|a, b| a.0 == b.0) {
                next.push(group.iter().map(|&(_, v)| v).collect());
            }
        }
        if next.len() == cells.len() {
            return next;
        }
        cells = next;
    }
}

fn twins(g: &Graph, u: usize, v: usize) -> bool {
    g.neighbors(u).without(v) == g.neighbors(v).without(u)
}

fn search(g: &Graph, cells: Partition, best: &mut Option<(CanonicalCode, Vec<usize>)>) {
    let Some(target) = cells.iter().position(|c| c.len() > 1) else {
        let order: Vec<usize> = cells.into_iter().map(|c| c[0]).collect();
        let code = leaf_code(g, &order);
        if best.as_ref().is_none_or(|(b, _)| code > *b) {
            *best = Some((code, order));
        }
        return;
    };
    let mut tried: Vec<usize> = Vec::new();
    for &v in &cells[target] {
        if tried.iter().any(|&u| twins(g, u, v)) {
            continue;
        }
        tried.push(v);
        let mut branch = cells.clone();
        let rest: Vec<usize> = branch[target].iter().copied().filter(|&w| w != v).collect();
        branch[target] = vec![v];
        branch.insert(target + 1, rest);
        search(g, refine(g, branch), best);
    }
}

fn leaf_code(g: &Graph, order: &[usize]) -> CanonicalCode {
    let mut label = vec![0; order.len()];
    for (new, &old) in order.iter().enumerate() {
        label[old] = new;
    }
    order
        .iter()
        .map(|&old| g.neighbors(old).iter().fold(0u64, |row, w| row | 1 << label[w]))
        .collect()
}
