//! Independent reference implementations used as oracles. None of them
//! touch the library's bitsets, BFS, or search code; they work from plain
//! edge lists and adjacency matrices.

#![allow(dead_code)]

use std::collections::BTreeSet;

use graph_lines::Graph;
use itertools::Itertools;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub const INF: u32 = u32::MAX / 4;

pub fn matrix(g: &Graph) -> Vec<Vec<bool>> {
    let n = g.n();
    let mut m = vec![vec![false; n]; n];
    for (u, v) in g.edges() {
        m[u][v] = true;
        m[v][u] = true;
    }
    m
}

pub fn floyd_warshall(g: &Graph) -> Vec<Vec<u32>> {
    let n = g.n();
    let adj = matrix(g);
    let mut d = vec![vec![INF; n]; n];
    for u in 0..n {
        for v in 0..n {
            if u == v {
                d[u][v] = 0;
            } else if adj[u][v] {
                d[u][v] = 1;
            }
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if d[i][k] + d[k][j] < d[i][j] {
                    d[i][j] = d[i][k] + d[k][j];
                }
            }
        }
    }
    d
}

fn between(d: &[Vec<u32>], z: usize, u: usize, v: usize) -> bool {
    d[u][v] == d[u][z] + d[z][v]
}

/// Every line as a sorted member list, by triple loops over the Floyd–Warshall matrix.
pub fn naive_lines(g: &Graph) -> BTreeSet<Vec<usize>> {
    let d = floyd_warshall(g);
    let n = g.n();
    let mut lines = BTreeSet::new();
    for u in 0..n {
        for v in u + 1..n {
            let members: Vec<usize> = (0..n)
                .filter(|&z| between(&d, z, u, v) || between(&d, u, z, v) || between(&d, v, u, z))
                .collect();
            lines.insert(members);
        }
    }
    lines
}

fn induced_edges(adj: &[Vec<bool>], s: &[usize]) -> Vec<(usize, usize)> {
    s.iter()
        .tuple_combinations()
        .filter(|&(&a, &b)| adj[a][b])
        .map(|(&a, &b)| (a, b))
        .collect()
}

/// The house as the 5-cycle 0-1-2-3-4 with chord 1-4.
const HOUSE: [(usize, usize); 6] = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (1, 4)];

/// Whether the vertices `s` induce a house: some bijection from the template
/// maps edges to edges and non-edges to non-edges.
pub fn induces_house(g: &Graph, s: &[usize]) -> bool {
    if s.len() != 5 {
        return false;
    }
    let adj = matrix(g);
    let template: BTreeSet<(usize, usize)> = HOUSE.iter().flat_map(|&(a, b)| [(a, b), (b, a)]).collect();
    s.iter().copied().permutations(5).any(|image| {
        (0..5).tuple_combinations().all(|(a, b)| template.contains(&(a, b)) == adj[image[a]][image[b]])
    })
}

/// Whether `s` induces a chordless cycle on at least five vertices.
pub fn induces_hole(g: &Graph, s: &[usize]) -> bool {
    if s.len() < 5 {
        return false;
    }
    let adj = matrix(g);
    let edges = induced_edges(&adj, s);
    if edges.len() != s.len() {
        return false;
    }
    let all_degree_two = s.iter().all(|&v| edges.iter().filter(|&&(a, b)| a == v || b == v).count() == 2);
    // Walk the cycle from s[0]; it is a single cycle iff the walk covers s.
    let mut seen = vec![s[0]];
    let mut current = s[0];
    loop {
        let next = edges
            .iter()
            .filter_map(|&(a, b)| match () {
                _ if a == current => Some(b),
                _ if b == current => Some(a),
                _ => None,
            })
            .find(|w| !seen.contains(w));
        match next {
            Some(w) => {
                seen.push(w);
                current = w;
            }
            None => break,
        }
    }
    all_degree_two && seen.len() == s.len()
}

pub fn has_house_brute(g: &Graph) -> bool {
    (0..g.n()).combinations(5).any(|s| induces_house(g, &s))
}

pub fn has_hole_brute(g: &Graph) -> bool {
    (5..=g.n()).any(|k| (0..g.n()).combinations(k).any(|s| induces_hole(g, &s)))
}

/// A connected graph on `n` vertices: a random recursive tree plus each
/// remaining pair with probability `p`.
pub fn random_connected(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for v in 1..n {
        edges.push((rng.random_range(0..v), v));
    }
    for u in 0..n {
        for v in u + 1..n {
            if !edges.contains(&(u, v)) && rng.random_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

/// Reference graph6 decoder written directly from the format description.
pub fn decode_graph6(s: &str) -> (usize, Vec<(usize, usize)>) {
    let bytes: Vec<u32> = s.bytes().map(|b| u32::from(b) - 63).collect();
    let (n, body) = if bytes[0] < 63 {
        (bytes[0] as usize, &bytes[1..])
    } else if bytes[1] < 63 {
        (((bytes[1] << 12) | (bytes[2] << 6) | bytes[3]) as usize, &bytes[4..])
    } else {
        let n = bytes[2..8].iter().fold(0u64, |acc, &b| (acc << 6) | u64::from(b));
        (n as usize, &bytes[8..])
    };
    let bits: Vec<bool> = body.iter().flat_map(|&b| (0..6).rev().map(move |i| b >> i & 1 == 1)).collect();
    let mut edges = Vec::new();
    let mut k = 0;
    for v in 1..n {
        for u in 0..v {
            if bits[k] {
                edges.push((u, v));
            }
            k += 1;
        }
    }
    (n, edges)
}
