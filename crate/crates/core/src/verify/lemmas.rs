//! Each structural statement about lines and good pairs, as a check that is
//! universally quantified over its hypotheses within one graph. A check
//! reports the first counterexample it meets; checks whose graph-level
//! hypotheses fail are skipped.

use std::time::Instant;

use itertools::Itertools;
use serde_json::json;

use super::{CheckOutcome, PropertyReport};
use crate::bitset::VertexSet;
use crate::discharge::{l1_generator_bipartition, l2_star_center};
use crate::format::to_graph6;
use crate::graph::Graph;
use crate::lines::{LineFamily, MetricGraph, Pair};
use crate::relations::{alpha_related, classify_relation, gamma_related, parallelogram, RelationTag};
use crate::structure::{
    c4_distance_violation, find_c4_module, find_hole, find_house, scan_roof_cycles,
};

/// Check names in report order.
pub const LEMMA_CHECKS: [&str; 15] = [
    "obs_distance",
    "lem_distgood",
    "lem_eqgood",
    "lem_1line",
    "lem_2line",
    "lem_roof",
    "lem_c4",
    "prop_eqlines1",
    "coro_bipl1",
    "prop_gammal2",
    "prop_alphal2",
    "coro_starl2",
    "prop_l1l2",
    "thm_trichotomy",
    "prop_parallelogram",
];

/// Runs all fifteen checks on one graph.
pub fn run_lemma_suite(g: &Graph) -> PropertyReport {
    let start = Instant::now();
    let checks = lemma_outcomes(g);
    PropertyReport {
        graph6: to_graph6(g),
        checks,
        ms: start.elapsed().as_millis() as u64,
    }
}

/// Graph-level facts that gate the individual checks.
struct Context {
    mg: MetricGraph,
    fam: LineFamily,
    /// `None` when hole search is out of range for this graph.
    hole_free: Option<bool>,
    house_free: bool,
    universal_edge: bool,
    c4_module: bool,
}

impl Context {
    fn hh_free(&self) -> Option<bool> {
        self.hole_free.map(|h| h && self.house_free)
    }

    /// `Err(skip)` unless the graph is {house, hole}-free.
    fn require_hh(&self, name: &str) -> Result<(), CheckOutcome> {
        match self.hh_free() {
            Some(true) => Ok(()),
            Some(false) => Err(CheckOutcome::skipped(name, "graph is not {house, hole}-free")),
            None => Err(CheckOutcome::skipped(name, "graph too large for hole search")),
        }
    }
}

pub(super) fn lemma_outcomes(g: &Graph) -> Vec<CheckOutcome> {
    let mg = match MetricGraph::new(g.clone()) {
        Ok(mg) if g.n() >= 2 => mg,
        Ok(_) => return skip_all("needs at least two vertices"),
        Err(e) => return skip_all(&e.to_string()),
    };
    let fam = mg.all_lines();
    let cx = Context {
        hole_free: find_hole(g).ok().map(|h| h.is_none()),
        house_free: find_house(g).is_none(),
        universal_edge: mg.universal_edge().is_some(),
        c4_module: find_c4_module(g).is_some(),
        mg,
        fam,
    };
    let checks: [fn(&Context) -> CheckOutcome; 15] = [
        obs_distance,
        lem_distgood,
        lem_eqgood,
        lem_1line,
        lem_2line,
        lem_roof,
        lem_c4,
        prop_eqlines1,
        coro_bipl1,
        prop_gammal2,
        prop_alphal2,
        coro_starl2,
        prop_l1l2,
        thm_trichotomy,
        prop_parallelogram,
    ];
    checks.iter().map(|check| check(&cx)).collect()
}

fn skip_all(reason: &str) -> Vec<CheckOutcome> {
    LEMMA_CHECKS
        .iter()
        .map(|name| CheckOutcome::skipped(name, reason))
        .collect()
}

fn pairs(n: usize) -> impl Iterator<Item = Pair> {
    (0..n).flat_map(move |u| (u + 1..n).map(move |v| (u, v)))
}

fn verdict(name: &str, counterexample: Option<serde_json::Value>) -> CheckOutcome {
    match counterexample {
        None => CheckOutcome::pass(name, None),
        Some(w) => CheckOutcome::fail(name, w),
    }
}

/// Off the line through `u, v`, distances to `u` and `v` differ by less than `d(u,v)`.
fn obs_distance(cx: &Context) -> CheckOutcome {
    let mg = &cx.mg;
    let bad = pairs(mg.n()).find_map(|(u, v)| {
        let off = mg.graph().vertices().difference(mg.line_members(u, v));
        off.iter()
            .find(|&z| mg.d(z, u).abs_diff(mg.d(z, v)) + 1 > mg.d(u, v))
            .map(|z| json!({ "pair": [u, v], "z": z }))
    });
    verdict("obs_distance", bad)
}

/// Off the line of a good pair, both endpoints are equidistant.
fn lem_distgood(cx: &Context) -> CheckOutcome {
    let mg = &cx.mg;
    let bad = cx.fam.good_pairs().iter().find_map(|&(u, v)| {
        let off = mg.graph().vertices().difference(mg.line_members(u, v));
        off.iter()
            .find(|&z| mg.d(z, u) != mg.d(z, v))
            .map(|z| json!({ "pair": [u, v], "z": z }))
    });
    verdict("lem_distgood", bad)
}

/// Every middle vertex of a good pair sees both endpoints on the same line.
fn lem_eqgood(cx: &Context) -> CheckOutcome {
    let mg = &cx.mg;
    let bad = cx.fam.good_pairs().iter().find_map(|&(u, v)| {
        mg.graph()
            .common_neighbors(u, v)
            .iter()
            .find(|&c| mg.line_members(c, u) != mg.line_members(c, v))
            .map(|c| json!({ "pair": [u, v], "middle": c }))
    });
    verdict("lem_eqgood", bad)
}

/// Off the line of an edge `uv`, some common neighbour of `u` and `v` lies on
/// shortest paths from `z` to both.
fn lem_1line(cx: &Context) -> CheckOutcome {
    if let Err(skip) = cx.require_hh("lem_1line") {
        return skip;
    }
    let mg = &cx.mg;
    let g = mg.graph();
    let bad = g.edges().find_map(|(u, v)| {
        let off = g.vertices().difference(mg.line_members(u, v));
        off.iter()
            .find(|&z| {
                g.common_neighbors(u, v)
                    .intersection(mg.interval(z, u))
                    .intersection(mg.interval(z, v))
                    .is_empty()
            })
            .map(|z| json!({ "edge": [u, v], "z": z }))
    });
    verdict("lem_1line", bad)
}

/// Off the line of a good pair `uv`, some middle vertex of `uv` lies on
/// shortest paths from `z` to both. Needs hole-freeness only.
fn lem_2line(cx: &Context) -> CheckOutcome {
    match cx.hole_free {
        Some(true) => {}
        Some(false) => return CheckOutcome::skipped("lem_2line", "graph has a hole"),
        None => return CheckOutcome::skipped("lem_2line", "graph too large for hole search"),
    }
    let mg = &cx.mg;
    let g = mg.graph();
    let bad = cx.fam.good_pairs().iter().find_map(|&(u, v)| {
        let off = g.vertices().difference(mg.line_members(u, v));
        off.iter()
            .find(|&z| {
                g.common_neighbors(u, v)
                    .intersection(mg.interval(z, u))
                    .intersection(mg.interval(z, v))
                    .is_empty()
            })
            .map(|z| json!({ "pair": [u, v], "z": z }))
    });
    verdict("lem_2line", bad)
}

fn lem_roof(cx: &Context) -> CheckOutcome {
    if let Err(skip) = cx.require_hh("lem_roof") {
        return skip;
    }
    let scan = scan_roof_cycles(cx.mg.graph());
    verdict("lem_roof", scan.violation.map(|c| json!({ "cycle": c })))
}

fn lem_c4(cx: &Context) -> CheckOutcome {
    if let Err(skip) = cx.require_hh("lem_c4") {
        return skip;
    }
    verdict(
        "lem_c4",
        c4_distance_violation(&cx.mg).map(|v| serde_json::to_value(v).expect("serializes")),
    )
}

/// Two edges on the same non-universal line either share a vertex and induce
/// a P3, or induce a C4 all of whose edges generate that line.
fn prop_eqlines1(cx: &Context) -> CheckOutcome {
    if let Err(skip) = cx.require_hh("prop_eqlines1") {
        return skip;
    }
    let mg = &cx.mg;
    let g = mg.graph();
    let mut bad = None;
    'lines: for line in cx.fam.l1() {
        if cx.fam.is_universal(line) {
            continue;
        }
        for (&(u, v), &(x, y)) in cx.fam.edge_generators(line).iter().tuple_combinations() {
            let s: VertexSet = [u, v, x, y].into_iter().collect();
            let ok = if s.len() == 3 {
                g.edges_within(s) == 2
            } else {
                let c4 = s.iter().all(|w| g.neighbors(w).intersection(s).len() == 2);
                c4 && s
                    .iter()
                    .tuple_combinations()
                    .filter(|&(a, b)| g.has_edge(a, b))
                    .all(|(a, b)| mg.line_members(a, b) == line)
            };
            if !ok {
                bad = Some(json!({ "edges": [[u, v], [x, y]], "line": line }));
                break 'lines;
            }
        }
    }
    verdict("prop_eqlines1", bad)
}

/// Edges generating a non-universal line form an induced complete bipartite graph.
fn coro_bipl1(cx: &Context) -> CheckOutcome {
    if let Err(skip) = cx.require_hh("coro_bipl1") {
        return skip;
    }
    let bad = cx
        .fam
        .l1()
        .into_iter()
        .filter(|&l| !cx.fam.is_universal(l))
        .find_map(|l| {
            l1_generator_bipartition(&cx.mg, &cx.fam, l)
                .err()
                .map(|e| json!({ "line": l, "error": e.to_string() }))
        });
    verdict("coro_bipl1", bad)
}

/// Good pairs on one line that are gamma-related span a C4-module.
fn prop_gammal2(cx: &Context) -> CheckOutcome {
    if let Err(skip) = cx.require_hh("prop_gammal2") {
        return skip;
    }
    let g = cx.mg.graph();
    let mut bad = None;
    'lines: for line in cx.fam.l2() {
        for (&p, &q) in cx.fam.good_generators(line).iter().tuple_combinations() {
            if let Some(t) = gamma_related(&cx.mg, p, q) {
                let module = crate::structure::C4Module { cycle: t };
                if !module.is_valid_in(g) {
                    bad = Some(json!({ "pairs": [p, q], "cycle": t }));
                    break 'lines;
                }
            }
        }
    }
    verdict("prop_gammal2", bad)
}

/// Without a universal edge, alpha-related good pairs on one non-universal
/// line share a vertex.
fn prop_alphal2(cx: &Context) -> CheckOutcome {
    if let Err(skip) = cx.require_hh("prop_alphal2") {
        return skip;
    }
    if cx.universal_edge {
        return CheckOutcome::skipped("prop_alphal2", "graph has a universal edge");
    }
    let mut bad = None;
    'lines: for line in cx.fam.l2() {
        if cx.fam.is_universal(line) {
            continue;
        }
        for (&p, &q) in cx.fam.good_generators(line).iter().tuple_combinations() {
            if let Some(path) = alpha_related(cx.mg.dist(), p, q) {
                if path.len() != 3 {
                    bad = Some(json!({ "pairs": [p, q], "path": path }));
                    break 'lines;
                }
            }
        }
    }
    verdict("prop_alphal2", bad)
}

/// Without a universal edge or C4-module, the good pairs of a non-universal
/// line share a common vertex.
fn coro_starl2(cx: &Context) -> CheckOutcome {
    if let Err(skip) = cx.require_hh("coro_starl2") {
        return skip;
    }
    if cx.universal_edge {
        return CheckOutcome::skipped("coro_starl2", "graph has a universal edge");
    }
    if cx.c4_module {
        return CheckOutcome::skipped("coro_starl2", "graph has a C4-module");
    }
    let bad = cx
        .fam
        .l2()
        .into_iter()
        .filter(|&l| !cx.fam.is_universal(l))
        .find_map(|l| {
            l2_star_center(&cx.fam, l)
                .err()
                .map(|_| json!({ "line": l, "pairs": cx.fam.good_generators(l) }))
        });
    verdict("coro_starl2", bad)
}

/// Without a universal line, no line is generated both by an edge and by a good pair.
fn prop_l1l2(cx: &Context) -> CheckOutcome {
    if let Err(skip) = cx.require_hh("prop_l1l2") {
        return skip;
    }
    if cx.fam.has_universal_line() {
        return CheckOutcome::skipped("prop_l1l2", "graph has a universal line");
    }
    let (l1, l2) = (cx.fam.l1(), cx.fam.l2());
    let bad = l1.intersection(&l2).next().map(|&l| {
        json!({
            "line": l,
            "edges": cx.fam.edge_generators(l),
            "good_pairs": cx.fam.good_generators(l),
        })
    });
    verdict("prop_l1l2", bad)
}

/// Any two pairs generating the same line are alpha-, beta- or gamma-related.
fn thm_trichotomy(cx: &Context) -> CheckOutcome {
    let bad = cx.fam.lines().find_map(|line| {
        line.generators
            .iter()
            .tuple_combinations()
            .find(|&(&p, &q)| classify_relation(&cx.mg, p, q).relation == RelationTag::None)
            .map(|(p, q)| json!({ "pairs": [p, q], "line": line.members }))
    });
    verdict("thm_trichotomy", bad)
}

/// Opposite sides and diagonals of a parallelogram have equal lengths.
fn prop_parallelogram(cx: &Context) -> CheckOutcome {
    let dm = cx.mg.dist();
    let bad = (0..cx.mg.n()).permutations(4).find_map(|t| {
        let [a, b, c, d] = [t[0], t[1], t[2], t[3]];
        let holds = dm.get(a, b) == dm.get(c, d)
            && dm.get(a, d) == dm.get(b, c)
            && dm.get(a, c) == dm.get(b, d);
        (parallelogram(dm, [a, b, c, d]) && !holds).then(|| json!({ "parallelogram": [a, b, c, d] }))
    });
    verdict("prop_parallelogram", bad)
}
