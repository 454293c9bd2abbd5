//! Property checks on a single graph: the de Bruijn–Erdős property, its
//! distance-2 strengthening, a replay of the inductive argument, and the
//! lemma suite.

mod lemmas;

use std::time::Instant;

use serde::Serialize;
use serde_json::{json, Value};

use crate::discharge::{discharge, verify_certificate};
use crate::format::to_graph6;
use crate::graph::Graph;
use crate::lines::MetricGraph;
use crate::structure::{is_hh_free, reduce_c4_modules};

pub use lemmas::{run_lemma_suite, LEMMA_CHECKS};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// A hypothesis of the check does not hold on this graph.
    Skipped,
}

/// One named check on one graph. Failures carry a witness that replays them.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    pub status: Status,
    pub witness: Option<Value>,
}

impl CheckOutcome {
    pub fn pass(name: &str, witness: Option<Value>) -> Self {
        CheckOutcome {
            name: name.to_string(),
            status: Status::Pass,
            witness,
        }
    }

    pub fn fail(name: &str, witness: Value) -> Self {
        CheckOutcome {
            name: name.to_string(),
            status: Status::Fail,
            witness: Some(witness),
        }
    }

    pub fn skipped(name: &str, reason: &str) -> Self {
        CheckOutcome {
            name: name.to_string(),
            status: Status::Skipped,
            witness: Some(json!({ "reason": reason })),
        }
    }

    pub fn is_fail(&self) -> bool {
        self.status == Status::Fail
    }
}

/// All outcomes for one graph. Everything except `ms` is deterministic.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PropertyReport {
    pub graph6: String,
    pub checks: Vec<CheckOutcome>,
    pub ms: u64,
}

impl PropertyReport {
    pub fn passed(&self) -> bool {
        !self.checks.iter().any(CheckOutcome::is_fail)
    }

    pub fn check(&self, name: &str) -> Option<&CheckOutcome> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// JSON line with the timing field zeroed, for byte comparisons.
    pub fn to_json_without_timing(&self) -> String {
        let mut r = self.clone();
        r.ms = 0;
        serde_json::to_string(&r).expect("report serializes")
    }
}

/// Which check a sweep or the CLI runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CheckKind {
    Dbe,
    Dbe2,
    Pipeline,
    Suite,
}

impl CheckKind {
    pub fn name(self) -> &'static str {
        match self {
            CheckKind::Dbe => "dbe",
            CheckKind::Dbe2 => "dbe2",
            CheckKind::Pipeline => "pipeline",
            CheckKind::Suite => "suite",
        }
    }
}

impl std::str::FromStr for CheckKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "dbe" => Ok(CheckKind::Dbe),
            "dbe2" => Ok(CheckKind::Dbe2),
            "pipeline" => Ok(CheckKind::Pipeline),
            "suite" => Ok(CheckKind::Suite),
            other => Err(format!("unknown check {other:?}; expected dbe, dbe2, pipeline or suite")),
        }
    }
}

fn metric_or_skip(g: &Graph, name: &str) -> Result<MetricGraph, CheckOutcome> {
    if g.n() < 2 {
        return Err(CheckOutcome::skipped(name, "needs at least two vertices"));
    }
    MetricGraph::new(g.clone()).map_err(|e| CheckOutcome::skipped(name, &e.to_string()))
}

/// A universal line, or at least `n` distinct lines.
pub fn check_dbe(mg: &MetricGraph) -> CheckOutcome {
    const NAME: &str = "dbe";
    let n = mg.n();
    if n < 2 {
        return CheckOutcome::skipped(NAME, "needs at least two vertices");
    }
    let fam = mg.all_lines();
    if let Some(line) = fam.get(mg.graph().vertices()) {
        return CheckOutcome::pass(
            NAME,
            Some(json!({ "disjunct": "universal_line", "pair": line.generators[0] })),
        );
    }
    let witness = json!({ "disjunct": "line_count", "lines": fam.len(), "n": n });
    if fam.len() >= n {
        CheckOutcome::pass(NAME, Some(witness))
    } else {
        CheckOutcome::fail(NAME, witness)
    }
}

/// A universal line generated by a pair at distance at most 2, or at least
/// `n` distinct lines.
pub fn check_dbe2(mg: &MetricGraph) -> CheckOutcome {
    const NAME: &str = "dbe2";
    let n = mg.n();
    if n < 2 {
        return CheckOutcome::skipped(NAME, "needs at least two vertices");
    }
    if let Some(p) = mg.universal_edge() {
        return CheckOutcome::pass(NAME, Some(json!({ "disjunct": "universal_edge", "pair": p })));
    }
    if let Some(p) = mg.universal_two_pair() {
        return CheckOutcome::pass(NAME, Some(json!({ "disjunct": "universal_2pair", "pair": p })));
    }
    let lines = mg.all_lines().len();
    let witness = json!({ "disjunct": "line_count", "lines": lines, "n": n });
    if lines >= n {
        CheckOutcome::pass(NAME, Some(witness))
    } else {
        CheckOutcome::fail(NAME, witness)
    }
}

fn universal_pair_witness(mg: &MetricGraph) -> Option<Value> {
    if let Some(p) = mg.universal_edge() {
        return Some(json!({ "kind": "edge", "pair": p }));
    }
    mg.universal_two_pair()
        .map(|p| json!({ "kind": "2pair", "pair": p }))
}

/// Names of the pipeline steps, in order.
pub const PIPELINE_STEPS: [&str; 6] = [
    "universal_pair",
    "reduce",
    "irreducible_universal_pair",
    "discharge",
    "certificate",
    "reembed",
];

/// Replays the inductive argument on a connected {house, hole}-free graph:
/// settle by a universal edge or 2-pair, otherwise strip C4-modules, settle
/// the irreducible graph by a universal pair or a verified discharging
/// certificate, then confirm the strengthened property along the chain of
/// removals back to the input.
pub fn check_proof_pipeline(g: &Graph) -> PropertyReport {
    let start = Instant::now();
    let checks = pipeline_outcomes(g);
    PropertyReport {
        graph6: to_graph6(g),
        checks,
        ms: start.elapsed().as_millis() as u64,
    }
}

fn skip_rest(out: &mut Vec<CheckOutcome>, reason: &str) {
    for name in &PIPELINE_STEPS[out.len()..] {
        out.push(CheckOutcome::skipped(name, reason));
    }
}

fn pipeline_outcomes(g: &Graph) -> Vec<CheckOutcome> {
    let mut out = Vec::with_capacity(PIPELINE_STEPS.len());
    let mg = match metric_or_skip(g, PIPELINE_STEPS[0]) {
        Ok(mg) => mg,
        Err(skip) => {
            let reason = skip.witness.as_ref().and_then(|w| w["reason"].as_str()).unwrap_or("");
            let reason = reason.to_string();
            skip_rest(&mut out, &reason);
            return out;
        }
    };
    match is_hh_free(g) {
        Ok(true) => {}
        Ok(false) => {
            skip_rest(&mut out, "graph is not {house, hole}-free");
            return out;
        }
        Err(e) => {
            skip_rest(&mut out, &e.to_string());
            return out;
        }
    }

    let reembed = |chain: &[Graph]| -> CheckOutcome {
        for h in chain.iter().rev() {
            let outcome = match MetricGraph::new(h.clone()) {
                Ok(mh) => check_dbe2(&mh),
                Err(e) => CheckOutcome::fail("dbe2", json!({ "error": e.to_string() })),
            };
            if outcome.is_fail() {
                return CheckOutcome::fail(
                    "reembed",
                    json!({ "graph6": to_graph6(h), "dbe2": outcome.witness }),
                );
            }
        }
        CheckOutcome::pass("reembed", Some(json!({ "graphs": chain.len() })))
    };

    if let Some(w) = universal_pair_witness(&mg) {
        out.push(CheckOutcome::pass("universal_pair", Some(w)));
        for name in &PIPELINE_STEPS[1..5] {
            out.push(CheckOutcome::skipped(name, "settled by a universal pair"));
        }
        out.push(reembed(std::slice::from_ref(g)));
        return out;
    }
    out.push(CheckOutcome::pass("universal_pair", Some(json!({ "kind": null }))));

    let trace = match reduce_c4_modules(g) {
        Ok(t) => t,
        Err(e) => {
            out.push(CheckOutcome::fail("reduce", json!({ "error": e.to_string() })));
            skip_rest(&mut out, "reduction failed");
            return out;
        }
    };
    out.push(CheckOutcome::pass(
        "reduce",
        Some(serde_json::to_value(&trace).expect("trace serializes")),
    ));
    let chain = match trace.chain(g) {
        Ok(c) => c,
        Err(e) => {
            out.push(CheckOutcome::fail(
                "irreducible_universal_pair",
                json!({ "error": e.to_string() }),
            ));
            skip_rest(&mut out, "reduction failed");
            return out;
        }
    };

    let irreducible = match MetricGraph::new(trace.result.clone()) {
        Ok(m) => m,
        Err(e) => {
            out.push(CheckOutcome::fail(
                "irreducible_universal_pair",
                json!({ "error": e.to_string() }),
            ));
            skip_rest(&mut out, "irreducible graph is not a metric graph");
            return out;
        }
    };
    if let Some(w) = universal_pair_witness(&irreducible) {
        out.push(CheckOutcome::pass("irreducible_universal_pair", Some(w)));
        out.push(CheckOutcome::skipped("discharge", "settled by a universal pair"));
        out.push(CheckOutcome::skipped("certificate", "settled by a universal pair"));
        out.push(reembed(&chain));
        return out;
    }
    out.push(CheckOutcome::pass(
        "irreducible_universal_pair",
        Some(json!({ "kind": null })),
    ));

    match discharge(&irreducible) {
        Ok(cert) => {
            out.push(CheckOutcome::pass(
                "discharge",
                Some(json!({ "centers": cert.centers, "unassigned": cert.unassigned })),
            ));
            let check = verify_certificate(&irreducible, &cert);
            if check.ok {
                out.push(CheckOutcome::pass("certificate", None));
            } else {
                out.push(CheckOutcome::fail(
                    "certificate",
                    json!({
                        "graph6": to_graph6(&trace.result),
                        "diagnostics": check.diagnostics,
                        "certificate": cert,
                    }),
                ));
            }
        }
        Err(e) => {
            out.push(CheckOutcome::fail(
                "discharge",
                json!({ "graph6": to_graph6(&trace.result), "error": e.to_string() }),
            ));
            out.push(CheckOutcome::skipped("certificate", "no certificate"));
        }
    }
    out.push(reembed(&chain));
    out
}

/// Runs one kind of check on a graph, timing it.
pub fn run_check(kind: CheckKind, g: &Graph) -> PropertyReport {
    let start = Instant::now();
    let checks = match kind {
        CheckKind::Dbe => vec![metric_or_skip(g, "dbe").map_or_else(|s| s, |mg| check_dbe(&mg))],
        CheckKind::Dbe2 => vec![metric_or_skip(g, "dbe2").map_or_else(|s| s, |mg| check_dbe2(&mg))],
        CheckKind::Pipeline => pipeline_outcomes(g),
        CheckKind::Suite => lemmas::lemma_outcomes(g),
    };
    PropertyReport {
        graph6: to_graph6(g),
        checks,
        ms: start.elapsed().as_millis() as u64,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;

    fn mg(g: Graph) -> MetricGraph {
        MetricGraph::new(g).unwrap()
    }

    #[test]
    fn dbe_examples() {
        let k3 = check_dbe(&mg(named::complete(3)));
        assert_eq!(k3.status, Status::Pass);
        assert_eq!(k3.witness.unwrap()["lines"], 3);
        let c5 = check_dbe(&mg(named::cycle(5)));
        assert_eq!(c5.status, Status::Pass);
        assert_eq!(c5.witness.unwrap()["lines"], 10);
    }

    #[test]
    fn dbe2_examples() {
        let p3 = check_dbe2(&mg(named::path(3)));
        assert_eq!(p3.witness.unwrap()["disjunct"], "universal_edge");
        let fixture = check_dbe2(&mg(named::two_c4_plus_apex()));
        assert_eq!(fixture.status, Status::Pass);
    }

    #[test]
    fn pipeline_on_c4_stops_at_universal_edge() {
        let r = check_proof_pipeline(&named::cycle(4));
        assert!(r.passed());
        assert_eq!(r.checks.len(), PIPELINE_STEPS.len());
        assert_eq!(r.check("universal_pair").unwrap().status, Status::Pass);
        assert_eq!(r.check("reduce").unwrap().status, Status::Skipped);
        assert_eq!(r.check("reembed").unwrap().status, Status::Pass);
    }

    #[test]
    fn pipeline_on_fixture_goes_through_reduction() {
        let r = check_proof_pipeline(&named::two_c4_plus_apex());
        assert!(r.passed(), "{r:?}");
        let reduce = r.check("reduce").unwrap();
        assert_eq!(reduce.status, Status::Pass);
        assert_eq!(reduce.witness.as_ref().unwrap()["removed"].as_array().unwrap().len(), 2);
    }

    #[test]
    fn pipeline_skips_non_hh_free() {
        let r = check_proof_pipeline(&named::cycle(5));
        assert!(r.checks.iter().all(|c| c.status == Status::Skipped));
    }

    #[test]
    fn check_kind_parses() {
        assert_eq!("dbe2".parse::<CheckKind>(), Ok(CheckKind::Dbe2));
        assert!("nope".parse::<CheckKind>().is_err());
    }
}
