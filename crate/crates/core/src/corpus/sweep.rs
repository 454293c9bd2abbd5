use std::collections::BTreeMap;
use std::io::Read;
use std::path::PathBuf;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;

use super::enumerate::enumerate_connected;
use super::CorpusError;
use crate::format::{parse_graph6, Connectivity};
use crate::graph::Graph;
use crate::structure::{find_c4_module, is_hh_free};
use crate::verify::{run_check, CheckKind, PropertyReport, Status};

/// Where sweep graphs come from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Source {
    /// Builtin enumeration of connected graphs on `min_n..=max_n` vertices.
    Builtin { min_n: usize, max_n: usize },
    /// graph6 lines from a file.
    Path(PathBuf),
    /// graph6 lines from standard input.
    Stdin,
    /// graph6 lines already in memory.
    Text(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusSpec {
    pub source: Source,
    pub hh_free: bool,
    pub no_c4_module: bool,
    /// Stop after this many graphs have passed the filters.
    pub limit: Option<usize>,
}

impl CorpusSpec {
    /// Connected graphs with 2 to `max_n` vertices, unfiltered.
    pub fn builtin(max_n: usize) -> Self {
        CorpusSpec {
            source: Source::Builtin { min_n: 2, max_n },
            hh_free: false,
            no_c4_module: false,
            limit: None,
        }
    }

    pub fn graph6_text(text: impl Into<String>) -> Self {
        CorpusSpec {
            source: Source::Text(text.into()),
            ..CorpusSpec::builtin(0)
        }
    }

    pub fn hh_free(mut self) -> Self {
        self.hh_free = true;
        self
    }

    pub fn no_c4_module(mut self) -> Self {
        self.no_c4_module = true;
        self
    }

    pub fn limit(mut self, limit: usize) -> Self {
        self.limit = Some(limit);
        self
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct CheckCounts {
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
}

/// A failing check on a named graph; re-running the check on `graph6`
/// reproduces it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WitnessRecord {
    pub graph6: String,
    pub check: String,
    pub witness: Option<Value>,
}

/// An input line that could not be used, with its 1-based line number.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InputError {
    pub line: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepResult {
    pub check: &'static str,
    pub graphs: usize,
    pub counts: BTreeMap<String, CheckCounts>,
    pub witnesses: Vec<WitnessRecord>,
    pub errors: Vec<InputError>,
    pub ms: u64,
}

impl SweepResult {
    pub fn fail_count(&self) -> usize {
        self.counts.values().map(|c| c.fail).sum()
    }

    pub fn passed(&self) -> bool {
        self.fail_count() == 0
    }

    /// JSON with the timing field zeroed, for byte comparisons.
    pub fn to_json_without_timing(&self) -> String {
        let mut r = self.clone();
        r.ms = 0;
        serde_json::to_string(&r).expect("sweep result serializes")
    }
}

/// A corpus entry before filtering: a graph, or the reason its line was rejected.
type Entry = Result<Graph, InputError>;

fn load(source: &Source) -> Result<Vec<Entry>, CorpusError> {
    let text = match source {
        Source::Builtin { min_n, max_n } => {
            let mut out = Vec::new();
            for n in *min_n..=*max_n {
                out.extend(enumerate_connected(n)?.into_iter().map(Ok));
            }
            return Ok(out);
        }
        Source::Path(p) => std::fs::read_to_string(p)?,
        Source::Stdin => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s)?;
            s
        }
        Source::Text(s) => s.clone(),
    };
    Ok(text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| {
            parse_graph6(l, Connectivity::Any).map_err(|e| InputError {
                line: i + 1,
                message: e.to_string(),
            })
        })
        .collect())
}

/// Whether `g` belongs to the filtered corpus. Graphs whose membership
/// cannot be decided are reported as errors.
fn admit(spec: &CorpusSpec, g: &Graph) -> Result<bool, String> {
    if g.n() == 0 || !g.is_connected() {
        return Ok(false);
    }
    if spec.hh_free && !is_hh_free(g).map_err(|e| e.to_string())? {
        return Ok(false);
    }
    if spec.no_c4_module && find_c4_module(g).is_some() {
        return Ok(false);
    }
    Ok(true)
}

/// Runs `check` over the corpus on a pool of `jobs` workers. Results are
/// merged in input order, so everything except `ms` is independent of `jobs`.
pub fn sweep(spec: &CorpusSpec, check: CheckKind, jobs: usize) -> Result<SweepResult, CorpusError> {
    let start = Instant::now();
    let entries = load(&spec.source)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| CorpusError::Pool(e.to_string()))?;

    let admitted: Vec<Result<Option<Graph>, InputError>> = pool.install(|| {
        entries
            .into_par_iter()
            .enumerate()
            .map(|(i, e)| {
                let g = e?;
                match admit(spec, &g) {
                    Ok(true) => Ok(Some(g)),
                    Ok(false) => Ok(None),
                    Err(message) => Err(InputError { line: i + 1, message }),
                }
            })
            .collect()
    });

    let mut errors = Vec::new();
    let mut corpus = Vec::new();
    for a in admitted {
        match a {
            Ok(Some(g)) if spec.limit.is_none_or(|m| corpus.len() < m) => corpus.push(g),
            Ok(_) => {}
            Err(e) => errors.push(e),
        }
    }

    let reports: Vec<PropertyReport> = pool.install(|| corpus.par_iter().map(|g| run_check(check, g)).collect());

    let mut counts: BTreeMap<String, CheckCounts> = BTreeMap::new();
    let mut witnesses = Vec::new();
    for r in &reports {
        for c in &r.checks {
            let slot = counts.entry(c.name.clone()).or_default();
            match c.status {
                Status::Pass => slot.pass += 1,
                Status::Skipped => slot.skipped += 1,
                Status::Fail => {
                    slot.fail += 1;
                    witnesses.push(WitnessRecord {
                        graph6: r.graph6.clone(),
                        check: c.name.clone(),
                        witness: c.witness.clone(),
                    });
                }
            }
        }
    }
    Ok(SweepResult {
        check: check.name(),
        graphs: reports.len(),
        counts,
        witnesses,
        errors,
        ms: start.elapsed().as_millis() as u64,
    })
}
