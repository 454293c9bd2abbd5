//! Release acceptance run. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

mod common;

use std::process::ExitCode;
use std::sync::OnceLock;
use std::time::Instant;

use graph_lines::corpus::{enumerate_graphs, sweep, CorpusSpec, SweepResult};
use graph_lines::distance::apsp;
use graph_lines::graph::named;
use graph_lines::lines::MetricGraph;
use graph_lines::structure::{find_hole, find_house};
use graph_lines::verify::{run_check, CheckKind};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const JOBS: usize = 8;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn hh_free_sweep(check: CheckKind) -> &'static SweepResult {
    static DBE2: OnceLock<SweepResult> = OnceLock::new();
    static PIPELINE: OnceLock<SweepResult> = OnceLock::new();
    let cell = match check {
        CheckKind::Dbe2 => &DBE2,
        CheckKind::Pipeline => &PIPELINE,
        _ => unreachable!("only cached for dbe2 and pipeline"),
    };
    cell.get_or_init(|| sweep(&CorpusSpec::builtin(8).hh_free(), check, JOBS).expect("builtin sweep"))
}

fn zero_fails(r: &SweepResult) -> Outcome {
    if r.passed() && r.errors.is_empty() {
        Ok(format!("{} graphs, 0 fails", r.graphs))
    } else {
        Err(format!(
            "{} fails, {} errors; first witness {:?}; first error {:?}",
            r.fail_count(),
            r.errors.len(),
            r.witnesses.first(),
            r.errors.first()
        ))
    }
}

fn discussion_fixture() -> Outcome {
    let start = Instant::now();
    let fam = MetricGraph::new(named::two_c4_plus_apex()).map_err(|e| e.to_string())?.all_lines();
    let (l1, l2) = (fam.l1().len(), fam.l2().len());
    let ms = start.elapsed().as_millis();
    if (l1, l2) == (6, 2) && ms < 1000 {
        Ok(format!("|L1| = 6, |L2| = 2 in {ms} ms"))
    } else {
        Err(format!("|L1| = {l1}, |L2| = {l2} in {ms} ms"))
    }
}

fn theorem_at_desk_scale() -> Outcome {
    zero_fails(hh_free_sweep(CheckKind::Dbe2))
}

fn pipeline_soundness() -> Outcome {
    let r = hh_free_sweep(CheckKind::Pipeline);
    let certified = r.counts.get("certificate").map_or(0, |c| c.pass);
    let discharged = r.counts.get("discharge").map_or(0, |c| c.pass);
    let summary = zero_fails(r)?;
    if certified != discharged {
        return Err(format!("{discharged} discharges but {certified} verified certificates"));
    }
    Ok(format!("{summary}; {certified} certificates verified"))
}

fn lemma_suite() -> Outcome {
    let general = sweep(&CorpusSpec::builtin(7), CheckKind::Suite, JOBS).map_err(|e| e.to_string())?;
    let gated = sweep(&CorpusSpec::builtin(8).hh_free(), CheckKind::Suite, JOBS).map_err(|e| e.to_string())?;
    let a = zero_fails(&general)?;
    let b = zero_fails(&gated)?;
    let never_run: Vec<&String> = gated
        .counts
        .iter()
        .filter(|(_, c)| c.pass == 0)
        .map(|(name, _)| name)
        .collect();
    if !never_run.is_empty() {
        return Err(format!("checks never exercised: {never_run:?}"));
    }
    Ok(format!("all connected n <= 7: {a}; HH-free n <= 8: {b}"))
}

fn conjecture_regression() -> Outcome {
    zero_fails(&sweep(&CorpusSpec::builtin(7), CheckKind::Dbe, JOBS).map_err(|e| e.to_string())?)
}

fn oracle_equivalences() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x11e5);
    for i in 0..1000 {
        let n = rng.random_range(2..=10);
        let p = rng.random_range(0.0..0.7);
        let g = common::random_connected(&mut rng, n, p);
        let got = MetricGraph::new(g.clone()).map_err(|e| e.to_string())?.all_lines().len();
        let want = common::naive_lines(&g).len();
        if got != want {
            return Err(format!("line count {got} vs naive {want} on random graph #{i}"));
        }
    }
    let mut checked = 0;
    for n in 1..=7 {
        for g in enumerate_graphs(n).map_err(|e| e.to_string())? {
            let house = find_house(&g);
            let hole = find_hole(&g).map_err(|e| e.to_string())?;
            if house.is_some() != common::has_house_brute(&g) || hole.is_some() != common::has_hole_brute(&g) {
                return Err(format!("house/hole disagreement on {g:?}"));
            }
            if house.is_some_and(|s| !common::induces_house(&g, &s.to_vec()))
                || hole.is_some_and(|s| !common::induces_hole(&g, &s.to_vec()))
            {
                return Err(format!("returned set is not a house/hole in {g:?}"));
            }
            checked += 1;
        }
    }
    for i in 0..1000 {
        let n = rng.random_range(1..=12);
        let p = rng.random_range(0.0..0.6);
        let g = common::random_connected(&mut rng, n, p);
        let dm = apsp(&g).map_err(|e| e.to_string())?;
        let fw = common::floyd_warshall(&g);
        if (0..n).any(|u| (0..n).any(|v| dm.get(u, v) != fw[u][v])) {
            return Err(format!("apsp disagrees with Floyd-Warshall on random graph #{i}"));
        }
    }
    Ok(format!("1000 line counts, {checked} house/hole graphs, 1000 distance matrices"))
}

fn determinism() -> Outcome {
    let sample: Vec<_> = graph_lines::corpus::enumerate_connected(6)
        .map_err(|e| e.to_string())?
        .into_iter()
        .chain([named::two_c4_plus_apex(), named::petersen()])
        .collect();
    for g in &sample {
        for kind in [CheckKind::Dbe, CheckKind::Dbe2, CheckKind::Pipeline, CheckKind::Suite] {
            let a = run_check(kind, g).to_json_without_timing();
            let b = run_check(kind, g).to_json_without_timing();
            if a != b {
                return Err(format!("{} report differs between runs on {g:?}", kind.name()));
            }
        }
    }
    let parallel = hh_free_sweep(CheckKind::Dbe2);
    let serial = sweep(&CorpusSpec::builtin(8).hh_free(), CheckKind::Dbe2, 1).map_err(|e| e.to_string())?;
    if serial.to_json_without_timing() != parallel.to_json_without_timing() {
        return Err("jobs = 1 and jobs = 8 sweeps differ".into());
    }
    let again = sweep(&CorpusSpec::builtin(7), CheckKind::Suite, 1).map_err(|e| e.to_string())?;
    let again8 = sweep(&CorpusSpec::builtin(7), CheckKind::Suite, JOBS).map_err(|e| e.to_string())?;
    if again.to_json_without_timing() != again8.to_json_without_timing() {
        return Err("suite sweeps differ between jobs = 1 and jobs = 8".into());
    }
    Ok(format!("{} graphs x 4 checks repeated; sweeps identical for jobs 1 and 8", sample.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        ("discussion fixture line families", discussion_fixture),
        ("DBE-2 on connected HH-free graphs, n <= 8", theorem_at_desk_scale),
        ("proof pipeline on connected HH-free graphs, n <= 8", pipeline_soundness),
        ("lemma suite", lemma_suite),
        ("DBE on all connected graphs, n <= 7", conjecture_regression),
        ("oracle equivalences", oracle_equivalences),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {} {name}: {detail} ({secs:.1} s)", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {} {name}: {detail} ({secs:.1} s)", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
