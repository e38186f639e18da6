//! End-to-end acceptance checks. Prints one `[PASS]`/`[FAIL]` line per
//! criterion and exits non-zero if any criterion fails.

use std::process::ExitCode;
use std::time::Instant;

use pathquery::almost_tree::{self, LearnerConfig};
use pathquery::bench::{self, Algo, BenchPlan, ExperimentRecord, RunOptions, SizeExpr};
use pathquery::generate::{self, caterpillar_vertex, Family, GenSpec};
use pathquery::{Edge, Error, QueryOracle};
use pathquery_harness::{closure_pairs, unsplittable_vertices};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict {
        pass,
        detail: detail.into(),
    }
}

const GRID_N: [usize; 5] = [10, 50, 100, 250, 500];
const GRID_D: [usize; 3] = [3, 4, 5];

/// Row seeds for the exactness grids; spread out so neighbouring rows share nothing.
fn mixed_seed(i: usize) -> u64 {
    (i as u64).wrapping_mul(0x2545_F491_4F6C_DD1D) ^ 0xA5A5
}

fn exactness_almost_trees() -> Verdict {
    let started = Instant::now();
    let (mut exact, mut runs, mut skipped) = (0, 0, 0);
    let mut failures = Vec::new();
    let mut i = 0;
    while runs < 200 {
        let n = GRID_N[runs % GRID_N.len()];
        let d = GRID_D[(runs / GRID_N.len()) % GRID_D.len()];
        let spec = GenSpec::new(Family::AlmostTree, n, d, mixed_seed(i));
        i += 1;
        let inst = match generate::generate(&spec) {
            Ok(inst) => inst,
            Err(Error::GenerationInfeasible(_)) => {
                skipped += 1;
                continue;
            }
            Err(e) => return verdict(false, format!("generator error: {e}")),
        };
        runs += 1;
        let mut o = QueryOracle::new(inst.graph.clone(), bench::learner_seed(spec.seed));
        match almost_tree::reconstruct_rooted_graph(&mut o, &LearnerConfig::new(d)) {
            Ok(rec) if rec.graph.edge_set() == inst.graph.edge_set() => exact += 1,
            Ok(_) => failures.push(format!("n={n} d={d} seed={}: wrong edges", spec.seed)),
            Err(e) => failures.push(format!("n={n} d={d} seed={}: {e}", spec.seed)),
        }
    }
    let secs = started.elapsed().as_secs_f64();
    verdict(
        exact == runs && secs < 60.0,
        format!(
            "{exact}/{runs} exact in {secs:.1} s ({skipped} infeasible draws redrawn){}",
            failures.first().map(|f| format!("; first failure {f}")).unwrap_or_default()
        ),
    )
}

fn exactness_trees() -> Verdict {
    let (mut exact, mut no_cross) = (0, 0);
    let runs = 100;
    for i in 0..runs {
        let n = GRID_N[i % GRID_N.len()];
        let d = GRID_D[(i / GRID_N.len()) % GRID_D.len()];
        let spec = GenSpec::new(Family::Tree, n, d, mixed_seed(10_000 + i));
        let g = generate::generate(&spec).unwrap().graph;
        let mut o = QueryOracle::new(g.clone(), bench::learner_seed(spec.seed));
        if let Ok(rec) = almost_tree::reconstruct_rooted_graph(&mut o, &LearnerConfig::new(d)) {
            exact += (rec.graph.edge_set() == g.edge_set()) as usize;
            no_cross += (rec.cross_edge.is_none() && o.phase_total("cross/specific") == 0) as usize;
        }
    }
    verdict(
        exact == runs && no_cross == runs,
        format!("{exact}/{runs} exact, cross edge absent in {no_cross}/{runs}"),
    )
}

fn splittable_vertex_exists() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(0x1e33a);
    let (mut checked, mut counterexamples) = (0usize, Vec::new());
    for t in 0..1000 {
        let n = rng.gen_range(1..=200);
        let d = rng.gen_range(2..=5);
        let g = generate::generate(&GenSpec::new(Family::Tree, n, d, rng.gen())).unwrap().graph;
        checked += n;
        counterexamples.extend(unsplittable_vertices(&g, d).into_iter().map(|v| (t, v)));
    }
    verdict(
        counterexamples.is_empty(),
        format!("{checked} vertices over 1000 trees, {} counterexamples", counterexamples.len()),
    )
}

fn scc_budget_and_exactness() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5cc);
    let (mut exact, mut within) = (0, 0);
    let mut worst: f64 = 0.0;
    let runs = 100;
    for i in 0..runs {
        let n = rng.gen_range(1..=400);
        let root_n = (n as f64).sqrt().ceil() as usize;
        let k = [1, 2.min(n), root_n, n][i % 4];
        let spec = GenSpec::new(Family::Scc, n, 2, rng.gen()).with_k(k);
        let g = generate::generate(&spec).unwrap().graph;
        let out = bench::run_learner(
            &g,
            &RunOptions {
                algo: Algo::Scc,
                d: 2,
                seed: spec.seed,
                retry_cap_multiplier: 48,
                keep_transcript: false,
            },
        );
        exact += out.record.success as usize;
        let budget = (2 * n * k + k * k) as u64;
        within += (out.record.total_queries <= budget) as usize;
        worst = worst.max(out.record.total_queries as f64 / budget as f64);
    }
    verdict(
        exact == runs && within == runs,
        format!("{exact}/{runs} exact, {within}/{runs} within 2nk+k² (worst {worst:.3} of budget)"),
    )
}

fn ratios(records: &[ExperimentRecord]) -> (Vec<f64>, Vec<f64>, usize) {
    let cells = bench::summarize(records);
    let medians = cells.iter().map(|c| c.median_queries).collect();
    let ratios = cells.iter().filter_map(|c| c.ratio_to_previous).collect();
    let failed = records.iter().filter(|r| !r.success).count();
    (medians, ratios, failed)
}

fn fmt_list(xs: &[f64], digits: usize) -> String {
    let parts: Vec<String> = xs.iter().map(|x| format!("{x:.digits$}")).collect();
    format!("[{}]", parts.join(", "))
}

fn scaling_complete_trees() -> Verdict {
    let mut plan = BenchPlan::new(Family::Complete, vec![81, 243, 729], 3);
    plan.seeds_per_cell = 11;
    plan.base_seed = 500;
    let records = bench::run_bench(&plan).unwrap();
    let (medians, ratios, failed) = ratios(&records);
    verdict(
        failed == 0 && ratios.iter().all(|&r| r <= 3.5),
        format!(
            "medians {} ratios {} (need ≤ 3.5), {failed} failed rows",
            fmt_list(&medians, 0),
            fmt_list(&ratios, 3)
        ),
    )
}

fn scaling_caterpillars() -> Verdict {
    let mut plan = BenchPlan::new(Family::Caterpillar, vec![64, 128, 256, 512], 3);
    plan.seeds_per_cell = 11;
    plan.base_seed = 600;
    let records = bench::run_bench(&plan).unwrap();
    let (medians, ratios, failed) = ratios(&records);
    verdict(
        failed == 0 && ratios.iter().all(|&r| (3.0..=5.0).contains(&r)),
        format!(
            "medians {} ratios {} (need within [3, 5]), {failed} failed rows",
            fmt_list(&medians, 0),
            fmt_list(&ratios, 3)
        ),
    )
}

fn hybrid_normalization() -> Verdict {
    let mut all = Vec::new();
    let mut cell_medians = Vec::new();
    for h in [SizeExpr::ThreeLog, SizeExpr::Sqrt] {
        let mut plan = BenchPlan::new(Family::Hybrid, vec![64, 128, 256, 512], 2);
        plan.h = Some(h);
        plan.seeds_per_cell = 7;
        plan.base_seed = 700;
        let records = bench::run_bench(&plan).unwrap();
        cell_medians.extend(bench::summarize(&records).iter().filter_map(|c| c.median_norm_tree));
        all.extend(records);
    }
    let failed = all.iter().filter(|r| !r.success).count();
    let spread = |xs: &[f64]| {
        let lo = xs.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = xs.iter().copied().fold(0.0, f64::max);
        hi / lo
    };
    let rows: Vec<f64> = all.iter().filter_map(|r| r.norm_tree()).collect();
    let cells = spread(&cell_medians);
    verdict(
        failed == 0 && cell_medians.len() == 8 && cells < 4.0,
        format!(
            "cell medians {} spread {cells:.2}x (need < 4x); per-row spread {:.2}x over {} rows; {failed} failed rows",
            fmt_list(&cell_medians, 4),
            spread(&rows),
            rows.len()
        ),
    )
}

fn caterpillar_single_bit() -> Verdict {
    let mut good = 0;
    let mut bad = Vec::new();
    for p in 0..50u64 {
        let n = 8 + 2 * (p as usize % 60);
        let pair = generate::gen_caterpillar(&GenSpec::new(Family::Caterpillar, n, 3, 9_000 + p)).unwrap();
        let (i, j) = pair.legs;
        let m = n / 2;
        let expected = (caterpillar_vertex(m + i), caterpillar_vertex(m + j));
        let with = closure_pairs(&pair.with_extra.graph);
        let without = closure_pairs(&pair.plain);
        let diff: Vec<Edge> = with.symmetric_difference(&without).copied().collect();
        if diff == [expected] {
            good += 1;
        } else {
            bad.push(format!("n={n}: {diff:?}"));
        }
    }
    verdict(
        good == 50,
        format!(
            "{good}/50 pairs differ in exactly the leg pair{}",
            bad.first().map(|b| format!("; first mismatch {b}")).unwrap_or_default()
        ),
    )
}

fn rerun_determinism() -> Verdict {
    // the second grid uses a retry cap of one so that some rows fail
    let mut plans = Vec::new();
    let mut ok_plan = BenchPlan::new(Family::AlmostTree, vec![40, 120], 4);
    ok_plan.seeds_per_cell = 6;
    plans.push(ok_plan);
    let mut failing = BenchPlan::new(Family::Tree, vec![60, 200], 3);
    failing.seeds_per_cell = 6;
    failing.retry_cap_multiplier = 0;
    failing.base_seed = 77;
    plans.push(failing);

    let (mut replayed, mut identical, mut failing_rows) = (0, 0, 0);
    for plan in &plans {
        let records = bench::run_bench(plan).unwrap();
        let mut csv = Vec::new();
        bench::write_csv(&mut csv, &records).unwrap();
        let rows = bench::read_csv(csv.as_slice()).unwrap();
        for (row, original) in rows.iter().zip(&records) {
            let again = bench::rerun_row(row, plan.retry_cap_multiplier).unwrap();
            replayed += 1;
            failing_rows += !original.success as usize;
            identical += (again.transcript_hash == original.transcript_hash
                && again.total_queries == original.total_queries
                && again.success == original.success) as usize;
        }
    }
    verdict(
        identical == replayed && failing_rows > 0,
        format!("{identical}/{replayed} rows replayed from CSV with identical transcript hash ({failing_rows} failing rows)"),
    )
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Verdict); 9] = [
        ("exactness on almost-trees", exactness_almost_trees),
        ("exactness on plain trees", exactness_trees),
        ("splittable vertex exists", splittable_vertex_exists),
        ("SCC exactness and budget", scc_budget_and_exactness),
        ("complete ternary tree scaling", scaling_complete_trees),
        ("caterpillar scaling", scaling_caterpillars),
        ("hybrid normalized cost", hybrid_normalization),
        ("caterpillar single-bit difference", caterpillar_single_bit),
        ("CSV rerun determinism", rerun_determinism),
    ];
    let mut failed = 0;
    for (idx, (name, check)) in criteria.iter().enumerate() {
        let v = check();
        failed += !v.pass as usize;
        println!(
            "[{}] criterion {} ({name}): {}",
            if v.pass { "PASS" } else { "FAIL" },
            idx + 1,
            v.detail
        );
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
