//! `pathquery`: generate hidden graphs, run the learners against counted
//! oracles, and produce scaling reports.
//!
//! Exit codes: 0 success, 1 verification failure, 2 invalid input.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use pathquery::bench::{self, Algo, BenchPlan, Learned, RunOptions, SizeExpr};
use pathquery::generate::{self, Family, GenSpec};
use pathquery::{DirectedGraph, Error};
use serde_json::json;

#[derive(Parser)]
#[command(name = "pathquery", version, about = "Reconstruct hidden directed graphs from path queries")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate one instance and write it as graph JSON plus a `.meta.json` sidecar.
    Gen(GenArgs),
    /// Run a learner on a graph file and check the result against it.
    Learn(LearnArgs),
    /// Run a grid of generated instances and write a CSV report.
    Bench(BenchArgs),
    /// Check whether a graph file meets a learner's promise.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct GenArgs {
    #[arg(long)]
    family: Family,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 3)]
    d: usize,
    /// Target height (hybrid): a number, `log` for ⌈3·log₂ n⌉, or `sqrt`.
    #[arg(long)]
    h: Option<SizeExpr>,
    /// Component count (scc): a number, `sqrt`, or `n`.
    #[arg(long)]
    k: Option<SizeExpr>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct LearnArgs {
    graph: PathBuf,
    #[arg(long, default_value = "almost_tree")]
    algo: Algo,
    /// Degree bound handed to the learner; defaults to the graph's maximum degree.
    #[arg(long)]
    d: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 48)]
    retry_cap_multiplier: usize,
    /// Also write the query transcript, one `u,v,bit,phase` line per query.
    #[arg(long)]
    transcript: Option<PathBuf>,
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long)]
    family: Family,
    /// Comma-separated sizes.
    #[arg(long, value_delimiter = ',', required = true)]
    n: Vec<usize>,
    #[arg(long, default_value_t = 3)]
    d: usize,
    #[arg(long)]
    h: Option<SizeExpr>,
    #[arg(long)]
    k: Option<SizeExpr>,
    /// First seed; cell rows use `seed, seed+1, ...`.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 5)]
    seeds_per_cell: usize,
    #[arg(long)]
    algo: Option<Algo>,
    #[arg(long, default_value_t = 48)]
    retry_cap_multiplier: usize,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct VerifyArgs {
    graph: PathBuf,
}

enum Failure {
    Verification(String),
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.to_string())
    }
}

fn meta_path(out: &Path) -> PathBuf {
    let mut s = out.as_os_str().to_owned();
    s.push(".meta.json");
    PathBuf::from(s)
}

/// Prints to stdout, ignoring a closed pipe.
fn emit(text: &str) {
    let mut out = io::stdout().lock();
    let _ = writeln!(out, "{text}");
}

fn write_or_print(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Input(format!("{}: {e}", p.display()))),
        None => {
            emit(text);
            Ok(())
        }
    }
}

fn cmd_gen(a: GenArgs) -> Result<(), Failure> {
    let mut spec = GenSpec::new(a.family, a.n, a.d, a.seed);
    spec.h = a.h.map(|e| e.eval(a.n));
    spec.k = a.k.map(|e| e.eval(a.n));
    let inst = generate::generate(&spec)?;
    inst.graph.write_json(&a.out)?;
    let meta = serde_json::to_string_pretty(&inst.meta).map_err(Error::from)?;
    fs::write(meta_path(&a.out), meta).map_err(Error::from)?;
    eprintln!(
        "wrote {} ({} vertices, {} edges)",
        a.out.display(),
        inst.graph.n(),
        inst.graph.edges().len()
    );
    Ok(())
}

fn cmd_learn(a: LearnArgs) -> Result<(), Failure> {
    let hidden = DirectedGraph::read_json(&a.graph)?;
    let opts = RunOptions {
        algo: a.algo,
        d: a.d.unwrap_or_else(|| hidden.max_total_degree()).max(2),
        seed: a.seed,
        retry_cap_multiplier: a.retry_cap_multiplier,
        keep_transcript: a.transcript.is_some(),
    };
    let outcome = bench::run_learner(&hidden, &opts);
    if let (Some(path), Some(t)) = (&a.transcript, &outcome.transcript) {
        fs::write(path, t).map_err(Error::from)?;
    }
    let output = match &outcome.learned {
        Some(Learned::Graph(g)) => serde_json::to_value(g),
        Some(Learned::Scc(p)) => serde_json::to_value(p),
        None => Ok(serde_json::Value::Null),
    }
    .map_err(Error::from)?;
    let report = json!({ "record": outcome.record, "output": output });
    let text = serde_json::to_string_pretty(&report).map_err(Error::from)?;
    write_or_print(a.out.as_deref(), &text)?;
    match outcome.record.error {
        None => Ok(()),
        Some(e) => Err(Failure::Verification(e)),
    }
}

fn cmd_bench(a: BenchArgs) -> Result<(), Failure> {
    let plan = BenchPlan {
        family: a.family,
        sizes: a.n,
        d: a.d,
        h: a.h,
        k: a.k,
        seeds_per_cell: a.seeds_per_cell,
        base_seed: a.seed,
        algo: a.algo,
        retry_cap_multiplier: a.retry_cap_multiplier,
    };
    let records = bench::run_bench(&plan)?;
    let file = fs::File::create(&a.out).map_err(Error::from)?;
    bench::write_csv(file, &records)?;
    emit(bench::format_summary(&bench::summarize(&records)).trim_end());
    let failed: Vec<_> = records.iter().filter(|r| !r.success).collect();
    if failed.is_empty() {
        return Ok(());
    }
    for r in &failed {
        eprintln!(
            "failed: n={} seed={}: {}",
            r.gen_spec.as_ref().map_or(r.n, |s| s.n),
            r.seed,
            r.error.as_deref().unwrap_or("mismatch")
        );
    }
    Err(Failure::Verification(format!("{} of {} rows failed", failed.len(), records.len())))
}

fn cmd_verify(a: VerifyArgs) -> Result<(), Failure> {
    let g = DirectedGraph::read_json(&a.graph)?;
    if g.root().is_none() {
        let scc = g.strongly_connected_components();
        let bad = g.transitive_cross_edges();
        let report = json!({
            "components": scc.components.len(),
            "condensation_edges": scc.condensation_edges.len(),
            "transitive_cross_edges": bad,
        });
        emit(&serde_json::to_string_pretty(&report).map_err(Error::from)?);
        if !bad.is_empty() {
            return Err(Failure::Verification("rejected: transitive-cross-edge".into()));
        }
        return Ok(());
    }
    match g.validate_almost_tree() {
        Ok(cert) => {
            emit(&serde_json::to_string_pretty(&cert).map_err(Error::from)?);
            Ok(())
        }
        Err(Error::Rejected { reason, detail }) => {
            Err(Failure::Verification(format!("rejected: {}: {detail}", reason.as_str())))
        }
        Err(e) => Err(e.into()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Gen(a) => cmd_gen(a),
        Command::Learn(a) => cmd_learn(a),
        Command::Bench(a) => cmd_bench(a),
        Command::Verify(a) => cmd_verify(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
