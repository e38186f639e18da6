//! Experiment records, benchmark grids and CSV reports.
//!
//! Every row is driven by one 64-bit seed. The generator uses it directly and
//! the learner's oracle is seeded with [`learner_seed`] of it, so a row can be
//! replayed from its CSV line alone.

use std::collections::BTreeMap;
use std::fmt;
use std::io;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::almost_tree::{self, LearnerConfig};
use crate::error::{Error, Result};
use crate::generate::{generate, Family, GenSpec};
use crate::graph::DirectedGraph;
use crate::oracle::QueryOracle;
use crate::scc::{self, SccPartition};

const LEARNER_SEED_MIX: u64 = 0x9E37_79B9_7F4A_7C15;

/// Oracle seed used for a row seeded with `seed`.
pub fn learner_seed(seed: u64) -> u64 {
    seed ^ LEARNER_SEED_MIX
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Algo {
    Scc,
    AlmostTree,
}

impl Algo {
    pub fn as_str(self) -> &'static str {
        match self {
            Algo::Scc => "scc",
            Algo::AlmostTree => "almost_tree",
        }
    }

    pub fn default_for(family: Family) -> Algo {
        match family {
            Family::Scc => Algo::Scc,
            _ => Algo::AlmostTree,
        }
    }
}

impl fmt::Display for Algo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Algo {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "scc" => Ok(Algo::Scc),
            "almost_tree" | "almost-tree" => Ok(Algo::AlmostTree),
            other => Err(Error::invalid(format!("unknown algorithm {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentRecord {
    pub gen_spec: Option<GenSpec>,
    pub algo: Algo,
    /// Vertex count of the hidden graph.
    pub n: usize,
    /// Degree bound handed to the learner.
    pub d: usize,
    pub h: Option<usize>,
    pub k: Option<usize>,
    pub seed: u64,
    pub total_queries: u64,
    pub distinct_queries: u64,
    pub phase_queries: BTreeMap<String, u64>,
    pub success: bool,
    pub error: Option<String>,
    pub retries: usize,
    pub wall_ms: f64,
    pub transcript_hash: u64,
}

impl ExperimentRecord {
    /// Sum of phase counters labelled `prefix` or `prefix/...`.
    pub fn phase_total(&self, prefix: &str) -> u64 {
        self.phase_queries
            .iter()
            .filter(|(k, _)| {
                k.as_str() == prefix
                    || (k.starts_with(prefix) && k.as_bytes().get(prefix.len()) == Some(&b'/'))
            })
            .map(|(_, c)| c)
            .sum()
    }

    /// `total / (n·log₂³n + n·h)`.
    pub fn norm_tree(&self) -> Option<f64> {
        let h = self.h?;
        let n = self.n as f64;
        let denom = n * n.log2().powi(3) + n * h as f64;
        (denom > 0.0).then(|| self.total_queries as f64 / denom)
    }

    /// `total / (n·k)`.
    pub fn norm_scc(&self) -> Option<f64> {
        let k = self.k?;
        let denom = (self.n * k) as f64;
        (denom > 0.0).then(|| self.total_queries as f64 / denom)
    }

    pub fn to_row(&self) -> BenchRow {
        let spec = self.gen_spec.as_ref();
        let tree = self.algo == Algo::AlmostTree;
        BenchRow {
            family: spec.map(|s| s.family.as_str().to_owned()).unwrap_or_default(),
            n: spec.map_or(self.n, |s| s.n),
            d: spec.map_or(self.d, |s| s.d),
            h: self.h,
            k: self.k,
            seed: self.seed,
            algo: self.algo.as_str().to_owned(),
            total_queries: self.total_queries,
            phase_root: tree.then(|| self.phase_total(almost_tree::PHASE_ROOT)),
            phase_layered: tree.then(|| self.phase_total("layered")),
            phase_cross: tree.then(|| self.phase_total("cross")),
            retries: self.retries,
            success: self.success as u8,
            wall_ms: self.wall_ms,
            norm_tree: self.norm_tree(),
            norm_scc: self.norm_scc(),
        }
    }
}

/// One CSV line. Column order is fixed by field order.
///
/// `n` and `d` are the generator parameters, so a caterpillar row with
/// `n = 8` describes a 7-vertex instance and hybrid/complete rows carry the
/// arity. Phase columns are empty for `scc` rows.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub family: String,
    pub n: usize,
    pub d: usize,
    pub h: Option<usize>,
    pub k: Option<usize>,
    pub seed: u64,
    pub algo: String,
    pub total_queries: u64,
    pub phase_root: Option<u64>,
    pub phase_layered: Option<u64>,
    pub phase_cross: Option<u64>,
    pub retries: usize,
    pub success: u8,
    pub wall_ms: f64,
    pub norm_tree: Option<f64>,
    pub norm_scc: Option<f64>,
}

pub const CSV_HEADER: &str = "family,n,d,h,k,seed,algo,total_queries,phase_root,phase_layered,phase_cross,retries,success,wall_ms,norm_tree,norm_scc";

impl BenchRow {
    pub fn gen_spec(&self) -> Result<GenSpec> {
        Ok(GenSpec {
            family: self.family.parse()?,
            n: self.n,
            d: self.d,
            h: self.h,
            k: self.k,
            seed: self.seed,
        })
    }

    /// Lossy inverse of [`ExperimentRecord::to_row`]: fine-grained phase
    /// labels collapse to `root`/`layered`/`cross`, and the transcript hash
    /// and distinct count are not stored.
    pub fn to_record(&self) -> Result<ExperimentRecord> {
        let spec = self.gen_spec()?;
        let mut phase_queries = BTreeMap::new();
        for (label, value) in [
            ("root", self.phase_root),
            ("layered", self.phase_layered),
            ("cross", self.phase_cross),
        ] {
            if let Some(v) = value {
                phase_queries.insert(label.to_owned(), v);
            }
        }
        let n = match spec.family {
            Family::Caterpillar => spec.n - 1,
            _ => spec.n,
        };
        Ok(ExperimentRecord {
            gen_spec: Some(spec),
            algo: self.algo.parse()?,
            n,
            d: self.d,
            h: self.h,
            k: self.k,
            seed: self.seed,
            total_queries: self.total_queries,
            distinct_queries: 0,
            phase_queries,
            success: self.success == 1,
            error: None,
            retries: self.retries,
            wall_ms: self.wall_ms,
            transcript_hash: 0,
        })
    }
}

pub fn write_csv<W: io::Write>(out: W, records: &[ExperimentRecord]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in records {
        w.serialize(r.to_row())?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_csv<R: io::Read>(input: R) -> Result<Vec<BenchRow>> {
    let mut rd = csv::Reader::from_reader(input);
    let mut rows = Vec::new();
    for row in rd.deserialize() {
        rows.push(row?);
    }
    Ok(rows)
}

/// What a learner produced.
#[derive(Debug, Clone, PartialEq)]
pub enum Learned {
    Graph(DirectedGraph),
    Scc(SccPartition),
}

#[derive(Debug, Clone)]
pub struct Outcome {
    pub record: ExperimentRecord,
    pub learned: Option<Learned>,
    pub transcript: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunOptions {
    pub algo: Algo,
    pub d: usize,
    pub seed: u64,
    pub retry_cap_multiplier: usize,
    pub keep_transcript: bool,
}

/// Runs a learner against `hidden` and checks the result against it.
pub fn run_learner(hidden: &DirectedGraph, opts: &RunOptions) -> Outcome {
    let mut oracle = QueryOracle::new(hidden.clone(), learner_seed(opts.seed));
    if opts.keep_transcript {
        oracle = oracle.with_transcript();
    }
    let started = Instant::now();
    let mut retries = 0;
    let learned = match opts.algo {
        Algo::AlmostTree => {
            let config = LearnerConfig {
                d: opts.d,
                retry_cap_multiplier: opts.retry_cap_multiplier,
            };
            almost_tree::reconstruct_rooted_graph(&mut oracle, &config).map(|rec| {
                retries = rec.stats.retries;
                Learned::Graph(rec.graph)
            })
        }
        Algo::Scc => scc::learn_scc(&mut oracle).map(Learned::Scc),
    };
    let wall_ms = (started.elapsed().as_secs_f64() * 1e6).round() / 1e3;

    let (success, error, learned) = match learned {
        Ok(l) => match verify(hidden, &l) {
            Ok(()) => (true, None, Some(l)),
            Err(msg) => (false, Some(msg), Some(l)),
        },
        Err(e) => (false, Some(e.to_string()), None),
    };
    let record = ExperimentRecord {
        gen_spec: None,
        algo: opts.algo,
        n: hidden.n(),
        d: opts.d,
        h: hidden.height().ok(),
        k: None,
        seed: opts.seed,
        total_queries: oracle.total_queries(),
        distinct_queries: oracle.distinct_queries(),
        phase_queries: oracle.per_phase().clone(),
        success,
        error,
        retries,
        wall_ms,
        transcript_hash: oracle.transcript_hash(),
    };
    Outcome {
        record,
        learned,
        transcript: oracle.dump_transcript(),
    }
}

/// Exact comparison with ground truth.
pub fn verify(hidden: &DirectedGraph, learned: &Learned) -> std::result::Result<(), String> {
    match learned {
        Learned::Graph(g) => {
            if g.edge_set() == hidden.edge_set() {
                Ok(())
            } else {
                let want = hidden.edge_set();
                let got = g.edge_set();
                Err(format!(
                    "edge sets differ: missing {:?}, spurious {:?}",
                    want.difference(&got).collect::<Vec<_>>(),
                    got.difference(&want).collect::<Vec<_>>()
                ))
            }
        }
        Learned::Scc(p) => {
            let truth = hidden.strongly_connected_components();
            if p.component_sets() != truth.component_sets() {
                return Err("component partition differs from ground truth".into());
            }
            if p.condensation_as_sets() != truth.condensation_as_sets() {
                return Err("condensation edges differ from ground truth".into());
            }
            Ok(())
        }
    }
}

/// Generates the instance for `spec` and runs `algo` on it.
pub fn run_spec(spec: &GenSpec, algo: Algo, retry_cap_multiplier: usize) -> Result<ExperimentRecord> {
    let inst = generate(spec)?;
    // random trees come with a promised bound; fixed shapes report their own
    let d = match spec.family {
        Family::Tree | Family::AlmostTree => spec.d,
        _ => inst.meta.d,
    };
    let opts = RunOptions {
        algo,
        d: d.max(2),
        seed: spec.seed,
        retry_cap_multiplier,
        keep_transcript: false,
    };
    let mut record = run_learner(&inst.graph, &opts).record;
    record.gen_spec = Some(spec.clone());
    record.k = inst.meta.k;
    Ok(record)
}

/// Replays a CSV row from its parameters and seed.
pub fn rerun_row(row: &BenchRow, retry_cap_multiplier: usize) -> Result<ExperimentRecord> {
    run_spec(&row.gen_spec()?, row.algo.parse()?, retry_cap_multiplier)
}

/// A size-dependent parameter such as `h = ⌈3·log₂ n⌉`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SizeExpr {
    Fixed(usize),
    /// `⌈3·log₂ n⌉`
    ThreeLog,
    /// `⌈√n⌉`
    Sqrt,
    /// `n` itself
    Full,
}

impl SizeExpr {
    pub fn eval(self, n: usize) -> usize {
        match self {
            SizeExpr::Fixed(v) => v,
            SizeExpr::ThreeLog => (3.0 * (n as f64).log2()).ceil() as usize,
            SizeExpr::Sqrt => (n as f64).sqrt().ceil() as usize,
            SizeExpr::Full => n,
        }
    }
}

impl FromStr for SizeExpr {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "log" | "3log" => Ok(SizeExpr::ThreeLog),
            "sqrt" => Ok(SizeExpr::Sqrt),
            "n" => Ok(SizeExpr::Full),
            other => other
                .parse()
                .map(SizeExpr::Fixed)
                .map_err(|_| Error::invalid(format!("bad size expression {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchPlan {
    pub family: Family,
    pub sizes: Vec<usize>,
    pub d: usize,
    pub h: Option<SizeExpr>,
    pub k: Option<SizeExpr>,
    pub seeds_per_cell: usize,
    pub base_seed: u64,
    pub algo: Option<Algo>,
    pub retry_cap_multiplier: usize,
}

impl BenchPlan {
    pub fn new(family: Family, sizes: Vec<usize>, d: usize) -> Self {
        BenchPlan {
            family,
            sizes,
            d,
            h: None,
            k: None,
            seeds_per_cell: 5,
            base_seed: 0,
            algo: None,
            retry_cap_multiplier: 48,
        }
    }

    pub fn specs(&self) -> Vec<GenSpec> {
        let mut out = Vec::with_capacity(self.sizes.len() * self.seeds_per_cell);
        for &n in &self.sizes {
            for s in 0..self.seeds_per_cell {
                out.push(GenSpec {
                    family: self.family,
                    n,
                    d: self.d,
                    h: self.h.map(|e| e.eval(n)),
                    k: self.k.map(|e| e.eval(n)),
                    seed: self.base_seed.wrapping_add(s as u64),
                });
            }
        }
        out
    }
}

/// Runs every (size, seed) row of the plan in parallel; output follows plan order.
pub fn run_bench(plan: &BenchPlan) -> Result<Vec<ExperimentRecord>> {
    if plan.sizes.is_empty() || plan.seeds_per_cell == 0 {
        return Err(Error::invalid("benchmark grid is empty"));
    }
    let algo = plan.algo.unwrap_or_else(|| Algo::default_for(plan.family));
    plan.specs()
        .par_iter()
        .map(|spec| run_spec(spec, algo, plan.retry_cap_multiplier))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CellSummary {
    pub n: usize,
    pub h: Option<usize>,
    pub k: Option<usize>,
    pub runs: usize,
    pub successes: usize,
    pub median_queries: f64,
    pub median_norm_tree: Option<f64>,
    pub median_norm_scc: Option<f64>,
    /// Median queries divided by the previous cell's median.
    pub ratio_to_previous: Option<f64>,
}

pub fn median(values: &mut [f64]) -> Option<f64> {
    if values.is_empty() {
        return None;
    }
    values.sort_by(|a, b| a.total_cmp(b));
    let mid = values.len() / 2;
    Some(if values.len() % 2 == 1 {
        values[mid]
    } else {
        (values[mid - 1] + values[mid]) / 2.0
    })
}

/// Groups records by generator size (in first-seen order) and reports medians
/// and adjacent-size ratios.
pub fn summarize(records: &[ExperimentRecord]) -> Vec<CellSummary> {
    let mut order: Vec<usize> = Vec::new();
    let mut cells: BTreeMap<usize, Vec<&ExperimentRecord>> = BTreeMap::new();
    for r in records {
        let n = r.gen_spec.as_ref().map_or(r.n, |s| s.n);
        if !cells.contains_key(&n) {
            order.push(n);
        }
        cells.entry(n).or_default().push(r);
    }
    let mut out: Vec<CellSummary> = Vec::new();
    for n in order {
        let rows = &cells[&n];
        let mut queries: Vec<f64> = rows.iter().map(|r| r.total_queries as f64).collect();
        let mut tree: Vec<f64> = rows.iter().filter_map(|r| r.norm_tree()).collect();
        let mut sccn: Vec<f64> = rows.iter().filter_map(|r| r.norm_scc()).collect();
        let median_queries = median(&mut queries).unwrap_or(0.0);
        let ratio_to_previous = out
            .last()
            .filter(|prev| prev.median_queries > 0.0)
            .map(|prev| median_queries / prev.median_queries);
        out.push(CellSummary {
            n,
            h: rows[0].h,
            k: rows[0].k,
            runs: rows.len(),
            successes: rows.iter().filter(|r| r.success).count(),
            median_queries,
            median_norm_tree: median(&mut tree),
            median_norm_scc: median(&mut sccn),
            ratio_to_previous,
        });
    }
    out
}

pub fn format_summary(cells: &[CellSummary]) -> String {
    let fmt_opt = |v: Option<f64>| v.map_or_else(|| "-".to_owned(), |x| format!("{x:.4}"));
    let mut s = String::from("n\truns\tok\tmedian_queries\tratio\tnorm_tree\tnorm_scc\n");
    for c in cells {
        s.push_str(&format!(
            "{}\t{}\t{}\t{:.1}\t{}\t{}\t{}\n",
            c.n,
            c.runs,
            c.successes,
            c.median_queries,
            fmt_opt(c.ratio_to_previous),
            fmt_opt(c.median_norm_tree),
            fmt_opt(c.median_norm_scc),
        ));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::{a1, g2};

    fn opts(algo: Algo) -> RunOptions {
        RunOptions {
            algo,
            d: 3,
            seed: 7,
            retry_cap_multiplier: 48,
            keep_transcript: false,
        }
    }

    #[test]
    fn learn_records_on_fixtures() {
        let out = run_learner(&a1(), &opts(Algo::AlmostTree));
        assert!(out.record.success, "{:?}", out.record.error);
        assert_eq!(out.learned, Some(Learned::Graph(a1())));
        let r = &out.record;
        assert_eq!(r.total_queries, r.phase_queries.values().sum::<u64>());

        let out = run_learner(&g2(), &opts(Algo::Scc));
        assert!(out.record.success);
        match out.learned {
            Some(Learned::Scc(p)) => assert_eq!(p.components.len(), 2),
            other => panic!("unexpected {other:?}"),
        }

        let out = run_learner(&a1(), &opts(Algo::Scc));
        assert!(out.record.success);
    }

    #[test]
    fn promise_violation_is_a_failed_record() {
        let out = run_learner(&g2(), &opts(Algo::AlmostTree));
        assert!(!out.record.success);
        assert!(out.record.error.is_some());
    }

    #[test]
    fn size_expressions() {
        assert_eq!("log".parse::<SizeExpr>().unwrap().eval(64), 18);
        assert_eq!("sqrt".parse::<SizeExpr>().unwrap().eval(50), 8);
        assert_eq!("n".parse::<SizeExpr>().unwrap().eval(9), 9);
        assert_eq!("4".parse::<SizeExpr>().unwrap().eval(9), 4);
        assert!("x".parse::<SizeExpr>().is_err());
    }

    #[test]
    fn median_even_and_odd() {
        assert_eq!(median(&mut [3.0, 1.0, 2.0]), Some(2.0));
        assert_eq!(median(&mut [4.0, 1.0, 2.0, 3.0]), Some(2.5));
        assert_eq!(median(&mut []), None);
    }

    #[test]
    fn csv_has_fixed_header() {
        let rec = run_spec(&GenSpec::new(Family::Tree, 20, 3, 1), Algo::AlmostTree, 48).unwrap();
        let mut buf = Vec::new();
        write_csv(&mut buf, &[rec]).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().next().unwrap(), CSV_HEADER);
    }

    #[test]
    fn empty_grid_is_rejected() {
        let plan = BenchPlan::new(Family::Tree, vec![], 3);
        assert!(run_bench(&plan).is_err());
    }
}
