//! Counted path-query access to a hidden graph.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::bits::BitMatrix;
use crate::error::{Error, Result};
use crate::graph::{DirectedGraph, Vertex};

const FNV_OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
const FNV_PRIME: u64 = 0x0000_0100_0000_01b3;

fn fnv(mut h: u64, bytes: &[u8]) -> u64 {
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(FNV_PRIME);
    }
    h
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TranscriptEntry {
    pub u: Vertex,
    pub v: Vertex,
    pub answer: bool,
    pub phase: String,
}

/// The only way a learner observes the hidden graph.
///
/// Every query is charged, including repeats. The oracle also owns the
/// learner's random source so a run is fully determined by the hidden graph
/// and the seed.
#[derive(Debug)]
pub struct QueryOracle {
    hidden: DirectedGraph,
    closure: BitMatrix,
    asked: BitMatrix,
    total_queries: u64,
    distinct_queries: u64,
    per_phase: BTreeMap<String, u64>,
    transcript_hash: u64,
    transcript: Option<Vec<TranscriptEntry>>,
    rng_seed: u64,
    rng: ChaCha8Rng,
}

impl QueryOracle {
    pub fn new(hidden: DirectedGraph, rng_seed: u64) -> Self {
        let closure = hidden.closure();
        let n = hidden.n();
        QueryOracle {
            hidden,
            closure,
            asked: BitMatrix::new(n),
            total_queries: 0,
            distinct_queries: 0,
            per_phase: BTreeMap::new(),
            transcript_hash: FNV_OFFSET,
            transcript: None,
            rng_seed,
            rng: ChaCha8Rng::seed_from_u64(rng_seed),
        }
    }

    /// Keep every query in memory for [`QueryOracle::dump_transcript`].
    pub fn with_transcript(mut self) -> Self {
        self.transcript = Some(Vec::new());
        self
    }

    /// Number of vertices; the vertex set itself is public knowledge.
    pub fn n(&self) -> usize {
        self.hidden.n()
    }

    /// Answers `Q(u, v)` and charges it to `phase`.
    pub fn query(&mut self, u: Vertex, v: Vertex, phase: &str) -> Result<bool> {
        let n = self.n();
        if u >= n || v >= n {
            return Err(Error::invalid(format!("query ({u},{v}) out of range for n={n}")));
        }
        let answer = self.closure.get(u, v);
        self.total_queries += 1;
        if self.asked.insert(u, v) {
            self.distinct_queries += 1;
        }
        match self.per_phase.get_mut(phase) {
            Some(c) => *c += 1,
            None => {
                self.per_phase.insert(phase.to_owned(), 1);
            }
        }
        let mut h = fnv(self.transcript_hash, &(u as u64).to_le_bytes());
        h = fnv(h, &(v as u64).to_le_bytes());
        h = fnv(h, &[answer as u8]);
        self.transcript_hash = fnv(h, phase.as_bytes());
        if let Some(t) = &mut self.transcript {
            t.push(TranscriptEntry {
                u,
                v,
                answer,
                phase: phase.to_owned(),
            });
        }
        Ok(answer)
    }

    /// Computes `D(i) ∩ V` and `A(i) ∩ V` with exactly `2(|V| - 1)` queries.
    pub fn relative_view(&mut self, i: Vertex, working_set: &[Vertex], phase: &str) -> Result<RelativeView> {
        if !working_set.contains(&i) {
            return Err(Error::invalid(format!("vertex {i} is not in the working set")));
        }
        let mut descendants = Vec::new();
        let mut ancestors = Vec::new();
        for &u in working_set {
            if u == i {
                descendants.push(i);
                ancestors.push(i);
                continue;
            }
            if self.query(i, u, phase)? {
                descendants.push(u);
            }
            if self.query(u, i, phase)? {
                ancestors.push(u);
            }
        }
        Ok(RelativeView {
            base: i,
            working_len: working_set.len(),
            descendants,
            ancestors,
        })
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn rng_seed(&self) -> u64 {
        self.rng_seed
    }

    pub fn total_queries(&self) -> u64 {
        self.total_queries
    }

    pub fn distinct_queries(&self) -> u64 {
        self.distinct_queries
    }

    pub fn per_phase(&self) -> &BTreeMap<String, u64> {
        &self.per_phase
    }

    /// Sum of the counters whose label is `prefix` or starts with `prefix/`.
    pub fn phase_total(&self, prefix: &str) -> u64 {
        self.per_phase
            .iter()
            .filter(|(k, _)| {
                k.as_str() == prefix
                    || (k.starts_with(prefix) && k.as_bytes().get(prefix.len()) == Some(&b'/'))
            })
            .map(|(_, c)| c)
            .sum()
    }

    /// FNV-1a hash over every `(u, v, answer, phase)` record so far.
    pub fn transcript_hash(&self) -> u64 {
        self.transcript_hash
    }

    pub fn transcript(&self) -> Option<&[TranscriptEntry]> {
        self.transcript.as_deref()
    }

    /// Newline-delimited `u,v,bit,phase` records.
    pub fn dump_transcript(&self) -> Option<String> {
        let t = self.transcript.as_ref()?;
        let mut out = String::new();
        for e in t {
            let _ = writeln!(out, "{},{},{},{}", e.u, e.v, e.answer as u8, e.phase);
        }
        Some(out)
    }

    /// Ground truth, for verification after a learner has finished.
    pub fn into_hidden(self) -> DirectedGraph {
        self.hidden
    }
}

/// Descendants and ancestors of one vertex restricted to a working set.
/// Both lists contain `base` and follow the working set's order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelativeView {
    pub base: Vertex,
    pub working_len: usize,
    pub descendants: Vec<Vertex>,
    pub ancestors: Vec<Vertex>,
}
