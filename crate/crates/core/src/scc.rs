//! Learning strongly connected components and the condensation DAG.
//!
//! Partition recovery keeps one representative per discovered component and
//! tests each new vertex against the representatives in discovery order, for
//! at most `2nk` queries. The condensation is then read off with one query per
//! ordered pair of representatives and reduced, since under the
//! no-transitive-cross-edge promise the reduced reachability relation is the
//! cross-edge set.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::graph::{reduce_acyclic, Edge, Vertex};
use crate::error::{Error, Result};
use crate::oracle::QueryOracle;

pub const PHASE_PARTITION: &str = "scc/partition";
pub const PHASE_CONDENSATION: &str = "scc/condensation";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SccPartition {
    /// Each component is sorted; components are ordered by discovery.
    pub components: Vec<Vec<Vertex>>,
    /// Pairs of indices into `components`.
    pub condensation_edges: BTreeSet<Edge>,
}

impl SccPartition {
    /// Components as a set of sets, for order-free comparison.
    pub fn component_sets(&self) -> BTreeSet<BTreeSet<Vertex>> {
        self.components
            .iter()
            .map(|c| c.iter().copied().collect())
            .collect()
    }

    /// Condensation edges in terms of member sets rather than indices.
    pub fn condensation_as_sets(&self) -> BTreeSet<(BTreeSet<Vertex>, BTreeSet<Vertex>)> {
        let sets: Vec<BTreeSet<Vertex>> = self
            .components
            .iter()
            .map(|c| c.iter().copied().collect())
            .collect();
        self.condensation_edges
            .iter()
            .map(|&(a, b)| (sets[a].clone(), sets[b].clone()))
            .collect()
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(self).expect("partition serialization cannot fail")
    }
}

pub fn learn_partition(o: &mut QueryOracle) -> Result<Vec<Vec<Vertex>>> {
    let order: Vec<Vertex> = (0..o.n()).collect();
    learn_partition_in_order(o, &order)
}

/// Partition recovery processing vertices in the given order. The first vertex
/// of each component in `order` becomes its representative.
pub fn learn_partition_in_order(o: &mut QueryOracle, order: &[Vertex]) -> Result<Vec<Vec<Vertex>>> {
    let mut reps: Vec<Vertex> = Vec::new();
    let mut components: Vec<Vec<Vertex>> = Vec::new();
    for &v in order {
        let mut home = None;
        for (idx, &r) in reps.iter().enumerate() {
            if o.query(v, r, PHASE_PARTITION)? && o.query(r, v, PHASE_PARTITION)? {
                home = Some(idx);
                break;
            }
        }
        match home {
            Some(idx) => components[idx].push(v),
            None => {
                reps.push(v);
                components.push(vec![v]);
            }
        }
    }
    for c in &mut components {
        c.sort_unstable();
    }
    Ok(components)
}

/// One query per ordered pair of components, `k(k-1)` in total.
pub fn learn_condensation(o: &mut QueryOracle, components: &[Vec<Vertex>]) -> Result<BTreeSet<Edge>> {
    let k = components.len();
    let reps: Vec<Vertex> = components
        .iter()
        .map(|c| {
            c.first()
                .copied()
                .ok_or_else(|| Error::invalid("empty component"))
        })
        .collect::<Result<_>>()?;
    let mut reach = vec![vec![false; k]; k];
    for i in 0..k {
        for j in 0..k {
            if i != j {
                reach[i][j] = o.query(reps[i], reps[j], PHASE_CONDENSATION)?;
            }
        }
    }
    let mut relation = Vec::new();
    for i in 0..k {
        for j in 0..k {
            if reach[i][j] {
                if reach[j][i] {
                    return Err(Error::promise(format!(
                        "components {i} and {j} reach each other"
                    )));
                }
                relation.push((i, j));
            }
        }
    }
    Ok(reduce_acyclic(k, &relation))
}

pub fn learn_scc(o: &mut QueryOracle) -> Result<SccPartition> {
    let components = learn_partition(o)?;
    let condensation_edges = learn_condensation(o, &components)?;
    Ok(SccPartition {
        components,
        condensation_edges,
    })
}
