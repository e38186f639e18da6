//! Ground-truth directed graphs and the brute-force checks used to verify learners.
//!
//! Everything in this module sees the whole edge list, so none of it may be
//! called from a learner: learners only talk to a [`QueryOracle`](crate::QueryOracle).
//!
//! Reachability follows the empty-path convention: every vertex reaches
//! itself, so `u` is always a member of its own descendant and ancestor sets.

use std::collections::{BTreeSet, VecDeque};
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::bits::BitMatrix;
use crate::error::{Error, Rejection, Result};
use crate::scc::SccPartition;

pub type Vertex = usize;
pub type Edge = (Vertex, Vertex);

#[derive(Debug, Deserialize)]
struct RawGraph {
    n: usize,
    root: Option<Vertex>,
    edges: Vec<Edge>,
}

/// A hidden directed graph on vertices `0..n`.
///
/// Edges are kept sorted and free of self-loops and duplicates. When a root is
/// present every vertex is reachable from it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawGraph")]
pub struct DirectedGraph {
    n: usize,
    root: Option<Vertex>,
    edges: Vec<Edge>,
}

impl TryFrom<RawGraph> for DirectedGraph {
    type Error = Error;

    fn try_from(raw: RawGraph) -> Result<Self> {
        DirectedGraph::new(raw.n, raw.root, raw.edges)
    }
}

impl DirectedGraph {
    pub fn new(n: usize, root: Option<Vertex>, edges: impl IntoIterator<Item = Edge>) -> Result<Self> {
        let mut edges: Vec<Edge> = edges.into_iter().collect();
        for &(u, v) in &edges {
            if u >= n || v >= n {
                return Err(Error::invalid(format!("edge ({u},{v}) out of range for n={n}")));
            }
            if u == v {
                return Err(Error::invalid(format!("self-loop at {u}")));
            }
        }
        edges.sort_unstable();
        if let Some(w) = edges.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::invalid(format!("duplicate edge ({},{})", w[0].0, w[0].1)));
        }
        let g = DirectedGraph { n, root, edges };
        if let Some(r) = root {
            if r >= n {
                return Err(Error::invalid(format!("root {r} out of range for n={n}")));
            }
            let seen = g.reachable_from(r);
            if let Some(v) = seen.iter().position(|&s| !s) {
                return Err(Error::invalid(format!("vertex {v} is not reachable from root {r}")));
            }
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn root(&self) -> Option<Vertex> {
        self.root
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_set(&self) -> BTreeSet<Edge> {
        self.edges.iter().copied().collect()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.edges.binary_search(&(u, v)).is_ok()
    }

    /// Out-neighbour lists, each sorted ascending.
    pub fn successors(&self) -> Vec<Vec<Vertex>> {
        let mut out = vec![Vec::new(); self.n];
        for &(u, v) in &self.edges {
            out[u].push(v);
        }
        out
    }

    pub fn predecessors(&self) -> Vec<Vec<Vertex>> {
        let mut inn = vec![Vec::new(); self.n];
        for &(u, v) in &self.edges {
            inn[v].push(u);
        }
        for list in &mut inn {
            list.sort_unstable();
        }
        inn
    }

    pub fn in_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for &(_, v) in &self.edges {
            deg[v] += 1;
        }
        deg
    }

    /// Maximum of in-degree plus out-degree over all vertices.
    pub fn max_total_degree(&self) -> usize {
        let mut deg = vec![0usize; self.n];
        for &(u, v) in &self.edges {
            deg[u] += 1;
            deg[v] += 1;
        }
        deg.into_iter().max().unwrap_or(0)
    }

    fn check_vertex(&self, v: Vertex) -> Result<()> {
        if v >= self.n {
            return Err(Error::invalid(format!("vertex {v} out of range for n={}", self.n)));
        }
        Ok(())
    }

    fn reachable_from(&self, start: Vertex) -> Vec<bool> {
        let succ = self.successors();
        let mut seen = vec![false; self.n];
        seen[start] = true;
        let mut stack = vec![start];
        while let Some(x) = stack.pop() {
            for &y in &succ[x] {
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        seen
    }

    /// Path query by depth-first search. `reaches(u, u)` is always true.
    pub fn reaches(&self, u: Vertex, v: Vertex) -> Result<bool> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        Ok(self.reachable_from(u)[v])
    }

    /// Reflexive transitive closure: bit `(u, v)` is set iff `u` reaches `v`.
    pub fn closure(&self) -> BitMatrix {
        let succ = self.successors();
        let mut m = BitMatrix::new(self.n);
        let mut queue = VecDeque::new();
        for s in 0..self.n {
            m.insert(s, s);
            queue.push_back(s);
            while let Some(x) = queue.pop_front() {
                for &y in &succ[x] {
                    if m.insert(s, y) {
                        queue.push_back(y);
                    }
                }
            }
        }
        m
    }

    /// Kahn order, or `None` when the graph has a cycle.
    pub fn topological_order(&self) -> Option<Vec<Vertex>> {
        let succ = self.successors();
        let mut indeg = self.in_degrees();
        let mut queue: VecDeque<Vertex> = (0..self.n).filter(|&v| indeg[v] == 0).collect();
        let mut order = Vec::with_capacity(self.n);
        while let Some(x) = queue.pop_front() {
            order.push(x);
            for &y in &succ[x] {
                indeg[y] -= 1;
                if indeg[y] == 0 {
                    queue.push_back(y);
                }
            }
        }
        (order.len() == self.n).then_some(order)
    }

    pub fn is_acyclic(&self) -> bool {
        self.topological_order().is_some()
    }

    /// Number of edges on the longest path starting at the root. Requires an
    /// acyclic rooted graph.
    pub fn height(&self) -> Result<usize> {
        let root = self.root.ok_or_else(|| Error::invalid("height needs a rooted graph"))?;
        let order = self
            .topological_order()
            .ok_or_else(|| Error::invalid("height is undefined on a cyclic graph"))?;
        let succ = self.successors();
        let mut dist: Vec<Option<usize>> = vec![None; self.n];
        dist[root] = Some(0);
        let mut best = 0;
        for x in order {
            let Some(dx) = dist[x] else { continue };
            best = best.max(dx);
            for &y in &succ[x] {
                if dist[y].is_none_or(|dy| dy < dx + 1) {
                    dist[y] = Some(dx + 1);
                }
            }
        }
        Ok(best)
    }

    /// The unique minimal edge subset with the same reachability relation.
    pub fn transitive_reduction(&self) -> Result<BTreeSet<Edge>> {
        if !self.is_acyclic() {
            return Err(Error::invalid("transitive reduction requires an acyclic graph"));
        }
        Ok(reduce_acyclic(self.n, &self.edges))
    }

    /// Ground-truth strongly connected components, ordered by smallest member,
    /// together with the reduced condensation DAG.
    pub fn strongly_connected_components(&self) -> SccPartition {
        let closure = self.closure();
        let mut comp_of = vec![usize::MAX; self.n];
        let mut components: Vec<Vec<Vertex>> = Vec::new();
        for v in 0..self.n {
            if comp_of[v] != usize::MAX {
                continue;
            }
            let id = components.len();
            let members: Vec<Vertex> = closure
                .row_iter(v)
                .filter(|&w| closure.get(w, v))
                .collect();
            for &w in &members {
                comp_of[w] = id;
            }
            components.push(members);
        }
        let cross: BTreeSet<Edge> = self
            .edges
            .iter()
            .map(|&(u, v)| (comp_of[u], comp_of[v]))
            .filter(|(a, b)| a != b)
            .collect();
        let cross: Vec<Edge> = cross.into_iter().collect();
        SccPartition {
            condensation_edges: reduce_acyclic(components.len(), &cross),
            components,
        }
    }

    /// Edges between different components that are implied by other paths.
    /// Empty iff the condensation learned from queries equals the true one.
    pub fn transitive_cross_edges(&self) -> Vec<Edge> {
        let scc = self.strongly_connected_components();
        let mut comp_of = vec![0; self.n];
        for (id, c) in scc.components.iter().enumerate() {
            for &v in c {
                comp_of[v] = id;
            }
        }
        self.edges
            .iter()
            .copied()
            .filter(|&(u, v)| {
                let (a, b) = (comp_of[u], comp_of[v]);
                a != b && !scc.condensation_edges.contains(&(a, b))
            })
            .collect()
    }

    /// Checks that the graph is a path-query reconstructable almost-tree, or a
    /// plain rooted tree.
    ///
    /// Of the two edges entering the in-degree-2 vertex, the one from the
    /// larger-indexed parent is reported as the extra edge.
    pub fn validate_almost_tree(&self) -> Result<AlmostTreeCertificate> {
        let Some(root) = self.root else {
            return Err(Error::rejected(Rejection::NotRooted, "graph has no root"));
        };
        if !self.is_acyclic() {
            return Err(Error::rejected(Rejection::CycleCreated, "graph contains a directed cycle"));
        }
        if self.n == 0 {
            return Err(Error::rejected(Rejection::NotRooted, "graph is empty"));
        }
        let m = self.edges.len();
        if m > self.n {
            return Err(Error::rejected(
                Rejection::MoreThanOneExtraEdge,
                format!("{} edges on {} vertices", m, self.n),
            ));
        }
        let indeg = self.in_degrees();
        debug_assert_eq!(indeg[root], 0);
        let mut extra_edge = None;
        if m == self.n {
            let head = (0..self.n)
                .find(|&v| indeg[v] == 2)
                .expect("rooted acyclic graph with n edges has an in-degree-2 vertex");
            let parents = &self.predecessors()[head];
            let (p1, p2) = (parents[0], parents[1]);
            let closure = self.closure();
            if closure.get(p1, p2) {
                return Err(Error::rejected(
                    Rejection::TransitiveExtraEdge,
                    format!("edge ({p1},{head}) is implied by a path through {p2}"),
                ));
            }
            if closure.get(p2, p1) {
                return Err(Error::rejected(
                    Rejection::TransitiveExtraEdge,
                    format!("edge ({p2},{head}) is implied by a path through {p1}"),
                ));
            }
            extra_edge = Some((p2, head));
        }
        let tree_edges: Vec<Edge> = self
            .edges
            .iter()
            .copied()
            .filter(|&e| Some(e) != extra_edge)
            .collect();
        Ok(AlmostTreeCertificate {
            root,
            tree_edges,
            extra_edge,
            height: self.height()?,
            max_degree: self.max_total_degree(),
        })
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(self).expect("graph serialization cannot fail")
    }

    pub fn read_json(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json_str(&fs::read_to_string(path)?)
    }

    pub fn write_json(&self, path: impl AsRef<Path>) -> Result<()> {
        fs::write(path, self.to_json_string())?;
        Ok(())
    }
}

/// Transitive reduction of an acyclic edge list over `0..n`.
pub(crate) fn reduce_acyclic(n: usize, edges: &[Edge]) -> BTreeSet<Edge> {
    let g = DirectedGraph {
        n,
        root: None,
        edges: {
            let mut e = edges.to_vec();
            e.sort_unstable();
            e.dedup();
            e
        },
    };
    let closure = g.closure();
    let succ = g.successors();
    g.edges
        .iter()
        .copied()
        .filter(|&(u, v)| !succ[u].iter().any(|&w| w != v && closure.get(w, v)))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AlmostTreeCertificate {
    pub root: Vertex,
    pub tree_edges: Vec<Edge>,
    pub extra_edge: Option<Edge>,
    /// Edges on the longest root path of the full graph.
    pub height: usize,
    /// Maximum total (in + out) degree.
    pub max_degree: usize,
}
