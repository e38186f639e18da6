//! Seeded generators for hidden-graph families.
//!
//! Each generator is a pure function of its [`GenSpec`]: the same spec,
//! including the seed, always produces the same graph.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::seq::{index, SliceRandom};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{DirectedGraph, Edge, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Tree,
    AlmostTree,
    Caterpillar,
    Hybrid,
    Scc,
    /// Heap-shaped complete `d`-ary tree.
    Complete,
}

impl Family {
    pub fn as_str(self) -> &'static str {
        match self {
            Family::Tree => "tree",
            Family::AlmostTree => "almost_tree",
            Family::Caterpillar => "caterpillar",
            Family::Hybrid => "hybrid",
            Family::Scc => "scc",
            Family::Complete => "complete",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "tree" => Family::Tree,
            "almost_tree" | "almost-tree" => Family::AlmostTree,
            "caterpillar" => Family::Caterpillar,
            "hybrid" => Family::Hybrid,
            "scc" => Family::Scc,
            "complete" => Family::Complete,
            other => return Err(Error::invalid(format!("unknown family {other:?}"))),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenSpec {
    pub family: Family,
    pub n: usize,
    /// Maximum total degree for `tree`/`almost_tree`; arity for `hybrid` and
    /// `complete`; ignored elsewhere.
    pub d: usize,
    /// Target height, `hybrid` only.
    pub h: Option<usize>,
    /// Component count, `scc` only.
    pub k: Option<usize>,
    pub seed: u64,
}

impl GenSpec {
    pub fn new(family: Family, n: usize, d: usize, seed: u64) -> Self {
        GenSpec {
            family,
            n,
            d,
            h: None,
            k: None,
            seed,
        }
    }

    pub fn with_h(mut self, h: usize) -> Self {
        self.h = Some(h);
        self
    }

    pub fn with_k(mut self, k: usize) -> Self {
        self.k = Some(k);
        self
    }
}

/// Sidecar describing a generated instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceMeta {
    pub family: Family,
    pub seed: u64,
    /// Height of the output graph; absent for unrooted families.
    pub h: Option<usize>,
    /// Maximum total degree of the output graph.
    pub d: usize,
    pub extra_edge: Option<Edge>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    /// Construction arithmetic (spine length, tree depth, leaf counts, ...).
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub layout: BTreeMap<String, u64>,
}

#[derive(Debug, Clone)]
pub struct Instance {
    pub graph: DirectedGraph,
    pub meta: InstanceMeta,
}

pub fn generate(spec: &GenSpec) -> Result<Instance> {
    match spec.family {
        Family::Tree => gen_tree(spec),
        Family::AlmostTree => gen_almost_tree(spec),
        Family::Caterpillar => gen_caterpillar(spec).map(|c| c.with_extra),
        Family::Hybrid => gen_hybrid(spec),
        Family::Scc => gen_scc(spec),
        Family::Complete => gen_complete(spec),
    }
}

fn rng_for(spec: &GenSpec) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(spec.seed)
}

fn rooted_meta(spec: &GenSpec, graph: &DirectedGraph, extra_edge: Option<Edge>) -> Result<InstanceMeta> {
    Ok(InstanceMeta {
        family: spec.family,
        seed: spec.seed,
        h: Some(graph.height()?),
        d: graph.max_total_degree(),
        extra_edge,
        k: None,
        layout: BTreeMap::new(),
    })
}

/// Random attachment tree with root 0 and max total degree `d`; non-root
/// labels are shuffled.
fn random_tree(n: usize, d: usize, rng: &mut ChaCha8Rng) -> Result<DirectedGraph> {
    if n == 0 {
        return Err(Error::invalid("tree needs at least one vertex"));
    }
    if n >= 2 && d < 2 {
        return Err(Error::invalid(format!("no tree on {n} vertices has max degree {d}")));
    }
    // capacity = remaining child slots
    let mut open: Vec<(Vertex, usize)> = vec![(0, d)];
    let mut edges = Vec::with_capacity(n - 1);
    for v in 1..n {
        let slot = rng.gen_range(0..open.len());
        let parent = open[slot].0;
        edges.push((parent, v));
        open[slot].1 -= 1;
        if open[slot].1 == 0 {
            open.swap_remove(slot);
        }
        open.push((v, d - 1));
    }
    let mut labels: Vec<Vertex> = (1..n).collect();
    labels.shuffle(rng);
    let relabel = |v: Vertex| if v == 0 { 0 } else { labels[v - 1] };
    DirectedGraph::new(n, Some(0), edges.into_iter().map(|(u, v)| (relabel(u), relabel(v))))
}

pub fn gen_tree(spec: &GenSpec) -> Result<Instance> {
    let mut rng = rng_for(spec);
    let graph = random_tree(spec.n, spec.d, &mut rng)?;
    let meta = rooted_meta(spec, &graph, None)?;
    Ok(Instance { graph, meta })
}

/// Adds one uniformly chosen extra edge `(u, v)` that keeps every edge
/// learnable: `u` must be incomparable with `v`'s tree parent (otherwise either
/// the new edge or the parent edge is transitive, or a cycle appears), and
/// both endpoints must stay within total degree `d`.
pub fn add_extra_edge(tree: &DirectedGraph, d: usize, rng: &mut impl Rng) -> Result<(DirectedGraph, Edge)> {
    let n = tree.n();
    let closure = tree.closure();
    let mut degree = vec![0usize; n];
    let mut parent = vec![None; n];
    for &(u, v) in tree.edges() {
        degree[u] += 1;
        degree[v] += 1;
        parent[v] = Some(u);
    }
    let mut incomparable = 0usize;
    let mut candidates: Vec<Edge> = Vec::new();
    for u in 0..n {
        for v in 0..n {
            let Some(p) = parent[v] else { continue };
            if u == p || closure.get(u, p) || closure.get(p, u) {
                continue;
            }
            incomparable += 1;
            if degree[u] < d && degree[v] < d {
                candidates.push((u, v));
            }
        }
    }
    if candidates.is_empty() {
        let why = if incomparable == 0 {
            "every candidate edge is transitive, makes a tree edge transitive, or creates a cycle"
        } else {
            "every incomparable pair would exceed the degree bound"
        };
        return Err(Error::GenerationInfeasible(why.to_owned()));
    }
    let extra = candidates[rng.gen_range(0..candidates.len())];
    let g = DirectedGraph::new(n, tree.root(), tree.edges().iter().copied().chain([extra]))?;
    Ok((g, extra))
}

pub fn gen_almost_tree(spec: &GenSpec) -> Result<Instance> {
    if spec.n < 4 {
        return Err(Error::GenerationInfeasible(format!(
            "no tree on {} vertices has a non-transitive extra edge",
            spec.n
        )));
    }
    let mut rng = rng_for(spec);
    let tree = random_tree(spec.n, spec.d, &mut rng)?;
    let (graph, extra) = add_extra_edge(&tree, spec.d, &mut rng)?;
    let meta = rooted_meta(spec, &graph, Some(extra))?;
    Ok(Instance { graph, meta })
}

/// Both caterpillar variants from one draw, plus the drawn leg pair `(i, j)`.
#[derive(Debug, Clone)]
pub struct CaterpillarPair {
    pub plain: DirectedGraph,
    pub with_extra: Instance,
    pub legs: (usize, usize),
}

/// Vertex index of the 1-based caterpillar label `v_k`.
pub fn caterpillar_vertex(k: usize) -> Vertex {
    k - 1
}

/// Spine `v_1 → … → v_{n/2}`, leg `v_{n/2+i}` under `v_i` for
/// `i = 1..n/2-1`, and one extra edge `v_{n/2+i} → v_{n/2+j}` with `i < j`
/// drawn uniformly. `n - 1` vertices in total.
pub fn gen_caterpillar(spec: &GenSpec) -> Result<CaterpillarPair> {
    let n = spec.n;
    if n % 2 == 1 || n < 6 {
        return Err(Error::invalid(format!("caterpillar needs an even n >= 6, got {n}")));
    }
    let m = n / 2;
    let v = caterpillar_vertex;
    let mut edges: Vec<Edge> = (1..m).map(|k| (v(k), v(k + 1))).collect();
    edges.extend((1..m).map(|i| (v(i), v(m + i))));
    let plain = DirectedGraph::new(n - 1, Some(0), edges.clone())?;

    let mut rng = rng_for(spec);
    let picked = index::sample(&mut rng, m - 1, 2);
    let (a, b) = (picked.index(0) + 1, picked.index(1) + 1);
    let (i, j) = (a.min(b), a.max(b));
    let extra = (v(m + i), v(m + j));
    edges.push(extra);
    let graph = DirectedGraph::new(n - 1, Some(0), edges)?;
    let mut meta = rooted_meta(spec, &graph, Some(extra))?;
    meta.layout.insert("spine".into(), m as u64);
    meta.layout.insert("legs".into(), (m - 1) as u64);
    Ok(CaterpillarPair {
        plain,
        with_extra: Instance { graph, meta },
        legs: (i, j),
    })
}

/// Depth of the last vertex in a heap-ordered `arity`-ary tree of `size` vertices.
fn heap_depth(size: usize, arity: usize) -> usize {
    let mut depth = 0;
    let mut pos = size - 1;
    while pos > 0 {
        pos = (pos - 1) / arity;
        depth += 1;
    }
    depth
}

fn heap_edges(size: usize, arity: usize, label: impl Fn(usize) -> Vertex) -> Vec<Edge> {
    (1..size).map(|p| (label((p - 1) / arity), label(p))).collect()
}

pub fn gen_complete(spec: &GenSpec) -> Result<Instance> {
    if spec.n == 0 || spec.d < 1 {
        return Err(Error::invalid("complete tree needs n >= 1 and arity >= 1"));
    }
    let mut rng = rng_for(spec);
    let mut labels: Vec<Vertex> = (1..spec.n).collect();
    labels.shuffle(&mut rng);
    let edges = heap_edges(spec.n, spec.d, |p| if p == 0 { 0 } else { labels[p - 1] });
    let graph = DirectedGraph::new(spec.n, Some(0), edges)?;
    let mut meta = rooted_meta(spec, &graph, None)?;
    meta.layout.insert("arity".into(), spec.d as u64);
    Ok(Instance { graph, meta })
}

/// Caterpillar spine with legs, a heap-shaped complete `d`-ary tree hanging
/// from the last spine vertex, and one extra edge from a leg to a leaf of the
/// `d`-ary tree.
///
/// With `t` the depth of the `d`-ary tree, the spine has `h + 1 - t` vertices,
/// so the longest root path has exactly `h` edges. `t` is the smallest depth
/// consistent with filling the remaining vertex budget. Non-root labels are
/// shuffled.
pub fn gen_hybrid(spec: &GenSpec) -> Result<Instance> {
    let n = spec.n;
    let d = spec.d;
    let h = spec.h.ok_or_else(|| Error::invalid("hybrid needs a target height h"))?;
    if d < 2 {
        return Err(Error::invalid("hybrid needs arity d >= 2"));
    }
    if n < 2 || (h as f64) <= (n as f64).ln() / (d as f64).ln() {
        return Err(Error::invalid(format!(
            "hybrid needs h > log_d(n); got h={h}, log_{d}({n})={:.3}",
            (n.max(1) as f64).ln() / (d as f64).ln()
        )));
    }
    let mut layout = None;
    for t in 1..=h {
        let spine = h + 1 - t;
        if spine < 2 || n + 2 < 2 * spine + 2 {
            continue;
        }
        let tree_size = n + 2 - 2 * spine;
        if heap_depth(tree_size, d) == t {
            layout = Some((spine, tree_size, t));
            break;
        }
    }
    let Some((spine, tree_size, depth)) = layout else {
        return Err(Error::invalid(format!("no hybrid layout fits n={n}, h={h}, d={d}")));
    };

    let mut edges: Vec<Edge> = (1..spine).map(|i| (i - 1, i)).collect();
    // legs under spine vertices 0..spine-1 at spine..2*spine-2
    edges.extend((0..spine - 1).map(|i| (i, spine + i)));
    let tree_label = |p: usize| if p == 0 { spine - 1 } else { 2 * spine - 2 + p };
    edges.extend(heap_edges(tree_size, d, tree_label));

    let tree_leaves: Vec<Vertex> = (0..tree_size)
        .filter(|&p| p * d + 1 >= tree_size)
        .map(tree_label)
        .collect();
    let mut rng = rng_for(spec);
    let leg = spine + rng.gen_range(0..spine - 1);
    let leaf = tree_leaves[rng.gen_range(0..tree_leaves.len())];
    edges.push((leg, leaf));

    let mut labels: Vec<Vertex> = (1..n).collect();
    labels.shuffle(&mut rng);
    let relabel = |v: Vertex| if v == 0 { 0 } else { labels[v - 1] };
    let extra = (relabel(leg), relabel(leaf));
    let graph = DirectedGraph::new(n, Some(0), edges.into_iter().map(|(u, v)| (relabel(u), relabel(v))))?;
    let mut meta = rooted_meta(spec, &graph, Some(extra))?;
    meta.layout.insert("spine".into(), spine as u64);
    meta.layout.insert("legs".into(), (spine - 1) as u64);
    meta.layout.insert("tree_size".into(), tree_size as u64);
    meta.layout.insert("tree_depth".into(), depth as u64);
    meta.layout.insert("tree_leaves".into(), tree_leaves.len() as u64);
    meta.layout.insert("arity".into(), d as u64);
    Ok(Instance { graph, meta })
}

/// `k` directed cycles joined by a random DAG that is its own transitive
/// reduction, with one cross edge per DAG edge.
pub fn gen_scc(spec: &GenSpec) -> Result<Instance> {
    let n = spec.n;
    let k = spec.k.ok_or_else(|| Error::invalid("scc needs a component count k"))?;
    if k == 0 || k > n {
        return Err(Error::invalid(format!("scc needs 1 <= k <= n, got k={k}, n={n}")));
    }
    let mut rng = rng_for(spec);
    let mut order: Vec<Vertex> = (0..n).collect();
    order.shuffle(&mut rng);
    let mut cuts: Vec<usize> = index::sample(&mut rng, n - 1, k - 1)
        .into_iter()
        .map(|c| c + 1)
        .collect();
    cuts.sort_unstable();
    let mut groups: Vec<&[Vertex]> = Vec::with_capacity(k);
    let mut start = 0;
    for &c in cuts.iter().chain([n].iter()) {
        groups.push(&order[start..c]);
        start = c;
    }

    let mut edges: Vec<Edge> = Vec::new();
    for g in &groups {
        if g.len() >= 2 {
            edges.extend((0..g.len()).map(|i| (g[i], g[(i + 1) % g.len()])));
        }
    }
    // group order is already random, so it doubles as the DAG's topological order
    let p = (2.0 / k as f64).min(1.0);
    let mut dag: Vec<Edge> = Vec::new();
    for a in 0..k {
        for b in a + 1..k {
            if rng.gen_bool(p) {
                dag.push((a, b));
            }
        }
    }
    let reduced = crate::graph::reduce_acyclic(k, &dag);
    for &(a, b) in &reduced {
        let u = groups[a][rng.gen_range(0..groups[a].len())];
        let w = groups[b][rng.gen_range(0..groups[b].len())];
        edges.push((u, w));
    }
    let graph = DirectedGraph::new(n, None, edges)?;
    let meta = InstanceMeta {
        family: Family::Scc,
        seed: spec.seed,
        h: None,
        d: graph.max_total_degree(),
        extra_edge: None,
        k: Some(k),
        layout: BTreeMap::from([("cross_edges".to_owned(), reduced.len() as u64)]),
    };
    Ok(Instance { graph, meta })
}
