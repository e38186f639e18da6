//! Exact reconstruction of rooted trees and almost-trees from path queries.
//!
//! The learner first builds a layered graph (a spanning tree of true edges) by
//! randomized divide and conquer: find a vertex whose descendant set holds
//! between `|V|/3d` and `|V|/3` of the working set, cut it off together with
//! its parent edge, and recurse on both sides. Both sides of a cut are again
//! rooted and closed under paths, so descendant counts restricted to a working
//! set are the counts of the induced subgraph.
//!
//! The one hidden edge missing from the layered graph is then located by a
//! top-down scan for a child that reaches a leaf under one of its siblings,
//! followed by a walk down from that child and up from that leaf.

use std::cmp::Ordering;

use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::{DirectedGraph, Edge, Vertex};
use crate::oracle::{QueryOracle, RelativeView};

pub const PHASE_ROOT: &str = "root";
pub const PHASE_BASE: &str = "layered/base";
pub const PHASE_SEARCH: &str = "layered/search";
pub const PHASE_PARENT: &str = "layered/parent";
pub const PHASE_CROSS_SCAN: &str = "cross/recursive";
pub const PHASE_CROSS_PINPOINT: &str = "cross/specific";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LearnerConfig {
    /// Bound on the total (in + out) degree of the hidden graph.
    pub d: usize,
    /// `split_graph` gives up after `retry_cap_multiplier · d · ⌈log₂|V|⌉`
    /// unsuccessful searches.
    pub retry_cap_multiplier: usize,
}

impl LearnerConfig {
    pub fn new(d: usize) -> Self {
        LearnerConfig {
            d,
            retry_cap_multiplier: 48,
        }
    }

    fn retry_cap(&self, size: usize) -> usize {
        let log = (usize::BITS - (size.max(2) - 1).leading_zeros()) as usize;
        self.retry_cap_multiplier * self.d * log
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LearnerStats {
    pub splits: usize,
    pub search_calls: usize,
    /// Searches that came back without a splittable vertex.
    pub retries: usize,
    /// Iterations of the randomized binary search, summed over all searches.
    pub search_iterations: usize,
    pub max_depth: usize,
}

/// Where a descendant count falls relative to `[|V|/3d, |V|/3]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Band {
    TooSmall,
    InRange,
    TooBig,
}

/// Split thresholds for a working set, compared in exact integer arithmetic.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Thresholds {
    pub size: usize,
    pub d: usize,
}

impl Thresholds {
    pub fn classify(&self, descendants: usize) -> Band {
        if 3 * descendants > self.size {
            Band::TooBig
        } else if 3 * self.d * descendants < self.size {
            Band::TooSmall
        } else {
            Band::InRange
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOutcome {
    /// View of the splittable vertex, if one was found.
    pub found: Option<RelativeView>,
    pub iterations: usize,
}

fn contains(sorted: &[Vertex], v: Vertex) -> bool {
    sorted.binary_search(&v).is_ok()
}

/// One randomized search for a splittable vertex in `working` (sorted).
pub fn search(o: &mut QueryOracle, working: &[Vertex], d: usize) -> Result<SearchOutcome> {
    let bands = Thresholds {
        size: working.len(),
        d,
    };
    let i = working[o.rng().gen_range(0..working.len())];
    let view = o.relative_view(i, working, PHASE_SEARCH)?;
    match bands.classify(view.descendants.len()) {
        Band::TooBig => {
            return Ok(SearchOutcome {
                found: None,
                iterations: 0,
            })
        }
        Band::InRange => {
            return Ok(SearchOutcome {
                found: Some(view),
                iterations: 0,
            })
        }
        Band::TooSmall => {}
    }
    // i itself is already known to be too small
    let mut candidates: Vec<Vertex> = view
        .ancestors
        .iter()
        .copied()
        .filter(|&a| !contains(&view.descendants, a))
        .collect();
    let mut iterations = 0;
    while !candidates.is_empty() {
        iterations += 1;
        let j = candidates[o.rng().gen_range(0..candidates.len())];
        let view = o.relative_view(j, working, PHASE_SEARCH)?;
        match bands.classify(view.descendants.len()) {
            Band::InRange => {
                return Ok(SearchOutcome {
                    found: Some(view),
                    iterations,
                })
            }
            Band::TooBig => candidates.retain(|&c| c != j && contains(&view.descendants, c)),
            Band::TooSmall => candidates.retain(|&c| !contains(&view.descendants, c)),
        }
    }
    Ok(SearchOutcome {
        found: None,
        iterations,
    })
}

/// Tournament: moves to each later candidate the current one reaches.
fn descend_tournament(o: &mut QueryOracle, candidates: &[Vertex]) -> Result<Vertex> {
    let mut low = candidates[0];
    for &a in &candidates[1..] {
        if o.query(low, a, PHASE_PARENT)? {
            low = a;
        }
    }
    Ok(low)
}

/// Walks down until no candidate lies strictly below the current one.
fn settle_minimal(o: &mut QueryOracle, candidates: &[Vertex], mut low: Vertex) -> Result<Vertex> {
    'outer: loop {
        for &a in candidates {
            if a != low && o.query(low, a, PHASE_PARENT)? {
                low = a;
                continue 'outer;
            }
        }
        return Ok(low);
    }
}

/// Parent of `view.base` within `working`: the ancestor with the fewest
/// descendants in `working`, smallest index on ties.
///
/// Every other ancestor reaches some parent, so parents are exactly the
/// minimal ancestors and only those need their descendant sets counted. In
/// the common single-parent case this costs about `2·|A(v) ∩ V|` queries.
pub fn parent_from_view(o: &mut QueryOracle, view: &RelativeView, working: &[Vertex]) -> Result<Vertex> {
    let v = view.base;
    let anc: Vec<Vertex> = view.ancestors.iter().copied().filter(|&a| a != v).collect();
    if anc.is_empty() {
        return Err(Error::promise(format!("vertex {v} has no ancestor in its working set")));
    }
    let first = descend_tournament(o, &anc)?;
    let mut unique = true;
    for &a in &anc {
        if a != first && !o.query(a, first, PHASE_PARENT)? {
            unique = false;
            break;
        }
    }
    if unique {
        return Ok(first);
    }

    let p1 = settle_minimal(o, &anc, first)?;
    let mut rest = Vec::new();
    for &a in &anc {
        if a != p1 && !o.query(a, p1, PHASE_PARENT)? {
            rest.push(a);
        }
    }
    if rest.is_empty() {
        return Ok(p1);
    }
    let p2 = descend_tournament(o, &rest)?;
    let p2 = settle_minimal(o, &rest, p2)?;
    for &a in &rest {
        if a != p2 && !o.query(a, p2, PHASE_PARENT)? {
            return Err(Error::promise(format!("vertex {v} has more than two parents")));
        }
    }
    let size1 = o.relative_view(p1, working, PHASE_PARENT)?.descendants.len();
    let size2 = o.relative_view(p2, working, PHASE_PARENT)?.descendants.len();
    Ok(match size1.cmp(&size2) {
        Ordering::Less => p1,
        Ordering::Greater => p2,
        Ordering::Equal => p1.min(p2),
    })
}

pub fn find_parent(o: &mut QueryOracle, v: Vertex, working: &[Vertex]) -> Result<Vertex> {
    let view = o.relative_view(v, working, PHASE_PARENT)?;
    parent_from_view(o, &view, working)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Split {
    /// `D(v) ∩ V`, the side below the cut.
    pub inside: Vec<Vertex>,
    pub outside: Vec<Vertex>,
    /// `(p(v), v)`.
    pub edge: Edge,
}

pub fn split_graph(
    o: &mut QueryOracle,
    working: &[Vertex],
    config: &LearnerConfig,
    stats: &mut LearnerStats,
) -> Result<Split> {
    if working.len() < 3 {
        return Err(Error::invalid("split_graph needs at least 3 vertices"));
    }
    let cap = config.retry_cap(working.len());
    let mut failures = 0;
    let view = loop {
        stats.search_calls += 1;
        let outcome = search(o, working, config.d)?;
        stats.search_iterations += outcome.iterations;
        if let Some(view) = outcome.found {
            break view;
        }
        stats.retries += 1;
        failures += 1;
        if failures >= cap {
            return Err(Error::promise(format!(
                "no splittable vertex after {failures} searches on {} vertices",
                working.len()
            )));
        }
    };
    let parent = parent_from_view(o, &view, working)?;
    stats.splits += 1;
    let outside = working
        .iter()
        .copied()
        .filter(|&u| !contains(&view.descendants, u))
        .collect();
    Ok(Split {
        edge: (parent, view.base),
        inside: view.descendants,
        outside,
    })
}

/// Spanning tree of true edges over `working` (sorted), which must induce a
/// rooted subgraph closed under paths.
pub fn reconstruct_layered_graph(
    o: &mut QueryOracle,
    working: &[Vertex],
    config: &LearnerConfig,
    stats: &mut LearnerStats,
) -> Result<Vec<Edge>> {
    let mut edges = Vec::with_capacity(working.len().saturating_sub(1));
    layered_rec(o, working, config, stats, 0, working.len(), &mut edges)?;
    Ok(edges)
}

fn layered_rec(
    o: &mut QueryOracle,
    working: &[Vertex],
    config: &LearnerConfig,
    stats: &mut LearnerStats,
    depth: usize,
    depth_cap: usize,
    edges: &mut Vec<Edge>,
) -> Result<()> {
    if depth > depth_cap {
        return Err(Error::promise("layered-graph recursion exceeded the vertex count"));
    }
    stats.max_depth = stats.max_depth.max(depth);
    match *working {
        [] | [_] => Ok(()),
        [u, w] => {
            if o.query(u, w, PHASE_BASE)? {
                edges.push((u, w));
            } else if o.query(w, u, PHASE_BASE)? {
                edges.push((w, u));
            } else {
                return Err(Error::promise(format!("neither of {u}, {w} reaches the other")));
            }
            Ok(())
        }
        _ => {
            let split = split_graph(o, working, config, stats)?;
            layered_rec(o, &split.inside, config, stats, depth + 1, depth_cap, edges)?;
            layered_rec(o, &split.outside, config, stats, depth + 1, depth_cap, edges)?;
            edges.push(split.edge);
            Ok(())
        }
    }
}

/// Vertex reached by nobody else: the survivor of a one-pass tournament,
/// `n - 1` queries.
pub fn find_root(o: &mut QueryOracle) -> Result<Vertex> {
    let n = o.n();
    if n == 0 {
        return Err(Error::invalid("empty graph has no root"));
    }
    let mut root = 0;
    for v in 1..n {
        if o.query(v, root, PHASE_ROOT)? {
            root = v;
        }
    }
    Ok(root)
}

/// A rooted spanning tree with children kept in ascending order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayeredGraph {
    root: Vertex,
    edges: Vec<Edge>,
    parent: Vec<Option<Vertex>>,
    children: Vec<Vec<Vertex>>,
}

impl LayeredGraph {
    pub fn new(n: usize, root: Vertex, edges: impl IntoIterator<Item = Edge>) -> Result<Self> {
        if root >= n {
            return Err(Error::invalid(format!("root {root} out of range")));
        }
        let mut edges: Vec<Edge> = edges.into_iter().collect();
        edges.sort_unstable();
        let mut parent = vec![None; n];
        let mut children = vec![Vec::new(); n];
        for &(u, v) in &edges {
            if u >= n || v >= n {
                return Err(Error::invalid(format!("edge ({u},{v}) out of range")));
            }
            if v == root || parent[v].replace(u).is_some() {
                return Err(Error::promise(format!("vertex {v} has two parents in the layered graph")));
            }
            children[u].push(v);
        }
        let g = LayeredGraph {
            root,
            edges,
            parent,
            children,
        };
        if g.preorder(root).len() != n {
            return Err(Error::promise("layered graph does not span every vertex from the root"));
        }
        Ok(g)
    }

    pub fn root(&self) -> Vertex {
        self.root
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn parent(&self, v: Vertex) -> Option<Vertex> {
        self.parent[v]
    }

    pub fn children(&self, v: Vertex) -> &[Vertex] {
        &self.children[v]
    }

    pub fn is_leaf(&self, v: Vertex) -> bool {
        self.children[v].is_empty()
    }

    pub fn leaves(&self) -> Vec<Vertex> {
        self.preorder(self.root).into_iter().filter(|&v| self.is_leaf(v)).collect()
    }

    /// Subtree of `v` in pre-order, children visited in ascending order.
    pub fn preorder(&self, v: Vertex) -> Vec<Vertex> {
        let mut out = Vec::new();
        let mut stack = vec![v];
        while let Some(x) = stack.pop() {
            out.push(x);
            stack.extend(self.children[x].iter().rev());
        }
        out
    }

    pub fn leaves_under(&self, v: Vertex) -> Vec<Vertex> {
        self.preorder(v).into_iter().filter(|&x| self.is_leaf(x)).collect()
    }

    pub fn contains_edge(&self, (u, v): Edge) -> bool {
        self.parent.get(v).copied().flatten() == Some(u)
    }
}

/// `v = p(a)`, `b` a leaf outside `a`'s subtree but under `v`, and `Q(a, b) = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TopVertexWitness {
    pub v: Vertex,
    pub a: Vertex,
    pub b: Vertex,
}

/// Pre-order scan from `start` for a child reaching a leaf under a sibling.
pub fn find_cross_edges_recursive(
    o: &mut QueryOracle,
    gl: &LayeredGraph,
    start: Vertex,
) -> Result<Option<TopVertexWitness>> {
    let mut stack = vec![start];
    while let Some(v) = stack.pop() {
        let kids = gl.children(v);
        if kids.len() >= 2 {
            let leaf_sets: Vec<Vec<Vertex>> = kids.iter().map(|&k| gl.leaves_under(k)).collect();
            for (ci, &c) in kids.iter().enumerate() {
                for (ki, leaves) in leaf_sets.iter().enumerate() {
                    if ki == ci {
                        continue;
                    }
                    for &l in leaves {
                        if o.query(c, l, PHASE_CROSS_SCAN)? {
                            return Ok(Some(TopVertexWitness { v, a: c, b: l }));
                        }
                    }
                }
            }
        }
        stack.extend(kids.iter().rev());
    }
    Ok(None)
}

/// Pins down the cross edge `(c1, c2)` given a top-vertex witness.
pub fn find_cross_edge_specific(o: &mut QueryOracle, gl: &LayeredGraph, w: TopVertexWitness) -> Result<Edge> {
    if gl.parent(w.a) != Some(w.v) || !gl.is_leaf(w.b) {
        return Err(Error::invalid(format!("{w:?} is not a top-vertex witness")));
    }
    let mut c1 = w.a;
    loop {
        let mut next = None;
        for &ch in gl.children(c1) {
            if o.query(ch, w.b, PHASE_CROSS_PINPOINT)? {
                if next.is_some() {
                    return Err(Error::promise(format!("two children of {c1} reach {}", w.b)));
                }
                next = Some(ch);
            }
        }
        match next {
            Some(ch) => c1 = ch,
            None => break,
        }
    }

    let mut c2 = None;
    let mut cur = Some(w.b);
    while let Some(x) = cur {
        if x == w.v || !o.query(c1, x, PHASE_CROSS_PINPOINT)? {
            break;
        }
        c2 = Some(x);
        cur = gl.parent(x);
    }
    let c2 = c2.ok_or_else(|| Error::promise(format!("{c1} does not reach leaf {}", w.b)))?;
    if gl.contains_edge((c1, c2)) {
        return Err(Error::promise(format!("pinpointed edge ({c1},{c2}) is already a tree edge")));
    }
    Ok((c1, c2))
}

pub fn find_cross_edges(o: &mut QueryOracle, gl: &LayeredGraph) -> Result<Option<Edge>> {
    match find_cross_edges_recursive(o, gl, gl.root())? {
        Some(w) => find_cross_edge_specific(o, gl, w).map(Some),
        None => Ok(None),
    }
}

#[derive(Debug, Clone)]
pub struct Reconstruction {
    pub graph: DirectedGraph,
    pub layered: LayeredGraph,
    pub cross_edge: Option<Edge>,
    pub stats: LearnerStats,
}

/// Learns every edge of a hidden path-query reconstructable almost-tree (or
/// rooted tree) whose total degree is at most `config.d`.
pub fn reconstruct_rooted_graph(o: &mut QueryOracle, config: &LearnerConfig) -> Result<Reconstruction> {
    if config.d == 0 {
        return Err(Error::invalid("degree bound must be positive"));
    }
    let n = o.n();
    let root = find_root(o)?;
    let working: Vec<Vertex> = (0..n).collect();
    let mut stats = LearnerStats::default();
    let tree_edges = reconstruct_layered_graph(o, &working, config, &mut stats)?;
    let layered = LayeredGraph::new(n, root, tree_edges)?;
    let cross_edge = find_cross_edges(o, &layered)?;
    let graph = DirectedGraph::new(
        n,
        Some(root),
        layered.edges().iter().copied().chain(cross_edge),
    )?;
    Ok(Reconstruction {
        graph,
        layered,
        cross_edge,
        stats,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::{a1, t1};

    fn all(n: usize) -> Vec<Vertex> {
        (0..n).collect()
    }

    #[test]
    fn thresholds_are_inclusive() {
        let t = Thresholds { size: 9, d: 3 };
        assert_eq!(t.classify(1), Band::InRange);
        assert_eq!(t.classify(3), Band::InRange);
        assert_eq!(t.classify(4), Band::TooBig);
        let t = Thresholds { size: 10, d: 3 };
        assert_eq!(t.classify(1), Band::TooSmall);
        assert_eq!(t.classify(2), Band::InRange);
    }

    #[test]
    fn find_parent_examples() {
        let mut o = QueryOracle::new(a1(), 0);
        assert_eq!(find_parent(&mut o, 4, &all(7)).unwrap(), 1);
        assert_eq!(find_parent(&mut o, 5, &all(7)).unwrap(), 2);
        assert!(matches!(find_parent(&mut o, 0, &all(7)), Err(Error::PromiseViolation(_))));
    }

    #[test]
    fn find_parent_matches_brute_force_argmin() {
        let g = a1();
        let closure = g.closure();
        let mut o = QueryOracle::new(g.clone(), 0);
        for v in 1..7 {
            let expected = (0..7)
                .filter(|&a| a != v && closure.get(a, v))
                .min_by_key(|&a| (closure.row_iter(a).count(), a))
                .unwrap();
            assert_eq!(find_parent(&mut o, v, &all(7)).unwrap(), expected, "vertex {v}");
        }
    }

    #[test]
    fn search_examples() {
        // Seeds chosen so the first pick is the vertex of interest.
        let mut hit4 = false;
        let mut hit1 = false;
        for seed in 0..200 {
            let mut o = QueryOracle::new(a1(), seed);
            let first = all(7)[o.rng().clone().gen_range(0..7)];
            let out = search(&mut o, &all(7), 3).unwrap();
            if first == 4 {
                assert_eq!(out.found.as_ref().unwrap().base, 4);
                assert_eq!(out.iterations, 0);
                hit4 = true;
            }
            if first == 1 {
                assert!(out.found.is_none());
                assert_eq!(o.total_queries(), 12);
                hit1 = true;
            }
        }
        assert!(hit4 && hit1);
    }

    #[test]
    fn search_query_budget() {
        for seed in 0..100 {
            let mut o = QueryOracle::new(a1(), seed);
            let out = search(&mut o, &all(7), 3).unwrap();
            assert_eq!(o.total_queries(), 12 * (1 + out.iterations as u64));
        }
    }

    #[test]
    fn split_examples() {
        let cfg = LearnerConfig::new(3);
        for seed in 0..50 {
            let mut o = QueryOracle::new(a1(), seed);
            let mut stats = LearnerStats::default();
            let split = split_graph(&mut o, &all(7), &cfg, &mut stats).unwrap();
            assert_eq!(split.inside.len() + split.outside.len(), 7);
            assert!(split.inside.iter().all(|v| !split.outside.contains(v)));
            assert!(a1().has_edge(split.edge.0, split.edge.1));
            assert!(9 * split.inside.len() >= 7 && 3 * split.inside.len() <= 7);
            if split.edge.1 == 4 {
                assert_eq!(split.inside, vec![4]);
                assert_eq!(split.outside, vec![0, 1, 2, 3, 5, 6]);
                assert_eq!(split.edge, (1, 4));
            }
        }
    }

    #[test]
    fn base_case_two_vertices() {
        let g = DirectedGraph::new(2, Some(0), [(0, 1)]).unwrap();
        let mut o = QueryOracle::new(g, 0);
        let edges = reconstruct_layered_graph(&mut o, &[0, 1], &LearnerConfig::new(2), &mut LearnerStats::default()).unwrap();
        assert_eq!(edges, vec![(0, 1)]);
        assert!(o.total_queries() <= 2);
    }

    #[test]
    fn layered_graph_of_a1_is_spanning_tree_of_true_edges() {
        for seed in 0..30 {
            let mut o = QueryOracle::new(a1(), seed);
            let edges = reconstruct_layered_graph(&mut o, &all(7), &LearnerConfig::new(3), &mut LearnerStats::default()).unwrap();
            assert_eq!(edges.len(), 6);
            let hidden = a1();
            assert!(edges.iter().all(|&(u, v)| hidden.has_edge(u, v)));
            let gl = LayeredGraph::new(7, 0, edges).unwrap();
            let p5 = gl.parent(5).unwrap();
            assert!(p5 == 2 || p5 == 3);
        }
    }

    #[test]
    fn witness_and_pinpoint_on_a1() {
        let gl = LayeredGraph::new(7, 0, t1().edges().iter().copied()).unwrap();
        let mut o = QueryOracle::new(a1(), 0).with_transcript();
        let w = find_cross_edges_recursive(&mut o, &gl, 0).unwrap().unwrap();
        assert_eq!(w, TopVertexWitness { v: 0, a: 1, b: 6 });
        let before = o.transcript().unwrap().len();
        let edge = find_cross_edge_specific(&mut o, &gl, w).unwrap();
        assert_eq!(edge, (3, 5));
        let pinpoint: Vec<(Vertex, Vertex, bool)> = o.transcript().unwrap()[before..]
            .iter()
            .map(|e| (e.u, e.v, e.answer))
            .collect();
        assert_eq!(
            pinpoint,
            vec![(3, 6, true), (4, 6, false), (3, 6, true), (3, 5, true), (3, 2, false)]
        );
    }

    #[test]
    fn displaced_parent_is_found_as_cross_edge() {
        let edges = [(0, 1), (0, 2), (1, 3), (1, 4), (3, 5), (5, 6)];
        let gl = LayeredGraph::new(7, 0, edges).unwrap();
        let mut o = QueryOracle::new(a1(), 0);
        assert_eq!(find_cross_edges(&mut o, &gl).unwrap(), Some((2, 5)));
    }

    #[test]
    fn trees_have_no_witness() {
        let gl = LayeredGraph::new(7, 0, t1().edges().iter().copied()).unwrap();
        let mut o = QueryOracle::new(t1(), 0);
        assert_eq!(find_cross_edges(&mut o, &gl).unwrap(), None);
    }

    #[test]
    fn pinpoint_edge_cases() {
        // 0→1, 0→2, 1→3 (leaf), 2→4 (leaf), cross 1→4: here a = c1 and b = c2.
        let g = DirectedGraph::new(5, Some(0), [(0, 1), (0, 2), (1, 3), (2, 4), (1, 4)]).unwrap();
        let gl = LayeredGraph::new(5, 0, [(0, 1), (0, 2), (1, 3), (2, 4)]).unwrap();
        let mut o = QueryOracle::new(g, 0);
        let w = TopVertexWitness { v: 0, a: 1, b: 4 };
        assert_eq!(find_cross_edge_specific(&mut o, &gl, w).unwrap(), (1, 4));
        let bad = TopVertexWitness { v: 0, a: 3, b: 4 };
        assert!(find_cross_edge_specific(&mut o, &gl, bad).is_err());
    }

    #[test]
    fn reconstructs_a1_and_t1() {
        for seed in 0..30 {
            let mut o = QueryOracle::new(a1(), seed);
            let rec = reconstruct_rooted_graph(&mut o, &LearnerConfig::new(3)).unwrap();
            assert_eq!(rec.graph, a1());
            assert!(rec.cross_edge.is_some());

            let mut o = QueryOracle::new(t1(), seed);
            let rec = reconstruct_rooted_graph(&mut o, &LearnerConfig::new(3)).unwrap();
            assert_eq!(rec.graph, t1());
            assert_eq!(rec.cross_edge, None);
            assert_eq!(o.phase_total("cross/specific"), 0);
        }
    }

    #[test]
    fn single_vertex() {
        let g = DirectedGraph::new(1, Some(0), []).unwrap();
        let mut o = QueryOracle::new(g.clone(), 0);
        let rec = reconstruct_rooted_graph(&mut o, &LearnerConfig::new(3)).unwrap();
        assert_eq!(rec.graph, g);
        assert_eq!(o.total_queries(), 0);
    }

    #[test]
    fn find_root_on_a1() {
        let mut o = QueryOracle::new(a1(), 0);
        assert_eq!(find_root(&mut o).unwrap(), 0);
        assert_eq!(o.total_queries(), 6);
    }

    #[test]
    fn unrooted_input_is_a_promise_violation() {
        let g = DirectedGraph::new(4, None, [(0, 1), (2, 3)]).unwrap();
        let mut o = QueryOracle::new(g, 0);
        assert!(reconstruct_rooted_graph(&mut o, &LearnerConfig::new(3)).is_err());
    }
}
