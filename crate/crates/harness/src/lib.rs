//! Brute-force reference computations that see the whole hidden graph.
//! Slow on purpose: each one is a direct reading of its definition.

use std::collections::BTreeSet;

use pathquery::{DirectedGraph, Edge, Vertex};

/// `D(s)` for every `s`, each sorted, by a fresh depth-first search per vertex.
pub fn descendant_sets(g: &DirectedGraph) -> Vec<Vec<Vertex>> {
    let succ = g.successors();
    (0..g.n())
        .map(|s| {
            let mut seen = vec![false; g.n()];
            let mut stack = vec![s];
            seen[s] = true;
            while let Some(x) = stack.pop() {
                for &y in &succ[x] {
                    if !seen[y] {
                        seen[y] = true;
                        stack.push(y);
                    }
                }
            }
            (0..g.n()).filter(|&v| seen[v]).collect()
        })
        .collect()
}

/// Every ordered pair `(u, v)` with a path from `u` to `v`, including `(u, u)`.
pub fn closure_pairs(g: &DirectedGraph) -> BTreeSet<Edge> {
    descendant_sets(g)
        .into_iter()
        .enumerate()
        .flat_map(|(u, ds)| ds.into_iter().map(move |v| (u, v)))
        .collect()
}

/// Vertices `v` with no `w ∈ D(v)` satisfying
/// `⌈|D(v)|/3d⌉ ≤ |D(w)| ≤ ⌈|D(v)|/3⌉`.
pub fn unsplittable_vertices(g: &DirectedGraph, d: usize) -> Vec<Vertex> {
    let desc = descendant_sets(g);
    (0..g.n())
        .filter(|&v| {
            let size = desc[v].len();
            let (lo, hi) = (size.div_ceil(3 * d), size.div_ceil(3));
            !desc[v].iter().any(|&w| (lo..=hi).contains(&desc[w].len()))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn references_on_a_small_tree() {
        // 0 -> 1 -> 3, 0 -> 2
        let g = DirectedGraph::new(4, Some(0), [(0, 1), (1, 3), (0, 2)]).unwrap();
        assert_eq!(descendant_sets(&g), vec![vec![0, 1, 2, 3], vec![1, 3], vec![2], vec![3]]);
        assert_eq!(closure_pairs(&g).len(), 4 + 2 + 1 + 1);
        assert!(unsplittable_vertices(&g, 2).is_empty());
    }

    #[test]
    fn star_root_splits_at_a_leaf() {
        // the star root has |D| = 5, band [1, 2]: leaves qualify
        let g = DirectedGraph::new(5, Some(0), (1..5).map(|v| (0, v))).unwrap();
        assert!(unsplittable_vertices(&g, 4).is_empty());
    }
}
