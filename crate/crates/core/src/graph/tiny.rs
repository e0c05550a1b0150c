use super::bfs::bfs_many;
use super::{LabeledGraph, VertexId};
use crate::error::GraphError;

/// Largest graph accepted by [`metric_dimension_tiny`].
pub const TINY_VERTEX_CAP: usize = 16;

/// Smallest resolving set of size at most `max_k`, by enumerating subsets in
/// increasing size and lexicographic order. Exact oracle for small graphs only.
pub fn metric_dimension_tiny(
    g: &LabeledGraph,
    max_k: usize,
) -> Result<Option<Vec<VertexId>>, GraphError> {
    let n = g.vertex_count();
    if n > TINY_VERTEX_CAP {
        return Err(GraphError::Capacity {
            what: "vertices for exact metric dimension",
            got: n,
            max: TINY_VERTEX_CAP,
        });
    }
    let all: Vec<_> = (0..n).collect();
    let table = bfs_many(g, &all);
    let resolving = |set: &[VertexId]| {
        (0..n).all(|x| (x + 1..n).all(|y| set.iter().any(|&s| table[s].get(x) != table[s].get(y))))
    };
    for k in 0..=max_k.min(n) {
        let mut combo: Vec<usize> = (0..k).collect();
        loop {
            if resolving(&combo) {
                return Ok(Some(combo));
            }
            // advance to the next k-subset in lexicographic order
            let Some(pos) = (0..k).rev().find(|&p| combo[p] < n - k + p) else {
                break;
            };
            combo[pos] += 1;
            for q in pos + 1..k {
                combo[q] = combo[q - 1] + 1;
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete(n: usize) -> LabeledGraph {
        let mut e = Vec::new();
        for u in 0..n {
            for w in u + 1..n {
                e.push((u, w));
            }
        }
        LabeledGraph::from_edges(n, &e).unwrap()
    }

    fn cycle(n: usize) -> LabeledGraph {
        let e: Vec<_> = (0..n).map(|v| (v.min((v + 1) % n), v.max((v + 1) % n))).collect();
        LabeledGraph::from_edges(n, &e).unwrap()
    }

    #[test]
    fn complete_graph_k4_needs_three() {
        assert_eq!(metric_dimension_tiny(&complete(4), 4).unwrap(), Some(vec![0, 1, 2]));
        assert_eq!(metric_dimension_tiny(&complete(4), 2).unwrap(), None);
    }

    #[test]
    fn path_p5_needs_one() {
        let g = LabeledGraph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        assert_eq!(metric_dimension_tiny(&g, 3).unwrap(), Some(vec![0]));
    }

    #[test]
    fn cycle_c6_needs_two() {
        assert_eq!(metric_dimension_tiny(&cycle(6), 3).unwrap(), Some(vec![0, 1]));
    }

    #[test]
    fn trivial_graphs() {
        let one = LabeledGraph::from_edges(1, &[]).unwrap();
        assert_eq!(metric_dimension_tiny(&one, 0).unwrap(), Some(vec![]));
        let two_isolated = LabeledGraph::from_edges(2, &[]).unwrap();
        assert_eq!(metric_dimension_tiny(&two_isolated, 2).unwrap(), Some(vec![0]));
    }

    #[test]
    fn caps_vertex_count() {
        assert!(matches!(
            metric_dimension_tiny(&cycle(17), 2),
            Err(GraphError::Capacity { got: 17, .. })
        ));
    }
}
