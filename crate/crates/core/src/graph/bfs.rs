use std::collections::VecDeque;

use rayon::prelude::*;

use super::{LabeledGraph, VertexId};

/// Hop distances from one source. `None` marks an unreachable vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceVector {
    pub source: VertexId,
    pub dist: Vec<Option<u32>>,
}

impl DistanceVector {
    pub fn get(&self, v: VertexId) -> Option<u32> {
        self.dist[v]
    }

    pub fn reachable_count(&self) -> usize {
        self.dist.iter().filter(|d| d.is_some()).count()
    }
}

pub fn bfs_distances(g: &LabeledGraph, src: VertexId) -> DistanceVector {
    let mut dist = vec![None; g.vertex_count()];
    let mut queue = VecDeque::new();
    dist[src] = Some(0);
    queue.push_back(src);
    while let Some(v) = queue.pop_front() {
        let next = dist[v].map(|d| d + 1);
        for &w in g.neighbors(v) {
            if dist[w].is_none() {
                dist[w] = next;
                queue.push_back(w);
            }
        }
    }
    DistanceVector { source: src, dist }
}

/// BFS from every source, in parallel; output order follows `sources`.
pub fn bfs_many(g: &LabeledGraph, sources: &[VertexId]) -> Vec<DistanceVector> {
    sources.par_iter().map(|&s| bfs_distances(g, s)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn single_vertex() {
        let g = LabeledGraph::from_edges(1, &[]).unwrap();
        assert_eq!(bfs_distances(&g, 0).dist, vec![Some(0)]);
    }

    #[test]
    fn unreachable_is_none() {
        let g = LabeledGraph::from_edges(3, &[(0, 1)]).unwrap();
        let d = bfs_distances(&g, 0);
        assert_eq!(d.dist, vec![Some(0), Some(1), None]);
        assert_eq!(d.reachable_count(), 2);
    }

    #[test]
    fn cycle_distances() {
        let edges: Vec<_> = (0..6).map(|v| (v, (v + 1) % 6)).collect();
        let g = LabeledGraph::from_edges(6, &edges).unwrap();
        let d = bfs_distances(&g, 0);
        let got: Vec<_> = d.dist.iter().map(|x| x.unwrap()).collect();
        assert_eq!(got, vec![0, 1, 2, 3, 2, 1]);
    }

    fn random_graph() -> impl Strategy<Value = (usize, Vec<(usize, usize)>)> {
        (2usize..30).prop_flat_map(|n| {
            let pairs = proptest::collection::vec((0..n, 0..n), 0..(3 * n));
            (Just(n), pairs)
        })
    }

    fn simple(n: usize, raw: &[(usize, usize)]) -> LabeledGraph {
        let mut edges: Vec<_> = raw
            .iter()
            .filter(|(a, b)| a != b)
            .map(|&(a, b)| (a.min(b), a.max(b)))
            .collect();
        edges.sort_unstable();
        edges.dedup();
        LabeledGraph::from_edges(n, &edges).unwrap()
    }

    proptest! {
        #[test]
        fn adjacent_vertices_differ_by_at_most_one((n, raw) in random_graph(), src in 0usize..30) {
            let g = simple(n, &raw);
            let src = src % n;
            let d = bfs_distances(&g, src);
            prop_assert_eq!(d.get(src), Some(0));
            for &(u, w) in g.edges() {
                match (d.get(u), d.get(w)) {
                    (Some(a), Some(b)) => prop_assert!(a.abs_diff(b) <= 1),
                    (None, None) => {}
                    _ => prop_assert!(false, "edge straddles reachable boundary"),
                }
            }
        }

        #[test]
        fn parallel_matches_sequential((n, raw) in random_graph()) {
            let g = simple(n, &raw);
            let sources: Vec<_> = (0..n).collect();
            let many = bfs_many(&g, &sources);
            for (s, d) in sources.iter().zip(&many) {
                prop_assert_eq!(d, &bfs_distances(&g, *s));
            }
        }
    }
}
