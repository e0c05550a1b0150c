use std::collections::HashMap;

use rayon::prelude::*;

use super::bfs::{bfs_distances, DistanceVector};
use super::{LabeledGraph, VertexId};
use crate::error::GraphError;

/// Sources processed per parallel batch when refining distance classes.
const BATCH: usize = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ResolveCheck {
    Resolving,
    /// Two distinct vertices with identical distance vectors, `x < y`.
    Unresolved { x: VertexId, y: VertexId },
}

impl ResolveCheck {
    pub fn is_resolving(&self) -> bool {
        matches!(self, ResolveCheck::Resolving)
    }
}

fn check_pair(g: &LabeledGraph, x: VertexId, y: VertexId) -> Result<(), GraphError> {
    let n = g.vertex_count();
    if x >= n || y >= n {
        return Err(GraphError::UnknownVertex(x.max(y)));
    }
    if x == y {
        return Err(GraphError::SamePair(x));
    }
    Ok(())
}

/// Whether `w` sees `x` and `y` at different distances.
pub fn resolves(g: &LabeledGraph, w: VertexId, x: VertexId, y: VertexId) -> Result<bool, GraphError> {
    check_pair(g, x, y)?;
    if w >= g.vertex_count() {
        return Err(GraphError::UnknownVertex(w));
    }
    let d = bfs_distances(g, w);
    Ok(d.get(x) != d.get(y))
}

/// Every vertex that resolves `{x, y}`, ascending. Two BFS runs, from `x` and `y`.
pub fn resolver_set(g: &LabeledGraph, x: VertexId, y: VertexId) -> Result<Vec<VertexId>, GraphError> {
    check_pair(g, x, y)?;
    let (dx, dy) = rayon::join(|| bfs_distances(g, x), || bfs_distances(g, y));
    Ok((0..g.vertex_count()).filter(|&w| dx.get(w) != dy.get(w)).collect())
}

/// Partition refinement of vertices by their distance vectors to `set`.
///
/// Runs one BFS per member of `set` (batched in parallel) and never compares
/// vertex pairs directly, so the cost is `O(|set| * (|V| + |E|))`.
pub fn is_resolving_set(g: &LabeledGraph, set: &[VertexId]) -> Result<ResolveCheck, GraphError> {
    let n = g.vertex_count();
    if let Some(&bad) = set.iter().find(|&&s| s >= n) {
        return Err(GraphError::UnknownVertex(bad));
    }
    if n < 2 {
        return Ok(ResolveCheck::Resolving);
    }
    if set.is_empty() {
        return Ok(ResolveCheck::Unresolved { x: 0, y: 1 });
    }
    let mut class = vec![0u32; n];
    let mut classes = 1usize;
    let mut refine = |d: &DistanceVector, class: &mut Vec<u32>| {
        let mut ids: HashMap<(u32, Option<u32>), u32> = HashMap::with_capacity(classes * 2);
        for v in 0..n {
            let next = ids.len() as u32;
            class[v] = *ids.entry((class[v], d.get(v))).or_insert(next);
        }
        classes = ids.len();
        classes
    };
    for chunk in set.chunks(BATCH) {
        let dists: Vec<DistanceVector> = chunk.par_iter().map(|&s| bfs_distances(g, s)).collect();
        for d in &dists {
            if refine(d, &mut class) == n {
                return Ok(ResolveCheck::Resolving);
            }
        }
    }
    let mut first_of: HashMap<u32, VertexId> = HashMap::new();
    for (v, &c) in class.iter().enumerate() {
        if let Some(&x) = first_of.get(&c) {
            return Ok(ResolveCheck::Unresolved { x, y: v });
        }
        first_of.insert(c, v);
    }
    unreachable!("class count below vertex count implies a shared class")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::bfs_many;
    use proptest::prelude::*;

    fn path(n: usize) -> LabeledGraph {
        let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        LabeledGraph::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn a_vertex_resolves_any_pair_containing_it() {
        let g = path(5);
        for x in 0..5 {
            for y in 0..5 {
                if x != y {
                    assert!(resolves(&g, x, x, y).unwrap());
                }
            }
        }
        assert!(matches!(resolves(&g, 0, 2, 2), Err(GraphError::SamePair(2))));
    }

    #[test]
    fn midpoint_of_short_path_is_equidistant() {
        let g = path(3);
        assert_eq!(resolver_set(&g, 0, 2).unwrap(), vec![0, 2]);
        assert!(resolver_set(&g, 1, 1).is_err());
    }

    #[test]
    fn whole_vertex_set_resolves() {
        let g = LabeledGraph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        let all: Vec<_> = (0..4).collect();
        assert_eq!(is_resolving_set(&g, &all).unwrap(), ResolveCheck::Resolving);
        assert_eq!(
            is_resolving_set(&g, &[0, 1]).unwrap(),
            ResolveCheck::Unresolved { x: 2, y: 3 }
        );
    }

    #[test]
    fn path_endpoint_resolves() {
        assert!(is_resolving_set(&path(9), &[0]).unwrap().is_resolving());
        assert!(!is_resolving_set(&path(9), &[4]).unwrap().is_resolving());
    }

    #[test]
    fn empty_set() {
        assert_eq!(
            is_resolving_set(&path(3), &[]).unwrap(),
            ResolveCheck::Unresolved { x: 0, y: 1 }
        );
        assert!(is_resolving_set(&path(1), &[]).unwrap().is_resolving());
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

    fn naive_resolving(g: &LabeledGraph, set: &[VertexId]) -> bool {
        let d = bfs_many(g, set);
        let n = g.vertex_count();
        (0..n).all(|x| (x + 1..n).all(|y| d.iter().any(|dv| dv.get(x) != dv.get(y))))
    }

    fn graph_and_set() -> impl Strategy<Value = (usize, Vec<(usize, usize)>, Vec<usize>)> {
        (2usize..40).prop_flat_map(|n| {
            (
                Just(n),
                proptest::collection::vec((0..n, 0..n), 0..(3 * n)),
                proptest::collection::vec(0..n, 1..6),
            )
        })
    }

    proptest! {
        #[test]
        fn refinement_agrees_with_pairwise_definition((n, raw, set) in graph_and_set()) {
            let g = simple(n, &raw);
            let check = is_resolving_set(&g, &set).unwrap();
            prop_assert_eq!(check.is_resolving(), naive_resolving(&g, &set));
            if let ResolveCheck::Unresolved { x, y } = check {
                prop_assert!(x != y);
                for &s in &set {
                    prop_assert!(!resolves(&g, s, x, y).unwrap());
                }
            }
        }

        #[test]
        fn resolver_set_is_symmetric_and_contains_the_pair((n, raw, set) in graph_and_set()) {
            let g = simple(n, &raw);
            let (x, y) = (set[0], (set[0] + 1) % n);
            let a = resolver_set(&g, x, y).unwrap();
            prop_assert_eq!(&a, &resolver_set(&g, y, x).unwrap());
            prop_assert!(a.contains(&x) && a.contains(&y));
        }

        #[test]
        fn false_twins_are_only_resolved_by_themselves((n, raw, _set) in graph_and_set()) {
            let g = simple(n, &raw);
            let closed = |v: usize| {
                let mut c = g.neighbors(v).to_vec();
                c.push(v);
                c.sort_unstable();
                c
            };
            for x in 0..n {
                for y in x + 1..n {
                    if closed(x) == closed(y) {
                        prop_assert_eq!(resolver_set(&g, x, y).unwrap(), vec![x, y]);
                    }
                }
            }
        }
    }
}
