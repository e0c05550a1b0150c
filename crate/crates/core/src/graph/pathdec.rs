use thiserror::Error;

use super::{LabeledGraph, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecompositionViolation {
    #[error("decomposition has no bags")]
    NoBags,
    #[error("bag {bag} names vertex {vertex} which is not in the graph")]
    UnknownVertex { bag: usize, vertex: VertexId },
    #[error("bag {bag} lists vertex {vertex} twice")]
    RepeatedInBag { bag: usize, vertex: VertexId },
    #[error("vertex {0} occurs in no bag")]
    MissingVertex(VertexId),
    #[error("vertex {vertex} leaves the bags after bag {left} and reappears in bag {returned}")]
    NonContiguous {
        vertex: VertexId,
        left: usize,
        returned: usize,
    },
    #[error("edge {0}-{1} is contained in no bag")]
    UncoveredEdge(VertexId, VertexId),
}

/// Validates a path decomposition and returns its width (largest bag minus one).
pub fn validate_path_decomposition(
    g: &LabeledGraph,
    bags: &[Vec<VertexId>],
) -> Result<usize, DecompositionViolation> {
    if bags.is_empty() {
        return Err(DecompositionViolation::NoBags);
    }
    let n = g.vertex_count();
    let mut first = vec![usize::MAX; n];
    let mut last = vec![usize::MAX; n];
    let mut stamp = vec![usize::MAX; n];
    for (b, bag) in bags.iter().enumerate() {
        for &v in bag {
            if v >= n {
                return Err(DecompositionViolation::UnknownVertex { bag: b, vertex: v });
            }
            if stamp[v] == b {
                return Err(DecompositionViolation::RepeatedInBag { bag: b, vertex: v });
            }
            stamp[v] = b;
            if first[v] == usize::MAX {
                first[v] = b;
            } else if last[v] + 1 != b {
                return Err(DecompositionViolation::NonContiguous {
                    vertex: v,
                    left: last[v],
                    returned: b,
                });
            }
            last[v] = b;
        }
    }
    if let Some(v) = (0..n).find(|&v| first[v] == usize::MAX) {
        return Err(DecompositionViolation::MissingVertex(v));
    }
    // every vertex now spans one interval of bags; an edge is covered iff its
    // endpoints' intervals intersect
    for &(u, w) in g.edges() {
        if first[u].max(first[w]) > last[u].min(last[w]) {
            return Err(DecompositionViolation::UncoveredEdge(u, w));
        }
    }
    Ok(bags.iter().map(Vec::len).max().unwrap_or(0).saturating_sub(1))
}
