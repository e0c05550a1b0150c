//! Labeled undirected graphs and the distance machinery shared by both reductions.
//!
//! Vertices are dense integer ids in construction order. All semantics live in
//! the [`VertexLabel`] attached to each vertex; the label/id relation is a
//! bijection enforced by [`GraphBuilder`].

mod bfs;
pub mod io;
mod label;
mod pathdec;
mod resolve;
mod tiny;

use std::collections::{HashMap, HashSet};

pub use bfs::{bfs_distances, bfs_many, DistanceVector};
pub use label::{HubKind, LabelParseError, RawLabel, VertexLabel};
pub use pathdec::{validate_path_decomposition, DecompositionViolation};
pub use resolve::{is_resolving_set, resolver_set, resolves, ResolveCheck};
pub use tiny::{metric_dimension_tiny, TINY_VERTEX_CAP};

use crate::error::GraphError;

pub type VertexId = usize;

/// Index into a graph's path registry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PathId(pub u32);

/// Index into a graph's gadget-name table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GadgetId(pub u32);

/// A registered path `first -> last` of `len` edges.
///
/// `internals[k]` sits at offset `k + 1` from `first`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathRecord {
    pub name: String,
    pub first: VertexId,
    pub last: VertexId,
    pub len: u32,
    pub internals: Vec<VertexId>,
}

impl PathRecord {
    /// Vertex at `offset` edges from `first`; `0` is `first`, `len` is `last`.
    pub fn at(&self, offset: u32) -> Option<VertexId> {
        match offset {
            0 => Some(self.first),
            o if o == self.len => Some(self.last),
            o if o < self.len => Some(self.internals[(o - 1) as usize]),
            _ => None,
        }
    }

    /// All vertices in order from `first` to `last`.
    pub fn vertices(&self) -> Vec<VertexId> {
        let mut out = Vec::with_capacity(self.internals.len() + 2);
        out.push(self.first);
        out.extend_from_slice(&self.internals);
        out.push(self.last);
        out
    }
}

/// Mutable construction-time graph. Freeze into a [`LabeledGraph`] when done.
#[derive(Debug, Default, Clone)]
pub struct GraphBuilder {
    adj: Vec<Vec<VertexId>>,
    labels: Vec<VertexLabel>,
    by_label: HashMap<VertexLabel, VertexId>,
    edges: HashSet<(VertexId, VertexId)>,
    edge_list: Vec<(VertexId, VertexId)>,
    paths: Vec<PathRecord>,
    path_by_name: HashMap<String, PathId>,
    gadget_names: Vec<String>,
    gadget_by_name: HashMap<String, GadgetId>,
}

impl GraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn add_vertex(&mut self, label: VertexLabel) -> Result<VertexId, GraphError> {
        if self.by_label.contains_key(&label) {
            return Err(GraphError::DuplicateLabel(format!("{label:?}")));
        }
        let id = self.labels.len();
        self.labels.push(label);
        self.by_label.insert(label, id);
        self.adj.push(Vec::new());
        Ok(id)
    }

    pub fn vertex(&self, label: &VertexLabel) -> Option<VertexId> {
        self.by_label.get(label).copied()
    }

    pub fn add_edge(&mut self, u: VertexId, w: VertexId) -> Result<(), GraphError> {
        let n = self.labels.len();
        if u >= n || w >= n {
            return Err(GraphError::UnknownVertex(u.max(w)));
        }
        if u == w {
            return Err(GraphError::SelfLoop(u));
        }
        let key = (u.min(w), u.max(w));
        if !self.edges.insert(key) {
            return Err(GraphError::DuplicateEdge(key.0, key.1));
        }
        self.edge_list.push(key);
        self.adj[u].push(w);
        self.adj[w].push(u);
        Ok(())
    }

    pub fn has_edge(&self, u: VertexId, w: VertexId) -> bool {
        self.edges.contains(&(u.min(w), u.max(w)))
    }

    /// Links `u` to `w` by a fresh path of `len` edges, creating `len - 1`
    /// internal vertices labeled with their offset from `u`.
    pub fn add_path(
        &mut self,
        u: VertexId,
        w: VertexId,
        len: u32,
        name: impl Into<String>,
    ) -> Result<PathId, GraphError> {
        let name = name.into();
        let n = self.labels.len();
        if u >= n || w >= n {
            return Err(GraphError::UnknownVertex(u.max(w)));
        }
        if len == 0 {
            return Err(GraphError::ZeroLengthPath(name));
        }
        if self.path_by_name.contains_key(&name) {
            return Err(GraphError::DuplicatePath(name));
        }
        let id = PathId(self.paths.len() as u32);
        let mut internals = Vec::with_capacity(len as usize - 1);
        let mut prev = u;
        for offset in 1..len {
            let v = self.add_vertex(VertexLabel::PathInternal { path: id, offset })?;
            self.add_edge(prev, v)?;
            internals.push(v);
            prev = v;
        }
        self.add_edge(prev, w)?;
        self.path_by_name.insert(name.clone(), id);
        self.paths.push(PathRecord {
            name,
            first: u,
            last: w,
            len,
            internals,
        });
        Ok(id)
    }

    pub fn path(&self, id: PathId) -> &PathRecord {
        &self.paths[id.0 as usize]
    }

    pub fn path_by_name(&self, name: &str) -> Option<&PathRecord> {
        self.path_by_name.get(name).map(|&id| self.path(id))
    }

    pub fn register_gadget(&mut self, name: impl Into<String>) -> Result<GadgetId, GraphError> {
        let name = name.into();
        if self.gadget_by_name.contains_key(&name) {
            return Err(GraphError::DuplicateGadget(name));
        }
        let id = GadgetId(self.gadget_names.len() as u32);
        self.gadget_by_name.insert(name.clone(), id);
        self.gadget_names.push(name);
        Ok(id)
    }

    pub fn gadget_by_name(&self, name: &str) -> Option<GadgetId> {
        self.gadget_by_name.get(name).copied()
    }

    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.adj[v]
    }

    pub fn label_of(&self, v: VertexId) -> &VertexLabel {
        &self.labels[v]
    }

    /// Installs a path registry recovered from labels (see `io::read_graph`).
    /// Ids are assigned in slice order and must match the `PathInternal` labels.
    pub(crate) fn install_paths(&mut self, paths: Vec<PathRecord>) -> Result<(), GraphError> {
        for (k, p) in paths.iter().enumerate() {
            if self.path_by_name.insert(p.name.clone(), PathId(k as u32)).is_some() {
                return Err(GraphError::DuplicatePath(p.name.clone()));
            }
        }
        self.paths = paths;
        Ok(())
    }

    pub fn freeze(self) -> LabeledGraph {
        LabeledGraph::from_parts(
            self.labels,
            self.by_label,
            self.edge_list,
            self.paths,
            self.path_by_name,
            self.gadget_names,
            self.gadget_by_name,
        )
    }
}

/// Immutable labeled graph in compressed adjacency form.
#[derive(Debug, Clone)]
pub struct LabeledGraph {
    offsets: Vec<usize>,
    targets: Vec<VertexId>,
    target_edges: Vec<usize>,
    edges: Vec<(VertexId, VertexId)>,
    labels: Vec<VertexLabel>,
    by_label: HashMap<VertexLabel, VertexId>,
    paths: Vec<PathRecord>,
    path_by_name: HashMap<String, PathId>,
    gadget_names: Vec<String>,
    gadget_by_name: HashMap<String, GadgetId>,
}

impl LabeledGraph {
    fn from_parts(
        labels: Vec<VertexLabel>,
        by_label: HashMap<VertexLabel, VertexId>,
        mut edges: Vec<(VertexId, VertexId)>,
        paths: Vec<PathRecord>,
        path_by_name: HashMap<String, PathId>,
        gadget_names: Vec<String>,
        gadget_by_name: HashMap<String, GadgetId>,
    ) -> Self {
        edges.sort_unstable();
        let n = labels.len();
        let mut degree = vec![0usize; n];
        for &(u, w) in &edges {
            degree[u] += 1;
            degree[w] += 1;
        }
        let mut offsets = vec![0usize; n + 1];
        for v in 0..n {
            offsets[v + 1] = offsets[v] + degree[v];
        }
        let mut fill = offsets.clone();
        let mut slots = vec![(0usize, 0usize); 2 * edges.len()];
        for (e, &(u, w)) in edges.iter().enumerate() {
            slots[fill[u]] = (w, e);
            fill[u] += 1;
            slots[fill[w]] = (u, e);
            fill[w] += 1;
        }
        for v in 0..n {
            slots[offsets[v]..offsets[v + 1]].sort_unstable();
        }
        let (targets, target_edges) = slots.into_iter().unzip();
        Self {
            offsets,
            targets,
            target_edges,
            edges,
            labels,
            by_label,
            paths,
            path_by_name,
            gadget_names,
            gadget_by_name,
        }
    }

    /// Graph on `n` vertices with generic labels; for tests and ad-hoc inputs.
    pub fn from_edges(n: usize, edges: &[(VertexId, VertexId)]) -> Result<Self, GraphError> {
        let mut b = GraphBuilder::new();
        for v in 0..n {
            b.add_vertex(VertexLabel::Plain(v as u32))?;
        }
        for &(u, w) in edges {
            b.add_edge(u, w)?;
        }
        Ok(b.freeze())
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Sorted neighbor list of `v`.
    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }

    /// `(neighbor, edge index)` pairs, aligned with [`Self::neighbors`].
    pub fn incident(&self, v: VertexId) -> impl Iterator<Item = (VertexId, usize)> + '_ {
        let range = self.offsets[v]..self.offsets[v + 1];
        self.targets[range.clone()]
            .iter()
            .copied()
            .zip(self.target_edges[range].iter().copied())
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn has_edge(&self, u: VertexId, w: VertexId) -> bool {
        self.neighbors(u).binary_search(&w).is_ok()
    }

    /// Edges as `(u, w)` with `u < w`, sorted.
    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    pub fn label(&self, v: VertexId) -> &VertexLabel {
        &self.labels[v]
    }

    pub fn labels(&self) -> &[VertexLabel] {
        &self.labels
    }

    pub fn vertex(&self, label: &VertexLabel) -> Option<VertexId> {
        self.by_label.get(label).copied()
    }

    pub fn paths(&self) -> &[PathRecord] {
        &self.paths
    }

    pub fn path(&self, id: PathId) -> &PathRecord {
        &self.paths[id.0 as usize]
    }

    pub fn path_by_name(&self, name: &str) -> Option<&PathRecord> {
        self.path_by_name.get(name).map(|&id| self.path(id))
    }

    pub fn gadget_name(&self, id: GadgetId) -> &str {
        &self.gadget_names[id.0 as usize]
    }

    pub fn gadget_by_name(&self, name: &str) -> Option<GadgetId> {
        self.gadget_by_name.get(name).copied()
    }

    /// Textual label in the `labels` file grammar, e.g. `s[1,2]` or `pv[P(s[1,1],a[1]),3]`.
    pub fn label_string(&self, v: VertexId) -> String {
        match self.labels[v] {
            VertexLabel::PathInternal { path, offset } => {
                format!("pv[{},{}]", self.path(path).name, offset)
            }
            VertexLabel::Twin1(g) => format!("twin1[{}]", self.gadget_name(g)),
            VertexLabel::Twin2(g) => format!("twin2[{}]", self.gadget_name(g)),
            VertexLabel::Connector(g) => format!("conn[{}]", self.gadget_name(g)),
            ref other => other.to_string(),
        }
    }

    /// Copy of this graph with one extra edge; registries are kept as-is.
    pub fn with_edge_added(&self, u: VertexId, w: VertexId) -> Result<Self, GraphError> {
        let n = self.vertex_count();
        if u >= n || w >= n {
            return Err(GraphError::UnknownVertex(u.max(w)));
        }
        if u == w {
            return Err(GraphError::SelfLoop(u));
        }
        if self.has_edge(u, w) {
            return Err(GraphError::DuplicateEdge(u.min(w), u.max(w)));
        }
        let mut edges = self.edges.clone();
        edges.push((u.min(w), u.max(w)));
        Ok(self.rebuilt(edges))
    }

    /// Copy of this graph with the edge `{u, w}` deleted; registries are kept as-is.
    pub fn with_edge_removed(&self, u: VertexId, w: VertexId) -> Result<Self, GraphError> {
        let key = (u.min(w), u.max(w));
        let edges: Vec<_> = self.edges.iter().copied().filter(|&e| e != key).collect();
        if edges.len() == self.edges.len() {
            return Err(GraphError::MissingEdge(key.0, key.1));
        }
        Ok(self.rebuilt(edges))
    }

    fn rebuilt(&self, edges: Vec<(VertexId, VertexId)>) -> Self {
        Self::from_parts(
            self.labels.clone(),
            self.by_label.clone(),
            edges,
            self.paths.clone(),
            self.path_by_name.clone(),
            self.gadget_names.clone(),
            self.gadget_by_name.clone(),
        )
    }

    /// Checks simplicity, symmetry and the path-registry invariants.
    pub fn audit(&self) -> Result<(), GraphError> {
        for v in 0..self.vertex_count() {
            let nb = self.neighbors(v);
            if nb.windows(2).any(|w| w[0] == w[1]) {
                return Err(GraphError::Integrity(format!("parallel edge at vertex {v}")));
            }
            for &w in nb {
                if w == v {
                    return Err(GraphError::SelfLoop(v));
                }
                if !self.has_edge(w, v) {
                    return Err(GraphError::Integrity(format!("asymmetric adjacency {v}->{w}")));
                }
            }
        }
        for p in &self.paths {
            if p.internals.len() + 1 != p.len as usize {
                return Err(GraphError::Integrity(format!(
                    "path {} registers length {} but has {} internals",
                    p.name,
                    p.len,
                    p.internals.len()
                )));
            }
            let vs = p.vertices();
            for w in vs.windows(2) {
                if !self.has_edge(w[0], w[1]) {
                    return Err(GraphError::Integrity(format!(
                        "path {} misses edge {}-{}",
                        p.name, w[0], w[1]
                    )));
                }
            }
            for (k, &v) in p.internals.iter().enumerate() {
                let on_path = self
                    .neighbors(v)
                    .iter()
                    .filter(|&&x| x == vs[k] || x == vs[k + 2])
                    .count();
                if on_path != 2 {
                    return Err(GraphError::Integrity(format!(
                        "internal vertex {v} of path {} has {on_path} path neighbors",
                        p.name
                    )));
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn plain(b: &mut GraphBuilder, k: u32) -> VertexId {
        b.add_vertex(VertexLabel::Plain(k)).unwrap()
    }

    #[test]
    fn unit_length_path_is_a_single_edge() {
        let mut b = GraphBuilder::new();
        let u = plain(&mut b, 0);
        let w = plain(&mut b, 1);
        let id = b.add_path(u, w, 1, "e").unwrap();
        assert_eq!(b.vertex_count(), 2);
        assert!(b.has_edge(u, w));
        assert_eq!(b.path(id).len, 1);
        assert!(b.path(id).internals.is_empty());
    }

    #[test]
    fn long_path_creates_offset_labeled_internals() {
        let mut b = GraphBuilder::new();
        let u = plain(&mut b, 0);
        let w = plain(&mut b, 1);
        let id = b.add_path(u, w, 40, "P(s[1,1],p[1,1])").unwrap();
        let g = b.freeze();
        assert_eq!(g.vertex_count(), 41);
        assert_eq!(g.edge_count(), 40);
        let rec = g.path(id);
        assert_eq!(rec.internals.len(), 39);
        assert_eq!(*g.label(rec.at(7).unwrap()), VertexLabel::PathInternal { path: id, offset: 7 });
        assert_eq!(g.label_string(rec.at(3).unwrap()), "pv[P(s[1,1],p[1,1]),3]");
        let d = bfs_distances(&g, u);
        assert_eq!(d.get(w), Some(40));
        g.audit().unwrap();
    }

    #[test]
    fn builder_rejects_duplicates() {
        let mut b = GraphBuilder::new();
        let u = plain(&mut b, 0);
        let w = plain(&mut b, 1);
        assert!(matches!(b.add_vertex(VertexLabel::Plain(0)), Err(GraphError::DuplicateLabel(_))));
        b.add_edge(u, w).unwrap();
        assert!(matches!(b.add_edge(w, u), Err(GraphError::DuplicateEdge(0, 1))));
        b.add_path(u, w, 3, "x").unwrap();
        assert!(matches!(b.add_path(u, w, 3, "x"), Err(GraphError::DuplicatePath(_))));
        assert!(matches!(b.add_path(u, w, 1, "y"), Err(GraphError::DuplicateEdge(_, _))));
        assert!(matches!(b.add_edge(u, u), Err(GraphError::SelfLoop(_))));
    }

    #[test]
    fn edge_surgery_keeps_labels() {
        let g = LabeledGraph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let h = g.with_edge_added(0, 3).unwrap();
        assert_eq!(h.edge_count(), 4);
        assert!(h.has_edge(3, 0));
        let k = h.with_edge_removed(1, 2).unwrap();
        assert!(!k.has_edge(1, 2));
        assert_eq!(k.label(2), g.label(2));
        assert!(g.with_edge_added(0, 1).is_err());
        assert!(g.with_edge_removed(0, 2).is_err());
    }
}
