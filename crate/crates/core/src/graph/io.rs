//! Line-oriented graph and label files.
//!
//! Graph file: `g <vertexCount> <edgeCount>` then one `e <u> <w>` line per
//! edge, 0-based ids with `u < w`. Labels file: one `<id>\t<label>` line per
//! vertex.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use super::label::RawLabel;
use super::{GraphBuilder, LabeledGraph, PathId, PathRecord, VertexId, VertexLabel};
use crate::error::GraphError;

pub fn write_graph(g: &LabeledGraph) -> String {
    let mut out = String::with_capacity(16 * g.edge_count() + 32);
    let _ = writeln!(out, "g {} {}", g.vertex_count(), g.edge_count());
    for &(u, w) in g.edges() {
        let _ = writeln!(out, "e {u} {w}");
    }
    out
}

pub fn write_labels(g: &LabeledGraph) -> String {
    let mut out = String::new();
    for v in 0..g.vertex_count() {
        let _ = writeln!(out, "{v}\t{}", g.label_string(v));
    }
    out
}

fn parse_err(line: usize, msg: impl Into<String>) -> GraphError {
    GraphError::Parse {
        line,
        msg: msg.into(),
    }
}

fn parse_edges(text: &str) -> Result<(usize, Vec<(VertexId, VertexId)>), GraphError> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let t = raw.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        let mut parts = t.split_whitespace();
        let tag = parts.next().unwrap_or_default();
        let nums: Vec<usize> = parts
            .map(|p| p.parse::<usize>().map_err(|_| parse_err(line, format!("not an integer: {p}"))))
            .collect::<Result<_, _>>()?;
        match (tag, nums.as_slice()) {
            ("g", &[n, m]) if header.is_none() => header = Some((n, m)),
            ("g", _) => return Err(parse_err(line, "malformed or repeated header")),
            ("e", &[u, w]) => {
                let (n, _) = header.ok_or_else(|| parse_err(line, "edge before header"))?;
                if u >= w {
                    return Err(parse_err(line, "edge endpoints must satisfy u < w"));
                }
                if w >= n {
                    return Err(parse_err(line, format!("vertex {w} out of range")));
                }
                edges.push((u, w));
            }
            _ => return Err(parse_err(line, format!("unrecognized line: {t}"))),
        }
    }
    let (n, m) = header.ok_or_else(|| parse_err(1, "missing header"))?;
    if edges.len() != m {
        return Err(parse_err(0, format!("header announces {m} edges, found {}", edges.len())));
    }
    Ok((n, edges))
}

/// Loads a graph, optionally with its labels file. Without labels, vertex `k`
/// gets the label `x[k]`. Path and gadget registries are rebuilt from the
/// labels.
pub fn read_graph(graph_text: &str, labels_text: Option<&str>) -> Result<LabeledGraph, GraphError> {
    let (n, edges) = parse_edges(graph_text)?;
    let mut b = GraphBuilder::new();
    let Some(labels_text) = labels_text else {
        for v in 0..n {
            b.add_vertex(VertexLabel::Plain(v as u32))?;
        }
        for (u, w) in edges {
            b.add_edge(u, w)?;
        }
        return Ok(b.freeze());
    };

    let mut raw = vec![None; n];
    for (idx, line) in labels_text.lines().enumerate() {
        let t = line.trim_end();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        let (id, label) = t
            .split_once('\t')
            .ok_or_else(|| parse_err(idx + 1, "expected <id>\\t<label>"))?;
        let id: usize = id
            .trim()
            .parse()
            .map_err(|_| parse_err(idx + 1, "vertex id is not an integer"))?;
        if id >= n {
            return Err(parse_err(idx + 1, format!("vertex {id} out of range")));
        }
        if raw[id].is_some() {
            return Err(parse_err(idx + 1, format!("vertex {id} labeled twice")));
        }
        raw[id] = Some(RawLabel::parse(label.trim())?);
    }

    // intern path and gadget names in order of first appearance
    let mut path_ids: HashMap<String, PathId> = HashMap::new();
    let mut path_members: Vec<(String, BTreeMap<u32, VertexId>)> = Vec::new();
    for (v, r) in raw.iter().enumerate() {
        let r = r.as_ref().ok_or_else(|| parse_err(0, format!("vertex {v} has no label")))?;
        let label = match r {
            RawLabel::Fixed(l) => *l,
            RawLabel::PathInternal { path, offset } => {
                let id = *path_ids.entry(path.clone()).or_insert_with(|| {
                    path_members.push((path.clone(), BTreeMap::new()));
                    PathId(path_members.len() as u32 - 1)
                });
                if *offset == 0 || path_members[id.0 as usize].1.insert(*offset, v).is_some() {
                    return Err(parse_err(0, format!("bad or repeated offset on path {path}")));
                }
                VertexLabel::PathInternal { path: id, offset: *offset }
            }
            RawLabel::Twin1(name) | RawLabel::Twin2(name) | RawLabel::Connector(name) => {
                let g = match b.gadget_by_name(name) {
                    Some(g) => g,
                    None => b.register_gadget(name.clone())?,
                };
                match r {
                    RawLabel::Twin1(_) => VertexLabel::Twin1(g),
                    RawLabel::Twin2(_) => VertexLabel::Twin2(g),
                    _ => VertexLabel::Connector(g),
                }
            }
        };
        b.add_vertex(label)?;
    }
    for &(u, w) in &edges {
        b.add_edge(u, w)?;
    }

    let paths = recover_path_ends(&b, path_members)?;
    b.install_paths(paths)?;
    let g = b.freeze();
    g.audit()?;
    Ok(g)
}

/// Rebuilds path records from interned internals.
///
/// An end internal's endpoint is its unique neighbor outside the path, except
/// that gadget vertices and end internals of other paths that attach *to* it
/// also show up there. Paths whose ends are unambiguous are fixed first; their
/// attachment edges are then discounted from the remaining candidates until
/// nothing changes.
fn recover_path_ends(
    b: &GraphBuilder,
    members: Vec<(String, BTreeMap<u32, VertexId>)>,
) -> Result<Vec<PathRecord>, GraphError> {
    let mut internals_of: Vec<Vec<VertexId>> = Vec::with_capacity(members.len());
    for (name, m) in &members {
        let len = m.len() as u32 + 1;
        if m.keys().copied().ne(1..len) {
            return Err(GraphError::Integrity(format!("path {name} has gaps in its offsets")));
        }
        internals_of.push(m.values().copied().collect());
    }
    let path_of = |v: VertexId| match b.label_of(v) {
        VertexLabel::PathInternal { path, .. } => Some(path.0 as usize),
        _ => None,
    };
    let is_gadget = |v: VertexId| {
        matches!(
            b.label_of(v),
            VertexLabel::Twin1(_) | VertexLabel::Twin2(_) | VertexLabel::Connector(_)
        )
    };
    // candidates[p] = (head-side, tail-side) endpoint candidates
    let mut candidates: Vec<[Vec<VertexId>; 2]> = internals_of
        .iter()
        .enumerate()
        .map(|(p, ints)| {
            let side = |v: VertexId| -> Vec<VertexId> {
                b.neighbors(v)
                    .iter()
                    .copied()
                    .filter(|&x| path_of(x) != Some(p) && !is_gadget(x))
                    .collect()
            };
            [side(ints[0]), side(*ints.last().unwrap())]
        })
        .collect();
    // a single internal carries both ends on one vertex
    let mut settled = vec![false; internals_of.len()];
    loop {
        let mut progress = false;
        for p in 0..internals_of.len() {
            if settled[p] {
                continue;
            }
            let done = if internals_of[p].len() == 1 {
                candidates[p][0].len() == 2
            } else {
                candidates[p][0].len() == 1 && candidates[p][1].len() == 1
            };
            if !done {
                continue;
            }
            settled[p] = true;
            progress = true;
            // the attachment edges of p are not endpoint edges of the paths p attaches to
            let ints = &internals_of[p];
            let ends: Vec<(VertexId, VertexId)> = if ints.len() == 1 {
                candidates[p][0].iter().map(|&e| (ints[0], e)).collect()
            } else {
                vec![(ints[0], candidates[p][0][0]), (*ints.last().unwrap(), candidates[p][1][0])]
            };
            for (own, end) in ends {
                if let Some(q) = path_of(end) {
                    for c in candidates[q].iter_mut() {
                        c.retain(|&x| x != own);
                    }
                }
            }
        }
        if !progress {
            break;
        }
    }
    let mut out = Vec::with_capacity(members.len());
    for (p, (name, _)) in members.into_iter().enumerate() {
        if !settled[p] {
            return Err(GraphError::Integrity(format!("path {name} has no clear endpoints")));
        }
        let internals = std::mem::take(&mut internals_of[p]);
        let (first, last) = if internals.len() == 1 {
            let c = &candidates[p][0];
            (c[0].min(c[1]), c[0].max(c[1]))
        } else {
            (candidates[p][0][0], candidates[p][1][0])
        };
        out.push(PathRecord {
            name,
            first,
            last,
            len: internals.len() as u32 + 1,
            internals,
        });
    }
    Ok(out)
}
