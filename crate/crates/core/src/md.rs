//! Multicolored Resolving Set to Metric Dimension.
//!
//! On top of the MRS graph `G` this adds, per class `i` and side `h`, a forced
//! set gadget `{p_i^h, q_i^h, pi_i^h}` wired to every selector of `X_i`, the
//! auxiliary paths that keep forced vertices from resolving the wrong pairs,
//! and `34nm + 18n` forced vertex gadgets (triangles with two degree-2 false
//! twins). The budget is `k = 34nm + 19n`.

use rayon::prelude::*;

use crate::error::ReductionError;
use crate::graph::{bfs_distances, GadgetId, GraphBuilder, HubKind, LabeledGraph, VertexId, VertexLabel};
use crate::mrs::{self, MrsInstance, MrsLayout};
use crate::names;
use crate::report::Report;
use crate::tdm::ThreeDMInstance;

/// Which clause of the construction a forced vertex gadget comes from.
/// Indices are 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GadgetKind {
    /// `F^h(i,j,t_r)` next to `pi_i^h` on `P^h(i,j,t_r)`.
    Branch { h: usize, i: usize, j: usize, hub: HubKind, r: usize },
    /// `F^h(i,j,p_i^{3-h})` next to `pi_i^h` on `P^h(i,j,p_i^{3-h})`.
    Cross { h: usize, i: usize, j: usize },
    /// `F(pi_i^h, t_r)` next to the hub on `P(pi_i^h, t_r)`, `t` in {a, c}.
    Side { i: usize, h: usize, hub: HubKind, r: usize },
    /// `F(s_i^j, t_r)` next to the hub on `P(s_i^j, t_r)`, `t` in {a, c}.
    SelectorEnd { i: usize, j: usize, hub: HubKind, r: usize },
    /// `F^mid(i,j,h)` on the middle vertex of `P^h(i,j,p_i^{3-h})`.
    Mid { i: usize, j: usize, h: usize },
    /// `F^ecc(i,j,h,r)` at distance `10(n+1)+1` from `pi_i^h` on `P^h(i,j,a_r)`.
    Ecc { i: usize, j: usize, h: usize, r: usize },
    /// `F^t(u_r^i, v_r^i)` with a fresh connector.
    Pair { t: usize, r: usize, i: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ForcedVertexGadget {
    pub id: GadgetId,
    pub kind: GadgetKind,
    pub twin1: VertexId,
    pub twin2: VertexId,
    pub connector: VertexId,
    pub connector_is_new: bool,
    /// Neighbors of a fresh connector besides its twins; empty otherwise.
    pub attached_to: Vec<VertexId>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ForcedSetAnchor {
    pub p: VertexId,
    pub q: VertexId,
    pub pi: VertexId,
}

#[derive(Debug, Clone)]
pub struct MdInstance {
    pub graph: LabeledGraph,
    pub k: u64,
    pub layout: MrsLayout,
    pub source: ThreeDMInstance,
    /// `anchors[i-1][h-1]`.
    pub anchors: Vec<[ForcedSetAnchor; 2]>,
    pub gadgets: Vec<ForcedVertexGadget>,
    /// `mids[i-1][j-1][h-1] = mid(P^h(i,j,p_i^{3-h}))`.
    pub mids: Vec<Vec<[VertexId; 2]>>,
}

impl MdInstance {
    pub fn n(&self) -> usize {
        self.layout.n
    }

    pub fn m(&self) -> usize {
        self.layout.m
    }

    pub fn anchor(&self, i: usize, h: usize) -> ForcedSetAnchor {
        self.anchors[i - 1][h - 1]
    }

    pub fn mid(&self, i: usize, j: usize, h: usize) -> VertexId {
        self.mids[i - 1][j - 1][h - 1]
    }

    pub fn gadget(&self, name: &str) -> Option<&ForcedVertexGadget> {
        let id = self.graph.gadget_by_name(name)?;
        self.gadgets.get(id.0 as usize)
    }

    /// Per-vertex flag: twin or connector of some gadget.
    pub fn gadget_membership(&self) -> Vec<bool> {
        let mut mark = vec![false; self.graph.vertex_count()];
        for g in &self.gadgets {
            mark[g.twin1] = true;
            mark[g.twin2] = true;
            mark[g.connector] = true;
        }
        mark
    }

    /// `i` such that `v` is in `X_i`.
    pub fn selector_class(&self, v: VertexId) -> Option<usize> {
        match self.graph.label(v) {
            VertexLabel::Selector { i, .. } => Some(*i as usize),
            _ => None,
        }
    }
}

/// `34nm + 19n`.
pub fn budget(n: usize, m: usize) -> u64 {
    (34 * n * m + 19 * n) as u64
}

/// `34nm + 18n`.
pub fn gadget_count(n: usize, m: usize) -> usize {
    34 * n * m + 18 * n
}

fn integrity(msg: impl Into<String>) -> ReductionError {
    ReductionError::Integrity(msg.into())
}

struct Builder {
    b: GraphBuilder,
    gadgets: Vec<ForcedVertexGadget>,
}

impl Builder {
    fn path(&self, name: &str) -> Result<crate::graph::PathRecord, ReductionError> {
        self.b
            .path_by_name(name)
            .cloned()
            .ok_or_else(|| integrity(format!("missing path {name}")))
    }

    fn path_vertex(&self, name: &str, offset: u32) -> Result<VertexId, ReductionError> {
        let p = self.path(name)?;
        p.at(offset)
            .ok_or_else(|| integrity(format!("path {name} has no offset {offset}")))
    }

    fn gadget(&mut self, name: String, kind: GadgetKind, connector: VertexId) -> Result<(), ReductionError> {
        self.gadget_with(name, kind, connector, false, Vec::new())
    }

    fn gadget_with(
        &mut self,
        name: String,
        kind: GadgetKind,
        connector: VertexId,
        connector_is_new: bool,
        attached_to: Vec<VertexId>,
    ) -> Result<(), ReductionError> {
        let id = self.b.register_gadget(name)?;
        if id.0 as usize != self.gadgets.len() {
            return Err(integrity("gadget registry out of step with graph"));
        }
        let twin1 = self.b.add_vertex(VertexLabel::Twin1(id))?;
        let twin2 = self.b.add_vertex(VertexLabel::Twin2(id))?;
        self.b.add_edge(twin1, twin2)?;
        self.b.add_edge(twin1, connector)?;
        self.b.add_edge(twin2, connector)?;
        self.gadgets.push(ForcedVertexGadget {
            id,
            kind,
            twin1,
            twin2,
            connector,
            connector_is_new,
            attached_to,
        });
        Ok(())
    }
}

/// Builds `G'` from a 3DM instance and self-checks the structural invariants.
pub fn build_md(inst: &ThreeDMInstance) -> Result<MdInstance, ReductionError> {
    let (n, m) = (inst.n, inst.m());
    let mut bld = Builder {
        b: GraphBuilder::new(),
        gadgets: Vec::new(),
    };
    let layout = mrs::build_into(&mut bld.b, inst)?;
    let unit = n as u32 + 1;
    let (long, short) = (20 * unit, 10 * unit);
    if long % 2 != 0 {
        return Err(integrity("forced-set paths must have even length to have a middle vertex"));
    }

    // forced set gadgets
    let mut anchors = Vec::with_capacity(n);
    for i in 1..=n as u32 {
        let mut pair = [ForcedSetAnchor { p: 0, q: 0, pi: 0 }; 2];
        for h in 1..=2u8 {
            let p = bld.b.add_vertex(VertexLabel::AnchorP { i, h })?;
            let q = bld.b.add_vertex(VertexLabel::AnchorQ { i, h })?;
            let pi = bld.b.add_vertex(VertexLabel::AnchorPi { i, h })?;
            bld.b.add_edge(p, pi)?;
            bld.b.add_edge(q, pi)?;
            pair[h as usize - 1] = ForcedSetAnchor { p, q, pi };
        }
        anchors.push(pair);
    }
    let anchor = |i: usize, h: usize| anchors[i - 1][h - 1];
    for i in 1..=n {
        for j in 1..=m {
            for h in 1..=2 {
                bld.b
                    .add_path(layout.selector(i, j), anchor(i, h).p, long, names::anchor_path(i, j, h))?;
            }
        }
    }
    for i in 1..=n {
        for j in 1..=m {
            for h in 1..=2 {
                let pi = anchor(i, h).pi;
                for r in 1..=3 {
                    for hub in HubKind::ALL {
                        let target = bld.path_vertex(&names::selector_path(i, j, hub, r), 1)?;
                        bld.b.add_path(pi, target, long, names::branch_path(h, i, j, hub, r))?;
                    }
                }
                let target = bld.path_vertex(&names::anchor_path(i, j, 3 - h), 1)?;
                bld.b.add_path(pi, target, long, names::cross_path(h, i, j))?;
            }
        }
    }

    // auxiliary paths
    for i in 1..=n {
        for h in 1..=2 {
            for r in 1..=3 {
                for hub in [HubKind::A, HubKind::C] {
                    bld.b
                        .add_path(anchor(i, h).pi, layout.hub(hub, r), short, names::side_path(i, h, hub, r))?;
                }
            }
        }
    }
    let mut mids = vec![vec![[0; 2]; m]; n];
    for i in 1..=n {
        for j in 1..=m {
            for h in 1..=2 {
                mids[i - 1][j - 1][h - 1] = bld.path_vertex(&names::cross_path(h, i, j), long / 2)?;
            }
        }
    }
    for i in 1..=n {
        for j in 1..=m {
            for h in 1..=2 {
                // |P^{3-h}(i,j,p_i^h)| / 2 + |P(s_i^j, p_i^h)| - 1
                let len = long / 2 + long - 1;
                bld.b
                    .add_path(anchor(i, h).q, mids[i - 1][j - 1][2 - h], len, names::link_path(i, j, h))?;
            }
        }
    }

    // forced vertex gadgets
    for i in 1..=n {
        for j in 1..=m {
            for h in 1..=2 {
                for r in 1..=3 {
                    for hub in HubKind::ALL {
                        let c = bld.path_vertex(&names::branch_path(h, i, j, hub, r), 1)?;
                        bld.gadget(
                            names::gadget_branch(h, i, j, hub, r),
                            GadgetKind::Branch { h, i, j, hub, r },
                            c,
                        )?;
                    }
                }
                let c = bld.path_vertex(&names::cross_path(h, i, j), 1)?;
                bld.gadget(names::gadget_cross(h, i, j), GadgetKind::Cross { h, i, j }, c)?;
            }
        }
    }
    for i in 1..=n {
        for h in 1..=2 {
            for r in 1..=3 {
                for hub in [HubKind::A, HubKind::C] {
                    let c = bld.path_vertex(&names::side_path(i, h, hub, r), short - 1)?;
                    bld.gadget(names::gadget_side(i, h, hub, r), GadgetKind::Side { i, h, hub, r }, c)?;
                }
            }
        }
    }
    for i in 1..=n {
        for j in 1..=m {
            let tuple = inst.tuple(j);
            for r in 1..=3 {
                for hub in [HubKind::A, HubKind::C] {
                    let len = mrs::selector_path_len(layout.big_m, hub, tuple[r - 1]);
                    let c = bld.path_vertex(&names::selector_path(i, j, hub, r), len - 1)?;
                    bld.gadget(
                        names::gadget_selector(i, j, hub, r),
                        GadgetKind::SelectorEnd { i, j, hub, r },
                        c,
                    )?;
                }
            }
        }
    }
    for i in 1..=n {
        for j in 1..=m {
            for h in 1..=2 {
                bld.gadget(names::gadget_mid(i, j, h), GadgetKind::Mid { i, j, h }, mids[i - 1][j - 1][h - 1])?;
            }
        }
    }
    for i in 1..=n {
        for j in 1..=m {
            for h in 1..=2 {
                for r in 1..=3 {
                    let c = bld.path_vertex(&names::branch_path(h, i, j, HubKind::A, r), short + 1)?;
                    bld.gadget(names::gadget_ecc(i, j, h, r), GadgetKind::Ecc { i, j, h, r }, c)?;
                }
            }
        }
    }
    for pair in layout.pairs.clone() {
        for t in 1..=2u32 {
            let name = names::gadget_pair(t as usize, pair.r, pair.i);
            let id_hint = bld.b.gadget_by_name(&name);
            if id_hint.is_some() {
                return Err(integrity(format!("gadget {name} created twice")));
            }
            // the connector is labeled by the gadget it belongs to, which is
            // registered in gadget_with; reserve the id first
            let next = GadgetId(bld.gadgets.len() as u32);
            let conn = bld.b.add_vertex(VertexLabel::Connector(next))?;
            let along_a = bld.path_vertex(&names::pair_path(false, pair.r, pair.i, HubKind::A), t)?;
            let along_c = bld.path_vertex(&names::pair_path(false, pair.r, pair.i, HubKind::C), t)?;
            let attached = vec![pair.u, pair.v, along_a, along_c];
            for &x in &attached {
                bld.b.add_edge(conn, x)?;
            }
            bld.gadget_with(
                name,
                GadgetKind::Pair {
                    t: t as usize,
                    r: pair.r,
                    i: pair.i,
                },
                conn,
                true,
                attached,
            )?;
        }
    }

    let Builder { b, gadgets, .. } = bld;
    let md = MdInstance {
        graph: b.freeze(),
        k: budget(n, m),
        layout,
        source: inst.clone(),
        anchors,
        gadgets,
        mids,
    };
    let audit = audit_structure(&md);
    if let Some(first) = audit.violations.first() {
        return Err(integrity(first.clone()));
    }
    Ok(md)
}

/// Structural invariants of `G'`: counts, budget, adjacency of the forced set
/// anchors, path lengths, gadget shapes and connectivity.
pub fn audit_structure(md: &MdInstance) -> Report {
    let g = &md.graph;
    let (n, m) = (md.n(), md.m());
    let unit = n as u32 + 1;
    let mut rep = Report::new("structure-audit");
    rep.check(md.k == budget(n, m), || format!("k = {} but 34nm+19n = {}", md.k, budget(n, m)));
    rep.check(md.gadgets.len() == gadget_count(n, m), || {
        format!("{} gadgets but 34nm+18n = {}", md.gadgets.len(), gadget_count(n, m))
    });
    if let Err(e) = g.audit() {
        rep.check(false, || e.to_string());
    }
    for i in 1..=n {
        for h in 1..=2 {
            let a = md.anchor(i, h);
            rep.check(g.has_edge(a.p, a.pi) && g.has_edge(a.q, a.pi), || {
                format!("p[{i},{h}] or q[{i},{h}] not adjacent to pi[{i},{h}]")
            });
            // q lies on the pi edge plus its m link paths
            rep.check(g.degree(a.q) == 1 + m, || {
                format!("deg(q[{i},{h}]) = {}, expected {}", g.degree(a.q), 1 + m)
            });
        }
    }
    let expect_len = |name: String, len: u32, rep: &mut Report| match g.path_by_name(&name) {
        Some(p) => rep.check(p.len == len, || format!("|{name}| = {}, expected {len}", p.len)),
        None => rep.check(false, || format!("missing path {name}")),
    };
    for i in 1..=n {
        for j in 1..=m {
            for h in 1..=2 {
                expect_len(names::anchor_path(i, j, h), 20 * unit, &mut rep);
                expect_len(names::cross_path(h, i, j), 20 * unit, &mut rep);
                expect_len(names::link_path(i, j, h), 30 * unit - 1, &mut rep);
                for r in 1..=3 {
                    for hub in HubKind::ALL {
                        expect_len(names::branch_path(h, i, j, hub, r), 20 * unit, &mut rep);
                    }
                }
                let link = g.path_by_name(&names::link_path(i, j, h));
                rep.check(
                    link.is_some_and(|p| p.first == md.anchor(i, h).q && p.last == md.mid(i, j, 3 - h)),
                    || format!("link path ({i},{j},{h}) does not join q[{i},{h}] to its middle vertex"),
                );
            }
        }
        for h in 1..=2 {
            for r in 1..=3 {
                for hub in [HubKind::A, HubKind::C] {
                    expect_len(names::side_path(i, h, hub, r), 10 * unit, &mut rep);
                }
            }
        }
    }
    for gd in &md.gadgets {
        let name = g.gadget_name(gd.id);
        rep.check(g.degree(gd.twin1) == 2 && g.degree(gd.twin2) == 2, || {
            format!("twins of {name} do not have degree 2")
        });
        rep.check(
            g.has_edge(gd.twin1, gd.twin2) && g.has_edge(gd.twin1, gd.connector) && g.has_edge(gd.twin2, gd.connector),
            || format!("{name} is not a triangle"),
        );
        if gd.connector_is_new {
            rep.check(gd.attached_to.len() == 4 && g.degree(gd.connector) == 6, || {
                format!("fresh connector of {name} has degree {}", g.degree(gd.connector))
            });
        } else {
            rep.check(
                matches!(g.label(gd.connector), VertexLabel::PathInternal { .. }) && gd.attached_to.is_empty(),
                || format!("connector of {name} is not a path vertex"),
            );
        }
    }
    let d = bfs_distances(g, md.layout.hub(HubKind::A, 1));
    let unreached = d.dist.iter().position(|x| x.is_none());
    rep.check(unreached.is_none(), || {
        format!("vertex {} unreachable from a[1]", g.label_string(unreached.unwrap()))
    });
    rep
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MdStats {
    pub vertices: usize,
    pub edges: usize,
    pub k: u64,
    pub gadget_count: usize,
    pub path_count: usize,
}

pub fn md_stats(md: &MdInstance) -> MdStats {
    MdStats {
        vertices: md.graph.vertex_count(),
        edges: md.graph.edge_count(),
        k: md.k,
        gadget_count: md.gadgets.len(),
        path_count: md.graph.paths().len(),
    }
}

/// Selector-to-pair distances in `G'` equal those in `G`.
pub fn verify_distance_preservation(md: &MdInstance) -> Result<Report, ReductionError> {
    let base = mrs::build_mrs(&md.source)?;
    Ok(compare_selector_pair_distances(&md.graph, &md.layout, &base))
}

/// Compares `dist(s_i^j, u/v_r^{i'})` in `extended` against `base`; vertices
/// are matched by label.
pub fn compare_selector_pair_distances(extended: &LabeledGraph, layout: &MrsLayout, base: &MrsInstance) -> Report {
    let selectors: Vec<_> = layout.selectors().collect();
    let parts: Vec<Report> = selectors
        .par_iter()
        .map(|&(i, j, s)| {
            let mut rep = Report::new("");
            let de = bfs_distances(extended, s);
            let db = bfs_distances(&base.graph, base.layout.selector(i, j));
            for (pe, pb) in layout.pairs.iter().zip(&base.layout.pairs) {
                for (xe, xb, tag) in [(pe.u, pb.u, 'u'), (pe.v, pb.v, 'v')] {
                    rep.check(de.get(xe) == db.get(xb), || {
                        format!(
                            "dist(s[{i},{j}],{tag}[{},{}]) is {:?} in G' but {:?} in G",
                            pe.r,
                            pe.i,
                            de.get(xe),
                            db.get(xb)
                        )
                    });
                }
            }
            rep
        })
        .collect();
    let mut report = Report::new("distance-preservation");
    for p in parts {
        report.merge(p);
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::resolver_set;

    fn inst(n: usize, tuples: &[[usize; 3]]) -> ThreeDMInstance {
        ThreeDMInstance::new(n, tuples.to_vec()).unwrap()
    }

    #[test]
    fn budget_and_gadget_counts() {
        let md = build_md(&inst(1, &[[1, 1, 1], [1, 1, 1]])).unwrap();
        assert_eq!(md.k, 87);
        assert_eq!(md.gadgets.len(), 86);
        let s = md_stats(&md);
        assert_eq!((s.k, s.gadget_count), (87, 86));
        assert_eq!(budget(2, 3), 242);
    }

    #[test]
    fn link_paths_have_length_59_for_n1() {
        let md = build_md(&inst(1, &[[1, 1, 1]])).unwrap();
        let p = md.graph.path_by_name(&names::link_path(1, 1, 1)).unwrap();
        assert_eq!(p.len, 59);
    }

    #[test]
    fn vertex_count_matches_closed_form() {
        let i = inst(1, &[[1, 1, 1]]);
        let md = build_md(&i).unwrap();
        let (n, m) = (1i64, 1i64);
        let (long, short) = (20 * (n + 1), 10 * (n + 1));
        let g_count = 1048i64;
        let anchors = 6 * n;
        // per (i,j,h): anchor path, 9 branch paths, cross path, link path
        let per_ijh = (long - 1) + 10 * (long - 1) + (short + long - 2);
        let side = 2 * n * 3 * 2 * (short - 1);
        let gadgets = 2 * (34 * n * m + 18 * n) + 6 * n;
        let want = g_count + anchors + 2 * n * m * per_ijh + side + gadgets;
        assert_eq!(want, 2366);
        assert_eq!(md.graph.vertex_count() as i64, want);
    }

    #[test]
    fn gadget_shapes() {
        let md = build_md(&inst(1, &[[1, 1, 1], [1, 1, 1]])).unwrap();
        let g = &md.graph;
        let fresh = md.gadgets.iter().filter(|x| x.connector_is_new).count();
        assert_eq!(fresh, 6);
        for gd in &md.gadgets {
            assert_eq!(g.degree(gd.twin1), 2);
            assert_eq!(resolver_set(g, gd.twin1, gd.twin2).unwrap().len(), 2);
        }
        let f1 = md.gadget("F1(u[2,1])").unwrap();
        assert_eq!(g.degree(f1.connector), 6);
        let ecc = md.gadget("Fecc(1,2,1,3)").unwrap();
        let pi = md.anchor(1, 1).pi;
        assert_eq!(bfs_distances(g, pi).get(ecc.connector), Some(21));
        assert!(md.gadget("F[1](1,2,a[1])").is_some());
        assert!(md.gadget("Fmid(1,2,1)").is_some());
    }

    #[test]
    fn distance_preservation_and_negative_control() {
        let i = inst(1, &[[1, 1, 1]]);
        let md = build_md(&i).unwrap();
        let rep = verify_distance_preservation(&md).unwrap();
        assert!(rep.is_ok(), "{:?}", rep.violations);
        assert_eq!(rep.checks, 6);
        let s = md.layout.selector(1, 1);
        assert_eq!(bfs_distances(&md.graph, s).get(md.layout.pair(1, 1).u), Some(80));

        let p = md.graph.path_by_name("P(s[1,1],b[1])").unwrap();
        let cut = md.graph.with_edge_removed(p.internals[10], p.internals[11]).unwrap();
        let base = mrs::build_mrs(&i).unwrap();
        assert!(!compare_selector_pair_distances(&cut, &md.layout, &base).is_ok());
    }
}
