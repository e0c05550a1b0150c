//! Two-phase search strategy for `G'`.
//!
//! The nine hubs stay guarded throughout; removing them separates `G'` into
//! one block per class `i` and one block per pair `(r, i)`.
//!
//! Phase one, round `i`: guard `p, q, pi` of both sides. Sweep the six side
//! paths of each `pi`. Then for each `j` guard `s_i^j` and the two middle
//! vertices of its cross paths. Every one of the 11 paths leaving `s_i^j`
//! starts at a branch vertex `w` where two forced-set paths attach; `w` is held
//! while the three legs of that spider are swept toward their guarded ends.
//! The two paths into `q` and the middle gadgets are cleared last.
//!
//! Phase two, per pair `(r, i)`: guard `u, v` and the two fresh connectors,
//! clear their twins, then sweep the six paths into the hubs.
//!
//! A sweep holds the current vertex, places the next, removes the current,
//! and clears any gadget at the new vertex by placing and removing its twins.

use std::collections::HashMap;

use crate::graph::{HubKind, VertexId};
use crate::md::{GadgetKind, MdInstance};
use crate::names;

use super::{Move, NodeSearchStrategy};

/// Searcher count the strategy must stay within.
pub const SEARCHER_BUDGET: usize = 25;

struct Planner {
    moves: Vec<Move>,
    stages: Vec<(usize, String)>,
    occupied: Vec<bool>,
    /// Twins hanging off each connector vertex, pair gadgets excluded.
    twins_at: HashMap<VertexId, Vec<(VertexId, VertexId)>>,
}

impl Planner {
    fn stage(&mut self, name: String) {
        self.stages.push((self.moves.len(), name));
    }

    fn place(&mut self, v: VertexId) {
        debug_assert!(!self.occupied[v]);
        self.occupied[v] = true;
        self.moves.push(Move::Place(v));
    }

    fn remove(&mut self, v: VertexId) {
        debug_assert!(self.occupied[v]);
        self.occupied[v] = false;
        self.moves.push(Move::Remove(v));
    }

    fn clear_twins(&mut self, t1: VertexId, t2: VertexId) {
        self.place(t1);
        self.place(t2);
        self.remove(t1);
        self.remove(t2);
    }

    fn clear_gadgets_at(&mut self, v: VertexId) {
        if let Some(list) = self.twins_at.get(&v).cloned() {
            for (t1, t2) in list {
                self.clear_twins(t1, t2);
            }
        }
    }

    /// Walks `route` from its occupied first vertex. Vertices that are already
    /// occupied are guards and are passed through untouched.
    fn sweep(&mut self, route: &[VertexId]) {
        debug_assert!(self.occupied[route[0]]);
        let mut held: Option<VertexId> = None;
        for &x in &route[1..] {
            if self.occupied[x] {
                if let Some(h) = held.take() {
                    self.remove(h);
                }
                continue;
            }
            self.place(x);
            if let Some(h) = held.replace(x) {
                self.remove(h);
            }
            self.clear_gadgets_at(x);
        }
        if let Some(h) = held {
            self.remove(h);
        }
    }
}

fn path_vertices(md: &MdInstance, name: &str) -> Vec<VertexId> {
    md.graph
        .path_by_name(name)
        .unwrap_or_else(|| panic!("path {name} missing from a built instance"))
        .vertices()
}

fn reversed(mut v: Vec<VertexId>) -> Vec<VertexId> {
    v.reverse();
    v
}

/// Builds the strategy. It is smooth by construction; whether it is monotone
/// and clears everything within [`SEARCHER_BUDGET`] is for
/// [`super::verify_strategy`] to decide.
pub fn synth_strategy(md: &MdInstance) -> NodeSearchStrategy {
    let g = &md.graph;
    let (n, m) = (md.n(), md.m());
    let mut twins_at: HashMap<VertexId, Vec<(VertexId, VertexId)>> = HashMap::new();
    let mut pair_twins: HashMap<VertexId, (VertexId, VertexId)> = HashMap::new();
    for gd in &md.gadgets {
        if let GadgetKind::Pair { .. } = gd.kind {
            pair_twins.insert(gd.connector, (gd.twin1, gd.twin2));
        } else {
            twins_at.entry(gd.connector).or_default().push((gd.twin1, gd.twin2));
        }
    }
    let mut p = Planner {
        moves: Vec::new(),
        stages: Vec::new(),
        occupied: vec![false; g.vertex_count()],
        twins_at,
    };

    p.stage("guard hubs".into());
    for h in md.layout.hub_vertices() {
        p.place(h);
    }

    for i in 1..=n {
        p.stage(format!("round i={i}: anchors and side paths"));
        let anchors = [md.anchor(i, 1), md.anchor(i, 2)];
        for a in anchors {
            p.place(a.pi);
            p.place(a.p);
            p.place(a.q);
        }
        for h in 1..=2 {
            for r in 1..=3 {
                for hub in [HubKind::A, HubKind::C] {
                    p.sweep(&path_vertices(md, &names::side_path(i, h, hub, r)));
                }
            }
        }
        for j in 1..=m {
            p.stage(format!("round i={i}: selector j={j}"));
            let s = md.layout.selector(i, j);
            let mids = [md.mid(i, j, 1), md.mid(i, j, 2)];
            p.place(s);
            p.place(mids[0]);
            p.place(mids[1]);
            let mut spiders: Vec<(Vec<VertexId>, [Vec<VertexId>; 2])> = Vec::with_capacity(11);
            for r in 1..=3 {
                for hub in HubKind::ALL {
                    let own = path_vertices(md, &names::selector_path(i, j, hub, r));
                    let legs = [1, 2].map(|h| reversed(path_vertices(md, &names::branch_path(h, i, j, hub, r))));
                    spiders.push((own, legs));
                }
            }
            for h in 1..=2 {
                // P(s, p_i^h) carries P^{3-h}(i,j,p_i^h) from the other side
                let own = path_vertices(md, &names::anchor_path(i, j, h));
                let cross = reversed(path_vertices(md, &names::cross_path(3 - h, i, j)));
                spiders.push((own, [cross, Vec::new()]));
            }
            for (own, legs) in spiders {
                let w = own[1];
                p.place(w);
                p.clear_gadgets_at(w);
                p.sweep(&own[1..]);
                for leg in legs.iter().filter(|l| !l.is_empty()) {
                    debug_assert_eq!(leg[0], w);
                    p.sweep(leg);
                }
                p.remove(w);
            }
            for h in 1..=2 {
                p.sweep(&path_vertices(md, &names::link_path(i, j, h)));
            }
            for mid in mids {
                p.clear_gadgets_at(mid);
            }
            p.remove(mids[1]);
            p.remove(mids[0]);
            p.remove(s);
        }
        for a in anchors.iter().rev() {
            p.remove(a.q);
            p.remove(a.p);
            p.remove(a.pi);
        }
    }

    for pair in &md.layout.pairs {
        p.stage(format!("pair r={} i={}", pair.r, pair.i));
        let conns: Vec<VertexId> = (1..=2)
            .map(|t| {
                md.gadget(&names::gadget_pair(t, pair.r, pair.i))
                    .expect("pair gadgets exist")
                    .connector
            })
            .collect();
        p.place(pair.u);
        p.place(pair.v);
        for &c in &conns {
            p.place(c);
            let (t1, t2) = pair_twins[&c];
            p.clear_twins(t1, t2);
        }
        for is_v in [false, true] {
            for hub in HubKind::ALL {
                p.sweep(&path_vertices(md, &names::pair_path(is_v, pair.r, pair.i, hub)));
            }
        }
        for &c in conns.iter().rev() {
            p.remove(c);
        }
        p.remove(pair.v);
        p.remove(pair.u);
    }

    NodeSearchStrategy {
        moves: p.moves,
        stages: p.stages,
    }
}
