//! 3DM to Multicolored Resolving Set.
//!
//! For `M = 40(n+1)` every selector `s_i^j` with tuple `(x, y, z)` is joined
//! to the hubs of group `r` by paths of length `M/2 + 10t`, `M/2 + 5t + 1` and
//! `M/2 - 10t` (`t` the tuple's `r`-th coordinate), and every pair vertex
//! `u_r^p` (resp. `v_r^p`) by paths of length `M/2 - 10p`, `M/2 - 5p - 1`
//! (resp. `- 2`) and `M/2 + 10p`. A selector then resolves `{u_r^x, v_r^x}`
//! exactly when its tuple contains `(r, x)`.

use rayon::prelude::*;

use crate::error::ReductionError;
use crate::graph::{bfs_distances, bfs_many, GraphBuilder, HubKind, LabeledGraph, VertexId, VertexLabel};
use crate::names;
use crate::report::Report;
use crate::tdm::ThreeDMInstance;

/// Upper bound on `m^n` for [`solve_mrs`].
pub const MRS_SELECTION_GUARD: u64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PairRef {
    pub r: usize,
    pub i: usize,
    pub u: VertexId,
    pub v: VertexId,
}

/// Vertex bookkeeping of the MRS construction. Ids stay valid in any graph
/// that extends the construction (the metric dimension instance does).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MrsLayout {
    pub n: usize,
    pub m: usize,
    pub big_m: u32,
    /// `x_sets[i-1][j-1] = s_i^j`.
    pub x_sets: Vec<Vec<VertexId>>,
    /// Ordered by `r`, then `i`.
    pub pairs: Vec<PairRef>,
    /// `hubs[kind][r-1]`.
    pub hubs: [[VertexId; 3]; 3],
}

impl MrsLayout {
    pub fn selector(&self, i: usize, j: usize) -> VertexId {
        self.x_sets[i - 1][j - 1]
    }

    pub fn pair(&self, r: usize, i: usize) -> PairRef {
        self.pairs[(r - 1) * self.n + (i - 1)]
    }

    pub fn hub(&self, kind: HubKind, r: usize) -> VertexId {
        self.hubs[kind as usize][r - 1]
    }

    pub fn hub_vertices(&self) -> Vec<VertexId> {
        self.hubs.iter().flatten().copied().collect()
    }

    pub fn selectors(&self) -> impl Iterator<Item = (usize, usize, VertexId)> + '_ {
        self.x_sets
            .iter()
            .enumerate()
            .flat_map(|(i, row)| row.iter().enumerate().map(move |(j, &s)| (i + 1, j + 1, s)))
    }
}

/// Length of `P(s_i^j, t_r)` when the tuple's `r`-th coordinate is `coord`.
pub fn selector_path_len(big_m: u32, kind: HubKind, coord: usize) -> u32 {
    let (half, c) = (big_m / 2, coord as u32);
    match kind {
        HubKind::A => half + 10 * c,
        HubKind::B => half + 5 * c + 1,
        HubKind::C => half - 10 * c,
    }
}

/// Length of `P(u_r^p, t_r)` (or `P(v_r^p, t_r)` when `is_v`).
pub fn pair_path_len(big_m: u32, kind: HubKind, p: usize, is_v: bool) -> u32 {
    let (half, p) = (big_m / 2, p as u32);
    match kind {
        HubKind::A => half - 10 * p,
        HubKind::B if is_v => half - 5 * p - 2,
        HubKind::B => half - 5 * p - 1,
        HubKind::C => half + 10 * p,
    }
}

/// Adds the MRS construction to `b` and returns its bookkeeping.
pub(crate) fn build_into(b: &mut GraphBuilder, inst: &ThreeDMInstance) -> Result<MrsLayout, ReductionError> {
    let (n, m) = (inst.n, inst.m());
    if n == 0 || m == 0 {
        return Err(ReductionError::EmptyInstance);
    }
    let big_m = 40 * (n as u32 + 1);
    let mut x_sets = vec![Vec::with_capacity(m); n];
    for (i, row) in x_sets.iter_mut().enumerate() {
        for j in 1..=m {
            row.push(b.add_vertex(VertexLabel::Selector {
                i: i as u32 + 1,
                j: j as u32,
            })?);
        }
    }
    let mut hubs = [[0; 3]; 3];
    for r in 1..=3u8 {
        for kind in HubKind::ALL {
            hubs[kind as usize][r as usize - 1] = b.add_vertex(VertexLabel::Hub { kind, r })?;
        }
    }
    let mut pairs = Vec::with_capacity(3 * n);
    for r in 1..=3u8 {
        for i in 1..=n as u32 {
            let u = b.add_vertex(VertexLabel::PairU { r, i })?;
            let v = b.add_vertex(VertexLabel::PairV { r, i })?;
            pairs.push(PairRef {
                r: r as usize,
                i: i as usize,
                u,
                v,
            });
        }
    }
    for i in 1..=n {
        for j in 1..=m {
            let s = x_sets[i - 1][j - 1];
            let tuple = inst.tuple(j);
            for r in 1..=3 {
                for kind in HubKind::ALL {
                    b.add_path(
                        s,
                        hubs[kind as usize][r - 1],
                        selector_path_len(big_m, kind, tuple[r - 1]),
                        names::selector_path(i, j, kind, r),
                    )?;
                }
            }
        }
    }
    for pair in &pairs {
        for (is_v, end) in [(false, pair.u), (true, pair.v)] {
            for kind in HubKind::ALL {
                b.add_path(
                    end,
                    hubs[kind as usize][pair.r - 1],
                    pair_path_len(big_m, kind, pair.i, is_v),
                    names::pair_path(is_v, pair.r, pair.i, kind),
                )?;
            }
        }
    }
    Ok(MrsLayout {
        n,
        m,
        big_m,
        x_sets,
        pairs,
        hubs,
    })
}

#[derive(Debug, Clone)]
pub struct MrsInstance {
    pub graph: LabeledGraph,
    pub layout: MrsLayout,
    pub source: ThreeDMInstance,
}

impl MrsInstance {
    pub fn n(&self) -> usize {
        self.layout.n
    }

    pub fn m(&self) -> usize {
        self.layout.m
    }
}

/// Builds `G` and self-checks every constructed distance identity.
pub fn build_mrs(inst: &ThreeDMInstance) -> Result<MrsInstance, ReductionError> {
    let mut b = GraphBuilder::new();
    let layout = build_into(&mut b, inst)?;
    let mrs = MrsInstance {
        graph: b.freeze(),
        layout,
        source: inst.clone(),
    };
    let report = verify_distance_identities(&mrs);
    if let Some(first) = report.violations.first() {
        return Err(ReductionError::Integrity(first.clone()));
    }
    Ok(mrs)
}

/// Every selector-to-hub and pair-to-hub distance equals its direct path length.
pub fn verify_distance_identities(mrs: &MrsInstance) -> Report {
    let (g, lay) = (&mrs.graph, &mrs.layout);
    let mut report = Report::new("distance-identities");
    let selectors: Vec<_> = lay.selectors().collect();
    let per_selector: Vec<Report> = selectors
        .par_iter()
        .map(|&(i, j, s)| {
            let mut rep = Report::new("");
            let d = bfs_distances(g, s);
            let tuple = mrs.source.tuple(j);
            for r in 1..=3 {
                for kind in HubKind::ALL {
                    let want = selector_path_len(lay.big_m, kind, tuple[r - 1]);
                    let got = d.get(lay.hub(kind, r));
                    rep.check(got == Some(want), || {
                        format!("dist(s[{i},{j}],{}) = {got:?}, expected {want}", names::hub(kind, r))
                    });
                }
            }
            rep
        })
        .collect();
    let ends: Vec<(PairRef, bool)> = lay.pairs.iter().flat_map(|&p| [(p, false), (p, true)]).collect();
    let per_pair: Vec<Report> = ends
        .par_iter()
        .map(|&(pair, is_v)| {
            let mut rep = Report::new("");
            let d = bfs_distances(g, if is_v { pair.v } else { pair.u });
            for kind in HubKind::ALL {
                let want = pair_path_len(lay.big_m, kind, pair.i, is_v);
                let got = d.get(lay.hub(kind, pair.r));
                rep.check(got == Some(want), || {
                    format!(
                        "dist({}[{},{}],{}) = {got:?}, expected {want}",
                        if is_v { 'v' } else { 'u' },
                        pair.r,
                        pair.i,
                        names::hub(kind, pair.r)
                    )
                });
            }
            rep
        })
        .collect();
    for r in per_selector.into_iter().chain(per_pair) {
        report.merge(r);
    }
    report
}

/// `s_i^j` resolves `{u_r^x, v_r^x}` iff `(r, x)` is in tuple `j`, for all
/// `i, j, r, x`.
pub fn verify_lemma_resolve(mrs: &MrsInstance, inst: &ThreeDMInstance) -> Report {
    resolution_report(&mrs.graph, &mrs.layout, inst, "selector-pair-resolution")
}

/// Same check on any graph carrying the MRS layout (used on the extended graph too).
pub(crate) fn resolution_report(
    g: &LabeledGraph,
    lay: &MrsLayout,
    inst: &ThreeDMInstance,
    name: &str,
) -> Report {
    let selectors: Vec<_> = lay.selectors().collect();
    let parts: Vec<Report> = selectors
        .par_iter()
        .map(|&(i, j, s)| {
            let mut rep = Report::new("");
            let d = bfs_distances(g, s);
            for pair in &lay.pairs {
                let resolved = d.get(pair.u) != d.get(pair.v);
                let expected = inst.contains(j, pair.r, pair.i);
                rep.check(resolved == expected, || {
                    format!(
                        "s[{i},{j}] {} {{u[{r},{x}],v[{r},{x}]}} (dist {:?} vs {:?}) but (r,x) {} tuple {j}",
                        if resolved { "resolves" } else { "does not resolve" },
                        d.get(pair.u),
                        d.get(pair.v),
                        if expected { "is in" } else { "is not in" },
                        r = pair.r,
                        x = pair.i,
                    )
                });
            }
            rep
        })
        .collect();
    let mut report = Report::new(name);
    for p in parts {
        report.merge(p);
    }
    report
}

/// Why a candidate set fails the multicolored resolving condition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MrsWitness {
    /// `|S ∩ X_i|` is not 1.
    ClassCount { i: usize, count: usize },
    /// `S` holds vertices outside every color class.
    Extra { vertex: VertexId },
    /// No member of `S` resolves `{u_r^i, v_r^i}`.
    UnresolvedPair { r: usize, i: usize },
}

pub fn check_mrs_solution(mrs: &MrsInstance, set: &[VertexId]) -> Result<(), MrsWitness> {
    let lay = &mrs.layout;
    for (idx, class) in lay.x_sets.iter().enumerate() {
        let count = set.iter().filter(|v| class.contains(v)).count();
        if count != 1 {
            return Err(MrsWitness::ClassCount { i: idx + 1, count });
        }
    }
    if let Some(&vertex) = set.iter().find(|v| !lay.x_sets.iter().any(|c| c.contains(v))) {
        return Err(MrsWitness::Extra { vertex });
    }
    let dists = bfs_many(&mrs.graph, set);
    for pair in &lay.pairs {
        if !dists.iter().any(|d| d.get(pair.u) != d.get(pair.v)) {
            return Err(MrsWitness::UnresolvedPair { r: pair.r, i: pair.i });
        }
    }
    Ok(())
}

/// Exhaustive search over the `m^n` one-per-class selections. Returns the
/// chosen selectors in class order.
pub fn solve_mrs(mrs: &MrsInstance) -> Result<Option<Vec<VertexId>>, ReductionError> {
    let (n, m) = (mrs.n(), mrs.m());
    let space = (m as u64).checked_pow(n as u32).unwrap_or(u64::MAX);
    if space > MRS_SELECTION_GUARD {
        return Err(ReductionError::Capacity {
            what: "m^n selections",
            got: space,
            max: MRS_SELECTION_GUARD,
        });
    }
    let pairs = &mrs.layout.pairs;
    if pairs.len() > 128 {
        return Err(ReductionError::Capacity {
            what: "pair count",
            got: pairs.len() as u64,
            max: 128,
        });
    }
    let full: u128 = if pairs.len() == 128 { u128::MAX } else { (1u128 << pairs.len()) - 1 };
    // masks[i][j]: pairs resolved by s_{i+1}^{j+1}
    let selectors: Vec<_> = mrs.layout.selectors().collect();
    let flat: Vec<u128> = selectors
        .par_iter()
        .map(|&(_, _, s)| {
            let d = bfs_distances(&mrs.graph, s);
            pairs
                .iter()
                .enumerate()
                .filter(|(_, p)| d.get(p.u) != d.get(p.v))
                .fold(0u128, |acc, (k, _)| acc | 1 << k)
        })
        .collect();
    let masks: Vec<&[u128]> = flat.chunks(m).collect();
    let mut pick = vec![0usize; n];
    loop {
        let covered = pick.iter().enumerate().fold(0u128, |acc, (i, &j)| acc | masks[i][j]);
        if covered == full {
            return Ok(Some(pick.iter().enumerate().map(|(i, &j)| mrs.layout.x_sets[i][j]).collect()));
        }
        // odometer increment
        let mut pos = 0;
        loop {
            if pos == n {
                return Ok(None);
            }
            pick[pos] += 1;
            if pick[pos] < m {
                break;
            }
            pick[pos] = 0;
            pos += 1;
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FvsReport {
    /// Connected components of `G - W`.
    pub components: usize,
}

/// Confirms that `G` minus the nine hubs is a forest; otherwise returns a cycle.
pub fn verify_fvs(mrs: &MrsInstance) -> Result<FvsReport, Vec<VertexId>> {
    forest_check(&mrs.graph, &mrs.layout.hub_vertices())
}

/// Forest test of `g - removed` by union-find; the witness is a vertex cycle.
pub fn forest_check(g: &LabeledGraph, removed: &[VertexId]) -> Result<FvsReport, Vec<VertexId>> {
    let n = g.vertex_count();
    let mut gone = vec![false; n];
    for &v in removed {
        gone[v] = true;
    }
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut forest_edges = 0usize;
    for &(u, w) in g.edges() {
        if gone[u] || gone[w] {
            continue;
        }
        let (ru, rw) = (find(&mut parent, u), find(&mut parent, w));
        if ru == rw {
            return Err(cycle_through(g, &gone, u, w));
        }
        parent[ru] = rw;
        forest_edges += 1;
    }
    let kept = gone.iter().filter(|&&x| !x).count();
    Ok(FvsReport {
        components: kept - forest_edges,
    })
}

/// A cycle containing edge `{u, w}` in `g - gone`: a shortest `u`-`w` path avoiding that edge.
fn cycle_through(g: &LabeledGraph, gone: &[bool], u: VertexId, w: VertexId) -> Vec<VertexId> {
    let mut prev = vec![usize::MAX; g.vertex_count()];
    let mut queue = std::collections::VecDeque::from([u]);
    prev[u] = u;
    while let Some(x) = queue.pop_front() {
        if x == w {
            break;
        }
        for &y in g.neighbors(x) {
            if gone[y] || prev[y] != usize::MAX || (x == u && y == w) {
                continue;
            }
            prev[y] = x;
            queue.push_back(y);
        }
    }
    let mut cycle = vec![w];
    let mut x = w;
    while x != u {
        x = prev[x];
        cycle.push(x);
    }
    cycle
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inst(n: usize, tuples: &[[usize; 3]]) -> ThreeDMInstance {
        ThreeDMInstance::new(n, tuples.to_vec()).unwrap()
    }

    fn label(mrs: &MrsInstance, l: VertexLabel) -> VertexId {
        mrs.graph.vertex(&l).unwrap()
    }

    #[test]
    fn smallest_instance_distances() {
        let mrs = build_mrs(&inst(1, &[[1, 1, 1]])).unwrap();
        assert_eq!(mrs.layout.big_m, 80);
        let s = mrs.layout.selector(1, 1);
        let d = bfs_distances(&mrs.graph, s);
        let a1 = label(&mrs, VertexLabel::Hub { kind: HubKind::A, r: 1 });
        let c1 = label(&mrs, VertexLabel::Hub { kind: HubKind::C, r: 1 });
        assert_eq!(d.get(a1), Some(50));
        assert_eq!(d.get(c1), Some(30));
        let pair = mrs.layout.pair(1, 1);
        assert_eq!(d.get(pair.u), Some(80));
        assert_eq!(d.get(pair.v), Some(79));
        assert!(verify_distance_identities(&mrs).is_ok());
    }

    #[test]
    fn vertex_count_matches_closed_form() {
        // nm selectors, 9 hubs, 6n pair vertices, plus (len - 1) per path
        let i = inst(1, &[[1, 1, 1]]);
        let mrs = build_mrs(&i).unwrap();
        let big_m = 80i64;
        let sel: i64 = [1i64, 1, 1].iter().map(|&t| 3 * big_m / 2 + 5 * t - 2).sum();
        let u: i64 = 3 * (3 * big_m / 2 - 5 - 4);
        let v: i64 = 3 * (3 * big_m / 2 - 5 - 5);
        assert_eq!(mrs.graph.vertex_count() as i64, 1 + 9 + 6 + sel + u + v);
        assert_eq!(mrs.graph.vertex_count(), 1048);
    }

    #[test]
    fn lemma_resolution_small_cases() {
        let i = inst(1, &[[1, 1, 1]]);
        let mrs = build_mrs(&i).unwrap();
        let rep = verify_lemma_resolve(&mrs, &i);
        assert!(rep.is_ok(), "{:?}", rep.violations);
        assert_eq!(rep.checks, 3);

        let i = inst(2, &[[1, 1, 1]]);
        let mrs = build_mrs(&i).unwrap();
        assert!(verify_lemma_resolve(&mrs, &i).is_ok());
        let pair = mrs.layout.pair(1, 2);
        for sel in [mrs.layout.selector(1, 1), mrs.layout.selector(2, 1)] {
            let d = bfs_distances(&mrs.graph, sel);
            // both at M - 10|p_r - x| = 120 - 10
            assert_eq!(d.get(pair.u), Some(110));
            assert_eq!(d.get(pair.v), Some(110));
        }
    }

    #[test]
    fn solution_checker_witnesses() {
        let i = inst(1, &[[1, 1, 1], [1, 1, 1]]);
        let mrs = build_mrs(&i).unwrap();
        assert_eq!(check_mrs_solution(&mrs, &[mrs.layout.selector(1, 2)]), Ok(()));
        assert_eq!(
            check_mrs_solution(&mrs, &[]),
            Err(MrsWitness::ClassCount { i: 1, count: 0 })
        );
        assert_eq!(
            check_mrs_solution(&mrs, &[mrs.layout.selector(1, 1), mrs.layout.selector(1, 2)]),
            Err(MrsWitness::ClassCount { i: 1, count: 2 })
        );
        let hub = mrs.layout.hub(HubKind::A, 1);
        assert_eq!(
            check_mrs_solution(&mrs, &[mrs.layout.selector(1, 1), hub]),
            Err(MrsWitness::Extra { vertex: hub })
        );
        let i2 = inst(2, &[[1, 1, 1], [1, 2, 2]]);
        let mrs2 = build_mrs(&i2).unwrap();
        let sel = [mrs2.layout.selector(1, 1), mrs2.layout.selector(2, 2)];
        assert!(matches!(check_mrs_solution(&mrs2, &sel), Err(MrsWitness::UnresolvedPair { .. })));
    }

    #[test]
    fn solve_mrs_matches_3dm() {
        let yes = inst(2, &[[1, 2, 1], [2, 1, 2], [1, 1, 1]]);
        let mrs = build_mrs(&yes).unwrap();
        let sel = solve_mrs(&mrs).unwrap().expect("yes instance");
        assert_eq!(check_mrs_solution(&mrs, &sel), Ok(()));

        let no = inst(2, &[[1, 1, 1], [1, 2, 2]]);
        assert_eq!(solve_mrs(&build_mrs(&no).unwrap()).unwrap(), None);
    }

    #[test]
    fn solve_mrs_guard() {
        let big = ThreeDMInstance::generate(7, 8, 1, true).unwrap();
        let mrs = build_mrs(&big).unwrap();
        assert!(matches!(solve_mrs(&mrs), Err(ReductionError::Capacity { .. })));
    }

    #[test]
    fn hubs_form_a_feedback_vertex_set() {
        let i = inst(2, &[[1, 2, 1], [2, 1, 2], [1, 1, 1]]);
        let mrs = build_mrs(&i).unwrap();
        let rep = verify_fvs(&mrs).unwrap();
        // every selector and pair vertex is a star centre of its own tree
        assert_eq!(rep.components, 2 * 3 + 6 * 2);

        let p = mrs.graph.path_by_name("P(s[1,1],a[1])").unwrap();
        let q = mrs.graph.path_by_name("P(s[1,1],b[1])").unwrap();
        let bad = mrs.graph.with_edge_added(p.internals[3], q.internals[5]).unwrap();
        let broken = MrsInstance { graph: bad, ..mrs };
        let cycle = verify_fvs(&broken).unwrap_err();
        assert!(cycle.len() >= 3);
        for w in cycle.windows(2) {
            assert!(broken.graph.has_edge(w[0], w[1]));
        }
        assert!(broken.graph.has_edge(cycle[0], *cycle.last().unwrap()));
    }

    #[test]
    fn rejects_empty_instances() {
        let empty = ThreeDMInstance { n: 0, tuples: vec![[1, 1, 1]] };
        assert!(matches!(build_mrs(&empty), Err(ReductionError::EmptyInstance)));
    }
}
