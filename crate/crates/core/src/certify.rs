//! YES and NO certificates for the metric dimension instance, plus the
//! exhaustive checks behind them.
//!
//! A YES certificate is an explicit resolving set of size `k` checked by
//! [`is_resolving_set`]. A NO certificate is a list of machine-checked facts
//! about `G'` (twin exclusivity, the `{p, q}` classification, and which
//! vertices resolve the pairs of `P`) together with the fixed counting argument
//! that turns them into "no resolving set of size `k`" whenever the 3DM
//! instance has no perfect matching.

use std::fmt;

use rayon::prelude::*;

use crate::error::ReductionError;
use crate::graph::{bfs_many, is_resolving_set, resolver_set, DistanceVector, LabeledGraph, ResolveCheck, VertexId, VertexLabel};
use crate::md::{self, MdInstance};
use crate::mrs;
use crate::report::Report;
use crate::tdm::ThreeDMInstance;

/// Guard for [`equivalence_check`].
pub const EQUIVALENCE_MAX_N: usize = 3;
pub const EQUIVALENCE_MAX_M: usize = 6;

/// Which vertex of each gadget goes into `S'`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TwinChoice {
    #[default]
    First,
    Second,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VertexCategory {
    InX(usize),
    Gadget,
    Other,
}

/// Per vertex: which `{p_i^h, q_i^h}` pairs it resolves (bit `2(i-1) + h-1`)
/// and its category.
#[derive(Debug, Clone)]
pub struct PqClassification {
    pub resolved: Vec<u64>,
    pub category: Vec<VertexCategory>,
}

impl PqClassification {
    pub fn resolves(&self, v: VertexId, i: usize, h: usize) -> bool {
        self.resolved[v] >> pq_bit(i, h) & 1 == 1
    }

    pub fn count(&self, v: VertexId) -> u32 {
        self.resolved[v].count_ones()
    }
}

fn pq_bit(i: usize, h: usize) -> usize {
    2 * (i - 1) + (h - 1)
}

/// Region of `G'` a vertex belongs to, for diagnosing a failed YES check.
/// Path internals are grouped by the family of their path; path endpoints
/// keep their own role.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Region {
    /// `P(s_i^j, p_i^h)`.
    U,
    /// `P^h(i,j,*)`.
    Pi,
    /// `P(pi_i^h, a_r)`, `P(pi_i^h, c_r)`.
    S,
    /// Paths into `q_i^h`.
    L,
    /// `P(s_i^j, a_r/b_r/c_r)`.
    H,
    /// `P(u_r^i/v_r^i, a_r/b_r/c_r)`.
    R,
    Forced,
    Selector,
    Hub,
    Anchor,
    PairVertex,
    Other,
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Region::U => "U",
            Region::Pi => "Pi",
            Region::S => "S",
            Region::L => "L",
            Region::H => "H",
            Region::R => "R",
            Region::Forced => "Forced",
            Region::Selector => "Selector",
            Region::Hub => "Hub",
            Region::Anchor => "Anchor",
            Region::PairVertex => "PairVertex",
            Region::Other => "Other",
        };
        f.write_str(s)
    }
}

pub fn region_of(g: &LabeledGraph, v: VertexId) -> Region {
    match g.label(v) {
        VertexLabel::Selector { .. } => Region::Selector,
        VertexLabel::Hub { .. } => Region::Hub,
        VertexLabel::PairU { .. } | VertexLabel::PairV { .. } => Region::PairVertex,
        VertexLabel::AnchorP { .. } | VertexLabel::AnchorQ { .. } | VertexLabel::AnchorPi { .. } => Region::Anchor,
        VertexLabel::Twin1(_) | VertexLabel::Twin2(_) | VertexLabel::Connector(_) => Region::Forced,
        VertexLabel::Plain(_) => Region::Other,
        VertexLabel::PathInternal { path, .. } => {
            let name = g.path(*path).name.as_str();
            if name.starts_with("P[") {
                Region::Pi
            } else if name.starts_with("P(pi[") {
                Region::S
            } else if name.starts_with("P(q[") {
                Region::L
            } else if name.starts_with("P(u[") || name.starts_with("P(v[") {
                Region::R
            } else if name.starts_with("P(s[") && name.contains(",p[") {
                Region::U
            } else if name.starts_with("P(s[") {
                Region::H
            } else {
                Region::Other
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessPair {
    pub x: VertexId,
    pub y: VertexId,
    pub x_label: String,
    pub y_label: String,
    pub regions: (Region, Region),
}

impl WitnessPair {
    fn new(g: &LabeledGraph, x: VertexId, y: VertexId) -> Self {
        Self {
            x,
            y,
            x_label: g.label_string(x),
            y_label: g.label_string(y),
            regions: (region_of(g, x), region_of(g, y)),
        }
    }
}

impl fmt::Display for WitnessPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} ({}) / {} ({}) in {}x{}",
            self.x_label, self.x, self.y_label, self.y, self.regions.0, self.regions.1
        )
    }
}

#[derive(Debug, Clone)]
pub struct YesCertificate {
    pub set: Vec<VertexId>,
    pub k: u64,
    pub cover: Vec<usize>,
    pub check: ResolveCheck,
    pub witness: Option<WitnessPair>,
}

impl YesCertificate {
    pub fn is_valid(&self) -> bool {
        self.set.len() as u64 == self.k && self.check.is_resolving()
    }
}

/// One machine-checked premise of a NO certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fact {
    pub name: String,
    pub holds: bool,
    pub checks: u64,
    pub witness: Vec<String>,
}

impl Fact {
    fn from_report(name: &str, rep: Report) -> Self {
        Self {
            name: name.to_string(),
            holds: rep.is_ok(),
            checks: rep.checks,
            witness: rep.violations,
        }
    }

    /// `fact <name> <pass|fail> [witness...]`.
    pub fn to_line(&self) -> String {
        let status = if self.holds { "pass" } else { "fail" };
        let mut s = format!("fact {} {}", self.name, status);
        if let Some(w) = self.witness.first() {
            s.push(' ');
            s.push_str(&w.replace('\n', " "));
        }
        s
    }
}

#[derive(Debug, Clone)]
pub struct NoCertificate {
    pub k: u64,
    pub facts: Vec<Fact>,
    /// Steps of the counting argument, instantiated with this instance's numbers.
    pub chain: Vec<String>,
}

#[derive(Debug, Clone)]
pub enum Certificate {
    Yes(YesCertificate),
    No(NoCertificate),
}

#[derive(Debug, Clone)]
pub enum Refutation {
    /// The 3DM oracle found a cover.
    OracleYes(Vec<usize>),
    FactFailed(Fact),
}

impl fmt::Display for Refutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Refutation::OracleYes(c) => write!(f, "instance has a perfect matching {c:?}"),
            Refutation::FactFailed(x) => write!(f, "{}", x.to_line()),
        }
    }
}

/// Distances from every `p_i^h` and `q_i^h`, ordered `(i, h, p|q)`.
fn pq_distances(md: &MdInstance) -> Vec<DistanceVector> {
    let mut sources = Vec::with_capacity(4 * md.n());
    for i in 1..=md.n() {
        for h in 1..=2 {
            let a = md.anchor(i, h);
            sources.push(a.p);
            sources.push(a.q);
        }
    }
    bfs_many(&md.graph, &sources)
}

pub fn pq_classification(md: &MdInstance) -> PqClassification {
    let g = &md.graph;
    let dist = pq_distances(md);
    let gadget = md.gadget_membership();
    let resolved = (0..g.vertex_count())
        .into_par_iter()
        .map(|v| {
            let mut bits = 0u64;
            for i in 1..=md.n() {
                for h in 1..=2 {
                    let b = pq_bit(i, h);
                    if dist[2 * b].get(v) != dist[2 * b + 1].get(v) {
                        bits |= 1 << b;
                    }
                }
            }
            bits
        })
        .collect();
    let category = (0..g.vertex_count())
        .map(|v| match md.selector_class(v) {
            Some(i) => VertexCategory::InX(i),
            None if gadget[v] => VertexCategory::Gadget,
            None => VertexCategory::Other,
        })
        .collect();
    PqClassification { resolved, category }
}

/// Selectors of `X_i` resolve exactly both pairs of class `i`; gadget vertices
/// resolve none; every other vertex resolves at most one.
pub fn verify_forced_set_lemma(md: &MdInstance) -> Report {
    let g = &md.graph;
    let cls = pq_classification(md);
    let mut rep = Report::new("forced-set");
    for v in 0..g.vertex_count() {
        match cls.category[v] {
            VertexCategory::InX(i) => {
                let own = 1u64 << pq_bit(i, 1) | 1u64 << pq_bit(i, 2);
                rep.check(cls.resolved[v] == own, || {
                    format!("{} resolves pq pairs {:#b}, expected {:#b}", g.label_string(v), cls.resolved[v], own)
                });
            }
            VertexCategory::Gadget => rep.check(cls.resolved[v] == 0, || {
                format!("gadget vertex {} resolves pq pairs {:#b}", g.label_string(v), cls.resolved[v])
            }),
            VertexCategory::Other => rep.check(cls.count(v) <= 1, || {
                format!("{} resolves {} pq pairs", g.label_string(v), cls.count(v))
            }),
        }
    }
    rep
}

/// Distances from every `u_r^i` and `v_r^i`, ordered as `layout.pairs`, `u` first.
fn pair_distances(md: &MdInstance) -> Vec<DistanceVector> {
    let sources: Vec<_> = md.layout.pairs.iter().flat_map(|p| [p.u, p.v]).collect();
    bfs_many(&md.graph, &sources)
}

/// No forced vertex (either twin of any gadget) resolves a pair of `P`.
pub fn verify_forced_vertex_lemma(md: &MdInstance) -> Report {
    let g = &md.graph;
    let dist = pair_distances(md);
    let mut rep = Report::new("forced-vertex");
    for gd in &md.gadgets {
        for t in [gd.twin1, gd.twin2] {
            for (k, p) in md.layout.pairs.iter().enumerate() {
                let (du, dv) = (dist[2 * k].get(t), dist[2 * k + 1].get(t));
                rep.check(du == dv, || {
                    format!(
                        "{} resolves u[{},{}]/v[{},{}] ({du:?} vs {dv:?})",
                        g.label_string(t),
                        p.r,
                        p.i,
                        p.r,
                        p.i
                    )
                });
            }
        }
    }
    rep
}

/// Fact A: only the twins themselves resolve a gadget's twin pair.
pub fn verify_twin_exclusivity(md: &MdInstance) -> Report {
    let g = &md.graph;
    let parts: Vec<Report> = md
        .gadgets
        .par_iter()
        .map(|gd| {
            let mut rep = Report::new("");
            let found = resolver_set(g, gd.twin1, gd.twin2);
            let mut want = vec![gd.twin1, gd.twin2];
            want.sort_unstable();
            rep.check(found.as_ref().is_ok_and(|f| *f == want), || {
                let extra: Vec<String> = found
                    .iter()
                    .flatten()
                    .filter(|v| !want.contains(v))
                    .take(3)
                    .map(|&v| g.label_string(v))
                    .collect();
                format!("twins of {} are also resolved by {extra:?}", g.gadget_name(gd.id))
            });
            rep
        })
        .collect();
    let mut rep = Report::new("twin-exclusivity");
    for p in parts {
        rep.merge(p);
    }
    rep
}

/// Fact C: for every pair of `P`, the resolving selectors are exactly those
/// whose tuple contains the pair's element, and no gadget vertex resolves it.
pub fn verify_pair_resolvers(md: &MdInstance) -> Report {
    let g = &md.graph;
    let dist = pair_distances(md);
    let gadget = md.gadget_membership();
    let mut rep = Report::new("pair-resolvers");
    for (k, p) in md.layout.pairs.iter().enumerate() {
        let (du, dv) = (&dist[2 * k], &dist[2 * k + 1]);
        for (i, j, s) in md.layout.selectors() {
            let want = md.source.contains(j, p.r, p.i);
            let got = du.get(s) != dv.get(s);
            rep.check(got == want, || {
                format!(
                    "s[{i},{j}] {} u[{r},{x}]/v[{r},{x}]",
                    if got { "resolves" } else { "does not resolve" },
                    r = p.r,
                    x = p.i
                )
            });
        }
        let bad = (0..g.vertex_count()).find(|&v| gadget[v] && du.get(v) != dv.get(v));
        rep.check(bad.is_none(), || {
            format!(
                "gadget vertex {} resolves u[{r},{x}]/v[{r},{x}]",
                g.label_string(bad.unwrap()),
                r = p.r,
                x = p.i
            )
        });
    }
    rep
}

/// Facts A, B and C. These are properties of `G'` alone.
pub fn verify_facts(md: &MdInstance) -> Vec<Fact> {
    let (a, (b, c)) = rayon::join(
        || verify_twin_exclusivity(md),
        || rayon::join(|| verify_forced_set_lemma(md), || verify_pair_resolvers(md)),
    );
    vec![
        Fact::from_report("A-twin-exclusivity", a),
        Fact::from_report("B-pq-classification", b),
        Fact::from_report("C-pair-resolvers", c),
    ]
}

/// `S'`: one twin per gadget and, for the cover tuple `j_h` containing `(1, h)`,
/// the selector `s_h^{j_h}`.
pub fn yes_set(md: &MdInstance, cover: &[usize], choice: TwinChoice) -> Result<Vec<VertexId>, ReductionError> {
    if !md.source.is_cover(cover) {
        return Err(ReductionError::InvalidCover(format!("{cover:?} is not a perfect matching")));
    }
    let mut set: Vec<VertexId> = md
        .gadgets
        .iter()
        .map(|g| match choice {
            TwinChoice::First => g.twin1,
            TwinChoice::Second => g.twin2,
        })
        .collect();
    for h in 1..=md.n() {
        let j = *cover
            .iter()
            .find(|&&j| md.source.tuple(j)[0] == h)
            .expect("a cover hits every first coordinate");
        set.push(md.layout.selector(h, j));
    }
    Ok(set)
}

pub fn certify_yes(md: &MdInstance, cover: &[usize]) -> Result<YesCertificate, ReductionError> {
    certify_yes_with(md, cover, TwinChoice::First)
}

pub fn certify_yes_with(md: &MdInstance, cover: &[usize], choice: TwinChoice) -> Result<YesCertificate, ReductionError> {
    let set = yes_set(md, cover, choice)?;
    Ok(check_yes_set(md, set, cover.to_vec()))
}

/// Runs the resolving-set check on an arbitrary candidate set.
pub fn check_yes_set(md: &MdInstance, set: Vec<VertexId>, cover: Vec<usize>) -> YesCertificate {
    let check = is_resolving_set(&md.graph, &set).unwrap_or(ResolveCheck::Unresolved { x: 0, y: 0 });
    let witness = match check {
        ResolveCheck::Unresolved { x, y } => Some(WitnessPair::new(&md.graph, x, y)),
        ResolveCheck::Resolving => None,
    };
    YesCertificate {
        set,
        k: md.k,
        cover,
        check,
        witness,
    }
}

fn counting_chain(md: &MdInstance) -> Vec<String> {
    let (n, m) = (md.n(), md.m());
    let gadgets = md::gadget_count(n, m);
    vec![
        format!("k = 34nm+19n = {}", md.k),
        format!("fact A: a resolving set contains a twin of each of the {gadgets} gadgets"),
        format!("remaining budget: {} - {gadgets} = {n} vertices", md.k),
        format!("fact B: gadget vertices resolve no pq pair; the {} pq pairs need vertices outside the gadgets", 2 * n),
        format!("fact B: only X_i covers 2 pq pairs, others cover at most 1, so {n} vertices cover {} pairs only with one vertex in each X_i", 2 * n),
        "fact C: gadget vertices resolve no pair of P; the chosen selectors resolve exactly the pairs their tuples contain".into(),
        "every pair of P resolved by n selectors, one per class, is a perfect matching".into(),
        "the 3DM oracle reports no perfect matching, so no resolving set of size k exists".into(),
    ]
}

pub fn certify_no(md: &MdInstance, inst: &ThreeDMInstance) -> Result<NoCertificate, Refutation> {
    if let Some(cover) = inst.solve() {
        return Err(Refutation::OracleYes(cover));
    }
    let facts = verify_facts(md);
    if let Some(f) = facts.iter().find(|f| !f.holds) {
        return Err(Refutation::FactFailed(f.clone()));
    }
    Ok(NoCertificate {
        k: md.k,
        facts,
        chain: counting_chain(md),
    })
}

#[derive(Debug, Clone)]
pub enum Verdict {
    Yes(YesCertificate),
    No(NoCertificate),
    /// The certificate matching the oracle's answer could not be produced.
    Failed { oracle_yes: bool, reason: String },
}

impl Verdict {
    pub fn is_ok(&self) -> bool {
        match self {
            Verdict::Yes(c) => c.is_valid(),
            Verdict::No(_) => true,
            Verdict::Failed { .. } => false,
        }
    }
}

/// Builds `G'` and produces the certificate matching the 3DM oracle's answer.
pub fn equivalence_check(inst: &ThreeDMInstance) -> Result<Verdict, ReductionError> {
    for (what, got, max) in [("n", inst.n, EQUIVALENCE_MAX_N), ("m", inst.m(), EQUIVALENCE_MAX_M)] {
        if got > max {
            return Err(ReductionError::Capacity {
                what,
                got: got as u64,
                max: max as u64,
            });
        }
    }
    let md = md::build_md(inst)?;
    Ok(match inst.solve() {
        Some(cover) => {
            let cert = certify_yes(&md, &cover)?;
            if cert.is_valid() {
                Verdict::Yes(cert)
            } else {
                let w = cert.witness.as_ref().map(|w| w.to_string()).unwrap_or_default();
                Verdict::Failed {
                    oracle_yes: true,
                    reason: format!("S' does not resolve {w}"),
                }
            }
        }
        None => match certify_no(&md, inst) {
            Ok(c) => Verdict::No(c),
            Err(r) => Verdict::Failed {
                oracle_yes: false,
                reason: r.to_string(),
            },
        },
    })
}

/// Selector/pair resolution on `G'` follows tuple membership. Same
/// check as on `G`, run on the extended graph.
pub fn verify_lemma1_on_md(md: &MdInstance) -> Report {
    mrs::resolution_report(&md.graph, &md.layout, &md.source, "lemma1-md")
}
