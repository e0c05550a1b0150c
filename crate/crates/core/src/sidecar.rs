//! Sidecar files describing the bookkeeping of a reduction output.
//!
//! One record per line:
//!
//! ```text
//! param <name> <value>
//! xset <i> <id>...
//! pair <r> <i> <u> <v>
//! hub <name> <id>
//! twin <gadgetId> <t1> <t2> <conn>
//! anchor p|q|pi <i> <h> <id>
//! mid <i> <j> <h> <id>
//! ```
//!
//! The last three kinds only appear for the metric dimension instance.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::GraphError;
use crate::graph::{HubKind, VertexId};
use crate::md::MdInstance;
use crate::mrs::{MrsInstance, MrsLayout};
use crate::names;

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Sidecar {
    pub params: BTreeMap<String, u64>,
    pub xsets: BTreeMap<usize, Vec<VertexId>>,
    /// `(r, i, u, v)`.
    pub pairs: Vec<(usize, usize, VertexId, VertexId)>,
    pub hubs: BTreeMap<String, VertexId>,
    /// `(gadgetId, t1, t2, conn)`.
    pub twins: Vec<(String, VertexId, VertexId, VertexId)>,
    /// `(role, i, h, id)`.
    pub anchors: Vec<(String, usize, usize, VertexId)>,
    /// `(i, j, h, id)`.
    pub mids: Vec<(usize, usize, usize, VertexId)>,
}

fn write_layout(out: &mut String, lay: &MrsLayout) {
    let _ = writeln!(out, "param n {}", lay.n);
    let _ = writeln!(out, "param m {}", lay.m);
    let _ = writeln!(out, "param M {}", lay.big_m);
    for (k, xs) in lay.x_sets.iter().enumerate() {
        let ids: Vec<String> = xs.iter().map(|v| v.to_string()).collect();
        let _ = writeln!(out, "xset {} {}", k + 1, ids.join(" "));
    }
    for p in &lay.pairs {
        let _ = writeln!(out, "pair {} {} {} {}", p.r, p.i, p.u, p.v);
    }
    for r in 1..=3 {
        for kind in HubKind::ALL {
            let _ = writeln!(out, "hub {} {}", names::hub(kind, r), lay.hub(kind, r));
        }
    }
}

pub fn write_mrs_sidecar(mrs: &MrsInstance) -> String {
    let mut out = String::new();
    write_layout(&mut out, &mrs.layout);
    out
}

pub fn write_md_sidecar(md: &MdInstance) -> String {
    let mut out = String::new();
    write_layout(&mut out, &md.layout);
    let _ = writeln!(out, "param k {}", md.k);
    for gd in &md.gadgets {
        let _ = writeln!(
            out,
            "twin {} {} {} {}",
            md.graph.gadget_name(gd.id),
            gd.twin1,
            gd.twin2,
            gd.connector
        );
    }
    for i in 1..=md.n() {
        for h in 1..=2 {
            let a = md.anchor(i, h);
            for (role, id) in [("p", a.p), ("q", a.q), ("pi", a.pi)] {
                let _ = writeln!(out, "anchor {role} {i} {h} {id}");
            }
        }
    }
    for i in 1..=md.n() {
        for j in 1..=md.m() {
            for h in 1..=2 {
                let _ = writeln!(out, "mid {i} {j} {h} {}", md.mid(i, j, h));
            }
        }
    }
    out
}

pub fn parse_sidecar(text: &str) -> Result<Sidecar, GraphError> {
    let mut sc = Sidecar::default();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let t = raw.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        let err = |msg: &str| GraphError::Parse {
            line,
            msg: msg.to_string(),
        };
        let fields: Vec<&str> = t.split_whitespace().collect();
        let num = |k: usize| -> Result<usize, GraphError> {
            fields
                .get(k)
                .ok_or_else(|| err("missing field"))?
                .parse()
                .map_err(|_| err("expected a nonnegative integer"))
        };
        let arity = |want: usize| {
            if fields.len() == want {
                Ok(())
            } else {
                Err(err("wrong number of fields"))
            }
        };
        match fields[0] {
            "param" => {
                arity(3)?;
                sc.params.insert(fields[1].to_string(), num(2)? as u64);
            }
            "xset" => {
                let ids = (2..fields.len()).map(num).collect::<Result<_, _>>()?;
                sc.xsets.insert(num(1)?, ids);
            }
            "pair" => {
                arity(5)?;
                sc.pairs.push((num(1)?, num(2)?, num(3)?, num(4)?));
            }
            "hub" => {
                arity(3)?;
                sc.hubs.insert(fields[1].to_string(), num(2)?);
            }
            "twin" => {
                arity(5)?;
                sc.twins.push((fields[1].to_string(), num(2)?, num(3)?, num(4)?));
            }
            "anchor" => {
                arity(5)?;
                if !matches!(fields[1], "p" | "q" | "pi") {
                    return Err(err("anchor role must be p, q or pi"));
                }
                sc.anchors.push((fields[1].to_string(), num(2)?, num(3)?, num(4)?));
            }
            "mid" => {
                arity(5)?;
                sc.mids.push((num(1)?, num(2)?, num(3)?, num(4)?));
            }
            other => return Err(err(&format!("unknown record {other}"))),
        }
    }
    Ok(sc)
}
