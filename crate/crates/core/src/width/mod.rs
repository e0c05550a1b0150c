//! Node searching and path decompositions.
//!
//! A node-search strategy places and removes searchers on vertices; an edge is
//! cleared while both of its endpoints are occupied, and a cleared edge is
//! recontaminated when a path of unoccupied vertices links it to a
//! contaminated edge. A monotone strategy that clears every edge with `s`
//! searchers yields a path decomposition of width `s - 1`.

mod search;
mod synth;

use std::fmt::Write as _;

pub use search::{reference_closure, verify_strategy, SearchOutcome, SearchState, TraceStep};
pub use synth::{synth_strategy, SEARCHER_BUDGET};

use crate::error::SearchError;
use crate::graph::{LabeledGraph, VertexId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Move {
    Place(VertexId),
    Remove(VertexId),
}

impl Move {
    pub fn vertex(self) -> VertexId {
        match self {
            Move::Place(v) | Move::Remove(v) => v,
        }
    }
}

/// Moves plus named stage markers `(index of the first move, name)`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct NodeSearchStrategy {
    pub moves: Vec<Move>,
    pub stages: Vec<(usize, String)>,
}

impl NodeSearchStrategy {
    pub fn new(moves: Vec<Move>) -> Self {
        Self {
            moves,
            stages: Vec::new(),
        }
    }

    /// `+ <id>` / `- <id>` per move; stage markers become `# stage <name>` lines.
    pub fn to_text(&self) -> String {
        let mut out = String::with_capacity(8 * self.moves.len());
        let mut stages = self.stages.iter().peekable();
        for (k, mv) in self.moves.iter().enumerate() {
            while let Some((_, name)) = stages.next_if(|(at, _)| *at == k) {
                let _ = writeln!(out, "# stage {name}");
            }
            let _ = match mv {
                Move::Place(v) => writeln!(out, "+ {v}"),
                Move::Remove(v) => writeln!(out, "- {v}"),
            };
        }
        for (_, name) in stages {
            let _ = writeln!(out, "# stage {name}");
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self, SearchError> {
        let mut s = Self::default();
        for (idx, raw) in text.lines().enumerate() {
            let t = raw.trim();
            if let Some(name) = t.strip_prefix("# stage ") {
                s.stages.push((s.moves.len(), name.to_string()));
                continue;
            }
            if t.is_empty() || t.starts_with('#') {
                continue;
            }
            let err = |msg: &str| SearchError::Parse {
                line: idx + 1,
                msg: msg.to_string(),
            };
            let (op, id) = t.split_once(char::is_whitespace).ok_or_else(|| err("expected `+ <id>` or `- <id>`"))?;
            let v: VertexId = id.trim().parse().map_err(|_| err("vertex id is not an integer"))?;
            s.moves.push(match op {
                "+" => Move::Place(v),
                "-" => Move::Remove(v),
                _ => return Err(err("move must start with + or -")),
            });
        }
        Ok(s)
    }

    /// First vertex placed twice, with the step of the second placement.
    pub fn first_repeat(&self) -> Option<(VertexId, usize)> {
        let mut seen = std::collections::HashSet::new();
        self.moves.iter().enumerate().find_map(|(k, mv)| match *mv {
            Move::Place(v) if !seen.insert(v) => Some((v, k)),
            _ => None,
        })
    }
}

/// Bags are the occupied sets after each move (empty ones dropped). Requires a
/// smooth, monotone strategy that clears every edge.
pub fn strategy_to_decomposition(g: &LabeledGraph, strat: &NodeSearchStrategy) -> Result<Vec<Vec<VertexId>>, SearchError> {
    if let Some((vertex, step)) = strat.first_repeat() {
        return Err(SearchError::NotSmooth { vertex, step });
    }
    let out = verify_strategy(g, strat)?;
    if let Some(step) = out.trace.iter().position(|t| t.recontaminated) {
        return Err(SearchError::NotMonotone { step });
    }
    let mut occupied: Vec<VertexId> = Vec::new();
    let mut bags = Vec::with_capacity(strat.moves.len());
    for mv in &strat.moves {
        match *mv {
            Move::Place(v) => occupied.push(v),
            Move::Remove(v) => occupied.retain(|&x| x != v),
        }
        if !occupied.is_empty() {
            bags.push(occupied.clone());
        }
    }
    Ok(bags)
}
