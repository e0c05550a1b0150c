use crate::error::SearchError;
use crate::graph::{LabeledGraph, VertexId};

use super::{Move, NodeSearchStrategy};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TraceStep {
    pub occupied: usize,
    pub cleared: usize,
    pub recontaminated: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOutcome {
    pub max_searchers: usize,
    pub monotone: bool,
    pub all_cleared: bool,
    pub smooth: bool,
    pub trace: Vec<TraceStep>,
}

/// Game state with incremental recontamination.
///
/// Invariant between moves: no unoccupied vertex is incident to both a
/// cleared and a contaminated edge. Placing cannot break it; removing `v` can
/// only break it at `v`, so the closure starts there.
#[derive(Debug, Clone)]
pub struct SearchState<'g> {
    g: &'g LabeledGraph,
    pub occupied: Vec<bool>,
    pub cleared: Vec<bool>,
    occupied_count: usize,
    cleared_count: usize,
}

impl<'g> SearchState<'g> {
    pub fn new(g: &'g LabeledGraph) -> Self {
        Self {
            g,
            occupied: vec![false; g.vertex_count()],
            cleared: vec![false; g.edge_count()],
            occupied_count: 0,
            cleared_count: 0,
        }
    }

    pub fn occupied_count(&self) -> usize {
        self.occupied_count
    }

    pub fn cleared_count(&self) -> usize {
        self.cleared_count
    }

    /// Applies one move; returns whether any cleared edge was recontaminated.
    pub fn apply(&mut self, step: usize, mv: Move) -> Result<bool, SearchError> {
        let v = mv.vertex();
        if v >= self.g.vertex_count() {
            return Err(SearchError::IllegalMove {
                step,
                msg: format!("vertex {v} is not in the graph"),
            });
        }
        match mv {
            Move::Place(_) => {
                if self.occupied[v] {
                    return Err(SearchError::IllegalMove {
                        step,
                        msg: format!("vertex {v} is already occupied"),
                    });
                }
                self.occupied[v] = true;
                self.occupied_count += 1;
                for (w, e) in self.g.incident(v) {
                    if self.occupied[w] && !self.cleared[e] {
                        self.cleared[e] = true;
                        self.cleared_count += 1;
                    }
                }
                Ok(false)
            }
            Move::Remove(_) => {
                if !self.occupied[v] {
                    return Err(SearchError::IllegalMove {
                        step,
                        msg: format!("vertex {v} is not occupied"),
                    });
                }
                self.occupied[v] = false;
                self.occupied_count -= 1;
                Ok(self.spread_from(v))
            }
        }
    }

    fn spread_from(&mut self, start: VertexId) -> bool {
        let mut any = false;
        let mut work = vec![start];
        while let Some(x) = work.pop() {
            if self.occupied[x] || !self.g.incident(x).any(|(_, e)| !self.cleared[e]) {
                continue;
            }
            for (w, e) in self.g.incident(x) {
                if self.cleared[e] {
                    self.cleared[e] = false;
                    self.cleared_count -= 1;
                    any = true;
                    if !self.occupied[w] {
                        work.push(w);
                    }
                }
            }
        }
        any
    }
}

/// Global fixpoint of the recontamination rule, recomputed from scratch.
/// Reference for the incremental closure.
pub fn reference_closure(g: &LabeledGraph, occupied: &[bool], cleared: &[bool]) -> Vec<bool> {
    let mut cleared = cleared.to_vec();
    loop {
        let mut changed = false;
        for x in 0..g.vertex_count() {
            if occupied[x] || !g.incident(x).any(|(_, e)| !cleared[e]) {
                continue;
            }
            for (_, e) in g.incident(x) {
                if cleared[e] {
                    cleared[e] = false;
                    changed = true;
                }
            }
        }
        if !changed {
            return cleared;
        }
    }
}

/// Plays the strategy from the all-contaminated start.
pub fn verify_strategy(g: &LabeledGraph, strat: &NodeSearchStrategy) -> Result<SearchOutcome, SearchError> {
    let mut st = SearchState::new(g);
    let mut trace = Vec::with_capacity(strat.moves.len());
    let mut max_searchers = 0;
    for (step, &mv) in strat.moves.iter().enumerate() {
        let recontaminated = st.apply(step, mv)?;
        max_searchers = max_searchers.max(st.occupied_count());
        trace.push(TraceStep {
            occupied: st.occupied_count(),
            cleared: st.cleared_count(),
            recontaminated,
        });
    }
    Ok(SearchOutcome {
        max_searchers,
        monotone: trace.iter().all(|t| !t.recontaminated),
        all_cleared: st.cleared_count() == g.edge_count(),
        smooth: strat.first_repeat().is_none(),
        trace,
    })
}
