//! Cell reduction and loop-vertex gluing.
//!
//! [`minimize_cells`] starts from the seed decoration and rotates edges
//! while that lowers the cell count. When no single rotation helps it tries,
//! in order, the vertex propagation moves, a bounded breadth-first search over
//! rotation sequences and an exhaustive decoration sweep. Every change is
//! logged as a [`Step`], so a [`ReductionTrace`] replays from the seed.

mod glue;
mod propagate;
mod search;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::RegularGraph;
use crate::spine::{cell_count, edge_cell_profile, trace_cells, Chirality, Spine, SpineError};

pub use glue::{find_gluing_edge, insert_loop_vertex, is_cutable, CutRule, GluingCondition};
pub use search::{exhaustive_min_cells, exhaustive_min_cells_with_budget, DEFAULT_EXHAUSTIVE_BUDGET};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Rule {
    #[serde(rename = "three-cell-edge")]
    ThreeCellEdge,
    #[serde(rename = "antiparallel")]
    Antiparallel,
    #[serde(rename = "vertex-case-1")]
    VertexCase1,
    #[serde(rename = "vertex-case-2")]
    VertexCase2,
    #[serde(rename = "vertex-case-3")]
    VertexCase3,
    #[serde(rename = "vertex-case-4")]
    VertexCase4,
    #[serde(rename = "search")]
    Search,
}

/// One logged change. A rotation sets `edge` and `turns`; an exhaustive
/// sweep may also flip a chirality, which sets `vertex` instead.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Step {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub edge: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub turns: Option<u8>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertex: Option<usize>,
    pub before: usize,
    pub after: usize,
    pub rule: Rule,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionTrace {
    pub steps: Vec<Step>,
}

impl ReductionTrace {
    /// Applies every step to `start`, checking the logged cell counts.
    pub fn replay(&self, start: &Spine) -> Result<Spine, ReductionError> {
        let mut spine = start.clone();
        for (i, step) in self.steps.iter().enumerate() {
            let before = cell_count(&spine);
            spine = apply_step(&spine, step)?;
            let after = cell_count(&spine);
            if before != step.before || after != step.after {
                return Err(ReductionError::Replay { step: i, before, after });
            }
        }
        Ok(spine)
    }
}

fn apply_step(spine: &Spine, step: &Step) -> Result<Spine, ReductionError> {
    match (step.edge, step.vertex) {
        (Some(edge), None) => Ok(spine.rotate_edge_by(edge, step.turns.unwrap_or(1))?),
        (None, Some(vertex)) => {
            let flipped = spine
                .chirality()
                .get(vertex)
                .ok_or(SpineError::UnknownVertex { vertex, vertex_count: spine.vertex_count() })?
                .flipped();
            Ok(spine.with_chirality(vertex, flipped)?)
        }
        _ => Err(ReductionError::Precondition("a step names exactly one edge or one vertex".into())),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionConfig {
    /// Longest rotation sequence tried by the breadth-first fallback.
    pub bfs_depth: usize,
    /// Spines visited by one breadth-first search.
    pub bfs_budget: usize,
    /// Decorations the exhaustive fallback may sweep.
    pub exhaustive_budget: u64,
    /// Count-neutral vertex moves allowed per stall.
    pub propagation_moves: usize,
}

impl Default for ReductionConfig {
    fn default() -> Self {
        ReductionConfig {
            bfs_depth: 6,
            bfs_budget: 200_000,
            exhaustive_budget: DEFAULT_EXHAUSTIVE_BUDGET,
            propagation_moves: 64,
        }
    }
}

/// Report for a simple graph left with more than two cells.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionFailure {
    pub graph: RegularGraph,
    pub best: Spine,
    pub cells: usize,
    pub trace: ReductionTrace,
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum ReductionError {
    #[error(transparent)]
    Spine(#[from] SpineError),
    #[error("{decorations} decorations exceed the budget of {budget}")]
    Limit { decorations: String, budget: u64 },
    #[error("no spine with at most two cells found ({} cells remain)", .0.cells)]
    Failure(Box<ReductionFailure>),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("no local decoration of the new vertex on edge {edge} gives one cell")]
    Construction { edge: usize },
    #[error("replay diverged at step {step}: counts {before} -> {after}")]
    Replay { step: usize, before: usize, after: usize },
}

/// An edge rotation that lowers the cell count.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReducingRotation {
    pub edge: usize,
    pub turns: u8,
    pub rule: Rule,
    pub cells_after: usize,
}

/// First reducing rotation, trying edges in three distinct cells, then edges
/// carrying an antiparallel pair, then the rest, each by one and two turns.
pub fn find_reducing_rotation(spine: &Spine) -> Option<ReducingRotation> {
    let cells = trace_cells(spine).ok()?;
    let current = cells.cell_count();
    if current <= 1 {
        return None;
    }
    let mut three = Vec::new();
    let mut anti = Vec::new();
    let mut rest = Vec::new();
    for edge in 0..spine.edge_count() {
        let profile = edge_cell_profile(spine, &cells, edge).expect("edge in range");
        if profile.distinct_cells() == 3 {
            three.push(edge);
        } else if profile.has_antiparallel_pair() {
            anti.push(edge);
        } else {
            rest.push(edge);
        }
    }
    let ordered = three
        .into_iter()
        .map(|e| (e, Rule::ThreeCellEdge))
        .chain(anti.into_iter().map(|e| (e, Rule::Antiparallel)))
        .chain(rest.into_iter().map(|e| (e, Rule::Search)));
    for (edge, rule) in ordered {
        for turns in 1..=2 {
            let next = spine.rotate_edge_by(edge, turns).expect("edge in range");
            let after = cell_count(&next);
            if after < current {
                return Some(ReducingRotation { edge, turns, rule, cells_after: after });
            }
        }
    }
    None
}

/// Outcome of [`minimize_cells`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Minimized {
    pub spine: Spine,
    pub cells: usize,
    pub trace: ReductionTrace,
}

/// Seed decoration of `graph` reduced as far as the configured fallbacks go.
pub fn minimize_cells(graph: &RegularGraph, config: &ReductionConfig) -> Result<Minimized, ReductionError> {
    let seed = Spine::seed(graph.clone())?;
    let mut run = Run { spine: seed.clone(), cells: cell_count(&seed), trace: ReductionTrace::default() };
    let mut swept = false;
    loop {
        run.descend();
        if run.cells <= 1 {
            break;
        }
        if run.cells > 2 && propagate::propagate(&mut run, config.propagation_moves) {
            continue;
        }
        if let Some(path) = search::bfs_lower(&run.spine, run.cells, config.bfs_depth, config.bfs_budget) {
            for (edge, turns) in path {
                run.rotate(edge, turns, Rule::Search);
            }
            continue;
        }
        if swept {
            break;
        }
        swept = true;
        match search::exhaustive_min_cells_with_budget(graph, config.exhaustive_budget) {
            Ok((min, witness)) if min < run.cells => run.jump_to(&witness),
            _ => break,
        }
    }
    if run.cells > 2 && graph.is_simple() {
        return Err(ReductionError::Failure(Box::new(ReductionFailure {
            graph: graph.clone(),
            best: run.spine,
            cells: run.cells,
            trace: run.trace,
        })));
    }
    Ok(Minimized { spine: run.spine, cells: run.cells, trace: run.trace })
}

pub(crate) struct Run {
    pub(crate) spine: Spine,
    pub(crate) cells: usize,
    pub(crate) trace: ReductionTrace,
}

impl Run {
    fn descend(&mut self) {
        while let Some(r) = find_reducing_rotation(&self.spine) {
            self.rotate(r.edge, r.turns, r.rule);
        }
    }

    pub(crate) fn rotate(&mut self, edge: usize, turns: u8, rule: Rule) {
        let next = self.spine.rotate_edge_by(edge, turns).expect("edge in range");
        let after = cell_count(&next);
        self.trace.steps.push(Step {
            edge: Some(edge),
            turns: Some(turns),
            vertex: None,
            before: self.cells,
            after,
            rule,
        });
        self.spine = next;
        self.cells = after;
    }

    fn jump_to(&mut self, target: &Spine) {
        for v in 0..target.vertex_count() {
            if self.spine.chirality()[v] != target.chirality()[v] {
                let flipped: Chirality = self.spine.chirality()[v].flipped();
                let next = self.spine.with_chirality(v, flipped).expect("vertex in range");
                let after = cell_count(&next);
                self.trace.steps.push(Step {
                    edge: None,
                    turns: None,
                    vertex: Some(v),
                    before: self.cells,
                    after,
                    rule: Rule::Search,
                });
                self.spine = next;
                self.cells = after;
            }
        }
        for e in 0..target.edge_count() {
            let turns = (target.gluing()[e] + 3 - self.spine.gluing()[e]) % 3;
            if turns != 0 {
                self.rotate(e, turns, Rule::Search);
            }
        }
        debug_assert_eq!(&self.spine, target);
    }
}

#[cfg(test)]
mod tests;
