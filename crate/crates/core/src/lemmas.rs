//! Exhaustive checks of the cell predicates on minimal spines.
//!
//! For every connected 4-regular multigraph up to a vertex bound, every
//! decoration reaching the minimum cell count is checked for:
//!
//! 1. no edge meets three distinct cells;
//! 2. on an edge meeting two cells, the two arcs of the shared cell run in
//!    the same direction;
//! 3. no vertex meets more than two cells.
//!
//! The same predicates are also counted over all non-minimal decorations as a
//! control, to show they can fail at all.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::graph::{canonical_form, enumerate_c_with_limit, GraphError, RegularGraph};
use crate::reduction::{exhaustive_min_cells_with_budget, ReductionError};
use crate::spine::{decoration_count, edge_cell_profile, trace_cells, vertex_cell_count, Spine};

pub const LEMMA_SCHEMA_VERSION: u32 = 1;

/// Violation counts, one per predicate.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PredicateCounts {
    pub three_cell_edge: u64,
    pub antiparallel_pair: u64,
    pub crowded_vertex: u64,
}

impl PredicateCounts {
    pub fn total(&self) -> u64 {
        self.three_cell_edge + self.antiparallel_pair + self.crowded_vertex
    }

    fn add(&mut self, other: &PredicateCounts) {
        self.three_cell_edge += other.three_cell_edge;
        self.antiparallel_pair += other.antiparallel_pair;
        self.crowded_vertex += other.crowded_vertex;
    }
}

/// A minimal spine failing a predicate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub graph_code: String,
    pub predicates: PredicateCounts,
    pub spine: Spine,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphSummary {
    pub graph_code: String,
    pub n: usize,
    pub simple: bool,
    pub min_cells: usize,
    pub minimal_spines: u64,
    pub violations: PredicateCounts,
    pub control: PredicateCounts,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaReport {
    pub schema_version: u32,
    pub max_n: usize,
    pub graphs: Vec<GraphSummary>,
    pub violations: PredicateCounts,
    /// Predicate failures among decorations above the minimum.
    pub control: PredicateCounts,
    /// The first few failing minimal spines.
    pub examples: Vec<Violation>,
}

impl LemmaReport {
    pub fn violation_count(&self) -> u64 {
        self.violations.total()
    }
}

#[derive(Debug, thiserror::Error)]
pub enum LemmaError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Reduction(#[from] ReductionError),
}

const EXAMPLE_LIMIT: usize = 16;

/// Predicate failures of one spine: 0 or 1 per predicate.
pub fn check_predicates(spine: &Spine) -> PredicateCounts {
    let cells = trace_cells(spine).expect("order-reversing gluings trace coherently");
    let mut counts = PredicateCounts::default();
    let profiles: Vec<_> =
        (0..spine.edge_count()).map(|e| edge_cell_profile(spine, &cells, e).expect("edge")).collect();
    if profiles.iter().any(|p| p.distinct_cells() == 3) {
        counts.three_cell_edge = 1;
    }
    if profiles.iter().any(|p| p.distinct_cells() == 2 && p.has_antiparallel_pair()) {
        counts.antiparallel_pair = 1;
    }
    if (0..spine.vertex_count()).any(|v| vertex_cell_count(spine, &cells, v).expect("vertex") > 2) {
        counts.crowded_vertex = 1;
    }
    counts
}

/// Sweeps every graph of `C_n`, `1 <= n <= max_n`.
pub fn verify_lemmas(max_n: usize, budget: u64) -> Result<LemmaReport, LemmaError> {
    let mut graphs = Vec::new();
    let mut examples = Vec::new();
    let mut violations = PredicateCounts::default();
    let mut control = PredicateCounts::default();
    for n in 1..=max_n {
        for g in enumerate_c_with_limit(n, max_n)? {
            let (summary, found) = sweep_graph(&g, budget)?;
            violations.add(&summary.violations);
            control.add(&summary.control);
            examples.extend(found.into_iter().take(EXAMPLE_LIMIT.saturating_sub(examples.len())));
            graphs.push(summary);
        }
    }
    Ok(LemmaReport { schema_version: LEMMA_SCHEMA_VERSION, max_n, graphs, violations, control, examples })
}

fn sweep_graph(g: &RegularGraph, budget: u64) -> Result<(GraphSummary, Vec<Violation>), LemmaError> {
    let (min_cells, _) = exhaustive_min_cells_with_budget(g, budget)?;
    let total = decoration_count(g.vertex_count()).expect("within budget");
    let code = canonical_form(g).to_hex();
    let per_spine: Vec<(u64, bool, PredicateCounts)> = (0..total)
        .into_par_iter()
        .map(|i| {
            let s = Spine::from_decoration_index(g.clone(), i).expect("connected");
            let minimal = crate::spine::cell_count(&s) == min_cells;
            (i, minimal, check_predicates(&s))
        })
        .collect();
    let mut violations = PredicateCounts::default();
    let mut control = PredicateCounts::default();
    let mut minimal_spines = 0;
    let mut found = Vec::new();
    for (i, minimal, counts) in per_spine {
        if minimal {
            minimal_spines += 1;
            violations.add(&counts);
            if counts.total() > 0 && found.len() < EXAMPLE_LIMIT {
                found.push(Violation {
                    graph_code: code.clone(),
                    predicates: counts,
                    spine: Spine::from_decoration_index(g.clone(), i).expect("connected"),
                });
            }
        } else {
            control.add(&counts);
        }
    }
    let summary = GraphSummary {
        graph_code: code,
        n: g.vertex_count(),
        simple: g.is_simple(),
        min_cells,
        minimal_spines,
        violations,
        control,
    };
    Ok((summary, found))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spine::Chirality;

    #[test]
    fn one_vertex_sweep_is_clean() {
        let report = verify_lemmas(1, 1_000).unwrap();
        assert_eq!(report.graphs.len(), 1);
        assert_eq!(report.violation_count(), 0);
        assert_eq!(report.graphs[0].min_cells, 2);
    }

    #[test]
    fn crowded_vertex_fires_on_a_three_cell_spine() {
        let g = RegularGraph::new(1, &[[0, 1], [2, 3]]).unwrap();
        let s = Spine::new(g, vec![Chirality::Positive], vec![0, 0]).unwrap();
        let counts = check_predicates(&s);
        assert_eq!(crate::spine::cell_count(&s), 3);
        assert_eq!(counts.crowded_vertex, 1);
    }

    #[test]
    fn over_budget_is_an_error() {
        assert!(matches!(verify_lemmas(2, 100), Err(LemmaError::Reduction(ReductionError::Limit { .. }))));
    }
}
