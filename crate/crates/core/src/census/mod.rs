//! Counting layer: the regular-graph estimate, the one-cell spine census and
//! the bound tables.

mod bollobas;
mod bounds;

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{canonical_form, enumerate_a, CanonicalCode, GraphError, RegularGraph};
use crate::reduction::{find_gluing_edge, insert_loop_vertex, minimize_cells, ReductionConfig, ReductionError};
use crate::spine::{canonical_representative, cell_count, Spine};

pub use bollobas::{
    asymptotic_residual, bollobas_ln_estimate, bollobas_ln_exact, quartic_linear_constant, stirling_residual,
    BollobasError,
};
pub use bounds::{bounds_table, BoundsConfig, BoundsRow, C_OVER_A_CONSTANT, INTRO_CONSTANT, THEOREM_CONSTANT};

pub const CENSUS_SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum CensusError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("empty range {from}..={to}")]
    Range { from: usize, to: usize },
    #[error("the census needs at least 2 vertices, got {0}")]
    TooSmall(usize),
}

/// One census member, stored as its canonical representative.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusRecord {
    pub schema_version: u32,
    pub graph_code: CanonicalCode,
    pub spine_code: CanonicalCode,
    pub n: usize,
    pub cell_count: usize,
    pub spine: Spine,
}

impl CensusRecord {
    pub fn from_spine(spine: &Spine) -> Self {
        let (spine_code, representative) = canonical_representative(spine);
        CensusRecord {
            schema_version: CENSUS_SCHEMA_VERSION,
            graph_code: canonical_form(representative.graph()),
            spine_code,
            n: representative.vertex_count(),
            cell_count: cell_count(&representative),
            spine: representative,
        }
    }

    /// Recomputes the stored codes and cell count from the spine.
    pub fn is_consistent(&self) -> bool {
        let fresh = CensusRecord::from_spine(&self.spine);
        fresh.spine_code == self.spine_code
            && fresh.graph_code == self.graph_code
            && fresh.n == self.n
            && fresh.cell_count == self.cell_count
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AnomalyKind {
    /// A simple graph kept more than two cells.
    ReductionFailure,
    /// No edge qualifies for loop gluing.
    NoGluingEdge,
    /// No decoration of the loop vertex gave one cell.
    ConstructionFailure,
    /// Any other error from the pipeline.
    Error,
}

/// A source graph the pipeline could not turn into a one-cell spine.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Anomaly {
    pub kind: AnomalyKind,
    pub graph_code: CanonicalCode,
    pub graph: RegularGraph,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spine: Option<Spine>,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusReport {
    pub schema_version: u32,
    pub n: usize,
    /// `|A_(n-1)|`.
    pub source_graphs: usize,
    pub records: Vec<CensusRecord>,
    pub anomalies: Vec<Anomaly>,
}

impl CensusReport {
    /// At least one distinct one-cell spine per source graph.
    pub fn meets_lower_bound(&self) -> bool {
        self.records.len() >= self.source_graphs
    }
}

/// One-cell spines with `n` vertices built from every graph of `A_(n-1)`:
/// reduce, pick a gluing edge, insert a loop vertex. Sorted by spine code.
pub fn census_one_cell(n: usize, config: &ReductionConfig) -> Result<CensusReport, CensusError> {
    if n < 2 {
        return Err(CensusError::TooSmall(n));
    }
    let sources = enumerate_a(n - 1)?;
    let outcomes: Vec<Result<Spine, Anomaly>> = sources.par_iter().map(|g| glue_one(g, config)).collect();
    let mut records = BTreeMap::new();
    let mut anomalies = Vec::new();
    for outcome in outcomes {
        match outcome {
            Ok(spine) => {
                let record = CensusRecord::from_spine(&spine);
                records.entry(record.spine_code.clone()).or_insert(record);
            }
            Err(anomaly) => anomalies.push(anomaly),
        }
    }
    Ok(CensusReport {
        schema_version: CENSUS_SCHEMA_VERSION,
        n,
        source_graphs: sources.len(),
        records: records.into_values().collect(),
        anomalies,
    })
}

fn glue_one(g: &RegularGraph, config: &ReductionConfig) -> Result<Spine, Anomaly> {
    let anomaly = |kind, spine: Option<Spine>, detail: String| Anomaly {
        kind,
        graph_code: canonical_form(g),
        graph: g.clone(),
        spine,
        detail,
    };
    let reduced = match minimize_cells(g, config) {
        Ok(m) => m,
        Err(ReductionError::Failure(f)) => {
            let detail = format!("{} cells remain", f.cells);
            return Err(anomaly(AnomalyKind::ReductionFailure, Some(f.best), detail));
        }
        Err(e) => return Err(anomaly(AnomalyKind::Error, None, e.to_string())),
    };
    let Some((edge, _)) = find_gluing_edge(&reduced.spine) else {
        let detail = format!("{} cells, no qualifying edge", reduced.cells);
        return Err(anomaly(AnomalyKind::NoGluingEdge, Some(reduced.spine), detail));
    };
    insert_loop_vertex(&reduced.spine, edge).map_err(|e| {
        let kind = match e {
            ReductionError::Construction { .. } => AnomalyKind::ConstructionFailure,
            _ => AnomalyKind::Error,
        };
        anomaly(kind, Some(reduced.spine.clone()), e.to_string())
    })
}
