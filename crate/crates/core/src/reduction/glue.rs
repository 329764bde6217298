//! Loop-vertex gluing: cutable edges, the choice of gluing edge and the
//! subdivision of that edge by a new vertex carrying a loop.

use serde::{Deserialize, Serialize};

use super::ReductionError;
use crate::graph::{RegularGraph, DEGREE};
use crate::spine::{cell_count, edge_cell_profile, trace_cells, CellDecomposition, Chirality, Spine, SpineError};

/// Which strand matchings count as cutable.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CutRule {
    /// Every strand leaving a primed end comes back at a double-primed end.
    #[default]
    Crossing,
    /// As `Crossing`, and the induced matching of pages is not a 3-cycle.
    CrossingCyclic,
}

/// Cuts `edge` and follows the three boundary strands from the ends at its
/// lower dart through the rest of the spine.
pub fn is_cutable(spine: &Spine, edge: usize, rule: CutRule) -> Result<bool, SpineError> {
    spine.check_edge(edge)?;
    let g = spine.graph();
    let [lower, upper] = g.edge(edge);
    let lower_position = RegularGraph::position_of(lower);
    let slots = spine.slots_around(lower);
    let mut image = [0; 3];
    for (k, &start) in slots.iter().enumerate() {
        let (mut x, mut s) = (lower, start);
        let mut steps = 0;
        let (end, end_slot) = loop {
            let exit = DEGREE * RegularGraph::vertex_of(x) + s;
            let slot = RegularGraph::position_of(x);
            if exit == lower || exit == upper {
                break (exit, slot);
            }
            (x, s) = spine.page_partner(exit, slot);
            steps += 1;
            assert!(steps <= 3 * g.dart_count(), "strands are finite");
        };
        if end == lower {
            return Ok(false);
        }
        let (_, across) = spine.page_partner(end, end_slot);
        image[k] = slots.iter().position(|&q| q == across).expect("slot at the lower dart");
    }
    debug_assert!(slots.iter().all(|&q| q != lower_position));
    let cyclic = image.iter().enumerate().all(|(k, &i)| i != k);
    Ok(match rule {
        CutRule::Crossing => true,
        CutRule::CrossingCyclic => !cyclic,
    })
}

/// Why an edge qualifies for loop gluing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GluingCondition {
    /// One cell whose boundary runs along the edge both ways.
    Antiparallel,
    /// Two cells, both present on the edge.
    BothCells,
}

fn gluing_condition(spine: &Spine, cells: &CellDecomposition, edge: usize) -> Option<GluingCondition> {
    let profile = edge_cell_profile(spine, cells, edge).ok()?;
    match cells.cell_count() {
        1 if profile.has_antiparallel_pair() => Some(GluingCondition::Antiparallel),
        2 if profile.distinct_cells() == 2 => Some(GluingCondition::BothCells),
        _ => None,
    }
}

/// Least edge satisfying a gluing condition; `None` above two cells.
pub fn find_gluing_edge(spine: &Spine) -> Option<(usize, GluingCondition)> {
    let cells = trace_cells(spine).ok()?;
    (0..spine.edge_count()).find_map(|e| gluing_condition(spine, &cells, e).map(|c| (e, c)))
}

/// Subdivides `edge` by a new vertex `w = n` whose other two darts form a
/// loop, then picks the first decoration of `w` and its three edges that
/// leaves one cell: chirality `+1` before `-1`, gluings in lexicographic
/// order (edge at the old lower dart, edge at the old upper dart, loop).
pub fn insert_loop_vertex(spine: &Spine, edge: usize) -> Result<Spine, ReductionError> {
    spine.check_edge(edge)?;
    let cells = trace_cells(spine)?;
    if cells.cell_count() > 2 {
        return Err(ReductionError::Precondition(format!("{} cells, at most 2 allowed", cells.cell_count())));
    }
    if gluing_condition(spine, &cells, edge).is_none() {
        return Err(ReductionError::Precondition(format!("edge {edge} meets neither gluing condition")));
    }
    let g = spine.graph();
    let n = g.vertex_count();
    let [lower, upper] = g.edge(edge);
    let w = DEGREE * n;
    let mut pairing = g.pairing().to_vec();
    pairing.extend_from_slice(&[lower, upper, w + 3, w + 2]);
    pairing[lower] = w;
    pairing[upper] = w + 1;
    let graph = RegularGraph::from_pairing(pairing).map_err(SpineError::from)?;
    let mut gluing = vec![0u8; graph.edge_count()];
    for (old, &[a, _]) in g.edges().iter().enumerate() {
        if old != edge {
            gluing[graph.edge_of_dart(a)] = spine.gluing()[old];
        }
    }
    let fresh = [graph.edge_of_dart(lower), graph.edge_of_dart(upper), graph.edge_of_dart(w + 2)];
    let mut chirality = spine.chirality().to_vec();
    chirality.push(Chirality::Positive);
    let mut candidate = Spine::new(graph, chirality, gluing)?;
    for c in [Chirality::Positive, Chirality::Negative] {
        candidate = candidate.with_chirality(n, c)?;
        for code in 0..27u8 {
            let mut gluing = candidate.gluing().to_vec();
            gluing[fresh[0]] = code / 9;
            gluing[fresh[1]] = code / 3 % 3;
            gluing[fresh[2]] = code % 3;
            let trial = candidate.with_gluing(gluing)?;
            if cell_count(&trial) == 1 {
                return Ok(trial);
            }
        }
    }
    Err(ReductionError::Construction { edge })
}
