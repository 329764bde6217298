//! Breadth-first rotation search and the exhaustive decoration sweep.

use std::collections::HashMap;
use std::collections::VecDeque;

use rayon::prelude::*;

use super::ReductionError;
use crate::graph::RegularGraph;
use crate::spine::{cell_count, decoration_count, Spine};

/// `18^5`: every decoration of a five-vertex graph.
pub const DEFAULT_EXHAUSTIVE_BUDGET: u64 = 1_889_568;

/// Shortest rotation sequence (at most `depth` moves, at most `budget`
/// visited spines) reaching fewer than `cells` cells.
pub(crate) fn bfs_lower(start: &Spine, cells: usize, depth: usize, budget: usize) -> Option<Vec<(usize, u8)>> {
    let mut parent: HashMap<Vec<u8>, Option<(Vec<u8>, usize, u8)>> = HashMap::new();
    parent.insert(start.gluing().to_vec(), None);
    let mut queue = VecDeque::from([(start.clone(), 0usize)]);
    while let Some((spine, level)) = queue.pop_front() {
        if level == depth {
            continue;
        }
        for edge in 0..spine.edge_count() {
            for turns in 1..=2u8 {
                let next = spine.rotate_edge_by(edge, turns).expect("edge in range");
                let key = next.gluing().to_vec();
                if parent.contains_key(&key) {
                    continue;
                }
                parent.insert(key.clone(), Some((spine.gluing().to_vec(), edge, turns)));
                if cell_count(&next) < cells {
                    return Some(unwind(&parent, key));
                }
                if parent.len() >= budget {
                    return None;
                }
                queue.push_back((next, level + 1));
            }
        }
    }
    None
}

fn unwind(parent: &HashMap<Vec<u8>, Option<(Vec<u8>, usize, u8)>>, mut key: Vec<u8>) -> Vec<(usize, u8)> {
    let mut path = Vec::new();
    while let Some(Some((prev, edge, turns))) = parent.get(&key) {
        path.push((*edge, *turns));
        key = prev.clone();
    }
    path.reverse();
    path
}

/// True minimum cell count over all `18^n` decorations, with the witness of
/// least decoration index.
pub fn exhaustive_min_cells(graph: &RegularGraph) -> Result<(usize, Spine), ReductionError> {
    exhaustive_min_cells_with_budget(graph, DEFAULT_EXHAUSTIVE_BUDGET)
}

pub fn exhaustive_min_cells_with_budget(graph: &RegularGraph, budget: u64) -> Result<(usize, Spine), ReductionError> {
    let total = decoration_count(graph.vertex_count())
        .filter(|&t| t <= budget)
        .ok_or_else(|| ReductionError::Limit { decorations: format!("18^{}", graph.vertex_count()), budget })?;
    let seed = Spine::seed(graph.clone())?;
    let (min, index) = (0..total)
        .into_par_iter()
        .map_init(
            || seed.clone(),
            |spine, i| {
                spine.set_decoration_index(i);
                (cell_count(spine), i)
            },
        )
        .min()
        .expect("at least one decoration");
    Ok((min, Spine::from_decoration_index(graph.clone(), index)?))
}
