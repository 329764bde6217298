//! Boundary-curve tracing.
//!
//! A directed state `(d, j)` is a boundary line arriving at `vertex(d)` along
//! dart `d` on the page of slot `j`. It turns through the corner `{pos(d), j}`,
//! leaves along the dart at position `j`, and crosses that edge through the
//! gluing bijection. With `tau` the corner turn and `sigma` the page matching
//! (both fixed-point-free involutions on the `12n` page ends), the successor
//! is `sigma . tau` and reversal is `sigma`, so every 2-cell appears as a pair
//! of mutually reversed orbits.

use serde::{Deserialize, Serialize};

use super::{other_positions, slot_index, Spine, SpineError, SLOTS};
use crate::graph::{RegularGraph, DEGREE};

/// Travel direction along an edge, relative to the orientation from its lower
/// dart to its upper dart.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "i8", into = "i8")]
pub enum Direction {
    Forward,
    Backward,
}

impl Direction {
    pub fn reversed(self) -> Self {
        match self {
            Direction::Forward => Direction::Backward,
            Direction::Backward => Direction::Forward,
        }
    }
}

impl TryFrom<i8> for Direction {
    type Error = String;

    fn try_from(v: i8) -> Result<Self, Self::Error> {
        match v {
            1 => Ok(Direction::Forward),
            -1 => Ok(Direction::Backward),
            other => Err(format!("direction must be +1 or -1, got {other}")),
        }
    }
}

impl From<Direction> for i8 {
    fn from(d: Direction) -> i8 {
        match d {
            Direction::Forward => 1,
            Direction::Backward => -1,
        }
    }
}

/// One page-arc crossing: `page` is the slot position of the arc at the
/// edge's lower dart.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "(usize, Direction, usize)", from = "(usize, Direction, usize)")]
pub struct Traversal {
    pub edge: usize,
    pub direction: Direction,
    pub page: usize,
}

impl From<Traversal> for (usize, Direction, usize) {
    fn from(t: Traversal) -> Self {
        (t.edge, t.direction, t.page)
    }
}

impl From<(usize, Direction, usize)> for Traversal {
    fn from((edge, direction, page): (usize, Direction, usize)) -> Self {
        Traversal { edge, direction, page }
    }
}

#[inline]
fn state(dart: usize, slot: usize) -> usize {
    SLOTS * dart + slot_index(RegularGraph::position_of(dart), slot)
}

#[inline]
fn unpack(state: usize) -> (usize, usize) {
    let dart = state / SLOTS;
    (dart, other_positions(RegularGraph::position_of(dart))[state % SLOTS])
}

/// Successor map on the `12n` directed states.
pub fn successor_table(spine: &Spine) -> Vec<usize> {
    let darts = spine.graph().dart_count();
    (0..SLOTS * darts)
        .map(|s| {
            let (d, j) = unpack(s);
            let exit = DEGREE * RegularGraph::vertex_of(d) + j;
            let (next, slot) = spine.page_partner(exit, RegularGraph::position_of(d));
            state(next, slot)
        })
        .collect()
}

/// Reversal map: the same page-arc travelled the other way.
pub(crate) fn reversal_table(spine: &Spine) -> Vec<usize> {
    (0..SLOTS * spine.graph().dart_count())
        .map(|s| {
            let (d, j) = unpack(s);
            let (other, slot) = spine.page_partner(d, j);
            state(other, slot)
        })
        .collect()
}

/// Number of 2-cells, without building the full decomposition.
pub fn cell_count(spine: &Spine) -> usize {
    let succ = successor_table(spine);
    let mut seen = vec![false; succ.len()];
    let mut orbits = 0;
    for s in 0..succ.len() {
        if seen[s] {
            continue;
        }
        orbits += 1;
        let mut t = s;
        while !seen[t] {
            seen[t] = true;
            t = succ[t];
        }
    }
    orbits / 2
}

/// The 2-cells of a spine as reversal-paired orbits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellDecomposition {
    cells: Vec<Vec<Traversal>>,
    arc_cell: Vec<usize>,
    arc_direction: Vec<Direction>,
    lower_position: Vec<usize>,
    directed_orbits: usize,
}

/// Wire form: `{"cells": [[[edge, dir, page], ...], ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellsRecord {
    pub cells: Vec<Vec<Traversal>>,
}

impl CellDecomposition {
    pub fn cell_count(&self) -> usize {
        self.cells.len()
    }

    pub fn cells(&self) -> &[Vec<Traversal>] {
        &self.cells
    }

    pub fn directed_orbit_count(&self) -> usize {
        self.directed_orbits
    }

    pub fn cell_lengths(&self) -> Vec<usize> {
        self.cells.iter().map(Vec::len).collect()
    }

    /// Cell containing the arc of `edge` on slot `page` of its lower dart.
    pub fn cell_of(&self, edge: usize, page: usize) -> usize {
        self.arc_cell[SLOTS * edge + slot_index(self.lower_position[edge], page)]
    }

    pub(crate) fn arc(&self, arc: usize) -> ArcIncidence {
        ArcIncidence { cell: self.arc_cell[arc], direction: self.arc_direction[arc] }
    }

    pub fn to_record(&self) -> CellsRecord {
        CellsRecord { cells: self.cells.clone() }
    }
}

/// Traces every boundary curve.
pub fn trace_cells(spine: &Spine) -> Result<CellDecomposition, SpineError> {
    let g = spine.graph();
    let succ = successor_table(spine);
    let rev = reversal_table(spine);
    let states = succ.len();
    let mut orbit_of = vec![usize::MAX; states];
    let mut orbits = 0;
    let mut cells = Vec::new();
    let mut arc_cell = vec![usize::MAX; SLOTS * g.edge_count()];
    let mut arc_direction = vec![Direction::Forward; SLOTS * g.edge_count()];
    for start in 0..states {
        if orbit_of[start] != usize::MAX {
            continue;
        }
        let label = orbits;
        orbits += 1;
        let mut members = Vec::new();
        let mut s = start;
        while orbit_of[s] == usize::MAX {
            orbit_of[s] = label;
            members.push(s);
            s = succ[s];
        }
        let reverse = rev[start];
        if orbit_of[reverse] == label {
            return Err(SpineError::NonCoherentTrace { state: start });
        }
        // the reversed orbit is the same cell; mark it so it is skipped
        let reverse_label = orbits;
        orbits += 1;
        let mut s = reverse;
        while orbit_of[s] == usize::MAX {
            orbit_of[s] = reverse_label;
            s = succ[s];
        }
        let cell = cells.len();
        let mut boundary = Vec::with_capacity(members.len());
        for &m in &members {
            let (d, j) = unpack(m);
            let edge = g.edge_of_dart(d);
            let [lower, _] = g.edge(edge);
            let (direction, page) =
                if d == lower { (Direction::Backward, j) } else { (Direction::Forward, unpack(rev[m]).1) };
            let arc = SLOTS * edge + slot_index(RegularGraph::position_of(lower), page);
            arc_cell[arc] = cell;
            arc_direction[arc] = direction;
            boundary.push(Traversal { edge, direction, page });
        }
        cells.push(boundary);
    }
    let lower_position = g.edges().iter().map(|&[lower, _]| RegularGraph::position_of(lower)).collect();
    let decomposition = CellDecomposition { cells, arc_cell, arc_direction, lower_position, directed_orbits: orbits };
    let total: usize = decomposition.cells.iter().map(Vec::len).sum();
    assert_eq!(total, 6 * spine.vertex_count(), "every page-arc lies on exactly one boundary");
    Ok(decomposition)
}

/// Cell and direction of one page-arc.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ArcIncidence {
    pub cell: usize,
    pub direction: Direction,
}

/// The three page-arcs of an edge, ordered by page slot at the lower dart.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeProfile {
    pub edge: usize,
    pub arcs: [ArcIncidence; 3],
}

impl EdgeProfile {
    pub fn distinct_cells(&self) -> usize {
        let [a, b, c] = self.arcs.map(|x| x.cell);
        1 + usize::from(b != a) + usize::from(c != a && c != b)
    }

    pub fn contains_cell(&self, cell: usize) -> bool {
        self.arcs.iter().any(|a| a.cell == cell)
    }

    /// Two arcs of one cell running in opposite directions.
    pub fn has_antiparallel_pair(&self) -> bool {
        (0..3).any(|i| {
            ((i + 1)..3)
                .any(|j| self.arcs[i].cell == self.arcs[j].cell && self.arcs[i].direction != self.arcs[j].direction)
        })
    }
}

pub fn edge_cell_profile(spine: &Spine, cells: &CellDecomposition, edge: usize) -> Result<EdgeProfile, SpineError> {
    spine.check_edge(edge)?;
    Ok(EdgeProfile { edge, arcs: std::array::from_fn(|k| cells.arc(SLOTS * edge + k)) })
}

/// Cell of the page `(dart, slot)`; at a vertex this is the cell of the
/// corner `{pos(dart), slot}`.
pub fn page_cell(spine: &Spine, cells: &CellDecomposition, dart: usize, slot: usize) -> usize {
    let edge = spine.graph().edge_of_dart(dart);
    let [lower, _] = spine.graph().edge(edge);
    let page = if dart == lower { slot } else { spine.page_partner(dart, slot).1 };
    cells.cell_of(edge, page)
}

/// Distinct cells met by the four edges at `vertex`.
pub fn vertex_cell_count(spine: &Spine, cells: &CellDecomposition, vertex: usize) -> Result<usize, SpineError> {
    if vertex >= spine.vertex_count() {
        return Err(SpineError::UnknownVertex { vertex, vertex_count: spine.vertex_count() });
    }
    let mut met: Vec<usize> = spine
        .graph()
        .incident_edges(vertex)
        .iter()
        .flat_map(|&e| (0..SLOTS).map(move |k| cells.arc_cell[SLOTS * e + k]))
        .collect();
    met.sort_unstable();
    met.dedup();
    Ok(met.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spine::tests::two_loops;
    use crate::spine::{all_decorations, Chirality};

    #[test]
    fn hand_walked_two_loop_spine() {
        // Walked by hand over the 12 page ends: cells of 1, 4 and 1 arcs.
        let s = Spine::new(two_loops(), vec![Chirality::Positive], vec![0, 0]).unwrap();
        let cells = trace_cells(&s).unwrap();
        assert_eq!(successor_table(&s).len(), 12);
        assert_eq!(cells.cell_count(), 3);
        let mut lengths = cells.cell_lengths();
        lengths.sort();
        assert_eq!(lengths, vec![1, 1, 4]);
    }

    #[test]
    fn successor_is_a_permutation_conjugate_to_its_inverse() {
        for s in all_decorations(&two_loops()) {
            let succ = successor_table(&s);
            let rev = reversal_table(&s);
            let mut hit = vec![false; succ.len()];
            for &t in &succ {
                assert!(!hit[t]);
                hit[t] = true;
            }
            for x in 0..succ.len() {
                assert_eq!(rev[rev[x]], x);
                // rev . succ . rev = succ^-1
                assert_eq!(succ[rev[succ[rev[x]]]], x);
            }
        }
    }

    #[test]
    fn orbit_and_length_bookkeeping() {
        for s in all_decorations(&two_loops()) {
            let cells = trace_cells(&s).unwrap();
            assert_eq!(cells.directed_orbit_count(), 2 * cells.cell_count());
            assert_eq!(cells.cell_lengths().iter().sum::<usize>(), 6);
            assert_eq!(cell_count(&s), cells.cell_count());
        }
    }

    #[test]
    fn profile_matches_cell_listing() {
        for s in all_decorations(&two_loops()) {
            let cells = trace_cells(&s).unwrap();
            for (c, boundary) in cells.cells().iter().enumerate() {
                for t in boundary {
                    assert_eq!(cells.cell_of(t.edge, t.page), c);
                    let profile = edge_cell_profile(&s, &cells, t.edge).unwrap();
                    let k = slot_index(RegularGraph::position_of(s.graph().edge(t.edge)[0]), t.page);
                    assert_eq!(profile.arcs[k], ArcIncidence { cell: c, direction: t.direction });
                }
            }
        }
    }

    #[test]
    fn one_cell_spine_has_vertex_count_one() {
        let g = RegularGraph::new(2, &[[0, 4], [1, 5], [2, 6], [3, 7]]).unwrap();
        let one = all_decorations(&g).find(|s| cell_count(s) == 1).expect("a one-cell decoration exists");
        let cells = trace_cells(&one).unwrap();
        for v in 0..2 {
            assert_eq!(vertex_cell_count(&one, &cells, v).unwrap(), 1);
        }
        assert!(vertex_cell_count(&one, &cells, 2).is_err());
    }

    #[test]
    fn profile_format() {
        let p = EdgeProfile { edge: 0, arcs: [ArcIncidence { cell: 0, direction: Direction::Forward }; 3] };
        assert_eq!(p.distinct_cells(), 1);
        assert!(!p.has_antiparallel_pair());
        assert_eq!(serde_json::to_string(&p.arcs[0]).unwrap(), r#"{"cell":0,"direction":1}"#);
    }
}
