//! Oriented special spines over 4-regular graphs.
//!
//! A vertex of the singular graph looks like the cone over the 1-skeleton of a
//! tetrahedron: the four darts are the tetrahedron's vertices and the six
//! corners `{i, j}` are its edges. Around the dart at local position `i` the
//! three pages (slots `j != i`) carry a cyclic order. For chirality `+1` that
//! order is the ascending order of the other positions when `i` is even and
//! the descending one when `i` is odd, which is the rotation system of a
//! positively embedded tetrahedron; chirality `-1` reverses every order.
//!
//! Across an edge `(d, d')`, `d < d'`, the pages are matched by an
//! order-reversing bijection picked by a gluing parameter `g` in `Z/3`: the
//! page at cyclic index `k` at one end meets the page at cyclic index
//! `(g - k) mod 3` at the other end. Together with one chirality per vertex
//! this gives `2 * 3^2 = 18` decorations per vertex.

mod canon;
mod trace;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{GraphRecord, RegularGraph, DEGREE};

pub use canon::{canonical_representative, canonical_spine};
pub use trace::{
    cell_count, edge_cell_profile, page_cell, successor_table, trace_cells, vertex_cell_count, ArcIncidence,
    CellDecomposition, CellsRecord, Direction, EdgeProfile, Traversal,
};

/// Number of page slots per dart.
pub const SLOTS: usize = 3;
/// Decorations available at one vertex.
pub const DECORATIONS_PER_VERTEX: u64 = 18;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpineError {
    #[error("the singular graph is disconnected")]
    Disconnected,
    #[error("decoration shape mismatch: {0}")]
    Shape(String),
    #[error("edge {edge} does not exist (graph has {edge_count} edges)")]
    UnknownEdge { edge: usize, edge_count: usize },
    #[error("vertex {vertex} does not exist (graph has {vertex_count} vertices)")]
    UnknownVertex { vertex: usize, vertex_count: usize },
    #[error("a boundary curve is its own reversal (directed state {state})")]
    NonCoherentTrace { state: usize },
    #[error(transparent)]
    Graph(#[from] crate::graph::GraphError),
}

/// Local orientation of the vertex model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "i8", into = "i8")]
pub enum Chirality {
    Positive,
    Negative,
}

impl Chirality {
    pub fn sign(self) -> i8 {
        match self {
            Chirality::Positive => 1,
            Chirality::Negative => -1,
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            Chirality::Positive => Chirality::Negative,
            Chirality::Negative => Chirality::Positive,
        }
    }

    /// Chirality after composing with a permutation of sign `sign`.
    pub fn times(self, sign: i8) -> Self {
        if sign < 0 {
            self.flipped()
        } else {
            self
        }
    }
}

impl TryFrom<i8> for Chirality {
    type Error = String;

    fn try_from(value: i8) -> Result<Self, Self::Error> {
        match value {
            1 => Ok(Chirality::Positive),
            -1 => Ok(Chirality::Negative),
            other => Err(format!("chirality must be +1 or -1, got {other}")),
        }
    }
}

impl From<Chirality> for i8 {
    fn from(c: Chirality) -> i8 {
        c.sign()
    }
}

/// The three slots around the dart at `position`, in cyclic order, starting
/// from the smallest.
#[inline]
pub fn cyclic_slots(position: usize, chirality: Chirality) -> [usize; 3] {
    let others = other_positions(position);
    let ascending = (chirality == Chirality::Positive) == (position % 2 == 0);
    if ascending {
        others
    } else {
        [others[0], others[2], others[1]]
    }
}

#[inline]
pub(crate) fn other_positions(position: usize) -> [usize; 3] {
    match position {
        0 => [1, 2, 3],
        1 => [0, 2, 3],
        2 => [0, 1, 3],
        _ => [0, 1, 2],
    }
}

/// Index of `slot` among the ascending positions other than `position`.
#[inline]
pub(crate) fn slot_index(position: usize, slot: usize) -> usize {
    debug_assert_ne!(position, slot);
    if slot > position {
        slot - 1
    } else {
        slot
    }
}

/// Sign of a permutation of `0..4`.
pub(crate) fn permutation_sign(p: &[usize; 4]) -> i8 {
    let mut sign = 1;
    for i in 0..4 {
        for j in (i + 1)..4 {
            if p[i] > p[j] {
                sign = -sign;
            }
        }
    }
    sign
}

/// An oriented special spine: singular graph plus decoration.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "SpineRecord", into = "SpineRecord")]
pub struct Spine {
    graph: RegularGraph,
    chirality: Vec<Chirality>,
    gluing: Vec<u8>,
}

/// Wire form: `{"graph": <graph>, "chirality": [+-1, ...], "gluing": [0|1|2, ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpineRecord {
    pub graph: GraphRecord,
    pub chirality: Vec<i8>,
    pub gluing: Vec<u8>,
}

impl Spine {
    pub fn new(graph: RegularGraph, chirality: Vec<Chirality>, gluing: Vec<u8>) -> Result<Self, SpineError> {
        if !graph.is_connected() {
            return Err(SpineError::Disconnected);
        }
        if chirality.len() != graph.vertex_count() {
            return Err(SpineError::Shape(format!(
                "{} chirality entries for {} vertices",
                chirality.len(),
                graph.vertex_count()
            )));
        }
        if gluing.len() != graph.edge_count() {
            return Err(SpineError::Shape(format!("{} gluing entries for {} edges", gluing.len(), graph.edge_count())));
        }
        if let Some(bad) = gluing.iter().find(|&&g| g >= 3) {
            return Err(SpineError::Shape(format!("gluing parameter {bad} is not in Z/3")));
        }
        Ok(Spine { graph, chirality, gluing })
    }

    /// All chiralities `+1`, all gluings `0`.
    pub fn seed(graph: RegularGraph) -> Result<Self, SpineError> {
        let n = graph.vertex_count();
        let e = graph.edge_count();
        Spine::new(graph, vec![Chirality::Positive; n], vec![0; e])
    }

    /// Decoration number `index` in `0..18^n`: the low `n` bits pick
    /// chiralities (bit set = `-1`), the rest are base-3 gluing digits.
    pub fn from_decoration_index(graph: RegularGraph, index: u64) -> Result<Self, SpineError> {
        let n = graph.vertex_count();
        let mut rest = index;
        let chirality = (0..n)
            .map(|_| {
                let bit = rest & 1;
                rest >>= 1;
                if bit == 1 {
                    Chirality::Negative
                } else {
                    Chirality::Positive
                }
            })
            .collect();
        let gluing = (0..graph.edge_count())
            .map(|_| {
                let digit = (rest % 3) as u8;
                rest /= 3;
                digit
            })
            .collect();
        Spine::new(graph, chirality, gluing)
    }

    /// Overwrites the decoration with number `index` (see
    /// [`Spine::from_decoration_index`]).
    pub(crate) fn set_decoration_index(&mut self, index: u64) {
        let mut rest = index;
        for c in self.chirality.iter_mut() {
            *c = if rest & 1 == 1 { Chirality::Negative } else { Chirality::Positive };
            rest >>= 1;
        }
        for g in self.gluing.iter_mut() {
            *g = (rest % 3) as u8;
            rest /= 3;
        }
    }

    pub fn graph(&self) -> &RegularGraph {
        &self.graph
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    pub fn edge_count(&self) -> usize {
        self.graph.edge_count()
    }

    pub fn chirality(&self) -> &[Chirality] {
        &self.chirality
    }

    pub fn gluing(&self) -> &[u8] {
        &self.gluing
    }

    pub fn into_parts(self) -> (RegularGraph, Vec<Chirality>, Vec<u8>) {
        (self.graph, self.chirality, self.gluing)
    }

    /// Cyclic slot order around `dart`.
    #[inline]
    pub fn slots_around(&self, dart: usize) -> [usize; 3] {
        cyclic_slots(RegularGraph::position_of(dart), self.chirality[RegularGraph::vertex_of(dart)])
    }

    /// The page across the edge of `dart` that continues the page `(dart, slot)`.
    #[inline]
    pub fn page_partner(&self, dart: usize, slot: usize) -> (usize, usize) {
        let other = self.graph.partner(dart);
        let g = self.gluing[self.graph.edge_of_dart(dart)] as usize;
        let here = self.slots_around(dart);
        let k = here.iter().position(|&s| s == slot).expect("slot differs from the dart's position");
        let there = self.slots_around(other);
        (other, there[(g + SLOTS - k) % SLOTS])
    }

    pub fn check_edge(&self, edge: usize) -> Result<(), SpineError> {
        if edge >= self.edge_count() {
            return Err(SpineError::UnknownEdge { edge, edge_count: self.edge_count() });
        }
        Ok(())
    }

    /// One cyclic shift of the page matching along `edge`.
    pub fn rotate_edge(&self, edge: usize) -> Result<Spine, SpineError> {
        self.rotate_edge_by(edge, 1)
    }

    pub fn rotate_edge_by(&self, edge: usize, turns: u8) -> Result<Spine, SpineError> {
        self.check_edge(edge)?;
        let mut next = self.clone();
        next.gluing[edge] = (next.gluing[edge] + turns) % 3;
        Ok(next)
    }

    /// Replaces the chirality at `vertex`, keeping gluing parameters.
    pub fn with_chirality(&self, vertex: usize, chirality: Chirality) -> Result<Spine, SpineError> {
        if vertex >= self.vertex_count() {
            return Err(SpineError::UnknownVertex { vertex, vertex_count: self.vertex_count() });
        }
        let mut next = self.clone();
        next.chirality[vertex] = chirality;
        Ok(next)
    }

    pub fn with_gluing(&self, gluing: Vec<u8>) -> Result<Spine, SpineError> {
        Spine::new(self.graph.clone(), self.chirality.clone(), gluing)
    }

    /// The same oriented spine described in new labels: vertex `v` becomes
    /// `vertex_map[v]` and its local position `p` becomes `local[v][p]`.
    /// Chirality absorbs the sign of each local permutation, so the page
    /// matchings stay order-reversing.
    pub fn relabel(&self, vertex_map: &[usize], local: &[[usize; 4]]) -> Spine {
        let n = self.vertex_count();
        let graph = self.graph.relabel(vertex_map, local);
        let mut chirality = vec![Chirality::Positive; n];
        for v in 0..n {
            chirality[vertex_map[v]] = self.chirality[v].times(permutation_sign(&local[v]));
        }
        let mut inverse_vertex = vec![0; n];
        for (old, &new) in vertex_map.iter().enumerate() {
            inverse_vertex[new] = old;
        }
        let old_dart = |new_dart: usize| {
            let v = inverse_vertex[RegularGraph::vertex_of(new_dart)];
            let p = local[v].iter().position(|&q| q == RegularGraph::position_of(new_dart)).unwrap();
            (v, DEGREE * v + p)
        };
        let gluing = graph
            .edges()
            .iter()
            .map(|&[lower, upper]| {
                let (v, old_lower) = old_dart(lower);
                let (w, _) = old_dart(upper);
                let first = cyclic_slots(RegularGraph::position_of(lower), chirality[vertex_map[v]])[0];
                let old_slot = local[v].iter().position(|&q| q == first).unwrap();
                let (_, old_image) = self.page_partner(old_lower, old_slot);
                let image = local[w][old_image];
                let there = cyclic_slots(RegularGraph::position_of(upper), chirality[vertex_map[w]]);
                there.iter().position(|&s| s == image).unwrap() as u8
            })
            .collect();
        let relabeled = Spine { graph, chirality, gluing };
        debug_assert!(relabeled.matches_pages_of(self, vertex_map, local));
        relabeled
    }

    /// Checks that every page matching of `self` is the image of `original`'s.
    fn matches_pages_of(&self, original: &Spine, vertex_map: &[usize], local: &[[usize; 4]]) -> bool {
        (0..original.graph.dart_count()).all(|d| {
            let v = RegularGraph::vertex_of(d);
            let new_d = DEGREE * vertex_map[v] + local[v][RegularGraph::position_of(d)];
            other_positions(RegularGraph::position_of(d)).iter().all(|&s| {
                let (od, os) = original.page_partner(d, s);
                let w = RegularGraph::vertex_of(od);
                let expected = (DEGREE * vertex_map[w] + local[w][RegularGraph::position_of(od)], local[w][os]);
                self.page_partner(new_d, local[v][s]) == expected
            })
        })
    }

    pub fn to_record(&self) -> SpineRecord {
        SpineRecord {
            graph: self.graph.to_record(),
            chirality: self.chirality.iter().map(|c| c.sign()).collect(),
            gluing: self.gluing.clone(),
        }
    }
}

impl fmt::Debug for Spine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Spine")
            .field("pairs", &self.graph.edges())
            .field("chirality", &self.chirality.iter().map(|c| c.sign()).collect::<Vec<_>>())
            .field("gluing", &self.gluing)
            .finish()
    }
}

impl TryFrom<SpineRecord> for Spine {
    type Error = SpineError;

    fn try_from(record: SpineRecord) -> Result<Self, Self::Error> {
        let graph = RegularGraph::try_from(record.graph)?;
        let chirality = record
            .chirality
            .into_iter()
            .map(Chirality::try_from)
            .collect::<Result<Vec<_>, _>>()
            .map_err(SpineError::Shape)?;
        Spine::new(graph, chirality, record.gluing)
    }
}

impl From<Spine> for SpineRecord {
    fn from(s: Spine) -> Self {
        s.to_record()
    }
}

pub fn build_spine(graph: RegularGraph, chirality: Vec<Chirality>, gluing: Vec<u8>) -> Result<Spine, SpineError> {
    Spine::new(graph, chirality, gluing)
}

pub fn rotate_edge(spine: &Spine, edge: usize) -> Result<Spine, SpineError> {
    spine.rotate_edge(edge)
}

/// `18^n` if it fits in a `u64`.
pub fn decoration_count(vertex_count: usize) -> Option<u64> {
    DECORATIONS_PER_VERTEX.checked_pow(u32::try_from(vertex_count).ok()?)
}

/// Every decoration of `graph`, in decoration-index order.
pub fn all_decorations(graph: &RegularGraph) -> impl Iterator<Item = Spine> + '_ {
    let total = decoration_count(graph.vertex_count()).expect("decoration count fits in u64");
    (0..total).map(move |i| Spine::from_decoration_index(graph.clone(), i).expect("connected graph"))
}
