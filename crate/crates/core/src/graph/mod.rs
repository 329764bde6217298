//! Dart-based 4-regular multigraphs.
//!
//! A graph on `n` vertices owns the darts `0..4n`; dart `d` sits at vertex
//! `d / 4` in local position `d % 4`. Edges are the orbits of a fixed-point-free
//! involution on darts, so loops (both darts at one vertex) and parallel edges
//! are representable. Edges are indexed by ascending lower dart.

mod canon;
mod enumerate;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use canon::{canonical_form, CanonicalCode};
pub use enumerate::{
    enumerate_a, enumerate_a_with_limit, enumerate_c, enumerate_c_with_limit, DEFAULT_A_LIMIT, DEFAULT_C_LIMIT,
};

/// Valence of every vertex.
pub const DEGREE: usize = 4;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("a graph needs at least one vertex")]
    NoVertices,
    #[error("dart {dart} is out of range for {vertex_count} vertices")]
    DartOutOfRange { dart: usize, vertex_count: usize },
    #[error("dart {dart} appears {count} times in the pairing (expected exactly once)")]
    Degree { dart: usize, count: usize },
    #[error("dart {dart} is paired with itself")]
    SelfPair { dart: usize },
    #[error("enumeration of class {class} is limited to n <= {limit}, requested n = {n}")]
    Limit { class: char, n: usize, limit: usize },
}

/// A 4-regular multigraph given by its dart pairing.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "GraphRecord", into = "GraphRecord")]
pub struct RegularGraph {
    vertex_count: usize,
    pairing: Vec<usize>,
    edges: Vec<[usize; 2]>,
    edge_of_dart: Vec<usize>,
}

/// Wire form of a graph: `{"n": int, "pairs": [[d, d'], ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphRecord {
    pub n: usize,
    pub pairs: Vec<[usize; 2]>,
}

impl RegularGraph {
    /// Validates a list of dart pairs covering `0..4n` exactly once.
    pub fn new(vertex_count: usize, pairs: &[[usize; 2]]) -> Result<Self, GraphError> {
        if vertex_count == 0 {
            return Err(GraphError::NoVertices);
        }
        let dart_count = DEGREE * vertex_count;
        let mut pairing = vec![usize::MAX; dart_count];
        let mut seen = vec![0usize; dart_count];
        for &[a, b] in pairs {
            for d in [a, b] {
                if d >= dart_count {
                    return Err(GraphError::DartOutOfRange { dart: d, vertex_count });
                }
            }
            if a == b {
                return Err(GraphError::SelfPair { dart: a });
            }
            seen[a] += 1;
            seen[b] += 1;
            pairing[a] = b;
            pairing[b] = a;
        }
        if let Some((dart, &count)) = seen.iter().enumerate().find(|(_, &c)| c != 1) {
            return Err(GraphError::Degree { dart, count });
        }
        Ok(Self::from_pairing_unchecked(vertex_count, pairing))
    }

    /// Builds from a full involution array `pairing[d] = partner of d`.
    pub fn from_pairing(pairing: Vec<usize>) -> Result<Self, GraphError> {
        if pairing.is_empty() || pairing.len() % DEGREE != 0 {
            return Err(GraphError::Degree { dart: pairing.len(), count: 0 });
        }
        let vertex_count = pairing.len() / DEGREE;
        let pairs: Vec<[usize; 2]> =
            pairing.iter().enumerate().filter(|&(d, &p)| d <= p).map(|(d, &p)| [d, p]).collect();
        // Every dart must show up in exactly one pair, which also rejects
        // non-involutive arrays.
        let g = Self::new(vertex_count, &pairs)?;
        if g.pairing != pairing {
            let dart = (0..pairing.len()).find(|&d| g.pairing[d] != pairing[d]).unwrap_or(0);
            return Err(GraphError::Degree { dart, count: 2 });
        }
        Ok(g)
    }

    fn from_pairing_unchecked(vertex_count: usize, pairing: Vec<usize>) -> Self {
        debug_assert!(pairing.iter().enumerate().all(|(d, &p)| p != d && pairing[p] == d));
        let mut edges = Vec::with_capacity(2 * vertex_count);
        let mut edge_of_dart = vec![0; pairing.len()];
        for (d, &p) in pairing.iter().enumerate() {
            if d < p {
                edge_of_dart[d] = edges.len();
                edge_of_dart[p] = edges.len();
                edges.push([d, p]);
            }
        }
        assert_eq!(edges.len(), 2 * vertex_count, "a 4-regular graph has exactly 2n edges");
        RegularGraph { vertex_count, pairing, edges, edge_of_dart }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn dart_count(&self) -> usize {
        self.pairing.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    #[inline]
    pub fn partner(&self, dart: usize) -> usize {
        self.pairing[dart]
    }

    pub fn pairing(&self) -> &[usize] {
        &self.pairing
    }

    /// Edges as `[lower dart, upper dart]`, ordered by lower dart.
    pub fn edges(&self) -> &[[usize; 2]] {
        &self.edges
    }

    #[inline]
    pub fn edge(&self, index: usize) -> [usize; 2] {
        self.edges[index]
    }

    #[inline]
    pub fn edge_of_dart(&self, dart: usize) -> usize {
        self.edge_of_dart[dart]
    }

    #[inline]
    pub fn vertex_of(dart: usize) -> usize {
        dart / DEGREE
    }

    #[inline]
    pub fn position_of(dart: usize) -> usize {
        dart % DEGREE
    }

    /// The four edges at `vertex`, one per local position (a loop shows up twice).
    pub fn incident_edges(&self, vertex: usize) -> [usize; 4] {
        std::array::from_fn(|p| self.edge_of_dart[DEGREE * vertex + p])
    }

    pub fn is_loop(&self, edge: usize) -> bool {
        let [a, b] = self.edges[edge];
        Self::vertex_of(a) == Self::vertex_of(b)
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertex_count;
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut reached = 1;
        while let Some(v) = stack.pop() {
            for p in 0..DEGREE {
                let w = Self::vertex_of(self.pairing[DEGREE * v + p]);
                if !seen[w] {
                    seen[w] = true;
                    reached += 1;
                    stack.push(w);
                }
            }
        }
        reached == n
    }

    /// True when the graph has no loops and no repeated edges.
    pub fn is_simple(&self) -> bool {
        let m = self.multiplicity_matrix();
        (0..self.vertex_count).all(|i| (0..self.vertex_count).all(|j| m[i][j] <= 1 && (i != j || m[i][i] == 0)))
    }

    /// `m[i][j]` = number of edges joining `i` and `j`; the diagonal counts loops.
    pub fn multiplicity_matrix(&self) -> Vec<Vec<u8>> {
        let n = self.vertex_count;
        let mut m = vec![vec![0u8; n]; n];
        for &[a, b] in &self.edges {
            let (u, v) = (Self::vertex_of(a), Self::vertex_of(b));
            m[u][v] += 1;
            if u != v {
                m[v][u] += 1;
            }
        }
        m
    }

    /// Deterministic dart assignment for a multiplicity matrix: pairs `(i, j)`
    /// with `i <= j` are processed lexicographically and each edge takes the
    /// next free dart at both ends.
    pub fn from_multiplicities(m: &[Vec<u8>]) -> Result<Self, GraphError> {
        let n = m.len();
        if n == 0 {
            return Err(GraphError::NoVertices);
        }
        let mut next = vec![0usize; n];
        let mut pairs = Vec::with_capacity(2 * n);
        let take = |v: usize, next: &mut Vec<usize>| -> Result<usize, GraphError> {
            if next[v] >= DEGREE {
                return Err(GraphError::Degree { dart: DEGREE * v + DEGREE - 1, count: 2 });
            }
            next[v] += 1;
            Ok(DEGREE * v + next[v] - 1)
        };
        for i in 0..n {
            for j in i..n {
                for _ in 0..m[i][j] {
                    let a = take(i, &mut next)?;
                    let b = take(j, &mut next)?;
                    pairs.push([a, b]);
                }
            }
        }
        Self::new(n, &pairs)
    }

    pub fn to_record(&self) -> GraphRecord {
        GraphRecord { n: self.vertex_count, pairs: self.edges.clone() }
    }

    /// Applies a vertex permutation `vertex_map[old] = new` and local dart
    /// permutations `local[old][old position] = new position`.
    pub fn relabel(&self, vertex_map: &[usize], local: &[[usize; 4]]) -> RegularGraph {
        let image = |d: usize| {
            let v = Self::vertex_of(d);
            DEGREE * vertex_map[v] + local[v][Self::position_of(d)]
        };
        let mut pairing = vec![0; self.pairing.len()];
        for (d, &p) in self.pairing.iter().enumerate() {
            pairing[image(d)] = image(p);
        }
        Self::from_pairing_unchecked(self.vertex_count, pairing)
    }
}

impl TryFrom<GraphRecord> for RegularGraph {
    type Error = GraphError;

    fn try_from(record: GraphRecord) -> Result<Self, Self::Error> {
        RegularGraph::new(record.n, &record.pairs)
    }
}

impl From<RegularGraph> for GraphRecord {
    fn from(g: RegularGraph) -> Self {
        g.to_record()
    }
}

/// Convenience free function mirroring [`RegularGraph::new`].
pub fn build_graph(vertex_count: usize, pairs: &[[usize; 2]]) -> Result<RegularGraph, GraphError> {
    RegularGraph::new(vertex_count, pairs)
}

pub fn is_connected(g: &RegularGraph) -> bool {
    g.is_connected()
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn two_loops() -> RegularGraph {
        RegularGraph::new(1, &[[0, 1], [2, 3]]).unwrap()
    }

    #[test]
    fn smallest_multigraph() {
        let g = two_loops();
        assert_eq!(g.vertex_count(), 1);
        assert_eq!(g.edge_count(), 2);
        assert!(g.is_loop(0) && g.is_loop(1));
        assert!(g.is_connected());
        assert!(!g.is_simple());
    }

    #[test]
    fn four_parallel_edges() {
        let g = RegularGraph::new(2, &[[0, 4], [1, 5], [2, 6], [3, 7]]).unwrap();
        assert_eq!(g.multiplicity_matrix(), vec![vec![0, 4], vec![4, 0]]);
        assert!(g.is_connected());
    }

    #[test]
    fn rejects_bad_pairings() {
        assert_eq!(RegularGraph::new(1, &[[0, 1], [2, 2]]), Err(GraphError::SelfPair { dart: 2 }));
        assert_eq!(RegularGraph::new(1, &[[0, 1], [1, 2]]), Err(GraphError::Degree { dart: 1, count: 2 }));
        assert_eq!(RegularGraph::new(1, &[[0, 1]]), Err(GraphError::Degree { dart: 2, count: 0 }));
        assert!(matches!(RegularGraph::new(1, &[[0, 1], [2, 9]]), Err(GraphError::DartOutOfRange { .. })));
        assert_eq!(RegularGraph::new(0, &[]), Err(GraphError::NoVertices));
    }

    #[test]
    fn disconnected_union() {
        let g = RegularGraph::new(2, &[[0, 1], [2, 3], [4, 5], [6, 7]]).unwrap();
        assert!(!g.is_connected());
    }

    #[test]
    fn json_record_round_trip() {
        let g = RegularGraph::new(2, &[[0, 4], [1, 5], [2, 3], [6, 7]]).unwrap();
        let text = serde_json::to_string(&g).unwrap();
        assert_eq!(text, r#"{"n":2,"pairs":[[0,4],[1,5],[2,3],[6,7]]}"#);
        let back: RegularGraph = serde_json::from_str(&text).unwrap();
        assert_eq!(back, g);
        let bad: Result<RegularGraph, _> = serde_json::from_str(r#"{"n":1,"pairs":[[0,1],[2,2]]}"#);
        assert!(bad.is_err());
    }

    #[test]
    fn multiplicities_round_trip() {
        let m = vec![vec![1, 2, 0], vec![2, 0, 2], vec![0, 2, 1]];
        let g = RegularGraph::from_multiplicities(&m).unwrap();
        assert_eq!(g.multiplicity_matrix(), m);
        assert!(g.is_connected());
    }
}
