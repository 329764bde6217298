//! Dual ideal triangulations.
//!
//! Each spine vertex is a tetrahedron, the dart at local position `i` is the
//! face opposite tetrahedron vertex `i`, and the page slot `j` at that dart is
//! the face's corner `j`. Edges of the spine become face pairings whose corner
//! identification is one of the three matchings that reverse the induced
//! boundary orientation of the two faces. The edge-class count below works on
//! tetrahedron edges with its own union-find and never consults the spine's
//! boundary tracing.
//!
//! # Gluing-table format
//!
//! ```json
//! {"schema_version": 1, "tets": 2, "orientation": [1, -1],
//!  "gluings": [[0, 0, 1, 2, 1], ...]}
//! ```
//!
//! Each gluing `[t, f, t', f', m]` is listed once with `(t, f) < (t', f')`.
//! Corners of face `f` of a tetrahedron of orientation `o` are listed
//! cyclically as the boundary orientation induced on that face (ascending
//! for `o * (-1)^f = +1`, otherwise descending), starting from the smallest
//! corner. Matching `m` sends the corner at cyclic index `k` of `(t, f)` to
//! the corner at cyclic index `(m - k) mod 3` of `(t', f')`. A missing
//! `orientation` means every tetrahedron is positively oriented.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::RegularGraph;
use crate::spine::{Chirality, Spine};

pub const TABLE_SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TriangulationError {
    #[error("invalid gluing table: {0}")]
    Validation(String),
}

fn invalid(msg: impl Into<String>) -> TriangulationError {
    TriangulationError::Validation(msg.into())
}

/// One face pairing `[t, f, t', f', m]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "[usize; 5]", into = "[usize; 5]")]
pub struct FaceGluing {
    pub tet: usize,
    pub face: usize,
    pub other_tet: usize,
    pub other_face: usize,
    pub matching: u8,
}

impl From<[usize; 5]> for FaceGluing {
    fn from([tet, face, other_tet, other_face, m]: [usize; 5]) -> Self {
        FaceGluing { tet, face, other_tet, other_face, matching: m.min(255) as u8 }
    }
}

impl From<FaceGluing> for [usize; 5] {
    fn from(g: FaceGluing) -> Self {
        [g.tet, g.face, g.other_tet, g.other_face, g.matching as usize]
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GluingTable {
    #[serde(default = "schema_version")]
    pub schema_version: u32,
    pub tets: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orientation: Option<Vec<i8>>,
    pub gluings: Vec<FaceGluing>,
}

fn schema_version() -> u32 {
    TABLE_SCHEMA_VERSION
}

/// Corners of face `face` in the cyclic order induced from a tetrahedron of
/// orientation `sign`: the boundary of `[0 1 2 3]` is
/// `[1 2 3] - [0 2 3] + [0 1 3] - [0 1 2]`.
fn face_corners(face: usize, sign: i8) -> [usize; 3] {
    let mut corners = [0; 3];
    let mut k = 0;
    for v in 0..4 {
        if v != face {
            corners[k] = v;
            k += 1;
        }
    }
    let induced = if face % 2 == 0 { sign } else { -sign };
    if induced < 0 {
        corners.swap(1, 2);
    }
    corners
}

impl GluingTable {
    fn sign(&self, tet: usize) -> i8 {
        self.orientation.as_ref().map_or(1, |o| o[tet])
    }

    /// Corner map of a face pairing: `map[c]` is the image of corner `c` of
    /// `(tet, face)` on `(other_tet, other_face)`; `map[face]` is unused.
    pub fn corner_map(&self, gluing: &FaceGluing) -> [usize; 4] {
        let here = face_corners(gluing.face, self.sign(gluing.tet));
        let there = face_corners(gluing.other_face, self.sign(gluing.other_tet));
        let mut map = [usize::MAX; 4];
        for (k, &c) in here.iter().enumerate() {
            map[c] = there[(gluing.matching as usize + 3 - k) % 3];
        }
        map
    }

    pub fn validate(&self) -> Result<(), TriangulationError> {
        if self.tets == 0 {
            return Err(invalid("a table needs at least one tetrahedron"));
        }
        if let Some(o) = &self.orientation {
            if o.len() != self.tets {
                return Err(invalid(format!("{} orientation entries for {} tetrahedra", o.len(), self.tets)));
            }
            if o.iter().any(|&s| s != 1 && s != -1) {
                return Err(invalid("orientation entries must be +1 or -1"));
            }
        }
        let mut used = vec![false; 4 * self.tets];
        for g in &self.gluings {
            if g.tet >= self.tets || g.other_tet >= self.tets || g.face > 3 || g.other_face > 3 {
                return Err(invalid(format!("gluing {:?} is out of range", <[usize; 5]>::from(*g))));
            }
            if g.matching > 2 {
                return Err(invalid(format!("matching {} is not one of the 3 orientation-reversing maps", g.matching)));
            }
            if (g.tet, g.face) == (g.other_tet, g.other_face) {
                return Err(invalid(format!("face {} of tetrahedron {} is glued to itself", g.face, g.tet)));
            }
            for (t, f) in [(g.tet, g.face), (g.other_tet, g.other_face)] {
                if std::mem::replace(&mut used[4 * t + f], true) {
                    return Err(invalid(format!("face {f} of tetrahedron {t} is glued twice")));
                }
            }
        }
        if let Some(free) = used.iter().position(|&u| !u) {
            return Err(invalid(format!("face {} of tetrahedron {} is unglued", free % 4, free / 4)));
        }
        Ok(())
    }
}

/// The dual table of a spine.
pub fn to_triangulation(spine: &Spine) -> GluingTable {
    let gluings = spine
        .graph()
        .edges()
        .iter()
        .zip(spine.gluing())
        .map(|(&[lower, upper], &m)| FaceGluing {
            tet: RegularGraph::vertex_of(lower),
            face: RegularGraph::position_of(lower),
            other_tet: RegularGraph::vertex_of(upper),
            other_face: RegularGraph::position_of(upper),
            matching: m,
        })
        .collect();
    GluingTable {
        schema_version: TABLE_SCHEMA_VERSION,
        tets: spine.vertex_count(),
        orientation: Some(spine.chirality().iter().map(|c| c.sign()).collect()),
        gluings,
    }
}

/// Inverse of [`to_triangulation`]. Gluings may be listed in any order and
/// either direction; a reversed entry has its matching re-expressed from the
/// lower face.
pub fn from_triangulation(table: &GluingTable) -> Result<Spine, TriangulationError> {
    table.validate()?;
    let n = table.tets;
    let mut pairs = Vec::with_capacity(2 * n);
    let mut matchings = std::collections::BTreeMap::new();
    for g in &table.gluings {
        let a = 4 * g.tet + g.face;
        let b = 4 * g.other_tet + g.other_face;
        let normalized = if a < b {
            *g
        } else {
            // reverse the pairing; the matching formula k -> m - k is symmetric
            FaceGluing {
                tet: g.other_tet,
                face: g.other_face,
                other_tet: g.tet,
                other_face: g.face,
                matching: g.matching,
            }
        };
        pairs.push([a.min(b), a.max(b)]);
        matchings.insert(a.min(b), normalized.matching);
    }
    let graph = RegularGraph::new(n, &pairs).map_err(|e| invalid(e.to_string()))?;
    let chirality = (0..n).map(|t| if table.sign(t) > 0 { Chirality::Positive } else { Chirality::Negative }).collect();
    let gluing = graph.edges().iter().map(|[lower, _]| matchings[lower]).collect();
    Spine::new(graph, chirality, gluing).map_err(|e| invalid(e.to_string()))
}

/// Edge classes of a table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeClassReport {
    pub classes: usize,
    pub class_sizes: Vec<usize>,
    /// Classes in which some edge is identified with itself reversed.
    pub reversed_classes: usize,
}

/// Tetrahedron edge `{a, b}` as an index in `0..6`.
fn edge_slot(a: usize, b: usize) -> usize {
    let (a, b) = if a < b { (a, b) } else { (b, a) };
    match (a, b) {
        (0, 1) => 0,
        (0, 2) => 1,
        (0, 3) => 2,
        (1, 2) => 3,
        (1, 3) => 4,
        _ => 5,
    }
}

/// Union-find with path compression; each node carries the parity of its
/// orientation relative to its parent.
struct ParityUnionFind {
    parent: Vec<usize>,
    parity: Vec<bool>,
}

impl ParityUnionFind {
    fn new(n: usize) -> Self {
        ParityUnionFind { parent: (0..n).collect(), parity: vec![false; n] }
    }

    fn find(&mut self, x: usize) -> (usize, bool) {
        let p = self.parent[x];
        if p == x {
            return (x, false);
        }
        let (root, up) = self.find(p);
        self.parent[x] = root;
        self.parity[x] ^= up;
        (root, self.parity[x])
    }

    /// Joins `x` and `y` with relative parity `flip`; returns false when they
    /// were already joined with the opposite parity.
    fn union(&mut self, x: usize, y: usize, flip: bool) -> bool {
        let (rx, px) = self.find(x);
        let (ry, py) = self.find(y);
        if rx == ry {
            return px ^ py == flip;
        }
        // keep the smaller index as root for deterministic class numbering
        let (root, child) = if rx < ry { (rx, ry) } else { (ry, rx) };
        self.parent[child] = root;
        self.parity[child] = px ^ py ^ flip;
        true
    }
}

pub fn edge_class_report(table: &GluingTable) -> EdgeClassReport {
    let mut uf = ParityUnionFind::new(6 * table.tets);
    let mut conflicted = Vec::new();
    for g in &table.gluings {
        let map = table.corner_map(g);
        for a in 0..4 {
            for b in (a + 1)..4 {
                if a == g.face || b == g.face {
                    continue;
                }
                let (ia, ib) = (map[a], map[b]);
                // orientation a->b maps to ia->ib; flip when that is descending
                let flip = ia > ib;
                let x = 6 * g.tet + edge_slot(a, b);
                let y = 6 * g.other_tet + edge_slot(ia, ib);
                if !uf.union(x, y, flip) {
                    conflicted.push(x);
                }
            }
        }
    }
    let mut sizes = std::collections::BTreeMap::new();
    for x in 0..6 * table.tets {
        *sizes.entry(uf.find(x).0).or_insert(0usize) += 1;
    }
    let mut reversed: Vec<usize> = conflicted.into_iter().map(|x| uf.find(x).0).collect();
    reversed.sort_unstable();
    reversed.dedup();
    EdgeClassReport {
        classes: sizes.len(),
        class_sizes: sizes.into_values().collect(),
        reversed_classes: reversed.len(),
    }
}

/// Number of edges of the triangulation after identification.
pub fn count_edge_classes(table: &GluingTable) -> usize {
    edge_class_report(table).classes
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spine::all_decorations;

    fn two_loops() -> RegularGraph {
        RegularGraph::new(1, &[[0, 1], [2, 3]]).unwrap()
    }

    #[test]
    fn face_orders_match_boundary_formula() {
        assert_eq!(face_corners(0, 1), [1, 2, 3]);
        assert_eq!(face_corners(1, 1), [0, 3, 2]);
        assert_eq!(face_corners(2, 1), [0, 1, 3]);
        assert_eq!(face_corners(3, 1), [0, 2, 1]);
        assert_eq!(face_corners(0, -1), [1, 3, 2]);
    }

    #[test]
    fn round_trip_and_counts() {
        for s in all_decorations(&two_loops()) {
            let t = to_triangulation(&s);
            assert_eq!(t.tets, 1);
            assert_eq!(t.gluings.len(), 2);
            assert_eq!(from_triangulation(&t).unwrap(), s);
            let report = edge_class_report(&t);
            assert_eq!(report.class_sizes.iter().sum::<usize>(), 6);
            assert_eq!(report.reversed_classes, 0);
        }
    }

    #[test]
    fn rejects_bad_tables() {
        let self_glued = GluingTable {
            schema_version: 1,
            tets: 1,
            orientation: None,
            gluings: vec![[0, 0, 0, 0, 0].into(), [0, 1, 0, 2, 0].into()],
        };
        assert!(matches!(from_triangulation(&self_glued), Err(TriangulationError::Validation(_))));
        let twice = GluingTable {
            schema_version: 1,
            tets: 1,
            orientation: None,
            gluings: vec![[0, 0, 0, 1, 0].into(), [0, 1, 0, 2, 0].into()],
        };
        assert!(from_triangulation(&twice).is_err());
        let bad_map = GluingTable {
            schema_version: 1,
            tets: 1,
            orientation: None,
            gluings: vec![[0, 0, 0, 1, 3].into(), [0, 2, 0, 3, 0].into()],
        };
        assert!(from_triangulation(&bad_map).is_err());
        let open = GluingTable { schema_version: 1, tets: 1, orientation: None, gluings: vec![[0, 0, 0, 1, 0].into()] };
        assert!(from_triangulation(&open).is_err());
    }

    #[test]
    fn reversed_listing_is_accepted() {
        let s = all_decorations(&two_loops()).nth(11).unwrap();
        let mut t = to_triangulation(&s);
        for g in &mut t.gluings {
            *g = FaceGluing {
                tet: g.other_tet,
                face: g.other_face,
                other_tet: g.tet,
                other_face: g.face,
                matching: g.matching,
            };
        }
        t.gluings.reverse();
        assert_eq!(from_triangulation(&t).unwrap(), s);
    }

    #[test]
    fn json_shape() {
        let s = all_decorations(&two_loops()).next().unwrap();
        let text = serde_json::to_string(&to_triangulation(&s)).unwrap();
        assert_eq!(text, r#"{"schema_version":1,"tets":1,"orientation":[1],"gluings":[[0,0,0,1,0],[0,2,0,3,0]]}"#);
        let minimal: GluingTable = serde_json::from_str(r#"{"tets":1,"gluings":[[0,0,0,1,0],[0,2,0,3,0]]}"#).unwrap();
        assert_eq!(from_triangulation(&minimal).unwrap(), s);
    }
}
