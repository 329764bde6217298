//! Canonical codes for spines up to orientation-preserving isomorphism.
//!
//! At a vertex the orientation-preserving symmetries of the tetrahedral model
//! act simply transitively on flags (dart, slot), so a flag fixes the local
//! labeling completely. Starting from one flag, a breadth-first sweep carries
//! a flag across every edge through the page matching and so determines a
//! full relabeling. The code is the minimum encoding over all `12n` starting
//! flags.

use super::{other_positions, permutation_sign, Chirality, Spine};
use crate::graph::{CanonicalCode, RegularGraph, DEGREE};

pub fn canonical_spine(spine: &Spine) -> CanonicalCode {
    canonical_representative(spine).0
}

/// The minimal code together with the relabeled spine it encodes (all
/// chiralities `+1`).
pub fn canonical_representative(spine: &Spine) -> (CanonicalCode, Spine) {
    let mut best: Option<(Vec<u8>, Spine)> = None;
    for dart in 0..spine.graph().dart_count() {
        for slot in other_positions(RegularGraph::position_of(dart)) {
            let (vertex_map, local) = labeling_from_flag(spine, dart, slot);
            let relabeled = spine.relabel(&vertex_map, &local);
            let code = encode(&relabeled);
            if best.as_ref().map_or(true, |(b, _)| code < *b) {
                best = Some((code, relabeled));
            }
        }
    }
    let (code, representative) = best.expect("a spine has at least one flag");
    (CanonicalCode(code), representative)
}

/// Local relabeling sending the flag to positions `(0, 1)` with chirality `+1`.
fn local_from_flag(chirality: Chirality, position: usize, slot: usize) -> [usize; 4] {
    let mut map = [0; 4];
    map[position] = 0;
    map[slot] = 1;
    let rest: Vec<usize> = (0..4).filter(|&q| q != position && q != slot).collect();
    map[rest[0]] = 2;
    map[rest[1]] = 3;
    if chirality.times(permutation_sign(&map)) != Chirality::Positive {
        map.swap(rest[0], rest[1]);
    }
    map
}

fn labeling_from_flag(spine: &Spine, dart: usize, slot: usize) -> (Vec<usize>, Vec<[usize; 4]>) {
    let n = spine.vertex_count();
    let mut vertex_map = vec![usize::MAX; n];
    let mut local = vec![[0; 4]; n];
    let start = RegularGraph::vertex_of(dart);
    vertex_map[start] = 0;
    local[start] = local_from_flag(spine.chirality()[start], RegularGraph::position_of(dart), slot);
    let mut order = vec![start];
    let mut next = 0;
    while next < order.len() {
        let v = order[next];
        next += 1;
        let mut by_new = [0; 4];
        for (old, &new) in local[v].iter().enumerate() {
            by_new[new] = old;
        }
        for &old_position in &by_new {
            let d = DEGREE * v + old_position;
            let w = RegularGraph::vertex_of(spine.graph().partner(d));
            if vertex_map[w] != usize::MAX {
                continue;
            }
            let lowest = *other_positions(old_position).iter().min_by_key(|&&s| local[v][s]).expect("three slots");
            let (across, across_slot) = spine.page_partner(d, lowest);
            vertex_map[w] = order.len();
            local[w] = local_from_flag(spine.chirality()[w], RegularGraph::position_of(across), across_slot);
            order.push(w);
        }
    }
    debug_assert_eq!(order.len(), n, "spines are connected");
    (vertex_map, local)
}

fn encode(spine: &Spine) -> Vec<u8> {
    let mut code = Vec::with_capacity(2 + 5 * spine.edge_count());
    code.extend_from_slice(&(spine.vertex_count() as u16).to_be_bytes());
    for (edge, &[lower, upper]) in spine.graph().edges().iter().enumerate() {
        code.extend_from_slice(&(lower as u16).to_be_bytes());
        code.extend_from_slice(&(upper as u16).to_be_bytes());
        code.push(spine.gluing()[edge]);
    }
    code
}
