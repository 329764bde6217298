//! Vertex propagation moves for a spine stuck above two cells.
//!
//! For two cells `f1`, `f2` let `U` be the vertices all of whose corners lie
//! in `f1` or `f2`. At a vertex `O` of `U` with an edge `OA` in both cells and
//! an edge `OC` in `f1` only, the corners of `f2` among `AOB`, `AOD`, `BOD`
//! fix one of four cases; cases 1 to 3 suggest rotating `OB` or `OA`, case 4
//! is skipped. Vertices closer to the complement of `U` are tried first.

use std::collections::{HashSet, VecDeque};

use super::{find_reducing_rotation, Rule, Run};
use crate::graph::{RegularGraph, DEGREE};
use crate::spine::{cell_count, page_cell, trace_cells, CellDecomposition, Spine};

/// Makes count-neutral moves until some rotation lowers the count. Returns
/// `false`, leaving `run` untouched, if `max_moves` moves do not get there.
pub(crate) fn propagate(run: &mut Run, max_moves: usize) -> bool {
    let saved_spine = run.spine.clone();
    let saved_cells = run.cells;
    let saved_steps = run.trace.steps.len();
    let mut visited = HashSet::from([run.spine.gluing().to_vec()]);
    for _ in 0..max_moves {
        let Some((edge, turns, rule)) = next_move(&run.spine, run.cells, &visited) else {
            break;
        };
        run.rotate(edge, turns, rule);
        visited.insert(run.spine.gluing().to_vec());
        if run.cells < saved_cells || find_reducing_rotation(&run.spine).is_some() {
            return true;
        }
    }
    run.spine = saved_spine;
    run.cells = saved_cells;
    run.trace.steps.truncate(saved_steps);
    false
}

fn next_move(spine: &Spine, current: usize, visited: &HashSet<Vec<u8>>) -> Option<(usize, u8, Rule)> {
    let cells = trace_cells(spine).ok()?;
    let count = cells.cell_count();
    let n = spine.vertex_count();
    let corner = |v: usize, p: usize, q: usize| page_cell(spine, &cells, DEGREE * v + p, q);
    for f1 in 0..count {
        for f2 in 0..count {
            if f1 == f2 {
                continue;
            }
            let in_u: Vec<bool> =
                (0..n).map(|v| (0..4).all(|p| ((p + 1)..4).all(|q| [f1, f2].contains(&corner(v, p, q))))).collect();
            for o in ordered_by_exit_distance(spine.graph(), &in_u) {
                let Some((edge, rule)) = classify(spine, &cells, o, f1, f2) else {
                    continue;
                };
                for turns in 1..=2u8 {
                    let next = spine.rotate_edge_by(edge, turns).expect("edge in range");
                    if cell_count(&next) <= current && !visited.contains(next.gluing()) {
                        return Some((edge, turns, rule));
                    }
                }
            }
        }
    }
    None
}

/// Vertices of `U` by distance to the nearest vertex outside `U`, then index.
fn ordered_by_exit_distance(g: &RegularGraph, in_u: &[bool]) -> Vec<usize> {
    let n = g.vertex_count();
    let mut dist = vec![usize::MAX; n];
    let mut queue: VecDeque<usize> = (0..n).filter(|&v| !in_u[v]).collect();
    for &v in &queue {
        dist[v] = 0;
    }
    while let Some(v) = queue.pop_front() {
        for p in 0..DEGREE {
            let w = RegularGraph::vertex_of(g.partner(DEGREE * v + p));
            if dist[w] == usize::MAX {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
        }
    }
    let mut order: Vec<usize> = (0..n).filter(|&v| in_u[v]).collect();
    order.sort_by_key(|&v| (dist[v], v));
    order
}

/// The suggested edge and case at `o`, with `f1` the cell owning `OC`.
fn classify(spine: &Spine, cells: &CellDecomposition, o: usize, f1: usize, f2: usize) -> Option<(usize, Rule)> {
    let corner = |p: usize, q: usize| page_cell(spine, cells, DEGREE * o + p, q);
    let cells_at = |p: usize| {
        let mut set: Vec<usize> = (0..4).filter(|&q| q != p).map(|q| corner(p, q)).collect();
        set.sort_unstable();
        set.dedup();
        set
    };
    let mut both = [f1, f2];
    both.sort_unstable();
    let a = (0..4).find(|&p| cells_at(p) == both)?;
    let c = (0..4).find(|&p| p != a && cells_at(p) == [f1])?;
    let mut rest = (0..4).filter(|&p| p != a && p != c);
    let (mut b, mut d) = (rest.next()?, rest.next()?);
    if corner(a, b) != f2 {
        std::mem::swap(&mut b, &mut d);
    }
    let ad = corner(a, d) == f2;
    let bd = corner(b, d) == f2;
    let edge_at = |p: usize| spine.graph().edge_of_dart(DEGREE * o + p);
    match (ad, bd) {
        (false, false) => Some((edge_at(b), Rule::VertexCase1)),
        (true, false) => Some((edge_at(a), Rule::VertexCase2)),
        (false, true) => Some((edge_at(a), Rule::VertexCase3)),
        (true, true) => None,
    }
}
