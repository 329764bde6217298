//! Isomorph-free enumeration of connected 4-regular graphs.
//!
//! Both classes are generated as labeled adjacency (multiplicity) matrices by
//! row-wise backtracking, deduplicated by canonical code, and emitted in code
//! order. Work is split on the first branching row and merged through ordered
//! sets, so the output does not depend on the worker count.

use std::collections::BTreeSet;

use rayon::prelude::*;

use super::canon::{canonical_matrix_code, matrix_from_code, CanonicalCode};
use super::{GraphError, RegularGraph, DEGREE};

pub const DEFAULT_A_LIMIT: usize = 8;
pub const DEFAULT_C_LIMIT: usize = 6;

/// Connected simple 4-regular graphs on `n` vertices, one per isomorphism class.
pub fn enumerate_a(n: usize) -> Result<Vec<RegularGraph>, GraphError> {
    enumerate_a_with_limit(n, DEFAULT_A_LIMIT)
}

pub fn enumerate_a_with_limit(n: usize, limit: usize) -> Result<Vec<RegularGraph>, GraphError> {
    if n > limit {
        return Err(GraphError::Limit { class: 'A', n, limit });
    }
    if n < DEGREE + 1 {
        return Ok(Vec::new());
    }
    // Relabel so that vertex 0 is adjacent to 1..=4.
    let mut root = vec![vec![0u8; n]; n];
    for j in 1..=DEGREE {
        root[0][j] = 1;
        root[j][0] = 1;
    }
    let mut partials = Vec::new();
    simple_rows(root, 1, &mut |m| partials.push(m), true);
    let codes = partials
        .into_par_iter()
        .map(|m| {
            let mut codes = BTreeSet::new();
            simple_rows(
                m,
                2,
                &mut |m| {
                    if matrix_connected(&m) {
                        codes.insert(canonical_matrix_code(&m));
                    }
                },
                false,
            );
            codes
        })
        .reduce(BTreeSet::new, union);
    Ok(graphs_from_codes(codes))
}

/// Connected 4-regular multigraphs on `n` vertices (a loop adds 2 to the
/// degree), one per isomorphism class.
pub fn enumerate_c(n: usize) -> Result<Vec<RegularGraph>, GraphError> {
    enumerate_c_with_limit(n, DEFAULT_C_LIMIT)
}

pub fn enumerate_c_with_limit(n: usize, limit: usize) -> Result<Vec<RegularGraph>, GraphError> {
    if n > limit {
        return Err(GraphError::Limit { class: 'C', n, limit });
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut partials = Vec::new();
    multi_rows(vec![vec![0u8; n]; n], 0, &mut |m| partials.push(m), true);
    let codes = partials
        .into_par_iter()
        .map(|m| {
            let mut codes = BTreeSet::new();
            multi_rows(
                m,
                1,
                &mut |m| {
                    if matrix_connected(&m) {
                        codes.insert(canonical_matrix_code(&m));
                    }
                },
                false,
            );
            codes
        })
        .reduce(BTreeSet::new, union);
    Ok(graphs_from_codes(codes))
}

fn union(mut a: BTreeSet<CanonicalCode>, mut b: BTreeSet<CanonicalCode>) -> BTreeSet<CanonicalCode> {
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    a.extend(b);
    a
}

fn graphs_from_codes(codes: BTreeSet<CanonicalCode>) -> Vec<RegularGraph> {
    codes
        .iter()
        .map(|code| {
            RegularGraph::from_multiplicities(&matrix_from_code(code)).expect("code encodes a 4-regular matrix")
        })
        .collect()
}

fn degree(m: &[Vec<u8>], v: usize) -> usize {
    m[v].iter().enumerate().map(|(j, &x)| if j == v { 2 * x as usize } else { x as usize }).sum()
}

/// Completes rows `row..` of a 0/1 matrix. With `single_row` set, only row
/// `row` is filled and each partial matrix is handed to `emit`.
fn simple_rows(mut m: Vec<Vec<u8>>, row: usize, emit: &mut dyn FnMut(Vec<Vec<u8>>), single_row: bool) {
    let n = m.len();
    if row == n {
        emit(m);
        return;
    }
    let need = DEGREE - degree(&m, row);
    let open: Vec<usize> = ((row + 1)..n).filter(|&j| degree(&m, j) < DEGREE).collect();
    if open.len() < need {
        return;
    }
    let mut chosen = Vec::with_capacity(need);
    choose(&open, need, 0, &mut chosen, &mut |picked| {
        for &j in picked {
            m[row][j] = 1;
            m[j][row] = 1;
        }
        if single_row {
            emit(m.clone());
        } else {
            simple_rows(m.clone(), row + 1, emit, false);
        }
        for &j in picked {
            m[row][j] = 0;
            m[j][row] = 0;
        }
    });
}

fn choose(pool: &[usize], k: usize, from: usize, chosen: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
    if chosen.len() == k {
        f(chosen);
        return;
    }
    for i in from..pool.len() {
        if pool.len() - i < k - chosen.len() {
            break;
        }
        chosen.push(pool[i]);
        choose(pool, k, i + 1, chosen, f);
        chosen.pop();
    }
}

/// Completes rows `row..` of a multiplicity matrix (diagonal = loop count).
fn multi_rows(mut m: Vec<Vec<u8>>, row: usize, emit: &mut dyn FnMut(Vec<Vec<u8>>), single_row: bool) {
    let n = m.len();
    if row == n {
        emit(m);
        return;
    }
    let need = DEGREE - degree(&m, row);
    for loops in 0..=need / 2 {
        m[row][row] = loops as u8;
        let rest = need - 2 * loops;
        let capacity: Vec<usize> = ((row + 1)..n).map(|j| DEGREE - degree(&m, j)).collect();
        if capacity.iter().sum::<usize>() < rest {
            continue;
        }
        distribute(&mut m, row, row + 1, rest, &capacity, &mut |m| {
            if single_row {
                emit(m.clone());
            } else {
                multi_rows(m.clone(), row + 1, emit, false);
            }
        });
    }
    m[row][row] = 0;
}

fn distribute(
    m: &mut Vec<Vec<u8>>,
    row: usize,
    col: usize,
    rest: usize,
    capacity: &[usize],
    f: &mut dyn FnMut(&Vec<Vec<u8>>),
) {
    let n = m.len();
    if rest == 0 {
        f(m);
        return;
    }
    if col == n {
        return;
    }
    let cap = capacity[col - row - 1].min(rest);
    for k in (0..=cap).rev() {
        m[row][col] = k as u8;
        m[col][row] = k as u8;
        distribute(m, row, col + 1, rest - k, capacity, f);
    }
    m[row][col] = 0;
    m[col][row] = 0;
}

fn matrix_connected(m: &[Vec<u8>]) -> bool {
    let n = m.len();
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    let mut count = 1;
    while let Some(v) = stack.pop() {
        for w in 0..n {
            if m[v][w] > 0 && !seen[w] {
                seen[w] = true;
                count += 1;
                stack.push(w);
            }
        }
    }
    count == n
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::canonical_form;

    #[test]
    fn a_is_empty_below_five() {
        for n in 0..5 {
            assert!(enumerate_a(n).unwrap().is_empty());
        }
    }

    #[test]
    fn a5_is_k5() {
        let a5 = enumerate_a(5).unwrap();
        assert_eq!(a5.len(), 1);
        assert!(a5[0].is_simple());
        assert_eq!(a5[0].multiplicity_matrix().iter().flatten().filter(|&&x| x == 1).count(), 20);
    }

    #[test]
    fn c1_is_the_two_loop_graph() {
        let c1 = enumerate_c(1).unwrap();
        assert_eq!(c1.len(), 1);
        assert_eq!(c1[0].multiplicity_matrix(), vec![vec![2]]);
    }

    #[test]
    fn c2_has_two_classes() {
        // four parallel edges, or a loop at each end with a double edge between
        let c2 = enumerate_c(2).unwrap();
        assert_eq!(c2.len(), 2);
    }

    #[test]
    fn limits_are_enforced() {
        assert_eq!(enumerate_a(9), Err(GraphError::Limit { class: 'A', n: 9, limit: 8 }));
        assert_eq!(enumerate_c(7), Err(GraphError::Limit { class: 'C', n: 7, limit: 6 }));
        assert!(enumerate_c_with_limit(3, 2).is_err());
    }

    #[test]
    fn outputs_are_sorted_connected_and_regular() {
        for n in 1..=4 {
            let graphs = enumerate_c(n).unwrap();
            let codes: Vec<_> = graphs.iter().map(canonical_form).collect();
            assert!(codes.windows(2).all(|w| w[0] < w[1]));
            assert!(graphs.iter().all(|g| g.is_connected() && g.vertex_count() == n));
        }
        for n in 5..=7 {
            let graphs = enumerate_a(n).unwrap();
            assert!(graphs.iter().all(|g| g.is_connected() && g.is_simple()));
        }
    }

    #[test]
    fn a_is_contained_in_c() {
        for n in 5..=6 {
            let c: BTreeSet<_> = enumerate_c(n).unwrap().iter().map(canonical_form).collect();
            for g in enumerate_a(n).unwrap() {
                assert!(c.contains(&canonical_form(&g)));
            }
        }
    }
}
