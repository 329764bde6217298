use super::*;
use crate::graph::{enumerate_a, enumerate_c};
use crate::spine::{all_decorations, edge_cell_profile};

fn two_loops() -> RegularGraph {
    RegularGraph::new(1, &[[0, 1], [2, 3]]).unwrap()
}

fn k5() -> RegularGraph {
    enumerate_a(5).unwrap().remove(0)
}

fn small_spines() -> impl Iterator<Item = Spine> {
    (1..=2).flat_map(|n| enumerate_c(n).unwrap()).flat_map(|g| all_decorations(&g).collect::<Vec<_>>())
}

#[test]
fn three_cell_edges_always_reduce() {
    let mut seen = 0;
    for s in small_spines() {
        let cells = trace_cells(&s).unwrap();
        for e in 0..s.edge_count() {
            if edge_cell_profile(&s, &cells, e).unwrap().distinct_cells() == 3 {
                seen += 1;
                let best = (1..=2).map(|t| cell_count(&s.rotate_edge_by(e, t).unwrap())).min().unwrap();
                assert!(best < cells.cell_count(), "{s:?} edge {e}");
            }
        }
    }
    assert!(seen > 0);
}

#[test]
fn antiparallel_pairs_always_reduce() {
    let mut seen = 0;
    for s in small_spines() {
        let cells = trace_cells(&s).unwrap();
        for e in 0..s.edge_count() {
            let profile = edge_cell_profile(&s, &cells, e).unwrap();
            if profile.distinct_cells() == 2 && profile.has_antiparallel_pair() {
                seen += 1;
                let best = (1..=2).map(|t| cell_count(&s.rotate_edge_by(e, t).unwrap())).min().unwrap();
                assert!(best < cells.cell_count(), "{s:?} edge {e}");
            }
        }
    }
    assert!(seen > 0);
}

#[test]
fn reducing_rotation_prefers_three_cell_edges() {
    for s in small_spines() {
        let cells = trace_cells(&s).unwrap();
        let any_three = (0..s.edge_count()).any(|e| edge_cell_profile(&s, &cells, e).unwrap().distinct_cells() == 3);
        match find_reducing_rotation(&s) {
            Some(r) => {
                assert!(r.cells_after < cells.cell_count());
                assert_eq!(cell_count(&s.rotate_edge_by(r.edge, r.turns).unwrap()), r.cells_after);
                assert_eq!(any_three, r.rule == Rule::ThreeCellEdge);
            }
            None => assert!(!any_three),
        }
    }
}

#[test]
fn one_cell_spines_have_no_reducing_rotation() {
    let one_cell = small_spines().find(|s| cell_count(s) == 1).unwrap();
    assert_eq!(find_reducing_rotation(&one_cell), None);
}

#[test]
fn k5_reduces_and_replays() {
    let g = k5();
    let m = minimize_cells(&g, &ReductionConfig::default()).unwrap();
    assert!(m.cells <= 2);
    assert_eq!(m.spine.graph(), &g);
    let seed = Spine::seed(g).unwrap();
    assert_eq!(m.trace.replay(&seed).unwrap(), m.spine);
    for w in m.trace.steps.windows(2) {
        assert_eq!(w[0].after, w[1].before);
    }
}

#[test]
fn trace_json_shape() {
    let trace = ReductionTrace {
        steps: vec![Step {
            edge: Some(3),
            turns: Some(2),
            vertex: None,
            before: 4,
            after: 2,
            rule: Rule::ThreeCellEdge,
        }],
    };
    let json = serde_json::to_string(&trace).unwrap();
    assert_eq!(json, r#"{"steps":[{"edge":3,"turns":2,"before":4,"after":2,"rule":"three-cell-edge"}]}"#);
    assert_eq!(serde_json::from_str::<ReductionTrace>(&json).unwrap(), trace);
}

#[test]
fn replay_detects_wrong_counts() {
    let seed = Spine::seed(two_loops()).unwrap();
    let trace = ReductionTrace {
        steps: vec![Step { edge: Some(0), turns: Some(1), vertex: None, before: 9, after: 9, rule: Rule::Search }],
    };
    assert!(matches!(trace.replay(&seed), Err(ReductionError::Replay { step: 0, .. })));
}

#[test]
fn multigraph_minimum_matches_the_sweep() {
    for n in 1..=3 {
        for g in enumerate_c(n).unwrap() {
            let oracle = all_decorations(&g).map(|s| cell_count(&s)).min().unwrap();
            let (min, witness) = exhaustive_min_cells(&g).unwrap();
            assert_eq!(min, oracle);
            assert_eq!(cell_count(&witness), min);
            let m = minimize_cells(&g, &ReductionConfig::default()).unwrap();
            assert_eq!(m.cells, min, "equality is required once the sweep fits the budget");
            assert_eq!(m.trace.replay(&Spine::seed(g.clone()).unwrap()).unwrap(), m.spine);
        }
    }
}

#[test]
fn exhaustive_respects_the_budget() {
    assert!(matches!(exhaustive_min_cells_with_budget(&k5(), 1000), Err(ReductionError::Limit { .. })));
    let (min, _) = exhaustive_min_cells_with_budget(&two_loops(), 18).unwrap();
    assert_eq!(min, 2);
}

#[test]
fn loop_insertion_on_k5() {
    let m = minimize_cells(&k5(), &ReductionConfig::default()).unwrap();
    let (edge, _) = find_gluing_edge(&m.spine).unwrap();
    let glued = insert_loop_vertex(&m.spine, edge).unwrap();
    assert_eq!(glued.vertex_count(), 6);
    assert_eq!(glued.edge_count(), m.spine.edge_count() + 2);
    assert_eq!(cell_count(&glued), 1);
    assert_eq!((0..glued.edge_count()).filter(|&e| glued.graph().is_loop(e)).count(), 1);
}

#[test]
fn gluing_edge_meets_its_condition() {
    for s in small_spines().filter(|s| cell_count(s) <= 2) {
        let cells = trace_cells(&s).unwrap();
        if let Some((e, condition)) = find_gluing_edge(&s) {
            let p = edge_cell_profile(&s, &cells, e).unwrap();
            match condition {
                GluingCondition::Antiparallel => assert!(cells.cell_count() == 1 && p.has_antiparallel_pair()),
                GluingCondition::BothCells => assert!(p.contains_cell(0) && p.contains_cell(1)),
            }
            let glued = insert_loop_vertex(&s, e).unwrap();
            assert_eq!(cell_count(&glued), 1);
        }
    }
}

#[test]
fn loop_insertion_checks_its_precondition() {
    let three = Spine::seed(two_loops()).unwrap();
    assert_eq!(cell_count(&three), 3);
    assert!(matches!(insert_loop_vertex(&three, 0), Err(ReductionError::Precondition(_))));
    assert!(matches!(insert_loop_vertex(&three, 7), Err(ReductionError::Spine(SpineError::UnknownEdge { .. }))));
}

#[test]
fn cutability_on_the_loop_graph() {
    let verdicts: Vec<bool> = all_decorations(&two_loops())
        .flat_map(|s| (0..2).map(move |e| is_cutable(&s, e, CutRule::Crossing).unwrap()))
        .collect();
    assert!(verdicts.iter().any(|&v| v));
    assert!(verdicts.iter().any(|&v| !v));
    let s = Spine::seed(two_loops()).unwrap();
    assert!(is_cutable(&s, 2, CutRule::Crossing).is_err());
}

#[test]
fn cyclic_rule_is_stricter() {
    for s in small_spines() {
        for e in 0..s.edge_count() {
            if is_cutable(&s, e, CutRule::CrossingCyclic).unwrap() {
                assert!(is_cutable(&s, e, CutRule::Crossing).unwrap());
            }
        }
    }
}
