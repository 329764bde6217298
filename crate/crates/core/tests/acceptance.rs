//! Acceptance criteria, one PASS/FAIL line each. Exits non-zero if any fails.

use std::collections::BTreeSet;
use std::panic;
use std::process::ExitCode;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use spine_census::census::{
    asymptotic_residual, bollobas_ln_estimate, bollobas_ln_exact, bounds_table, census_one_cell, BoundsConfig,
    C_OVER_A_CONSTANT,
};
use spine_census::graph::{enumerate_a, enumerate_c};
use spine_census::lemmas::verify_lemmas;
use spine_census::reduction::{minimize_cells, ReductionConfig};
use spine_census::sample::random_spine;
use spine_census::spine::{all_decorations, cell_count, trace_cells};
use spine_census::triangulation::{count_edge_classes, to_triangulation};
use spine_census::Spine;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn random_spines(seed: u64, count: usize, max_n: usize) -> Vec<Spine> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(1..=max_n);
            random_spine(&mut rng, n)
        })
        .collect()
}

fn tiny_spines() -> Vec<Spine> {
    (1..=2).flat_map(|n| enumerate_c(n).unwrap()).flat_map(|g| all_decorations(&g).collect::<Vec<_>>()).collect()
}

fn rotation_cyclicity() -> Outcome {
    let spines = random_spines(1, 1000, 6);
    let mut checked = 0;
    for s in &spines {
        for e in 0..s.edge_count() {
            let back = s.rotate_edge(e).unwrap().rotate_edge(e).unwrap().rotate_edge(e).unwrap();
            if &back != s {
                return outcome(false, format!("edge {e} of {s:?}"));
            }
            checked += 1;
        }
    }
    outcome(true, format!("{} spines, {checked} edges", spines.len()))
}

fn conservation() -> Outcome {
    let spines: Vec<Spine> = random_spines(2, 1000, 8).into_iter().chain(tiny_spines()).collect();
    for s in &spines {
        let cells = trace_cells(s).unwrap();
        let total: usize = cells.cell_lengths().iter().sum();
        if total != 6 * s.vertex_count() || cells.directed_orbit_count() != 2 * cells.cell_count() {
            return outcome(false, format!("{s:?}"));
        }
    }
    outcome(true, format!("{} spines", spines.len()))
}

fn dual_oracle() -> Outcome {
    let exhaustive = tiny_spines();
    let random = random_spines(3, 10_000, 8);
    for s in exhaustive.iter().chain(&random) {
        let cells = trace_cells(s).unwrap().cell_count();
        let classes = count_edge_classes(&to_triangulation(s));
        if cells != classes {
            return outcome(false, format!("{cells} cells, {classes} edge classes: {s:?}"));
        }
    }
    outcome(true, format!("{} exhaustive + {} random spines", exhaustive.len(), random.len()))
}

fn corollary() -> Outcome {
    let config = ReductionConfig::default();
    let mut counts = Vec::new();
    for n in 5..=7 {
        for g in enumerate_a(n).unwrap() {
            match minimize_cells(&g, &config) {
                Ok(m) if m.cells <= 2 => counts.push(m.cells),
                Ok(m) => return outcome(false, format!("n = {n}: {} cells", m.cells)),
                Err(e) => return outcome(false, format!("n = {n}: {e}")),
            }
        }
    }
    outcome(true, format!("{} graphs, cell counts {counts:?}", counts.len()))
}

fn lemma_sweep() -> Outcome {
    let report = verify_lemmas(3, 10_000_000).unwrap();
    let minimal: u64 = report.graphs.iter().map(|g| g.minimal_spines).sum();
    outcome(
        report.violation_count() == 0,
        format!(
            "{} graphs, {minimal} minimal spines, violations {:?}, control failures {}",
            report.graphs.len(),
            report.violations,
            report.control.total()
        ),
    )
}

/// Simple connected 4-regular graphs on `n` vertices up to isomorphism, by
/// brute force over adjacency matrices.
fn simple_count_oracle(n: usize) -> usize {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| ((i + 1)..n).map(move |j| (i, j))).collect();
    let mut perms = vec![vec![]];
    for k in 0..n {
        perms = perms
            .into_iter()
            .flat_map(|p: Vec<usize>| {
                (0..=k).map(move |i| {
                    let mut q = p.clone();
                    q.insert(i, k);
                    q
                })
            })
            .collect();
    }
    let mut classes = BTreeSet::new();
    for mask in 0u64..(1u64 << pairs.len()) {
        if mask.count_ones() as usize != 2 * n {
            continue;
        }
        let mut adj = vec![0u32; n];
        for (k, &(i, j)) in pairs.iter().enumerate() {
            if mask >> k & 1 == 1 {
                adj[i] |= 1 << j;
                adj[j] |= 1 << i;
            }
        }
        if adj.iter().any(|a| a.count_ones() != 4) {
            continue;
        }
        let mut reach = 1u32;
        for _ in 0..n {
            reach |= (0..n).filter(|&v| reach >> v & 1 == 1).fold(0, |acc, v| acc | adj[v]);
        }
        if reach != (1 << n) - 1 {
            continue;
        }
        let class = perms
            .iter()
            .map(|p| {
                (0..n).map(|i| (0..n).fold(0u32, |acc, j| acc | ((adj[p[i]] >> p[j] & 1) << j))).collect::<Vec<_>>()
            })
            .min()
            .unwrap();
        classes.insert(class);
    }
    classes.len()
}

fn theorem_one() -> Outcome {
    let config = ReductionConfig::default();
    let mut details = Vec::new();
    for n in 6..=8 {
        let sources = enumerate_a(n - 1).unwrap().len();
        let oracle = simple_count_oracle(n - 1);
        if sources != oracle {
            return outcome(false, format!("|A_{}| = {sources}, oracle says {oracle}", n - 1));
        }
        let report = match census_one_cell(n, &config) {
            Ok(r) => r,
            Err(e) => return outcome(false, format!("n = {n}: {e}")),
        };
        if !report.anomalies.is_empty() {
            return outcome(false, format!("n = {n}: {} anomalies", report.anomalies.len()));
        }
        if report.records.len() < sources {
            return outcome(false, format!("n = {n}: {} spines < |A_{}| = {sources}", report.records.len(), n - 1));
        }
        if let Some(bad) = report.records.iter().find(|r| cell_count(&r.spine) != 1 || r.spine.vertex_count() != n) {
            return outcome(false, format!("n = {n}: record {} is not a one-cell spine", bad.spine_code.to_hex()));
        }
        details.push(format!("n={n}: {} >= |A_{}|={sources}", report.records.len(), n - 1));
    }
    outcome(true, details.join(", "))
}

fn bollobas_asymptotic() -> Outcome {
    let n = 10_000u64;
    let ratio = asymptotic_residual(n) / (n as f64).ln();
    let ratio_ok = (ratio + 0.5).abs() <= 0.1;
    let worst =
        (10..=n).map(|k| asymptotic_residual(k).abs() - (5.0 + (k as f64).ln())).fold(f64::NEG_INFINITY, f64::max);
    let sweep_ok = worst <= 0.0;
    let mut max_rel: f64 = 0.0;
    for r in 1..=20u64 {
        for k in 1..=200 / r {
            if (r * k) % 2 == 0 {
                let a = bollobas_ln_estimate(r, k).unwrap();
                let b = bollobas_ln_exact(r, k).unwrap();
                max_rel = max_rel.max((a - b).abs() / b.abs().max(1.0));
            }
        }
    }
    let exact_ok = max_rel <= 1e-9;
    outcome(
        ratio_ok && sweep_ok && exact_ok,
        format!(
            "residual/ln n at 1e4 = {ratio:.4} (target -0.5 +- 0.1: {}); max |residual| - (5 + ln n) on [10, 1e4] = {worst:.4} ({}); \
             exact vs log-gamma max relative error {max_rel:.2e} ({})",
            verdict(ratio_ok),
            verdict(sweep_ok),
            verdict(exact_ok)
        ),
    )
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "FAILS"
    }
}

fn theorem_two() -> Outcome {
    let mut checks = Vec::new();
    for n in 1..=5 {
        let a = enumerate_a(n).unwrap().len();
        if a == 0 {
            continue;
        }
        let c = enumerate_c(n).unwrap().len();
        let ratio = (c as f64 / a as f64).ln();
        let bound = n as f64 * C_OVER_A_CONSTANT;
        if ratio > bound {
            return outcome(false, format!("n = {n}: ln(|C|/|A|) = {ratio} > {bound}"));
        }
        checks.push(format!("n={n}: {ratio:.3} <= {bound:.3}"));
    }
    let rows = bounds_table(5, 12, &BoundsConfig::default()).unwrap();
    let compared = rows.iter().filter(|r| r.lower_le_upper.is_some()).count();
    if let Some(bad) = rows.iter().find(|r| r.lower_le_upper == Some(false)) {
        return outcome(false, format!("row n = {}: lower exceeds upper", bad.n));
    }
    outcome(!checks.is_empty(), format!("{}; {compared} rows with lower <= upper", checks.join(", ")))
}

/// Everything the pipeline emits, serialized.
fn pipeline() -> String {
    let config = ReductionConfig::default();
    let mut out = String::new();
    for n in 5..=7 {
        for g in enumerate_a(n).unwrap() {
            out += &serde_json::to_string(&minimize_cells(&g, &config).unwrap()).unwrap();
        }
    }
    for n in 6..=8 {
        out += &serde_json::to_string(&census_one_cell(n, &config).unwrap()).unwrap();
    }
    out += &serde_json::to_string(&bounds_table(5, 10, &BoundsConfig::default()).unwrap()).unwrap();
    out += &serde_json::to_string(&verify_lemmas(3, 10_000_000).unwrap()).unwrap();
    for n in 1..=3 {
        for g in enumerate_c(n).unwrap() {
            out += &serde_json::to_string(&minimize_cells(&g, &config).unwrap()).unwrap();
        }
    }
    out
}

fn determinism() -> Outcome {
    let run = |threads| rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap().install(pipeline);
    let one = run(1);
    let eight = run(8);
    outcome(one == eight, format!("{} bytes per run", one.len()))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("rotation cyclicity", rotation_cyclicity),
        ("conservation", conservation),
        ("dual-oracle equivalence", dual_oracle),
        ("at most two cells on A_5..A_7", corollary),
        ("lemma sweep n <= 3", lemma_sweep),
        ("one-cell census n = 6..8", theorem_one),
        ("counting estimate asymptotics", bollobas_asymptotic),
        ("finite upper-bound check", theorem_two),
        ("determinism at 1 and 8 threads", determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let result = panic::catch_unwind(check).unwrap_or_else(|_| outcome(false, "panicked"));
        let status = if result.pass { "PASS" } else { "FAIL" };
        println!("criterion {} [{name}]: {status} ({})", i + 1, result.detail);
        failed += usize::from(!result.pass);
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
