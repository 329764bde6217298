use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use spine_census::census::{
    asymptotic_residual, bollobas_ln_estimate, bollobas_ln_exact, bounds_table, census_one_cell, stirling_residual,
    BoundsConfig,
};
use spine_census::graph::{
    canonical_form, enumerate_a_with_limit, enumerate_c_with_limit, GraphRecord, DEFAULT_A_LIMIT, DEFAULT_C_LIMIT,
};
use spine_census::lemmas::verify_lemmas;
use spine_census::reduction::{minimize_cells, ReductionConfig, ReductionError};
use spine_census::sample::random_decoration;
use spine_census::spine::{all_decorations, cell_count, decoration_count, trace_cells, Chirality};
use spine_census::triangulation::{edge_class_report, from_triangulation, to_triangulation, GluingTable};
use spine_census::{RegularGraph, Spine};

use crate::args::{Command, Format, Global, GraphChoice, GraphClass, ReductionLimits};
use crate::output::{csv, json, json_lines, Emitted};

pub fn execute(global: &Global, command: &Command) -> Result<Emitted> {
    let format = global.format;
    match command {
        Command::Graphs { class, n, limits } => graphs(format, *class, *n, limits.limit),
        Command::Spines { graph, sample, max_decorations } => spines(global, graph, *sample, *max_decorations),
        Command::Minimize { graph, reduction } => minimize(format, graph, reduction),
        Command::Census { n, reduction } => census(format, *n, reduction),
        Command::Bounds { from, to, a_limit, c_limit, census_limit, reduction } => {
            let config = BoundsConfig {
                a_limit: *a_limit,
                c_limit: *c_limit,
                census_limit: *census_limit,
                reduction: reduction_config(reduction)?,
            };
            bounds(format, *from, *to, &config)
        }
        Command::VerifyLemmas { max_n, budget } => lemmas(format, *max_n, *budget),
        Command::ExportTri { spine_file, graph, decoration, minimize } => {
            export_tri(format, spine_file.as_deref(), graph, *decoration, *minimize)
        }
        Command::ImportTri { input } => import_tri(format, input),
        Command::Bollobas { r, from, to } => bollobas(format, *r, *from, to.unwrap_or(*from)),
    }
}

fn reduction_config(limits: &ReductionLimits) -> Result<ReductionConfig> {
    if limits.bfs_budget == 0 || limits.exhaustive_budget == 0 {
        bail!("search budgets must be positive");
    }
    Ok(ReductionConfig {
        bfs_depth: limits.bfs_depth,
        bfs_budget: limits.bfs_budget,
        exhaustive_budget: limits.exhaustive_budget,
        propagation_moves: limits.propagation_moves,
    })
}

fn class_name(class: GraphClass) -> &'static str {
    match class {
        GraphClass::A => "A",
        GraphClass::C => "C",
    }
}

fn enumerate(class: GraphClass, n: usize, limit: Option<usize>) -> Result<Vec<RegularGraph>> {
    Ok(match class {
        GraphClass::A => enumerate_a_with_limit(n, limit.unwrap_or(DEFAULT_A_LIMIT))?,
        GraphClass::C => enumerate_c_with_limit(n, limit.unwrap_or(DEFAULT_C_LIMIT))?,
    })
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

fn choose_graph(choice: &GraphChoice) -> Result<RegularGraph> {
    if let Some(path) = &choice.graph_file {
        return read_json(path);
    }
    let (Some(class), Some(n)) = (choice.class, choice.n) else {
        bail!("give --graph-file or --class with --n");
    };
    let mut graphs = enumerate(class, n, None)?;
    let count = graphs.len();
    if choice.index >= count {
        bail!("{}_{} has {count} graphs, index {} is out of range", class_name(class), n, choice.index);
    }
    Ok(graphs.swap_remove(choice.index))
}

fn pairs_text(g: &RegularGraph) -> String {
    g.edges().iter().map(|[a, b]| format!("{a}-{b}")).collect::<Vec<_>>().join(" ")
}

#[derive(Serialize)]
struct GraphEntry {
    class: &'static str,
    n: usize,
    index: usize,
    code: String,
    graph: GraphRecord,
}

#[derive(Serialize)]
struct GraphRow {
    class: &'static str,
    n: usize,
    index: usize,
    code: String,
    pairs: String,
}

fn graphs(format: Format, class: GraphClass, n: usize, limit: Option<usize>) -> Result<Emitted> {
    let graphs = enumerate(class, n, limit)?;
    let class = class_name(class);
    let body = match format {
        Format::Json => json(
            &graphs
                .iter()
                .enumerate()
                .map(|(index, g)| GraphEntry {
                    class,
                    n,
                    index,
                    code: canonical_form(g).to_hex(),
                    graph: g.to_record(),
                })
                .collect::<Vec<_>>(),
        )?,
        Format::Csv => csv(&graphs
            .iter()
            .enumerate()
            .map(|(index, g)| GraphRow { class, n, index, code: canonical_form(g).to_hex(), pairs: pairs_text(g) })
            .collect::<Vec<_>>())?,
        Format::Text => {
            let mut text = format!("{class}_{n}: {} graphs\n", graphs.len());
            for (index, g) in graphs.iter().enumerate() {
                writeln!(text, "{index}\t{}\t{}", canonical_form(g).to_hex(), pairs_text(g))?;
            }
            text
        }
    };
    Ok(Emitted { stem: "graphs", body, anomalies: false })
}

fn decoration_index(s: &Spine) -> u64 {
    let n = s.vertex_count();
    let bits = s.chirality().iter().enumerate().map(|(v, &c)| u64::from(c == Chirality::Negative) << v).sum::<u64>();
    let digits = s.gluing().iter().rev().fold(0u64, |acc, &g| acc * 3 + u64::from(g));
    bits + (digits << n)
}

#[derive(Serialize)]
struct DecorationRow {
    index: u64,
    chirality: String,
    gluing: String,
    cells: usize,
}

impl DecorationRow {
    fn of(s: &Spine) -> Self {
        DecorationRow {
            index: decoration_index(s),
            chirality: s.chirality().iter().map(|&c| if c == Chirality::Positive { '+' } else { '-' }).collect(),
            gluing: s.gluing().iter().map(|g| char::from(b'0' + g)).collect(),
            cells: cell_count(s),
        }
    }
}

#[derive(Serialize)]
struct SpinesReport {
    graph: GraphRecord,
    code: String,
    decorations: Vec<DecorationRow>,
}

fn spines(global: &Global, choice: &GraphChoice, sample: Option<usize>, max: u64) -> Result<Emitted> {
    let g = choose_graph(choice)?;
    let rows: Vec<DecorationRow> = match sample {
        Some(k) => {
            let mut rng = ChaCha8Rng::seed_from_u64(global.seed);
            (0..k).map(|_| DecorationRow::of(&random_decoration(&mut rng, g.clone()))).collect()
        }
        None => {
            let total = decoration_count(g.vertex_count()).filter(|&t| t <= max);
            if total.is_none() {
                bail!("18^{} decorations exceed --max-decorations {max}; use --sample", g.vertex_count());
            }
            all_decorations(&g).map(|s| DecorationRow::of(&s)).collect()
        }
    };
    let body = match global.format {
        Format::Json => {
            json(&SpinesReport { graph: g.to_record(), code: canonical_form(&g).to_hex(), decorations: rows })?
        }
        Format::Csv => csv(&rows)?,
        Format::Text => {
            let mut text = format!("graph {}\n", pairs_text(&g));
            for r in &rows {
                writeln!(text, "{}\t{}\t{}\t{}", r.index, r.chirality, r.gluing, r.cells)?;
            }
            text
        }
    };
    Ok(Emitted { stem: "spines", body, anomalies: false })
}

#[derive(Serialize)]
struct StepRow {
    step: usize,
    edge: Option<usize>,
    turns: Option<u8>,
    vertex: Option<usize>,
    before: usize,
    after: usize,
    rule: String,
}

fn minimize(format: Format, choice: &GraphChoice, limits: &ReductionLimits) -> Result<Emitted> {
    let g = choose_graph(choice)?;
    let (result, anomalies) = match minimize_cells(&g, &reduction_config(limits)?) {
        Ok(m) => (m, false),
        Err(ReductionError::Failure(f)) => {
            let f = *f;
            (spine_census::reduction::Minimized { spine: f.best, cells: f.cells, trace: f.trace }, true)
        }
        Err(e) => return Err(e.into()),
    };
    let body = match format {
        Format::Json => {
            #[derive(Serialize)]
            struct Report<'a> {
                failure: bool,
                #[serde(flatten)]
                result: &'a spine_census::reduction::Minimized,
            }
            json(&Report { failure: anomalies, result: &result })?
        }
        Format::Csv => csv(&result
            .trace
            .steps
            .iter()
            .enumerate()
            .map(|(i, s)| StepRow {
                step: i,
                edge: s.edge,
                turns: s.turns,
                vertex: s.vertex,
                before: s.before,
                after: s.after,
                rule: serde_json::to_value(s.rule)
                    .map(|v| v.as_str().unwrap_or_default().to_owned())
                    .unwrap_or_default(),
            })
            .collect::<Vec<_>>())?,
        Format::Text => {
            let mut text = format!("{} cells after {} steps\n", result.cells, result.trace.steps.len());
            for s in &result.trace.steps {
                writeln!(text, "{}", serde_json::to_string(s)?)?;
            }
            text
        }
    };
    if anomalies {
        eprintln!("anomaly: simple graph left with {} cells", result.cells);
    }
    Ok(Emitted { stem: "minimize", body, anomalies })
}

#[derive(Serialize)]
struct CensusRow {
    n: usize,
    graph_code: String,
    spine_code: String,
    cell_count: usize,
}

fn census(format: Format, n: usize, limits: &ReductionLimits) -> Result<Emitted> {
    let report = census_one_cell(n, &reduction_config(limits)?)?;
    for anomaly in &report.anomalies {
        eprintln!("{}", serde_json::to_string(anomaly)?);
    }
    let body = match format {
        Format::Json => json_lines(&report.records)?,
        Format::Csv => csv(&report
            .records
            .iter()
            .map(|r| CensusRow {
                n: r.n,
                graph_code: r.graph_code.to_hex(),
                spine_code: r.spine_code.to_hex(),
                cell_count: r.cell_count,
            })
            .collect::<Vec<_>>())?,
        Format::Text => {
            let mut text = format!(
                "n = {n}: {} one-cell spines from {} source graphs ({} anomalies)\n",
                report.records.len(),
                report.source_graphs,
                report.anomalies.len()
            );
            for r in &report.records {
                writeln!(text, "{}", r.spine_code.to_hex())?;
            }
            text
        }
    };
    Ok(Emitted { stem: "census", body, anomalies: !report.anomalies.is_empty() })
}

fn fmt_opt(x: Option<f64>) -> String {
    x.map_or_else(|| "-".into(), |v| format!("{v:.4}"))
}

fn bounds(format: Format, from: usize, to: usize, config: &BoundsConfig) -> Result<Emitted> {
    let rows = bounds_table(from, to, config)?;
    let body = match format {
        Format::Json => {
            #[derive(Serialize)]
            struct Table<'a> {
                schema_version: u32,
                note: &'static str,
                rows: &'a [spine_census::census::BoundsRow],
            }
            json(&Table { schema_version: 1, note: "lower bounds count one-cell spines, not manifolds", rows: &rows })?
        }
        Format::Csv => csv(&rows)?,
        Format::Text => {
            let mut text = String::from("n\t|A_n|\t|C_n|\tlnU4\tlower\tupper\tupper_A\tintro\test\n");
            for r in &rows {
                writeln!(
                    text,
                    "{}\t{}\t{}\t{:.4}\t{}\t{}\t{}\t{:.4}\t{}",
                    r.n,
                    r.count_a.map_or("-".into(), |c| c.to_string()),
                    r.count_c.map_or("-".into(), |c| c.to_string()),
                    r.bollobas_ln,
                    fmt_opt(r.lower_ln_mn),
                    fmt_opt(r.upper_ln_mn_theorem),
                    fmt_opt(r.upper_ln_mn_a_route),
                    r.upper_ln_mn_intro,
                    if r.estimated { "estimated" } else { "exact" }
                )?;
            }
            text
        }
    };
    Ok(Emitted { stem: "bounds", body, anomalies: false })
}

#[derive(Serialize)]
struct LemmaRow {
    n: usize,
    graph_code: String,
    simple: bool,
    min_cells: usize,
    minimal_spines: u64,
    three_cell_edge: u64,
    antiparallel_pair: u64,
    crowded_vertex: u64,
}

fn lemmas(format: Format, max_n: usize, budget: u64) -> Result<Emitted> {
    let report = verify_lemmas(max_n, budget)?;
    let body = match format {
        Format::Json => json(&report)?,
        Format::Csv => csv(&report
            .graphs
            .iter()
            .map(|g| LemmaRow {
                n: g.n,
                graph_code: g.graph_code.clone(),
                simple: g.simple,
                min_cells: g.min_cells,
                minimal_spines: g.minimal_spines,
                three_cell_edge: g.violations.three_cell_edge,
                antiparallel_pair: g.violations.antiparallel_pair,
                crowded_vertex: g.violations.crowded_vertex,
            })
            .collect::<Vec<_>>())?,
        Format::Text => format!(
            "graphs: {}\nminimal spines: {}\nviolations: {}\ncontrol failures: {}\n",
            report.graphs.len(),
            report.graphs.iter().map(|g| g.minimal_spines).sum::<u64>(),
            report.violation_count(),
            report.control.total()
        ),
    };
    Ok(Emitted { stem: "lemmas", body, anomalies: report.violation_count() > 0 })
}

fn export_tri(
    format: Format,
    spine_file: Option<&Path>,
    choice: &GraphChoice,
    decoration: u64,
    minimize: bool,
) -> Result<Emitted> {
    let spine: Spine = match spine_file {
        Some(path) => read_json(path)?,
        None => {
            let g = choose_graph(choice)?;
            if minimize {
                minimize_cells(&g, &ReductionConfig::default()).map(|m| m.spine).or_else(|e| match e {
                    ReductionError::Failure(f) => Ok(f.best),
                    other => Err(other),
                })?
            } else {
                Spine::from_decoration_index(g, decoration)?
            }
        }
    };
    let table = to_triangulation(&spine);
    let body = match format {
        Format::Json => json(&table)?,
        Format::Csv => csv(&table.gluings.iter().map(|&g| <[usize; 5]>::from(g)).collect::<Vec<_>>())?,
        Format::Text => {
            let mut text = format!("{} tetrahedra\n", table.tets);
            for g in &table.gluings {
                writeln!(text, "{}.{} <-> {}.{} matching {}", g.tet, g.face, g.other_tet, g.other_face, g.matching)?;
            }
            text
        }
    };
    Ok(Emitted { stem: "triangulation", body, anomalies: false })
}

fn import_tri(format: Format, input: &Path) -> Result<Emitted> {
    let table: GluingTable = read_json(input)?;
    let spine = from_triangulation(&table)?;
    let classes = edge_class_report(&table);
    let (cells, anomalies) = match trace_cells(&spine) {
        Ok(c) => (Some(c.cell_count()), false),
        Err(e) => {
            eprintln!("anomaly: {e}");
            (None, true)
        }
    };
    #[derive(Serialize)]
    struct Imported {
        spine: Spine,
        cells: Option<usize>,
        edge_classes: usize,
        class_sizes: Vec<usize>,
        reversed_classes: usize,
        agree: bool,
    }
    let report = Imported {
        agree: cells == Some(classes.classes),
        spine,
        cells,
        edge_classes: classes.classes,
        class_sizes: classes.class_sizes,
        reversed_classes: classes.reversed_classes,
    };
    let body = match format {
        Format::Json => json(&report)?,
        Format::Csv => {
            #[derive(Serialize)]
            struct Row {
                tets: usize,
                cells: Option<usize>,
                edge_classes: usize,
                agree: bool,
            }
            csv(&[Row {
                tets: table.tets,
                cells: report.cells,
                edge_classes: report.edge_classes,
                agree: report.agree,
            }])?
        }
        Format::Text => format!(
            "{} tetrahedra, {} edge classes, {} cells\n",
            table.tets,
            report.edge_classes,
            report.cells.map_or("-".into(), |c| c.to_string())
        ),
    };
    Ok(Emitted { stem: "import", body, anomalies: anomalies || !report.agree })
}

#[derive(Serialize)]
struct BollobasRow {
    r: u64,
    n: u64,
    ln_estimate: f64,
    ln_exact: Option<f64>,
    residual: Option<f64>,
    stirling_residual: Option<f64>,
}

fn bollobas(format: Format, r: u64, from: u64, to: u64) -> Result<Emitted> {
    if from == 0 || from > to {
        bail!("empty range {from}..={to}");
    }
    let rows = (from..=to)
        .map(|n| {
            Ok(BollobasRow {
                r,
                n,
                ln_estimate: bollobas_ln_estimate(r, n)?,
                ln_exact: if r * n <= 200 { Some(bollobas_ln_exact(r, n)?) } else { None },
                residual: (r == 4).then(|| asymptotic_residual(n)),
                stirling_residual: (r == 4).then(|| stirling_residual(n)),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let body = match format {
        Format::Json => json(&rows)?,
        Format::Csv => csv(&rows)?,
        Format::Text => {
            let mut text = String::new();
            for row in &rows {
                writeln!(
                    text,
                    "r={} n={} ln U = {:.6} residual = {}",
                    row.r,
                    row.n,
                    row.ln_estimate,
                    fmt_opt(row.residual)
                )?;
            }
            text
        }
    };
    Ok(Emitted { stem: "bollobas", body, anomalies: false })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decoration_index_inverts_the_numbering() {
        let g = enumerate_c_with_limit(2, 2).unwrap().remove(1);
        for i in [0u64, 1, 5, 100, 323] {
            assert_eq!(decoration_index(&Spine::from_decoration_index(g.clone(), i).unwrap()), i);
        }
    }

    #[test]
    fn decoration_row_text() {
        let g = enumerate_c_with_limit(1, 1).unwrap().remove(0);
        let row = DecorationRow::of(&Spine::from_decoration_index(g, 5).unwrap());
        assert_eq!((row.chirality.as_str(), row.gluing.as_str()), ("-", "20"));
    }
}
