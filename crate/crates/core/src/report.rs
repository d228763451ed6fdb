//! End-to-end runs behind the command-line tool: loading, analysis and the
//! files each subcommand writes.
//!
//! | subcommand  | files                                                       |
//! |-------------|-------------------------------------------------------------|
//! | `census`    | `supports.tsv` (or `supports.json`)                         |
//! | `truss`     | `truss.tsv` (or `truss.json`), `joint.tsv`, `report.json`   |
//! | `extract`   | `<type>_k<k>_comp<i>.edges`, `<type>_k<k>_comp<i>.dot`      |
//! | `randomize` | `random_<i>.edges`                                          |

use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::census::{edge_support, TriangleTotals};
use crate::error::{Error, Result};
use crate::graph::{load_edge_list_path, DirectedGraph, IngestReport};
use crate::metrics::{
    d_measure, joint_distribution, r_measure, reciprocity, truss_distribution, DMeasure, JointDistribution,
    TrussDistribution,
};
use crate::randomize::{ensemble_truss_cdf, rewire_samples, RewireConfig, RewireStats};
use crate::truss::{truss_components, truss_numbers, TrussAssignment, TrussComponent, TrussType};

pub const MEDIAN_RULE: &str = "smallest k with F(k) >= 0.5";

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum OutputFormat {
    #[default]
    Tsv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct EnsembleParams {
    pub samples: usize,
    pub seed: u64,
    pub swaps_per_edge: u64,
    pub max_attempts_per_edge: u64,
}

impl EnsembleParams {
    pub fn rewire_config(&self, edges: usize) -> Result<RewireConfig> {
        RewireConfig::per_edge(edges, self.swaps_per_edge, self.max_attempts_per_edge, self.seed)
    }
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub input: PathBuf,
    pub labels: Option<PathBuf>,
    pub out_dir: PathBuf,
    pub format: OutputFormat,
    pub ensemble: Option<EnsembleParams>,
}

impl RunConfig {
    pub fn new(input: impl Into<PathBuf>, out_dir: impl Into<PathBuf>) -> Self {
        RunConfig {
            input: input.into(),
            labels: None,
            out_dir: out_dir.into(),
            format: OutputFormat::Tsv,
            ensemble: None,
        }
    }

    fn load(&self) -> Result<(DirectedGraph, IngestReport)> {
        let (g, report) = load_edge_list_path(&self.input, self.labels.as_deref())?;
        if g.edge_count() == 0 {
            return Err(Error::NoEdges);
        }
        if let Some(e) = &self.ensemble {
            if e.samples == 0 {
                return Err(Error::arg("--samples must be at least 1"));
            }
        }
        fs::create_dir_all(&self.out_dir)?;
        Ok((g, report))
    }

    fn create(&self, name: &str) -> Result<BufWriter<File>> {
        Ok(BufWriter::new(File::create(self.out_dir.join(name))?))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CensusSummary {
    pub nodes: usize,
    pub edges: usize,
    pub cycle_triangles: u64,
    pub flow_triangles: u64,
    pub ingest: IngestReport,
}

#[derive(Serialize)]
struct SupportRow<'a> {
    source: &'a str,
    target: &'a str,
    cycle_support: u32,
    flow_support: u32,
}

/// Per-edge triangle supports; rows follow the cleaned input edge order.
pub fn run_census(cfg: &RunConfig) -> Result<CensusSummary> {
    let (g, ingest) = cfg.load()?;
    let sup = edge_support(&g);
    let totals: TriangleTotals = sup.totals();
    match cfg.format {
        OutputFormat::Tsv => {
            let mut w = cfg.create("supports.tsv")?;
            writeln!(w, "source\ttarget\tcycle_support\tflow_support")?;
            for (e, &(s, t)) in g.edges().iter().enumerate() {
                writeln!(w, "{}\t{}\t{}\t{}", g.token(s), g.token(t), sup.cycle[e], sup.flow[e])?;
            }
            w.flush()?;
        }
        OutputFormat::Json => {
            let rows: Vec<_> = g
                .edges()
                .iter()
                .enumerate()
                .map(|(e, &(s, t))| SupportRow {
                    source: g.token(s),
                    target: g.token(t),
                    cycle_support: sup.cycle[e],
                    flow_support: sup.flow[e],
                })
                .collect();
            write_json(cfg.create("supports.json")?, &rows)?;
        }
    }
    Ok(CensusSummary {
        nodes: g.node_count(),
        edges: g.edge_count(),
        cycle_triangles: totals.cycle_count,
        flow_triangles: totals.flow_count,
        ingest,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OverlapReport {
    #[serde(rename = "R")]
    pub value: Option<f64>,
    pub both: u64,
    pub either: u64,
    pub k_med_cycle: u32,
    pub k_med_flow: u32,
    pub reason: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EnsembleTypeReport {
    #[serde(flatten)]
    pub d: DMeasure,
    pub mean_cdf: Vec<f64>,
    pub per_sample_k_max: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EnsembleReport {
    #[serde(flatten)]
    pub params: EnsembleParams,
    pub target_successful_swaps: u64,
    pub max_attempts: u64,
    pub aggregation: &'static str,
    pub cycle: EnsembleTypeReport,
    pub flow: EnsembleTypeReport,
}

/// Everything `truss` computes for one network; serialized as `report.json`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MetricsReport {
    pub nodes: usize,
    pub edges: usize,
    pub ingest: IngestReport,
    pub reciprocity: f64,
    pub triangles: TriangleTotals,
    pub median_rule: &'static str,
    pub cycle: TrussDistribution,
    pub flow: TrussDistribution,
    pub overlap: OverlapReport,
    pub joint: JointDistribution,
    pub ensemble: Option<EnsembleReport>,
}

impl MetricsReport {
    pub fn k_max(&self, t: TrussType) -> u32 {
        self.distribution(t).k_max
    }

    pub fn distribution(&self, t: TrussType) -> &TrussDistribution {
        match t {
            TrussType::Cycle => &self.cycle,
            TrussType::Flow => &self.flow,
        }
    }
}

/// Truss numbers of both types with every derived measure.
pub struct Analysis {
    pub cycle: TrussAssignment,
    pub flow: TrussAssignment,
    pub report: MetricsReport,
}

/// Runs the full analysis on an in-memory graph.
pub fn analyze(g: &DirectedGraph, ingest: IngestReport, ensemble: Option<&EnsembleParams>) -> Result<Analysis> {
    if g.edge_count() == 0 {
        return Err(Error::NoEdges);
    }
    let (cycle, flow) = rayon::join(
        || truss_numbers(g, TrussType::Cycle),
        || truss_numbers(g, TrussType::Flow),
    );
    let cycle_dist = truss_distribution(&cycle)?;
    let flow_dist = truss_distribution(&flow)?;
    let r = r_measure(&cycle, &flow)?;
    let joint = joint_distribution(&cycle, &flow)?;
    if joint.cycle_marginal() != cycle_dist.counts || joint.flow_marginal() != flow_dist.counts {
        return Err(Error::Invariant("joint distribution marginals disagree with per-type counts".into()));
    }

    let ensemble = match ensemble {
        None => None,
        Some(p) => {
            let rc = p.rewire_config(g.edge_count())?;
            let per_type = |t: TrussType, dist: &TrussDistribution| -> Result<EnsembleTypeReport> {
                let ens = ensemble_truss_cdf(g, t, p.samples, &rc)?;
                Ok(EnsembleTypeReport {
                    d: d_measure(dist, &ens),
                    mean_cdf: ens.mean_cdf,
                    per_sample_k_max: ens.per_sample_kmax,
                })
            };
            Some(EnsembleReport {
                params: *p,
                target_successful_swaps: rc.target_successful_swaps,
                max_attempts: rc.max_attempts,
                aggregation: "mean of per-sample cumulative distributions",
                cycle: per_type(TrussType::Cycle, &cycle_dist)?,
                flow: per_type(TrussType::Flow, &flow_dist)?,
            })
        }
    };

    let report = MetricsReport {
        nodes: g.node_count(),
        edges: g.edge_count(),
        ingest,
        reciprocity: reciprocity(g)?,
        triangles: edge_support(g).totals(),
        median_rule: MEDIAN_RULE,
        cycle: cycle_dist,
        flow: flow_dist,
        overlap: OverlapReport {
            value: r.value,
            both: r.both,
            either: r.either,
            k_med_cycle: r.k_med_cycle,
            k_med_flow: r.k_med_flow,
            reason: r
                .value
                .is_none()
                .then(|| "no edge has a truss number above either median".to_owned()),
        },
        joint,
        ensemble,
    };
    Ok(Analysis { cycle, flow, report })
}

#[derive(Serialize)]
struct TrussRow<'a> {
    source: &'a str,
    target: &'a str,
    k_cycle: u32,
    k_flow: u32,
}

/// Per-edge truss numbers, the joint matrix and the JSON report.
pub fn run_truss(cfg: &RunConfig) -> Result<MetricsReport> {
    let (g, ingest) = cfg.load()?;
    let Analysis { cycle, flow, report } = analyze(&g, ingest, cfg.ensemble.as_ref())?;
    match cfg.format {
        OutputFormat::Tsv => {
            let mut w = cfg.create("truss.tsv")?;
            writeln!(w, "source\ttarget\tk_cycle\tk_flow")?;
            for (e, &(s, t)) in g.edges().iter().enumerate() {
                writeln!(w, "{}\t{}\t{}\t{}", g.token(s), g.token(t), cycle.numbers[e], flow.numbers[e])?;
            }
            w.flush()?;
        }
        OutputFormat::Json => {
            let rows: Vec<_> = g
                .edges()
                .iter()
                .enumerate()
                .map(|(e, &(s, t))| TrussRow {
                    source: g.token(s),
                    target: g.token(t),
                    k_cycle: cycle.numbers[e],
                    k_flow: flow.numbers[e],
                })
                .collect();
            write_json(cfg.create("truss.json")?, &rows)?;
        }
    }
    let mut w = cfg.create("joint.tsv")?;
    report.joint.write_tsv(&mut w)?;
    w.flush()?;
    write_json(cfg.create("report.json")?, &report)?;
    Ok(report)
}

/// Node names usable as edge-list tokens.
fn edge_token(name: &str) -> String {
    name.split_whitespace().collect::<Vec<_>>().join("_")
}

fn dot_escape(name: &str) -> String {
    name.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Membership class of an edge in the cycle and flow trusses being drawn.
fn edge_class(in_cycle: bool, in_flow: bool) -> (&'static str, &'static str) {
    match (in_cycle, in_flow) {
        (true, true) => ("both", "purple"),
        (true, false) => ("cycle", "blue"),
        (false, true) => ("flow", "red"),
        (false, false) => ("neither", "gray"),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ExtractedComponent {
    pub index: usize,
    pub edges: usize,
    pub nodes: Vec<String>,
    pub edge_file: PathBuf,
    pub dot_file: PathBuf,
}

/// Components of the k-truss of type `t`, largest first (ties: smallest node name).
pub fn ordered_components(g: &DirectedGraph, a: &TrussAssignment, k: u32) -> Vec<TrussComponent> {
    let mut comps = truss_components(g, a, k);
    let smallest = |c: &TrussComponent| c.nodes.iter().map(|&v| g.name(v)).min().map(str::to_owned);
    comps.sort_by_cached_key(|c| (std::cmp::Reverse(c.edges.len()), smallest(c)));
    comps
}

/// Writes one edge list and one DOT file per k-truss of type `t`.
///
/// DOT edges carry a `class` attribute (`cycle`, `flow`, `both`, `neither`) for
/// membership in the requested truss and in the most cohesive truss of the other
/// type.
pub fn run_extract(cfg: &RunConfig, t: TrussType, k: u32) -> Result<Vec<ExtractedComponent>> {
    let (g, _) = cfg.load()?;
    let (cycle, flow) = rayon::join(
        || truss_numbers(&g, TrussType::Cycle),
        || truss_numbers(&g, TrussType::Flow),
    );
    let (this, other) = match t {
        TrussType::Cycle => (&cycle, &flow),
        TrussType::Flow => (&flow, &cycle),
    };
    let comps = ordered_components(&g, this, k);
    if comps.is_empty() {
        log::warn!("no {t} {k}-truss (k_max = {})", this.k_max);
    }

    let mut seen = vec![false; g.edge_count()];
    let mut written = Vec::with_capacity(comps.len());
    for (i, comp) in comps.iter().enumerate() {
        for &e in &comp.edges {
            if std::mem::replace(&mut seen[e], true) {
                return Err(Error::Invariant(format!("edge {e} appears in two {t} {k}-trusses")));
            }
        }
        let stem = format!("{t}_k{k}_comp{i}");
        let edge_file = cfg.out_dir.join(format!("{stem}.edges"));
        let dot_file = cfg.out_dir.join(format!("{stem}.dot"));

        let mut w = BufWriter::new(File::create(&edge_file)?);
        writeln!(w, "# {t} {k}-truss, component {i}: {} nodes, {} edges", comp.nodes.len(), comp.edges.len())?;
        for &e in &comp.edges {
            let (s, d) = g.edge(e);
            writeln!(w, "{} {}", edge_token(g.name(s)), edge_token(g.name(d)))?;
        }
        w.flush()?;

        let other_level = other.k_max;
        let mut w = BufWriter::new(File::create(&dot_file)?);
        writeln!(w, "digraph \"{stem}\" {{")?;
        for &v in &comp.nodes {
            writeln!(w, "  \"{}\";", dot_escape(g.name(v)))?;
        }
        for &e in &comp.edges {
            let (s, d) = g.edge(e);
            let in_this = this.numbers[e] >= k;
            let in_other = other_level > 0 && other.numbers[e] >= other_level;
            let (in_cycle, in_flow) = match t {
                TrussType::Cycle => (in_this, in_other),
                TrussType::Flow => (in_other, in_this),
            };
            let (class, color) = edge_class(in_cycle, in_flow);
            writeln!(
                w,
                "  \"{}\" -> \"{}\" [class=\"{class}\", color=\"{color}\", k_cycle={}, k_flow={}];",
                dot_escape(g.name(s)),
                dot_escape(g.name(d)),
                cycle.numbers[e],
                flow.numbers[e]
            )?;
        }
        writeln!(w, "}}")?;
        w.flush()?;

        written.push(ExtractedComponent {
            index: i,
            edges: comp.edges.len(),
            nodes: comp.nodes.iter().map(|&v| g.name(v).to_owned()).collect(),
            edge_file,
            dot_file,
        });
    }
    if cfg.format == OutputFormat::Json {
        write_json(cfg.create(&format!("{t}_k{k}_components.json"))?, &written)?;
    }
    Ok(written)
}

#[derive(Debug, Clone, Serialize)]
pub struct RandomizedSample {
    pub index: usize,
    pub file: PathBuf,
    #[serde(flatten)]
    pub stats: RewireStats,
}

/// Writes `samples` degree-preserving randomizations as edge lists.
pub fn run_randomize(cfg: &RunConfig) -> Result<Vec<RandomizedSample>> {
    let (g, _) = cfg.load()?;
    let params = cfg.ensemble.unwrap_or(EnsembleParams {
        samples: 1,
        seed: 0,
        swaps_per_edge: crate::randomize::DEFAULT_SWAPS_PER_EDGE,
        max_attempts_per_edge: crate::randomize::DEFAULT_ATTEMPTS_PER_EDGE,
    });
    let rc = params.rewire_config(g.edge_count())?;
    let mut out = Vec::with_capacity(params.samples);
    for (i, (h, stats)) in rewire_samples(&g, params.samples, &rc).into_iter().enumerate() {
        let file = cfg.out_dir.join(format!("random_{i}.edges"));
        let mut w = BufWriter::new(File::create(&file)?);
        h.write_edge_list(&mut w)?;
        w.flush()?;
        out.push(RandomizedSample { index: i, file, stats });
    }
    if cfg.format == OutputFormat::Json {
        write_json(cfg.create("randomize.json")?, &out)?;
    }
    Ok(out)
}

fn write_json<W: Write, T: Serialize + ?Sized>(mut w: W, value: &T) -> Result<()> {
    serde_json::to_writer_pretty(&mut w, value).map_err(std::io::Error::from)?;
    writeln!(w)?;
    w.flush()?;
    Ok(())
}

/// Reads an edge list written by [`run_extract`] back into a graph.
pub fn load_component_file(path: &Path) -> Result<DirectedGraph> {
    Ok(load_edge_list_path(path, None)?.0)
}
