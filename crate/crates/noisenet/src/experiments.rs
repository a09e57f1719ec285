//! The four experiments, run with work items fanned out over a thread pool.
//!
//! Each `(level, trial)` item is measured independently from its own random
//! stream, so the aggregated table does not depend on scheduling.

use std::path::Path;

use log::{info, warn};
use noisenet_core::experiment::{
    aggregate, decomposition_values, measure_item, noise_pct, sensitivity_values, ItemResult,
    Measurements, RangeTuple,
};
use noisenet_core::spread::{spread_measure, SpreadOptions};
use noisenet_core::stability::stability_measure;
use noisenet_core::{
    giant_component, CommunityAssignment, ExperimentTable, Graph, Metric, NoiseModel, SeedStrategy,
    StrategyKind,
};
use rayon::prelude::*;

use crate::config::{Experiment, NetworkFormat, RunSpec, Source};
use crate::error::{Error, Result};
use crate::formats::{load_communities, load_edge_list, load_gml, load_lfr, IdMap};

/// A network restricted to its giant component, with optional ground truth.
#[derive(Debug, Clone)]
pub struct Dataset {
    pub graph: Graph,
    pub assignment: Option<CommunityAssignment>,
    pub ids: IdMap,
    /// Vertices outside the giant component that were discarded.
    pub dropped_vertices: usize,
}

impl Dataset {
    pub fn new(graph: Graph, assignment: Option<CommunityAssignment>, ids: IdMap) -> Result<Self> {
        if let Some(a) = &assignment {
            if a.vertex_count() != graph.vertex_count() {
                return Err(noisenet_core::Error::AssignmentMismatch {
                    assigned: a.vertex_count(),
                    vertices: graph.vertex_count(),
                }
                .into());
            }
        }
        let giant = giant_component(&graph)?;
        let dropped_vertices = graph.vertex_count() - giant.len();
        if dropped_vertices == 0 {
            return Ok(Dataset {
                graph,
                assignment,
                ids,
                dropped_vertices,
            });
        }
        warn!("keeping the giant component: dropped {dropped_vertices} vertices");
        Ok(Dataset {
            graph: graph.induced_subgraph(&giant)?,
            assignment: assignment.map(|a| a.restrict(&giant)).transpose()?,
            ids: ids.restrict(&giant),
            dropped_vertices,
        })
    }

    fn require_assignment(&self) -> Result<&CommunityAssignment> {
        self.assignment.as_ref().ok_or_else(|| {
            Error::Config("this experiment needs a ground-truth community assignment".into())
        })
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::io(path, e))
}

pub fn load_dataset(source: &Source) -> Result<Dataset> {
    let text = read(&source.network)?;
    match source.format {
        NetworkFormat::Edges => {
            let loaded = load_edge_list(&text)?;
            report_ingest(&loaded.report);
            let assignment = match &source.communities {
                Some(path) => Some(load_communities(&read(path)?, &loaded.ids)?),
                None => None,
            };
            Dataset::new(loaded.graph, assignment, loaded.ids)
        }
        NetworkFormat::Gml => {
            let (loaded, values) = load_gml(&text)?;
            report_ingest(&loaded.report);
            let assignment = match &source.communities {
                Some(path) => Some(load_communities(&read(path)?, &loaded.ids)?),
                None => values,
            };
            Dataset::new(loaded.graph, assignment, loaded.ids)
        }
        NetworkFormat::Lfr => {
            let path = source
                .communities
                .as_ref()
                .ok_or_else(|| Error::Config("LFR input needs a community file".into()))?;
            let (graph, assignment) = load_lfr(&text, &read(path)?)?;
            let mut ids = IdMap::new();
            for v in 0..graph.vertex_count() {
                ids.intern(&(v + 1).to_string());
            }
            Dataset::new(graph, Some(assignment), ids)
        }
    }
}

fn report_ingest(report: &noisenet_core::IngestReport) {
    if report.self_loops > 0 {
        warn!("dropped {} self-loops", report.self_loops);
    }
    if report.duplicate_edges > 0 {
        info!("collapsed {} duplicate edges", report.duplicate_edges);
    }
}

/// Models, levels, trials and master seed shared by all experiments.
#[derive(Debug, Clone, PartialEq)]
pub struct Sweep {
    pub models: Vec<NoiseModel>,
    pub levels: Vec<f64>,
    pub trials: usize,
    pub seed: u64,
}

impl Sweep {
    fn check(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::Config("trials must be at least 1".into()));
        }
        Ok(())
    }
}

/// Runs every `(model, level, trial)` item in parallel; aggregation is
/// sequential and ordered by model, then level, then subject.
fn fan_out<F>(graph: &Graph, sweep: &Sweep, measure: F) -> Result<ExperimentTable>
where
    F: Fn(&Graph, f64, usize) -> noisenet_core::Result<Measurements> + Sync,
{
    sweep.check()?;
    let mut table = ExperimentTable::default();
    for &model in &sweep.models {
        let items: Vec<ItemResult> = sweep
            .levels
            .iter()
            .flat_map(|&level| (0..sweep.trials).map(move |trial| (level, trial)))
            .collect::<Vec<_>>()
            .into_par_iter()
            .map(|(level, trial)| measure_item(graph, model, level, trial, sweep.seed, &measure))
            .collect();
        table.extend(aggregate(model, &sweep.levels, &items));
    }
    Ok(table)
}

/// Mean centralities and community scores on every perturbed graph, scored
/// against the original assignment.
pub fn run_sensitivity(data: &Dataset, sweep: &Sweep) -> Result<ExperimentTable> {
    let assign = data.require_assignment()?;
    fan_out(&data.graph, sweep, |g, _, _| sensitivity_values(g, assign))
}

/// Broadcast time per seeding strategy.
pub fn run_reliability(
    data: &Dataset,
    sweep: &Sweep,
    strategies: &[SeedStrategy],
    options: SpreadOptions,
) -> Result<ExperimentTable> {
    let assign = data.assignment.as_ref();
    if assign.is_none()
        && strategies
            .iter()
            .any(|s| s.kind == StrategyKind::Ranked(Metric::Permanence))
    {
        data.require_assignment()?;
    }
    let mut table = ExperimentTable::default();
    for &model in &sweep.models {
        let measure = spread_measure(&data.graph, assign, model, strategies, sweep.seed, options)?;
        let single = Sweep {
            models: vec![model],
            ..sweep.clone()
        };
        table.extend(fan_out(&data.graph, &single, measure)?);
    }
    Ok(table)
}

/// Jaccard index of each metric's top-k set before and after noise.
pub fn run_stability(
    data: &Dataset,
    sweep: &Sweep,
    metrics: &[Metric],
    k: usize,
) -> Result<ExperimentTable> {
    if metrics.contains(&Metric::Permanence) {
        data.require_assignment()?;
    }
    let measure = stability_measure(&data.graph, data.assignment.as_ref(), metrics, k)?;
    fan_out(&data.graph, sweep, measure)
}

/// Permanence pull term and internal clustering next to modularity's
/// intra- and inter-community edge fractions.
pub fn run_decomposition(data: &Dataset, sweep: &Sweep) -> Result<ExperimentTable> {
    let assign = data.require_assignment()?;
    fan_out(&data.graph, sweep, |g, _, _| {
        decomposition_values(g, assign)
    })
}

/// Table of a resolved run, plus range tuples for sensitivity runs.
#[derive(Debug, Clone, PartialEq)]
pub struct RunOutput {
    pub table: ExperimentTable,
    pub ranges: Vec<RangeTuple>,
}

/// Loads the data, runs the experiment and applies the strict policy.
pub fn run(spec: &RunSpec) -> Result<RunOutput> {
    let data = load_dataset(&spec.source)?;
    info!(
        "{}: {} vertices, {} edges",
        spec.source.network.display(),
        data.graph.vertex_count(),
        data.graph.edge_count()
    );
    run_on(&data, spec)
}

pub fn run_on(data: &Dataset, spec: &RunSpec) -> Result<RunOutput> {
    let sweep = Sweep {
        models: spec.models.clone(),
        levels: spec.levels.clone(),
        trials: spec.trials,
        seed: spec.seed,
    };
    let table = match spec.experiment {
        Experiment::Sensitivity => run_sensitivity(data, &sweep)?,
        Experiment::Reliability => {
            let strategies = spec
                .strategies
                .iter()
                .map(|&k| SeedStrategy::new(k, spec.fraction))
                .collect::<noisenet_core::Result<Vec<_>>>()?;
            let options = SpreadOptions {
                reuse_original_seeds: spec.reuse_seeds,
            };
            run_reliability(data, &sweep, &strategies, options)?
        }
        Experiment::Stability => run_stability(data, &sweep, &spec.metrics, spec.topk)?,
        Experiment::Decomposition => run_decomposition(data, &sweep)?,
    };
    for failure in &table.failures {
        warn!(
            "{} noise at {}%, trial {}: {}",
            failure.noise_model, failure.noise_pct, failure.trial, failure.error
        );
    }
    if spec.strict {
        if let Some(first) = table.failures.first() {
            return Err(Error::Infeasible {
                count: table.failures.len(),
                first: format!(
                    "{} noise at {}%, trial {}: {}",
                    first.noise_model, first.noise_pct, first.trial, first.error
                ),
            });
        }
    }
    let ranges = match spec.experiment {
        Experiment::Sensitivity => range_endpoints(&spec.levels)
            .map(|(from, to)| table.range_tuples(from, to))
            .unwrap_or_default(),
        _ => Vec::new(),
    };
    Ok(RunOutput { table, ranges })
}

/// Lowest nonzero and highest level, in percent.
fn range_endpoints(levels: &[f64]) -> Option<(u32, u32)> {
    let pcts: Vec<u32> = levels
        .iter()
        .map(|&l| noise_pct(l))
        .filter(|&p| p > 0)
        .collect();
    Some((*pcts.iter().min()?, *pcts.iter().max()?))
}
