//! Top-k rank stability under noise, measured with the Jaccard index.

use alloc::string::ToString;
use alloc::vec::Vec;

use crate::centrality::top_k;
use crate::error::{Error, Result};
use crate::experiment::{noise_pct, sweep, ExperimentTable, FailedItem, Measurements, Metric};
use crate::graph::{CommunityAssignment, Graph};
use crate::noise::NoiseModel;

/// `|a ∩ b| / |a ∪ b|`; duplicates inside either slice are ignored.
pub fn jaccard_index(a: &[usize], b: &[usize]) -> Result<f64> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_unstable();
    a.dedup();
    b.sort_unstable();
    b.dedup();
    if a.is_empty() && b.is_empty() {
        return Err(Error::EmptySets);
    }
    let common = a.iter().filter(|x| b.binary_search(x).is_ok()).count();
    Ok(common as f64 / (a.len() + b.len() - common) as f64)
}

/// Jaccard statistics at one noise level.
#[derive(Debug, Clone, PartialEq)]
pub struct StabilityPoint {
    pub level: f64,
    pub mean: f64,
    pub stddev: f64,
    /// Feasible trials; 0 means every perturbation at this level failed.
    pub trials: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct StabilityCurve {
    pub metric: Metric,
    pub model: NoiseModel,
    /// One point per requested level, in request order.
    pub points: Vec<StabilityPoint>,
    pub failures: Vec<FailedItem>,
}

/// Jaccard index between the metric's top-k set on the original graph and on
/// each perturbed graph. Permanence always ranks with the original assignment.
#[allow(clippy::too_many_arguments)]
pub fn stability_curve(
    graph: &Graph,
    assign: Option<&CommunityAssignment>,
    metric: Metric,
    model: NoiseModel,
    k: usize,
    levels: &[f64],
    trials: usize,
    master_seed: u64,
) -> Result<StabilityCurve> {
    let table = stability_table(
        graph,
        assign,
        &[metric],
        model,
        k,
        levels,
        trials,
        master_seed,
    )?;
    let points = levels
        .iter()
        .map(
            |&level| match table.row(model, noise_pct(level), metric.name()) {
                Some(row) => StabilityPoint {
                    level,
                    mean: row.mean,
                    stddev: row.stddev,
                    trials: row.trials,
                },
                None => StabilityPoint {
                    level,
                    mean: 0.0,
                    stddev: 0.0,
                    trials: 0,
                },
            },
        )
        .collect();
    Ok(StabilityCurve {
        metric,
        model,
        points,
        failures: table.failures,
    })
}

/// Stability of several metrics at once, sharing each perturbed graph.
/// Rows have the metric name as subject.
#[allow(clippy::too_many_arguments)]
pub fn stability_table(
    graph: &Graph,
    assign: Option<&CommunityAssignment>,
    metrics: &[Metric],
    model: NoiseModel,
    k: usize,
    levels: &[f64],
    trials: usize,
    master_seed: u64,
) -> Result<ExperimentTable> {
    let measure = stability_measure(graph, assign, metrics, k)?;
    sweep(graph, model, levels, trials, master_seed, measure)
}

/// The per-item measurement behind [`stability_table`], for callers that
/// schedule items themselves.
pub fn stability_measure<'a>(
    graph: &Graph,
    assign: Option<&'a CommunityAssignment>,
    metrics: &'a [Metric],
    k: usize,
) -> Result<impl Fn(&Graph, f64, usize) -> Result<Measurements> + 'a> {
    let n = graph.vertex_count();
    if k == 0 || k > n {
        return Err(Error::InvalidK { k, n });
    }
    let baselines: Vec<Vec<usize>> = metrics
        .iter()
        .map(|m| top_k(&m.scores(graph, assign)?, k))
        .collect::<Result<_>>()?;
    Ok(move |g: &Graph, _: f64, _: usize| {
        metrics
            .iter()
            .zip(&baselines)
            .map(|(m, base)| {
                let now = top_k(&m.scores(g, assign)?, k)?;
                Ok((m.name().to_string(), jaccard_index(base, &now)?))
            })
            .collect()
    })
}
