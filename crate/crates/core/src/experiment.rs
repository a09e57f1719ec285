//! Noise sweeps and the tables they produce.
//!
//! A sweep perturbs the graph for every `(level, trial)` item, measures a
//! list of named quantities on each perturbed graph and aggregates them per
//! `(level, subject)`. Items can be measured in any order or in parallel
//! ([`measure_item`]); [`aggregate`] always produces the same table.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::centrality::{
    betweenness_all, closeness_all, degree_all, pagerank, PageRankConfig, ScoreMap,
};
use crate::community::{
    conductance, cut_ratio, mean_permanence, modularity, modularity_components, permanence_all,
    permanence_components,
};
use crate::error::{Error, Result};
use crate::graph::{CommunityAssignment, Graph};
use crate::noise::{perturb, NoiseModel};
use crate::stats::Summary;

/// Vertex scores that can rank vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Metric {
    Permanence,
    Closeness,
    Betweenness,
    PageRank,
    Degree,
}

impl Metric {
    pub fn name(self) -> &'static str {
        match self {
            Metric::Permanence => "permanence",
            Metric::Closeness => "closeness",
            Metric::Betweenness => "betweenness",
            Metric::PageRank => "pagerank",
            Metric::Degree => "degree",
        }
    }

    pub(crate) fn tag(self) -> u64 {
        match self {
            Metric::Permanence => 1,
            Metric::Closeness => 2,
            Metric::Betweenness => 3,
            Metric::PageRank => 4,
            Metric::Degree => 5,
        }
    }

    /// Scores every vertex. Permanence needs `assign`.
    pub fn scores(self, graph: &Graph, assign: Option<&CommunityAssignment>) -> Result<ScoreMap> {
        match self {
            Metric::Permanence => {
                let assign = assign.ok_or(Error::MissingAssignment)?;
                let values = permanence_all(graph, assign)?
                    .into_iter()
                    .map(|b| b.permanence)
                    .collect();
                Ok(ScoreMap::new(values))
            }
            Metric::Closeness => closeness_all(graph),
            Metric::Betweenness => betweenness_all(graph),
            Metric::PageRank => pagerank(graph, &PageRankConfig::default()),
            Metric::Degree => Ok(degree_all(graph)),
        }
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Metric {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "permanence" => Ok(Metric::Permanence),
            "closeness" => Ok(Metric::Closeness),
            "betweenness" => Ok(Metric::Betweenness),
            "pagerank" => Ok(Metric::PageRank),
            "degree" => Ok(Metric::Degree),
            _ => Err(Error::InvalidParameter("unknown metric")),
        }
    }
}

/// One aggregated `(model, level, subject)` cell.
#[derive(Debug, Clone, PartialEq)]
pub struct TableRow {
    pub noise_model: NoiseModel,
    pub noise_pct: u32,
    pub subject: String,
    pub mean: f64,
    pub stddev: f64,
    pub trials: usize,
}

/// A work item that produced no measurement.
#[derive(Debug, Clone, PartialEq)]
pub struct FailedItem {
    pub noise_model: NoiseModel,
    pub noise_pct: u32,
    pub trial: usize,
    pub error: Error,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ExperimentTable {
    pub rows: Vec<TableRow>,
    pub failures: Vec<FailedItem>,
}

impl ExperimentTable {
    pub fn extend(&mut self, other: ExperimentTable) {
        self.rows.extend(other.rows);
        self.failures.extend(other.failures);
    }

    pub fn row(&self, model: NoiseModel, noise_pct: u32, subject: &str) -> Option<&TableRow> {
        self.rows
            .iter()
            .find(|r| r.noise_model == model && r.noise_pct == noise_pct && r.subject == subject)
    }

    /// `(mean at from_pct, mean at to_pct)` for every model and subject that has both rows.
    pub fn range_tuples(&self, from_pct: u32, to_pct: u32) -> Vec<RangeTuple> {
        let mut out = Vec::new();
        for row in self.rows.iter().filter(|r| r.noise_pct == from_pct) {
            if let Some(end) = self.row(row.noise_model, to_pct, &row.subject) {
                out.push(RangeTuple {
                    noise_model: row.noise_model,
                    subject: row.subject.clone(),
                    start: row.mean,
                    end: end.mean,
                });
            }
        }
        out
    }
}

/// Average value of a subject at the two ends of a noise range.
#[derive(Debug, Clone, PartialEq)]
pub struct RangeTuple {
    pub noise_model: NoiseModel,
    pub subject: String,
    pub start: f64,
    pub end: f64,
}

/// Noise level as an integer percentage.
pub fn noise_pct(level: f64) -> u32 {
    libm::round(level * 100.0) as u32
}

/// Named measurements of one perturbed graph.
pub type Measurements = Vec<(String, f64)>;

/// Outcome of one `(level, trial)` item.
#[derive(Debug, Clone, PartialEq)]
pub struct ItemResult {
    pub level: f64,
    pub trial: usize,
    pub outcome: Result<Measurements>,
}

/// Perturbs `graph` for one item and measures the result.
///
/// `measure` receives the perturbed graph, the level and the trial index.
pub fn measure_item<F>(
    graph: &Graph,
    model: NoiseModel,
    level: f64,
    trial: usize,
    master_seed: u64,
    measure: &F,
) -> ItemResult
where
    F: Fn(&Graph, f64, usize) -> Result<Measurements>,
{
    let outcome =
        perturb(graph, model, level, trial, master_seed).and_then(|g| measure(&g, level, trial));
    ItemResult {
        level,
        trial,
        outcome,
    }
}

/// Folds item results into rows ordered by level (as listed), then by the
/// subject order of the measurements. Levels where every item failed get no rows.
pub fn aggregate(model: NoiseModel, levels: &[f64], items: &[ItemResult]) -> ExperimentTable {
    let mut table = ExperimentTable::default();
    for &level in levels {
        let pct = noise_pct(level);
        let mut subjects: Vec<String> = Vec::new();
        let mut samples: Vec<Vec<f64>> = Vec::new();
        let mut at_level: Vec<&ItemResult> = items.iter().filter(|it| it.level == level).collect();
        at_level.sort_by_key(|it| it.trial);
        for item in at_level {
            match &item.outcome {
                Ok(values) => {
                    for (name, value) in values {
                        let slot = match subjects.iter().position(|s| s == name) {
                            Some(i) => i,
                            None => {
                                subjects.push(name.clone());
                                samples.push(Vec::new());
                                subjects.len() - 1
                            }
                        };
                        samples[slot].push(*value);
                    }
                }
                Err(error) => table.failures.push(FailedItem {
                    noise_model: model,
                    noise_pct: pct,
                    trial: item.trial,
                    error: error.clone(),
                }),
            }
        }
        for (subject, values) in subjects.into_iter().zip(samples) {
            if let Some(summary) = Summary::from_samples(&values) {
                table.rows.push(TableRow {
                    noise_model: model,
                    noise_pct: pct,
                    subject,
                    mean: summary.mean,
                    stddev: summary.stddev,
                    trials: summary.trials,
                });
            }
        }
    }
    table
}

/// Sequential sweep over `levels x 0..trials`.
pub fn sweep<F>(
    graph: &Graph,
    model: NoiseModel,
    levels: &[f64],
    trials: usize,
    master_seed: u64,
    measure: F,
) -> Result<ExperimentTable>
where
    F: Fn(&Graph, f64, usize) -> Result<Measurements>,
{
    if trials == 0 {
        return Err(Error::InvalidParameter("trials must be at least 1"));
    }
    let items: Vec<ItemResult> = levels
        .iter()
        .flat_map(|&level| (0..trials).map(move |trial| (level, trial)))
        .map(|(level, trial)| measure_item(graph, model, level, trial, master_seed, &measure))
        .collect();
    Ok(aggregate(model, levels, &items))
}

/// Subjects of the sensitivity sweep, in emission order.
pub const SENSITIVITY_SUBJECTS: [&str; 8] = [
    "permanence",
    "closeness",
    "betweenness",
    "betweenness_norm",
    "pagerank",
    "modularity",
    "conductance",
    "cut_ratio",
];

/// Vertex-mean centralities and community scores of `graph` against `assign`.
///
/// `betweenness_norm` divides by the `(n - 1)(n - 2) / 2` pair count.
pub fn sensitivity_values(graph: &Graph, assign: &CommunityAssignment) -> Result<Measurements> {
    let n = graph.vertex_count() as f64;
    let betweenness = betweenness_all(graph)?.mean();
    let pairs = (n - 1.0) * (n - 2.0) / 2.0;
    let values = [
        mean_permanence(graph, assign)?,
        closeness_all(graph)?.mean(),
        betweenness,
        if pairs > 0.0 {
            betweenness / pairs
        } else {
            0.0
        },
        pagerank(graph, &PageRankConfig::default())?.mean(),
        modularity(graph, assign)?,
        conductance(graph, assign)?.network_value,
        cut_ratio(graph, assign)?.network_value,
    ];
    Ok(SENSITIVITY_SUBJECTS
        .iter()
        .zip(values)
        .map(|(s, v)| (s.to_string(), v))
        .collect())
}

/// Subjects of the decomposition sweep, in emission order.
pub const DECOMPOSITION_SUBJECTS: [&str; 4] = [
    "pull_term",
    "internal_clustering",
    "intra_edges",
    "inter_edges",
];

/// Mean permanence pull term and internal clustering, plus modularity's
/// intra- and inter-community edge fractions.
pub fn decomposition_values(graph: &Graph, assign: &CommunityAssignment) -> Result<Measurements> {
    let (pull, clustering) = permanence_components(graph, assign)?;
    let parts = modularity_components(graph, assign)?;
    let values = [
        pull,
        clustering,
        parts.intra_edge_fraction,
        parts.inter_edge_fraction,
    ];
    Ok(DECOMPOSITION_SUBJECTS
        .iter()
        .zip(values)
        .map(|(s, v)| (s.to_string(), v))
        .collect())
}

/// Sensitivity sweep: every metric on every perturbed graph, community
/// scores always against the original assignment.
pub fn sensitivity_table(
    graph: &Graph,
    assign: &CommunityAssignment,
    model: NoiseModel,
    levels: &[f64],
    trials: usize,
    master_seed: u64,
) -> Result<ExperimentTable> {
    assign.check(graph)?;
    sweep(graph, model, levels, trials, master_seed, |g, _, _| {
        sensitivity_values(g, assign)
    })
}

/// Decomposition sweep; see [`decomposition_values`].
pub fn decomposition_table(
    graph: &Graph,
    assign: &CommunityAssignment,
    model: NoiseModel,
    levels: &[f64],
    trials: usize,
    master_seed: u64,
) -> Result<ExperimentTable> {
    assign.check(graph)?;
    sweep(graph, model, levels, trials, master_seed, |g, _, _| {
        decomposition_values(g, assign)
    })
}
