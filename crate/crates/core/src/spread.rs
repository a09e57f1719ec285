//! Synchronous push broadcast with metric-driven seed selection.
//!
//! Round semantics: every vertex informed at the start of a round that still
//! has a neighbor uninformed at the start of that round pushes the message to
//! one such neighbor chosen uniformly at random. Vertices informed during a
//! round start pushing in the next one. Informed vertices with no uninformed
//! neighbor stay idle.

use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use rand::Rng;

use crate::error::{Error, Result};
use crate::experiment::{sweep, ExperimentTable, Measurements, Metric};
use crate::graph::{CommunityAssignment, Graph};
use crate::noise::{level_key, removal_count, stream_rng, NoiseModel};

/// How seeds are picked.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StrategyKind {
    /// Highest-ranked vertices of a metric.
    Ranked(Metric),
    /// Distinct vertices drawn uniformly.
    Random,
}

impl StrategyKind {
    /// The six strategies of the reliability experiment.
    pub const ALL: [StrategyKind; 6] = [
        StrategyKind::Ranked(Metric::Permanence),
        StrategyKind::Ranked(Metric::Closeness),
        StrategyKind::Ranked(Metric::Betweenness),
        StrategyKind::Ranked(Metric::PageRank),
        StrategyKind::Ranked(Metric::Degree),
        StrategyKind::Random,
    ];

    pub fn name(self) -> &'static str {
        match self {
            StrategyKind::Ranked(metric) => metric.name(),
            StrategyKind::Random => "random",
        }
    }

    fn tag(self) -> u64 {
        match self {
            StrategyKind::Ranked(metric) => metric.tag(),
            StrategyKind::Random => 99,
        }
    }
}

impl fmt::Display for StrategyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for StrategyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.trim().eq_ignore_ascii_case("random") {
            Ok(StrategyKind::Random)
        } else {
            s.parse().map(StrategyKind::Ranked)
        }
    }
}

/// Seed selection rule: a kind plus the fraction of vertices to seed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeedStrategy {
    pub kind: StrategyKind,
    pub fraction: f64,
}

impl SeedStrategy {
    pub fn new(kind: StrategyKind, fraction: f64) -> Result<Self> {
        if fraction > 0.0 && fraction <= 1.0 {
            Ok(SeedStrategy { kind, fraction })
        } else {
            Err(Error::InvalidParameter("seed fraction must lie in (0, 1]"))
        }
    }

    /// `max(1, round(fraction * n))`, capped at `n`.
    pub fn seed_count(&self, vertex_count: usize) -> usize {
        removal_count(self.fraction, vertex_count)
            .max(1)
            .min(vertex_count)
    }
}

/// Seed vertices, ascending. Ranked kinds are deterministic; `rng` is only
/// consumed by [`StrategyKind::Random`].
pub fn select_seeds<R: Rng + ?Sized>(
    graph: &Graph,
    assign: Option<&CommunityAssignment>,
    strategy: &SeedStrategy,
    rng: &mut R,
) -> Result<Vec<usize>> {
    let n = graph.vertex_count();
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    let k = strategy.seed_count(n);
    let mut seeds = match strategy.kind {
        StrategyKind::Ranked(metric) => {
            crate::centrality::top_k(&metric.scores(graph, assign)?, k)?
        }
        StrategyKind::Random => rand::seq::index::sample(rng, n, k).into_vec(),
    };
    seeds.sort_unstable();
    Ok(seeds)
}

/// Rounds needed to inform every vertex, and the informed count after each round.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpreadTrialResult {
    pub iterations: usize,
    /// Informed count at the start and after every round; ends at `|V|`.
    pub coverage_curve: Vec<usize>,
}

/// Runs the push protocol from `seeds` until every vertex is informed.
pub fn broadcast_time<R: Rng + ?Sized>(
    graph: &Graph,
    seeds: &[usize],
    rng: &mut R,
) -> Result<SpreadTrialResult> {
    let n = graph.vertex_count();
    if seeds.is_empty() {
        return Err(Error::InvalidParameter("at least one seed is required"));
    }
    for &s in seeds {
        graph.check_vertex(s)?;
    }
    if !graph.is_connected() {
        return Err(Error::Disconnected);
    }

    // round in which each vertex was informed; seeds are round 0
    let mut informed_at: Vec<Option<usize>> = vec![None; n];
    let mut active: Vec<usize> = Vec::new();
    for &s in seeds {
        if informed_at[s].is_none() {
            informed_at[s] = Some(0);
            active.push(s);
        }
    }
    let mut informed = active.len();
    let mut curve = vec![informed];
    let mut candidates = Vec::new();
    let mut round = 0;
    // each round informs at least one new vertex on a connected graph
    let cap = n;

    while informed < n {
        round += 1;
        if round > cap {
            return Err(Error::RoundCapExceeded(cap));
        }
        let pushing = active.len();
        let mut keep = Vec::with_capacity(pushing);
        for i in 0..pushing {
            let v = active[i];
            candidates.clear();
            candidates.extend(
                graph
                    .neighbors(v)
                    .iter()
                    .copied()
                    .filter(|&w| informed_at[w].is_none_or(|r| r == round)),
            );
            if candidates.is_empty() {
                continue;
            }
            keep.push(v);
            let w = candidates[rng.random_range(0..candidates.len())];
            if informed_at[w].is_none() {
                informed_at[w] = Some(round);
                informed += 1;
                active.push(w);
            }
        }
        keep.extend_from_slice(&active[pushing..]);
        active = keep;
        curve.push(informed);
    }
    Ok(SpreadTrialResult {
        iterations: curve.len() - 1,
        coverage_curve: curve,
    })
}

/// Options of [`spreading_experiment`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SpreadOptions {
    /// Select seeds once on the original graph instead of on each perturbed graph.
    pub reuse_original_seeds: bool,
}

/// Random-stream purpose tags; noise itself uses purpose 0.
const SPREAD_PURPOSE: u64 = 1 << 8;

/// Mean and spread of broadcast time per `(level, strategy)` over
/// trial-specific perturbed graphs.
///
/// Seeds are re-selected on every perturbed graph unless
/// [`SpreadOptions::reuse_original_seeds`] is set. Each strategy draws from
/// its own stream `stream_seed(master, model, level, trial, 256 + tag)`.
#[allow(clippy::too_many_arguments)]
pub fn spreading_experiment(
    graph: &Graph,
    assign: Option<&CommunityAssignment>,
    model: NoiseModel,
    levels: &[f64],
    strategies: &[SeedStrategy],
    trials: usize,
    master_seed: u64,
    options: SpreadOptions,
) -> Result<ExperimentTable> {
    let measure = spread_measure(graph, assign, model, strategies, master_seed, options)?;
    sweep(graph, model, levels, trials, master_seed, measure)
}

/// The per-item measurement behind [`spreading_experiment`], for callers
/// that schedule items themselves.
pub fn spread_measure<'a>(
    graph: &Graph,
    assign: Option<&'a CommunityAssignment>,
    model: NoiseModel,
    strategies: &'a [SeedStrategy],
    master_seed: u64,
    options: SpreadOptions,
) -> Result<impl Fn(&Graph, f64, usize) -> Result<Measurements> + 'a> {
    if let Some(a) = assign {
        a.check(graph)?;
    }
    let original_seeds: Vec<Option<Vec<usize>>> = if options.reuse_original_seeds {
        strategies
            .iter()
            .map(|s| match s.kind {
                StrategyKind::Ranked(_) => {
                    let mut unused = stream_rng(master_seed, 0, 0, 0, 0);
                    select_seeds(graph, assign, s, &mut unused).map(Some)
                }
                StrategyKind::Random => Ok(None),
            })
            .collect::<Result<_>>()?
    } else {
        vec![None; strategies.len()]
    };

    Ok(move |g: &Graph, level: f64, trial: usize| {
        let mut out = Vec::with_capacity(strategies.len());
        for (strategy, fixed) in strategies.iter().zip(&original_seeds) {
            let mut rng = stream_rng(
                master_seed,
                model.tag(),
                level_key(level),
                trial as u64,
                SPREAD_PURPOSE + strategy.kind.tag(),
            );
            let seeds = match fixed {
                Some(seeds) => seeds.clone(),
                None => select_seeds(g, assign, strategy, &mut rng)?,
            };
            let result = broadcast_time(g, &seeds, &mut rng)?;
            out.push((strategy.kind.name().to_string(), result.iterations as f64));
        }
        Ok(out)
    })
}
