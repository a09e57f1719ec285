//! Permanence and the classical community scoring functions, all evaluated
//! against a fixed ground-truth [`CommunityAssignment`].
//!
//! Permanence of a vertex `v` with `I` internal neighbors, degree `D`,
//! strongest external pull `E_max` and internal clustering coefficient `c_in`:
//!
//! ```text
//! P(v) = I / (E_max * D) - (1 - c_in)
//! ```
//!
//! Boundary conventions: `E_max = 1` when `v` has no external neighbor,
//! `c_in = 0` with fewer than two internal neighbors, `P = 0` for members of
//! singleton communities and for isolated vertices.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::{CommunityAssignment, Graph};

/// How a vertex's permanence was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PermanenceCase {
    /// The formula applies.
    Regular,
    /// Sole member of its community; permanence is 0 by definition.
    Singleton,
    /// Degree 0 in a larger community; scored 0 and flagged.
    Isolated,
}

/// Per-vertex terms of the permanence formula.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PermanenceBreakdown {
    pub vertex: usize,
    /// Neighbors in the vertex's own community.
    pub internal_degree: usize,
    /// Largest neighbor count in any single foreign community (1 if none).
    pub max_external_pull: usize,
    pub degree: usize,
    pub internal_clustering: f64,
    /// `I / (E_max * D)`.
    pub pull_term: f64,
    pub permanence: f64,
    pub case: PermanenceCase,
}

/// Per-community values and their unweighted mean.
#[derive(Debug, Clone, PartialEq)]
pub struct CommunityScore {
    /// Keyed by the original community label.
    pub per_community: BTreeMap<i64, f64>,
    pub network_value: f64,
}

/// Clustering coefficient of `v` restricted to same-community neighbors.
pub fn internal_clustering_coefficient(
    graph: &Graph,
    assign: &CommunityAssignment,
    v: usize,
) -> Result<f64> {
    assign.check(graph)?;
    graph.check_vertex(v)?;
    Ok(internal_cc(graph, &internal_neighbors(graph, assign, v)))
}

fn internal_neighbors(graph: &Graph, assign: &CommunityAssignment, v: usize) -> Vec<usize> {
    let c = assign.community_of(v);
    graph
        .neighbors(v)
        .iter()
        .copied()
        .filter(|&w| assign.community_of(w) == c)
        .collect()
}

fn internal_cc(graph: &Graph, inner: &[usize]) -> f64 {
    let k = inner.len();
    if k < 2 {
        return 0.0;
    }
    // both lists are sorted; count each internal pair once via merge
    let mut links = 0usize;
    for (i, &a) in inner.iter().enumerate() {
        let rest = &inner[i + 1..];
        let na = graph.neighbors(a);
        let (mut x, mut y) = (0, 0);
        while x < na.len() && y < rest.len() {
            match na[x].cmp(&rest[y]) {
                core::cmp::Ordering::Less => x += 1,
                core::cmp::Ordering::Greater => y += 1,
                core::cmp::Ordering::Equal => {
                    links += 1;
                    x += 1;
                    y += 1;
                }
            }
        }
    }
    links as f64 / ((k * (k - 1) / 2) as f64)
}

/// Permanence of `v` with all of its terms.
pub fn vertex_permanence(
    graph: &Graph,
    assign: &CommunityAssignment,
    v: usize,
) -> Result<PermanenceBreakdown> {
    assign.check(graph)?;
    graph.check_vertex(v)?;
    Ok(breakdown(graph, assign, v))
}

fn breakdown(graph: &Graph, assign: &CommunityAssignment, v: usize) -> PermanenceBreakdown {
    let c = assign.community_of(v);
    let degree = graph.degree(v);
    let inner = internal_neighbors(graph, assign, v);

    let mut foreign: Vec<usize> = graph
        .neighbors(v)
        .iter()
        .map(|&w| assign.community_of(w))
        .filter(|&d| d != c)
        .collect();
    foreign.sort_unstable();
    let mut max_external = 0;
    let mut run = 0;
    for (i, &d) in foreign.iter().enumerate() {
        run = if i > 0 && foreign[i - 1] == d {
            run + 1
        } else {
            1
        };
        max_external = max_external.max(run);
    }

    let mut out = PermanenceBreakdown {
        vertex: v,
        internal_degree: inner.len(),
        max_external_pull: max_external.max(1),
        degree,
        internal_clustering: 0.0,
        pull_term: 0.0,
        permanence: 0.0,
        case: PermanenceCase::Regular,
    };
    if assign.size(c) == 1 {
        out.case = PermanenceCase::Singleton;
        return out;
    }
    if degree == 0 {
        out.case = PermanenceCase::Isolated;
        return out;
    }
    out.internal_clustering = internal_cc(graph, &inner);
    out.pull_term = inner.len() as f64 / (out.max_external_pull * degree) as f64;
    out.permanence = out.pull_term - (1.0 - out.internal_clustering);
    out
}

/// Breakdown for every vertex, indexed by vertex id.
pub fn permanence_all(
    graph: &Graph,
    assign: &CommunityAssignment,
) -> Result<Vec<PermanenceBreakdown>> {
    assign.check(graph)?;
    Ok((0..graph.vertex_count())
        .map(|v| breakdown(graph, assign, v))
        .collect())
}

/// Arithmetic mean of vertex permanence.
pub fn mean_permanence(graph: &Graph, assign: &CommunityAssignment) -> Result<f64> {
    if graph.is_empty() {
        return Err(Error::EmptyGraph);
    }
    let all = permanence_all(graph, assign)?;
    let total: f64 = all.iter().map(|b| b.permanence).sum();
    Ok(total / all.len() as f64)
}

/// Means of the pull term and of the internal clustering coefficient.
///
/// Singleton and isolated vertices contribute 0 to both.
pub fn permanence_components(graph: &Graph, assign: &CommunityAssignment) -> Result<(f64, f64)> {
    if graph.is_empty() {
        return Err(Error::EmptyGraph);
    }
    let all = permanence_all(graph, assign)?;
    let n = all.len() as f64;
    let pull: f64 = all.iter().map(|b| b.pull_term).sum();
    let cc: f64 = all.iter().map(|b| b.internal_clustering).sum();
    Ok((pull / n, cc / n))
}

#[derive(Debug, Clone, Copy, Default)]
struct Tally {
    size: usize,
    volume: usize,
    internal_edges: usize,
    cut_edges: usize,
}

fn tallies(graph: &Graph, assign: &CommunityAssignment) -> Result<Vec<Tally>> {
    assign.check(graph)?;
    if graph.edge_count() == 0 {
        return Err(Error::NoEdges);
    }
    let mut out = vec![Tally::default(); assign.community_count()];
    for v in 0..graph.vertex_count() {
        let t = &mut out[assign.community_of(v)];
        t.size += 1;
        t.volume += graph.degree(v);
    }
    for &(u, v) in graph.edges() {
        let (cu, cv) = (assign.community_of(u), assign.community_of(v));
        if cu == cv {
            out[cu].internal_edges += 1;
        } else {
            out[cu].cut_edges += 1;
            out[cv].cut_edges += 1;
        }
    }
    Ok(out)
}

/// Newman modularity `sum_c [ e_c / m - (d_c / 2m)^2 ]`.
pub fn modularity(graph: &Graph, assign: &CommunityAssignment) -> Result<f64> {
    let parts = modularity_components(graph, assign)?;
    Ok(parts.intra_edge_fraction - parts.degree_expectation)
}

/// The two addends of modularity plus the complementary inter-community fraction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModularityComponents {
    /// `sum_c e_c / m`.
    pub intra_edge_fraction: f64,
    /// `1 - intra_edge_fraction`.
    pub inter_edge_fraction: f64,
    /// `sum_c (d_c / 2m)^2`.
    pub degree_expectation: f64,
}

pub fn modularity_components(
    graph: &Graph,
    assign: &CommunityAssignment,
) -> Result<ModularityComponents> {
    let tallies = tallies(graph, assign)?;
    let m = graph.edge_count() as f64;
    let intra: usize = tallies.iter().map(|t| t.internal_edges).sum();
    let expectation: f64 = tallies
        .iter()
        .map(|t| {
            let share = t.volume as f64 / (2.0 * m);
            share * share
        })
        .sum();
    let intra_fraction = intra as f64 / m;
    Ok(ModularityComponents {
        intra_edge_fraction: intra_fraction,
        inter_edge_fraction: (graph.edge_count() - intra) as f64 / m,
        degree_expectation: expectation,
    })
}

/// Conductance of one community: `cut / min(vol(S), vol(V \ S))`, 0 when nothing is cut.
fn conductance_value(cut: usize, volume: usize, total_volume: usize) -> f64 {
    if cut == 0 {
        return 0.0;
    }
    let denominator = volume.min(total_volume - volume);
    cut as f64 / denominator as f64
}

pub fn conductance(graph: &Graph, assign: &CommunityAssignment) -> Result<CommunityScore> {
    let tallies = tallies(graph, assign)?;
    let total_volume = 2 * graph.edge_count();
    Ok(score(
        assign,
        tallies
            .iter()
            .map(|t| conductance_value(t.cut_edges, t.volume, total_volume)),
    ))
}

/// Cut-ratio `cut / (|S| * (n - |S|))`, 0 for a community spanning the whole graph.
pub fn cut_ratio(graph: &Graph, assign: &CommunityAssignment) -> Result<CommunityScore> {
    let tallies = tallies(graph, assign)?;
    let n = graph.vertex_count();
    Ok(score(
        assign,
        tallies.iter().map(|t| {
            if t.size == n {
                0.0
            } else {
                t.cut_edges as f64 / (t.size * (n - t.size)) as f64
            }
        }),
    ))
}

fn score(assign: &CommunityAssignment, values: impl Iterator<Item = f64>) -> CommunityScore {
    let per_community: BTreeMap<i64, f64> = values
        .enumerate()
        .map(|(c, value)| (assign.label(c), value))
        .collect();
    let network_value = per_community.values().sum::<f64>() / per_community.len() as f64;
    CommunityScore {
        per_community,
        network_value,
    }
}
