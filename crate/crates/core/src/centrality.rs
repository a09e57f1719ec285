//! Vertex centralities and deterministic top-k ranking.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// One finite score per vertex, indexed by vertex id.
#[derive(Debug, Clone, PartialEq)]
pub struct ScoreMap(Vec<f64>);

impl ScoreMap {
    pub fn new(values: Vec<f64>) -> Self {
        ScoreMap(values)
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn get(&self, v: usize) -> Option<f64> {
        self.0.get(v).copied()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mean(&self) -> f64 {
        if self.0.is_empty() {
            return 0.0;
        }
        self.0.iter().sum::<f64>() / self.0.len() as f64
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }
}

/// Closeness `(n - 1) / sum_u dist(v, u)` from unweighted BFS.
///
/// Requires a connected graph; a single-vertex graph scores 0.
pub fn closeness_all(graph: &Graph) -> Result<ScoreMap> {
    let n = graph.vertex_count();
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    let mut out = Vec::with_capacity(n);
    for v in 0..n {
        let mut total = 0usize;
        for d in graph.bfs_distances(v) {
            total += d.ok_or(Error::Disconnected)?;
        }
        out.push(if total == 0 {
            0.0
        } else {
            (n - 1) as f64 / total as f64
        });
    }
    Ok(ScoreMap(out))
}

/// Unnormalized shortest-path betweenness over unordered vertex pairs
/// (Brandes accumulation). Pairs in different components contribute nothing.
pub fn betweenness_all(graph: &Graph) -> Result<ScoreMap> {
    let n = graph.vertex_count();
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    let mut centrality = vec![0.0f64; n];
    let mut stack = Vec::with_capacity(n);
    let mut queue = VecDeque::with_capacity(n);
    let mut sigma = vec![0.0f64; n];
    let mut dist = vec![usize::MAX; n];
    let mut delta = vec![0.0f64; n];

    for s in 0..n {
        stack.clear();
        sigma.iter_mut().for_each(|x| *x = 0.0);
        dist.iter_mut().for_each(|x| *x = usize::MAX);
        delta.iter_mut().for_each(|x| *x = 0.0);
        sigma[s] = 1.0;
        dist[s] = 0;
        queue.push_back(s);
        while let Some(v) = queue.pop_front() {
            stack.push(v);
            for &w in graph.neighbors(v) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
                if dist[w] == dist[v] + 1 {
                    sigma[w] += sigma[v];
                }
            }
        }
        while let Some(w) = stack.pop() {
            // predecessors are exactly the neighbors one hop closer to s
            for &v in graph.neighbors(w) {
                if dist[v] != usize::MAX && dist[v] + 1 == dist[w] {
                    delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
                }
            }
            if w != s {
                centrality[w] += delta[w];
            }
        }
    }
    // every unordered pair was accumulated from both endpoints
    centrality.iter_mut().for_each(|x| *x /= 2.0);
    Ok(ScoreMap(centrality))
}

/// Power-iteration settings for [`pagerank`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PageRankConfig {
    pub damping: f64,
    /// Stop once the L1 change between iterates drops below this.
    pub tolerance: f64,
    pub max_iterations: usize,
}

impl Default for PageRankConfig {
    fn default() -> Self {
        PageRankConfig {
            damping: 0.85,
            tolerance: 1e-9,
            max_iterations: 200,
        }
    }
}

/// PageRank of the undirected random walk (each edge is two arcs) with a
/// uniform teleport. Mass of isolated vertices is spread uniformly.
pub fn pagerank(graph: &Graph, config: &PageRankConfig) -> Result<ScoreMap> {
    let n = graph.vertex_count();
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    if !(config.damping > 0.0 && config.damping < 1.0) {
        return Err(Error::InvalidParameter("damping must lie in (0, 1)"));
    }
    let d = config.damping;
    let uniform = 1.0 / n as f64;
    let mut rank = vec![uniform; n];
    let mut next = vec![0.0; n];
    let mut residual = f64::INFINITY;
    for _ in 0..config.max_iterations {
        let dangling: f64 = (0..n)
            .filter(|&v| graph.degree(v) == 0)
            .map(|v| rank[v])
            .sum();
        let base = (1.0 - d) * uniform + d * dangling * uniform;
        for (v, slot) in next.iter_mut().enumerate() {
            let inflow: f64 = graph
                .neighbors(v)
                .iter()
                .map(|&u| rank[u] / graph.degree(u) as f64)
                .sum();
            *slot = base + d * inflow;
        }
        residual = rank.iter().zip(&next).map(|(a, b)| (a - b).abs()).sum();
        core::mem::swap(&mut rank, &mut next);
        if residual < config.tolerance {
            return Ok(ScoreMap(rank));
        }
    }
    Err(Error::NotConverged {
        iterations: config.max_iterations,
        residual,
    })
}

/// Degree of every vertex as a score.
pub fn degree_all(graph: &Graph) -> ScoreMap {
    ScoreMap(
        (0..graph.vertex_count())
            .map(|v| graph.degree(v) as f64)
            .collect(),
    )
}

/// The `k` highest-scoring vertices, descending, ties broken by ascending id.
pub fn top_k(scores: &ScoreMap, k: usize) -> Result<Vec<usize>> {
    let n = scores.len();
    if k == 0 || k > n {
        return Err(Error::InvalidK { k, n });
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        scores.0[b]
            .partial_cmp(&scores.0[a])
            .unwrap_or(Ordering::Equal)
            .then(a.cmp(&b))
    });
    order.truncate(k);
    Ok(order)
}
