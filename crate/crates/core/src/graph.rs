//! Immutable simple undirected graphs, ground-truth community assignments and
//! connectivity helpers.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Counts of input records dropped while building a [`Graph`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct IngestReport {
    pub self_loops: usize,
    pub duplicate_edges: usize,
}

/// Simple undirected graph on the vertices `0..vertex_count`.
///
/// Adjacency lists are sorted ascending and the edge list holds each edge once
/// as `(u, v)` with `u < v`, in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adjacency: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    /// Builds a graph, silently dropping self-loops and repeated edges.
    pub fn from_edges<I>(vertex_count: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        Self::build(vertex_count, edges).map(|(graph, _)| graph)
    }

    /// Builds a graph and reports how many self-loops and duplicates were dropped.
    pub fn build<I>(vertex_count: usize, edges: I) -> Result<(Self, IngestReport)>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut report = IngestReport::default();
        let mut list = Vec::new();
        for (u, v) in edges {
            if u >= vertex_count {
                return Err(Error::UnknownVertex(u));
            }
            if v >= vertex_count {
                return Err(Error::UnknownVertex(v));
            }
            if u == v {
                report.self_loops += 1;
                continue;
            }
            list.push(if u < v { (u, v) } else { (v, u) });
        }
        let before = list.len();
        list.sort_unstable();
        list.dedup();
        report.duplicate_edges = before - list.len();

        let mut adjacency = vec![Vec::new(); vertex_count];
        for &(u, v) in &list {
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for neighbors in &mut adjacency {
            neighbors.sort_unstable();
        }
        Ok((
            Graph {
                adjacency,
                edges: list,
            },
            report,
        ))
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adjacency.is_empty()
    }

    /// Neighbors of `v` in ascending order. Panics if `v` is out of range.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Edges as `(u, v)` pairs with `u < v`, sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.vertex_count() && self.adjacency[u].binary_search(&v).is_ok()
    }

    pub fn contains_vertex(&self, v: usize) -> bool {
        v < self.vertex_count()
    }

    pub(crate) fn check_vertex(&self, v: usize) -> Result<()> {
        if self.contains_vertex(v) {
            Ok(())
        } else {
            Err(Error::UnknownVertex(v))
        }
    }

    /// Hop distances from `source`; unreachable vertices get `None`.
    pub fn bfs_distances(&self, source: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.vertex_count()];
        let mut queue = VecDeque::new();
        dist[source] = Some(0);
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap_or(0);
            for &w in &self.adjacency[u] {
                if dist[w].is_none() {
                    dist[w] = Some(du + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// True for the empty graph and for graphs with a single component.
    pub fn is_connected(&self) -> bool {
        self.is_empty() || self.bfs_distances(0).iter().all(Option::is_some)
    }

    /// Connected components, each sorted ascending, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut component = vec![start];
            seen[start] = true;
            let mut head = 0;
            while head < component.len() {
                let u = component[head];
                head += 1;
                for &w in &self.adjacency[u] {
                    if !seen[w] {
                        seen[w] = true;
                        component.push(w);
                    }
                }
            }
            component.sort_unstable();
            out.push(component);
        }
        out
    }

    /// Subgraph induced by `vertices`, relabelled `0..len` in the given order.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Result<Graph> {
        let mut index = vec![usize::MAX; self.vertex_count()];
        for (i, &v) in vertices.iter().enumerate() {
            self.check_vertex(v)?;
            index[v] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(u, v)| index[u] != usize::MAX && index[v] != usize::MAX)
            .map(|&(u, v)| (index[u], index[v]));
        Graph::from_edges(vertices.len(), edges)
    }

    /// The graph with the same vertices and only the listed edges of `self` kept.
    pub(crate) fn with_edges(&self, edges: impl IntoIterator<Item = (usize, usize)>) -> Graph {
        Graph::from_edges(self.vertex_count(), edges).expect("edges come from the same vertex set")
    }
}

/// Vertex set of the largest connected component, sorted ascending.
///
/// Ties go to the component holding the smallest vertex id.
pub fn giant_component(graph: &Graph) -> Result<Vec<usize>> {
    if graph.is_empty() {
        return Err(Error::EmptyGraph);
    }
    let mut best: Vec<usize> = Vec::new();
    // components() is ordered by smallest member, so a strict comparison keeps the tie rule
    for component in graph.components() {
        if component.len() > best.len() {
            best = component;
        }
    }
    Ok(best)
}

/// Total map from vertices to ground-truth communities.
///
/// Input labels are arbitrary integers; internally communities are numbered
/// `0..community_count` in ascending label order and the original labels are
/// kept for reporting.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommunityAssignment {
    membership: Vec<usize>,
    labels: Vec<i64>,
    sizes: Vec<usize>,
}

impl CommunityAssignment {
    /// One label per vertex, indexed by vertex id.
    pub fn from_labels(labels: &[i64]) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::EmptyGraph);
        }
        let mut distinct: Vec<i64> = labels.to_vec();
        distinct.sort_unstable();
        distinct.dedup();
        let membership: Vec<usize> = labels
            .iter()
            .map(|l| distinct.binary_search(l).expect("label collected above"))
            .collect();
        let mut sizes = vec![0; distinct.len()];
        for &c in &membership {
            sizes[c] += 1;
        }
        Ok(CommunityAssignment {
            membership,
            labels: distinct,
            sizes,
        })
    }

    /// Every vertex in its own community.
    pub fn singletons(vertex_count: usize) -> Result<Self> {
        let labels: Vec<i64> = (0..vertex_count as i64).collect();
        Self::from_labels(&labels)
    }

    /// All vertices in one community labelled 0.
    pub fn single(vertex_count: usize) -> Result<Self> {
        Self::from_labels(&vec![0; vertex_count])
    }

    pub fn vertex_count(&self) -> usize {
        self.membership.len()
    }

    pub fn community_count(&self) -> usize {
        self.labels.len()
    }

    /// Dense community index of `v`.
    pub fn community_of(&self, v: usize) -> usize {
        self.membership[v]
    }

    /// Original label of dense community `c`.
    pub fn label(&self, c: usize) -> i64 {
        self.labels[c]
    }

    pub fn size(&self, c: usize) -> usize {
        self.sizes[c]
    }

    pub fn membership(&self) -> &[usize] {
        &self.membership
    }

    /// Original labels indexed by vertex.
    pub fn vertex_labels(&self) -> Vec<i64> {
        self.membership.iter().map(|&c| self.labels[c]).collect()
    }

    /// Restriction to `vertices`, relabelled `0..len` in the given order.
    pub fn restrict(&self, vertices: &[usize]) -> Result<Self> {
        let labels: Vec<i64> = vertices
            .iter()
            .map(|&v| {
                self.membership
                    .get(v)
                    .map(|&c| self.labels[c])
                    .ok_or(Error::UnknownVertex(v))
            })
            .collect::<Result<_>>()?;
        Self::from_labels(&labels)
    }

    pub(crate) fn check(&self, graph: &Graph) -> Result<()> {
        if self.vertex_count() == graph.vertex_count() {
            Ok(())
        } else {
            Err(Error::AssignmentMismatch {
                assigned: self.vertex_count(),
                vertices: graph.vertex_count(),
            })
        }
    }
}
