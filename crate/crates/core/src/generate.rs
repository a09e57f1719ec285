//! Planted-partition graphs, used as a stand-in for LFR benchmark graphs.

use alloc::vec::Vec;

use rand::{Rng, SeedableRng};

use crate::error::{Error, Result};
use crate::graph::{CommunityAssignment, Graph};
use crate::noise::StreamRng;

/// Parameters of a planted-partition graph.
///
/// Vertices are split into `communities` contiguous blocks whose sizes differ
/// by at most one (the first `n % k` blocks get the extra vertex).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlantedPartitionSpec {
    pub vertices: usize,
    pub communities: usize,
    pub p_in: f64,
    pub p_out: f64,
    pub seed: u64,
}

impl PlantedPartitionSpec {
    fn validate(&self) -> Result<()> {
        if self.communities == 0 {
            return Err(Error::InvalidParameter("community count must be positive"));
        }
        if self.vertices < self.communities {
            return Err(Error::InvalidParameter(
                "need at least one vertex per community",
            ));
        }
        if !(0.0 <= self.p_out && self.p_out <= self.p_in && self.p_in <= 1.0) {
            return Err(Error::InvalidParameter("need 0 <= p_out <= p_in <= 1"));
        }
        Ok(())
    }

    /// Block index of every vertex.
    pub fn blocks(&self) -> Vec<usize> {
        let base = self.vertices / self.communities;
        let extra = self.vertices % self.communities;
        (0..self.communities)
            .flat_map(|c| core::iter::repeat_n(c, base + usize::from(c < extra)))
            .collect()
    }
}

/// Draws every vertex pair independently: `p_in` within a block, `p_out` across.
pub fn planted_partition(spec: &PlantedPartitionSpec) -> Result<(Graph, CommunityAssignment)> {
    spec.validate()?;
    let blocks = spec.blocks();
    let mut rng = StreamRng::seed_from_u64(spec.seed);
    let n = spec.vertices;
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            let p = if blocks[u] == blocks[v] {
                spec.p_in
            } else {
                spec.p_out
            };
            if rng.random_bool(p) {
                edges.push((u, v));
            }
        }
    }
    let labels: Vec<i64> = blocks.iter().map(|&b| b as i64).collect();
    Ok((
        Graph::from_edges(n, edges)?,
        CommunityAssignment::from_labels(&labels)?,
    ))
}
