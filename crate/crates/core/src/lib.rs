//! Noise sensitivity toolkit for simple undirected graphs.
//!
//! The crate is `no_std` (it needs `alloc`) and contains every algorithm of the
//! toolkit: the permanence vertex score and its decomposition, the classical
//! community scores (modularity, conductance, cut-ratio), closeness,
//! betweenness, PageRank and degree centralities, three edge-deletion noise
//! models that keep the graph connected, a synchronous push broadcast
//! simulator and top-k rank stability. File formats, configuration and the
//! command line harness live in the `noisenet` crate.
//!
//! All randomised routines take an explicit [`rand::Rng`]; experiment drivers
//! derive one [`StreamRng`] per work item from a master seed through
//! [`stream_seed`], so every table is reproducible bit for bit.
//!
//! ```
//! use noisenet_core::{mean_permanence, perturb, planted_partition, NoiseModel, PlantedPartitionSpec};
//!
//! let (graph, truth) = planted_partition(&PlantedPartitionSpec {
//!     vertices: 120,
//!     communities: 4,
//!     p_in: 0.3,
//!     p_out: 0.02,
//!     seed: 1,
//! })?;
//! let noisy = perturb(&graph, NoiseModel::Uniform, 0.2, 0, 42)?;
//! assert_eq!(noisy.edge_count(), graph.edge_count() - (0.2 * graph.edge_count() as f64).round() as usize);
//! assert!(mean_permanence(&noisy, &truth)? < mean_permanence(&graph, &truth)?);
//! # Ok::<(), noisenet_core::Error>(())
//! ```
#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod centrality;
pub mod community;
mod error;
pub mod experiment;
pub mod generate;
pub mod graph;
pub mod noise;
pub mod spread;
pub mod stability;
pub mod stats;

pub use centrality::{
    betweenness_all, closeness_all, degree_all, pagerank, top_k, PageRankConfig, ScoreMap,
};
pub use community::{
    conductance, cut_ratio, internal_clustering_coefficient, mean_permanence, modularity,
    modularity_components, permanence_components, vertex_permanence, CommunityScore,
    PermanenceBreakdown, PermanenceCase,
};
pub use error::{Error, Result};
pub use experiment::{ExperimentTable, Metric, TableRow};
pub use generate::{planted_partition, PlantedPartitionSpec};
pub use graph::{giant_component, CommunityAssignment, Graph, IngestReport};
pub use noise::{
    apply_censored, apply_crawled, apply_uniform, default_levels, level_key, noise_schedule,
    perturb, removal_count, stream_rng, stream_seed, NoiseModel, NoiseSpec, StreamRng,
};
pub use spread::{broadcast_time, select_seeds, SeedStrategy, SpreadTrialResult, StrategyKind};
pub use stability::{jaccard_index, stability_curve, StabilityCurve, StabilityPoint};
pub use stats::Summary;
