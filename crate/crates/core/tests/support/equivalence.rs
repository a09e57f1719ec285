//! Implementation vs oracle comparisons shared by the oracle tests and the
//! acceptance suite. Each check returns the first mismatch.

use noisenet_core::{
    betweenness_all, closeness_all, conductance, cut_ratio, giant_component, modularity, pagerank,
    planted_partition, vertex_permanence, CommunityAssignment, Graph, PageRankConfig,
    PlantedPartitionSpec,
};

use crate::oracles::{self, Dense};

pub const TOL: f64 = 1e-9;

fn close(label: &str, got: f64, want: f64) -> Result<(), String> {
    if (got - want).abs() <= TOL {
        Ok(())
    } else {
        Err(format!("{label}: got {got}, oracle {want}"))
    }
}

/// Betweenness, closeness, and every labelling's permanence, modularity,
/// conductance and cut-ratio.
pub fn check_graph(n: usize, edges: &[(usize, usize)]) -> Result<(), String> {
    let g = Graph::from_edges(n, edges.iter().copied()).map_err(|e| e.to_string())?;
    let dense = Dense::from_edges(n, edges);

    for (v, (a, b)) in betweenness_all(&g)
        .unwrap()
        .values()
        .iter()
        .zip(oracles::betweenness(&dense))
        .enumerate()
    {
        close(&format!("betweenness {v} of {edges:?}"), *a, b)?;
    }
    if let Some(want) = oracles::closeness(&dense) {
        for (v, (a, b)) in closeness_all(&g)
            .unwrap()
            .values()
            .iter()
            .zip(want)
            .enumerate()
        {
            close(&format!("closeness {v} of {edges:?}"), *a, b)?;
        }
    }
    for labels in oracles::labelings(n) {
        check_labels(&g, &dense, &labels)?;
    }
    Ok(())
}

fn check_labels(g: &Graph, dense: &Dense, labels: &[i64]) -> Result<(), String> {
    let assign = CommunityAssignment::from_labels(labels).unwrap();
    for v in 0..g.vertex_count() {
        close(
            &format!("permanence {v} under {labels:?}"),
            vertex_permanence(g, &assign, v).unwrap().permanence,
            oracles::permanence(dense, labels, v),
        )?;
    }
    if g.edge_count() == 0 {
        return Ok(());
    }
    close(
        "modularity",
        modularity(g, &assign).unwrap(),
        oracles::modularity(dense, labels),
    )?;
    close(
        "conductance",
        conductance(g, &assign).unwrap().network_value,
        oracles::conductance(dense, labels),
    )?;
    close(
        "cut_ratio",
        cut_ratio(g, &assign).unwrap().network_value,
        oracles::cut_ratio(dense, labels),
    )
}

/// The `index`-th planted partition graph of the random suite (10 to 40 vertices).
pub fn planted_case(index: u64) -> (Graph, CommunityAssignment) {
    let spec = PlantedPartitionSpec {
        vertices: 10 + (index as usize * 7) % 31,
        communities: 2 + (index as usize) % 4,
        p_in: 0.3 + 0.003 * index as f64,
        p_out: 0.02 + 0.0008 * index as f64,
        seed: index,
    };
    planted_partition(&spec).unwrap()
}

/// All checks of [`check_graph`], the ground-truth labelling, and PageRank
/// on the giant component against a linear solve.
pub fn check_planted(index: u64) -> Result<(), String> {
    let (g, assign) = planted_case(index);
    check_graph(g.vertex_count(), g.edges())?;
    let dense = Dense::from_edges(g.vertex_count(), g.edges());
    check_labels(&g, &dense, &assign.vertex_labels())?;

    let giant = giant_component(&g).unwrap();
    let sub = g.induced_subgraph(&giant).unwrap();
    if sub.vertex_count() > 1 {
        let sub_dense = Dense::from_edges(sub.vertex_count(), sub.edges());
        let want = oracles::pagerank(&sub_dense, 0.85);
        let got = pagerank(&sub, &PageRankConfig::default()).unwrap();
        for (a, b) in got.values().iter().zip(want) {
            // power iteration stops at an L1 change of 1e-9
            if (a - b).abs() >= 1e-8 {
                return Err(format!("pagerank {a} vs {b} on planted case {index}"));
            }
        }
    }
    Ok(())
}
