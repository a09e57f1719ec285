#[path = "support/oracles.rs"]
mod oracles;

#[path = "support/equivalence.rs"]
mod equivalence;

use noisenet_core::{pagerank, Graph, PageRankConfig};
use oracles::Dense;

#[test]
fn enumerator_counts_match_known_sequence() {
    let graphs = oracles::connected_graphs(7);
    let mut counts = [0usize; 8];
    for (n, _) in &graphs {
        counts[*n] += 1;
    }
    // connected unlabeled graphs: 1, 1, 2, 6, 21, 112, 853
    assert_eq!(&counts[1..], &[1, 1, 2, 6, 21, 112, 853]);
}

#[test]
fn all_connected_graphs_up_to_eight_vertices() {
    let graphs = oracles::connected_graphs(8);
    assert_eq!(graphs.iter().filter(|(n, _)| *n == 8).count(), 11117);
    for (n, edges) in &graphs {
        equivalence::check_graph(*n, edges).unwrap();
    }
}

#[test]
fn random_planted_partition_graphs() {
    for index in 0..100 {
        equivalence::check_planted(index).unwrap();
    }
}

#[test]
fn pagerank_path_matches_linear_solve() {
    let dense = Dense::from_edges(3, &[(0, 1), (1, 2)]);
    let want = oracles::pagerank(&dense, 0.85);
    assert!((want[1] - 0.486486).abs() < 1e-6);
    assert!((want[0] - 0.256757).abs() < 1e-6);
    let g = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
    let got = pagerank(&g, &PageRankConfig::default()).unwrap();
    for (a, b) in got.values().iter().zip(want) {
        assert!((a - b).abs() < 1e-9);
    }
}

#[test]
fn star_leaf_closeness_from_oracle() {
    let dense = Dense::from_edges(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]);
    let c = oracles::closeness(&dense).unwrap();
    assert!((c[1] - 4.0 / 7.0).abs() < 1e-15);
    assert_eq!(oracles::betweenness(&dense)[0], 6.0);
}
