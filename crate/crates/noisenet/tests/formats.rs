use noisenet::formats::{load_edge_list, load_lfr, write_edge_list, write_lfr};
use noisenet_core::{planted_partition, PlantedPartitionSpec};
use proptest::prelude::*;
use std::collections::BTreeSet;

fn named_edges(text: &str) -> BTreeSet<(String, String)> {
    let l = load_edge_list(text).unwrap();
    l.graph
        .edges()
        .iter()
        .map(|&(u, v)| {
            let (a, b) = (
                l.ids.name(u).unwrap().to_string(),
                l.ids.name(v).unwrap().to_string(),
            );
            if a <= b {
                (a, b)
            } else {
                (b, a)
            }
        })
        .collect()
}

proptest! {
    #[test]
    fn edge_list_ignores_line_order_and_direction(
        edges in prop::collection::vec((0u8..20, 0u8..20), 1..60),
        flips in prop::collection::vec(any::<bool>(), 60),
        rotate in 0usize..60,
    ) {
        let text: String = edges.iter().map(|(u, v)| format!("n{u} n{v}\n")).collect();
        let mut lines: Vec<String> = edges
            .iter()
            .zip(&flips)
            .map(|(&(u, v), &f)| if f { format!("n{v}\tn{u}") } else { format!("n{u} n{v}") })
            .collect();
        let r = rotate % lines.len();
        lines.rotate_left(r);
        let shuffled = lines.join("\n");

        let loaded = load_edge_list(&text).unwrap();
        let degree_sum: usize = (0..loaded.graph.vertex_count()).map(|v| loaded.graph.degree(v)).sum();
        prop_assert_eq!(degree_sum, 2 * loaded.graph.edge_count());
        prop_assert_eq!(named_edges(&text), named_edges(&shuffled));
        prop_assert_eq!(
            loaded.graph.vertex_count(),
            load_edge_list(&shuffled).unwrap().graph.vertex_count()
        );
    }

    #[test]
    fn lfr_round_trip(n in 2usize..60, k in 1usize..5, seed in any::<u64>()) {
        let spec = PlantedPartitionSpec { vertices: n.max(k), communities: k, p_in: 0.5, p_out: 0.1, seed };
        let (g, a) = planted_partition(&spec).unwrap();
        prop_assume!(g.edge_count() > 0);
        let (mut net, mut com) = (Vec::new(), Vec::new());
        write_lfr(&g, &a, &mut net, &mut com).unwrap();
        let (g2, a2) = load_lfr(
            std::str::from_utf8(&net).unwrap(),
            std::str::from_utf8(&com).unwrap(),
        )
        .unwrap();
        prop_assert_eq!(g2, g);
        prop_assert_eq!(a2, a);
    }
}

#[test]
fn edge_list_writer_round_trips_names() {
    let text = "alpha beta\nbeta gamma\ngamma alpha\ndelta alpha\n";
    let loaded = load_edge_list(text).unwrap();
    let mut buf = Vec::new();
    write_edge_list(&loaded.graph, Some(&loaded.ids), &mut buf).unwrap();
    assert_eq!(
        named_edges(text),
        named_edges(std::str::from_utf8(&buf).unwrap())
    );
}

#[test]
fn thousand_vertex_lfr_files() {
    let (g, a) = planted_partition(&PlantedPartitionSpec {
        vertices: 1000,
        communities: 25,
        p_in: 0.3,
        p_out: 0.002,
        seed: 8,
    })
    .unwrap();
    let (mut net, mut com) = (Vec::new(), Vec::new());
    write_lfr(&g, &a, &mut net, &mut com).unwrap();
    let net = String::from_utf8(net).unwrap();
    let com = String::from_utf8(com).unwrap();
    let (loaded, _) = load_lfr(&net, &com).unwrap();
    assert_eq!(loaded.vertex_count(), 1000);

    let without_last: String = com
        .lines()
        .filter(|l| !l.starts_with("1000\t"))
        .map(|l| format!("{l}\n"))
        .collect();
    let err = load_lfr(&net, &without_last).unwrap_err();
    assert!(err.to_string().contains("vertex 1000"), "{err}");
}
