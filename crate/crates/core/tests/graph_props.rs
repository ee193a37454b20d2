mod common;

use proptest::prelude::*;
use spectral_chroma::graph::{encode_graph6, parse_dimacs, parse_edge_list, parse_graph6};
use spectral_chroma::Graph;

fn dimacs(g: &Graph) -> String {
    let mut s = format!("c generated\np edge {} {}\n", g.n(), g.edge_count());
    for &(i, j) in g.edges() {
        s += &format!("e {} {}\n", i + 1, j + 1);
    }
    s
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn graph6_round_trip(g in common::graph_strategy(0, 70)) {
        let text = encode_graph6(&g);
        prop_assert_eq!(parse_graph6(&text).unwrap(), g);
    }

    #[test]
    fn dimacs_round_trip(g in common::graph_strategy(1, 20)) {
        prop_assert_eq!(parse_dimacs(&dimacs(&g)).unwrap(), g);
    }

    #[test]
    fn complement_is_an_involution(g in common::graph_strategy(0, 15)) {
        let c = g.complement();
        let n = g.n();
        prop_assert_eq!(g.edge_count() + c.edge_count(), n * n.saturating_sub(1) / 2);
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    prop_assert_ne!(g.has_edge(i, j), c.has_edge(i, j));
                }
            }
        }
        prop_assert_eq!(c.complement(), g);
    }

    #[test]
    fn degrees_sum_to_twice_the_edges(g in common::graph_strategy(0, 15)) {
        let total: usize = (0..g.n()).map(|v| g.degree(v)).sum();
        prop_assert_eq!(total, 2 * g.edge_count());
        let a = g.adjacency_matrix();
        prop_assert_eq!(a.as_slice().iter().sum::<f64>(), total as f64);
    }
}

#[test]
fn edge_list_accepts_comments_and_blank_lines() {
    let g = parse_edge_list("# triangle\n\n0 1\n1 2  # middle\n0 2\n").unwrap();
    assert_eq!(g.edge_count(), 3);
}
