//! Pins the shipped nine-vertex demonstration fixture: {e, f, i} is a
//! 3-distance 2-tuple (3,4)-dominating set of that graph.

use std::path::PathBuf;

use domset_core::{validate_params, verify, Graph, Params, VertexSet};

fn fixture(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name);
    std::fs::read_to_string(path).unwrap()
}

fn load_figure1() -> Graph {
    Graph::parse_edge_list(&fixture("figure1.el")).unwrap()
}

fn labeled_set(g: &Graph, labels: &[&str]) -> VertexSet {
    VertexSet::from_indices(
        g.n(),
        labels.iter().map(|l| g.vertex_by_label(l).unwrap()),
    )
}

#[test]
fn figure1_efi_is_a_3_distance_2_tuple_3_4_dominating_set() {
    let g = load_figure1();
    assert_eq!(g.n(), 9);
    let p = validate_params(Params::new(3, 2, 3, 4), &g).unwrap();
    let report = verify(&g, p, &labeled_set(&g, &["e", "f", "i"]));
    assert!(report.feasible, "{report:?}");
    assert_eq!(report.checked_subsets, 126); // C(9, 4)
}

#[test]
fn figure1_single_vertex_falls_below_the_floor() {
    let g = load_figure1();
    let p = validate_params(Params::new(3, 2, 3, 4), &g).unwrap();
    let report = verify(&g, p, &labeled_set(&g, &["e"]));
    assert!(!report.feasible);
}
