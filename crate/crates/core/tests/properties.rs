use proptest::prelude::*;

use injpack_core::clique_cover::{derived_graph, lift_coloring, verify_cover};
use injpack_core::families::{corona, join, rooted_product};
use injpack_core::graph::graph6;
use injpack_core::solvers::{
    chromatic_number, edge_chromatic_number, edge_coloring_from_injective,
    injective_chromatic_number, max_open_packing, max_two_packing, perfect_injective_colorability,
    SolveOptions,
};
use injpack_core::{validate_certificate, Certificate, CertificateKind, Graph};

fn graph_from_mask(n: usize, mask: &[bool]) -> Graph {
    let edges = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .zip(mask)
        .filter(|(_, &b)| b)
        .map(|(e, _)| e);
    Graph::from_edges(n, edges).unwrap()
}

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (0..=max_n).prop_flat_map(|n| {
        prop::collection::vec(any::<bool>(), n * n.saturating_sub(1) / 2)
            .prop_map(move |mask| graph_from_mask(n, &mask))
    })
}

/// Union of cliques in which every vertex lies in at most two; returned with
/// those cliques as its cover.
fn arb_sparse_covered(n: usize) -> impl Strategy<Value = (Graph, Vec<Vec<usize>>)> {
    prop::collection::vec((0usize..8, 0usize..8), n).prop_map(move |slots| {
        let mut cliques = vec![Vec::new(); 8];
        for (v, &(a, b)) in slots.iter().enumerate() {
            cliques[a].push(v);
            if b != a {
                cliques[b].push(v);
            }
        }
        cliques.retain(|c| !c.is_empty());
        let edges: Vec<(usize, usize)> = cliques
            .iter()
            .flat_map(|c| {
                c.iter()
                    .enumerate()
                    .flat_map(move |(i, &u)| c[i + 1..].iter().map(move |&w| (u, w)))
            })
            .collect();
        (Graph::from_edges(n, edges).unwrap(), cliques)
    })
}

fn valid(g: &Graph, cert: Certificate, kind: CertificateKind) -> bool {
    validate_certificate(g, &cert, kind).unwrap().is_valid()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn graph6_round_trip(g in arb_graph(32)) {
        let back = graph6::decode(&graph6::encode(&g)).unwrap();
        prop_assert_eq!(back.n(), g.n());
        prop_assert_eq!(back.edges(), g.edges());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn solver_witnesses_and_bounds(g in arb_graph(9)) {
        let opts = SolveOptions::deterministic();
        let delta = g.max_degree();
        let chi = chromatic_number(&g, &opts);
        let chi_i = injective_chromatic_number(&g, &opts);
        let chi_e = edge_chromatic_number(&g, &opts);
        let ro = max_open_packing(&g, &opts);
        let r2 = max_two_packing(&g, &opts);
        for r in [&chi, &chi_i, &chi_e, &ro, &r2] {
            prop_assert!(r.exact);
            prop_assert!(r.witness_is_valid(&g));
            prop_assert!(r.lower <= r.value && r.value <= r.upper);
        }
        prop_assert!(chi_i.value >= delta);
        prop_assert!(chi_e.value == delta || chi_e.value == delta + 1);
        prop_assert!(r2.value <= ro.value);
        if g.n() > 0 {
            prop_assert!(r2.value >= 1);
        }
    }

    #[test]
    fn deterministic_mode_is_repeatable(g in arb_graph(9)) {
        let opts = SolveOptions::deterministic();
        prop_assert_eq!(
            injective_chromatic_number(&g, &opts).witness,
            injective_chromatic_number(&g, &opts).witness
        );
        prop_assert_eq!(max_open_packing(&g, &opts).witness, max_open_packing(&g, &opts).witness);
    }

    #[test]
    fn perfect_answers_carry_valid_partitions(g in arb_graph(8)) {
        let out = perfect_injective_colorability(&g, &SolveOptions::default());
        if let Some(p) = out.partition() {
            let rho = max_open_packing(&g, &SolveOptions::default()).value;
            let kind = CertificateKind::OpenPackingPartition { class_size: Some(rho) };
            prop_assert!(valid(&g, Certificate::Partition(p.clone()), kind));
        } else {
            prop_assert!(out.is_no());
        }
    }

    #[test]
    fn injective_with_delta_colors_gives_class1(g in arb_graph(8)) {
        let r = injective_chromatic_number(&g, &SolveOptions::deterministic());
        if g.max_degree() > 0 && r.value == g.max_degree() {
            let ec = edge_coloring_from_injective(&g, r.vertex_coloring().unwrap()).unwrap();
            prop_assert_eq!(ec.palette_size(), g.max_degree());
            prop_assert!(valid(&g, Certificate::EdgeColoring(ec), CertificateKind::ProperEdgeColoring));
        }
    }

    #[test]
    fn lift_is_injective_on_sparse_covers((g, cliques) in arb_sparse_covered(20)) {
        let total: usize = cliques.iter().map(Vec::len).sum();
        let cover = verify_cover(&g, cliques).unwrap();
        prop_assert!(cover.is_sparse());
        let derived = derived_graph(&g, &cover).unwrap();
        prop_assert_eq!(derived.graph.n(), total);
        let chi = chromatic_number(&g, &SolveOptions::default());
        let lifted = lift_coloring(&g, &cover, chi.vertex_coloring().unwrap()).unwrap();
        prop_assert!(lifted.palette_size() <= chi.value);
        prop_assert!(valid(&derived.graph, Certificate::VertexColoring(lifted), CertificateKind::InjectiveColoring));
    }

    #[test]
    fn line_graph_degrees(g in arb_graph(10)) {
        let l = g.line_graph();
        let edges = g.edges();
        prop_assert_eq!(l.n(), edges.len());
        for (i, &(u, v)) in edges.iter().enumerate() {
            prop_assert_eq!(l.degree(i), g.degree(u) + g.degree(v) - 2);
        }
    }

    #[test]
    fn product_sizes(g in arb_graph(5), h in arb_graph(5).prop_filter("nonempty", |h| h.n() > 0), r in 0usize..5) {
        let root = r % h.n();
        let p = rooted_product(&g, &h, root).unwrap();
        prop_assert_eq!(p.n(), g.n() * h.n());
        prop_assert_eq!(p.edge_count(), g.n() * h.edge_count() + g.edge_count());
        let c = corona(&g, &h);
        let via_join = rooted_product(&g, &join(&Graph::empty(1), &h), 0).unwrap();
        prop_assert_eq!(c.edges(), via_join.edges());
    }
}
