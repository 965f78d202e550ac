//! Property tests for the module invariants: witness soundness, brute-force
//! agreement, oracle round trips, boundary nilpotency, and spectral bounds.

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;

use lapred_core::complex::{
    betti_exact, boundary_matrix, enumerate_p_simplices, hodge_laplacian, max_dimension,
    CliqueComplexView,
};
use lapred_core::gen::{random_complex_edges, random_marked_signed_graph, random_signed_graph};
use lapred_core::graph::{
    balance_components, bipartite_components, has_balanced_component, has_bipartite_component,
    SignedGraph,
};
use lapred_core::oracle::{
    from_explicit_signed, from_explicit_unsigned, materialize, AccessMode, MaterializeScope,
    DEFAULT_INDEX_BUDGET,
};
use lapred_core::reductions::{
    clique_oracle, negative_subdivision_explicit, negative_subdivision_oracle,
    pairwise_sign, CliqueReductionInstance, SubdivisionScheme,
};
use lapred_core::spectral::{incidence_matrix, signed_laplacian, signless_laplacian};

/// Exhaustive over every graph on up to 4 labeled vertices and every
/// reducible dimension: pairs that are both lower- and upper-adjacent get a
/// cancelled (zero) signature.
#[test]
fn sign_cancellation_exhaustive_small() {
    for n in 2usize..=4 {
        let mut pairs = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                pairs.push((u, v));
            }
        }
        for mask in 0u64..1 << pairs.len() {
            let edges: Vec<(usize, usize)> = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            let c = CliqueComplexView::from_edges(n, &edges, 0).unwrap();
            for p in 1..=n.saturating_sub(2) {
                let simplices = enumerate_p_simplices(&c, p).unwrap();
                for (i, &sigma) in simplices.iter().enumerate() {
                    for &tau in &simplices[i + 1..] {
                        let lower = (sigma.bits() & tau.bits()).count_ones() as usize == p;
                        let upper = c.is_simplex(lapred_core::complex::Simplex(
                            sigma.bits() | tau.bits(),
                        ));
                        if lower && upper {
                            assert_eq!(
                                pairwise_sign(&c, sigma, tau),
                                0,
                                "n={n} p={p} edges={edges:?}"
                            );
                        }
                    }
                }
            }
        }
    }
}

/// Exhaustive balance oracle: tries all vertex-sign assignments.
fn brute_force_balanced(g: &SignedGraph, vertices: &[u64]) -> bool {
    assert!(vertices.len() <= 20);
    (0u32..1 << vertices.len()).any(|mask| {
        let sigma: BTreeMap<u64, i8> = vertices
            .iter()
            .enumerate()
            .map(|(i, &v)| (v, if mask >> i & 1 == 1 { -1 } else { 1 }))
            .collect();
        g.check_assignment(vertices, &sigma)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn balance_matches_brute_force_and_witnesses_verify(
        n in 1u64..=8,
        seed in any::<u64>(),
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_signed_graph(&mut rng, n, 4, 0.5);
        let outcome = balance_components(&g);
        for comp in &outcome.components {
            let expect = brute_force_balanced(&g, &comp.vertices);
            prop_assert_eq!(comp.balanced(), expect);
            match (&comp.assignment, &comp.odd_cycle) {
                (Some(sigma), None) => {
                    prop_assert!(g.check_assignment(&comp.vertices, sigma));
                }
                (None, Some(cycle)) => {
                    let neg = g.closed_walk_negatives(cycle).expect("walk over edges");
                    prop_assert_eq!(neg % 2, 1);
                }
                _ => prop_assert!(false, "component must carry exactly one witness"),
            }
        }
    }

    #[test]
    fn bipartite_equals_all_negative_balance(
        n in 1u64..=10,
        seed in any::<u64>(),
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_signed_graph(&mut rng, n, 5, 0.5).base().clone();
        let neg = SignedGraph::with_uniform_sign(&g, -1);
        prop_assert_eq!(has_bipartite_component(&g), has_balanced_component(&neg));
        for comp in bipartite_components(&g).components {
            match (&comp.coloring, &comp.odd_cycle) {
                (Some(col), None) => prop_assert!(g.check_coloring(&comp.vertices, col)),
                (None, Some(cycle)) => {
                    let len = g.closed_walk_len(cycle).expect("walk over edges");
                    prop_assert_eq!(len % 2, 1);
                }
                _ => prop_assert!(false, "component must carry exactly one witness"),
            }
        }
    }

    #[test]
    fn oracle_round_trip_identity(
        n_bits in 3u32..=5,
        seed in any::<u64>(),
        s in 2u64..=4,
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_marked_signed_graph(&mut rng, n_bits, s, 0.4, 0.5);
        let o = from_explicit_signed(&g, s, AccessMode::Marked).unwrap();
        let back = materialize(&o, &MaterializeScope::Full, DEFAULT_INDEX_BUDGET).unwrap();
        prop_assert_eq!(back.signed().unwrap(), &g);
        // Marked-row detector hits exactly the non-vertices.
        for i in 1..o.index_count() {
            prop_assert_eq!(o.invalid_row(i), !g.base().contains_vertex(i));
        }
        // Unsigned view round-trips too.
        let ou = from_explicit_unsigned(g.base(), s, AccessMode::Marked).unwrap();
        let back = materialize(&ou, &MaterializeScope::Full, DEFAULT_INDEX_BUDGET).unwrap();
        prop_assert_eq!(back.unsigned(), g.base());
    }

    #[test]
    fn traditional_round_trip_identity(
        n in 1u64..=12,
        seed in any::<u64>(),
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_signed_graph(&mut rng, n, 4, 0.5);
        let o = from_explicit_signed(&g, 4, AccessMode::Traditional).unwrap();
        let back = materialize(&o, &MaterializeScope::Full, DEFAULT_INDEX_BUDGET).unwrap();
        prop_assert_eq!(back.signed().unwrap(), &g);
    }

    #[test]
    fn boundary_nilpotency_and_hodge_psd(
        n in 2usize..=6,
        seed in any::<u64>(),
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let edges = random_complex_edges(&mut rng, n, 0.6);
        let c = CliqueComplexView::from_edges(n, &edges, 0).unwrap();
        let top = max_dimension(&c).unwrap();
        for p in 1..=top {
            let bp = boundary_matrix(&c, p).unwrap();
            if p < top {
                let bp1 = boundary_matrix(&c, p + 1).unwrap();
                for entries1 in &bp1.col_entries {
                    let mut acc = vec![0i64; bp.rows.len()];
                    for &(mid, s1) in entries1 {
                        for &(r, s0) in &bp.col_entries[mid] {
                            acc[r] += i64::from(s0) * i64::from(s1);
                        }
                    }
                    prop_assert!(acc.iter().all(|&x| x == 0));
                }
            }
        }
        for p in 0..=top {
            let l = hodge_laplacian(&c, p).unwrap();
            prop_assert!(l.is_symmetric());
            prop_assert!(l.is_psd(1e-9));
            // Friedman: exact Betti equals the floating kernel dimension.
            prop_assert_eq!(betti_exact(&c, p).unwrap(), l.kernel_dim_float(1e-8));
        }
    }

    #[test]
    fn clique_sign_cancels_on_doubly_adjacent_pairs(
        n in 3usize..=6,
        seed in any::<u64>(),
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let edges = random_complex_edges(&mut rng, n, 0.7);
        let c = CliqueComplexView::from_edges(n, &edges, 0).unwrap();
        let top = max_dimension(&c).unwrap();
        for p in 0..top.min(n.saturating_sub(2)) {
            let simplices = enumerate_p_simplices(&c, p).unwrap();
            for (i, &sigma) in simplices.iter().enumerate() {
                for &tau in &simplices[i + 1..] {
                    let inter = sigma.bits() & tau.bits();
                    // Lower adjacency needs a shared (p-1)-face, which only
                    // exists for p >= 1.
                    let lower = p >= 1 && inter.count_ones() as usize == p;
                    let upper = c.is_simplex(lapred_core::complex::Simplex(
                        sigma.bits() | tau.bits(),
                    ));
                    if lower && upper {
                        prop_assert_eq!(pairwise_sign(&c, sigma, tau), 0);
                    }
                }
            }
        }
    }

    #[test]
    fn betti_zero_counts_connected_components(
        n in 1usize..=7,
        seed in any::<u64>(),
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let edges = random_complex_edges(&mut rng, n, 0.4);
        let c = CliqueComplexView::from_edges(n, &edges, 0).unwrap();
        // Same graph, 1-based, through the explicit graph module.
        let mut g = lapred_core::graph::UnsignedGraph::new(4);
        for v in 1..=n as u64 {
            g.add_vertex(v).unwrap();
        }
        for &(u, v) in &edges {
            g.add_edge(u as u64 + 1, v as u64 + 1).unwrap();
        }
        let components = lapred_core::graph::connected_components(&g).count;
        prop_assert_eq!(betti_exact(&c, 0).unwrap(), components);
    }

    #[test]
    fn embedding_kernel_matches_materialized_laplacian(
        n_bits in 3u32..=5,
        seed in any::<u64>(),
        s in 2u64..=4,
    ) {
        use lapred_core::spectral::embed_hamiltonian;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_marked_signed_graph(&mut rng, n_bits, s, 0.4, 0.5);
        let o = from_explicit_signed(&g, s, AccessMode::Marked).unwrap();
        let h = embed_hamiltonian(&o, 1, DEFAULT_INDEX_BUDGET).unwrap();
        let mat = materialize(&o, &MaterializeScope::Full, DEFAULT_INDEX_BUDGET).unwrap();
        let l = signed_laplacian(mat.signed().unwrap());
        prop_assert_eq!(h.kernel_dim_exact(), l.kernel_dim_exact());
        prop_assert!(h.is_psd(1e-9));
    }

    #[test]
    fn incidence_gram_is_laplacian(
        n in 1u64..=12,
        seed in any::<u64>(),
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_signed_graph(&mut rng, n, 5, 0.5);
        let inc = incidence_matrix(&g);
        let l = signed_laplacian(&g);
        prop_assert_eq!(inc.gram(), l.clone());
        prop_assert!(l.is_psd(1e-9));
        prop_assert!(signless_laplacian(g.base()).is_psd(1e-9));
    }

    #[test]
    fn zaslavsky_equivalence_explicit_and_oracle(
        n in 1u64..=12,
        seed in any::<u64>(),
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_signed_graph(&mut rng, n, 4, 0.5);
        let sub = negative_subdivision_explicit(&g).unwrap();
        prop_assert_eq!(has_balanced_component(&g), has_bipartite_component(&sub));
        let o = from_explicit_signed(&g, 4, AccessMode::Marked).unwrap();
        let sub_o = negative_subdivision_oracle(&o, SubdivisionScheme::Canonical).unwrap();
        let mat = materialize(&sub_o, &MaterializeScope::Full, DEFAULT_INDEX_BUDGET).unwrap();
        prop_assert_eq!(mat.unsigned().canonical_form(), sub.canonical_form());
    }

    #[test]
    fn clique_oracle_rows_enumerate_simplex_neighborhood(
        n in 2usize..=5,
        p in 0usize..=2,
        seed in any::<u64>(),
    ) {
        prop_assume!(p <= n - 2);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let edges = random_complex_edges(&mut rng, n, 0.6);
        let c = CliqueComplexView::from_edges(n, &edges, p).unwrap();
        let inst = CliqueReductionInstance::new(c.clone()).unwrap();
        let o = clique_oracle(&inst);
        let simplices = enumerate_p_simplices(&c, p).unwrap();
        for &s in &simplices {
            // Nonzero-sign neighbors are exactly the other p-simplices with
            // a nonzero pairwise signature.
            let mut from_oracle: Vec<(u64, i8)> = (0..o.s_bound())
                .filter_map(|l| {
                    let j = o.adj(s.bits(), l);
                    let sg = o.sign(s.bits(), l);
                    (j != 0 && sg != 0).then_some((j, sg))
                })
                .collect();
            from_oracle.sort_unstable();
            let mut expect: Vec<(u64, i8)> = simplices
                .iter()
                .filter(|&&t| t != s)
                .filter_map(|&t| {
                    let sg = pairwise_sign(&c, s, t);
                    (sg != 0).then_some((t.bits(), sg))
                })
                .collect();
            expect.sort_unstable();
            prop_assert_eq!(from_oracle, expect);
        }
    }
}
