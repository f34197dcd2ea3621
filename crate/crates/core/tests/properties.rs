use minor_toolkit::catalog::canonical_code;
use minor_toolkit::certificate::{Certificate, Payload, Verdict};
use minor_toolkit::graph::{degeneracy_coloring, graph6, Graph};
use minor_toolkit::oracles::{chromatic_number, independence_number, vertex_connectivity};
use minor_toolkit::verify::{check_coloring, is_independent_set, is_k_connected};
use proptest::prelude::*;

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (0..=max_n).prop_flat_map(|n| {
        let pairs = n * n.saturating_sub(1) / 2;
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let mut edges = Vec::new();
            let mut i = 0;
            for v in 1..n {
                for u in 0..v {
                    if bits[i] {
                        edges.push((u, v));
                    }
                    i += 1;
                }
            }
            Graph::build(n, &edges).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn graph6_round_trip(g in graph(70)) {
        let text = graph6::encode(&g);
        let back = graph6::decode_str(&text).unwrap();
        prop_assert_eq!(&back, &g);
        prop_assert_eq!(graph6::encode(&back), text);
    }

    #[test]
    fn degeneracy_coloring_is_proper(g in graph(30)) {
        let d = degeneracy_coloring(&g);
        let used = check_coloring(&g, &d.coloring).unwrap();
        prop_assert_eq!(used, d.colors);
        prop_assert!(used <= d.degeneracy + 1);
    }

    #[test]
    fn chromatic_and_independence_witnesses(g in graph(11)) {
        let c = chromatic_number(&g).unwrap();
        prop_assert_eq!(check_coloring(&g, &c.coloring).unwrap(), c.chi);
        let a = independence_number(&g).unwrap();
        prop_assert!(is_independent_set(&g, &a.witness));
        prop_assert_eq!(a.witness.len(), a.size);
        // chi * alpha >= n
        prop_assert!(c.chi * a.size >= g.vertex_count());
    }

    #[test]
    fn connectivity_agrees_with_definition(g in graph(10)) {
        prop_assume!(g.vertex_count() > 0);
        let k = vertex_connectivity(&g).kappa;
        prop_assert!(k == 0 || is_k_connected(&g, k));
        prop_assert!(!is_k_connected(&g, k + 1));
    }

    #[test]
    fn canonical_code_ignores_labels(g in graph(9), seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let n = g.vertex_count();
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
        let edges: Vec<(usize, usize)> = g.edges().map(|(u, v)| (perm[u], perm[v])).collect();
        let h = Graph::build(n, &edges).unwrap();
        prop_assert_eq!(canonical_code(&g), canonical_code(&h));
    }

    #[test]
    fn certificates_survive_serialization(g in graph(12)) {
        prop_assume!(g.vertex_count() > 0);
        let c = chromatic_number(&g).unwrap();
        let cert = Certificate::new(&g, Payload::Coloring { colors: c.coloring, claimed: Some(c.chi) }, true);
        let back = Certificate::parse(&serde_json::to_string(&cert).unwrap()).unwrap();
        prop_assert_eq!(&back, &cert);
        prop_assert_eq!(back.verify(None), Verdict::Valid);
    }
}
