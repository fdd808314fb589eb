use hj_core::catalog::{canonical_form, enumerate_graphs};
use hj_core::circuit::{code_to_bits, parse_circuit, serialize_circuit, Circuit, Gate};
use hj_core::colouring::{find_k_colouring, is_proper, Colouring};
use hj_core::graph::Graph;
use hj_core::io::{parse_graph, write_graph};
use hj_core::oracle;
use hj_core::problems::{
    cos_backward_colouring, cos_forward_colouring, cpos_lift_path, cpos_restrict_path, reduce_3col, reduce_4cp,
    ReductionMode,
};
use hj_core::reconfig::{find_path, path_exists, random_walk, ReconfigOptions};
use hj_core::subgraph::contains_induced;
use hj_core::verify::{random_circuit, random_graph};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn naive_eval(c: &Circuit, id: usize, bits: &[bool]) -> bool {
    match &c.gates()[id] {
        Gate::Const(b) => *b,
        Gate::Var(i) => bits[i - 1],
        Gate::Not(x) => !naive_eval(c, *x, bits),
        Gate::And(xs) => xs.iter().all(|&x| naive_eval(c, x, bits)),
        Gate::Or(xs) => xs.iter().any(|&x| naive_eval(c, x, bits)),
    }
}

fn relabel(g: &Graph, perm: &[usize]) -> Graph {
    let edges: Vec<_> = g.edges().map(|(u, v)| (perm[u], perm[v])).collect();
    Graph::from_edges(g.vertex_count(), &edges).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn colouring_matches_brute_force(seed in any::<u64>(), n in 0usize..=8, k in 1u32..=4) {
        let g = random_graph(n, &mut rng(seed));
        let found = find_k_colouring(&g, k);
        prop_assert_eq!(found.is_some(), oracle::is_k_colourable(&g, k));
        if let Some(c) = found {
            prop_assert!(is_proper(&g, &c).unwrap());
        }
    }

    #[test]
    fn induced_search_matches_brute_force(seed in any::<u64>(), n in 0usize..=7, l in 1usize..=4) {
        let mut r = rng(seed);
        let g = random_graph(n, &mut r);
        let h = random_graph(l, &mut r);
        let found = contains_induced(&g, &h);
        prop_assert_eq!(found.is_some(), oracle::contains_induced(&g, &h));
        if let Some(map) = found {
            prop_assert!(map.is_injective());
            for i in 0..l {
                for j in i + 1..l {
                    prop_assert_eq!(h.has_edge(i, j), g.has_edge(map.map[i], map.map[j]));
                }
            }
        }
    }

    #[test]
    fn reachability_matches_explicit_graph(seed in any::<u64>(), n in 1usize..=4, k in 2u32..=4) {
        let mut r = rng(seed);
        let g = random_graph(n, &mut r);
        let all = oracle::all_proper_colourings(&g, k);
        prop_assume!(!all.is_empty());
        let a = all.choose(&mut r).unwrap();
        let b = all.choose(&mut r).unwrap();
        let expected = oracle::reachable(&g, k, a, b);
        prop_assert_eq!(path_exists(&g, a, b).unwrap(), expected);
        let path = find_path(&g, a, b, &ReconfigOptions::default()).unwrap();
        prop_assert_eq!(path.is_some(), expected);
        if let Some(p) = path {
            prop_assert_eq!(p.steps().first(), Some(a));
            prop_assert_eq!(p.steps().last(), Some(b));
        }
    }

    #[test]
    fn canonical_key_is_label_invariant(seed in any::<u64>(), n in 1usize..=7) {
        let mut r = rng(seed);
        let g = random_graph(n, &mut r);
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(&mut r);
        let h = relabel(&g, &perm);
        prop_assert_eq!(canonical_form(&g).0, canonical_form(&h).0);
        let cat = enumerate_graphs(n).unwrap();
        let idx = cat.index_of(&g).unwrap();
        prop_assert!(oracle::isomorphic(&g, &cat.members()[idx]));
    }

    #[test]
    fn graph_text_round_trip(seed in any::<u64>(), n in 0usize..=12) {
        let g = random_graph(n, &mut rng(seed));
        prop_assert_eq!(parse_graph(&write_graph(&g)).unwrap(), g);
    }

    #[test]
    fn circuit_text_round_trip(seed in any::<u64>(), m in 1usize..=4, depth in 0usize..=6) {
        let c = random_circuit(m, depth, &mut rng(seed));
        let text = serialize_circuit(&c);
        let back = parse_circuit(&text).unwrap();
        prop_assert_eq!(serialize_circuit(&back), text);
        prop_assert_eq!(back, c);
    }

    #[test]
    fn memoized_eval_matches_naive(seed in any::<u64>(), m in 1usize..=3, depth in 0usize..=6) {
        let c = random_circuit(m, depth, &mut rng(seed));
        for code in 0u64..1 << (2 * m) {
            let bits = code_to_bits(code, 2 * m);
            prop_assert_eq!(c.eval(&bits).unwrap(), naive_eval(&c, c.output(), &bits));
        }
        let g = c.materialize().unwrap();
        prop_assert!(g.check_invariants().is_ok());
    }

    #[test]
    fn cos_witness_round_trip(seed in any::<u64>(), n in 1usize..=7) {
        let g = random_graph(n, &mut rng(seed));
        let art = reduce_3col(&g, ReductionMode::Generalized { p: 4 }).unwrap();
        prop_assert!(art.provenance.partitions_output());
        if let Some(c3) = find_k_colouring(&g, 3) {
            let cp = cos_forward_colouring(&art, &c3).unwrap();
            prop_assert_eq!(&cp.colours()[..n], c3.colours());
            let back = cos_backward_colouring(&art, &cp).unwrap();
            prop_assert!(is_proper(&g, &back).unwrap());
        }
        if let Some(cp) = find_k_colouring(art.instance.graph(), 4) {
            let back = cos_backward_colouring(&art, &cp).unwrap();
            prop_assert!(is_proper(&g, &back).unwrap());
        }
    }

    #[test]
    fn cpos_restrict_inverts_lift(seed in any::<u64>(), n in 1usize..=5, steps in 0usize..=12) {
        let mut r = rng(seed);
        let g = random_graph(n, &mut r);
        let start = find_k_colouring(&g, 4).unwrap();
        let walk = random_walk(&g, &start, steps, &mut r).unwrap();
        let end = walk.steps().last().unwrap().clone();
        let art = reduce_4cp(&g, &start, &end, ReductionMode::Generalized { p: 5 }).unwrap();
        let lifted = cpos_lift_path(&art, &walk).unwrap();
        prop_assert_eq!(lifted.steps().first(), Some(art.instance.alpha()));
        prop_assert_eq!(lifted.steps().last(), Some(art.instance.beta()));
        prop_assert_eq!(cpos_restrict_path(&art, &lifted).unwrap(), walk);
    }
}

#[test]
fn restrict_skips_steps_outside_g() {
    let g = Graph::complete(2);
    let a = Colouring::new(4, vec![1, 2]).unwrap();
    let art = reduce_4cp(&g, &a, &a, ReductionMode::Generalized { p: 5 }).unwrap();
    let start = art.instance.alpha().clone();
    // recolour the first vertex of the first catalog member, which is isolated in it
    let z = art.provenance.catalog[0].map[0];
    let moved = start.recoloured(z, start.colour(z) % 5 + 1);
    let path = hj_core::reconfig::ReconfigPath::new(art.instance.graph(), 5, vec![start, moved]).unwrap();
    let restricted = cpos_restrict_path(&art, &path).unwrap();
    assert_eq!(restricted.steps(), &[a]);
}
