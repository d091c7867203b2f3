//! Property tests for the invariants of every module.

use std::collections::BTreeSet;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::analysis::{
    classify, critical_edges, is_rooted_oriented_path, is_unfoldable, max_degree, per_edge_degrees,
    unfoldability_degree, unfoldable_edges,
};
use crate::io::{parse_graph, parse_structure, serialize_graph, serialize_structure};
use crate::random::{er_graph, planted_target, random_tail_path};
use crate::reductions::{build_b, make_p_kl, reduce_longshort, GadgetSpec};
use crate::solvers::hashing::{all_colorings, is_prime, prime_bound};
use crate::solvers::paths::shortest_path_between;
use crate::solvers::{
    algorithm_ac, algorithm_b, brute_force_embedding, brute_force_homomorphism, color_graph_a, enumerate_hashes,
    find_long_path, is_embedding, solve_longshort, AcConfig, ExactLongShort,
    LongShortInstance,
};
use crate::structure::{edge_power, EDGE, ROOT};
use crate::{as_rooted_path, Graph, RootedPathStructure, Structure, Vocabulary};

/// A rooted path over `{root, E, U}` whose universe order is a random
/// permutation of the path order. `dirs[j]`: 0 forward, 1 backward, 2 both.
fn build_path(dirs: &[u8], marks: &[bool], perm: &[usize]) -> RootedPathStructure {
    let k = dirs.len() + 1;
    let at = |j: usize| perm[j];
    let mut names = vec![String::new(); k];
    for j in 0..k {
        names[at(j)] = format!("p{}", j + 1);
    }
    let mut arcs = Vec::new();
    for (j, &d) in dirs.iter().enumerate() {
        if d != 1 {
            arcs.push(vec![at(j), at(j + 1)]);
        }
        if d != 0 {
            arcs.push(vec![at(j + 1), at(j)]);
        }
    }
    let unary = (0..k).filter(|&j| marks[j]).map(|j| vec![at(j)]).collect();
    let vocab = Vocabulary::new([(ROOT, 1), (EDGE, 2), ("U", 1)]).unwrap();
    let s = Structure::from_indices(vocab, names, [(ROOT, vec![vec![at(0)]]), (EDGE, arcs), ("U", unary)]).unwrap();
    RootedPathStructure::new(s).unwrap()
}

fn arb_path(min: usize, max: usize) -> impl Strategy<Value = RootedPathStructure> {
    (min..=max)
        .prop_flat_map(|k| {
            (
                prop::collection::vec(0u8..3, k - 1),
                prop::collection::vec(any::<bool>(), k),
                Just((0..k).collect::<Vec<_>>()).prop_shuffle(),
            )
        })
        .prop_map(|(d, m, p)| build_path(&d, &m, &p))
}

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (2..=max_n).prop_flat_map(|n| {
        prop::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let pairs = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
            Graph::from_edges(n, pairs.zip(bits).filter(|(_, b)| *b).map(|(e, _)| e))
        })
    })
}

fn positions(p: &RootedPathStructure) -> Vec<usize> {
    let mut pos = vec![0; p.k()];
    for j in 1..=p.k() {
        pos[p.point(j)] = j;
    }
    pos
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn homomorphisms_preserve_atomic_types(p in arb_path(2, 6), seed in any::<u64>(), n in 2usize..7) {
        let b = planted_target(&mut ChaCha8Rng::seed_from_u64(seed), p.base(), n);
        if let Some(h) = brute_force_homomorphism(p.base(), &b).unwrap() {
            for x in 0..p.k() {
                for y in 0..p.k() {
                    prop_assert!(p.base().atomic_type(x, y).is_subset(&b.atomic_type(h[x], h[y])));
                }
            }
        }
    }

    #[test]
    fn gaifman_graph_is_the_path(p in arb_path(1, 9)) {
        let order = p.base().gaifman().path_enumeration().unwrap();
        let ends: BTreeSet<usize> = [order[0], order[order.len() - 1]].into();
        prop_assert_eq!(ends, [p.point(1), p.point(p.k())].into());
    }

    #[test]
    fn edge_powers_swap_by_parity(p in arb_path(2, 8), l in 0usize..=5) {
        for i in 1..p.k() {
            let (a, b) = edge_power(p.edge(i), l);
            let ty = p.base().atomic_type(a, b);
            let expected = if l % 2 == 1 { p.edge_type(i).swap() } else { p.edge_type(i).clone() };
            prop_assert_eq!(ty, expected);
        }
    }

    #[test]
    fn cuts_meet_in_one_point(p in arb_path(1, 9), frac in 0.0f64..1.0) {
        let i = 1 + (frac * p.k() as f64) as usize;
        let down: BTreeSet<String> = p.cut_down(i).unwrap().base().universe().iter().cloned().collect();
        let up: BTreeSet<String> = p.cut_up(i).unwrap().base().universe().iter().cloned().collect();
        let common: Vec<&String> = down.intersection(&up).collect();
        let name = p.base().name(p.point(i)).to_string();
        prop_assert_eq!(common, vec![&name]);
        prop_assert_eq!(down.len() + up.len(), p.k() + 1);
    }

    #[test]
    fn unfoldability_is_monotone(p in arb_path(2, 9)) {
        let degrees = per_edge_degrees(&p);
        prop_assert_eq!(unfoldability_degree(&p), degrees.iter().sum::<usize>());
        let from_degrees: Vec<usize> = (1..p.k()).filter(|&i| degrees[i - 1] >= 1).collect();
        prop_assert_eq!(unfoldable_edges(&p), from_degrees);
        for i in 1..p.k() {
            let d = max_degree(&p, i).unwrap();
            for dd in 0..=p.k() {
                let u = is_unfoldable(&p, i, dd).unwrap();
                prop_assert_eq!(u, dd <= d);
                if u && dd > 0 {
                    prop_assert!(i > dd);
                }
            }
        }
    }

    #[test]
    fn unfoldable_edges_are_critical(p in arb_path(3, 9)) {
        let crit = critical_edges(&p);
        for i in unfoldable_edges(&p) {
            prop_assert!(crit.contains(&i));
        }
        prop_assert!(crit.contains(&2));
    }

    #[test]
    fn classify_ignores_order(sample in prop::collection::vec(arb_path(2, 7), 1..6), bound in 0usize..6) {
        let a = classify(&sample, bound).unwrap();
        let mut rev = sample.clone();
        rev.reverse();
        let b = classify(&rev, bound).unwrap();
        prop_assert_eq!(a.verdict, b.verdict);
        prop_assert_eq!(a.max_unfoldability_degree, b.max_unfoldability_degree);
        prop_assert_eq!(a.common_tail_constant, b.common_tail_constant);
        prop_assert_eq!(a.tail_within_bound, b.tail_within_bound);
    }

    #[test]
    fn ac_agrees_with_brute_force(p in arb_path(2, 6), seed in any::<u64>(), n in 2usize..8) {
        let b = planted_target(&mut ChaCha8Rng::seed_from_u64(seed), p.base(), n);
        let truth = brute_force_embedding(p.base(), &b).unwrap();
        let out = algorithm_ac(&p, &b, &ExactLongShort, &AcConfig::default()).unwrap();
        prop_assert_eq!(out.accepted(), truth.is_some());
        if let Some(w) = &out.witness {
            prop_assert!(is_embedding(p.base(), &b, w));
        }
        for acc in &out.accepts {
            prop_assert!(is_embedding(acc.p.base(), &acc.b, &acc.witness));
        }
    }

    #[test]
    fn tail_algorithm_agrees_with_brute_force(k in 2usize..8, c in 1usize..4, seed in any::<u64>(), n in 2usize..9) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = random_tail_path(&mut rng, k, c);
        let b = planted_target(&mut rng, p.base(), n);
        let truth = brute_force_embedding(p.base(), &b).unwrap().is_some();
        let out = algorithm_b(&p, &b, c, &AcConfig::default()).unwrap();
        prop_assert_eq!(out.accepted(), truth);
        if let Some(w) = &out.witness {
            prop_assert!(is_embedding(p.base(), &b, w));
        }
    }

    #[test]
    fn long_paths_are_monotone(g in arb_graph(7), s in 0usize..7, l in 1usize..7) {
        let s = s % g.capacity();
        if find_long_path(&g, s, l).is_some() {
            prop_assert!(find_long_path(&g, s, l - 1).is_some());
        }
    }

    #[test]
    fn grid_projections(g in arb_graph(4), p in arb_path(2, 6), xmask in any::<u16>(), s in 0usize..4, t in 0usize..4) {
        let n = g.capacity();
        let (s, t) = (s % n, t % n);
        let x: Vec<usize> = (1..p.k()).filter(|i| xmask >> i & 1 == 1).collect();
        let spec = GadgetSpec::new(g.clone(), p.clone(), x.clone(), s, t).unwrap();
        let b = build_b(&spec);
        prop_assert_eq!(b.len(), n * p.k());
        let pos = positions(&p);
        let split = |e: usize| (e / p.k(), e % p.k());
        for (u, v) in b.gaifman().edges() {
            let ((g1, q1), (g2, q2)) = (split(u), split(v));
            prop_assert_eq!(pos[q1].abs_diff(pos[q2]), 1);
            prop_assert!(g1 == g2 || g.has_edge(g1, g2));
            if g1 != g2 {
                prop_assert!(x.contains(&pos[q1].min(pos[q2])));
            }
        }
        for (symbol, tuples) in b.relations() {
            for tuple in tuples {
                let proj: Vec<usize> = tuple.iter().map(|&e| split(e).1).collect();
                prop_assert!(p.base().contains_tuple(symbol, &proj));
            }
        }
    }

    #[test]
    fn longshort_round_trip(g in arb_graph(6), s in 0usize..6, t in 0usize..6, l in 1usize..5, kk in 0usize..4) {
        let n = g.capacity();
        let (s, t, k) = (s % n, t % n, kk % l);
        let truth = solve_longshort(&LongShortInstance::new(g.clone(), s, t, k, l).unwrap());
        let (p, gp) = reduce_longshort(&g, s, t, k, l).unwrap();
        prop_assert_eq!(gp.len(), n + l - k);
        prop_assert_eq!(brute_force_embedding(p.base(), &gp).unwrap().is_some(), truth);
    }

    #[test]
    fn structures_round_trip(p in arb_path(1, 8), seed in any::<u64>(), n in 1usize..6) {
        prop_assert_eq!(&parse_structure(&serialize_structure(p.base())).unwrap(), p.base());
        let b = planted_target(&mut ChaCha8Rng::seed_from_u64(seed), p.base(), n);
        prop_assert_eq!(parse_structure(&serialize_structure(&b)).unwrap(), b);
    }

    #[test]
    fn graphs_round_trip(g in arb_graph(9)) {
        prop_assert_eq!(parse_graph(&serialize_graph(&g)).unwrap(), g);
    }

    #[test]
    fn er_graphs_round_trip(seed in any::<u64>(), n in 1usize..12) {
        let g = er_graph(&mut ChaCha8Rng::seed_from_u64(seed), n, 2.0 / n as f64);
        prop_assert_eq!(parse_graph(&serialize_graph(&g)).unwrap(), g);
    }

    #[test]
    fn hash_members_are_well_formed(n in 2usize..300, r in 1usize..17) {
        let bound = prime_bound(n, r, 1.0);
        for h in enumerate_hashes(n, r).step_by(7) {
            prop_assert!(is_prime(h.p));
            prop_assert!(h.q < h.p);
            prop_assert!(h.p < bound);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn color_graph_paths_give_embeddings(p in arb_path(3, 4), seed in any::<u64>(), n in 3usize..7) {
        let k = p.k();
        // the color graph only speaks for P when e_3..e_{k-1} fold back onto e_2
        prop_assume!((1..k - 2).all(|i| p.edge_type(2 + i).is_subset(&p.edge_type_power(2, i))));
        let b = planted_target(&mut ChaCha8Rng::seed_from_u64(seed), p.base(), n);
        let truth = brute_force_embedding(p.base(), &b).unwrap().is_some();
        let mut long_path = false;
        let mut coloured_path = false;
        let colourings = all_colorings(n, 2, k - 1);
        for b1 in 0..n {
            if !p.base().atomic_type(p.point(1), p.point(1)).is_subset(&b.atomic_type(b1, b1)) {
                continue;
            }
            for f in &colourings {
                let g = color_graph_a(&p, &b, f, b1).unwrap();
                let twos: Vec<usize> = g.vertices().filter(|&x| f[x] == 2).collect();
                for &s in &twos {
                    if let Some(path) = find_long_path(&g, s, k - 2) {
                        long_path = true;
                        let mut w = vec![0; k];
                        w[p.point(1)] = b1;
                        for (j, &x) in path.iter().enumerate() {
                            w[p.point(j + 2)] = x;
                        }
                        prop_assert!(is_embedding(p.base(), &b, &w), "path {path:?} from b1 = {b1}");
                    }
                }
                let targets: Vec<bool> = (0..n).map(|x| g.has_vertex(x) && f[x] as usize == k).collect();
                if shortest_path_between(&g, &twos, &targets).is_some() {
                    coloured_path = true;
                }
            }
        }
        prop_assert_eq!(long_path, coloured_path);
        prop_assert!(!coloured_path || truth);
    }

    #[test]
    fn p_kl_validates(l in 2usize..10, kk in 0usize..9) {
        let k = kk % l;
        let p = make_p_kl(k, l).unwrap();
        prop_assert!(as_rooted_path(p.base().clone()).is_ok());
        if k < l - 1 {
            prop_assert!(!is_rooted_oriented_path(&p).unwrap());
        }
    }
}
