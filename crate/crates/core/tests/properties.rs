use std::collections::BTreeSet;

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use clustercol::cli_io::format::InstanceFile;
use clustercol::cli_io::gen;
use clustercol::color_core::{
    clustering, clusters, extend_over_sparsifiers, respects, satisfies_extension_conditions, uniform_lists, Color, Config, Lists,
    Precoloring,
};
use clustercol::discharge_audit::{audit, StripAmount};
use clustercol::extend_solver::solve_planar;
use clustercol::oracle::exhaustive_pword;
use clustercol::stacks::{build_pointer_system, color_3tree, stack_outcome_holds};
use clustercol::structure_detect::{big_mask, find_pword, maximal_separated_system, min_free_t, system_vertices};
use clustercol::{PlaneGraph, Triangle, Vertex};

fn family(kind: u8, n: usize, seed: u64) -> PlaneGraph {
    match kind % 4 {
        0 => gen::triangulation(n, seed),
        1 => gen::stacked_3tree(n, seed),
        2 => gen::four_connected_triangulation(n.max(6), seed),
        _ => gen::delete_random_edges(&gen::triangulation(n, seed), n / 3, seed),
    }
}

fn lists_and_psi(g: &PlaneGraph, k: usize, seed: u64) -> (Lists, Precoloring) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let palette: Vec<Color> = (1..=5).collect();
    let lists: Lists = (0..g.capacity())
        .map(|_| {
            let mut l: Vec<Color> = palette.choose_multiple(&mut rng, 3).copied().collect();
            l.sort_unstable();
            l
        })
        .collect();
    let vs: Vec<Vertex> = g.vertices().collect();
    let psi = vs.choose_multiple(&mut rng, k).map(|&v| (v, *lists[v].choose(&mut rng).unwrap())).collect();
    (lists, psi)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn euler_and_face_lengths(kind in 0u8..4, n in 4usize..60, seed in any::<u64>(), drop in 0usize..10) {
        let g = family(kind, n, seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let vs: Vec<Vertex> = g.vertices().collect();
        let removed: Vec<Vertex> = vs.choose_multiple(&mut rng, drop.min(vs.len())).copied().collect();
        for h in [g.clone(), g.delete_vertices(&removed)] {
            prop_assert!(h.euler_check().is_ok());
            prop_assert_eq!(h.face_length_sum(), 2 * h.edge_count());
        }
    }

    #[test]
    fn instance_files_round_trip(kind in 0u8..4, n in 4usize..40, seed in any::<u64>(), k in 0usize..4) {
        let g = family(kind, n, seed);
        let (lists, psi) = lists_and_psi(&g, k, seed);
        let mut file = InstanceFile::from_graph(&g).with_metadata("property", vec![n as u64], Some(seed));
        file.lists = Some(lists);
        file.psi = Some(psi.into_iter().collect());
        let text = file.to_json();
        let back = InstanceFile::from_json(&text).unwrap();
        prop_assert_eq!(&back, &file);
        prop_assert_eq!(back.to_json(), text);
        prop_assert_eq!(back.graph().unwrap().edges(), g.edges());
    }

    #[test]
    fn solver_extends_and_is_deterministic(kind in 0u8..4, n in 4usize..40, seed in any::<u64>(), k in 0usize..5) {
        let g = family(kind, n, seed);
        let (lists, psi) = lists_and_psi(&g, k, seed);
        let a = solve_planar(&g, &lists, &psi, None, &Config::default()).unwrap();
        prop_assert!(a.verdict.passed, "{:?}", a.verdict);
        prop_assert!(respects(&g, &lists, &psi, &a.coloring));
        prop_assert!(a.clustering as u64 <= a.bound);
        let b = solve_planar(&g, &lists, &psi, None, &Config::default()).unwrap();
        prop_assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    }

    /// Clusters of the residual coloring are never merged through a sparsifier.
    #[test]
    fn sparsifier_extension_keeps_clusters_apart(kind in 0u8..3, n in 6usize..60, seed in any::<u64>(), k in 0usize..4) {
        let g = family(kind, n, seed);
        let (lists, psi) = lists_and_psi(&g, k, seed);
        let x: BTreeSet<Vertex> = psi.keys().copied().collect();
        let t = min_free_t(&g).unwrap().max(2);
        let d = 336 * t;
        let system = maximal_separated_system(&g, &x, d);
        let residual = g.delete_vertices(&system_vertices(&system));
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 1);
        let mut phi0 = vec![None; g.capacity()];
        for v in residual.vertices() {
            phi0[v] = Some(*lists[v].choose(&mut rng).unwrap());
        }
        let phi = extend_over_sparsifiers(&g, &x, d, &lists, &system, &phi0).unwrap();
        let big = big_mask(&g, &x, d);
        for s in &system {
            prop_assert!(satisfies_extension_conditions(&g, &big, &s.vertices, &phi));
        }
        let mut label = vec![usize::MAX; g.capacity()];
        for (i, c) in clusters(&residual, &phi0).iter().enumerate() {
            for &v in c {
                label[v] = i;
            }
        }
        for c in clusters(&g, &phi) {
            let inner: BTreeSet<usize> = c.iter().filter(|&&v| residual.is_alive(v)).map(|&v| label[v]).collect();
            prop_assert!(inner.len() <= 1);
        }
    }

    #[test]
    fn three_tree_dichotomy(n in 4usize..80, seed in any::<u64>(), r in 0usize..3, uniform in any::<bool>()) {
        let g = gen::stacked_3tree(n, seed);
        let t = min_free_t(&g).unwrap();
        let c = Triangle::new(0, 1, 2);
        let mut lists = if uniform { uniform_lists(g.capacity()) } else { lists_and_psi(&g, 0, seed).0 };
        for l in lists.iter_mut().take(3) {
            *l = vec![1, 2, 3];
        }
        let psi: Precoloring = [(0, 1), (1, 2), (2, 3)].into();
        let phi = color_3tree(&g, &c, &lists, &psi, r, t).unwrap();
        prop_assert!(respects(&g, &lists, &psi, &phi));
        prop_assert!(stack_outcome_holds(&g, &c, &lists, r, t, &phi));
        prop_assert!(clustering(&g, &phi) <= 3 * t);
    }

    #[test]
    fn pointer_thickness(kind in 0u8..4, n in 4usize..60, seed in any::<u64>(), k in 0usize..5) {
        let g = family(kind, n, seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let vs: Vec<Vertex> = g.vertices().collect();
        let x: BTreeSet<Vertex> = vs.choose_multiple(&mut rng, k).copied().collect();
        let faces: Vec<usize> = (0..g.faces().len())
            .filter(|&f| g.face(f).vertex_set().iter().any(|v| !x.contains(v)))
            .collect();
        let ps = build_pointer_system(&g, &faces, &x).unwrap();
        prop_assert!(ps.thickness <= 12 + 2 * x.len());
        for (&f, &v) in &ps.pointer {
            prop_assert!(g.face(f).vertex_set().contains(&v) && !x.contains(&v));
        }
    }

    #[test]
    fn pword_search_matches_enumeration(kind in 0u8..4, n in 4usize..12, seed in any::<u64>()) {
        let g = family(kind, n, seed);
        for t in 1..=g.vertex_count() {
            prop_assert_eq!(find_pword(&g, t).unwrap().is_some(), exhaustive_pword(&g, t).is_some());
        }
    }

    #[test]
    fn audit_conserves_charge(kind in 0u8..4, n in 4usize..60, seed in any::<u64>(), t in 2usize..8) {
        let g = family(kind, n, seed);
        let rep = audit(&g, &BTreeSet::new(), t, Some(6), StripAmount::EighthT);
        if let Some(ledger) = &rep.ledger {
            prop_assert_eq!(ledger.total_initial(), ledger.total_final());
        }
    }
}
