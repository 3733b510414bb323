mod common;

use ladder_epp::patterns::validate;
use ladder_epp::solver::{solve_core_1v, solve_house, solve_ladder3, verify_certificate, EppCertificate, PatternKind};
use ladder_epp::{Graph, VertexId};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn sparse_graph() -> impl Strategy<Value = Graph> {
    (5usize..=10, 0usize..=7, any::<u64>()).prop_map(|(n, extra, seed)| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        common::random_connected(&mut rng, n, extra)
    })
}

fn masks(g: &Graph, kind: PatternKind) -> Vec<u128> {
    match kind {
        PatternKind::Ladder3 => common::ladder3_masks(g),
        PatternKind::House => common::house_masks(g),
    }
}

fn check(g: &Graph, k: usize, kind: PatternKind, cert: &EppCertificate) -> Result<(), TestCaseError> {
    prop_assert!(verify_certificate(g, k, cert));
    let want = common::has_disjoint(&masks(g, kind), k);
    match cert {
        EppCertificate::Packing { witnesses, .. } => {
            prop_assert!(want, "packing reported but brute force finds none");
            for w in witnesses {
                prop_assert!(validate(g, w).is_ok());
            }
        }
        EppCertificate::HittingSet { edges, .. } => {
            prop_assert!(!want, "hitting set reported but a packing exists");
            let rest = g.without_edges(edges.iter().collect::<Vec<_>>().iter());
            prop_assert!(masks(&rest, kind).is_empty());
        }
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn ladder_solver_matches_brute_force(g in sparse_graph(), k in 1usize..=3) {
        let (cert, report) = solve_ladder3(&g, k).unwrap();
        prop_assert_eq!(report.tally.total(), report.hitting_size);
        check(&g, k, PatternKind::Ladder3, &cert)?;
    }

    #[test]
    fn house_solver_matches_brute_force(g in sparse_graph(), k in 1usize..=3) {
        let (cert, _) = solve_house(&g, k).unwrap();
        check(&g, k, PatternKind::House, &cert)?;
    }

    #[test]
    fn one_vertex_case_respects_bound(n in 4usize..=10, k in 1usize..=3, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut g = common::random_tree(&mut rng, n);
        let v = g.add_vertex();
        for u in 0..n as u32 {
            if rng.gen_bool(0.6) {
                g.add_edge(v, VertexId(u)).unwrap();
            }
        }
        let (cert, report) = solve_core_1v(&g, v, k).unwrap();
        prop_assert!(verify_certificate(&g, k, &cert));
        if let EppCertificate::HittingSet { edges, .. } = &cert {
            prop_assert!(edges.len() <= 18 * k * k + 111 * k);
            let rest = g.without_edges(edges.iter().collect::<Vec<_>>().iter());
            prop_assert!(common::ladder3_masks(&rest).is_empty());
        }
        prop_assert_eq!(report.one_vertex_bound, Some(18 * k * k + 111 * k));
    }
}

#[test]
fn fan_has_ladders_at_its_hub() {
    // hub joined to every vertex of a long path
    let n = 26u32;
    let mut es: Vec<(u32, u32)> = (0..n - 1).map(|i| (i, i + 1)).collect();
    es.extend((0..n).map(|i| (n, i)));
    let g = Graph::from_edges(n as usize + 1, &es);
    for k in 1..=3 {
        let (cert, _) = solve_core_1v(&g, VertexId(n), k).unwrap();
        assert!(verify_certificate(&g, k, &cert));
        assert!(cert.is_packing());
    }
}

#[test]
fn planted_ladders_are_packed() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..40 {
        let k = rng.gen_range(1..=3);
        let g = ladder_epp::verifier::gen::planted_ladders(k, rng.gen_range(0..5), &mut rng);
        let (cert, _) = solve_ladder3(&g, k).unwrap();
        assert!(cert.is_packing());
        assert!(verify_certificate(&g, k, &cert));
    }
}
