use cyclecover::disjoint::{check_three_edge_connected, default_experiments, edge_connectivity_at, two_edge_disjoint_cover};
use cyclecover::generators;
use cyclecover::verify::{edge_disjointness_check, is_walk_between};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn disjointness_examples() {
    assert!(!edge_disjointness_check(&[vec![0, 1], vec![0, 1]]));
    assert!(edge_disjointness_check(&[vec![0, 1], vec![2, 3]]));
}

#[test]
fn petersen_has_full_triples() {
    let g = generators::petersen();
    let r = two_edge_disjoint_cover(&g, default_experiments(&g), 2).unwrap();
    assert!(r.success_rate() >= 0.99, "failures {:?}", r.failures);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn triples_are_valid(seed in 0u64..1_000_000, n in 4usize..24) {
        let g = generators::random_three_edge_connected(n, 0.05, &mut ChaCha8Rng::seed_from_u64(seed));
        prop_assert!(check_three_edge_connected(&g).is_ok());
        let r = two_edge_disjoint_cover(&g, default_experiments(&g), seed).unwrap();
        for (e, t) in r.triples.iter().enumerate() {
            let (u, v) = g.edge(e);
            match t {
                Some(t) => {
                    prop_assert!(edge_disjointness_check(t));
                    prop_assert!(t.iter().all(|p| is_walk_between(&g, p, u, v)));
                }
                None => {
                    prop_assert!(r.failures.iter().any(|&(f, _)| f == e));
                    prop_assert!(edge_connectivity_at(&g, u, v).unwrap() >= 3);
                }
            }
        }
    }
}
