use cyclecover::coverfile::{read_cover, write_cover};
use cyclecover::generators;
use cyclecover::partition::{block_count_bound, blocks_crossing, partition};
use cyclecover::verify::verify_cover;
use cyclecover::{bfs_tree, bridges, graph_cover, Graph};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn bridgeless(seed: u64, n: usize, p: f64) -> Graph {
    generators::random_two_edge_connected(n, p, &mut ChaCha8Rng::seed_from_u64(seed))
}

fn walks(g: &cyclecover::CycleCover) -> Vec<Vec<usize>> {
    g.cycles.iter().map(|c| c.vertices.clone()).collect()
}

#[test]
fn cycle_graph_gets_one_cycle() {
    let g = generators::cycle(8);
    let gc = graph_cover(&g).unwrap();
    assert_eq!(gc.cover.cycles.len(), 1);
    assert_eq!(gc.cover.dilation(), 8);
}

#[test]
fn bridges_are_reported_not_covered() {
    let g = generators::barbell();
    let gc = graph_cover(&g).unwrap();
    assert_eq!(gc.bridges, bridges(&g));
    let report = verify_cover(&g, &walks(&gc.cover), None);
    assert!(report.is_ok(), "{}", report.to_text());
    assert!(!gc.cover.covers(gc.bridges[0]));
}

#[test]
fn deleting_a_cycle_is_caught() {
    let g = generators::petersen();
    let cover = graph_cover(&g).unwrap().cover;
    let e = (0..g.m()).find(|&e| cover.congestion(e) == 1).unwrap();
    let (ci, _) = cover.per_edge_index[e][0];
    let mut ws = walks(&cover);
    ws.remove(ci);
    let report = verify_cover(&g, &ws, None);
    assert!(report.uncovered.contains(&e));
    assert!(report.to_text().contains("VIOLATION"));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn verifier_agrees_with_constructor(seed in 0u64..1_000_000, n in 3usize..70, p in 0.0f64..0.15) {
        let g = bridgeless(seed, n, p);
        let gc = graph_cover(&g).unwrap();
        let report = verify_cover(&g, &walks(&gc.cover), None);
        prop_assert!(report.is_ok(), "{}", report.to_text());
        prop_assert_eq!(report.dilation, gc.cover.dilation());
        prop_assert_eq!(report.max_congestion, gc.cover.max_congestion());
        for e in 0..g.m() {
            prop_assert_eq!(report.per_edge_congestion[e], gc.cover.congestion(e));
        }
        prop_assert_eq!(gc.stats.nontree.halving_violations(), 0);
        prop_assert_eq!(gc.stats.tree.nontree.halving_violations(), 0);
    }

    #[test]
    fn partition_blocks_cross_each_tree_edge_at_most_twice(seed in 0u64..1_000_000, n in 2usize..80, p in 0.0f64..0.2, b in 1usize..40) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = generators::random_connected(n, p, &mut rng);
        let t = bfs_tree(&g, 0).unwrap();
        let eprime: Vec<usize> = (0..g.m()).filter(|&e| !t.is_tree_edge(e)).collect();
        let bp = partition(&g, &t, &eprime, b);
        for e in t.edges() {
            prop_assert!(blocks_crossing(&t, &bp, e) <= 2);
        }
        for (i, &(lo, hi)) in bp.blocks.iter().enumerate() {
            prop_assert!(bp.densities[i] <= b || lo == hi);
        }
        prop_assert!(bp.len() <= block_count_bound(eprime.len(), b));
    }

    #[test]
    fn cover_file_round_trips(seed in 0u64..1_000_000, n in 3usize..40) {
        let g = bridgeless(seed, n, 0.05);
        let cover = graph_cover(&g).unwrap().cover;
        let text = write_cover(&cover);
        let back = read_cover(&g, &text).unwrap();
        prop_assert_eq!(&back.cycles, &cover.cycles);
        prop_assert_eq!(write_cover(&back), text);
    }
}
