use std::collections::HashMap;

use cyclecover::compilers::{
    byzantine_plan, compile_byzantine, compile_eavesdrop, eavesdrop_plan, observed_shares, reconstruct, secret_share,
    semantic_tamper, CompileOptions, Mode,
};
use cyclecover::generators;
use cyclecover::sim::{flood_programs, run_protocol, uint_bits, FixedEavesdropper, NodeProgram, NullAdversary, RandomEdge, Scripted, SimConfig};
use cyclecover::Graph;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use statrs::distribution::{ChiSquared, ContinuousCDF};

fn bits_value(b: &[bool]) -> usize {
    b.iter().fold(0, |acc, &x| 2 * acc + x as usize)
}

fn chi_square_uniform_p(counts: &[usize]) -> f64 {
    let n: usize = counts.iter().sum();
    let expected = n as f64 / counts.len() as f64;
    let stat: f64 = counts.iter().map(|&c| (c as f64 - expected).powi(2) / expected).sum();
    1.0 - ChiSquared::new((counts.len() - 1) as f64).unwrap().cdf(stat)
}

#[test]
fn any_k_minus_one_shares_look_uniform() {
    let m = [true, false, true, true];
    for skip in 0..3 {
        let mut counts = vec![0usize; 256];
        for s in 0..10_000u64 {
            let shares = secret_share(&m, 3, s).unwrap();
            let kept: Vec<bool> = (0..3).filter(|&i| i != skip).flat_map(|i| shares[i].clone()).collect();
            counts[bits_value(&kept)] += 1;
        }
        assert!(chi_square_uniform_p(&counts) > 0.01, "shares without {skip} are not uniform");
    }
}

fn plug_in_mi(pairs: &[(usize, u64)]) -> f64 {
    let n = pairs.len() as f64;
    let mut joint: HashMap<(usize, u64), usize> = HashMap::new();
    let mut a: HashMap<usize, usize> = HashMap::new();
    let mut b: HashMap<u64, usize> = HashMap::new();
    for &(x, y) in pairs {
        *joint.entry((x, y)).or_default() += 1;
        *a.entry(x).or_default() += 1;
        *b.entry(y).or_default() += 1;
    }
    joint
        .iter()
        .map(|(&(x, y), &c)| {
            let pxy = c as f64 / n;
            pxy * (pxy / (a[&x] as f64 / n * b[&y] as f64 / n)).ln()
        })
        .sum()
}

fn fingerprint(bits: &[Vec<bool>]) -> u64 {
    use std::hash::{Hash, Hasher};
    let mut h = std::collections::hash_map::DefaultHasher::new();
    bits.hash(&mut h);
    h.finish()
}

#[test]
fn eavesdropper_view_carries_no_information() {
    let g = generators::complete(4);
    let plan = eavesdrop_plan(&g).unwrap();
    let key = cyclecover::compilers::key_of(&g, 0, 1).unwrap();
    for e in 0..g.m() {
        let mut pairs = Vec::new();
        for trial in 0..512u64 {
            let msg = (trial * 37 + e as u64) % 256;
            let base: Vec<Box<dyn NodeProgram>> = (0..4)
                .map(|v| {
                    let script = if v == 0 { vec![vec![(1, uint_bits(msg, 8))]] } else { vec![] };
                    Box::new(Scripted::new(script)) as Box<dyn NodeProgram>
                })
                .collect();
            let mut c = compile_eavesdrop(&g, &plan, base, CompileOptions { msg_bits: 8, seed: trial }).unwrap();
            let cfg = c.protocol.sim_config(1);
            let t = run_protocol(&g, &mut c.programs, &mut FixedEavesdropper(e), &cfg).unwrap();
            assert_eq!(c.programs[1].output(), uint_bits(msg, 8));
            let seen = observed_shares(&c.protocol, &t);
            let view: Vec<Vec<bool>> = seen.get(&(0, key)).map(|m| m.values().cloned().collect()).unwrap_or_default();
            assert!(view.len() <= plan.d1);
            pairs.push((msg as usize, fingerprint(&view)));
        }
        let observed = plug_in_mi(&pairs);
        let mut rng = ChaCha8Rng::seed_from_u64(e as u64);
        let mut exceed = 0;
        for _ in 0..200 {
            let mut ys: Vec<u64> = pairs.iter().map(|p| p.1).collect();
            ys.shuffle(&mut rng);
            let shuffled: Vec<(usize, u64)> = pairs.iter().map(|p| p.0).zip(ys).collect();
            if plug_in_mi(&shuffled) >= observed - 1e-12 {
                exceed += 1;
            }
        }
        assert!(exceed as f64 / 200.0 > 0.01, "edge {e}: information {observed} above the shuffled baseline");
    }
}

fn fault_free(g: &Graph, vals: &[u64], rounds: usize) -> Vec<Vec<bool>> {
    run_protocol(g, &mut flood_programs(g, vals, 4), &mut NullAdversary, &SimConfig::new(rounds, 4)).unwrap().outputs
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn shares_xor_to_the_message(m in proptest::collection::vec(any::<bool>(), 0..40), k in 2usize..9, seed in any::<u64>()) {
        let s = secret_share(&m, k, seed).unwrap();
        prop_assert_eq!(s.len(), k);
        prop_assert_eq!(reconstruct(&s), m);
    }

    #[test]
    fn compiled_flooding_matches_fault_free(seed in 0u64..10_000, which in 0usize..2, mode in 0usize..3) {
        let g = if which == 0 { generators::complete(4) } else { generators::petersen() };
        let mode = [Mode::A, Mode::B, Mode::C][mode];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let vals: Vec<u64> = (0..g.n()).map(|_| rng.gen_range(0..16)).collect();
        let plan = byzantine_plan(&g, seed).unwrap();
        let mut c = compile_byzantine(&g, &plan, mode, flood_programs(&g, &vals, 4), CompileOptions { msg_bits: 4, seed }).unwrap();
        let cfg = c.protocol.sim_config(3);
        let mut adv = RandomEdge::new(seed, semantic_tamper(&c.protocol));
        let t = run_protocol(&g, &mut c.programs, &mut adv, &cfg).unwrap();
        prop_assert_eq!(t.faults(), 0);
        prop_assert!(t.max_actions_per_round() <= 1);
        prop_assert_eq!(&t.outputs, &fault_free(&g, &vals, 3));
        let check = c.protocol.log().check();
        prop_assert_eq!(check.wrong + check.failed + check.majority_violations, 0);
    }
}
