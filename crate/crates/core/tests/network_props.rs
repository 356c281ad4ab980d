mod common;

use common::{brute_force_min_cut, random_dag, subsets};
use proptest::prelude::*;
use sscirc::network::{verify_concentrator, verify_partial_sc, verify_superconcentrator, DEFAULT_BUDGET};
use sscirc::superconcentrator::{build_sc_depth2, BuildOptions};
use sscirc::{Network, Verdict};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn flow_matches_min_vertex_cut(seed in any::<u64>()) {
        let net = random_dag(seed, 12);
        let a = net.inputs().len();
        let b = net.outputs().len();
        for s in subsets(a).step_by(3) {
            for t in subsets(b).step_by(2) {
                let flow = net.max_vertex_disjoint_paths(&s, &t).unwrap();
                prop_assert_eq!(flow, brute_force_min_cut(&net, &s, &t), "S={:?} T={:?}", s, t);
            }
        }
    }

    #[test]
    fn reversal_preserves_flow(seed in any::<u64>()) {
        let net = random_dag(seed, 12);
        let rev = net.reverse();
        let (a, b) = (net.inputs().len(), net.outputs().len());
        for s in subsets(a) {
            for t in subsets(b).step_by(3) {
                prop_assert_eq!(
                    net.max_vertex_disjoint_paths(&s, &t).unwrap(),
                    rev.max_vertex_disjoint_paths(&t, &s).unwrap()
                );
            }
        }
    }

    #[test]
    fn adding_an_edge_never_hurts(seed in any::<u64>(), pick in any::<prop::sample::Index>()) {
        let net = random_dag(seed, 12);
        let v = net.vertex_count();
        let is_input = |x: usize| net.inputs().contains(&x);
        let is_output = |x: usize| net.outputs().contains(&x);
        let candidates: Vec<(usize, usize)> = (0..v)
            .flat_map(|x| (x + 1..v).map(move |y| (x, y)))
            .filter(|&(x, y)| !is_output(x) && !is_input(y))
            .collect();
        prop_assume!(!candidates.is_empty());
        let mut edges = net.edges().to_vec();
        edges.push(candidates[pick.index(candidates.len())]);
        let bigger = Network::new(v, edges, net.inputs().to_vec(), net.outputs().to_vec()).unwrap();
        for s in subsets(net.inputs().len()) {
            for t in subsets(net.outputs().len()).step_by(2) {
                prop_assert!(
                    bigger.max_vertex_disjoint_paths(&s, &t).unwrap() >= net.max_vertex_disjoint_paths(&s, &t).unwrap()
                );
            }
        }
    }

    #[test]
    fn verdicts_agree_with_brute_force(seed in any::<u64>()) {
        let net = random_dag(seed, 10);
        let (a, b) = (net.inputs().len(), net.outputs().len());
        let oracle_sc = subsets(a).all(|s| {
            subsets(b).filter(|t| t.len() == s.len()).all(|t| brute_force_min_cut(&net, &s, &t) == s.len())
        });
        let report = verify_superconcentrator(&net, DEFAULT_BUDGET, 0);
        prop_assert_eq!(report.verdict == Verdict::Proved, oracle_sc);
        let all: Vec<usize> = (0..b).collect();
        for c in 1..=a.min(b) {
            let oracle = subsets(a).filter(|s| s.len() == c).all(|s| brute_force_min_cut(&net, &s, &all) == c);
            let r = verify_concentrator(&net, c, DEFAULT_BUDGET, 0);
            prop_assert_eq!(r.verdict == Verdict::Proved, oracle, "c={}", c);
            if oracle_sc {
                prop_assert_eq!(r.verdict, Verdict::Proved);
            }
        }
    }
}

#[test]
fn refuted_witness_is_a_real_failure() {
    for seed in 0..200 {
        let net = random_dag(seed, 10);
        let r = verify_superconcentrator(&net, DEFAULT_BUDGET, 0);
        if let Some(w) = r.witness {
            assert_eq!(r.verdict, Verdict::Refuted);
            assert_eq!(w.inputs.len(), w.outputs.len());
            assert!(brute_force_min_cut(&net, &w.inputs, &w.outputs) < w.inputs.len());
        }
    }
}

#[test]
fn superconcentrator_implies_concentrators() {
    let net = build_sc_depth2(8, 8, &BuildOptions::new(3)).unwrap();
    assert_eq!(verify_superconcentrator(&net, DEFAULT_BUDGET, 0).verdict, Verdict::Proved);
    for c in 1..=8 {
        assert_eq!(verify_concentrator(&net, c, DEFAULT_BUDGET, 0).verdict, Verdict::Proved);
    }
    for q in 0..=4 {
        assert_eq!(verify_partial_sc(&net, 8, q, DEFAULT_BUDGET, 0).verdict, Verdict::Proved);
    }
}
