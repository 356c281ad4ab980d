//! Acceptance suite: one `PASS`/`FAIL` line per criterion.
//!
//! Runs without the libtest harness so the lines always print; exits
//! non-zero if any criterion fails.

use std::process::ExitCode;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sscirc::ackermann::{for_each_lambda_row, lambda, log_star};
use sscirc::bench;
use sscirc::circuit::{failure_bound, synthesize, synthesize_valid};
use sscirc::infocheck::{enumerate_distribution, han_check, verify_entropy_bounds, verify_threshold_definition, DEFAULT_TOL};
use sscirc::network::{verify_partial_sc, verify_superconcentrator};
use sscirc::subsets::next_combination;
use sscirc::superconcentrator::{
    build, build_partial_sc_depth2, build_sc_depth2, build_sc_depth3_linear, build_sc_general, BuildOptions, ScBuildSpec,
    DEFAULT_EPSILON,
};
use sscirc::{FieldElement, FieldModulus, JointDistribution, LinearCircuit, Network, Verdict};

/// Large enough that every sweep here is exhaustive.
const EXHAUSTIVE: u64 = u64::MAX;

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn coalitions(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut c: Vec<usize> = (0..k).collect();
    loop {
        out.push(c.clone());
        if !next_combination(&mut c, n) {
            return out;
        }
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn gf(p: u64) -> FieldModulus {
    FieldModulus::new(p).unwrap()
}

fn criterion_1() -> Outcome {
    let f = gf(10007);
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut draws = 0;
    for (t, n) in [(1, 3), (2, 3), (2, 4), (3, 5), (3, 6)] {
        let mut spec = ScBuildSpec::new(t, n);
        spec.rng_seed = 100 + t as u64;
        let net = build(&spec).map_err(|e| e.to_string())?;
        let sc = verify_superconcentrator(&net, EXHAUSTIVE, 0);
        ensure(sc.verdict == Verdict::Proved, || format!("({t},{n}) network not proved: {}", sc.summary_line()))?;
        let (circ, report, seed) = synthesize_valid(&net, t, f, 0, EXHAUSTIVE, 10).map_err(|e| e.to_string())?;
        ensure(report.verdict == Verdict::Proved, || format!("({t},{n}) scheme {:?}", report.verdict))?;
        draws += seed + 1;
        let all = coalitions(n, t);
        for _ in 0..100 {
            let s = f.elem(rng.gen_range(0..f.p()));
            let y = circ.share(s, rng.gen()).map_err(|e| e.to_string())?;
            for c in &all {
                let y_t: Vec<FieldElement> = c.iter().map(|&i| y.values[i]).collect();
                let got = circ.reconstruct(c, &y_t).map_err(|e| e.to_string())?;
                ensure(got == s, || format!("({t},{n}) coalition {c:?} recovered {} not {}", got.value(), s.value()))?;
            }
        }
    }
    Ok(format!("5 shapes proved, {draws} synthesis draws, all coalitions exact on 100 secrets each"))
}

struct SmallScheme {
    circ: LinearCircuit,
    rank: Verdict,
    dist: JointDistribution,
}

/// Circuits over GF(3) and GF(5) for (t, n) in {(2, 3), (2, 4)}, 60 seeds
/// each, with both verdicts.
fn small_corpus() -> Vec<SmallScheme> {
    let mut out = Vec::new();
    for p in [3, 5] {
        for (t, n) in [(2, 3), (2, 4)] {
            let net = build_sc_depth2(t, n, &BuildOptions::new(0)).unwrap();
            for seed in 0..60 {
                let circ = synthesize(&net, t, gf(p), seed).unwrap();
                let rank = circ.validate_scheme(EXHAUSTIVE, 0).verdict;
                let dist = enumerate_distribution(&circ).unwrap();
                out.push(SmallScheme { circ, rank, dist });
            }
        }
    }
    out
}

fn criterion_2(corpus: &[SmallScheme]) -> Outcome {
    let (mut proved, mut refuted) = (0, 0);
    for s in corpus {
        let t = s.circ.threshold();
        let entropy = verify_threshold_definition(&s.dist, t, DEFAULT_TOL);
        ensure(entropy.verdict == s.rank, || {
            format!(
                "p={} n={} coefficients {:?}: rank {:?} vs entropy {:?}",
                s.circ.modulus().p(),
                s.circ.share_count(),
                s.circ.coefficients(),
                s.rank,
                entropy.verdict
            )
        })?;
        match s.rank {
            Verdict::Proved => proved += 1,
            _ => refuted += 1,
        }
    }
    ensure(proved > 0 && refuted > 0, || format!("corpus lacks variety: {proved} proved, {refuted} refuted"))?;
    Ok(format!("{} circuits, {proved} proved and {refuted} refuted, rank and entropy verdicts agree on all", corpus.len()))
}

fn criterion_3() -> Outcome {
    let f = gf(101);
    let net = Network::complete_bipartite(2, 4);
    let trials = 1000;
    let failures = (0..trials).filter(|&seed| synthesize(&net, 2, f, seed).unwrap().validate_scheme(EXHAUSTIVE, 0).verdict == Verdict::Refuted).count();
    let bound = failure_bound(1, 4, 2, f);
    let sigma = (bound * (1.0 - bound) / trials as f64).sqrt();
    let rate = failures as f64 / trials as f64;
    ensure(rate <= bound + 3.0 * sigma, || format!("failure rate {rate:.4} exceeds {bound:.4} + 3 sigma {:.4}", 3.0 * sigma))?;
    Ok(format!("failure rate {rate:.4} <= bound {bound:.4} + 3 sigma ({:.4})", bound + 3.0 * sigma))
}

fn criterion_4(corpus: &[SmallScheme]) -> Outcome {
    let mut checked = 0;
    for s in corpus.iter().filter(|s| verify_threshold_definition(&s.dist, s.circ.threshold(), DEFAULT_TOL).verdict == Verdict::Proved) {
        let net = s.circ.network();
        let (l, n, t) = (s.circ.input_count(), s.circ.share_count(), s.circ.threshold());
        let all: Vec<usize> = (0..l).collect();
        let randomness: Vec<usize> = (1..l).collect();
        for c in coalitions(n, t) {
            let k = net.max_vertex_disjoint_paths(&all, &c).unwrap();
            ensure(k >= t, || format!("T={c:?} has only {k} disjoint paths from the inputs"))?;
            checked += 1;
        }
        for c in coalitions(n, t - 1) {
            let k = net.max_vertex_disjoint_paths(&randomness, &c).unwrap();
            ensure(k >= t - 1, || format!("T={c:?} has only {k} disjoint paths from the random inputs"))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} coalition path checks, zero violations"))
}

fn criterion_5() -> Outcome {
    let opts = BuildOptions::new(5).with_budget(2_000_000);
    let mut lines = Vec::new();
    let mut check = |name: &str, net: Network, report: sscirc::VerificationReport| -> Result<(), String> {
        ensure(report.verdict == Verdict::Proved, || format!("{name}: {}", report.summary_line()))?;
        lines.push(format!("{name} d={} e={} ({} pairs)", net.depth(), net.edge_count(), report.subsets_checked));
        Ok(())
    };
    let err = |e: sscirc::superconcentrator::BuildError| e.to_string();

    let net = build_partial_sc_depth2(9, 9, 1.5, &opts).map_err(err)?;
    let r = verify_partial_sc(&net, 6, 4, EXHAUSTIVE, 0);
    check("partial(9,9,1.5)", net, r)?;
    for (n, m) in [(8, 8), (4, 16)] {
        let net = build_sc_depth2(n, m, &opts.child(n as u64)).map_err(err)?;
        let r = verify_superconcentrator(&net, EXHAUSTIVE, 0);
        check(&format!("sc_depth2({n},{m})"), net, r)?;
    }
    // smallest legal instance, and smallest whose inner block is not a
    // complete graph
    for (n, m) in [(2, 2), (5, 42)] {
        let net = build_sc_depth3_linear(n, m, DEFAULT_EPSILON, &opts.child(10 + n as u64)).map_err(err)?;
        let r = verify_superconcentrator(&net, EXHAUSTIVE, 0);
        check(&format!("sc_depth3_linear({n},{m})"), net, r)?;
    }
    for (n, m) in [(1, 1), (5, 15)] {
        let net = build_sc_general(n, m, 3, DEFAULT_EPSILON, &opts.child(20 + n as u64)).map_err(err)?;
        let r = verify_superconcentrator(&net, EXHAUSTIVE, 0);
        check(&format!("sc_general({n},{m},3)"), net, r)?;
    }
    Ok(lines.join("; "))
}

/// Bound on `edges / (m log2 m log2 n)` for the depth-2 builder.
const DEPTH2_CONSTANT: f64 = 6.0;
/// Bound on `edges / m` for the linear depth-2 builder.
const LINEAR_CONSTANT: f64 = 12.0;

fn criterion_6() -> Outcome {
    let rows = bench::run(&BuildOptions::new(0).with_budget(2_000)).map_err(|e| e.to_string())?;
    let max_of = |name: &str| rows.iter().filter(|r| r.builder == name).map(|r| r.ratio).fold(0.0, f64::max);
    let (d2, lin) = (max_of("sc_depth2"), max_of("sc_depth2_linear"));
    for r in &rows {
        let cap = if r.builder == "sc_depth2" { DEPTH2_CONSTANT } else { LINEAR_CONSTANT };
        ensure(r.ratio <= cap, || format!("{} ({}, {}) ratio {:.3} above {cap}", r.builder, r.inputs, r.outputs, r.ratio))?;
    }
    Ok(format!("max edges/(m lg m lg n) = {d2:.3} <= {DEPTH2_CONSTANT}; max edges/m = {lin:.3} <= {LINEAR_CONSTANT}"))
}

fn criterion_7() -> Outcome {
    const N: usize = 1 << 20;
    const D: u32 = 64;
    let mut violations: Vec<String> = Vec::new();
    let mut prev2: Vec<u32> = Vec::new();
    let mut prev1: Vec<u32> = Vec::new();
    for_each_lambda_row(D, N, |d, row| {
        if d == 3 {
            if let Some(n) = (2..=N).find(|&n| row[n] as f64 > (n as f64).log2().log2() + 2.0) {
                violations.push(format!("lambda_3({n}) above log log n + 2"));
            }
        }
        if d == 4 {
            if let Some(n) = (3..=N).find(|&n| row[n] > 2 * log_star(n as f64)) {
                violations.push(format!("lambda_4({n}) above 2 log* n"));
            }
        }
        if let Some(n) = (4..=N).find(|&n| row[n] as usize > n - 2) {
            violations.push(format!("lambda_{d}({n}) above n - 2"));
        }
        if d >= 3 {
            // lambda_{d-2}(n) <= C with C >= 128 implies lambda_d(n)^2 <= C
            if let Some(n) = (1..=N).find(|&n| (row[n] as u64).pow(2) > prev2[n].max(128) as u64) {
                violations.push(format!("lambda_{d}({n})^2 above max(128, lambda_{}({n}))", d - 2));
            }
        }
        prev2 = std::mem::replace(&mut prev1, row.to_vec());
    });
    if let Some(d) = (1..=D).find(|&d| lambda(d, d as u64) > 4) {
        violations.push(format!("lambda_{d}({d}) above 4"));
    }
    ensure(violations.is_empty(), || violations.join("; "))?;
    Ok(format!("five inequalities hold for n <= 2^20, d <= {D}"))
}

fn random_distribution(rng: &mut ChaCha8Rng) -> JointDistribution {
    let k = rng.gen_range(3..=5);
    let q = rng.gen_range(2..=3u64);
    let mut counts = Vec::new();
    for code in 0..q.pow(k as u32) {
        if rng.gen_bool(0.6) {
            let tuple: Vec<u64> = (0..k).map(|i| code / q.pow(i as u32) % q).collect();
            counts.push((tuple, rng.gen_range(1..100u64)));
        }
    }
    if counts.is_empty() {
        counts.push((vec![0; k], 1));
    }
    JointDistribution::from_counts(q, k, counts).unwrap()
}

fn criterion_8(corpus: &[SmallScheme]) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut worst = f64::INFINITY;
    for _ in 0..200 {
        let d = random_distribution(&mut rng);
        let all: Vec<usize> = (0..d.variable_count()).collect();
        let r = han_check(&d, &all);
        worst = worst.min(r);
        ensure(r >= -1e-9, || format!("han residual {r}"))?;
    }
    // desk-scale valid schemes: the corpus plus (3, 4) and (3, 5) over GF(5)
    let mut extra = Vec::new();
    for (t, n) in [(3, 4), (3, 5)] {
        let net = build_sc_depth2(t, n, &BuildOptions::new(0)).unwrap();
        for seed in 0..20 {
            let circ = synthesize(&net, t, gf(5), seed).unwrap();
            extra.push((t, enumerate_distribution(&circ).unwrap()));
        }
    }
    let mut valid = 0;
    for (t, dist) in corpus.iter().map(|s| (s.circ.threshold(), s.dist.clone())).chain(extra) {
        if verify_threshold_definition(&dist, t, DEFAULT_TOL).verdict != Verdict::Proved {
            continue;
        }
        valid += 1;
        let r = verify_entropy_bounds(&dist, t, DEFAULT_TOL);
        ensure(r.verdict == Verdict::Proved, || format!("entropy bounds failed: {}", r.summary_line()))?;
        let shares: Vec<usize> = (1..dist.variable_count()).collect();
        ensure(han_check(&dist, &shares) >= -1e-9, || "han residual negative on a scheme".into())?;
    }
    Ok(format!("min han residual {worst:.3e} over 200 distributions; bounds hold on {valid} valid schemes"))
}

fn main() -> ExitCode {
    let corpus = small_corpus();
    let criteria: Vec<Criterion> = vec![
        ("1 end-to-end threshold correctness", Box::new(criterion_1)),
        ("2 privacy by enumeration", Box::new(|| criterion_2(&corpus))),
        ("3 synthesis failure rate", Box::new(criterion_3)),
        ("4 connectivity necessity", Box::new(|| criterion_4(&corpus))),
        ("5 construction validity", Box::new(criterion_5)),
        ("6 size scaling", Box::new(criterion_6)),
        ("7 inverse Ackermann inequalities", Box::new(criterion_7)),
        ("8 Shannon-type inequalities", Box::new(|| criterion_8(&corpus))),
    ];
    let mut failed = 0;
    for (name, run) in &criteria {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS criterion {name} [{secs:.1}s]: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {name} [{secs:.1}s]: {detail}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
