//! Exhaustive and sampled sweeps for the concentrator, superconcentrator
//! and partial-superconcentrator properties.
//!
//! A sweep is exhaustive when the number of subset checks fits in the
//! budget and then reports `proved` or `refuted`. Otherwise it checks a
//! seeded uniform sample (without replacement per size class) and can only
//! report `sampled_pass` or `refuted`. The reported witness is the
//! lexicographically smallest failure found.

use std::collections::HashSet;

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Network, NetworkError, SplitFlow};
use crate::report::{Property, Verdict, VerificationReport, Witness};
use crate::subsets::{binomial, mask_to_vec, next_combination, revolving_door};

pub const DEFAULT_BUDGET: u64 = 200_000;

/// Largest class for which the revolving-door order is materialized.
const DOOR_LIMIT: u128 = 1 << 22;

#[derive(Clone, Copy)]
enum Side {
    Source,
    Sink,
}

impl SplitFlow {
    fn toggle(&mut self, side: Side, pos: usize, on: bool) {
        match (side, on) {
            (Side::Source, true) => self.enable_source(pos),
            (Side::Source, false) => self.disable_source(pos),
            (Side::Sink, true) => self.enable_sink(pos),
            (Side::Sink, false) => self.disable_sink(pos),
        }
    }
}

/// Visits every k-subset of `0..n` in an order where consecutive subsets
/// usually differ by a single swap.
fn for_each_subset(n: usize, k: usize, mut visit: impl FnMut(&[usize]) -> bool) {
    if k > n {
        return;
    }
    if n <= 64 && binomial(n, k) <= DOOR_LIMIT {
        for mask in revolving_door(n, k) {
            if !visit(&mask_to_vec(mask)) {
                return;
            }
        }
    } else {
        let mut c: Vec<usize> = (0..k).collect();
        loop {
            if !visit(&c) {
                return;
            }
            if !next_combination(&mut c, n) {
                return;
            }
        }
    }
}

/// Moves the enabled terminals on `side` from `prev` to `next` (both sorted).
fn shift(flow: &mut SplitFlow, side: Side, prev: &[usize], next: &[usize]) {
    let (mut i, mut j) = (0, 0);
    while i < prev.len() || j < next.len() {
        match (prev.get(i), next.get(j)) {
            (Some(a), Some(b)) if a == b => {
                i += 1;
                j += 1;
            }
            (Some(&a), Some(&b)) if a < b => {
                flow.toggle(side, a, false);
                i += 1;
            }
            (Some(&a), None) => {
                flow.toggle(side, a, false);
                i += 1;
            }
            (_, Some(&b)) => {
                flow.toggle(side, b, true);
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
}

/// k-th k-subset of `0..n` in lexicographic order.
fn unrank(n: usize, k: usize, mut rank: u128) -> Vec<usize> {
    let mut out = Vec::with_capacity(k);
    let mut x = 0;
    while out.len() < k {
        let remaining = k - out.len() - 1;
        let count = binomial(n - x - 1, remaining);
        if rank < count {
            out.push(x);
        } else {
            rank -= count;
        }
        x += 1;
    }
    out
}

/// `count` distinct ranks from `0..total`, uniformly without replacement.
fn sample_ranks(rng: &mut ChaCha8Rng, total: u128, count: u64) -> Vec<u128> {
    if total <= u64::MAX as u128 && total <= usize::MAX as u128 {
        let mut v: Vec<u128> =
            index::sample(rng, total as usize, count as usize).into_iter().map(|i| i as u128).collect();
        v.sort_unstable();
        v
    } else {
        let mut seen = HashSet::new();
        while (seen.len() as u64) < count {
            let r: u128 = rng.gen::<u128>() % total;
            seen.insert(r);
        }
        let mut v: Vec<u128> = seen.into_iter().collect();
        v.sort_unstable();
        v
    }
}

fn keep_min(slot: &mut Option<Witness>, w: Witness) {
    if slot.as_ref().is_none_or(|cur| w < *cur) {
        *slot = Some(w);
    }
}

/// Every `c`-subset of inputs must reach the outputs by `c` vertex-disjoint
/// paths.
pub fn verify_concentrator(net: &Network, c: usize, budget: u64, rng_seed: u64) -> VerificationReport {
    let m = net.inputs().len();
    let total = binomial(m, c);
    let mut flow = SplitFlow::new(net);
    for o in 0..net.outputs().len() {
        flow.enable_sink(o);
    }
    let mut witness = None;
    let mut checked = 0u64;
    let exhaustive = total <= budget as u128;
    if exhaustive {
        let mut prev: Vec<usize> = Vec::new();
        for_each_subset(m, c, |s| {
            shift(&mut flow, Side::Source, &prev, s);
            prev.clear();
            prev.extend_from_slice(s);
            checked += 1;
            if flow.augment_to(c) < c {
                // lex order is not the walk order, so keep the smallest
                keep_min(&mut witness, Witness { inputs: s.to_vec(), outputs: vec![] });
            }
            true
        });
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
        for rank in sample_ranks(&mut rng, total, budget) {
            let s = unrank(m, c, rank);
            flow.clear();
            for o in 0..net.outputs().len() {
                flow.enable_sink(o);
            }
            for &i in &s {
                flow.enable_source(i);
            }
            checked += 1;
            if flow.augment_to(c) < c {
                keep_min(&mut witness, Witness { inputs: s, outputs: vec![] });
            }
        }
    }
    finish(Property::Concentrator { c }, exhaustive, checked, witness, rng_seed)
}

pub fn verify_superconcentrator(net: &Network, budget: u64, rng_seed: u64) -> VerificationReport {
    let top = net.inputs().len().min(net.outputs().len());
    pair_sweep(net, Property::Superconcentrator, 1..=top, |k| k, budget, rng_seed)
}

/// For `|S| = |T| = k` with `q <= k <= p`, at least `k - q` vertex-disjoint
/// paths must join `S` and `T`.
pub fn verify_partial_sc(net: &Network, p: usize, q: usize, budget: u64, rng_seed: u64) -> VerificationReport {
    let top = p.min(net.inputs().len()).min(net.outputs().len());
    pair_sweep(net, Property::PartialSc { p, q }, q.max(1)..=top, |k| k - q, budget, rng_seed)
}

/// Single check: at least `k` vertex-disjoint paths between the given
/// terminal positions.
pub fn check_disjoint_paths(
    net: &Network,
    sources: &[usize],
    sinks: &[usize],
    k: usize,
) -> Result<VerificationReport, NetworkError> {
    let got = net.max_vertex_disjoint_paths(sources, sinks)?;
    let witness = (got < k).then(|| Witness { inputs: sources.to_vec(), outputs: sinks.to_vec() });
    Ok(finish(
        Property::DisjointPaths { sources: sources.to_vec(), sinks: sinks.to_vec(), k },
        true,
        1,
        witness,
        0,
    ))
}

fn pair_sweep(
    net: &Network,
    property: Property,
    sizes: std::ops::RangeInclusive<usize>,
    required: impl Fn(usize) -> usize,
    budget: u64,
    rng_seed: u64,
) -> VerificationReport {
    let m = net.inputs().len();
    let n = net.outputs().len();
    let classes: Vec<usize> = sizes.filter(|&k| required(k) > 0).collect();
    let total: u128 = classes
        .iter()
        .map(|&k| binomial(m, k).saturating_mul(binomial(n, k)))
        .fold(0u128, |a, b| a.saturating_add(b));
    let exhaustive = total <= budget as u128;
    let mut flow = SplitFlow::new(net);
    let mut checked = 0u64;
    let mut witness: Option<Witness> = None;

    if exhaustive {
        'classes: for &k in &classes {
            let need = required(k);
            let mut x: Vec<usize> = (0..k).collect();
            loop {
                flow.clear();
                for &i in &x {
                    flow.enable_source(i);
                }
                let mut prev: Vec<usize> = Vec::new();
                for_each_subset(n, k, |y| {
                    shift(&mut flow, Side::Sink, &prev, y);
                    prev.clear();
                    prev.extend_from_slice(y);
                    checked += 1;
                    if flow.augment_to(need) < need {
                        keep_min(&mut witness, Witness { inputs: x.clone(), outputs: y.to_vec() });
                    }
                    true
                });
                // inputs are walked in lex order, so the first failing X
                // holds the smallest witness
                if witness.is_some() {
                    break 'classes;
                }
                if !next_combination(&mut x, m) {
                    break;
                }
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
        let quota = (budget / classes.len().max(1) as u64).max(1);
        for &k in &classes {
            let need = required(k);
            let per_y = binomial(n, k);
            let class_total = binomial(m, k).saturating_mul(per_y);
            let ranks: Vec<u128> =
                if class_total <= quota as u128 { (0..class_total).collect() } else { sample_ranks(&mut rng, class_total, quota) };
            for rank in ranks {
                let x = unrank(m, k, rank / per_y);
                let y = unrank(n, k, rank % per_y);
                flow.clear();
                for &i in &x {
                    flow.enable_source(i);
                }
                for &o in &y {
                    flow.enable_sink(o);
                }
                checked += 1;
                if flow.augment_to(need) < need {
                    keep_min(&mut witness, Witness { inputs: x, outputs: y });
                }
            }
        }
    }
    finish(property, exhaustive, checked, witness, rng_seed)
}

fn finish(property: Property, exhaustive: bool, checked: u64, witness: Option<Witness>, seed: u64) -> VerificationReport {
    let verdict = match (&witness, exhaustive) {
        (Some(_), _) => Verdict::Refuted,
        (None, true) => Verdict::Proved,
        (None, false) => Verdict::SampledPass,
    };
    VerificationReport { property, verdict, subsets_checked: checked, witness, sample_seed: (!exhaustive).then_some(seed) }
}
