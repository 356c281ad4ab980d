//! Exact joint distributions of `(S, Y_1, ..., Y_n)` for small schemes and
//! the entropy checks run on them.
//!
//! Variable 0 is the secret, variable `i + 1` is share `i`. Probabilities
//! are integer counts over a common total, so they stay exact until an
//! entropy is taken. Entropies use logarithms base `q` (the alphabet size),
//! so a uniform field element has entropy 1.

use std::collections::{BTreeMap, HashMap};

use thiserror::Error;

use crate::circuit::LinearCircuit;
use crate::report::{Property, Verdict, VerificationReport, Witness};
use crate::subsets::next_combination;

/// Largest `q^l` that [`enumerate_distribution`] will walk.
pub const MAX_STATES: u64 = 10_000_000;

pub const DEFAULT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InfoError {
    #[error("state space of {alphabet}^{inputs} exceeds {MAX_STATES}")]
    StateSpaceTooLarge { alphabet: u64, inputs: usize },
    #[error("invalid distribution: {0}")]
    Invalid(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JointDistribution {
    variable_count: usize,
    alphabet: u64,
    counts: BTreeMap<Vec<u64>, u64>,
    total: u64,
}

impl JointDistribution {
    /// A distribution proportional to `counts`; zero counts are dropped.
    pub fn from_counts(
        alphabet: u64,
        variable_count: usize,
        counts: impl IntoIterator<Item = (Vec<u64>, u64)>,
    ) -> Result<Self, InfoError> {
        if alphabet < 2 {
            return Err(InfoError::Invalid(format!("alphabet size {alphabet} below 2")));
        }
        let mut table = BTreeMap::new();
        let mut total = 0u64;
        for (tuple, c) in counts {
            if tuple.len() != variable_count {
                return Err(InfoError::Invalid(format!("tuple of length {} for {variable_count} variables", tuple.len())));
            }
            if let Some(v) = tuple.iter().find(|&&v| v >= alphabet) {
                return Err(InfoError::Invalid(format!("value {v} outside alphabet of size {alphabet}")));
            }
            if c > 0 {
                *table.entry(tuple).or_insert(0) += c;
                total += c;
            }
        }
        if total == 0 {
            return Err(InfoError::Invalid("empty distribution".into()));
        }
        Ok(JointDistribution { variable_count, alphabet, counts: table, total })
    }

    pub fn variable_count(&self) -> usize {
        self.variable_count
    }

    /// Number of shares, `variable_count - 1`.
    pub fn share_count(&self) -> usize {
        self.variable_count - 1
    }

    pub fn alphabet(&self) -> u64 {
        self.alphabet
    }

    /// Support with exact probabilities as `(numerator, denominator)`.
    pub fn table(&self) -> impl Iterator<Item = (&[u64], u64, u64)> + '_ {
        self.counts.iter().map(|(k, &c)| (k.as_slice(), c, self.total))
    }

    pub fn support_size(&self) -> usize {
        self.counts.len()
    }

    /// Marginal entropy of the variables in `vars`, base `q`. Panics on an
    /// out-of-range index.
    pub fn entropy(&self, vars: &[usize]) -> f64 {
        self.entropy_nats(vars) / (self.alphabet as f64).ln()
    }

    /// Marginal entropy in bits.
    pub fn entropy_bits(&self, vars: &[usize]) -> f64 {
        self.entropy_nats(vars) / std::f64::consts::LN_2
    }

    fn entropy_nats(&self, vars: &[usize]) -> f64 {
        let mut vars = vars.to_vec();
        vars.sort_unstable();
        vars.dedup();
        if let Some(&v) = vars.iter().find(|&&v| v >= self.variable_count) {
            panic!("variable {v} out of range for {} variables", self.variable_count);
        }
        if vars.is_empty() {
            return 0.0;
        }
        let mut marginal: HashMap<Vec<u64>, u64> = HashMap::new();
        for (tuple, &c) in &self.counts {
            *marginal.entry(vars.iter().map(|&v| tuple[v]).collect()).or_insert(0) += c;
        }
        let total = self.total as f64;
        let h: f64 = marginal.values().map(|&c| {
            let p = c as f64 / total;
            -p * p.ln()
        }).sum();
        h.max(0.0)
    }

    /// `H(A | B) = H(A, B) - H(B)`.
    pub fn cond_entropy(&self, a: &[usize], b: &[usize]) -> f64 {
        let joint: Vec<usize> = a.iter().chain(b).copied().collect();
        self.entropy(&joint) - self.entropy(b)
    }

    /// `I(X; Y | Z)`.
    pub fn cond_mutual_information(&self, x: &[usize], y: &[usize], z: &[usize]) -> f64 {
        let cat = |parts: &[&[usize]]| parts.concat();
        self.entropy(&cat(&[x, z])) + self.entropy(&cat(&[y, z])) - self.entropy(&cat(&[x, y, z])) - self.entropy(z)
    }
}

/// Walks every `(s, r_1, ..., r_{l-1})` in `[0, q)^l` with equal weight and
/// records `(s, f(s, r))`.
pub fn enumerate_with(
    alphabet: u64,
    input_count: usize,
    share_count: usize,
    mut f: impl FnMut(&[u64]) -> Vec<u64>,
) -> Result<JointDistribution, InfoError> {
    let states = (alphabet as u128).checked_pow(input_count as u32).unwrap_or(u128::MAX);
    if states > MAX_STATES as u128 || input_count == 0 {
        return Err(InfoError::StateSpaceTooLarge { alphabet, inputs: input_count });
    }
    let mut counts: BTreeMap<Vec<u64>, u64> = BTreeMap::new();
    let mut x = vec![0u64; input_count];
    loop {
        let y = f(&x);
        debug_assert_eq!(y.len(), share_count);
        let mut tuple = Vec::with_capacity(share_count + 1);
        tuple.push(x[0]);
        tuple.extend(y);
        *counts.entry(tuple).or_insert(0) += 1;
        // odometer
        let mut i = 0;
        loop {
            if i == input_count {
                return JointDistribution::from_counts(alphabet, share_count + 1, counts);
            }
            x[i] += 1;
            if x[i] < alphabet {
                break;
            }
            x[i] = 0;
            i += 1;
        }
    }
}

/// The distribution of a circuit's secret and shares under uniform inputs.
pub fn enumerate_distribution(circ: &LinearCircuit) -> Result<JointDistribution, InfoError> {
    let f = circ.modulus();
    let mut inputs = Vec::with_capacity(circ.input_count());
    enumerate_with(f.p(), circ.input_count(), circ.share_count(), |x| {
        inputs.clear();
        inputs.extend(x.iter().map(|&v| f.elem(v)));
        circ.evaluate(&inputs).expect("arity matches").into_iter().map(|e| e.value()).collect()
    })
}

fn share_vars(coalition: &[usize]) -> Vec<usize> {
    coalition.iter().map(|&i| i + 1).collect()
}

/// Runs `check` on every size-`t` coalition, then every size-`(t-1)` one
/// (skipping the empty coalition). Witness is the first failure.
fn coalition_sweep(
    dist: &JointDistribution,
    t: usize,
    property: Property,
    mut check: impl FnMut(&[usize], bool) -> bool,
) -> VerificationReport {
    let n = dist.share_count();
    let mut checked = 0u64;
    let mut witness = None;
    for (k, full) in [(t, true), (t.wrapping_sub(1), false)] {
        if k == 0 || k > n {
            continue;
        }
        let mut c: Vec<usize> = (0..k).collect();
        loop {
            checked += 1;
            if !check(&c, full) && witness.is_none() {
                witness = Some(Witness { inputs: vec![], outputs: c.clone() });
            }
            if !next_combination(&mut c, n) {
                break;
            }
        }
    }
    let verdict = if witness.is_some() { Verdict::Refuted } else { Verdict::Proved };
    VerificationReport { property, verdict, subsets_checked: checked, witness, sample_seed: None }
}

/// `H(S | Y_T) = 0` for `|T| = t` and `H(S | Y_T) = H(S)` for `|T| = t - 1`.
pub fn verify_threshold_definition(dist: &JointDistribution, t: usize, tol: f64) -> VerificationReport {
    let hs = dist.entropy(&[0]);
    coalition_sweep(dist, t, Property::ThresholdDefinition { t }, |c, full| {
        let h = dist.cond_entropy(&[0], &share_vars(c));
        if full { h.abs() <= tol } else { (h - hs).abs() <= tol }
    })
}

/// `H(Y_T) >= t H(S)` for `|T| = t` and `H(Y_T | S) >= (t-1) H(S)` for
/// `|T| = t - 1`.
pub fn verify_entropy_bounds(dist: &JointDistribution, t: usize, tol: f64) -> VerificationReport {
    let hs = dist.entropy(&[0]);
    coalition_sweep(dist, t, Property::EntropyBounds { t }, |c, full| {
        let y = share_vars(c);
        if full {
            dist.entropy(&y) >= t as f64 * hs - tol
        } else {
            dist.cond_entropy(&y, &[0]) >= (t - 1) as f64 * hs - tol
        }
    })
}

/// `sum_j H(vars minus j) - (k - 1) H(vars)` for `k = |vars| >= 2`; never
/// negative up to rounding.
pub fn han_check(dist: &JointDistribution, vars: &[usize]) -> f64 {
    assert!(vars.len() >= 2, "need at least two variables");
    let k = vars.len();
    let leave_one_out: f64 = (0..k)
        .map(|j| {
            let rest: Vec<usize> = vars.iter().enumerate().filter(|&(i, _)| i != j).map(|(_, &v)| v).collect();
            dist.entropy(&rest)
        })
        .sum();
    leave_one_out - (k - 1) as f64 * dist.entropy(vars)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{FieldModulus, Matrix};

    fn xor() -> JointDistribution {
        enumerate_with(2, 2, 2, |x| vec![x[1], x[0] ^ x[1]]).unwrap()
    }

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() < 1e-12
    }

    #[test]
    fn xor_enumeration() {
        let d = xor();
        assert_eq!(d.support_size(), 4);
        assert!(d.table().all(|(_, c, total)| c * 4 == total));
        assert!(close(d.cond_entropy(&[0], &[1]), 1.0));
        assert!(close(d.cond_entropy(&[0], &[1, 2]), 0.0));
        assert!(close(d.entropy(&[1, 2]), 2.0));
        assert!(close(d.cond_entropy(&[1], &[0]), 1.0));
    }

    #[test]
    fn entropy_examples() {
        let d = enumerate_with(3, 1, 2, |x| vec![x[0], 0]).unwrap();
        assert!(close(d.entropy(&[0]), 1.0));
        assert!(close(d.entropy(&[2]), 0.0));
        assert!(close(d.entropy(&[0, 1]), 1.0));
        assert!(close(d.cond_entropy(&[0, 1], &[0, 1]), 0.0));
        assert!(close(d.cond_entropy(&[0], &[]), 1.0));
        // diagonal support
        assert!(d.table().all(|(k, _, _)| k[0] == k[1]));
    }

    #[test]
    fn shamir_over_gf3() {
        let f = FieldModulus::new(3).unwrap();
        let m = Matrix::from_rows(&[vec![1, 1], vec![1, 2], vec![1, 0]], f).unwrap();
        let c = LinearCircuit::from_matrix(&m, f, 2).unwrap();
        let d = enumerate_distribution(&c).unwrap();
        assert_eq!(d.support_size(), 9);
        assert!(d.table().all(|(_, c, total)| c * 9 == total));
    }

    #[test]
    fn threshold_definition_examples() {
        let r = verify_threshold_definition(&xor(), 2, DEFAULT_TOL);
        assert_eq!(r.verdict, Verdict::Proved);
        assert_eq!(r.subsets_checked, 3);
        let copy = enumerate_with(2, 2, 2, |x| vec![x[0], x[0]]).unwrap();
        let r = verify_threshold_definition(&copy, 2, DEFAULT_TOL);
        assert_eq!(r.verdict, Verdict::Refuted);
        assert_eq!(r.witness.unwrap().outputs, vec![0]);
    }

    #[test]
    fn entropy_bound_examples() {
        assert_eq!(verify_entropy_bounds(&xor(), 2, DEFAULT_TOL).verdict, Verdict::Proved);
        let rep = enumerate_with(5, 1, 3, |x| vec![x[0]; 3]).unwrap();
        assert_eq!(verify_threshold_definition(&rep, 1, DEFAULT_TOL).verdict, Verdict::Proved);
        assert_eq!(verify_entropy_bounds(&rep, 1, DEFAULT_TOL).verdict, Verdict::Proved);
    }

    #[test]
    fn han_examples() {
        let indep = enumerate_with(3, 2, 2, |x| vec![x[0], x[1]]).unwrap();
        assert!(close(han_check(&indep, &[1, 2]), 0.0));
        let same = enumerate_with(3, 1, 2, |x| vec![x[0], x[0]]).unwrap();
        assert!(close(han_check(&same, &[1, 2]), 1.0));
    }

    #[test]
    fn base_conversion() {
        let d = enumerate_with(5, 2, 2, |x| vec![(x[0] + x[1]) % 5, x[1]]).unwrap();
        assert!((d.entropy(&[1, 2]) * 5f64.log2() - d.entropy_bits(&[1, 2])).abs() < 1e-12);
    }

    #[test]
    fn state_space_guard() {
        let circ = crate::circuit::synthesize(&crate::Network::complete_bipartite(3, 3), 3, FieldModulus::default(), 0).unwrap();
        assert!(matches!(enumerate_distribution(&circ), Err(InfoError::StateSpaceTooLarge { .. })));
    }

    #[test]
    fn from_counts_validation() {
        assert!(JointDistribution::from_counts(3, 2, vec![(vec![0, 3], 1)]).is_err());
        assert!(JointDistribution::from_counts(3, 2, vec![(vec![0, 1], 0)]).is_err());
        let d = JointDistribution::from_counts(3, 2, vec![(vec![0, 1], 2), (vec![0, 1], 1), (vec![2, 2], 3)]).unwrap();
        assert_eq!(d.support_size(), 2);
        assert!(close(d.entropy(&[0]), 2f64.ln() / 3f64.ln()));
    }
}
