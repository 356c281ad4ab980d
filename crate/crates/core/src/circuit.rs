//! Linear sharing circuits: a network whose vertices are addition gates and
//! whose edges scale by a field coefficient.
//!
//! Input 0 carries the secret and inputs `1..l` carry randomness. Output `i`
//! is share `i`. The transfer matrix `M` (outputs x inputs) maps the input
//! vector to the share vector; coalition `T` recovers the secret from
//! `M_T` and learns nothing when the randomness columns `M_{T,R}` have full
//! row rank.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::{FieldElement, FieldError, FieldModulus, Matrix};
use crate::network::{Network, NetworkError};
use crate::report::Verdict;
use crate::subsets::{binomial, next_combination, sample_subset};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CircuitError {
    #[error("network has {inputs} inputs, threshold {t} needs at least that many")]
    TooFewInputs { inputs: usize, t: usize },
    #[error("invalid threshold: {0}")]
    InvalidThreshold(String),
    #[error("expected {expected} coefficients, got {got}")]
    CoefficientCount { expected: usize, got: usize },
    #[error("coalition {0:?} cannot recover the secret")]
    SingularSubmatrix(Vec<usize>),
    #[error("bad shares: {0}")]
    Shares(String),
    #[error("no valid circuit after {attempts} draws")]
    RetriesExhausted { attempts: u32 },
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Network(#[from] NetworkError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearCircuit {
    net: Network,
    modulus: FieldModulus,
    coefficients: Vec<FieldElement>,
    threshold: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShareVector {
    pub values: Vec<FieldElement>,
    pub modulus: FieldModulus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckMode {
    Exhaustive,
    Sampled,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SchemeReport {
    /// Coalitions of size `t` checked, and how many failed.
    pub recover_checks: u64,
    pub recover_failures: u64,
    /// Coalitions of size `t - 1` checked, and how many failed.
    pub privacy_checks: u64,
    pub privacy_failures: u64,
    pub mode: CheckMode,
    pub verdict: Verdict,
    /// First failing coalition: size-`t` class first, lexicographic within.
    pub witness: Option<Vec<usize>>,
}

impl SchemeReport {
    pub fn summary_line(&self) -> String {
        let witness = self.witness.as_ref().map_or_else(
            || "none".to_string(),
            |w| format!("{{{}}}", w.iter().map(usize::to_string).collect::<Vec<_>>().join(",")),
        );
        format!(
            "RESULT verdict={} checked={} witness={}",
            self.verdict,
            self.recover_checks + self.privacy_checks,
            witness
        )
    }
}

impl LinearCircuit {
    pub fn new(
        net: Network,
        modulus: FieldModulus,
        coefficients: Vec<FieldElement>,
        threshold: usize,
    ) -> Result<Self, CircuitError> {
        check_shape(&net, threshold)?;
        if coefficients.len() != net.edge_count() {
            return Err(CircuitError::CoefficientCount { expected: net.edge_count(), got: coefficients.len() });
        }
        if let Some(c) = coefficients.iter().find(|c| c.value() >= modulus.p()) {
            return Err(CircuitError::Field(FieldError::DimensionMismatch(format!(
                "coefficient {} not reduced mod {}",
                c.value(),
                modulus.p()
            ))));
        }
        Ok(LinearCircuit { net, modulus, coefficients, threshold })
    }

    /// Depth-1 circuit whose transfer matrix is `m`: input `j` feeds output
    /// `i` with coefficient `m[i][j]`.
    pub fn from_matrix(m: &Matrix, modulus: FieldModulus, threshold: usize) -> Result<Self, CircuitError> {
        let (n, l) = (m.rows(), m.cols());
        let net = Network::complete_bipartite(l, n);
        // edges are sorted by input, then output
        let coefficients = (0..l).flat_map(|j| (0..n).map(move |i| (i, j))).map(|(i, j)| m.get(i, j)).collect();
        LinearCircuit::new(net, modulus, coefficients, threshold)
    }

    pub fn network(&self) -> &Network {
        &self.net
    }

    pub fn modulus(&self) -> FieldModulus {
        self.modulus
    }

    pub fn coefficients(&self) -> &[FieldElement] {
        &self.coefficients
    }

    pub fn threshold(&self) -> usize {
        self.threshold
    }

    /// Always 0.
    pub fn secret_input(&self) -> usize {
        0
    }

    /// `l`: the secret plus the random inputs.
    pub fn input_count(&self) -> usize {
        self.net.inputs().len()
    }

    pub fn share_count(&self) -> usize {
        self.net.outputs().len()
    }

    /// Gate-level evaluation; returns one value per output.
    pub fn evaluate(&self, inputs: &[FieldElement]) -> Result<Vec<FieldElement>, CircuitError> {
        if inputs.len() != self.input_count() {
            return Err(CircuitError::Field(FieldError::DimensionMismatch(format!(
                "{} input values for {} inputs",
                inputs.len(),
                self.input_count()
            ))));
        }
        let f = self.modulus;
        let mut out_edges: Vec<Vec<(usize, usize)>> = vec![Vec::new(); self.net.vertex_count()];
        for (e, &(a, b)) in self.net.edges().iter().enumerate() {
            out_edges[a].push((b, e));
        }
        let mut value = vec![FieldElement::ZERO; self.net.vertex_count()];
        for (&v, &x) in self.net.inputs().iter().zip(inputs) {
            value[v] = x;
        }
        for v in self.net.topo_order()? {
            let x = value[v];
            if x.is_zero() {
                continue;
            }
            for &(w, e) in &out_edges[v] {
                value[w] = f.add(value[w], f.mul(self.coefficients[e], x));
            }
        }
        Ok(self.net.outputs().iter().map(|&o| value[o]).collect())
    }

    /// `n x l` matrix, one forward pass per input with indicator loading.
    pub fn transfer_matrix(&self) -> Matrix {
        let (n, l) = (self.share_count(), self.input_count());
        let mut m = Matrix::zeros(n, l);
        let mut unit = vec![FieldElement::ZERO; l];
        for j in 0..l {
            unit[j] = FieldElement::ONE;
            let col = self.evaluate(&unit).expect("arity matches");
            for (i, v) in col.into_iter().enumerate() {
                m.set(i, j, v);
            }
            unit[j] = FieldElement::ZERO;
        }
        m
    }

    /// Rank conditions for every coalition of size `t` (rank `M_T = t` and
    /// rank `M_{T,R} = t-1`) and of size `t-1` (rank `M_{T,R} = t-1`).
    ///
    /// Exhaustive when `C(n,t) + C(n,t-1) <= budget`; otherwise up to
    /// `budget` coalitions are sampled, split between the classes in
    /// proportion to their sizes.
    pub fn validate_scheme(&self, budget: u64, rng_seed: u64) -> SchemeReport {
        let m = self.transfer_matrix();
        let f = self.modulus;
        let (n, l, t) = (self.share_count(), self.input_count(), self.threshold);
        let all_cols: Vec<usize> = (0..l).collect();
        let rand_cols: Vec<usize> = (1..l).collect();
        let rank = |rows: &[usize], cols: &[usize]| m.submatrix(rows, cols).expect("indices in range").rank(f);
        let recover_ok = |coalition: &[usize]| rank(coalition, &all_cols) == t && rank(coalition, &rand_cols) == t - 1;
        let privacy_ok = |coalition: &[usize]| rank(coalition, &rand_cols) == t - 1;

        let recover_total = binomial(n, t);
        // the empty coalition learns nothing by definition
        let privacy_total = if t > 1 { binomial(n, t - 1) } else { 0 };
        let exhaustive = recover_total + privacy_total <= budget as u128;
        let (recover_quota, privacy_quota) = if exhaustive {
            (recover_total as u64, privacy_total as u64)
        } else {
            let total = (recover_total + privacy_total) as f64;
            let r = ((budget as f64 * recover_total as f64 / total).round() as u64).clamp(1.min(budget), budget);
            (r, budget - r)
        };
        let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
        let (rc, rf, rw) = sweep_class(n, t, recover_quota, exhaustive, &mut rng, &recover_ok);
        let (pc, pf, pw) = if t > 1 { sweep_class(n, t - 1, privacy_quota, exhaustive, &mut rng, &privacy_ok) } else { (0, 0, None) };
        let verdict = match (rf + pf, exhaustive) {
            (0, true) => Verdict::Proved,
            (0, false) => Verdict::SampledPass,
            _ => Verdict::Refuted,
        };
        SchemeReport {
            recover_checks: rc,
            recover_failures: rf,
            privacy_checks: pc,
            privacy_failures: pf,
            mode: if exhaustive { CheckMode::Exhaustive } else { CheckMode::Sampled },
            verdict,
            witness: rw.or(pw),
        }
    }

    /// Shares of `s` with uniform randomness drawn from `rng_seed`.
    pub fn share(&self, s: FieldElement, rng_seed: u64) -> Result<ShareVector, CircuitError> {
        let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
        let p = self.modulus.p();
        let randomness: Vec<FieldElement> = (1..self.input_count()).map(|_| self.modulus.elem(rng.gen_range(0..p))).collect();
        self.share_with(s, &randomness)
    }

    /// Shares of `s` with the given `l - 1` random inputs.
    pub fn share_with(&self, s: FieldElement, randomness: &[FieldElement]) -> Result<ShareVector, CircuitError> {
        let mut inputs = Vec::with_capacity(self.input_count());
        inputs.push(self.modulus.elem(s.value()));
        inputs.extend(randomness.iter().map(|r| self.modulus.elem(r.value())));
        Ok(ShareVector { values: self.evaluate(&inputs)?, modulus: self.modulus })
    }

    /// The secret from the shares `y_t` of coalition `coalition` (sorted or
    /// not, size `t`): the first coordinate of `M_T^{-1} y_T`.
    ///
    /// With more than `t` inputs `M_T` is not square; then a combination
    /// `lambda` with `lambda^T M_T = e_0^T` is solved for instead.
    pub fn reconstruct(&self, coalition: &[usize], y_t: &[FieldElement]) -> Result<FieldElement, CircuitError> {
        let t = self.threshold;
        if coalition.len() != t || y_t.len() != t {
            return Err(CircuitError::Shares(format!("need exactly {t} shares, got {} indices and {} values", coalition.len(), y_t.len())));
        }
        let n = self.share_count();
        if let Some(&i) = coalition.iter().find(|&&i| i >= n) {
            return Err(CircuitError::Field(FieldError::IndexOutOfRange { index: i, len: n }));
        }
        let mut order: Vec<usize> = (0..t).collect();
        order.sort_by_key(|&k| coalition[k]);
        if order.windows(2).any(|w| coalition[w[0]] == coalition[w[1]]) {
            return Err(CircuitError::Shares("repeated share index".into()));
        }
        let rows: Vec<usize> = order.iter().map(|&k| coalition[k]).collect();
        let y: Vec<FieldElement> = order.iter().map(|&k| self.modulus.elem(y_t[k].value())).collect();
        let f = self.modulus;
        let m_t = self.transfer_matrix().submatrix(&rows, &(0..self.input_count()).collect::<Vec<_>>())?;
        if m_t.cols() == t {
            let inv = m_t.inverse(f).map_err(|_| CircuitError::SingularSubmatrix(rows.clone()))?;
            return Ok(inv.mul_vec(&y, f)?[0]);
        }
        let mut e0 = vec![FieldElement::ZERO; m_t.cols()];
        e0[0] = FieldElement::ONE;
        let lambda = m_t.transpose().solve(&e0, f)?.ok_or(CircuitError::SingularSubmatrix(rows))?;
        Ok(lambda.iter().zip(&y).fold(FieldElement::ZERO, |acc, (&a, &b)| f.add(acc, f.mul(a, b))))
    }
}

fn check_shape(net: &Network, t: usize) -> Result<(), CircuitError> {
    if t == 0 {
        return Err(CircuitError::InvalidThreshold("threshold must be at least 1".into()));
    }
    if net.inputs().len() < t {
        return Err(CircuitError::TooFewInputs { inputs: net.inputs().len(), t });
    }
    if net.outputs().len() < t {
        return Err(CircuitError::InvalidThreshold(format!("{} shares cannot meet threshold {t}", net.outputs().len())));
    }
    Ok(())
}

/// Returns (checked, failed, first failure).
fn sweep_class(
    n: usize,
    k: usize,
    quota: u64,
    exhaustive: bool,
    rng: &mut ChaCha8Rng,
    ok: &dyn Fn(&[usize]) -> bool,
) -> (u64, u64, Option<Vec<usize>>) {
    let (mut checked, mut failed, mut first) = (0u64, 0u64, None::<Vec<usize>>);
    let mut record = |c: &[usize]| {
        checked += 1;
        if !ok(c) {
            failed += 1;
            if first.as_deref().is_none_or(|w| c < w) {
                first = Some(c.to_vec());
            }
        }
    };
    if exhaustive {
        let mut c: Vec<usize> = (0..k).collect();
        loop {
            record(&c);
            if !next_combination(&mut c, n) {
                break;
            }
        }
    } else {
        // with replacement; the class is large whenever this branch runs
        for _ in 0..quota {
            record(&sample_subset(rng, n, k));
        }
    }
    (checked, failed, first)
}

/// Uniform coefficients in `[0, p)` for every edge.
pub fn synthesize(net: &Network, t: usize, modulus: FieldModulus, rng_seed: u64) -> Result<LinearCircuit, CircuitError> {
    check_shape(net, t)?;
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let p = modulus.p();
    let coefficients = (0..net.edge_count()).map(|_| modulus.elem(rng.gen_range(0..p))).collect();
    LinearCircuit::new(net.clone(), modulus, coefficients, t)
}

/// [`synthesize`] with seeds `rng_seed, rng_seed + 1, ...` until
/// [`LinearCircuit::validate_scheme`] passes. Returns the circuit, its
/// report, and the seed that produced it.
pub fn synthesize_valid(
    net: &Network,
    t: usize,
    modulus: FieldModulus,
    rng_seed: u64,
    budget: u64,
    max_retries: u32,
) -> Result<(LinearCircuit, SchemeReport, u64), CircuitError> {
    for attempt in 0..=max_retries {
        let seed = rng_seed.wrapping_add(attempt as u64);
        let circ = synthesize(net, t, modulus, seed)?;
        let report = circ.validate_scheme(budget, seed);
        if report.verdict.passed() {
            return Ok((circ, report, seed));
        }
    }
    Err(CircuitError::RetriesExhausted { attempts: max_retries + 1 })
}

/// Union bound `min(1, d (C(n,t) + C(n,t-1)) / p)` on a draw failing
/// validation.
pub fn failure_bound(depth: usize, n: usize, t: usize, modulus: FieldModulus) -> f64 {
    let subsets = binomial(n, t) as f64 + if t >= 1 { binomial(n, t - 1) as f64 } else { 0.0 };
    (depth as f64 * subsets / modulus.p() as f64).min(1.0)
}
