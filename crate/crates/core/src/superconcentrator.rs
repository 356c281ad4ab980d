//! Unbalanced superconcentrators with few inputs and many outputs.
//!
//! Every builder here takes `(inputs, outputs)` in that order, with
//! `inputs <= outputs`; in the secret-sharing application inputs are the
//! threshold side and outputs are the participants.
//!
//! | builder                    | shape                                                       | depth   |
//! |----------------------------|-------------------------------------------------------------|---------|
//! | [`build_partial_sc_depth2`] | concentrator, then reversed concentrator                   | 2       |
//! | [`build_sc_depth2`]         | union of a halving chain of partials plus a hub block      | 2       |
//! | [`build_sc_depth2_linear`]  | complete graph into a middle layer, reversed concentrator  | 2       |
//! | [`build_sc_depth3_linear`]  | depth-2 superconcentrator, reversed concentrator           | <= 3    |
//! | [`build_sc_general`]        | depth-`d` inner superconcentrator, reversed concentrator   | <= d+1  |
//!
//! Fractional layer sizes round up and capacities round down.

use crate::ackermann::{alpha, lambda};
pub use crate::concentrator::BuildError;
use crate::concentrator::{build_auto, DEFAULT_RETRIES};
use crate::derive_seed;
use crate::network::{Network, DEFAULT_BUDGET};

pub const DEFAULT_EPSILON: f64 = 0.5;

/// Randomness and verification effort handed to every sub-builder.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BuildOptions {
    pub seed: u64,
    /// Subset-check budget for each depth-1 concentrator.
    pub budget: u64,
    pub max_retries: u32,
}

impl BuildOptions {
    pub fn new(seed: u64) -> Self {
        BuildOptions { seed, budget: DEFAULT_BUDGET, max_retries: DEFAULT_RETRIES }
    }

    pub fn with_budget(self, budget: u64) -> Self {
        BuildOptions { budget, ..self }
    }

    /// Options for the `index`-th sub-builder.
    pub fn child(&self, index: u64) -> Self {
        BuildOptions { seed: derive_seed(self.seed, index), ..*self }
    }

    fn concentrator(&self, inputs: usize, outputs: usize, k: usize) -> Result<Network, BuildError> {
        build_auto(inputs, outputs, k, self.seed, self.budget, self.max_retries)
    }
}

/// What to build: the CLI-facing request.
#[derive(Debug, Clone, PartialEq)]
pub struct ScBuildSpec {
    pub inputs: usize,
    pub outputs: usize,
    /// `None` picks [`recommended_depth`].
    pub target_depth: Option<u32>,
    pub epsilon: f64,
    pub rng_seed: u64,
    pub budget: u64,
}

impl ScBuildSpec {
    pub fn new(inputs: usize, outputs: usize) -> Self {
        ScBuildSpec { inputs, outputs, target_depth: None, epsilon: DEFAULT_EPSILON, rng_seed: 0, budget: DEFAULT_BUDGET }
    }
}

fn ceil_tol(x: f64) -> usize {
    (x - 1e-9).ceil().max(0.0) as usize
}

fn floor_tol(x: f64) -> usize {
    (x + 1e-9).floor().max(0.0) as usize
}

fn at_least(lhs: f64, rhs: f64) -> bool {
    lhs >= rhs * (1.0 - 1e-12)
}

fn check_epsilon(epsilon: f64) -> Result<(), BuildError> {
    if !(epsilon > 0.0 && epsilon <= 2.0) {
        return Err(BuildError::InvalidArguments(format!("epsilon must lie in (0, 2], got {epsilon}")));
    }
    Ok(())
}

/// Serial composition of `top` with the reverse of an
/// `(outputs, middle, k)`-concentrator.
fn with_reversed_bottom(
    top: Network,
    outputs: usize,
    k: usize,
    opts: &BuildOptions,
) -> Result<Network, BuildError> {
    let middle = top.outputs().len();
    let bottom = opts.concentrator(outputs, middle, k)?.reverse();
    Ok(Network::serial_compose(&top, &bottom)?)
}

/// `(p, ceil(2p/3))` partial superconcentrator with an explicit middle size.
fn partial_sized(inputs: usize, outputs: usize, p: usize, middle: usize, opts: &BuildOptions) -> Result<Network, BuildError> {
    let top = opts.child(0).concentrator(inputs, middle, p)?;
    with_reversed_bottom(top, outputs, p, &opts.child(1))
}

/// Depth-2 `(floor(n/r), ceil(2n/(3r)))`-partial superconcentrator with
/// `ceil(4n/(3r))` middle vertices.
pub fn build_partial_sc_depth2(inputs: usize, outputs: usize, r: f64, opts: &BuildOptions) -> Result<Network, BuildError> {
    let size = inputs as f64 / r;
    if r.is_nan() || r < 1.0 || size < 3.0 - 1e-9 {
        return Err(BuildError::PreconditionViolation(format!("need r >= 1 and n/r >= 3 (n={inputs}, r={r})")));
    }
    if inputs > outputs {
        return Err(BuildError::PreconditionViolation(format!("inputs {inputs} exceed outputs {outputs}")));
    }
    partial_sized(inputs, outputs, floor_tol(size), ceil_tol(4.0 * size / 3.0), opts)
}

/// Guaranteed lower threshold `q` of [`build_partial_sc_depth2`].
pub fn partial_lower_threshold(inputs: usize, r: f64) -> usize {
    ceil_tol(2.0 * inputs as f64 / (3.0 * r))
}

/// Middle-layer size of [`build_partial_sc_depth2`].
pub fn partial_middle_size(inputs: usize, r: f64) -> usize {
    ceil_tol(4.0 * inputs as f64 / (3.0 * r))
}

/// Depth-2 superconcentrator of size `O(m log m log n)`.
///
/// Partials are chained with integer capacities `p_0 = n`,
/// `p_{j+1} = ceil(2 p_j / 3)` while `p_j >= 3`. Partial `j` routes
/// `k - p_{j+1}` pairs of any request of size `k` in `(p_{j+1}, p_j]` and
/// hands the remaining `p_{j+1}` to the later partials; their middle layers
/// are disjoint. The final `s <= 2` pairs go through `s` hub vertices that
/// are adjacent to every input and every output.
pub fn build_sc_depth2(inputs: usize, outputs: usize, opts: &BuildOptions) -> Result<Network, BuildError> {
    if inputs > outputs {
        return Err(BuildError::PreconditionViolation(format!("inputs {inputs} exceed outputs {outputs}")));
    }
    if inputs <= 4 {
        return Ok(Network::complete_bipartite(inputs, outputs));
    }
    let mut parts = Vec::new();
    let mut p = inputs;
    while p >= 3 {
        let middle = ceil_tol(4.0 * p as f64 / 3.0);
        parts.push(partial_sized(inputs, outputs, p, middle, &opts.child(parts.len() as u64))?);
        p = ceil_tol(2.0 * p as f64 / 3.0);
    }
    parts.push(hub_block(inputs, outputs, p)?);
    Ok(Network::parallel_union(&parts, inputs, outputs)?)
}

/// `hubs` middle vertices, each joined to every input and every output.
fn hub_block(inputs: usize, outputs: usize, hubs: usize) -> Result<Network, BuildError> {
    Ok(Network::serial_compose(&Network::complete_bipartite(inputs, hubs), &Network::complete_bipartite(hubs, outputs))?)
}

/// Linear-size depth 2 for `outputs >= inputs^(2+epsilon)`.
pub fn build_sc_depth2_linear(inputs: usize, outputs: usize, epsilon: f64, opts: &BuildOptions) -> Result<Network, BuildError> {
    check_epsilon(epsilon)?;
    let (n, m) = (inputs as f64, outputs as f64);
    if inputs == 0 || !at_least(m, n.powf(2.0 + epsilon)) {
        return Err(BuildError::PreconditionViolation(format!(
            "need outputs >= inputs^(2+eps) (inputs={inputs}, outputs={outputs}, eps={epsilon})"
        )));
    }
    if inputs == 1 {
        return Ok(Network::complete_bipartite(1, outputs));
    }
    let r = (m / n).powf(1.0 / (1.0 + epsilon));
    let middle = ceil_tol(m / r).clamp(inputs, outputs);
    with_reversed_bottom(Network::complete_bipartite(inputs, middle), outputs, inputs, opts)
}

/// Linear-size depth 3 for `outputs >= inputs * log2(inputs)^(2+epsilon)`.
pub fn build_sc_depth3_linear(inputs: usize, outputs: usize, epsilon: f64, opts: &BuildOptions) -> Result<Network, BuildError> {
    check_epsilon(epsilon)?;
    let (n, m) = (inputs as f64, outputs as f64);
    if inputs < 2 || !at_least(m, n * n.log2().powf(2.0 + epsilon)) {
        return Err(BuildError::PreconditionViolation(format!(
            "need inputs >= 2 and outputs >= inputs * log2(inputs)^(2+eps) (inputs={inputs}, outputs={outputs}, eps={epsilon})"
        )));
    }
    if at_least(m, n.powi(3)) {
        return build_sc_depth2_linear(inputs, outputs, 1.0, opts);
    }
    let r = (m / n).powf(1.0 / (1.0 + epsilon / 2.0));
    let middle = ceil_tol(m / r).clamp(inputs, outputs);
    let top = build_sc_depth2(inputs, middle, &opts.child(0))?;
    with_reversed_bottom(top, outputs, inputs, &opts.child(1))
}

/// Depth at most `d + 1` for `outputs >= inputs * lambda_d(inputs)^(1+epsilon)`.
///
/// The inner `(inputs, outputs / r)` block comes from [`build_within_depth`]
/// with depth limit `d`.
pub fn build_sc_general(inputs: usize, outputs: usize, d: u32, epsilon: f64, opts: &BuildOptions) -> Result<Network, BuildError> {
    check_epsilon(epsilon)?;
    if d < 3 || inputs == 0 {
        return Err(BuildError::PreconditionViolation(format!("need d >= 3 and inputs >= 1 (d={d}, inputs={inputs})")));
    }
    let (n, m) = (inputs as f64, outputs as f64);
    let l = lambda(d, inputs as u64) as f64;
    if !at_least(m, n * l.powf(1.0 + epsilon)) {
        return Err(BuildError::PreconditionViolation(format!(
            "need outputs >= inputs * lambda_{d}(inputs)^(1+eps) = {:.3} (outputs={outputs})",
            n * l.powf(1.0 + epsilon)
        )));
    }
    let r = (m / n).powf(1.0 / (1.0 + epsilon));
    let middle = ceil_tol(m / r).clamp(inputs, outputs);
    let top = build_within_depth(inputs, middle, d, epsilon, &opts.child(0))?;
    with_reversed_bottom(top, outputs, inputs, &opts.child(1))
}

/// The cheapest applicable superconcentrator of depth at most `max_depth`.
///
/// Dispatch order: complete graph for `inputs <= 4` or `max_depth == 1`,
/// then depth-2 linear, depth-3 linear, the general recursion at the depth
/// below `max_depth` with the smallest `lambda`, and finally
/// [`build_sc_depth2`]. When `inputs > outputs` the reverse of the mirrored
/// construction is returned.
pub fn build_within_depth(inputs: usize, outputs: usize, max_depth: u32, epsilon: f64, opts: &BuildOptions) -> Result<Network, BuildError> {
    check_epsilon(epsilon)?;
    if max_depth == 0 {
        return Err(BuildError::InvalidArguments("depth must be at least 1".into()));
    }
    if inputs > outputs {
        return Ok(build_within_depth(outputs, inputs, max_depth, epsilon, opts)?.reverse());
    }
    if inputs <= 4 || max_depth == 1 {
        return Ok(Network::complete_bipartite(inputs, outputs));
    }
    let (n, m) = (inputs as f64, outputs as f64);
    if at_least(m, n.powf(2.0 + epsilon)) {
        return build_sc_depth2_linear(inputs, outputs, epsilon, opts);
    }
    if max_depth >= 3 && at_least(m, n * n.log2().powf(2.0 + epsilon)) {
        return build_sc_depth3_linear(inputs, outputs, epsilon, opts);
    }
    if max_depth >= 4 {
        let best = (3..max_depth)
            .filter(|&d| at_least(m, n * (lambda(d, inputs as u64) as f64).powf(1.0 + epsilon)))
            .min_by_key(|&d| (lambda(d, inputs as u64), d));
        if let Some(d) = best {
            return build_sc_general(inputs, outputs, d, epsilon, opts);
        }
    }
    build_sc_depth2(inputs, outputs, opts)
}

/// `alpha(m, n) + 3` for `m >= n`: the depth at which linear size is
/// attainable.
pub fn recommended_depth(m: usize, n: usize) -> Result<u32, BuildError> {
    alpha(m as u64, n as u64)
        .map(|a| a + 3)
        .map_err(|e| BuildError::InvalidArguments(e.to_string()))
}

/// Builds from a request; `None` depth means [`recommended_depth`].
pub fn build(spec: &ScBuildSpec) -> Result<Network, BuildError> {
    if spec.inputs == 0 || spec.outputs == 0 {
        return Err(BuildError::InvalidArguments("inputs and outputs must be positive".into()));
    }
    let depth = match spec.target_depth {
        Some(d) => d,
        None => recommended_depth(spec.inputs.max(spec.outputs), spec.inputs.min(spec.outputs))?,
    };
    let opts = BuildOptions::new(spec.rng_seed).with_budget(spec.budget);
    build_within_depth(spec.inputs, spec.outputs, depth, spec.epsilon, &opts)
}
