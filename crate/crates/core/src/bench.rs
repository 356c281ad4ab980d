//! Edge counts of the superconcentrator builders over parameter grids.

use crate::superconcentrator::{build_sc_depth2, build_sc_depth2_linear, BuildError, BuildOptions};

/// Equal-size grid for [`build_sc_depth2`].
pub const DEPTH2_GRID: [usize; 4] = [8, 16, 32, 64];

/// Input counts for [`build_sc_depth2_linear`] with `m = ceil(n^2.5)`
/// and `m = 4 ceil(n^2.5)`.
pub const LINEAR_GRID: [usize; 5] = [2, 3, 4, 6, 8];

pub const LINEAR_EPSILON: f64 = 0.5;

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub builder: &'static str,
    pub inputs: usize,
    pub outputs: usize,
    pub depth: usize,
    pub edges: usize,
    /// `edges / (m log2 m log2 n)` for depth 2, `edges / m` for linear.
    pub ratio: f64,
}

pub fn depth2_row(n: usize, m: usize, opts: &BuildOptions) -> Result<BenchRow, BuildError> {
    let net = build_sc_depth2(n, m, opts)?;
    let scale = m as f64 * (m as f64).log2() * (n as f64).log2();
    Ok(BenchRow { builder: "sc_depth2", inputs: n, outputs: m, depth: net.depth(), edges: net.edge_count(), ratio: net.edge_count() as f64 / scale })
}

pub fn linear_row(n: usize, m: usize, epsilon: f64, opts: &BuildOptions) -> Result<BenchRow, BuildError> {
    let net = build_sc_depth2_linear(n, m, epsilon, opts)?;
    Ok(BenchRow {
        builder: "sc_depth2_linear",
        inputs: n,
        outputs: m,
        depth: net.depth(),
        edges: net.edge_count(),
        ratio: net.edge_count() as f64 / m as f64,
    })
}

/// Both grids. `opts.budget` bounds each concentrator check; the bench
/// only needs sizes, so small budgets are fine.
pub fn run(opts: &BuildOptions) -> Result<Vec<BenchRow>, BuildError> {
    let mut rows = Vec::new();
    for (i, &n) in DEPTH2_GRID.iter().enumerate() {
        rows.push(depth2_row(n, n, &opts.child(i as u64))?);
    }
    for (i, &n) in LINEAR_GRID.iter().enumerate() {
        let base = (n as f64).powf(2.0 + LINEAR_EPSILON).ceil() as usize;
        for (j, m) in [base, 4 * base].into_iter().enumerate() {
            rows.push(linear_row(n, m, LINEAR_EPSILON, &opts.child(100 + 2 * i as u64 + j as u64))?);
        }
    }
    Ok(rows)
}

pub fn to_csv(rows: &[BenchRow]) -> String {
    let mut out = String::from("builder,inputs,outputs,depth,edges,ratio\n");
    for r in rows {
        out.push_str(&format!("{},{},{},{},{},{:.6}\n", r.builder, r.inputs, r.outputs, r.depth, r.edges, r.ratio));
    }
    out
}
