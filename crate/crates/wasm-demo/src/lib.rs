//! Browser bindings: inverse-Ackermann table, superconcentrator drawing,
//! and a share/reconstruct round trip. Every export returns a JSON string.

use serde::Serialize;
use sscirc::ackermann::{alpha, lambda};
use sscirc::circuit::synthesize_valid;
use sscirc::network::{verify_superconcentrator, DEFAULT_BUDGET};
use sscirc::subsets::next_combination;
use sscirc::superconcentrator::{self, recommended_depth, ScBuildSpec};
use sscirc::{FieldElement, FieldModulus, Network};
use wasm_bindgen::prelude::*;

/// 2^31 - 1, so values survive a round trip through JS numbers.
pub const DEMO_MODULUS: u64 = 2_147_483_647;

const MAX_TERMINALS: usize = 48;

#[derive(Serialize)]
struct AckermannRow {
    d: u32,
    lambda: u64,
}

#[derive(Serialize)]
struct AckermannView {
    m: u64,
    n: u64,
    rows: Vec<AckermannRow>,
    alpha: u32,
    recommended_depth: u32,
}

pub fn ackermann_json(m: u64, n: u64, max_d: u32) -> Result<String, String> {
    if n == 0 || m < n {
        return Err(format!("need m >= n >= 1 (m={m}, n={n})"));
    }
    let rows = (1..=max_d.clamp(1, 64)).map(|d| AckermannRow { d, lambda: lambda(d, n) }).collect();
    let a = alpha(m, n).map_err(|e| e.to_string())?;
    let view = AckermannView { m, n, rows, alpha: a, recommended_depth: a + 3 };
    Ok(serde_json::to_string(&view).expect("serializes"))
}

#[derive(Serialize)]
struct ScView {
    vertices: usize,
    edges: usize,
    depth: usize,
    recommended_depth: u32,
    verdict: String,
    checked: u64,
    svg: String,
}

pub fn build_sc_json(inputs: usize, outputs: usize, seed: u64) -> Result<String, String> {
    if inputs == 0 || outputs == 0 || inputs > MAX_TERMINALS || outputs > MAX_TERMINALS {
        return Err(format!("inputs and outputs must be in 1..={MAX_TERMINALS}"));
    }
    let mut spec = ScBuildSpec::new(inputs, outputs);
    spec.rng_seed = seed;
    let net = superconcentrator::build(&spec).map_err(|e| e.to_string())?;
    let report = verify_superconcentrator(&net, DEFAULT_BUDGET, seed);
    let view = ScView {
        vertices: net.vertex_count(),
        edges: net.edge_count(),
        depth: net.depth(),
        recommended_depth: recommended_depth(inputs.max(outputs), inputs.min(outputs)).map_err(|e| e.to_string())?,
        verdict: report.verdict.to_string(),
        checked: report.subsets_checked,
        svg: layered_svg(&net),
    };
    Ok(serde_json::to_string(&view).expect("serializes"))
}

/// Inputs on the left, outputs on the right, inner vertices in columns by
/// longest distance from an input.
pub fn layered_svg(net: &Network) -> String {
    let order = net.topo_order().expect("network is acyclic");
    let mut layer = vec![0usize; net.vertex_count()];
    let adj = net.out_adjacency();
    for &v in &order {
        for &w in &adj[v] {
            layer[w] = layer[w].max(layer[v] + 1);
        }
    }
    let last = net.depth().max(1);
    for &o in net.outputs() {
        layer[o] = last;
    }
    let mut columns: Vec<Vec<usize>> = vec![Vec::new(); last + 1];
    for &i in net.inputs() {
        columns[0].push(i);
    }
    for &v in &order {
        if layer[v] != 0 && layer[v] != last || (layer[v] == 0 && !net.inputs().contains(&v)) {
            columns[layer[v]].push(v);
        }
    }
    columns[last].extend_from_slice(net.outputs());

    let tallest = columns.iter().map(Vec::len).max().unwrap_or(1).max(1);
    let (w, h) = (160.0 * last as f64 + 80.0, 18.0 * tallest as f64 + 40.0);
    let mut pos = vec![(0.0, 0.0); net.vertex_count()];
    for (c, col) in columns.iter().enumerate() {
        let step = (h - 40.0) / col.len().max(1) as f64;
        for (k, &v) in col.iter().enumerate() {
            pos[v] = (40.0 + 160.0 * c as f64, 20.0 + step * (k as f64 + 0.5));
        }
    }
    let mut svg = format!(r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {w:.0} {h:.0}" width="{w:.0}" height="{h:.0}">"#);
    svg.push_str(r##"<g stroke="#8a8f98" stroke-opacity="0.35" stroke-width="0.8">"##);
    for &(a, b) in net.edges() {
        let ((x1, y1), (x2, y2)) = (pos[a], pos[b]);
        svg.push_str(&format!(r#"<line x1="{x1:.1}" y1="{y1:.1}" x2="{x2:.1}" y2="{y2:.1}"/>"#));
    }
    svg.push_str("</g>");
    for (c, col) in columns.iter().enumerate() {
        let fill = if c == 0 { "#2b6cb0" } else if c == last { "#c05621" } else { "#4a5568" };
        for &v in col {
            let (x, y) = pos[v];
            svg.push_str(&format!(r#"<circle cx="{x:.1}" cy="{y:.1}" r="4" fill="{fill}"/>"#));
        }
    }
    svg.push_str("</svg>");
    svg
}

#[derive(Serialize)]
struct Recovery {
    coalition: Vec<usize>,
    secret: u64,
}

#[derive(Serialize)]
struct ShareView {
    modulus: u64,
    threshold: usize,
    draws: u64,
    shares: Vec<u64>,
    recoveries: Vec<Recovery>,
    all_correct: bool,
}

/// Builds a `(t, n)` circuit, shares `secret`, and reconstructs it from up
/// to `max_coalitions` coalitions of size `t`.
pub fn share_round_trip_json(t: usize, n: usize, secret: u64, seed: u64, max_coalitions: usize) -> Result<String, String> {
    if t == 0 || t > n || n > MAX_TERMINALS {
        return Err(format!("need 1 <= t <= n <= {MAX_TERMINALS}"));
    }
    let f = FieldModulus::new(DEMO_MODULUS).expect("prime");
    if secret >= f.p() {
        return Err(format!("secret must be below {}", f.p()));
    }
    let mut spec = ScBuildSpec::new(t, n);
    spec.rng_seed = seed;
    let net = superconcentrator::build(&spec).map_err(|e| e.to_string())?;
    let (circ, _, used) = synthesize_valid(&net, t, f, seed, DEFAULT_BUDGET, 8).map_err(|e| e.to_string())?;
    let s = f.elem(secret);
    let y = circ.share(s, seed).map_err(|e| e.to_string())?;
    let mut recoveries = Vec::new();
    let mut c: Vec<usize> = (0..t).collect();
    loop {
        let y_t: Vec<FieldElement> = c.iter().map(|&i| y.values[i]).collect();
        let r = circ.reconstruct(&c, &y_t).map_err(|e| e.to_string())?;
        recoveries.push(Recovery { coalition: c.clone(), secret: r.value() });
        if recoveries.len() >= max_coalitions || !next_combination(&mut c, n) {
            break;
        }
    }
    let view = ShareView {
        modulus: f.p(),
        threshold: t,
        draws: used - seed + 1,
        shares: y.values.iter().map(|v| v.value()).collect(),
        all_correct: recoveries.iter().all(|r| r.secret == secret),
        recoveries,
    };
    Ok(serde_json::to_string(&view).expect("serializes"))
}

#[wasm_bindgen]
pub fn ackermann(m: u32, n: u32, max_d: u32) -> Result<String, JsError> {
    ackermann_json(m as u64, n as u64, max_d).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn build_sc(inputs: u32, outputs: u32, seed: u32) -> Result<String, JsError> {
    build_sc_json(inputs as usize, outputs as usize, seed as u64).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn share_round_trip(t: u32, n: u32, secret: u32, seed: u32) -> Result<String, JsError> {
    share_round_trip_json(t as usize, n as usize, secret as u64, seed as u64, 64).map_err(|e| JsError::new(&e))
}
