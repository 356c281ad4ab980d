//! JSON documents for networks, circuits and shares.
//!
//! Output is compact with a fixed key order and a trailing newline, so equal
//! values always serialize to identical bytes.
//!
//! ```text
//! network:  {"vertex_count":V,"inputs":[..],"outputs":[..],"edges":[[a,b],..]}
//! circuit:  network keys, then "modulus","threshold","secret_input","coefficients"
//! shares:   {"modulus":p,"shares":[[index,value],..]}
//! ```
//!
//! Edges are written sorted. Circuit coefficients are parallel to the
//! written edge list; a circuit read with unsorted edges has its
//! coefficients permuted along with them.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::circuit::{CircuitError, LinearCircuit, ShareVector};
use crate::field::{FieldElement, FieldError, FieldModulus};
use crate::network::{Network, NetworkError, VertexId};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Network(#[from] NetworkError),
    #[error(transparent)]
    Circuit(#[from] CircuitError),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("{0}")]
    Invalid(String),
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct NetworkDoc {
    vertex_count: usize,
    inputs: Vec<VertexId>,
    outputs: Vec<VertexId>,
    edges: Vec<(VertexId, VertexId)>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CircuitDoc {
    vertex_count: usize,
    inputs: Vec<VertexId>,
    outputs: Vec<VertexId>,
    edges: Vec<(VertexId, VertexId)>,
    modulus: u64,
    threshold: usize,
    #[serde(default)]
    secret_input: usize,
    coefficients: Vec<u64>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SharesDoc {
    modulus: u64,
    shares: Vec<(usize, u64)>,
}

fn finish(mut s: String) -> String {
    s.push('\n');
    s
}

pub fn network_to_json(net: &Network) -> String {
    let doc = NetworkDoc {
        vertex_count: net.vertex_count(),
        inputs: net.inputs().to_vec(),
        outputs: net.outputs().to_vec(),
        edges: net.edges().to_vec(),
    };
    finish(serde_json::to_string(&doc).expect("plain data serializes"))
}

pub fn network_from_json(s: &str) -> Result<Network, FormatError> {
    let doc: NetworkDoc = serde_json::from_str(s)?;
    Ok(Network::new(doc.vertex_count, doc.edges, doc.inputs, doc.outputs)?)
}

pub fn circuit_to_json(circ: &LinearCircuit) -> String {
    let net = circ.network();
    let doc = CircuitDoc {
        vertex_count: net.vertex_count(),
        inputs: net.inputs().to_vec(),
        outputs: net.outputs().to_vec(),
        edges: net.edges().to_vec(),
        modulus: circ.modulus().p(),
        threshold: circ.threshold(),
        secret_input: circ.secret_input(),
        coefficients: circ.coefficients().iter().map(|c| c.value()).collect(),
    };
    finish(serde_json::to_string(&doc).expect("plain data serializes"))
}

pub fn circuit_from_json(s: &str) -> Result<LinearCircuit, FormatError> {
    let doc: CircuitDoc = serde_json::from_str(s)?;
    if doc.secret_input != 0 {
        return Err(FormatError::Invalid(format!("secret_input must be 0, got {}", doc.secret_input)));
    }
    if doc.coefficients.len() != doc.edges.len() {
        return Err(CircuitError::CoefficientCount { expected: doc.edges.len(), got: doc.coefficients.len() }.into());
    }
    let modulus = FieldModulus::new(doc.modulus)?;
    if let Some(c) = doc.coefficients.iter().find(|&&c| c >= modulus.p()) {
        return Err(FormatError::Invalid(format!("coefficient {c} not below modulus {}", modulus.p())));
    }
    let mut pairs: Vec<((VertexId, VertexId), u64)> = doc.edges.into_iter().zip(doc.coefficients).collect();
    pairs.sort_by_key(|&(e, _)| e);
    let (edges, coefficients): (Vec<_>, Vec<_>) = pairs.into_iter().unzip();
    let net = Network::new(doc.vertex_count, edges, doc.inputs, doc.outputs)?;
    let coefficients = coefficients.into_iter().map(|c| modulus.elem(c)).collect();
    Ok(LinearCircuit::new(net, modulus, coefficients, doc.threshold)?)
}

/// Indexed shares; indices are output positions.
pub fn shares_to_json(modulus: FieldModulus, shares: &[(usize, FieldElement)]) -> String {
    let doc = SharesDoc { modulus: modulus.p(), shares: shares.iter().map(|&(i, v)| (i, v.value())).collect() };
    finish(serde_json::to_string(&doc).expect("plain data serializes"))
}

/// Every share of `y`, indexed `0..n`.
pub fn share_vector_to_json(y: &ShareVector) -> String {
    let indexed: Vec<(usize, FieldElement)> = y.values.iter().copied().enumerate().collect();
    shares_to_json(y.modulus, &indexed)
}

pub fn shares_from_json(s: &str) -> Result<(FieldModulus, Vec<(usize, FieldElement)>), FormatError> {
    let doc: SharesDoc = serde_json::from_str(s)?;
    let modulus = FieldModulus::new(doc.modulus)?;
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::with_capacity(doc.shares.len());
    for (i, v) in doc.shares {
        if v >= modulus.p() {
            return Err(FormatError::Invalid(format!("share value {v} not below modulus {}", modulus.p())));
        }
        if !seen.insert(i) {
            return Err(FormatError::Invalid(format!("share index {i} repeated")));
        }
        out.push((i, modulus.elem(v)));
    }
    Ok((modulus, out))
}
