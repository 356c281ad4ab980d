//! Threshold secret-sharing circuits built from unbalanced
//! superconcentrators over prime fields.
//!
//! The pipeline is: build an `(t, n)`-network with the right connectivity
//! ([`concentrator`], [`superconcentrator`]), check it by max-flow
//! ([`network`]), turn it into a linear circuit with random coefficients
//! ([`circuit`]), and check the resulting scheme either by rank conditions
//! or by exhaustive entropy computation ([`infocheck`]).

pub mod ackermann;
pub mod bench;
pub mod circuit;
pub mod concentrator;
pub mod field;
pub mod format;
pub mod infocheck;
pub mod network;
pub mod report;
pub mod subsets;
pub mod superconcentrator;

pub use circuit::{LinearCircuit, SchemeReport, ShareVector};
pub use field::{FieldElement, FieldModulus, Matrix, MERSENNE_61};
pub use infocheck::JointDistribution;
pub use network::Network;
pub use report::{Property, Verdict, VerificationReport, Witness};

/// Derives an independent child seed from `(seed, index)` with a splitmix64
/// finalizer.
pub fn derive_seed(seed: u64, index: u64) -> u64 {
    let mut z = seed ^ index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
