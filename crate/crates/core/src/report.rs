//! Verdicts for connectivity and entropy sweeps.

use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    /// Every instance of the property's quantifier was checked.
    Proved,
    /// A seeded sample passed; says nothing about unsampled instances.
    SampledPass,
    /// A counterexample was found; see the witness.
    Refuted,
}

impl Verdict {
    pub fn passed(self) -> bool {
        !matches!(self, Verdict::Refuted)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Proved => "proved",
            Verdict::SampledPass => "sampled_pass",
            Verdict::Refuted => "refuted",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Property {
    Concentrator { c: usize },
    Superconcentrator,
    PartialSc { p: usize, q: usize },
    DisjointPaths { sources: Vec<usize>, sinks: Vec<usize>, k: usize },
    ThresholdDefinition { t: usize },
    EntropyBounds { t: usize },
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Property::Concentrator { c } => write!(f, "concentrator({c})"),
            Property::Superconcentrator => f.write_str("superconcentrator"),
            Property::PartialSc { p, q } => write!(f, "partial_sc({p},{q})"),
            Property::DisjointPaths { sources, sinks, k } => {
                write!(f, "disjoint_paths({:?},{:?},{k})", sources, sinks)
            }
            Property::ThresholdDefinition { t } => write!(f, "threshold_definition({t})"),
            Property::EntropyBounds { t } => write!(f, "entropy_bounds({t})"),
        }
    }
}

/// A failing instance: positions into the network's input and output lists
/// (or, for entropy checks, share positions in `outputs`).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Witness {
    pub inputs: Vec<usize>,
    pub outputs: Vec<usize>,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[usize]| v.iter().map(usize::to_string).collect::<Vec<_>>().join(",");
        write!(f, "inputs={{{}}};outputs={{{}}}", join(&self.inputs), join(&self.outputs))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub property: Property,
    pub verdict: Verdict,
    pub subsets_checked: u64,
    pub witness: Option<Witness>,
    pub sample_seed: Option<u64>,
}

impl VerificationReport {
    /// `RESULT verdict=... checked=... witness=...`
    pub fn summary_line(&self) -> String {
        let witness = self.witness.as_ref().map_or_else(|| "none".to_string(), Witness::to_string);
        format!("RESULT verdict={} checked={} witness={}", self.verdict, self.subsets_checked, witness)
    }
}
