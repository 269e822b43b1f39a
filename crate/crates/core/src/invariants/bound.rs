use serde::{Deserialize, Serialize};

use crate::polygeom::ZeroCertificate;
use crate::rootkit::Series;

/// How far a computed value is established.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Exact,
    ExactAssumingSaturationFactor,
    UpperBoundOnly,
}

impl Status {
    /// The weaker of two statuses.
    pub fn weakest(self, other: Status) -> Status {
        self.max(other)
    }
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Status::Exact => "exact",
            Status::ExactAssumingSaturationFactor => "exact-assuming-saturation-factor",
            Status::UpperBoundOnly => "upper-bound-only",
        })
    }
}

/// Why the value cannot be smaller.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum LowerBound {
    /// λ = 0, value 1.
    ZeroWeight,
    /// λ ≠ 0, so 0 ∉ Kλ.
    NonZero,
    /// λ ≠ λ*, so no antipodal pair lies in Kλ.
    NotSelfDual,
    /// The exact real LR-cone test fails at `r`.
    LrInfeasible { r: usize },
    /// (V_{qλ}^{⊗r})^K = 0 for every tested q.
    TensorFailure { r: usize, q: Vec<u32> },
    /// No lower bound beyond the trivial one.
    Unproven,
}

/// (V_{qλ}^{⊗r})^K ≠ 0 for the primitive integral multiple λ of the input.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TensorCertificate {
    pub weight: String,
    pub q: u32,
    pub r: usize,
    pub dimension: u128,
}

/// Hive-chain witness for (λ,…,λ) ∈ CLR_r in type A: the spectra of the
/// partial sums A_1+A_2, …, A_1+…+A_{r−2}.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LrCertificate {
    pub system: String,
    pub weight: String,
    pub r: usize,
    pub partial_sums: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "step", rename_all = "kebab-case")]
pub enum TranscriptEntry {
    WeylSearch { sizes_tried: Vec<usize>, found: Option<usize>, orbit_size: usize, nodes: u64 },
    WeylSearchAborted { error: String },
    Hive { system: String, r: usize, feasible: bool },
    Tensor { r: usize, q: u32, dimension: Option<u128>, error: Option<String> },
    Component { nodes: Vec<usize>, system: String, weight: String, value: Option<usize>, status: Status },
    Isomorphism { from: String, to: String, weight: String },
}

/// Where the certificates of an r(λ) answer live.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Subsystem {
    pub nodes: Vec<usize>,
    pub system: String,
    pub weight: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundResult {
    /// `None` when nothing at or below `unknown_above` is certified.
    pub value: Option<usize>,
    pub unknown_above: Option<usize>,
    pub status: Status,
    pub lower_bound: LowerBound,
    pub weyl_bound: Option<usize>,
    pub weyl_certificate: Option<ZeroCertificate>,
    pub tensor_certificate: Option<TensorCertificate>,
    pub lr_certificate: Option<LrCertificate>,
    pub subsystem: Option<Subsystem>,
    pub transcript: Vec<TranscriptEntry>,
}

impl BoundResult {
    pub(crate) fn new(value: usize, status: Status, lower_bound: LowerBound) -> Self {
        BoundResult {
            value: Some(value),
            unknown_above: None,
            status,
            lower_bound,
            weyl_bound: None,
            weyl_certificate: None,
            tensor_certificate: None,
            lr_certificate: None,
            subsystem: None,
            transcript: Vec::new(),
        }
    }

    /// The Weyl bound exceeds the certified value.
    pub fn weyl_gap(&self) -> bool {
        matches!((self.weyl_bound, self.value), (Some(w), Some(v)) if w > v)
    }

    /// True unless the status is upper-bound-only or the value is unknown.
    pub fn is_settled(&self) -> bool {
        self.value.is_some() && self.status != Status::UpperBoundOnly
    }
}

/// Default q_set per series.
pub fn default_q_set(series: Series) -> Vec<u32> {
    match series {
        Series::A => vec![1],
        Series::B | Series::C | Series::D => vec![1, 2],
    }
}

/// Options for r0 and everything built on it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct R0Options {
    /// Largest r searched; defaults to ℓ+1.
    pub r_max: Option<usize>,
    /// Overrides the per-series default.
    pub q_set: Option<Vec<u32>>,
    pub orbit_cap: usize,
    pub character_cap: usize,
    pub parallel: bool,
}

impl Default for R0Options {
    fn default() -> Self {
        R0Options {
            r_max: None,
            q_set: None,
            orbit_cap: crate::rootkit::DEFAULT_ORBIT_CAP,
            character_cap: crate::charalg::DEFAULT_CHARACTER_CAP,
            parallel: true,
        }
    }
}
