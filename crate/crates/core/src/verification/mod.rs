//! Verification of representations and separation contracts.
//!
//! Constructions elsewhere in this crate only ever claim sampled evidence;
//! this module is where claims are checked against independent oracles.
//! Two modes exist. `Sampled` evaluates exact membership and exact
//! polynomial signs at stratified sample points (interior, relative
//! interiors of all faces, an exterior shell, and far-field shells at
//! radii 1e3 and 1e6), plus leading-coefficient analysis along provable
//! recession directions. `Certified` additionally runs an adaptive box
//! subdivision with exact rational interval arithmetic, so a pass is a
//! proof everywhere except in the reported boundary-adjacent gap boxes.
//!
//! Oracle independence: membership of the target is decided from its
//! defining linear inequalities only, membership of the candidate
//! description from its polynomials only. The two never share code paths.
//!
//! Reports are plain data. `wall_ms` is the only field that varies between
//! reruns with the same seed; everything else is deterministic.

pub mod certify;
pub mod checks;
pub mod sample;

pub use certify::{side_box_status, BoxStatus};
pub use checks::{check_representation, check_separation, SeparationContract};
pub use sample::{stratified_sample, LabeledPoint, SampleSet};

use crate::rational::Rational;
use serde::{Deserialize, Serialize};

/// How much evidence a check gathers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VerifyMode {
    /// Exact pointwise checks at stratified samples and along recession
    /// lines.
    Sampled,
    /// Sampled checks plus interval-certified box subdivision.
    Certified,
}

impl VerifyMode {
    pub fn parse(s: &str) -> Option<VerifyMode> {
        match s {
            "sampled" => Some(VerifyMode::Sampled),
            "certified" => Some(VerifyMode::Certified),
            _ => None,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            VerifyMode::Sampled => "sampled",
            VerifyMode::Certified => "certified",
        }
    }
}

/// A point where a claim failed, with the offending value.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Counterexample {
    #[serde(with = "crate::json::serde_rational_vec")]
    pub point: Vec<Rational>,
    /// Offending evaluation, formatted exactly.
    pub value: String,
    pub detail: String,
}

/// How many points a stratum contributed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StratumCount {
    pub label: String,
    pub tested: usize,
}

/// Outcome of a verification run.
///
/// `passed` means no counterexample was found and, in certified mode, no
/// box away from the target boundary stayed unresolved. `gap_boxes` counts
/// boundary-adjacent boxes the subdivision could not classify at the
/// requested resolution; those are reported, not fatal, because every set
/// boundary is a measure-zero sign change that interval arithmetic cannot
/// pin down at finite resolution.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub passed: bool,
    pub mode: VerifyMode,
    pub strata: Vec<StratumCount>,
    pub certified_boxes: u64,
    /// Box width at which subdivision stops, formatted exactly.
    pub resolution: Option<String>,
    pub gap_boxes: u64,
    /// Unresolved boxes strictly interior or exterior to the target. Any
    /// nonzero count fails the run.
    pub strict_unresolved: u64,
    /// Stored counterexamples (capped); `counterexamples_total` keeps the
    /// full count.
    pub counterexamples: Vec<Counterexample>,
    pub counterexamples_total: u64,
    pub evidence: String,
    /// Wall-clock duration; excluded from determinism comparisons.
    pub wall_ms: u64,
}

const CEX_CAP: usize = 32;

impl VerificationReport {
    pub(crate) fn new(mode: VerifyMode) -> Self {
        VerificationReport {
            passed: false,
            mode,
            strata: Vec::new(),
            certified_boxes: 0,
            resolution: None,
            gap_boxes: 0,
            strict_unresolved: 0,
            counterexamples: Vec::new(),
            counterexamples_total: 0,
            evidence: mode.as_str().to_string(),
            wall_ms: 0,
        }
    }

    pub(crate) fn push_cex(&mut self, cex: Counterexample) {
        if self.counterexamples.len() < CEX_CAP {
            self.counterexamples.push(cex);
        }
        self.counterexamples_total += 1;
    }

    pub(crate) fn finalize(&mut self, started: std::time::Instant) {
        self.passed = self.counterexamples_total == 0 && self.strict_unresolved == 0;
        self.wall_ms = started.elapsed().as_millis().min(u64::MAX as u128) as u64;
    }
}
