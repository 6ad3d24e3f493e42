//! Machine-readable run reports.
//!
//! Every command emits one report: the command line it ran, a digest of its
//! inputs, the seed, one entry per executed check, and the wall time. Hard
//! checks gate the exit status; soft checks (the quadrature module's
//! directional evidence) are report-only. Reports are byte-identical across
//! runs with the same command and seed, except for the wall-time field.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Severity {
    Hard,
    Soft,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub status: CheckStatus,
    pub severity: Severity,
    /// The measured quantity the pass/fail decision was made on (a relative
    /// residual, a deviation, or a ratio, depending on the check).
    pub residual: f64,
}

impl CheckResult {
    pub fn hard(name: impl Into<String>, passed: bool, residual: f64) -> Self {
        assert!(residual.is_finite(), "check residuals must be finite");
        CheckResult {
            name: name.into(),
            status: if passed {
                CheckStatus::Pass
            } else {
                CheckStatus::Fail
            },
            severity: Severity::Hard,
            residual,
        }
    }

    pub fn soft(name: impl Into<String>, passed: bool, residual: f64) -> Self {
        assert!(residual.is_finite(), "check residuals must be finite");
        CheckResult {
            name: name.into(),
            status: if passed {
                CheckStatus::Pass
            } else {
                CheckStatus::Fail
            },
            severity: Severity::Soft,
            residual,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == CheckStatus::Pass
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunReport {
    pub command: String,
    pub inputs_digest: String,
    pub seed: u64,
    pub wall_time_ms: f64,
    pub checks: Vec<CheckResult>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub outputs: Option<serde_json::Value>,
}

impl RunReport {
    pub fn new(command: impl Into<String>, inputs_digest: String, seed: u64) -> Self {
        RunReport {
            command: command.into(),
            inputs_digest,
            seed,
            wall_time_ms: 0.0,
            checks: Vec::new(),
            outputs: None,
        }
    }

    pub fn hard_failures(&self) -> usize {
        self.checks
            .iter()
            .filter(|c| c.severity == Severity::Hard && !c.passed())
            .count()
    }

    pub fn all_hard_passed(&self) -> bool {
        self.hard_failures() == 0
    }
}

/// FNV-1a digest of the raw input bytes, rendered as hex.
pub fn digest(parts: &[&[u8]]) -> String {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for part in parts {
        for &b in *part {
            h ^= b as u64;
            h = h.wrapping_mul(0x0000_0100_0000_01b3);
        }
        // separator so ["ab", ""] differs from ["a", "b"]
        h ^= 0xff;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    format!("{h:016x}")
}

/// Sub-seed derivation: one master seed, stable per-suite streams.
pub fn derive_seed(seed: u64, label: &str) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for &b in label.as_bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h ^ seed
}
