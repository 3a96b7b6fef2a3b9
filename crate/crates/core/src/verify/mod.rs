//! Seeded verification suites for the inequalities, equality cases and
//! Lipschitz constants relating v to the other metrics.
//!
//! Every suite is a pure function of its arguments and seed, and returns a
//! [`VerificationReport`]. A check contributes a margin (how far the tested
//! inequality is from failing); margins below the suite's tolerance count as
//! violations.

mod axioms;
mod bounds;
mod conjecture;
mod equality;
mod extremal;
mod lipschitz;
mod punctured;
pub mod sampling;
mod sweep;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

pub use axioms::{ordering_suite, triangle_suite, TriangleMetric, TRIANGLE_SLACK};
pub use bounds::{ball_sharpness_ratio, suite_bounds};
pub use conjecture::{conjecture_constant, conjecture_constant_with, BALL_INTERVAL, HALF_INTERVAL};
pub use equality::{equality_suite, PERTURBED_RESIDUAL};
pub use extremal::extremal_config_suite;
pub use lipschitz::{lipschitz_ratio, log_grid, t_a_conjectured, t_a_family, t_a_report};
pub use punctured::punctured_suite;
pub use sweep::{linear_grid, sharpness_sweep, SweepFamily};

/// Tolerance for checks whose values come from closed forms.
pub const CLOSED_FORM_TOL: f64 = 1e-9;
/// Tolerance for checks that involve a sampled supremum.
pub const SAMPLED_TOL: f64 = 1e-6;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite_id: String,
    pub trials: u64,
    pub violations: u64,
    /// Smallest margin seen; negative means some inequality failed, before
    /// tolerance is applied.
    pub worst_margin: f64,
    pub estimate: Option<f64>,
    /// (parameter, value) rows.
    pub sweep: Option<Vec<(f64, f64)>>,
    pub seed: u64,
    /// Suite-specific numbers (raw estimates, reference intervals, gaps).
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub extras: BTreeMap<String, f64>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }

    pub fn extra(&self, key: &str) -> Option<f64> {
        self.extras.get(key).copied()
    }
}

/// Accumulates margins for a report.
#[derive(Debug)]
pub(crate) struct Tracker {
    suite_id: String,
    seed: u64,
    tol: f64,
    trials: u64,
    violations: u64,
    worst: f64,
    estimate: Option<f64>,
    sweep: Option<Vec<(f64, f64)>>,
    extras: BTreeMap<String, f64>,
}

impl Tracker {
    pub(crate) fn new(suite_id: impl Into<String>, seed: u64, tol: f64) -> Self {
        Self {
            suite_id: suite_id.into(),
            seed,
            tol,
            trials: 0,
            violations: 0,
            worst: f64::INFINITY,
            estimate: None,
            sweep: None,
            extras: BTreeMap::new(),
        }
    }

    pub(crate) fn trial(&mut self) {
        self.trials += 1;
    }

    /// Records `margin ≥ 0` as the checked condition.
    pub(crate) fn check(&mut self, margin: f64) {
        self.check_with(margin, self.tol);
    }

    pub(crate) fn check_with(&mut self, margin: f64, tol: f64) {
        if margin.is_nan() || margin < -tol {
            self.violations += 1;
        }
        self.worst = if margin.is_nan() {
            f64::NEG_INFINITY
        } else {
            self.worst.min(margin)
        };
    }

    /// Records |diff| ≤ tol, with margin tol − |diff|.
    pub(crate) fn check_equal(&mut self, diff: f64) {
        self.check_with(self.tol - diff.abs(), 0.0);
    }

    pub(crate) fn estimate(&mut self, value: f64) {
        self.estimate = Some(value);
    }

    pub(crate) fn row(&mut self, param: f64, value: f64) {
        self.sweep.get_or_insert_with(Vec::new).push((param, value));
    }

    pub(crate) fn extra(&mut self, key: &str, value: f64) {
        self.extras.insert(key.to_string(), value);
    }

    pub(crate) fn finish(self) -> VerificationReport {
        VerificationReport {
            suite_id: self.suite_id,
            trials: self.trials,
            violations: self.violations,
            // JSON has no infinities; a suite without checks reports 0
            worst_margin: if self.worst.is_finite() {
                self.worst
            } else if self.worst < 0.0 {
                f64::MIN
            } else {
                0.0
            },
            estimate: self.estimate,
            sweep: self.sweep,
            seed: self.seed,
            extras: self.extras,
        }
    }
}
