//! Numerical thresholds shared by the capacity routines.
//!
//! Internal thresholds (`pivot`, `definiteness`, `condition_limit`) steer the
//! algorithms themselves. The remaining fields are acceptance thresholds for
//! post-condition checks and may be overridden globally from the CLI.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Tolerances {
    /// Smallest magnitude accepted as a simplex pivot or reduced cost.
    pub pivot: f64,
    /// Relative threshold on leading principal minors in Sylvester's test.
    pub definiteness: f64,
    /// Condition-number estimate above which a solve reports `SingularMatrix`.
    pub condition_limit: f64,
    /// Allowed spread of the components of `G s_hat`.
    pub equal_components: f64,
    /// Allowed deviation of a weight vector from constancy on an orbit.
    pub f_symmetry: f64,
    /// Allowed gap between the two bounds certified by a game solution.
    pub game_gap: f64,
    /// Relative tolerance for closed-form identities and capacity comparisons.
    pub relative: f64,
    /// Absolute tolerance for archimedean comparisons in witness checks.
    pub archimedean: f64,
    /// Lattice step for the brute-force oracles.
    pub grid_step: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            pivot: 1e-10,
            definiteness: 1e-12,
            condition_limit: 1e12,
            equal_components: 1e-9,
            f_symmetry: 1e-9,
            game_gap: 1e-8,
            relative: 1e-12,
            archimedean: 1e-12,
            grid_step: 1e-3,
        }
    }
}

impl Tolerances {
    /// Replaces every post-condition threshold with `tol`, leaving the
    /// algorithmic thresholds and the oracle step untouched.
    pub fn with_check_tolerance(mut self, tol: f64) -> Self {
        self.equal_components = tol;
        self.f_symmetry = tol;
        self.game_gap = tol;
        self.relative = tol;
        self.archimedean = tol;
        self
    }
}
