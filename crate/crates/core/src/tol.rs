//! Numerical tolerances shared across the pipeline.

/// Relative tolerance for rank and vanishing decisions.
pub const DEFAULT_TOL: f64 = 1e-8;
/// Environment variable that overrides [`DEFAULT_TOL`] in the CLI.
pub const TOL_ENV: &str = "AXIALCURV_TOL";
/// Orthogonality tolerance for target rotations.
pub const ORTHO_TOL: f64 = 1e-12;
/// Agreement between the composed reduction transform and its closed formulas.
pub const LEMMA_AGREE: f64 = 1e-10;
/// Agreement between closed-form and oracle critical values.
pub const CLOSED_VS_ORACLE: f64 = 1e-8;
/// Points on the oracle theta grid.
pub const ORACLE_GRID: usize = 4096;
/// Bisection stopping width for oracle roots.
pub const ORACLE_BISECT: f64 = 1e-12;
/// Relative dedupe threshold for critical values.
pub const DEDUPE_REL: f64 = 1e-8;
/// Magnitude below which dedupe becomes absolute.
pub const DEDUPE_FLOOR: f64 = 1e-6;
/// Factor around a case boundary that triggers a near-degenerate warning.
pub const BORDER_FACTOR: f64 = 10.0;

/// Tolerance value threaded through classification and frame construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tol(pub f64);

impl Default for Tol {
    fn default() -> Self {
        Tol(DEFAULT_TOL)
    }
}

impl Tol {
    /// Reads [`TOL_ENV`], falling back to the default when absent or invalid.
    pub fn from_env() -> Self {
        std::env::var(TOL_ENV)
            .ok()
            .and_then(|s| s.trim().parse::<f64>().ok())
            .filter(|t| t.is_finite() && *t > 0.0)
            .map(Tol)
            .unwrap_or_default()
    }

    /// Absolute threshold for a quantity whose natural size is `scale`.
    pub fn abs(self, scale: f64) -> f64 {
        self.0 * scale.max(1.0)
    }

    /// True when `x` is inside the borderline band around the threshold.
    pub fn borderline(self, x: f64, scale: f64) -> bool {
        let t = self.abs(scale);
        let x = x.abs();
        x > t / BORDER_FACTOR && x <= t * BORDER_FACTOR
    }
}
