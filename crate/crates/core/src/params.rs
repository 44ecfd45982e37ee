//! Deformation parameters, their consistency constraints, the free-particle
//! velocity bound and the one-dimensional uncertainty floor.

use serde::{Deserialize, Serialize};

use crate::error::{GupError, Result};

/// Relative tolerance used when comparing β against multiples of α².
pub const CONSTRAINT_REL_TOL: f64 = 1e-15;

/// Physical configuration: α (inverse momentum), β (inverse momentum squared),
/// the optional integer linking β to α², mass and ħ.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GupParams {
    pub alpha: f64,
    #[serde(default)]
    pub beta: f64,
    #[serde(rename = "n", default, skip_serializing_if = "Option::is_none")]
    pub n_link: Option<u32>,
    #[serde(default = "one")]
    pub mass: f64,
    #[serde(default = "one")]
    pub hbar: f64,
}

fn one() -> f64 {
    1.0
}

impl Default for GupParams {
    fn default() -> Self {
        GupParams { alpha: 0.0, beta: 0.0, n_link: None, mass: 1.0, hbar: 1.0 }
    }
}

impl GupParams {
    /// Builds and checks a parameter set without an integer link.
    pub fn new(alpha: f64, beta: f64, mass: f64, hbar: f64) -> Result<Self> {
        let p = GupParams { alpha, beta, n_link: None, mass, hbar };
        p.check()?;
        Ok(p)
    }

    /// Natural units m = ħ = 1.
    pub fn natural(alpha: f64, beta: f64) -> Self {
        GupParams { alpha, beta, ..Default::default() }
    }

    /// Same parameters with different deformation strengths (link dropped).
    pub fn with_deformation(&self, alpha: f64, beta: f64) -> Self {
        GupParams { alpha, beta, n_link: None, ..*self }
    }

    /// Verifies the type invariants.
    pub fn check(&self) -> Result<()> {
        let finite = [self.alpha, self.beta, self.mass, self.hbar].iter().all(|x| x.is_finite());
        if !finite {
            return Err(GupError::Domain("parameters must be finite".into()));
        }
        if self.mass <= 0.0 {
            return Err(GupError::Domain(format!("mass must be positive, got {}", self.mass)));
        }
        if self.hbar <= 0.0 {
            return Err(GupError::Domain(format!("hbar must be positive, got {}", self.hbar)));
        }
        if self.alpha < 0.0 {
            return Err(GupError::Domain(format!("alpha must be non-negative, got {}", self.alpha)));
        }
        if let Some(n) = self.n_link {
            if n < 1 {
                return Err(GupError::Domain("n must be a positive integer".into()));
            }
            let target = (n as f64 + 1.0) * self.alpha * self.alpha;
            if (self.beta - target).abs() > 1e-12 * target.abs().max(f64::MIN_POSITIVE) {
                return Err(GupError::Domain(format!(
                    "beta = {} violates beta = (n+1) alpha^2 = {} for n = {}",
                    self.beta, target, n
                )));
            }
        }
        Ok(())
    }

    /// Parses the JSON document `{"alpha","beta","n","mass","hbar"}`.
    /// When `n` is given and `beta` is absent, β is derived as (n+1)α².
    pub fn from_json(text: &str) -> Result<Self> {
        let value: serde_json::Value =
            serde_json::from_str(text).map_err(|e| GupError::Parse(e.to_string()))?;
        let mut p: GupParams =
            serde_json::from_value(value.clone()).map_err(|e| GupError::Parse(e.to_string()))?;
        if let (Some(n), None) = (p.n_link, value.get("beta")) {
            p.beta = (n as f64 + 1.0) * p.alpha * p.alpha;
        }
        p.check()?;
        Ok(p)
    }

    /// α²/2 + β, the coefficient of p⁴/m in the Hamiltonian.
    pub fn gamma(&self) -> f64 {
        0.5 * self.alpha * self.alpha + self.beta
    }

    /// Lagrangian kinetic factor 1 + 2αmv + (8α² − 2β)m²v².
    pub fn kinetic_factor(&self, v: f64) -> f64 {
        let (a, b, m) = (self.alpha, self.beta, self.mass);
        1.0 + 2.0 * a * m * v + (8.0 * a * a - 2.0 * b) * m * m * v * v
    }

    /// Equation-of-motion bracket 1 + 6αmv + 48α²m²v² − 12βm²v².
    pub fn eom_factor(&self, v: f64) -> f64 {
        let (a, b, m) = (self.alpha, self.beta, self.mass);
        1.0 + 6.0 * a * m * v + (48.0 * a * a - 12.0 * b) * m * m * v * v
    }
}

/// Findings of [`validate_params`]; a report, never an error.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConstraintReport {
    pub real_root: bool,
    pub nondegenerate: bool,
    pub positive_vmax: bool,
    pub n_gt_3: Option<bool>,
    pub messages: Vec<String>,
}

/// Converts dimensionless Planck-scale coefficients into α = α₀/P, β = β₀/P².
pub fn planck_scale_params(
    alpha0: f64,
    beta0: f64,
    planck_momentum: f64,
    mass: f64,
    hbar: f64,
) -> Result<GupParams> {
    if !(planck_momentum > 0.0) {
        return Err(GupError::Domain(format!(
            "planck momentum must be positive, got {planck_momentum}"
        )));
    }
    GupParams::new(alpha0 / planck_momentum, beta0 / (planck_momentum * planck_momentum), mass, hbar)
}

/// Parameters on the algebra-consistent family β = (n+1)α².
pub fn params_from_n(alpha: f64, n: i64, mass: f64, hbar: f64) -> Result<GupParams> {
    if n < 1 {
        return Err(GupError::Domain(format!("n must be >= 1, got {n}")));
    }
    let n = u32::try_from(n).map_err(|_| GupError::Domain("n too large".into()))?;
    let p = GupParams {
        alpha,
        beta: (n as f64 + 1.0) * alpha * alpha,
        n_link: Some(n),
        mass,
        hbar,
    };
    p.check()?;
    Ok(p)
}

/// `x > k·α²` with a relative guard band of [`CONSTRAINT_REL_TOL`].
fn exceeds(beta: f64, k: f64, alpha: f64) -> bool {
    let t = k * alpha * alpha;
    beta - t > CONSTRAINT_REL_TOL * t
}

/// Reports both published validity regimes (β > 3.5α² and β > 4α²) without
/// choosing between them.
pub fn validate_params(p: &GupParams) -> ConstraintReport {
    let four = 4.0 * p.alpha * p.alpha;
    let real_root = exceeds(p.beta, 3.5, p.alpha);
    let nondegenerate = (p.beta - four).abs() > CONSTRAINT_REL_TOL * four;
    let positive_vmax = exceeds(p.beta, 4.0, p.alpha);
    let n_gt_3 = p.n_link.map(|n| n > 3);
    let mut messages = Vec::new();
    messages.push(if real_root {
        "beta > 3.5 alpha^2: velocity bound is real".to_string()
    } else {
        "beta <= 3.5 alpha^2: velocity bound is imaginary".to_string()
    });
    if !nondegenerate {
        messages.push("beta = 4 alpha^2: velocity bound denominator vanishes".to_string());
    }
    messages.push(if positive_vmax {
        "beta > 4 alpha^2: velocity bound is positive".to_string()
    } else {
        "beta <= 4 alpha^2: no positive velocity bound".to_string()
    });
    if let Some(n) = p.n_link {
        messages.push(if n > 3 {
            format!("n = {n} > 3: consistent with a positive velocity bound")
        } else {
            format!("n = {n} <= 3: beta = (n+1) alpha^2 <= 4 alpha^2")
        });
    }
    ConstraintReport { real_root, nondegenerate, positive_vmax, n_gt_3, messages }
}

/// Root (−α − √(2β − 7α²)) / (2m(4α² − β)) of the kinetic factor.
pub fn max_free_velocity(p: &GupParams) -> Result<f64> {
    let (a, b, m) = (p.alpha, p.beta, p.mass);
    let disc = 2.0 * b - 7.0 * a * a;
    if disc < 0.0 {
        return Err(GupError::ImaginaryRoot(disc));
    }
    let report = validate_params(p);
    if !report.nondegenerate {
        return Err(GupError::DegenerateDenominator);
    }
    Ok((-a - disc.sqrt()) / (2.0 * m * (4.0 * a * a - b)))
}

/// One-dimensional uncertainty floor
/// (ħ/2)[1 − 2α⟨|p|⟩ − (2α² − 3β)(Δp² + ⟨p⟩²)].
pub fn uncertainty_lower_bound(p: &GupParams, mean_abs_p: f64, mean_p: f64, delta_p: f64) -> f64 {
    let (a, b) = (p.alpha, p.beta);
    0.5 * p.hbar
        * (1.0 - 2.0 * a * mean_abs_p - (2.0 * a * a - 3.0 * b) * (delta_p * delta_p + mean_p * mean_p))
}
