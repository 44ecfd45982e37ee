use thiserror::Error;

pub type Result<T> = std::result::Result<T, GupError>;

/// Every failure mode surfaced by the library. Physics failures are values,
/// never panics, so that parameter sweeps can report and continue.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GupError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("imaginary root: 2*beta - 7*alpha^2 = {0:e} < 0")]
    ImaginaryRoot(f64),
    #[error("degenerate denominator: beta equals 4*alpha^2")]
    DegenerateDenominator,
    #[error("caustic: |sin(omega*T)| = {0:e} is below the tolerance")]
    Caustic(f64),
    #[error("no convergence: {0}")]
    NoConvergence(String),
    #[error("singular dynamics: {0}")]
    SingularDynamics(String),
    #[error("no sign change on [{lo}, {hi}]")]
    Bracket { lo: f64, hi: f64 },
    #[error("numeric error: {0}")]
    Numeric(String),
    #[error("outside the convergence domain: {0}")]
    ConvergenceDomain(String),
    #[error("magnitude overflow: {0}")]
    Magnitude(String),
    #[error("unexpected structure: {0}")]
    Structure(String),
    #[error("inconsistent system: {0}")]
    Inconsistent(String),
    #[error("quadrature failed: {0}")]
    Quadrature(String),
    #[error("unstable reweighting: {0}")]
    Stability(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl GupError {
    /// Stable machine-readable tag, used by the CLI's structured errors.
    pub fn kind(&self) -> &'static str {
        match self {
            GupError::Domain(_) => "domain",
            GupError::ImaginaryRoot(_) => "imaginary_root",
            GupError::DegenerateDenominator => "degenerate_denominator",
            GupError::Caustic(_) => "caustic",
            GupError::NoConvergence(_) => "no_convergence",
            GupError::SingularDynamics(_) => "singular_dynamics",
            GupError::Bracket { .. } => "bracket",
            GupError::Numeric(_) => "numeric",
            GupError::ConvergenceDomain(_) => "convergence_domain",
            GupError::Magnitude(_) => "magnitude",
            GupError::Structure(_) => "structure",
            GupError::Inconsistent(_) => "inconsistent",
            GupError::Quadrature(_) => "quadrature",
            GupError::Stability(_) => "stability",
            GupError::Parse(_) => "parse",
        }
    }
}
