//! Classical mechanics of the deformed Lagrangian: closed-form paths and
//! actions for the free particle and the oscillator, plus numerical oracles.

mod action;
mod shooting;
mod trajectory;

pub use action::{
    action_quadrature, check_caustic_complex, free_action, gup_lagrangian, ho_action, ho_action_beta_regrouped,
    ho_action_orders, ActionBreakdown,
};
pub use shooting::{bvp_shoot, MAX_BISECTIONS, RK4_STEPS};
pub use trajectory::{
    eom_residual, free_trajectory, ho_coefficients, ho_trajectory, residual_sup_norm, Boundary, Grid,
    HOTrajectoryCoefficients, Mode, Piece, Trajectory, CAUSTIC_TOLERANCE,
};

/// A one-dimensional potential V(q) with its gradient.
pub trait Potential: Sync {
    fn value(&self, q: f64) -> f64;
    fn gradient(&self, q: f64) -> f64;
}

/// V ≡ 0.
#[derive(Debug, Clone, Copy, Default)]
pub struct Free;

impl Potential for Free {
    fn value(&self, _q: f64) -> f64 {
        0.0
    }

    fn gradient(&self, _q: f64) -> f64 {
        0.0
    }
}

/// V = ½ m ω² q².
#[derive(Debug, Clone, Copy)]
pub struct Harmonic {
    pub mass: f64,
    pub omega: f64,
}

impl Harmonic {
    pub fn new(mass: f64, omega: f64) -> Self {
        Harmonic { mass, omega }
    }
}

impl Potential for Harmonic {
    fn value(&self, q: f64) -> f64 {
        0.5 * self.mass * self.omega * self.omega * q * q
    }

    fn gradient(&self, q: f64) -> f64 {
        self.mass * self.omega * self.omega * q
    }
}

/// Any closure is a potential; its gradient is a central difference.
impl<F: Fn(f64) -> f64 + Sync> Potential for F {
    fn value(&self, q: f64) -> f64 {
        self(q)
    }

    fn gradient(&self, q: f64) -> f64 {
        let h = 1e-5 * q.abs().max(1.0);
        (self(q + h) - self(q - h)) / (2.0 * h)
    }
}
