//! Classical actions: closed forms and the quadrature oracle.

use num_complex::Complex64 as C64;
use serde::Serialize;

use super::trajectory::{Boundary, Trajectory, CAUSTIC_TOLERANCE};
use super::Potential;
use crate::error::{GupError, Result};
use crate::numerics::{gauss_rule, QuadratureKind};
use crate::params::GupParams;

/// Action split by deformation order; each field already carries its
/// α, α² or β factor.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ActionBreakdown {
    pub s0: f64,
    pub s_alpha: f64,
    pub s_alpha2: f64,
    pub s_beta: f64,
    pub total: f64,
}

impl ActionBreakdown {
    pub fn new(s0: f64, s_alpha: f64, s_alpha2: f64, s_beta: f64) -> Self {
        ActionBreakdown { s0, s_alpha, s_alpha2, s_beta, total: s0 + s_alpha + s_alpha2 + s_beta }
    }
}

/// (m/2)q̇²(1 + 2αmq̇ + 8α²m²q̇² − 2βm²q̇²) − V(q).
pub fn gup_lagrangian(qdot: f64, q: f64, p: &GupParams, potential: &dyn Potential) -> f64 {
    0.5 * p.mass * qdot * qdot * p.kinetic_factor(qdot) - potential.value(q)
}

/// Free action (m/2T)Δq²[1 + 2αmv + 8α²m²v² − 2βm²v²], v = Δq/T.
pub fn free_action(b: &Boundary, p: &GupParams) -> Result<ActionBreakdown> {
    if b.omega != 0.0 {
        return Err(GupError::Domain("free_action requires omega = 0".into()));
    }
    let (m, v) = (p.mass, b.mean_velocity());
    let s0 = 0.5 * m * v * v * b.t;
    Ok(ActionBreakdown::new(
        s0,
        s0 * 2.0 * p.alpha * m * v,
        s0 * 8.0 * p.alpha * p.alpha * m * m * v * v,
        s0 * -2.0 * p.beta * m * m * v * v,
    ))
}

/// Unscaled oscillator action orders [S0, Sα, Sα², Sβ] at a possibly complex
/// time T (the Euclidean continuation uses T = −iτ).
pub fn ho_action_orders(q0: f64, qf: f64, omega: f64, t: C64, mass: f64) -> [C64; 4] {
    let (m, w) = (mass, omega);
    let x = t * w;
    let (s, c) = (x.sin(), x.cos());
    let (s2, c2) = ((x * 2.0).sin(), (x * 2.0).cos());
    let (s3, s4) = ((x * 3.0).sin(), (x * 4.0).sin());
    let (a, b) = (q0, qf);
    let (a2, b2) = (a * a, b * b);
    let (a4, b4) = (a2 * a2, b2 * b2);
    let mw = m * w;

    let s0 = (c * (a2 + b2) - 2.0 * a * b) * (mw / 2.0) / s;
    let s_alpha = -(mw * mw / 6.0) * (a - b) / (s * s)
        * (c2 * (a2 + a * b + b2) - c * (12.0 * a * b) - a * b + 5.0 * (a2 + b2));
    let s_alpha2 = (mw * mw * mw / 16.0) / s.powi(4)
        * (s4 * (a4 + b4) - s * (4.0 * a * b * (21.0 * a2 - 20.0 * a * b + 21.0 * b2))
            - s3 * (4.0 * a * b * (5.0 * a2 - 4.0 * a * b + 5.0 * b2))
            + x * c2 * (24.0 * a2 * b2)
            - x * c * (48.0 * a * b * (a2 + b2))
            + x * (12.0 * (a4 + 4.0 * a2 * b2 + b4))
            + s2 * (4.0 * (6.0 * a4 - 8.0 * a2 * a * b + 23.0 * a2 * b2 - 8.0 * a * b2 * b + 6.0 * b4)));
    let s_beta = -(mw * mw * mw / 32.0) / s.powi(4)
        * (s4 * (a4 + b4) - s * (44.0 * a * b * (a2 + b2)) - s3 * (12.0 * a * b * (a2 + b2))
            + x * c2 * (24.0 * a2 * b2)
            - x * c * (48.0 * a * b * (a2 + b2))
            + x * (12.0 * (a4 + 4.0 * a2 * b2 + b4))
            + s2 * (4.0 * (2.0 * a4 + 15.0 * a2 * b2 + 2.0 * b4)));
    [s0, s_alpha, s_alpha2, s_beta]
}

/// Regrouped form of Sβ by boundary monomials; algebraically identical to
/// the fourth entry of [`ho_action_orders`].
pub fn ho_action_beta_regrouped(q0: f64, qf: f64, omega: f64, t: C64, mass: f64) -> C64 {
    let mw = mass * omega;
    let x = t * omega;
    let (s, c) = (x.sin(), x.cos());
    let (a, b) = (q0, qf);
    let first = (x * 12.0 + (x * 2.0).sin() * 8.0 + (x * 4.0).sin()) * (a.powi(4) + b.powi(4));
    let second = (x * c * 12.0 + s * 11.0 + (x * 3.0).sin() * 3.0) * (4.0 * a * b * (a * a + b * b));
    let third = (x * 4.0 + x * (x * 2.0).cos() * 2.0 + (x * 2.0).sin() * 5.0) * (12.0 * a * a * b * b);
    -(mw * mw * mw / 32.0) / s.powi(4) * (first - second + third)
}

/// Perturbative oscillator action S0 + αSα + α²Sα² + βSβ.
pub fn ho_action(b: &Boundary, p: &GupParams) -> Result<ActionBreakdown> {
    if b.omega <= 0.0 {
        return Err(GupError::Domain("oscillator closed forms need omega > 0".into()));
    }
    b.check_caustic()?;
    let [s0, sa, sa2, sb] = ho_action_orders(b.q0, b.qf, b.omega, C64::new(b.t, 0.0), p.mass);
    Ok(ActionBreakdown::new(
        s0.re,
        p.alpha * sa.re,
        p.alpha * p.alpha * sa2.re,
        p.beta * sb.re,
    ))
}

/// |sin ωT| for complex T, checked against the caustic tolerance.
pub fn check_caustic_complex(omega: f64, t: C64) -> Result<()> {
    let s = (t * omega).sin().norm();
    if s < CAUSTIC_TOLERANCE {
        return Err(GupError::Caustic(s));
    }
    Ok(())
}

const QUAD_TOL: f64 = 1e-12;

/// Gauss–Legendre integral of the Lagrangian along the path. Closed-form
/// paths use one global rule of doubling order; sampled paths use a rule of
/// doubling order on every grid interval. Either stops once doubling changes
/// the estimate by less than 1e-12 relative.
pub fn action_quadrature(traj: &Trajectory, p: &GupParams, potential: &dyn Potential) -> Result<f64> {
    let lag = |t: f64| {
        let [q, v, _] = traj.state(t);
        gup_lagrangian(v, q, p, potential)
    };
    let panels: Vec<(f64, f64)> = match &traj.grid {
        Some(g) => g.t.windows(2).map(|w| (w[0], w[1])).collect(),
        None => vec![(0.0, traj.boundary.t)],
    };
    let mut order = if traj.grid.is_some() { 2 } else { 8 };
    let mut prev: Option<f64> = None;
    while order <= 256 {
        let rule = gauss_rule(QuadratureKind::Legendre, order)?;
        let est: f64 = panels.iter().map(|&(a, b)| rule.integrate_interval(a, b, lag)).sum();
        if let Some(pv) = prev {
            if (est - pv).abs() <= QUAD_TOL * est.abs().max(f64::MIN_POSITIVE) {
                return Ok(est);
            }
        }
        prev = Some(est);
        order *= 2;
    }
    Err(GupError::Quadrature(format!(
        "action did not settle to {QUAD_TOL:e} relative by order 256"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classical::{free_trajectory, ho_trajectory, Free, Harmonic};
    use std::f64::consts::FRAC_PI_2;

    #[test]
    fn lagrangian_examples() {
        let free = Free;
        assert_eq!(gup_lagrangian(1.0, 0.0, &GupParams::natural(0.0, 0.0), &free), 0.5);
        let l = gup_lagrangian(1.0, 0.0, &GupParams::natural(0.01, 0.001), &free);
        assert!((l - 0.5094).abs() < 1e-15);
        let quad = |q: f64| q * q;
        assert_eq!(gup_lagrangian(0.0, 2.0, &GupParams::natural(0.0, 0.0), &quad), -4.0);
    }

    #[test]
    fn free_action_examples() {
        let b = Boundary::free(0.0, 1.0, 1.0).unwrap();
        assert_eq!(free_action(&b, &GupParams::natural(0.0, 0.0)).unwrap().total, 0.5);
        let p = GupParams::natural(0.01, 0.001);
        let s = free_action(&b, &p).unwrap();
        assert!((s.total - 0.5094).abs() < 1e-15);
        let tr = free_trajectory(&b, &p).unwrap();
        let q = action_quadrature(&tr, &p, &Free).unwrap();
        assert!((q - s.total).abs() < 1e-12 * s.total);
    }

    #[test]
    fn oscillator_action_examples() {
        let p = GupParams::natural(0.0, 0.0);
        assert_eq!(ho_action(&Boundary::new(0.0, 0.0, 1.3, 1.0).unwrap(), &p).unwrap().s0, 0.0);
        let s = ho_action(&Boundary::new(0.0, 1.0, FRAC_PI_2, 1.0).unwrap(), &p).unwrap();
        assert!(s.s0.abs() < 1e-15);
    }

    #[test]
    fn pure_oscillator_quadrature() {
        let p = GupParams::natural(0.0, 0.0);
        let b = Boundary::new(0.3, 0.8, 1.0, 1.0).unwrap();
        let tr = ho_trajectory(&b, &p).unwrap();
        let q = action_quadrature(&tr, &p, &Harmonic::new(1.0, 1.0)).unwrap();
        let s = ho_action(&b, &p).unwrap();
        assert!((q - s.s0).abs() < 1e-10);
    }

    #[test]
    fn beta_forms_agree() {
        for &(a, b, w, t, m) in &[(0.3, 0.8, 1.0, 1.0, 1.0), (0.2, -0.5, 1.3, 0.7, 2.0)] {
            for tt in [C64::new(t, 0.0), C64::new(0.0, -t), C64::new(t, -0.4)] {
                let x = ho_action_orders(a, b, w, tt, m)[3];
                let y = ho_action_beta_regrouped(a, b, w, tt, m);
                assert!((x - y).norm() < 1e-12 * x.norm().max(1.0));
            }
        }
    }

    #[test]
    fn free_limit() {
        let p = GupParams::natural(0.01, 0.001);
        let ho = ho_action(&Boundary::new(0.3, 0.7, 2.0, 1e-4).unwrap(), &p).unwrap();
        let free = free_action(&Boundary::free(0.3, 0.7, 2.0).unwrap(), &p).unwrap();
        assert!((ho.total - free.total).abs() < 1e-6 * free.total.abs());
    }
}
