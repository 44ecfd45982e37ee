//! One time slice of the deformed path integral.

use std::f64::consts::PI;

use num_complex::Complex64 as C64;
use serde::Serialize;

use crate::classical::Potential;
use crate::error::{GupError, Result};
use crate::params::GupParams;

const I: C64 = C64 { re: 0.0, im: 1.0 };

/// Slicing of a Euclidean time interval.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SliceConfig {
    pub n_slices: usize,
    /// Euclidean time per slice.
    pub tau: f64,
    /// Half-width of the intermediate-point integration window.
    pub q_extent: f64,
    /// Initial number of quadrature points per intermediate coordinate.
    pub quad_points: usize,
}

impl SliceConfig {
    /// Uniform slicing of total Euclidean time `tau_total`, with the window
    /// 8√(ħτ_total/m) around the straight path (widened by |Δq|/2).
    pub fn euclidean(tau_total: f64, n_slices: usize, p: &GupParams, dq: f64) -> Result<Self> {
        if n_slices == 0 || !(tau_total > 0.0) {
            return Err(GupError::Domain("need n_slices >= 1 and tau_total > 0".into()));
        }
        let cfg = SliceConfig {
            n_slices,
            tau: tau_total / n_slices as f64,
            q_extent: 8.0 * (p.hbar * tau_total / p.mass).sqrt() + 0.5 * dq.abs(),
            quad_points: 64,
        };
        cfg.check(p)?;
        Ok(cfg)
    }

    pub fn total(&self) -> f64 {
        self.tau * self.n_slices as f64
    }

    pub fn check(&self, p: &GupParams) -> Result<()> {
        if self.n_slices == 0 || !(self.tau > 0.0) || self.quad_points < 2 {
            return Err(GupError::Domain("slice configuration needs n >= 1, tau > 0, >= 2 points".into()));
        }
        let width = (p.hbar * self.tau / p.mass).sqrt();
        if self.q_extent < 6.0 * width {
            return Err(GupError::Domain(format!(
                "window {} covers fewer than 6 widths of {width}",
                self.q_extent
            )));
        }
        Ok(())
    }
}

/// Bracket and exponent of one slice, split by order:
/// bracket = 1 + b_α + b_β + b_α², exponent = e_α + e_β + e_α² (without the
/// free Gaussian and the potential).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SliceTerms {
    pub b_alpha: C64,
    pub b_beta: C64,
    pub b_alpha2: C64,
    pub e_alpha: C64,
    pub e_beta: C64,
    pub e_alpha2: C64,
}

/// Deformation terms of the slice at (possibly complex) time T:
///   bracket 3αmΔq/T + 3iβħm/T − 6iα²ħm/T − 6βm²Δq²/T² + (39/2)α²m²Δq²/T²,
///   exponent (i/ħ)(αm²Δq³/T² − βm³Δq⁴/T³ + 4α²m³Δq⁴/T³).
pub fn slice_terms(dq: f64, t: C64, p: &GupParams) -> SliceTerms {
    let (a, b, m, h) = (p.alpha, p.beta, p.mass, p.hbar);
    let t2 = t * t;
    let t3 = t2 * t;
    SliceTerms {
        b_alpha: 3.0 * a * m * dq / t,
        b_beta: I * 3.0 * b * h * m / t - 6.0 * b * m * m * dq * dq / t2,
        b_alpha2: -I * 6.0 * a * a * h * m / t + 19.5 * a * a * m * m * dq * dq / t2,
        e_alpha: I / h * a * m * m * dq.powi(3) / t2,
        e_beta: -I / h * b * m.powi(3) * dq.powi(4) / t3,
        e_alpha2: I / h * 4.0 * a * a * m.powi(3) * dq.powi(4) / t3,
    }
}

fn check_time(t: C64) -> Result<()> {
    if !(t.re.is_finite() && t.im.is_finite()) || t.im > 0.0 || (t.im == 0.0 && t.re <= 0.0) {
        return Err(GupError::Domain(format!("slice time {t} must be positive or have Im T < 0")));
    }
    Ok(())
}

/// √(m/2πiħT)·[1 + bracket terms]·exp[(i/ħ)(mΔq²/2T − T V(q_from)) + exponent terms].
/// Real T is Lorentzian; T = −iτ gives the Euclidean slice.
pub fn single_slice_propagator(q_from: f64, q_to: f64, t: C64, p: &GupParams, potential: &dyn Potential) -> Result<C64> {
    check_time(t)?;
    let (m, h) = (p.mass, p.hbar);
    let dq = q_to - q_from;
    let s = slice_terms(dq, t, p);
    let pref = (C64::from(m) / (I * 2.0 * PI * h * t)).sqrt();
    let bracket = 1.0 + s.b_alpha + s.b_beta + s.b_alpha2;
    let phase = I / h * (m * dq * dq / (2.0 * t) - t * potential.value(q_from)) + s.e_alpha + s.e_beta + s.e_alpha2;
    Ok(pref * bracket * phase.exp())
}

/// Euclidean slice of duration τ.
pub fn euclidean_slice(q_from: f64, q_to: f64, tau: f64, p: &GupParams, potential: &dyn Potential) -> Result<C64> {
    single_slice_propagator(q_from, q_to, C64::new(0.0, -tau), p, potential)
}

/// Ratio of the deformed to the undeformed free Euclidean slice, expanded
/// to grade two (α counts once, α² and β twice):
/// 1 + b_α + e_α + b_β + e_β + b_α² + e_α² + b_α e_α + e_α²/2.
pub fn euclidean_link_weight(dq: f64, tau: f64, p: &GupParams) -> C64 {
    let s = slice_terms(dq, C64::new(0.0, -tau), p);
    1.0 + s.b_alpha + s.e_alpha + s.b_beta + s.e_beta + s.b_alpha2 + s.e_alpha2 + s.b_alpha * s.e_alpha + 0.5 * s.e_alpha * s.e_alpha
}

/// Σ_j τ[(m/2)v_j²(1 + 2iαmv_j + (2β − 8α²)m²v_j²) + V(q_j)], v_j = (q_{j+1} − q_j)/τ.
/// Under t → −iτ the velocity picks up a factor i, so the odd α-term turns
/// imaginary and the quadratic terms flip sign.
pub fn euclidean_action(path: &[f64], tau: f64, p: &GupParams, potential: &dyn Potential) -> C64 {
    let (a, b, m) = (p.alpha, p.beta, p.mass);
    path.windows(2)
        .map(|w| {
            let v = (w[1] - w[0]) / tau;
            let kin = 0.5 * m * v * v * (C64::new(1.0 + (2.0 * b - 8.0 * a * a) * m * m * v * v, 2.0 * a * m * v));
            tau * (kin + potential.value(w[0]))
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classical::Free;

    #[test]
    fn free_slice_is_gaussian() {
        let p = GupParams::natural(0.0, 0.0);
        let k = single_slice_propagator(0.1, 0.6, C64::from(0.4), &p, &Free).unwrap();
        let want = (1.0 / (I * 2.0 * PI * 0.4)).sqrt() * (I * 0.25 / 0.8).exp();
        assert!((k - want).norm() < 1e-15);
    }

    #[test]
    fn coincident_endpoints() {
        let p = GupParams::natural(0.01, 0.001);
        let t = C64::from(0.7);
        let s = slice_terms(0.0, t, &p);
        let bracket = 1.0 + s.b_alpha + s.b_beta + s.b_alpha2;
        let want = 1.0 + I * (3.0 * 0.001 - 6.0 * 1e-4) / 0.7;
        assert!((bracket - want).norm() < 1e-16);
    }

    #[test]
    fn euclidean_action_examples() {
        let p = GupParams::natural(0.02, 0.003);
        assert_eq!(euclidean_action(&[0.3; 9], 0.1, &p, &Free), C64::from(0.0));
        let p0 = GupParams::natural(0.0, 0.0);
        let path: Vec<f64> = (0..=10).map(|k| 0.2 + 0.5 * k as f64 / 10.0).collect();
        let s = euclidean_action(&path, 0.1, &p0, &Free);
        assert!((s - C64::from(0.25 / 2.0)).norm() < 1e-14);
    }

    #[test]
    fn link_weight_matches_log_of_slice_ratio() {
        // The grade-two weight agrees with the full slice ratio up to
        // third-order terms.
        let tau = 0.05;
        let dq = 0.13;
        let p0 = GupParams::natural(0.0, 0.0);
        for eps in [1e-2, 1e-3] {
            let p = GupParams::natural(0.3 * eps, 0.5 * eps * eps);
            let full = euclidean_slice(0.0, dq, tau, &p, &Free).unwrap() / euclidean_slice(0.0, dq, tau, &p0, &Free).unwrap();
            let w = euclidean_link_weight(dq, tau, &p);
            assert!((full - w).norm() < 50.0 * eps.powi(3));
        }
    }
}
