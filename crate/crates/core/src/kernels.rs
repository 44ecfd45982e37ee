//! Closed-form semiclassical propagators for the free particle and the
//! oscillator, valid to first order in the deformation.
//!
//! Times may be complex; the Euclidean continuation is T = −iτ. Every
//! prefactor uses the principal square root, so at real T the phase of
//! √(1/i) is e^{−iπ/4}.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64 as C64;
use serde::Serialize;
use serde_json::{json, Value};

use crate::classical::{check_caustic_complex, ho_action_beta_regrouped, ho_action_orders, Boundary};
use crate::error::{GupError, Result};
use crate::params::GupParams;

const I: C64 = C64 { re: 0.0, im: 1.0 };

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Semiclassical,
    Spectral,
    Lattice,
}

/// A propagator value with the parameters that produced it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KernelValue {
    pub amplitude: C64,
    pub method: Method,
    pub meta: BTreeMap<String, Value>,
}

impl KernelValue {
    pub fn new(amplitude: C64, method: Method) -> Result<Self> {
        if !amplitude.re.is_finite() || !amplitude.im.is_finite() {
            return Err(GupError::Numeric(format!("non-finite kernel amplitude {amplitude}")));
        }
        Ok(KernelValue { amplitude, method, meta: BTreeMap::new() })
    }

    pub fn with(mut self, key: &str, value: Value) -> Self {
        self.meta.insert(key.to_string(), value);
        self
    }

    /// Appends to the `warnings` list in the metadata.
    pub fn warn(mut self, message: String) -> Self {
        let entry = self.meta.entry("warnings".into()).or_insert_with(|| json!([]));
        if let Value::Array(items) = entry {
            items.push(Value::String(message));
        }
        self
    }
}

fn check_time(t: C64) -> Result<()> {
    // Real T > 0, or the lower half plane for damped propagation.
    if !(t.re.is_finite() && t.im.is_finite()) || t.im > 0.0 || (t.im == 0.0 && t.re <= 0.0) {
        return Err(GupError::Domain(format!("time {t} must be positive or have Im T < 0")));
    }
    Ok(())
}

/// Principal √(m/(2πiħT)).
pub fn free_prefactor(t: C64, p: &GupParams) -> C64 {
    (C64::from(p.mass) / (I * 2.0 * PI * p.hbar * t)).sqrt()
}

/// Prefactor √(m/2πiħT) times the fluctuation bracket
/// 1 + 3αmΔq/T + 3iβħm/T − 6iα²ħm/T − 6γm²Δq²/T² + (45/2)α²m²Δq²/T²,
/// with γ = α²/2 + β.
pub fn free_fluctuation_at(q0: f64, qf: f64, t: C64, p: &GupParams) -> Result<C64> {
    check_time(t)?;
    let (a, b, m, h) = (p.alpha, p.beta, p.mass, p.hbar);
    let dq = qf - q0;
    let bracket = C64::from(1.0) + 3.0 * a * m * dq / t + I * (3.0 * b - 6.0 * a * a) * h * m / t
        - (6.0 * p.gamma() - 22.5 * a * a) * m * m * dq * dq / (t * t);
    Ok(free_prefactor(t, p) * bracket)
}

pub fn free_fluctuation(b: &Boundary, p: &GupParams) -> Result<C64> {
    free_only(b)?;
    free_fluctuation_at(b.q0, b.qf, C64::from(b.t), p)
}

fn free_only(b: &Boundary) -> Result<()> {
    if b.omega != 0.0 {
        return Err(GupError::Domain("free-particle kernel requires omega = 0".into()));
    }
    Ok(())
}

/// Free action (m/2T)Δq²[1 + 2αmv + 8α²m²v² − 2βm²v²] at complex T.
pub fn free_action_at(q0: f64, qf: f64, t: C64, p: &GupParams) -> C64 {
    let (a, b, m) = (p.alpha, p.beta, p.mass);
    let v = (qf - q0) / t;
    v * v * t * (m / 2.0) * (1.0 + 2.0 * a * m * v + (8.0 * a * a - 2.0 * b) * m * m * v * v)
}

/// Fluctuation factor times exp[(i/ħ)S_cl].
pub fn free_kernel_at(q0: f64, qf: f64, t: C64, p: &GupParams) -> Result<KernelValue> {
    let fl = free_fluctuation_at(q0, qf, t, p)?;
    let amp = fl * (I * free_action_at(q0, qf, t, p) / p.hbar).exp();
    Ok(KernelValue::new(amp, Method::Semiclassical)?
        .with("time", json!([t.re, t.im]))
        .with("order", json!("alpha^2, beta")))
}

pub fn free_kernel(b: &Boundary, p: &GupParams) -> Result<KernelValue> {
    free_only(b)?;
    free_kernel_at(b.q0, b.qf, C64::from(b.t), p)
}

/// f = −(q0 − qf) mω (sin ωT + sin 2ωT)/sin²ωT.
pub fn ho_fluctuation_f_at(q0: f64, qf: f64, omega: f64, t: C64, p: &GupParams) -> Result<C64> {
    check_caustic_complex(omega, t)?;
    let x = t * omega;
    let s = x.sin();
    Ok(-(q0 - qf) * p.mass * omega * (s + (x * 2.0).sin()) / (s * s))
}

/// g = (3iħmω/8 sin²ωT)(2ωT + 5 sin ωT cos ωT + ωT cos 2ωT)
///   − (3m²ω²/8 sin³ωT)[2ωT(3 cos ωT (q0² + qf²) − 2(2 + cos 2ωT) q0 qf)
///     + 10 sin ωT (q0² + qf² − 2 q0 qf cos ωT) − 6 sin³ωT (q0² + qf²)].
pub fn ho_fluctuation_g_at(q0: f64, qf: f64, omega: f64, t: C64, p: &GupParams) -> Result<C64> {
    check_caustic_complex(omega, t)?;
    let (m, h, w) = (p.mass, p.hbar, omega);
    let x = t * w;
    let (s, c, c2) = (x.sin(), x.cos(), (x * 2.0).cos());
    let sq = q0 * q0 + qf * qf;
    let pq = q0 * qf;
    let quantum = I * 3.0 * h * m * w / (8.0 * s * s) * (x * 2.0 + s * c * 5.0 + x * c2);
    let classical = 3.0 * m * m * w * w / (8.0 * s * s * s)
        * (x * 2.0 * (c * 3.0 * sq - (c2 + 2.0) * 2.0 * pq) + s * 10.0 * (sq - c * 2.0 * pq) - s * s * s * 6.0 * sq);
    Ok(quantum - classical)
}

fn oscillator_only(b: &Boundary) -> Result<()> {
    if b.omega <= 0.0 {
        return Err(GupError::Domain("oscillator kernel requires omega > 0".into()));
    }
    Ok(())
}

pub fn ho_fluctuation_f(b: &Boundary, p: &GupParams) -> Result<f64> {
    oscillator_only(b)?;
    Ok(ho_fluctuation_f_at(b.q0, b.qf, b.omega, C64::from(b.t), p)?.re)
}

pub fn ho_fluctuation_g(b: &Boundary, p: &GupParams) -> Result<C64> {
    oscillator_only(b)?;
    ho_fluctuation_g_at(b.q0, b.qf, b.omega, C64::from(b.t), p)
}

/// Principal √(mω/(2πiħ sin ωT)).
pub fn ho_prefactor(omega: f64, t: C64, p: &GupParams) -> C64 {
    (C64::from(p.mass * omega) / (I * 2.0 * PI * p.hbar * (t * omega).sin())).sqrt()
}

/// The first-order logarithmic derivatives of the semiclassical oscillator
/// kernel: (∂ ln K/∂α, ∂ ln K/∂β) at α = β = 0, i.e. (f + iSα/ħ, g + iSβ/ħ).
pub fn ho_kernel_slopes_at(q0: f64, qf: f64, omega: f64, t: C64, p: &GupParams) -> Result<(C64, C64)> {
    let f = ho_fluctuation_f_at(q0, qf, omega, t, p)?;
    let g = ho_fluctuation_g_at(q0, qf, omega, t, p)?;
    let orders = ho_action_orders(q0, qf, omega, t, p.mass);
    let sb = ho_action_beta_regrouped(q0, qf, omega, t, p.mass);
    Ok((f + I * orders[1] / p.hbar, g + I * sb / p.hbar))
}

/// √(mω/2πiħ sin ωT)·[1 + αf + βg]·exp[(i/ħ)(S0 + αSα + βSβ)], kept strictly
/// to first order in (α, β).
pub fn ho_kernel_semiclassical_at(q0: f64, qf: f64, omega: f64, t: C64, p: &GupParams) -> Result<KernelValue> {
    check_time(t)?;
    if omega <= 0.0 {
        return Err(GupError::Domain("oscillator kernel requires omega > 0".into()));
    }
    check_caustic_complex(omega, t)?;
    let f = ho_fluctuation_f_at(q0, qf, omega, t, p)?;
    let g = ho_fluctuation_g_at(q0, qf, omega, t, p)?;
    let orders = ho_action_orders(q0, qf, omega, t, p.mass);
    let sb = ho_action_beta_regrouped(q0, qf, omega, t, p.mass);
    let phase = orders[0] + p.alpha * orders[1] + p.beta * sb;
    let amp = ho_prefactor(omega, t, p) * (1.0 + p.alpha * f + p.beta * g) * (I * phase / p.hbar).exp();
    Ok(KernelValue::new(amp, Method::Semiclassical)?
        .with("time", json!([t.re, t.im]))
        .with("abs_sin_omega_t", json!((t * omega).sin().norm()))
        .with("order", json!("alpha, beta (alpha^2 dropped)")))
}

pub fn ho_kernel_semiclassical(b: &Boundary, p: &GupParams) -> Result<KernelValue> {
    oscillator_only(b)?;
    ho_kernel_semiclassical_at(b.q0, b.qf, b.omega, C64::from(b.t), p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_2;

    fn close(a: C64, b: C64, rel: f64) -> bool {
        (a - b).norm() <= rel * b.norm().max(1e-300)
    }

    #[test]
    fn free_bracket_examples() {
        let p0 = GupParams::natural(0.0, 0.0);
        let b = Boundary::free(0.0, 1.0, 1.0).unwrap();
        let pref = free_prefactor(C64::from(1.0), &p0);
        assert!(close(pref, C64::from_polar((1.0 / (2.0 * PI)).sqrt(), -PI / 4.0), 1e-15));
        assert!(close(free_fluctuation(&b, &p0).unwrap(), pref, 1e-15));
        let p = GupParams::natural(0.01, 0.001);
        let bracket = free_fluctuation(&b, &p).unwrap() / pref;
        assert!(close(bracket, C64::new(1.02595, 0.0024), 1e-13));
        let at_rest = free_fluctuation(&Boundary::free(0.4, 0.4, 2.0).unwrap(), &p).unwrap() / free_prefactor(C64::from(2.0), &p);
        assert!(close(at_rest, C64::new(1.0, (3.0 * 0.001 - 6.0 * 1e-4) / 2.0), 1e-15));
    }

    #[test]
    fn free_kernel_textbook() {
        let p = GupParams { mass: 1.7, hbar: 0.6, ..GupParams::natural(0.0, 0.0) };
        let (q0, qf, t) = (0.2, -0.9, 1.3);
        let k = free_kernel(&Boundary::free(q0, qf, t).unwrap(), &p).unwrap();
        let want = (C64::from(1.7) / (I * 2.0 * PI * 0.6 * t)).sqrt()
            * (I * 1.7 * (qf - q0) * (qf - q0) / (2.0 * 0.6 * t)).exp();
        assert!(close(k.amplitude, want, 1e-14));
    }

    #[test]
    fn f_examples() {
        let p = GupParams::natural(0.0, 0.0);
        assert_eq!(ho_fluctuation_f(&Boundary::new(0.5, 0.5, 1.0, 1.0).unwrap(), &p).unwrap(), 0.0);
        let f = ho_fluctuation_f(&Boundary::new(0.2, 0.9, FRAC_PI_2, 1.0).unwrap(), &p).unwrap();
        assert!((f - 0.7).abs() < 1e-15);
        let g = ho_fluctuation_f(&Boundary::new(0.9, 0.2, FRAC_PI_2, 1.0).unwrap(), &p).unwrap();
        assert_eq!(f, -g);
    }

    #[test]
    fn g_at_origin_is_quantum_part() {
        let p = GupParams::natural(0.0, 0.0);
        let (w, t) = (1.3, 0.8);
        let g = ho_fluctuation_g(&Boundary::new(0.0, 0.0, t, w).unwrap(), &p).unwrap();
        let x = w * t;
        let want = 3.0 * w / (8.0 * x.sin().powi(2)) * (2.0 * x + 5.0 * x.sin() * x.cos() + x * (2.0 * x).cos());
        assert!(g.re.abs() < 1e-15 && (g.im - want).abs() < 1e-14);
    }

    #[test]
    fn g_position_part_is_quadratic() {
        let p = GupParams::natural(0.0, 0.0);
        let at = |l: f64| ho_fluctuation_g(&Boundary::new(0.3 * l, -0.7 * l, 0.9, 1.1).unwrap(), &p).unwrap();
        let g0 = ho_fluctuation_g(&Boundary::new(0.0, 0.0, 0.9, 1.1).unwrap(), &p).unwrap();
        assert!(close(at(2.0) - g0, (at(1.0) - g0) * 4.0, 1e-13));
    }

    #[test]
    fn euclidean_oscillator_at_origin() {
        let p = GupParams::natural(0.0, 0.0);
        let k = ho_kernel_semiclassical_at(0.0, 0.0, 1.0, C64::new(0.0, -1.0), &p).unwrap();
        let want = (1.0 / (2.0 * PI * 1f64.sinh())).sqrt();
        assert!(close(k.amplitude, C64::from(want), 1e-14));
    }

    #[test]
    fn slopes_match_finite_differences() {
        let (q0, qf, w) = (0.3, -0.4, 1.2);
        for t in [C64::from(0.9), C64::new(0.0, -1.1)] {
            let base = GupParams::natural(0.0, 0.0);
            let k0 = ho_kernel_semiclassical_at(q0, qf, w, t, &base).unwrap().amplitude;
            let (sa, sb) = ho_kernel_slopes_at(q0, qf, w, t, &base).unwrap();
            let h = 1e-6;
            let d = |p1: GupParams, p2: GupParams| {
                (ho_kernel_semiclassical_at(q0, qf, w, t, &p1).unwrap().amplitude
                    - ho_kernel_semiclassical_at(q0, qf, w, t, &p2).unwrap().amplitude)
                    / (2.0 * h)
            };
            let da = d(GupParams::natural(h, 0.0), GupParams::natural(-h, 0.0));
            let db = d(GupParams::natural(0.0, h), GupParams::natural(0.0, -h));
            assert!(close(da, sa * k0, 1e-5));
            assert!(close(db, sb * k0, 1e-5));
        }
    }
}
