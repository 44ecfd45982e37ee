//! The propagator as a damped sum over perturbed eigenstates, and its
//! resummed closed form (the tilde factors).

use std::f64::consts::PI;

use num_complex::Complex64 as C64;
use serde::Serialize;
use serde_json::json;

use super::hermite::HermiteBasis;
use super::mehler::mehler_closed;
use super::perturbation::{alpha_coupling, energy_shift_per_gamma, even_admixture, odd_admixture};
use crate::classical::{check_caustic_complex, Boundary};
use crate::error::{GupError, Result};
use crate::kernels::{ho_prefactor, KernelValue, Method};
use crate::params::GupParams;

const I: C64 = C64 { re: 0.0, im: 1.0 };

/// First-order pieces of the spectral sum: K = K0 + αKα + βKβ.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpectralParts {
    pub k0: C64,
    pub k_alpha: C64,
    pub k_beta: C64,
    /// Magnitude of the last retained undeformed term times its geometric
    /// tail factor.
    pub tail: f64,
    pub truncation: usize,
}

fn check_damped(time: C64) -> Result<()> {
    if !(time.im < 0.0) {
        return Err(GupError::ConvergenceDomain(format!(
            "spectral sums need Im T < 0, got T = {time}"
        )));
    }
    Ok(())
}

/// Σ_{n<N} of the undeformed term φ_n(qf)φ_n(q0)e^{−iE⁰_nT/ħ} and of its
/// first derivatives in α and β:
///   Kα = −iY Σ e_n [S_n(qf)φ_n(q0) − φ_n(qf)S_n(q0)],
///   Kβ = Σ e_n [−(iT/ħ)(∂E_n/∂β)φ_n(qf)φ_n(q0) + mħω(R_n(qf)φ_n(q0) + φ_n(qf)R_n(q0))],
/// where S_n, R_n are the odd and even admixtures of ψ_n.
pub fn spectral_parts(basis: &HermiteBasis, q0: f64, qf: f64, time: C64, truncation: usize) -> Result<SpectralParts> {
    check_damped(time)?;
    if truncation == 0 || truncation + 4 > basis.n_max {
        return Err(GupError::Domain(format!(
            "truncation N = {truncation} must satisfy 1 <= N <= n_max - 4 = {}",
            basis.n_max.saturating_sub(4)
        )));
    }
    let count = truncation + 4;
    let (p0, pf) = (basis.phis(q0, count), basis.phis(qf, count));
    let y = alpha_coupling(basis);
    let mhw = basis.mass * basis.hbar * basis.omega;
    let hw = basis.hbar * basis.omega;
    let combo = |c: &[(usize, f64)], ph: &[f64]| c.iter().map(|&(k, v)| v * ph[k]).sum::<f64>();
    let (mut k0, mut ka, mut kb) = (C64::from(0.0), C64::from(0.0), C64::from(0.0));
    let mut last = 0.0;
    for n in 0..truncation {
        let e = (-I * (n as f64 + 0.5) * hw * time / basis.hbar).exp();
        let base = pf[n] * p0[n];
        k0 += e * base;
        let odd = odd_admixture(n);
        ka += -I * y * e * (combo(&odd, &pf) * p0[n] - pf[n] * combo(&odd, &p0));
        let even = even_admixture(n);
        let de = energy_shift_per_gamma(basis, n);
        kb += e * (-I * time / basis.hbar * de * base + mhw * (combo(&even, &pf) * p0[n] + pf[n] * combo(&even, &p0)));
        last = (e * base).norm();
    }
    let damping = (basis.omega * time.im).exp();
    let tail = last * damping / (1.0 - damping);
    Ok(SpectralParts { k0, k_alpha: ka, k_beta: kb, tail, truncation })
}

/// Truncated spectral propagator K0 + αKα + βKβ (first order in α, β; the
/// α² part of γ is not included).
pub fn spectral_kernel(p: &GupParams, basis: &HermiteBasis, b: &Boundary, time: C64, truncation: usize) -> Result<KernelValue> {
    let parts = spectral_parts(basis, b.q0, b.qf, time, truncation)?;
    let amp = parts.k0 + p.alpha * parts.k_alpha + p.beta * parts.k_beta;
    Ok(KernelValue::new(amp, Method::Spectral)?
        .with("truncation", json!(truncation))
        .with("n_max", json!(basis.n_max))
        .with("tail_estimate", json!(parts.tail))
        .with("time", json!([time.re, time.im]))
        .with("k0", json!([parts.k0.re, parts.k0.im]))
        .with("k_alpha", json!([parts.k_alpha.re, parts.k_alpha.im]))
        .with("k_beta", json!([parts.k_beta.re, parts.k_beta.im]))
        .with("order", json!("alpha, beta (alpha^2 dropped)")))
}

/// The undeformed propagator resummed with the m = n = 0 Mehler formula.
pub fn mehler_kernel(basis: &HermiteBasis, q0: f64, qf: f64, time: C64) -> Result<C64> {
    let l = basis.length();
    let (x, y) = (qf / l, q0 / l);
    let z = (-I * basis.omega * time).exp();
    let sum = mehler_closed(0, 0, z * 0.5, x, y)?;
    Ok(sum * z.sqrt() * (-(x * x + y * y) / 2.0).exp() / (PI.sqrt() * l))
}

/// Closed forms of the resummed first-order corrections. `m1` carries the
/// sign that reproduces the spectral sum; `m1_printed` is the opposite sign.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TildeFactors {
    /// J̃ = 1 + β·j_beta.
    pub j: C64,
    pub j_beta: C64,
    pub m1: C64,
    pub m1_printed: C64,
    pub m2: C64,
    pub n1: C64,
    pub n2: C64,
}

impl TildeFactors {
    /// Coefficient of α in the bracket: (i/mωħ)(mωħ/2)^{3/2}(M̃1 + M̃2).
    pub fn alpha_slope(&self, basis: &HermiteBasis) -> C64 {
        I * alpha_coupling(basis) * (self.m1 + self.m2)
    }

    /// Coefficient of β in the bracket: j_beta + mħω(Ñ1 + Ñ2).
    pub fn beta_slope(&self, basis: &HermiteBasis) -> C64 {
        self.j_beta + basis.mass * basis.hbar * basis.omega * (self.n1 + self.n2)
    }
}

pub fn tilde_factors(p: &GupParams, basis: &HermiteBasis, b: &Boundary, time: C64) -> Result<TildeFactors> {
    check_caustic_complex(basis.omega, time)?;
    let (m, w, h) = (basis.mass, basis.omega, basis.hbar);
    let (q0, qf) = (b.q0, b.qf);
    let x = time * w;
    let (s, c) = (x.sin(), x.cos());
    let (s2, c2, s3, c3) = ((x * 2.0).sin(), (x * 2.0).cos(), (x * 3.0).sin(), (x * 3.0).cos());
    let sq = q0 * q0 + qf * qf;
    let pq = q0 * qf;
    let mw = m * w;

    let j_beta = -I * 3.0 * m * w * w * time / (8.0 * h * s.powi(4))
        * (-I * 3.0 * h * mw * sq * s2 + (sq - c * 2.0 * pq).powi(2) * (mw * mw) + I * 4.0 * h * mw * s * (c2 + 2.0) * pq
            - h * h * s * s * (c2 + 2.0));

    let m1_printed = (mw / (2.0 * h)).sqrt() / 3.0 * (x * 1.5).sin() / (h * s * s * (x * 0.5).sin())
        * (q0 - qf)
        * (-mw * (q0 * q0 + 4.0 * pq + qf * qf) + c * 2.0 * mw * (q0 * q0 + pq + qf * qf) - I * 3.0 * h * s);
    let half = x * 0.5;
    let m2 = -(3.0 * 2f64.sqrt() / (8.0 * h)) * (mw / h).sqrt() * (q0 - qf)
        / (half.sin().powi(2) * half.cos().powi(2))
        * (-I * h * s2 + mw * (sq - c * 2.0 * pq) - I * h * s);

    let n1 = -I / (8.0 * h * h * s.powi(3))
        * (-(c2 + 3.0) * 4.0 * mw * mw * pq * sq + (c3 - c) * 3.0 * h * h
            + c * 4.0 * mw * (mw * (q0.powi(4) + 6.0 * pq * pq + qf.powi(4)) + I * 12.0 * h * pq * s)
            - I * 3.0 * h * mw * sq * (s * 5.0 + s3));
    let n2 = -I * c / (16.0 * h * h * s.powi(3))
        * (12.0 * mw * mw * pq * pq - (1.0 - c2) * 3.0 * h * h
            + 2.0 * mw
                * (c2 * mw * (q0.powi(4) + qf.powi(4)) - c * 4.0 * mw * pq * sq - I * 6.0 * h * s * (c * sq - 2.0 * pq)));

    Ok(TildeFactors {
        j: 1.0 + p.beta * j_beta,
        j_beta,
        m1: -m1_printed,
        m1_printed,
        m2,
        n1,
        n2,
    })
}

/// √(mω/2πiħ sin ωT) e^{(i/ħ)S₀} [J̃ + iαY(M̃1 + M̃2) + βmħω(Ñ1 + Ñ2)].
pub fn tilde_kernel(p: &GupParams, basis: &HermiteBasis, b: &Boundary, time: C64) -> Result<KernelValue> {
    let tf = tilde_factors(p, basis, b, time)?;
    let (m, w, h) = (basis.mass, basis.omega, basis.hbar);
    let x = time * w;
    let s0 = (x.cos() * (b.q0 * b.q0 + b.qf * b.qf) - 2.0 * b.q0 * b.qf) * (m * w / 2.0) / x.sin();
    let params = GupParams { mass: m, hbar: h, ..*p };
    let k0 = ho_prefactor(w, time, &params) * (I * s0 / h).exp();
    let bracket = tf.j
        + p.alpha * I * alpha_coupling(basis) * (tf.m1 + tf.m2)
        + p.beta * m * h * w * (tf.n1 + tf.n2);
    Ok(KernelValue::new(k0 * bracket, Method::Spectral)?
        .with("route", json!("tilde"))
        .with("time", json!([time.re, time.im])))
}
