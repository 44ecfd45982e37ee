//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use num_complex::Complex64 as C64;

pub type Poly = Vec<C64>;

fn binom(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

fn double_factorial_odd(k: usize) -> f64 {
    // (2k − 1)!!
    (1..=k).fold(1.0, |acc, i| acc * (2 * i - 1) as f64)
}

/// ⟨p^n⟩ as a polynomial in Δq for the complex Gaussian
/// exp[(i/ħ)(pΔq − Tp²/2m)]: p = (m/T)Δq + u with ⟨u²⟩ = −imħ/T.
pub fn gaussian_moment(n: usize, m: f64, hbar: f64, t: C64) -> Poly {
    let s2 = C64::new(0.0, -m * hbar) / t;
    let mut out = vec![C64::from(0.0); n + 1];
    for j in 0..=n {
        let r = n - j;
        if r % 2 == 1 {
            continue;
        }
        let u = s2.powi((r / 2) as i32) * double_factorial_odd(r / 2);
        out[j] = binom(n, j) * (C64::from(m) / t).powi(j as i32) * u;
    }
    out
}

pub fn add(a: &Poly, b: &Poly) -> Poly {
    let mut out = vec![C64::from(0.0); a.len().max(b.len())];
    for (i, v) in a.iter().enumerate() {
        out[i] += v;
    }
    for (i, v) in b.iter().enumerate() {
        out[i] += v;
    }
    out
}

pub fn scale(a: &Poly, s: C64) -> Poly {
    a.iter().map(|v| v * s).collect()
}

pub fn mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = vec![C64::from(0.0); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

pub fn eval(a: &Poly, x: f64) -> C64 {
    a.iter().rev().fold(C64::from(0.0), |acc, c| acc * x + c)
}

/// Relative-to-free slice integral to grade two, by order:
/// (coefficient of α, of β, of α²), each a polynomial in Δq.
/// The deformation is exp[(iT/ħm)(αp³ − γp⁴)] with γ = α²/2 + β.
pub fn slice_moment_oracle(m: f64, hbar: f64, t: C64) -> (Poly, Poly, Poly) {
    let c = C64::new(0.0, 1.0) * t / (hbar * m);
    let p3 = gaussian_moment(3, m, hbar, t);
    let p4 = gaussian_moment(4, m, hbar, t);
    let p6 = gaussian_moment(6, m, hbar, t);
    let a1 = scale(&p3, c);
    let b1 = scale(&p4, -c);
    let a2 = add(&scale(&p4, -0.5 * c), &scale(&p6, 0.5 * c * c));
    (a1, b1, a2)
}

/// Grade-two expansion of [1 + bracket]·exp[exponent], with each piece
/// given by order as a polynomial in Δq.
pub struct BracketExp {
    pub b_alpha: Poly,
    pub b_beta: Poly,
    pub b_alpha2: Poly,
    pub e_alpha: Poly,
    pub e_beta: Poly,
    pub e_alpha2: Poly,
}

impl BracketExp {
    pub fn expand(&self) -> (Poly, Poly, Poly) {
        let a1 = add(&self.b_alpha, &self.e_alpha);
        let b1 = add(&self.b_beta, &self.e_beta);
        let cross = add(&mul(&self.b_alpha, &self.e_alpha), &scale(&mul(&self.e_alpha, &self.e_alpha), C64::from(0.5)));
        let a2 = add(&add(&self.b_alpha2, &self.e_alpha2), &cross);
        (a1, b1, a2)
    }
}

pub fn max_abs_diff(a: &Poly, b: &Poly) -> f64 {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| (a.get(i).copied().unwrap_or_default() - b.get(i).copied().unwrap_or_default()).norm())
        .fold(0.0, f64::max)
}

/// Least-squares slope of log|y| against log x.
pub fn loglog_slope(x: &[f64], y: &[f64]) -> f64 {
    let lx: Vec<f64> = x.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = y.iter().map(|v| v.abs().ln()).collect();
    let n = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxy: f64 = lx.iter().zip(&ly).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = lx.iter().map(|a| (a - mx) * (a - mx)).sum();
    sxy / sxx
}
