//! Physicists' Hermite polynomials and oscillator eigenfunctions.

use num_complex::Complex64 as C64;
use serde::Serialize;

use crate::error::{GupError, Result};

/// Oscillator basis {φ_n}, n ≤ n_max.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HermiteBasis {
    pub mass: f64,
    pub omega: f64,
    pub hbar: f64,
    pub n_max: usize,
}

pub const MIN_BASIS: usize = 8;

impl HermiteBasis {
    pub fn new(mass: f64, omega: f64, hbar: f64, n_max: usize) -> Result<Self> {
        if n_max < MIN_BASIS {
            return Err(GupError::Domain(format!("n_max = {n_max} is below {MIN_BASIS}")));
        }
        if !(mass > 0.0 && omega > 0.0 && hbar > 0.0) {
            return Err(GupError::Domain("mass, omega and hbar must be positive".into()));
        }
        Ok(HermiteBasis { mass, omega, hbar, n_max })
    }

    /// Natural units m = ω = ħ = 1.
    pub fn natural(n_max: usize) -> Result<Self> {
        Self::new(1.0, 1.0, 1.0, n_max)
    }

    /// Length scale √(ħ/mω).
    pub fn length(&self) -> f64 {
        (self.hbar / (self.mass * self.omega)).sqrt()
    }

    /// Momentum scale √(mħω/2) of the ladder representation of p₀.
    pub fn momentum(&self) -> f64 {
        (0.5 * self.mass * self.hbar * self.omega).sqrt()
    }

    /// φ_0 … φ_count−1 at position q.
    pub fn phis(&self, q: f64, count: usize) -> Vec<f64> {
        let x = q / self.length();
        let scale = self.length().powf(-0.5);
        normalized_hermite_functions(x, count).into_iter().map(|v| v * scale).collect()
    }
}

/// H_n(x) by the recurrence H_{n+1} = 2xH_n − 2nH_{n−1}.
pub fn hermite_poly(n: usize, x: f64) -> f64 {
    let (mut h0, mut h1) = (1.0, 2.0 * x);
    if n == 0 {
        return h0;
    }
    for k in 1..n {
        (h0, h1) = (h1, 2.0 * x * h1 - 2.0 * k as f64 * h0);
    }
    h1
}

pub fn hermite_poly_c(n: usize, z: C64) -> C64 {
    let (mut h0, mut h1) = (C64::from(1.0), z * 2.0);
    if n == 0 {
        return h0;
    }
    for k in 1..n {
        (h0, h1) = (h1, z * 2.0 * h1 - h0 * (2.0 * k as f64));
    }
    h1
}

/// h_n(x) = H_n(x)/√(2ⁿn!), which stays O(e^{x²/2}) for all n.
pub fn normalized_hermite(x: f64, count: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(count);
    if count == 0 {
        return out;
    }
    out.push(1.0);
    if count > 1 {
        out.push(std::f64::consts::SQRT_2 * x);
    }
    for n in 1..count.saturating_sub(1) {
        let next = ((2.0 / (n as f64 + 1.0)).sqrt() * x * out[n]) - (n as f64 / (n as f64 + 1.0)).sqrt() * out[n - 1];
        out.push(next);
    }
    out
}

/// Dimensionless eigenfunctions π^{−1/4} h_n(x) e^{−x²/2}, built by the
/// normalized recurrence so that no factorial is ever formed.
pub fn normalized_hermite_functions(x: f64, count: usize) -> Vec<f64> {
    let g = std::f64::consts::PI.powf(-0.25) * (-0.5 * x * x).exp();
    let mut out = Vec::with_capacity(count);
    if count == 0 {
        return out;
    }
    out.push(g);
    if count > 1 {
        out.push(std::f64::consts::SQRT_2 * x * g);
    }
    for n in 1..count.saturating_sub(1) {
        let next = (2.0 / (n as f64 + 1.0)).sqrt() * x * out[n] - (n as f64 / (n as f64 + 1.0)).sqrt() * out[n - 1];
        out.push(next);
    }
    out
}

/// (2ⁿn!)^{−1/2}(mω/πħ)^{1/4} H_n(√(mω/ħ) q) e^{−mωq²/2ħ}.
pub fn phi_n(basis: &HermiteBasis, n: usize, q: f64) -> Result<f64> {
    if n > basis.n_max {
        return Err(GupError::Domain(format!("n = {n} exceeds n_max = {}", basis.n_max)));
    }
    Ok(basis.phis(q, n + 1)[n])
}

/// ln(n!) by direct summation (exact enough for the magnitudes used here).
pub fn ln_factorial(n: usize) -> f64 {
    (2..=n).map(|k| (k as f64).ln()).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{gauss_rule, QuadratureKind};
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use num_traits::ToPrimitive;

    #[test]
    fn small_values() {
        assert_eq!(hermite_poly(0, 0.7), 1.0);
        assert_eq!(hermite_poly(1, 0.7), 1.4);
        assert_eq!(hermite_poly(2, 0.0), -2.0);
    }

    #[test]
    fn h10_against_exact_rationals() {
        let x = BigRational::new(BigInt::from(13), BigInt::from(10));
        let two = BigRational::from_integer(BigInt::from(2));
        let (mut h0, mut h1) = (BigRational::from_integer(BigInt::from(1)), &two * &x);
        for k in 1..10 {
            let next = &two * &x * &h1 - &two * BigRational::from_integer(BigInt::from(k)) * &h0;
            h0 = h1;
            h1 = next;
        }
        let exact = h1.to_f64().unwrap();
        assert!((hermite_poly(10, 1.3) - exact).abs() < 1e-12 * exact.abs());
    }

    #[test]
    fn ground_state_and_parity() {
        let b = HermiteBasis::new(2.0, 1.5, 0.7, 20).unwrap();
        let want = (2.0 * 1.5 / (std::f64::consts::PI * 0.7)).powf(0.25);
        assert!((phi_n(&b, 0, 0.0).unwrap() - want).abs() < 1e-15);
        for n in 0..=20 {
            for q in [0.1, 0.6, 1.7] {
                let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
                assert!((phi_n(&b, n, -q).unwrap() - sign * phi_n(&b, n, q).unwrap()).abs() < 1e-14);
            }
        }
        assert!(phi_n(&b, 21, 0.0).is_err());
    }

    #[test]
    fn matches_explicit_normalization() {
        let b = HermiteBasis::natural(12).unwrap();
        for n in 0..=12 {
            let q = 0.83;
            let direct = std::f64::consts::PI.powf(-0.25) * hermite_poly(n, q) * (-0.5 * q * q).exp()
                / (2f64.powi(n as i32) * (1..=n).map(|k| k as f64).product::<f64>()).sqrt();
            assert!((phi_n(&b, n, q).unwrap() - direct).abs() < 1e-13);
        }
    }

    #[test]
    fn orthonormal_gram_matrix() {
        let b = HermiteBasis::new(1.3, 0.8, 1.1, 40).unwrap();
        let rule = gauss_rule(QuadratureKind::Hermite, 60).unwrap();
        // ∫φ_mφ_n dq with q = L x and the weight e^{−x²} divided out.
        let l = b.length();
        let mut worst: f64 = 0.0;
        let tables: Vec<Vec<f64>> = rule.nodes.iter().map(|&x| b.phis(l * x, 21)).collect();
        for m in 0..=20 {
            for n in 0..=20 {
                let s: f64 = rule
                    .nodes
                    .iter()
                    .zip(&rule.weights)
                    .zip(&tables)
                    .map(|((&x, &w), t)| w * (x * x).exp() * t[m] * t[n] * l)
                    .sum();
                worst = worst.max((s - if m == n { 1.0 } else { 0.0 }).abs());
            }
        }
        assert!(worst < 1e-10, "{worst}");
    }
}
