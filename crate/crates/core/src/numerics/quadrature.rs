use serde::{Deserialize, Serialize};

use crate::error::{GupError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum QuadratureKind {
    /// ∫₋₁¹ f(x) dx.
    Legendre,
    /// ∫ e^{−x²} f(x) dx over the real line.
    Hermite,
}

/// Gauss nodes (strictly increasing) and weights for one weight function.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuadratureRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub kind: QuadratureKind,
}

impl QuadratureRule {
    /// Σ wᵢ f(xᵢ) on the rule's native domain and weight.
    pub fn integrate<F: FnMut(f64) -> f64>(&self, mut f: F) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&x, &w)| w * f(x)).sum()
    }

    /// ∫ₐᵇ f for a Legendre rule mapped affinely onto [a, b].
    pub fn integrate_interval<F: FnMut(f64) -> f64>(&self, a: f64, b: f64, mut f: F) -> f64 {
        debug_assert_eq!(self.kind, QuadratureKind::Legendre);
        let (c, h) = (0.5 * (a + b), 0.5 * (b - a));
        h * self.integrate(|x| f(c + h * x))
    }

    /// Nodes and weights mapped onto [a, b] (Legendre rules only).
    pub fn mapped(&self, a: f64, b: f64) -> (Vec<f64>, Vec<f64>) {
        let (c, h) = (0.5 * (a + b), 0.5 * (b - a));
        (
            self.nodes.iter().map(|x| c + h * x).collect(),
            self.weights.iter().map(|w| h * w).collect(),
        )
    }
}

pub const MIN_ORDER: usize = 2;
pub const MAX_ORDER: usize = 256;

/// Gauss–Legendre or Gauss–Hermite rule by Newton iteration on the
/// three-term recurrence of the orthogonal polynomials.
pub fn gauss_rule(kind: QuadratureKind, order: usize) -> Result<QuadratureRule> {
    if !(MIN_ORDER..=MAX_ORDER).contains(&order) {
        return Err(GupError::Domain(format!(
            "quadrature order {order} outside [{MIN_ORDER}, {MAX_ORDER}]"
        )));
    }
    let (mut nodes, mut weights) = match kind {
        QuadratureKind::Legendre => legendre(order),
        QuadratureKind::Hermite => hermite(order)?,
    };
    let mut idx: Vec<usize> = (0..order).collect();
    idx.sort_by(|&a, &b| nodes[a].total_cmp(&nodes[b]));
    nodes = idx.iter().map(|&i| nodes[i]).collect();
    weights = idx.iter().map(|&i| weights[i]).collect();
    Ok(QuadratureRule { nodes, weights, kind })
}

fn legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    let m = (n + 1) / 2;
    for i in 0..m {
        let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut pp;
        loop {
            let (mut p1, mut p2) = (1.0, 0.0);
            for j in 0..n {
                let p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j as f64 + 1.0) * z * p2 - j as f64 * p3) / (j as f64 + 1.0);
            }
            pp = n as f64 * (z * p1 - p2) / (z * z - 1.0);
            let z1 = z;
            z = z1 - p1 / pp;
            if (z - z1).abs() <= 1e-15 {
                break;
            }
        }
        // Recompute the derivative at the converged node for the weight.
        let (mut p1, mut p2) = (1.0, 0.0);
        for j in 0..n {
            let p3 = p2;
            p2 = p1;
            p1 = ((2.0 * j as f64 + 1.0) * z * p2 - j as f64 * p3) / (j as f64 + 1.0);
        }
        pp = n as f64 * (z * p1 - p2) / (z * z - 1.0);
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
        w[n - 1 - i] = w[i];
    }
    (x, w)
}

/// Orthonormal Hermite recurrence at z: returns (p_n, p_{n-1}).
fn hermite_pair(n: usize, z: f64) -> (f64, f64) {
    let pim4 = std::f64::consts::PI.powf(-0.25);
    let (mut p1, mut p2) = (pim4, 0.0);
    for j in 0..n {
        let p3 = p2;
        p2 = p1;
        let jf = j as f64 + 1.0;
        p1 = z * (2.0 / jf).sqrt() * p2 - ((jf - 1.0) / jf).sqrt() * p3;
    }
    (p1, p2)
}

/// Number of eigenvalues below `x` of the symmetric tridiagonal Jacobi
/// matrix of the Hermite recurrence (zero diagonal, off-diagonal √(k/2)).
fn hermite_sturm_count(n: usize, x: f64) -> usize {
    let mut count = 0;
    let mut d = -x;
    if d < 0.0 {
        count += 1;
    }
    for k in 1..n {
        let b2 = k as f64 / 2.0;
        let prev = if d == 0.0 { f64::EPSILON } else { d };
        d = -x - b2 / prev;
        if d < 0.0 {
            count += 1;
        }
    }
    count
}

fn hermite(n: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    let nf = n as f64;
    let bound = (2.0 * nf + 1.0).sqrt() + 1.0;
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    for (i, xi) in x.iter_mut().enumerate() {
        // The i-th root is the unique x with exactly i eigenvalues below it
        // and i + 1 at or below it: bisect on the Sturm count.
        let (mut lo, mut hi) = (-bound, bound);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if hermite_sturm_count(n, mid) > i {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        let mut z = 0.5 * (lo + hi);
        for _ in 0..3 {
            let (p1, p2) = hermite_pair(n, z);
            let pp = (2.0 * nf).sqrt() * p2;
            let step = p1 / pp;
            if step.is_finite() && step.abs() < (hi - lo).max(1e-14) {
                z -= step;
            }
        }
        *xi = z;
    }
    for (xi, wi) in x.iter().zip(w.iter_mut()) {
        let (_, p2) = hermite_pair(n, *xi);
        let pp = (2.0 * nf).sqrt() * p2;
        *wi = 2.0 / (pp * pp);
    }
    if w.iter().any(|v| !v.is_finite()) {
        return Err(GupError::NoConvergence(format!("Gauss-Hermite weights of order {n}")));
    }
    Ok((x, w))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn two_point_legendre() {
        let r = gauss_rule(QuadratureKind::Legendre, 2).unwrap();
        let s = 1.0 / 3f64.sqrt();
        assert!((r.nodes[0] + s).abs() < 1e-15 && (r.nodes[1] - s).abs() < 1e-15);
        assert!((r.weights[0] - 1.0).abs() < 1e-15 && (r.weights[1] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn x_squared_on_unit_interval() {
        let r = gauss_rule(QuadratureKind::Legendre, 5).unwrap();
        assert!((r.integrate_interval(0.0, 1.0, |x| x * x) - 1.0 / 3.0).abs() < 1e-14);
    }

    #[test]
    fn hermite_fourth_moment() {
        let r = gauss_rule(QuadratureKind::Hermite, 20).unwrap();
        let sp = std::f64::consts::PI.sqrt();
        assert!((r.integrate(|x| x.powi(4)) - 0.75 * sp).abs() < 1e-12);
    }

    #[test]
    fn weight_sums_and_ordering() {
        let sp = std::f64::consts::PI.sqrt();
        for order in [2, 3, 7, 16, 64, 128, 200, 256] {
            let l = gauss_rule(QuadratureKind::Legendre, order).unwrap();
            assert!((l.weights.iter().sum::<f64>() - 2.0).abs() < 1e-13, "legendre {order}");
            assert!(l.nodes.windows(2).all(|w| w[0] < w[1]));
            let h = gauss_rule(QuadratureKind::Hermite, order).unwrap();
            assert!((h.weights.iter().sum::<f64>() - sp).abs() < 1e-13, "hermite {order}");
            assert!(h.nodes.windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn order_range() {
        assert!(gauss_rule(QuadratureKind::Legendre, 1).is_err());
        assert!(gauss_rule(QuadratureKind::Hermite, 257).is_err());
    }

    fn hermite_moment(k: usize) -> f64 {
        // ∫ e^{-x²} x^k = Γ((k+1)/2) for even k, 0 for odd k.
        if k % 2 == 1 {
            return 0.0;
        }
        let mut v = std::f64::consts::PI.sqrt();
        for j in (1..k).step_by(2) {
            v *= j as f64 / 2.0;
        }
        v
    }

    proptest! {
        #[test]
        fn legendre_exactness(order in 2usize..30, coeffs in prop::collection::vec(-1.0f64..1.0, 1..60)) {
            let deg = (2 * order - 1).min(coeffs.len() - 1);
            let r = gauss_rule(QuadratureKind::Legendre, order).unwrap();
            let got = r.integrate(|x| (0..=deg).map(|k| coeffs[k] * x.powi(k as i32)).sum());
            let exact: f64 = (0..=deg).filter(|k| k % 2 == 0).map(|k| coeffs[k] * 2.0 / (k as f64 + 1.0)).sum();
            prop_assert!((got - exact).abs() < 1e-12);
        }

        #[test]
        fn hermite_exactness(order in 2usize..16, coeffs in prop::collection::vec(-1.0f64..1.0, 1..32)) {
            let deg = (2 * order - 1).min(coeffs.len() - 1);
            let r = gauss_rule(QuadratureKind::Hermite, order).unwrap();
            let got = r.integrate(|x| (0..=deg).map(|k| coeffs[k] * x.powi(k as i32)).sum());
            let exact: f64 = (0..=deg).map(|k| coeffs[k] * hermite_moment(k)).sum();
            let scale: f64 = (0..=deg).map(|k| coeffs[k].abs() * hermite_moment(k + k % 2)).sum::<f64>().max(1.0);
            prop_assert!((got - exact).abs() < 1e-12 * scale);
        }
    }
}
