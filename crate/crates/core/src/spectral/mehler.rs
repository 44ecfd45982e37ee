//! The extended Mehler formula
//! Σ_k tᵏ/k! H_{k+m}(x) H_{k+n}(y) in closed form and as a partial sum.

use num_complex::Complex64 as C64;

use super::hermite::{hermite_poly_c, ln_factorial, normalized_hermite};
use crate::error::{GupError, Result};

pub const MEHLER_MAX_INDEX: usize = 8;
/// Log-magnitude beyond which a partial-sum term is reported as overflow.
const LOG_OVERFLOW: f64 = 700.0;

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// (1−4t²)^{−(m+n+1)/2} exp[(4txy − 4t²(x²+y²))/(1−4t²)]
/// × Σ_{k ≤ min(m,n)} 2^{2k} k! C(m,k) C(n,k) tᵏ H_{m−k}((x−2ty)/s) H_{n−k}((y−2tx)/s),
/// with s = √(1−4t²) on the principal branch.
pub fn mehler_closed(m: usize, n: usize, t: C64, x: f64, y: f64) -> Result<C64> {
    if m > MEHLER_MAX_INDEX || n > MEHLER_MAX_INDEX {
        return Err(GupError::Domain(format!("indices ({m}, {n}) exceed {MEHLER_MAX_INDEX}")));
    }
    let four_t2 = t * t * 4.0;
    if four_t2.norm() >= 1.0 {
        return Err(GupError::ConvergenceDomain(format!("|4t^2| = {} >= 1", four_t2.norm())));
    }
    let one_minus = 1.0 - four_t2;
    let s = one_minus.sqrt();
    let pref = one_minus.powf(-((m + n + 1) as f64) / 2.0);
    let gauss = ((t * 4.0 * x * y - four_t2 * (x * x + y * y)) / one_minus).exp();
    let u = (x - t * 2.0 * y) / s;
    let v = (y - t * 2.0 * x) / s;
    let mut sum = C64::from(0.0);
    for k in 0..=m.min(n) {
        let w = 4f64.powi(k as i32) * ln_factorial(k).exp() * binomial(m, k) * binomial(n, k);
        sum += t.powi(k as i32) * w * hermite_poly_c(m - k, u) * hermite_poly_c(n - k, v);
    }
    Ok(pref * gauss * sum)
}

/// Σ_{k ≤ K} tᵏ/k! H_{k+m}(x) H_{k+n}(y). Each term is formed from
/// normalized Hermite values and a log-magnitude, so nothing overflows
/// until the term itself does.
pub fn mehler_partial(m: usize, n: usize, t: C64, x: f64, y: f64, k_max: usize) -> Result<C64> {
    let hx = normalized_hermite(x, k_max + m + 1);
    let hy = normalized_hermite(y, k_max + n + 1);
    let ln2 = std::f64::consts::LN_2;
    let (lt, arg) = (t.norm().ln(), t.arg());
    let mut sum = C64::from(0.0);
    for k in 0..=k_max {
        let (a, b) = (k + m, k + n);
        let prod = hx[a] * hy[b];
        if prod == 0.0 || (k > 0 && t.norm() == 0.0) {
            continue;
        }
        let log_mag = (if k > 0 { k as f64 * lt } else { 0.0 }) - ln_factorial(k)
            + 0.5 * (a as f64 * ln2 + ln_factorial(a) + b as f64 * ln2 + ln_factorial(b))
            + prod.abs().ln();
        if log_mag > LOG_OVERFLOW {
            return Err(GupError::Magnitude(format!(
                "term k = {k} has magnitude e^{log_mag:.0}; reduce K or |x|, |y|"
            )));
        }
        sum += C64::from_polar(log_mag.exp(), k as f64 * arg) * prod.signum();
    }
    Ok(sum)
}
