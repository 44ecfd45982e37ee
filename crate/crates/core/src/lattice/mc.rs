//! Monte Carlo reweighting of Euclidean Brownian bridges.
//!
//! Paths are drawn exactly from the undeformed free bridge. Each link
//! carries the grade-two weight of the deformed slice, and the potential
//! enters as exp(−Σ τV/ħ). The reported mean is the ratio
//! E[W·W_V]/E[W_V], which is the deformed kernel over the undeformed one
//! with the same potential.

use num_complex::Complex64 as C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::Serialize;

use super::slice::{euclidean_link_weight, SliceConfig};
use crate::classical::{Boundary, Potential};
use crate::error::{GupError, Result};
use crate::params::GupParams;

pub const MC_BATCHES: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct McEstimate {
    pub mean: C64,
    /// Standard deviation of the batch ratios over √batches.
    pub std_error: f64,
    pub n_samples: usize,
    pub seed: u64,
}

struct BatchSums {
    num: C64,
    den: f64,
}

fn run_batch(
    b: &Boundary,
    cfg: &SliceConfig,
    p: &GupParams,
    potential: &dyn Potential,
    samples: usize,
    seed: u64,
    stream: u64,
) -> Result<BatchSums> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    let n = cfg.n_slices;
    let var_step = p.hbar * cfg.tau / p.mass;
    let kin_coeff = (2.0 * p.beta - 8.0 * p.alpha * p.alpha) * p.mass * p.mass;
    let (mut num, mut den) = (C64::from(0.0), 0.0);
    for _ in 0..samples {
        let mut q = b.q0;
        let mut w = C64::from(1.0);
        let mut action_v = 0.0;
        for j in 0..n {
            action_v += cfg.tau * potential.value(q);
            let left = (n - j) as f64;
            let next = if j + 1 == n {
                b.qf
            } else {
                let z: f64 = rng.sample(StandardNormal);
                q + (b.qf - q) / left + (var_step * (left - 1.0) / left).sqrt() * z
            };
            let dq = next - q;
            let v = dq / cfg.tau;
            if 1.0 + kin_coeff * v * v <= 0.0 {
                return Err(GupError::Stability(format!(
                    "Euclidean kinetic factor non-positive at link velocity {v}"
                )));
            }
            // The grade-two weight is a polynomial and may dip below zero on
            // far-tail links; it stays an unbiased integrand.
            w *= euclidean_link_weight(dq, cfg.tau, p);
            q = next;
        }
        let wv = (-action_v / p.hbar).exp();
        num += w * wv;
        den += wv;
    }
    Ok(BatchSums { num, den })
}

/// Reweighted bridge estimate of K_deformed/K_undeformed in Euclidean time
/// n_slices·τ. Batches run on independent ChaCha streams in parallel and are
/// reduced in batch order, so a fixed seed gives bit-identical output at any
/// thread count.
pub fn euclidean_mc_kernel(
    b: &Boundary,
    cfg: &SliceConfig,
    p: &GupParams,
    potential: &dyn Potential,
    n_samples: usize,
    seed: u64,
) -> Result<McEstimate> {
    if cfg.n_slices == 0 || !(cfg.tau > 0.0) {
        return Err(GupError::Domain("need n_slices >= 1 and tau > 0".into()));
    }
    if n_samples < MC_BATCHES {
        return Err(GupError::Domain(format!("need at least {MC_BATCHES} samples")));
    }
    if p.gamma() < 0.0 {
        return Err(GupError::Stability(format!(
            "quartic coefficient gamma = {} < 0 leaves the Euclidean weight unbounded",
            p.gamma()
        )));
    }
    let per = n_samples / MC_BATCHES;
    let extra = n_samples % MC_BATCHES;
    let batches: Vec<BatchSums> = (0..MC_BATCHES)
        .into_par_iter()
        .map(|k| run_batch(b, cfg, p, potential, per + usize::from(k < extra), seed, k as u64))
        .collect::<Result<_>>()?;
    let (mut num, mut den) = (C64::from(0.0), 0.0);
    for s in &batches {
        num += s.num;
        den += s.den;
    }
    if !(den > 0.0) {
        return Err(GupError::Numeric("potential weight underflowed on every path".into()));
    }
    let ratios: Vec<C64> = batches.iter().map(|s| s.num / s.den).collect();
    let mean_r: C64 = ratios.iter().sum::<C64>() / MC_BATCHES as f64;
    let var = ratios.iter().map(|r| (r - mean_r).norm_sqr()).sum::<f64>() / (MC_BATCHES - 1) as f64;
    Ok(McEstimate { mean: num / den, std_error: (var / MC_BATCHES as f64).sqrt(), n_samples, seed })
}

/// First-order free-particle prediction 1 + β(−3mħ/τ + 6m²Δq²/τ² − m³Δq⁴/(ħτ³))
/// for total Euclidean time τ.
pub fn free_beta_prediction(dq: f64, tau: f64, p: &GupParams) -> f64 {
    let (m, h) = (p.mass, p.hbar);
    1.0 + p.beta * (-3.0 * m * h / tau + 6.0 * m * m * dq * dq / (tau * tau) - m.powi(3) * dq.powi(4) / (h * tau.powi(3)))
}
