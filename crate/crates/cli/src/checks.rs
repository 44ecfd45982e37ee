//! The `check` suites. Each reports its measurements, the tolerance it was
//! judged against and a pass flag; a failing check is a result, not an error.

use num_complex::Complex64 as C64;
use serde_json::{json, Value};

use gup_core::algebra::{jacobi_residual, match_representation, solve_jacobi_constraints};
use gup_core::classical::{ho_trajectory, residual_sup_norm, Boundary};
use gup_core::kernels::ho_kernel_slopes_at;
use gup_core::spectral::{mehler_closed, mehler_partial, spectral_parts, tilde_factors, HermiteBasis};
use gup_core::{GupParams, Result};

use crate::commands::{cplx, params, DEFAULT_KERNEL_N_MAX, DEFAULT_TRUNC};
use crate::config::{CheckKind, RunConfig};

pub const MEHLER_TRUNC: usize = 60;
pub const MEHLER_TOL: f64 = 1e-9;
pub const EOM_SLOPE: f64 = 2.0;
pub const EOM_SLOPE_TOL: f64 = 0.1;
pub const BOUNDARY_TOL: f64 = 1e-12;
pub const GROUND_TOL: f64 = 1e-8;
pub const SLOPE_TOL: f64 = 1e-6;

/// (|t|, arg t, x, y) with |t| ≤ 0.3 and |x|, |y| ≤ 2. The first point is
/// the corner where the truncated sum converges slowest.
const MEHLER_POINTS: [(f64, f64, f64, f64); 5] = [
    (0.3, 0.0, 2.0, -2.0),
    (0.3, std::f64::consts::FRAC_PI_4, 2.0, 2.0),
    (0.2, -std::f64::consts::FRAC_PI_2, 1.0, -1.0),
    (0.15, 0.0, 0.5, 1.5),
    (0.3, std::f64::consts::PI, -1.0, 0.0),
];

pub fn run(which: CheckKind, cfg: &RunConfig) -> Result<Value> {
    match which {
        CheckKind::Jacobi => jacobi(),
        CheckKind::Mehler => mehler(cfg),
        CheckKind::EomScaling => eom_scaling(cfg),
        CheckKind::KernelConsistency => kernel_consistency(cfg),
    }
}

fn jacobi() -> Result<Value> {
    let set = solve_jacobi_constraints(&jacobi_residual())?;
    let rep = match_representation()?;
    let expected = ["alpha1=alpha2", "beta2=2*beta1+alpha1^2"];
    let constraints = set.strings();
    Ok(json!({
        "constraints": constraints,
        "representation": {
            "equations": rep.equations.strings(),
            "a": rep.a_solution.display_factored(None),
            "b": rep.b_relation(),
            "beta_at_n1": rep.beta_relation(Some(1)),
        },
        "pass": constraints == expected && rep.b_relation() == "b=(n+1)*alpha^2",
    }))
}

fn mehler(cfg: &RunConfig) -> Result<Value> {
    let k = cfg.trunc.unwrap_or(MEHLER_TRUNC);
    let mut worst = (0.0, json!(null));
    for m in 0..=4 {
        for n in 0..=4 {
            for &(r, arg, x, y) in &MEHLER_POINTS {
                let t = C64::from_polar(r, arg);
                let closed = mehler_closed(m, n, t, x, y)?;
                let partial = mehler_partial(m, n, t, x, y, k)?;
                let err = (closed - partial).norm() / closed.norm().max(1.0);
                if err >= worst.0 {
                    worst = (err, json!({ "m": m, "n": n, "t": cplx(t), "x": x, "y": y, "closed": cplx(closed), "partial": cplx(partial) }));
                }
            }
        }
    }
    Ok(json!({
        "points": 25 * MEHLER_POINTS.len(),
        "truncation": k,
        "max_rel_error": worst.0,
        "worst": worst.1,
        "tolerance": MEHLER_TOL,
        "pass": worst.0 < MEHLER_TOL,
    }))
}

fn loglog_slope(x: &[f64], y: &[f64]) -> f64 {
    let lx: Vec<f64> = x.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = y.iter().map(|v| v.ln()).collect();
    let n = lx.len() as f64;
    let (mx, my) = (lx.iter().sum::<f64>() / n, ly.iter().sum::<f64>() / n);
    let sxy: f64 = lx.iter().zip(&ly).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = lx.iter().map(|a| (a - mx) * (a - mx)).sum();
    sxy / sxx
}

fn eom_scaling(cfg: &RunConfig) -> Result<Value> {
    // A zero deformation has no residual to scale, so fall back to a base point.
    let a = cfg.alpha.filter(|&a| a != 0.0).unwrap_or(0.1);
    let bb = cfg.beta.filter(|&b| b != 0.0).unwrap_or(0.05);
    let base = params(cfg)?;
    let b = Boundary::new(cfg.q0.unwrap_or(0.0), cfg.qf.unwrap_or(1.0), cfg.t.unwrap_or(1.0), cfg.omega.unwrap_or(1.0))?;
    let eps = [1e-1, 1e-2, 1e-3];
    let mut residuals = Vec::new();
    let mut boundary_error: f64 = 0.0;
    for e in eps {
        let p = GupParams { alpha: e * a, beta: e * e * bb, n_link: None, ..base };
        let traj = ho_trajectory(&b, &p)?;
        residuals.push(residual_sup_norm(&traj, &p, 2000));
        boundary_error = boundary_error.max((traj.position(0.0) - b.q0).abs()).max((traj.position(b.t) - b.qf).abs());
    }
    let slope = loglog_slope(&eps, &residuals);
    Ok(json!({
        "base": { "alpha": a, "beta": bb },
        "boundary": b,
        "epsilon": eps,
        "residual_sup_norm": residuals,
        "slope": slope,
        "expected_slope": EOM_SLOPE,
        "slope_tolerance": EOM_SLOPE_TOL,
        "boundary_error": boundary_error,
        "pass": (slope - EOM_SLOPE).abs() <= EOM_SLOPE_TOL && boundary_error < BOUNDARY_TOL,
    }))
}

fn rel(a: C64, b: C64) -> f64 {
    (a - b).norm() / b.norm()
}

fn kernel_consistency(cfg: &RunConfig) -> Result<Value> {
    let p = params(cfg)?;
    let omega = cfg.omega.unwrap_or(1.0);
    let tau = cfg.euclidean.unwrap_or(1.0);
    let time = C64::new(0.0, -tau);
    let basis = HermiteBasis::new(p.mass, omega, p.hbar, cfg.n_max.unwrap_or(DEFAULT_KERNEL_N_MAX))?;
    let trunc = cfg.trunc.unwrap_or(DEFAULT_TRUNC);

    let ground = spectral_parts(&basis, 0.0, 0.0, time, trunc)?.k0;
    let exact = (p.mass * omega / (2.0 * std::f64::consts::PI * p.hbar * (omega * tau).sinh())).sqrt();
    let ground_err = (ground.re - exact).abs().max(ground.im.abs());

    let (q0, qf) = (cfg.q0.unwrap_or(0.0), cfg.qf.unwrap_or(1.0));
    let parts = spectral_parts(&basis, q0, qf, time, trunc)?;
    let spec = (parts.k_alpha / parts.k0, parts.k_beta / parts.k0);
    let b = Boundary::new(q0, qf, tau, omega)?;
    let tf = tilde_factors(&p.with_deformation(0.0, 0.0), &basis, &b, time)?;
    let tilde = (tf.alpha_slope(&basis), tf.beta_slope(&basis));
    let semi = ho_kernel_slopes_at(q0, qf, omega, time, &p)?;
    let errs = [rel(spec.0, tilde.0), rel(spec.1, tilde.1), rel(spec.0, semi.0), rel(spec.1, semi.1)];
    let max_err = errs.iter().cloned().fold(0.0, f64::max);
    Ok(json!({
        "tau": tau,
        "ground": { "spectral": cplx(ground), "exact": exact, "error": ground_err, "tolerance": GROUND_TOL },
        "slopes": {
            "q0": q0, "qf": qf,
            "alpha": { "spectral": cplx(spec.0), "tilde": cplx(tilde.0), "semiclassical": cplx(semi.0) },
            "beta": { "spectral": cplx(spec.1), "tilde": cplx(tilde.1), "semiclassical": cplx(semi.1) },
            "max_rel_error": max_err,
            "tolerance": SLOPE_TOL,
        },
        "pass": ground_err < GROUND_TOL && max_err < SLOPE_TOL,
    }))
}
