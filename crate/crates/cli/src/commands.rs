//! Command dispatch. Every handler returns a JSON result or a core error.

use num_complex::Complex64 as C64;
use serde_json::{json, Value};

use gup_core::classical::{
    action_quadrature, free_action, free_trajectory, ho_action, ho_trajectory, Boundary, Free, Harmonic, Potential,
};
use gup_core::kernels::{free_kernel_at, ho_kernel_semiclassical_at, KernelValue};
use gup_core::lattice::{euclidean_mc_kernel, sliced_kernel_quadrature, SliceConfig};
use gup_core::params::{max_free_velocity, params_from_n, validate_params};
use gup_core::spectral::{diagonalize_oracle, hamiltonian_matrix, perturbative_spectrum, spectral_kernel, HermiteBasis};
use gup_core::{GupError, GupParams, Result};

use crate::checks;
use crate::config::{CheckKind, Command, MethodArg, RunConfig, System};

pub const DEFAULT_TRUNC: usize = 40;
pub const DEFAULT_KERNEL_N_MAX: usize = 64;
pub const DEFAULT_SPECTRUM_N_MAX: usize = 200;
pub const DEFAULT_LEVELS: usize = 10;
pub const DEFAULT_QUAD_SLICES: usize = 3;
pub const DEFAULT_MC_SLICES: usize = 64;

pub fn cplx(z: C64) -> Value {
    json!({ "re": z.re, "im": z.im })
}

/// The parameter set a record describes: β from --beta, else from the
/// integer link n, else zero.
pub fn params(cfg: &RunConfig) -> Result<GupParams> {
    let alpha = cfg.alpha.unwrap_or(0.0);
    let (mass, hbar) = (cfg.mass.unwrap_or(1.0), cfg.hbar.unwrap_or(1.0));
    match (cfg.beta, cfg.n) {
        (None, Some(n)) => params_from_n(alpha, n as i64, mass, hbar),
        (Some(beta), Some(n)) => {
            let want = (n as f64 + 1.0) * alpha * alpha;
            if (beta - want).abs() > 1e-12 * want.abs().max(f64::MIN_POSITIVE) {
                return Err(GupError::Inconsistent(format!("beta = {beta} but (n+1) alpha^2 = {want}")));
            }
            params_from_n(alpha, n as i64, mass, hbar)
        }
        (beta, None) => GupParams::new(alpha, beta.unwrap_or(0.0), mass, hbar),
    }
}

fn boundary(cfg: &RunConfig, system: System) -> Result<Boundary> {
    let omega = match system {
        System::Free => 0.0,
        System::Ho => cfg.omega.unwrap_or(1.0),
    };
    Boundary::new(cfg.q0.unwrap_or(0.0), cfg.qf.unwrap_or(1.0), cfg.t.unwrap_or(1.0), omega)
}

fn potential(system: System, p: &GupParams, omega: f64) -> Box<dyn Potential> {
    match system {
        System::Free => Box::new(Free),
        System::Ho => Box::new(Harmonic::new(p.mass, omega)),
    }
}

/// The record with defaults made explicit for the command at hand, which is
/// what the output echoes.
pub fn resolve(cmd: &Command, cfg: RunConfig) -> RunConfig {
    let mut r = cfg;
    r.alpha.get_or_insert(0.0);
    if r.n.is_none() {
        r.beta.get_or_insert(0.0);
    }
    r.mass.get_or_insert(1.0);
    r.hbar.get_or_insert(1.0);
    if !matches!(cmd, Command::Validate(_) | Command::Vmax(_) | Command::Spectrum { .. }) {
        r.q0.get_or_insert(0.0);
        r.qf.get_or_insert(1.0);
    }
    match cmd {
        Command::Action { system, .. } | Command::Kernel { system, .. } => {
            if *system == System::Ho {
                r.omega.get_or_insert(1.0);
            }
        }
        Command::Spectrum { .. } | Command::Check { .. } => {
            r.omega.get_or_insert(1.0);
        }
        _ => {}
    }
    match cmd {
        Command::Action { .. } => {
            r.t.get_or_insert(1.0);
            r.oracle.get_or_insert(false);
        }
        Command::Kernel { .. } => {
            let method = *r.method.get_or_insert(MethodArg::Semiclassical);
            if r.euclidean.is_none() {
                r.t.get_or_insert(1.0);
            }
            match method {
                MethodArg::Spectral => {
                    r.trunc.get_or_insert(DEFAULT_TRUNC);
                    r.n_max.get_or_insert(DEFAULT_KERNEL_N_MAX);
                }
                MethodArg::Lattice => {
                    if r.samples.is_some() {
                        r.slices.get_or_insert(DEFAULT_MC_SLICES);
                        r.seed.get_or_insert(0);
                    } else {
                        r.slices.get_or_insert(DEFAULT_QUAD_SLICES);
                    }
                }
                MethodArg::Semiclassical => {}
            }
        }
        Command::Spectrum { .. } => {
            r.n_max.get_or_insert(DEFAULT_SPECTRUM_N_MAX);
            r.levels.get_or_insert(DEFAULT_LEVELS);
        }
        Command::Check { which, .. } => match which {
            CheckKind::Mehler => {
                r.trunc.get_or_insert(checks::MEHLER_TRUNC);
            }
            CheckKind::KernelConsistency => {
                r.euclidean.get_or_insert(1.0);
                r.trunc.get_or_insert(DEFAULT_TRUNC);
                r.n_max.get_or_insert(DEFAULT_KERNEL_N_MAX);
            }
            _ => {}
        },
        _ => {}
    }
    r
}

pub fn run(cmd: &Command, cfg: &RunConfig) -> Result<Value> {
    match cmd {
        Command::Validate(_) => {
            let p = params(cfg)?;
            Ok(json!({ "params": p, "gamma": p.gamma(), "report": validate_params(&p) }))
        }
        Command::Vmax(_) => {
            let p = params(cfg)?;
            let v = max_free_velocity(&p)?;
            Ok(json!({ "vmax": v, "kinetic_factor_at_vmax": p.kinetic_factor(v), "report": validate_params(&p) }))
        }
        Command::Action { system, .. } => action(*system, cfg),
        Command::Kernel { system, .. } => kernel(*system, cfg),
        Command::Spectrum { .. } => spectrum(cfg),
        Command::Check { which, .. } => checks::run(*which, cfg),
    }
}

fn action(system: System, cfg: &RunConfig) -> Result<Value> {
    let p = params(cfg)?;
    let b = boundary(cfg, system)?;
    let (breakdown, traj) = match system {
        System::Free => (free_action(&b, &p)?, free_trajectory(&b, &p)?),
        System::Ho => (ho_action(&b, &p)?, ho_trajectory(&b, &p)?),
    };
    let mut out = json!({ "boundary": b, "action": breakdown, "warnings": traj.warnings });
    if cfg.oracle == Some(true) {
        let q = action_quadrature(&traj, &p, potential(system, &p, b.omega).as_ref())?;
        out["oracle"] = json!({
            "quadrature": q,
            "difference": breakdown.total - q,
        });
    }
    Ok(out)
}

fn kernel_json(k: &KernelValue) -> Value {
    json!({ "amplitude": cplx(k.amplitude), "method": k.method, "meta": k.meta })
}

fn kernel(system: System, cfg: &RunConfig) -> Result<Value> {
    let p = params(cfg)?;
    let (q0, qf) = (cfg.q0.unwrap_or(0.0), cfg.qf.unwrap_or(1.0));
    let omega = match system {
        System::Free => 0.0,
        System::Ho => cfg.omega.unwrap_or(1.0),
    };
    let time = match cfg.euclidean {
        Some(tau) if tau > 0.0 => C64::new(0.0, -tau),
        Some(tau) => return Err(GupError::Domain(format!("Euclidean time must be positive, got {tau}"))),
        None => C64::from(cfg.t.unwrap_or(1.0)),
    };
    match cfg.method.unwrap_or(MethodArg::Semiclassical) {
        MethodArg::Semiclassical => {
            let k = match system {
                System::Free => free_kernel_at(q0, qf, time, &p)?,
                System::Ho => ho_kernel_semiclassical_at(q0, qf, omega, time, &p)?,
            };
            Ok(kernel_json(&k))
        }
        MethodArg::Spectral => {
            if system == System::Free {
                return Err(GupError::Domain("the spectral route needs the oscillator (omega > 0)".into()));
            }
            let basis = HermiteBasis::new(p.mass, omega, p.hbar, cfg.n_max.unwrap_or(DEFAULT_KERNEL_N_MAX))?;
            // The spectral sum only reads the endpoints; the time is passed separately.
            let b = Boundary::new(q0, qf, time.norm(), omega)?;
            Ok(kernel_json(&spectral_kernel(&p, &basis, &b, time, cfg.trunc.unwrap_or(DEFAULT_TRUNC))?))
        }
        MethodArg::Lattice => {
            let Some(tau) = cfg.euclidean else {
                return Err(GupError::Domain("the lattice route needs --euclidean TAU".into()));
            };
            let b = Boundary::new(q0, qf, tau, omega)?;
            let pot = potential(system, &p, omega);
            match cfg.samples {
                Some(samples) => {
                    let slices = cfg.slices.unwrap_or(DEFAULT_MC_SLICES);
                    let sc = SliceConfig::euclidean(tau, slices, &p, qf - q0)?;
                    let est = euclidean_mc_kernel(&b, &sc, &p, pot.as_ref(), samples, cfg.seed.unwrap_or(0))?;
                    Ok(json!({
                        "ratio_to_undeformed": cplx(est.mean),
                        "std_error": est.std_error,
                        "n_samples": est.n_samples,
                        "seed": est.seed,
                        "slices": sc,
                    }))
                }
                None => {
                    let slices = cfg.slices.unwrap_or(DEFAULT_QUAD_SLICES);
                    let sc = SliceConfig::euclidean(tau, slices, &p, qf - q0)?;
                    Ok(kernel_json(&sliced_kernel_quadrature(&b, &sc, &p, pot.as_ref())?))
                }
            }
        }
    }
}

fn spectrum(cfg: &RunConfig) -> Result<Value> {
    let p = params(cfg)?;
    let basis = HermiteBasis::new(p.mass, cfg.omega.unwrap_or(1.0), p.hbar, cfg.n_max.unwrap_or(DEFAULT_SPECTRUM_N_MAX))?;
    let levels = cfg.levels.unwrap_or(DEFAULT_LEVELS);
    if levels == 0 || levels > basis.n_max / 2 {
        return Err(GupError::Domain(format!("levels must be in 1..={}", basis.n_max / 2)));
    }
    let pert = perturbative_spectrum(&p, &basis, levels);
    let numeric = diagonalize_oracle(&hamiltonian_matrix(&p, &basis)?)?;
    let hw = p.hbar * basis.omega;
    let rows: Vec<Value> = (0..levels)
        .map(|n| {
            let e0 = (n as f64 + 0.5) * hw;
            json!({
                "n": n,
                "perturbative": pert.energies[n],
                "numeric": numeric.energies[n],
                "shift_perturbative": pert.energies[n] - e0,
                "shift_numeric": numeric.energies[n] - e0,
            })
        })
        .collect();
    Ok(json!({ "n_max": basis.n_max, "rows": rows }))
}
