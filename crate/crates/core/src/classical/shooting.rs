//! Shooting oracle for the exact Euler–Lagrange equation
//! q̈ (1 + 6αmq̇ + 48α²m²q̇² − 12βm²q̇²) = −V′(q)/m.

use super::trajectory::{Boundary, Grid, Trajectory};
use super::Potential;
use crate::error::{GupError, Result};
use crate::numerics::rk4_integrate;
use crate::params::GupParams;

pub const RK4_STEPS: usize = 2000;
pub const MAX_BISECTIONS: usize = 50;
const MAX_EXPANSIONS: usize = 40;
/// The equation is treated as singular once its velocity bracket drops
/// below this.
const SINGULAR_FACTOR: f64 = 1e-8;

fn integrate(b: &Boundary, p: &GupParams, potential: &dyn Potential, v0: f64) -> Result<Grid> {
    let m = p.mass;
    let rhs = |_t: f64, y: &[f64], out: &mut [f64]| -> Result<()> {
        let f = p.eom_factor(y[1]);
        if f.abs() < SINGULAR_FACTOR || f < 0.0 {
            return Err(GupError::SingularDynamics(format!(
                "velocity {} makes the kinetic bracket {f:e}",
                y[1]
            )));
        }
        out[0] = y[1];
        out[1] = -potential.gradient(y[0]) / (m * f);
        Ok(())
    };
    let path = rk4_integrate(rhs, &[b.q0, v0], 0.0, b.t, RK4_STEPS)?;
    let mut g = Grid { t: path.t, q: Vec::new(), v: Vec::new(), a: Vec::new() };
    for y in &path.y {
        g.q.push(y[0]);
        g.v.push(y[1]);
        g.a.push(-potential.gradient(y[0]) / (m * p.eom_factor(y[1])));
    }
    Ok(g)
}

fn miss(b: &Boundary, p: &GupParams, potential: &dyn Potential, v0: f64) -> Result<f64> {
    Ok(integrate(b, p, potential, v0)?.q.last().copied().unwrap_or(f64::NAN) - b.qf)
}

/// Solves the two-point problem by bisection on the initial velocity.
/// The bracket grows outward from the straight-line velocity until the
/// endpoint miss changes sign.
pub fn bvp_shoot(b: &Boundary, p: &GupParams, potential: &dyn Potential) -> Result<Trajectory> {
    let tol = 1e-10 * b.qf.abs().max(1.0);
    let guess = b.mean_velocity();
    let mut width = 0.1 * guess.abs().max(1.0 / b.t);
    let mut lo = guess - width;
    let mut hi = guess + width;
    let mut glo = miss(b, p, potential, lo)?;
    let mut ghi = miss(b, p, potential, hi)?;
    let mut expansions = 0;
    while glo * ghi > 0.0 {
        if expansions >= MAX_EXPANSIONS {
            return Err(GupError::NoConvergence(format!(
                "no sign change of the endpoint miss on [{lo}, {hi}]"
            )));
        }
        width *= 2.0;
        lo = guess - width;
        hi = guess + width;
        glo = miss(b, p, potential, lo)?;
        ghi = miss(b, p, potential, hi)?;
        expansions += 1;
    }
    let mut best = if glo.abs() < ghi.abs() { (lo, glo) } else { (hi, ghi) };
    for _ in 0..MAX_BISECTIONS {
        if best.1.abs() < tol {
            break;
        }
        let mid = 0.5 * (lo + hi);
        let gm = miss(b, p, potential, mid)?;
        if gm.abs() < best.1.abs() {
            best = (mid, gm);
        }
        if (gm < 0.0) == (glo < 0.0) {
            lo = mid;
            glo = gm;
        } else {
            hi = mid;
        }
    }
    // Bisection may stall on the last few ulps; finish with secant steps.
    let (mut v_prev, mut g_prev) = (lo, glo);
    for _ in 0..8 {
        if best.1.abs() < tol || best.1 == g_prev {
            break;
        }
        let v = best.0 - best.1 * (best.0 - v_prev) / (best.1 - g_prev);
        let g = miss(b, p, potential, v)?;
        (v_prev, g_prev) = best;
        best = (v, g);
    }
    if best.1.abs() >= tol {
        return Err(GupError::NoConvergence(format!(
            "endpoint miss {:e} exceeds {tol:e}",
            best.1.abs()
        )));
    }
    Ok(Trajectory::from_grid(*b, integrate(b, p, potential, best.0)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classical::{free_trajectory, ho_trajectory, Free, Harmonic};

    #[test]
    fn oscillator_self_check() {
        let p = GupParams::natural(0.0, 0.0);
        let b = Boundary::new(0.3, 0.8, 1.0, 1.0).unwrap();
        let shot = bvp_shoot(&b, &p, &Harmonic::new(1.0, 1.0)).unwrap();
        let exact = ho_trajectory(&b, &p).unwrap();
        assert!(shot.sup_distance(&exact, 997) < 1e-9);
    }

    #[test]
    fn free_particle_is_straight() {
        let p = GupParams::natural(0.01, 0.001);
        let b = Boundary::free(0.0, 1.0, 1.0).unwrap();
        let shot = bvp_shoot(&b, &p, &Free).unwrap();
        assert!(shot.sup_distance(&free_trajectory(&b, &p).unwrap(), 500) < 1e-10);
    }

    #[test]
    fn singular_velocity_reported() {
        // β large enough that the kinetic bracket closes at v ≈ 0.29.
        let p = GupParams::natural(0.0, 1.0);
        let b = Boundary::free(0.0, 1.0, 1.0).unwrap();
        assert!(matches!(bvp_shoot(&b, &p, &Free), Err(GupError::SingularDynamics(_))));
    }
}
