use crate::error::{GupError, Result};

/// Sampled solution of an initial-value problem.
#[derive(Debug, Clone, PartialEq)]
pub struct OdePath {
    pub t: Vec<f64>,
    pub y: Vec<Vec<f64>>,
}

impl OdePath {
    pub fn last(&self) -> &[f64] {
        self.y.last().expect("path has at least the initial state")
    }
}

/// Classical fixed-step fourth-order Runge–Kutta. The derivative callback
/// writes dy/dt into its third argument and may itself fail.
pub fn rk4_integrate<F>(mut f: F, y0: &[f64], t0: f64, t1: f64, steps: usize) -> Result<OdePath>
where
    F: FnMut(f64, &[f64], &mut [f64]) -> Result<()>,
{
    if steps < 1 {
        return Err(GupError::Domain("rk4 needs at least one step".into()));
    }
    let dim = y0.len();
    let h = (t1 - t0) / steps as f64;
    let mut eval = |t: f64, y: &[f64], out: &mut [f64]| -> Result<()> {
        f(t, y, out)?;
        if out.iter().any(|v| !v.is_finite()) {
            return Err(GupError::Numeric(format!("non-finite derivative at t = {t}")));
        }
        Ok(())
    };
    let mut path = OdePath { t: Vec::with_capacity(steps + 1), y: Vec::with_capacity(steps + 1) };
    let mut y = y0.to_vec();
    let (mut k1, mut k2, mut k3, mut k4, mut tmp) =
        (vec![0.0; dim], vec![0.0; dim], vec![0.0; dim], vec![0.0; dim], vec![0.0; dim]);
    path.t.push(t0);
    path.y.push(y.clone());
    for s in 0..steps {
        let t = t0 + s as f64 * h;
        eval(t, &y, &mut k1)?;
        for i in 0..dim {
            tmp[i] = y[i] + 0.5 * h * k1[i];
        }
        eval(t + 0.5 * h, &tmp, &mut k2)?;
        for i in 0..dim {
            tmp[i] = y[i] + 0.5 * h * k2[i];
        }
        eval(t + 0.5 * h, &tmp, &mut k3)?;
        for i in 0..dim {
            tmp[i] = y[i] + h * k3[i];
        }
        eval(t + h, &tmp, &mut k4)?;
        for i in 0..dim {
            y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
        path.t.push(if s + 1 == steps { t1 } else { t0 + (s + 1) as f64 * h });
        path.y.push(y.clone());
    }
    Ok(path)
}
