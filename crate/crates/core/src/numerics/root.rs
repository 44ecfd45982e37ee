use crate::error::{GupError, Result};

/// Bisection on a sign-changing bracket until its width is at most `tol`.
pub fn bisect_root<G: FnMut(f64) -> f64>(mut g: G, lo: f64, hi: f64, tol: f64) -> Result<f64> {
    bisect_root_fallible(|x| Ok(g(x)), lo, hi, tol, usize::MAX)
}

/// Bisection where evaluating `g` may fail; stops after `max_iter` halvings
/// (reporting no convergence) or once the bracket is narrower than `tol`.
pub fn bisect_root_fallible<G: FnMut(f64) -> Result<f64>>(
    mut g: G,
    lo: f64,
    hi: f64,
    tol: f64,
    max_iter: usize,
) -> Result<f64> {
    let (mut lo, mut hi) = if lo <= hi { (lo, hi) } else { (hi, lo) };
    let mut glo = g(lo)?;
    let ghi = g(hi)?;
    if glo == 0.0 {
        return Ok(lo);
    }
    if ghi == 0.0 {
        return Ok(hi);
    }
    if !(glo * ghi < 0.0) {
        return Err(GupError::Bracket { lo, hi });
    }
    let mut iter = 0;
    while hi - lo > tol {
        if iter >= max_iter {
            return Err(GupError::NoConvergence(format!(
                "bisection stopped after {max_iter} iterations with bracket width {:e}",
                hi - lo
            )));
        }
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let gm = g(mid)?;
        if gm == 0.0 {
            return Ok(mid);
        }
        if (gm < 0.0) == (glo < 0.0) {
            lo = mid;
            glo = gm;
        } else {
            hi = mid;
        }
        iter += 1;
    }
    Ok(0.5 * (lo + hi))
}
