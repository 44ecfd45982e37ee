use crate::error::{GupError, Result};

/// Dense row-major square matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct SquareMatrix {
    n: usize,
    data: Vec<f64>,
}

impl SquareMatrix {
    pub fn zeros(n: usize) -> Self {
        SquareMatrix { n, data: vec![0.0; n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(GupError::Domain("matrix rows must form a square".into()));
        }
        Ok(SquareMatrix { n, data: rows.concat() })
    }

    pub fn from_diagonal(d: &[f64]) -> Self {
        let mut m = Self::zeros(d.len());
        for (i, &v) in d.iter().enumerate() {
            m[(i, i)] = v;
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self[(i, i)]).sum()
    }

    pub fn frobenius(&self) -> f64 {
        self.data.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn matmul(&self, other: &Self) -> Self {
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == 0.0 {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * other.data[k * n + j];
                }
            }
        }
        out
    }

    /// Largest |a_ij − a_ji|.
    pub fn asymmetry(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..self.n {
            for j in 0..i {
                worst = worst.max((self[(i, j)] - self[(j, i)]).abs());
            }
        }
        worst
    }

    fn off_diagonal_norm(&self) -> f64 {
        let mut s = 0.0;
        for i in 0..self.n {
            for j in 0..self.n {
                if i != j {
                    s += self[(i, j)] * self[(i, j)];
                }
            }
        }
        s.sqrt()
    }
}

impl std::ops::Index<(usize, usize)> for SquareMatrix {
    type Output = f64;
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.n + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for SquareMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.n + j]
    }
}

/// Symmetry tolerance relative to the largest entry.
const SYMMETRY_TOL: f64 = 1e-12;
/// Convergence threshold on the off-diagonal Frobenius norm relative to ‖A‖_F.
const OFF_DIAGONAL_TOL: f64 = 1e-12;
const MAX_SWEEPS: usize = 100;

/// Eigenvalues of a real symmetric matrix by cyclic Jacobi rotations,
/// returned in ascending order. Works on a private copy.
pub fn symmetric_eigen(matrix: &SquareMatrix) -> Result<Vec<f64>> {
    let n = matrix.n;
    let scale = matrix.data.iter().fold(0.0f64, |m, v| m.max(v.abs())).max(f64::MIN_POSITIVE);
    if matrix.asymmetry() > SYMMETRY_TOL * scale.max(1.0) {
        return Err(GupError::Domain(format!(
            "matrix is not symmetric (max asymmetry {:e})",
            matrix.asymmetry()
        )));
    }
    let mut a = matrix.clone();
    let norm = a.frobenius();
    let target = OFF_DIAGONAL_TOL * norm;
    let mut converged = n < 2 || a.off_diagonal_norm() <= target;
    let mut sweep = 0;
    while !converged {
        if sweep >= MAX_SWEEPS {
            return Err(GupError::NoConvergence(format!("Jacobi did not converge in {MAX_SWEEPS} sweeps")));
        }
        for p in 0..n - 1 {
            for q in p + 1..n {
                let apq = a.data[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let app = a.data[p * n + p];
                let aqq = a.data[q * n + q];
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a.data[k * n + p];
                    let akq = a.data[k * n + q];
                    a.data[k * n + p] = c * akp - s * akq;
                    a.data[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a.data[p * n + k];
                    let aqk = a.data[q * n + k];
                    a.data[p * n + k] = c * apk - s * aqk;
                    a.data[q * n + k] = s * apk + c * aqk;
                }
                a.data[p * n + q] = 0.0;
                a.data[q * n + p] = 0.0;
            }
        }
        sweep += 1;
        converged = a.off_diagonal_norm() <= target;
    }
    let mut ev: Vec<f64> = (0..n).map(|i| a[(i, i)]).collect();
    ev.sort_by(f64::total_cmp);
    Ok(ev)
}
