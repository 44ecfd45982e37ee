//! First-order perturbed oscillator states and energies, and the truncated
//! Hamiltonian matrix used to check them.

use num_complex::Complex64 as C64;
use rayon::prelude::*;
use serde::Serialize;

use super::hermite::HermiteBasis;
use crate::error::{GupError, Result};
use crate::numerics::{symmetric_eigen, SquareMatrix};
use crate::params::GupParams;

/// E_n = (n+½)ħω[1 + 3(2n²+2n+1)/(2(2n+1)) · (α²/2+β) mħω].
pub fn energy_n(p: &GupParams, basis: &HermiteBasis, n: usize) -> f64 {
    let nf = n as f64;
    let hw = basis.hbar * basis.omega;
    let ratio = 3.0 * (2.0 * nf * nf + 2.0 * nf + 1.0) / (2.0 * (2.0 * nf + 1.0));
    (nf + 0.5) * hw * (1.0 + ratio * p.gamma() * basis.mass * hw)
}

/// First-order shift of E_n per unit γ = α²/2 + β.
pub fn energy_shift_per_gamma(basis: &HermiteBasis, n: usize) -> f64 {
    let nf = n as f64;
    let hw = basis.hbar * basis.omega;
    (nf + 0.5) * hw * 3.0 * (2.0 * nf * nf + 2.0 * nf + 1.0) / (2.0 * (2.0 * nf + 1.0)) * basis.mass * hw
}

/// (mħω/2)^{3/2}/(mħω), the coupling of the odd (α) admixture.
pub fn alpha_coupling(basis: &HermiteBasis) -> f64 {
    let mhw = basis.mass * basis.hbar * basis.omega;
    (0.5 * mhw).powf(1.5) / mhw
}

/// Coefficients of the α admixture: S_n = Σ c_k φ_k over k = n−3, n−1, n+1, n+3.
pub fn odd_admixture(n: usize) -> Vec<(usize, f64)> {
    let nf = n as f64;
    let mut out = Vec::with_capacity(4);
    if n >= 3 {
        out.push((n - 3, (nf * (nf - 1.0) * (nf - 2.0)).sqrt() / 3.0));
    }
    if n >= 1 {
        out.push((n - 1, -3.0 * nf * nf.sqrt()));
    }
    out.push((n + 1, -3.0 * (nf + 1.0).powf(1.5)));
    out.push((n + 3, ((nf + 1.0) * (nf + 2.0) * (nf + 3.0)).sqrt() / 3.0));
    out
}

/// Coefficients of the γ admixture: R_n over k = n−4, n−2, n+2, n+4.
pub fn even_admixture(n: usize) -> Vec<(usize, f64)> {
    let nf = n as f64;
    let mut out = Vec::with_capacity(4);
    if n >= 4 {
        out.push((n - 4, (nf * (nf - 1.0) * (nf - 2.0) * (nf - 3.0)).sqrt() / 16.0));
    }
    if n >= 2 {
        out.push((n - 2, -(2.0 * nf - 1.0) * (nf * (nf - 1.0)).sqrt() / 4.0));
    }
    out.push((n + 2, (2.0 * nf + 3.0) * ((nf + 1.0) * (nf + 2.0)).sqrt() / 4.0));
    out.push((n + 4, -((nf + 1.0) * (nf + 2.0) * (nf + 3.0) * (nf + 4.0)).sqrt() / 16.0));
    out
}

/// Expansion coefficients of ψ_n in the φ basis:
/// ψ_n = φ_n − iαY S_n + γ mħω R_n.
pub fn psi_coefficients(p: &GupParams, basis: &HermiteBasis, n: usize) -> Result<Vec<(usize, C64)>> {
    if n + 4 > basis.n_max {
        return Err(GupError::Domain(format!(
            "psi_{n} needs phi_{} but n_max = {}",
            n + 4,
            basis.n_max
        )));
    }
    let y = alpha_coupling(basis);
    let g = p.gamma() * basis.mass * basis.hbar * basis.omega;
    let mut out = vec![(n, C64::from(1.0))];
    out.extend(odd_admixture(n).into_iter().map(|(k, c)| (k, C64::new(0.0, -p.alpha * y * c))));
    out.extend(even_admixture(n).into_iter().map(|(k, c)| (k, C64::from(g * c))));
    Ok(out)
}

pub fn psi_n(p: &GupParams, basis: &HermiteBasis, n: usize, q: f64) -> Result<C64> {
    let coeffs = psi_coefficients(p, basis, n)?;
    let phis = basis.phis(q, n + 5);
    Ok(coeffs.iter().map(|&(k, c)| c * phis[k]).sum())
}

/// A complex Hermitian matrix stored as real and imaginary parts.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianMatrix {
    pub re: SquareMatrix,
    pub im: SquareMatrix,
}

impl HermitianMatrix {
    pub fn dim(&self) -> usize {
        self.re.dim()
    }

    pub fn get(&self, i: usize, j: usize) -> C64 {
        C64::new(self.re[(i, j)], self.im[(i, j)])
    }

    /// max |H_ij − conj(H_ji)|.
    pub fn hermiticity_error(&self) -> f64 {
        let n = self.dim();
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                worst = worst.max((self.get(i, j) - self.get(j, i).conj()).norm());
            }
        }
        worst
    }

    fn max_abs(&self) -> f64 {
        let n = self.dim();
        (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .map(|(i, j)| self.get(i, j).norm())
            .fold(0.0, f64::max)
    }
}

/// X = a† − a on `dim` levels (p₀ = i√(mħω/2) X).
fn ladder_difference(dim: usize) -> SquareMatrix {
    let mut rows = vec![vec![0.0; dim]; dim];
    for n in 0..dim - 1 {
        let s = ((n + 1) as f64).sqrt();
        rows[n + 1][n] = s;
        rows[n][n + 1] = -s;
    }
    SquareMatrix::from_rows(&rows).expect("square by construction")
}

/// Matrix product computed row-parallel.
fn par_matmul(a: &SquareMatrix, b: &SquareMatrix) -> SquareMatrix {
    let n = a.dim();
    let rows: Vec<Vec<f64>> = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut row = vec![0.0; n];
            for k in 0..n {
                let aik = a[(i, k)];
                if aik != 0.0 {
                    for (j, r) in row.iter_mut().enumerate() {
                        *r += aik * b[(k, j)];
                    }
                }
            }
            row
        })
        .collect();
    SquareMatrix::from_rows(&rows).expect("square by construction")
}

/// H = H_osc − (α/m)p₀³ + ((α²/2+β)/m)p₀⁴ on φ_0…φ_{n_max−1}. The oscillator
/// part is diagonal; the momentum powers are formed on four extra levels so
/// that every retained element is exact.
pub fn hamiltonian_matrix(p: &GupParams, basis: &HermiteBasis) -> Result<HermitianMatrix> {
    const MIN_DIM: usize = 16;
    let n = basis.n_max;
    if n < MIN_DIM {
        return Err(GupError::Domain(format!("hamiltonian_matrix needs n_max >= {MIN_DIM}")));
    }
    let ext = n + 4;
    let x = ladder_difference(ext);
    let x2 = par_matmul(&x, &x);
    let x3 = par_matmul(&x2, &x);
    let x4 = par_matmul(&x2, &x2);
    let pm = basis.momentum();
    let m = basis.mass;
    // p₀³ = −i pm³ X³, p₀⁴ = pm⁴ X⁴.
    let c3 = p.alpha / m * pm.powi(3);
    let c4 = p.gamma() / m * pm.powi(4);
    let mut re = vec![vec![0.0; n]; n];
    let mut im = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in 0..n {
            re[i][j] = c4 * x4[(i, j)];
            im[i][j] = c3 * x3[(i, j)];
        }
        re[i][i] += (i as f64 + 0.5) * basis.hbar * basis.omega;
    }
    Ok(HermitianMatrix { re: SquareMatrix::from_rows(&re)?, im: SquareMatrix::from_rows(&im)? })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SpectrumOrder {
    Perturbative,
    Numeric,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Spectrum {
    pub energies: Vec<f64>,
    pub order: SpectrumOrder,
}

/// Perturbative levels E_0 … E_{count−1}.
pub fn perturbative_spectrum(p: &GupParams, basis: &HermiteBasis, count: usize) -> Spectrum {
    Spectrum {
        energies: (0..count).map(|n| energy_n(p, basis, n)).collect(),
        order: SpectrumOrder::Perturbative,
    }
}

/// Eigenvalues by cyclic Jacobi. A complex Hermitian A + iB is embedded as
/// the real symmetric [[A, −B], [B, A]], whose spectrum is that of A + iB
/// with every level doubled.
pub fn diagonalize_oracle(matrix: &HermitianMatrix) -> Result<Spectrum> {
    let scale = matrix.max_abs().max(1.0);
    let err = matrix.hermiticity_error();
    if err > 1e-12 * scale {
        return Err(GupError::Domain(format!("matrix is not Hermitian (deviation {err:e})")));
    }
    let n = matrix.dim();
    let complex = (0..n).any(|i| (0..n).any(|j| matrix.im[(i, j)] != 0.0));
    let energies = if !complex {
        symmetric_eigen(&matrix.re)?
    } else {
        let mut rows = vec![vec![0.0; 2 * n]; 2 * n];
        for i in 0..n {
            for j in 0..n {
                let (a, b) = (matrix.re[(i, j)], matrix.im[(i, j)]);
                rows[i][j] = a;
                rows[i + n][j + n] = a;
                rows[i][j + n] = -b;
                rows[i + n][j] = b;
            }
        }
        let doubled = symmetric_eigen(&SquareMatrix::from_rows(&rows)?)?;
        doubled.into_iter().step_by(2).collect()
    };
    Ok(Spectrum { energies, order: SpectrumOrder::Numeric })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{gauss_rule, QuadratureKind};

    #[test]
    fn energy_examples() {
        let b = HermiteBasis::natural(16).unwrap();
        assert_eq!(energy_n(&GupParams::natural(0.0, 0.0), &b, 3), 3.5);
        assert!((energy_n(&GupParams::natural(0.0, 0.001), &b, 0) - 0.50075).abs() < 1e-15);
    }

    #[test]
    fn undeformed_psi_is_phi() {
        let b = HermiteBasis::natural(20).unwrap();
        let p = GupParams::natural(0.0, 0.0);
        let phis = b.phis(0.4, 21);
        for n in 0..=16 {
            assert_eq!(psi_n(&p, &b, n, 0.4).unwrap(), C64::from(phis[n]));
        }
        assert!(psi_n(&p, &b, 17, 0.4).is_err());
    }

    fn quad_overlap(b: &HermiteBasis, f: impl Fn(f64) -> C64, k: usize) -> C64 {
        let rule = gauss_rule(QuadratureKind::Hermite, 80).unwrap();
        let l = b.length();
        rule.nodes
            .iter()
            .zip(&rule.weights)
            .map(|(&x, &w)| f(l * x) * (w * (x * x).exp() * l * b.phis(l * x, k + 1)[k]))
            .sum()
    }

    #[test]
    fn first_order_overlap() {
        let b = HermiteBasis::new(1.2, 0.9, 0.8, 24).unwrap();
        let p = GupParams { mass: 1.2, hbar: 0.8, ..GupParams::natural(1e-3, 0.0) };
        for n in [0usize, 2, 5] {
            let got = quad_overlap(&b, |q| psi_n(&p, &b, n, q).unwrap(), n + 3);
            let mhw: f64 = 1.2 * 0.8 * 0.9;
            let nf = n as f64;
            let want = C64::new(0.0, -1e-3 / mhw * (0.5 * mhw).powf(1.5) * ((nf + 1.0) * (nf + 2.0) * (nf + 3.0)).sqrt() / 3.0);
            assert!((got - want).norm() < 1e-10, "{got} {want}");
        }
    }

    #[test]
    fn momentum_moments_by_ladder_algebra() {
        let b = HermiteBasis::natural(24).unwrap();
        let h = hamiltonian_matrix(&GupParams::natural(0.0, 1.0), &b).unwrap();
        // (γ/m)⟨n|p₀⁴|n⟩ = (mħω/2)²·3(2n²+2n+1) with γ = 1.
        for n in 0..10 {
            let nf = n as f64;
            let diag = h.re[(n, n)] - (nf + 0.5);
            assert!((diag - 0.25 * 3.0 * (2.0 * nf * nf + 2.0 * nf + 1.0)).abs() < 1e-12);
        }
        assert!(h.hermiticity_error() < 1e-14);
    }

    #[test]
    fn cubic_elements_against_quadrature() {
        // ⟨n+3|p₀³|n⟩ = −i(mħω/2)^{3/2}√((n+1)(n+2)(n+3)); via H_im = (α/m)·pm³X³.
        let b = HermiteBasis::natural(24).unwrap();
        let h = hamiltonian_matrix(&GupParams::natural(1.0, 0.0), &b).unwrap();
        for n in 0..5usize {
            let nf = n as f64;
            let elem = h.im[(n + 3, n)];
            let want = 0.5f64.powf(1.5) * ((nf + 1.0) * (nf + 2.0) * (nf + 3.0)).sqrt();
            assert!((elem - want).abs() < 1e-12);
        }
        // Structural zeros.
        for i in 0..24usize {
            for j in 0..24 {
                let d = i.abs_diff(j);
                if d != 1 && d != 3 {
                    assert_eq!(h.im[(i, j)], 0.0);
                }
                if ![0, 2, 4].contains(&d) {
                    let off = h.re[(i, j)];
                    assert_eq!(off, 0.0);
                }
            }
        }
    }

    #[test]
    fn oracle_small_cases() {
        let diag = HermitianMatrix {
            re: SquareMatrix::from_diagonal(&[3.0, 1.0, 2.0]),
            im: SquareMatrix::zeros(3),
        };
        assert_eq!(diagonalize_oracle(&diag).unwrap().energies, vec![1.0, 2.0, 3.0]);
        let swap = HermitianMatrix {
            re: SquareMatrix::from_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap(),
            im: SquareMatrix::zeros(2),
        };
        let e = diagonalize_oracle(&swap).unwrap().energies;
        assert!((e[0] + 1.0).abs() < 1e-14 && (e[1] - 1.0).abs() < 1e-14);
        // Pauli σ_y has eigenvalues ±1.
        let sy = HermitianMatrix {
            re: SquareMatrix::zeros(2),
            im: SquareMatrix::from_rows(&[vec![0.0, -1.0], vec![1.0, 0.0]]).unwrap(),
        };
        let e = diagonalize_oracle(&sy).unwrap().energies;
        assert!((e[0] + 1.0).abs() < 1e-14 && (e[1] - 1.0).abs() < 1e-14);
        let bad = HermitianMatrix { re: SquareMatrix::from_rows(&[vec![0.0, 1.0], vec![0.0, 0.0]]).unwrap(), im: SquareMatrix::zeros(2) };
        assert!(diagonalize_oracle(&bad).is_err());
    }
}
