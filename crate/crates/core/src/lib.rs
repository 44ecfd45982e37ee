//! Propagation kernels, classical actions and perturbative spectra for a
//! nonrelativistic particle whose momentum algebra carries linear (α) and
//! quadratic (β) deformations, together with the numerical oracles that
//! cross-check every closed form.
//!
//! Module map:
//! - [`params`]: deformation parameters, constraint checks, velocity bound.
//! - [`algebra`]: exact term rewriting for commutators of the deformed algebra.
//! - [`classical`]: Lagrangian, trajectories, equations of motion, actions.
//! - [`kernels`]: closed-form free and harmonic-oscillator kernels.
//! - [`spectral`]: Hermite basis, perturbed spectrum, Mehler sums, spectral kernels.
//! - [`lattice`]: time-sliced and Monte Carlo path integrals.
//! - [`numerics`]: quadrature, RK4, root finding, Jacobi eigenvalues.

pub mod algebra;
pub mod classical;
pub mod error;
pub mod kernels;
pub mod lattice;
pub mod numerics;
pub mod params;
pub mod spectral;

pub use error::{GupError, Result};
pub use params::GupParams;

/// Complex double used throughout the kernel code.
pub type C64 = num_complex::Complex64;
