//! Oscillator eigenbasis machinery: perturbed states and levels, the
//! truncated Hamiltonian oracle, the extended Mehler formula and the
//! spectral form of the propagator.

mod hermite;
mod kernel;
mod mehler;
mod perturbation;

pub use hermite::{
    hermite_poly, hermite_poly_c, ln_factorial, normalized_hermite, normalized_hermite_functions, phi_n, HermiteBasis,
    MIN_BASIS,
};
pub use kernel::{mehler_kernel, spectral_kernel, spectral_parts, tilde_factors, tilde_kernel, SpectralParts, TildeFactors};
pub use mehler::{mehler_closed, mehler_partial, MEHLER_MAX_INDEX};
pub use perturbation::{
    alpha_coupling, diagonalize_oracle, energy_n, energy_shift_per_gamma, even_admixture, hamiltonian_matrix,
    odd_admixture, perturbative_spectrum, psi_coefficients, psi_n, HermitianMatrix, Spectrum, SpectrumOrder,
};
