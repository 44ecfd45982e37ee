//! Time-sliced checks of the deformed kernels: the single-slice propagator,
//! few-slice quadrature and Euclidean Monte Carlo reweighting.

mod mc;
mod slice;
mod sliced;

pub use mc::{euclidean_mc_kernel, free_beta_prediction, McEstimate, MC_BATCHES};
pub use slice::{
    euclidean_action, euclidean_link_weight, euclidean_slice, single_slice_propagator, slice_terms, SliceConfig,
    SliceTerms,
};
pub use sliced::{sliced_kernel_quadrature, QUAD_TOL};
