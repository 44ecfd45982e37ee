//! Shared numerical plumbing: fixed-step RK4, bisection, Gauss rules and a
//! cyclic Jacobi eigenvalue routine. Everything here is deterministic and
//! free of hidden state.

mod eigen;
mod ode;
mod quadrature;
mod root;

pub use eigen::{symmetric_eigen, SquareMatrix};
pub use ode::{rk4_integrate, OdePath};
pub use quadrature::{gauss_rule, QuadratureKind, QuadratureRule};
pub use root::{bisect_root, bisect_root_fallible};
