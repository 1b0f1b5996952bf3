//! Numerical integration with algebraic endpoint singularities and
//! bracketed root finding.

mod root;
mod tanh_sinh;

pub use root::{bracketed_root, try_bracketed_root};
pub use tanh_sinh::{
    integrate_interval, integrate_singular, integrate_singular_vec, QuadratureResult,
    SingularIntegrand, DEFAULT_TOL, MIN_TOL, ROUNDOFF,
};
