#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod certify;
pub mod cli;
pub mod eigen;
pub mod error;
pub mod fourier;
pub mod pelliptic;
pub mod qtheta;
pub mod quadrature;
mod sign;

pub use error::{Error, Result};
pub use sign::Sign;
