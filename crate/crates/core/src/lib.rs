//! Extreme eigenvalues of correlated Wishart matrices.
//!
//! Sampling of real, complex and quaternion Wishart ensembles with a
//! general population spectrum, Tracy-Widom laws for β = 1, 2, 4, edge
//! scaling, exact small-size gap probabilities and a Monte Carlo harness.

// `!(x > 0.0)` is used on purpose so that NaN is rejected too
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod ensemble;
pub mod error;
pub mod harness;
pub mod linalg;
pub mod oracle;
pub mod quadrature;
pub mod rng;
pub mod scaling;
pub mod special;
pub mod tracywidom;

pub use error::{Error, Result};
