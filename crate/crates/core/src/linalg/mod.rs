//! Exact linear algebra over Q and Q(i).

mod matrix;
mod scalar;
mod subspace;

pub use matrix::Matrix;
pub use scalar::{Field, Scalar};
pub use subspace::{EchelonBuilder, Subspace};
