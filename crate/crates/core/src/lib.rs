pub mod error;
pub mod groups;
pub mod linalg;
pub mod relations;
pub mod repharness;
pub mod suites;
pub mod train;

pub use error::{Error, Result};
pub use linalg::{EchelonBuilder, Field, Matrix, Scalar, Subspace};
