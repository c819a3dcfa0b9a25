//! Weak Hopf algebras reconstructed from fusion-category data, and their graded actions on
//! path algebras of quivers.

pub mod action;
pub mod cli;
pub mod error;
pub mod exec;
pub mod fusion;
pub mod io;
pub mod linalg;
pub mod module_cat;
pub mod quiver;
pub mod report;
pub mod scalar;
pub mod wha;

pub use error::{Error, Result};
pub use exec::Exec;
pub use scalar::{Scalar, Tolerance};
