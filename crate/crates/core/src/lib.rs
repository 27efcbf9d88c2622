//! Exact lattice and elliptic-surface computations for singular K3 surfaces.

pub mod algebra;
pub mod dataset;
pub mod elliptic;
pub mod families;
mod error;
pub mod lattice;
pub mod verify;
pub mod weierstrass;

pub use error::{Error, Result};
