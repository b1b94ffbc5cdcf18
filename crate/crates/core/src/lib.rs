//! Rotation matrices in ℝⁿ assembled directly from planes of rotation and
//! their angles, together with the tools needed to check them: three
//! equivalent matrix products, a permutation-expansion determinant with an
//! LU cross-check, and the invariant-plane classification of isoclinic
//! rotations.
//!
//! The crate is `no_std` and only needs `alloc`. File formats and the
//! command-line front end live in the companion `planerot-cli` crate.
#![no_std]
#![warn(missing_docs)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod determinant;
mod error;
pub mod isoclinic;
pub mod linalg;
pub mod rotation;
pub mod sample;
pub mod tol;

pub use error::{Error, Result};
pub use linalg::{Matrix, Vector};
