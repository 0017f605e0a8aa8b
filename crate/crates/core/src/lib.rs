#![no_std]
//! Exact contraction calculus for graded nilpotent Lie algebras, together with
//! numerical checks of kernel and spectral asymptotics for Euclidean
//! quasi-homogeneous model symbols.
//!
//! The crate only needs `alloc`. File formats and the command line driver
//! live in the companion `nilcon` crate.

extern crate alloc;
#[cfg(feature = "std")]
extern crate std;

pub mod algebra;
pub mod audit;
pub mod contraction;
pub mod error;
pub mod free;
pub mod geometry;
pub mod grouplaw;
pub mod laurent;
pub mod linalg;
pub mod opcalc;
pub mod poly;
pub mod sampling;
pub mod scalar;
pub mod spectral;
pub mod subspace;

pub use algebra::{Gradation, LieAlgebra};
pub use contraction::{ContractionFamily, Side};
pub use error::Error;
pub use poly::Poly;
pub use scalar::Scalar;
pub use subspace::Subspace;
