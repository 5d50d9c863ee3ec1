//! Real Clifford-algebra continuous wavelet analysis.
//!
//! The crate implements multivector arithmetic in the Euclidean Clifford
//! algebras Cl_2 and Cl_3, the Clifford Fourier transform with the
//! pseudoscalar playing the role of the imaginary unit, daughter wavelets
//! generated by the similitude group SIM(n), admissibility constants, the
//! continuous Clifford wavelet transform with its spectral fast path and
//! inverse, reproducing kernels, and the associated uncertainty principles.
//! Clifford Gabor wavelets are provided as the built-in admissible family.

pub mod analysis;
pub mod cft;
pub mod clifford;
pub mod cwt;
pub mod error;
pub mod field;
pub mod io;
pub mod simgroup;
pub mod verify;
pub mod wavelets;

pub use clifford::{Dimension, GradeParity, Multivector};
pub use error::{Error, Result};
pub use field::{GridSpec, MultivectorField};
