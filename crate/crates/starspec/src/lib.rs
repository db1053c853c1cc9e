//! # starspec
//!
//! A spectral deformation engine for compact geometries. It builds the
//! fusion tensors of Laplace eigenbases (flat tori, the round sphere, and
//! SU(2) = S^3), twists the induced product of coefficient vectors by a
//! unit-modulus weight on admissible label triples, and measures the
//! algebraic and analytic defects of the result: cocycle identities versus
//! associativity, *-compatibility, continuity in deformation paths,
//! equivariance under isometries, metric-perturbation derivatives, and the
//! agreement of the three-index torus weight with its bicharacter 2-face.
//!
//! Start with [`bases::TorusBasis`], [`bases::SphereBasis`] or
//! [`bases::Su2Basis`], pick a [`weights::Weight`], and wrap them in a
//! [`star::DeformedAlgebra`]. The `examples/` directory has one runnable
//! program per capability; the `starspec` binary drives batch verification
//! and experiments.

pub mod analysis;
pub mod bases;
pub mod cli;
pub mod error;
pub mod spectral;
pub mod star;
pub mod weights;

pub use error::{Error, Result};
