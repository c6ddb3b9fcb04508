//! Jacobi-type vector continued fractions built on the involutive vector
//! inverse `1/Z = Z*/|Z|²`.
//!
//! - [`geometry`]: signature spaces, conjugation, inversion, the point at infinity.
//! - [`fraction`]: parameter sets, truncated evaluation and fragments.
//! - [`polynomials`]: first- and second-kind scalar and vector polynomials.
//! - [`convergence`]: the a-priori error radius and enclosure checks.
//! - [`dynamics`]: periodic fractions as fixed points, planar Möbius reduction.
//! - [`cli`]: experiment configuration and the data-emitting commands.

pub mod cli;
pub mod convergence;
pub mod dynamics;
pub mod error;
pub mod fraction;
pub mod geometry;
pub mod polynomials;

pub use error::JvfError;
pub use fraction::JvfParams;
pub use geometry::{ExtVector, SignatureSpace, Vector};
