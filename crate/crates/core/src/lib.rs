//! Exact computations for Poisson structures on `R^n` with polynomial
//! coefficients: Chevalley-Eilenberg cohomology of Lie algebras, the
//! Schouten calculus of polynomial multivector fields, formal Poisson
//! cohomology, and stability of fixed points under deformation.
//!
//! All arithmetic is over arbitrary-precision rationals except the
//! numeric zero tracker in [`stability`].

pub mod cli;
pub mod corpus;
pub mod error;
pub mod exterior;
pub mod io;
pub mod liealg;
pub mod linalg;
pub mod multivec;
pub mod poisson;
pub mod stability;

pub use error::Error;
