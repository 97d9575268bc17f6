//! Covariant polynomial maps on reductive Lie algebras: exact Kostant
//! bases, Dixmier division of tangent fields, realification of complex
//! bases and covariant distribution kits.

pub mod covariants;
pub mod distkit;
pub mod realify;
pub mod division;
pub mod error;
pub mod graded;
pub mod liecore;
pub mod linalg;
pub mod polyalg;
pub mod rep;
pub mod random;
pub mod scalar;
pub mod selftest;

pub use error::{Error, Result};
pub use liecore::LieAlgebra;
pub use polyalg::{Monomial, Poly, PolyMap};
pub use rep::Representation;
pub use scalar::Scalar;
