//! Exact integral-lattice arithmetic and a verification pipeline deciding
//! which supersingular K3 surfaces carry an Enriques involution.
//!
//! Everything is exact: integer matrices use arbitrary-precision integers and
//! every rational quantity is a `BigRational`. There is no floating point on
//! any path that feeds a certificate.

pub mod abelian;
pub mod arithmetic;
pub mod checker;
pub mod discriminant;
pub mod embedding;
pub mod enumeration;
pub mod error;
pub mod glue;
pub mod io;
pub mod lattice;
pub mod linalg;

pub use error::{Error, Result};
pub use lattice::IntegralLattice;
pub use linalg::IntMatrix;
