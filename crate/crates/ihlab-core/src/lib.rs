//! Intersection homology of filtered simplicial complexes over exact fields.
//!
//! The crate computes intersection homology with general perversities,
//! cross/cup/cap products built from the Eilenberg-Zilber shuffle product and
//! a Kunneth-inverted diagonal, fundamental classes of oriented
//! pseudomanifolds, and Poincare/Lefschetz duality maps, all as exact linear
//! algebra over the rationals or a prime field.

pub mod complex;
pub mod diagprod;
pub mod duality;
pub mod error;
pub mod field;
pub mod fundamental;
pub mod ichain;
pub mod kunneth;
pub mod perversity;
pub mod spaces;
pub mod suite;

pub use error::{Error, Result};

/// Exact rational scalar.
pub type Rational = num_rational::BigRational;

/// Prime-field scalar with runtime modulus.
pub type GfScalar = field::GfP;

/// Sparse matrix over the rationals.
pub type QMatrix = field::SparseMatrix<Rational>;

/// Sparse matrix over a prime field.
pub type GfMatrix = field::SparseMatrix<GfScalar>;
