//! Exact face-vector arithmetic for simplicial subdivisions.
//!
//! Barycentric subdivision acts on f-vectors by a lower triangular integer
//! matrix. This crate builds that matrix and its exact eigendecomposition,
//! derives the limit polynomials whose roots attract the roots of iterated
//! subdivisions, and checks the matrix pathway against explicit
//! combinatorial subdivision.

pub mod barycentric;
pub mod complexes;
pub mod corpus;
pub mod exactalg;
pub mod fvector;
pub mod rules;
pub mod series;

pub use complexes::{f_vector, Face, SimplicialComplex};
pub use exactalg::{Polynomial, Rational, RationalMatrix};
pub use fvector::FVector;
