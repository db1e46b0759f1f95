//! Exact dense linear algebra over prime fields and the rationals.

mod field;
mod matrix;
pub mod upoly;

pub use field::{Field, PrimeField, RationalField};
pub use matrix::{kernel_basis, rank, rref, solve, DenseMatrix, EchelonBasis, Rref};
