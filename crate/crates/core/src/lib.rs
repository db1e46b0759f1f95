//! Exact computations with graded modules over weighted-graded Gorenstein
//! quotient rings: resolutions, matrix factorizations, stable functors,
//! Auslander-Reiten quivers and Eisenbud operators.

pub mod error;
pub mod linalg;
pub mod poly;
pub mod ring;
pub mod hmatrix;
pub mod module;
pub mod hom;
pub mod iso;
pub mod decompose;
pub mod resolution;
pub mod mf;
pub mod catalog;
pub mod functors;
pub mod quiver;
pub mod ci;
pub mod io;
pub mod suites;

pub use error::{Error, Result};
