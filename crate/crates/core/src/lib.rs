//! Exact computations for quadratic graded algebras on three generators:
//! graded pieces, test configurations and Futaki functions, point schemes,
//! the normal element in degree three, and the combinatorial estimates
//! behind the stability criterion.

pub mod algebra;
pub mod c3;
pub mod catalog;
pub mod error;
pub mod estimates;
pub mod field;
pub mod io;
pub mod linalg;
pub mod pointscheme;
pub mod poly;
pub mod report;
pub mod testconfig;

pub use error::{Error, Result};
pub use field::{Field, FieldSpec, PrimeField, Rationals};
pub use linalg::{Matrix, Subspace};
pub use algebra::{GradedPiece, GradedSubspace, Hilbert, Limits, QuadraticAlgebra};
