//! Exact computations with actions, split extensions and actor-like objects
//! of finite-dimensional associative, Leibniz and Poisson algebras.

#![allow(clippy::needless_range_loop)]

pub mod actions;
pub mod algebra;
pub mod catalog;
pub mod field;
pub mod linalg;
pub mod opspace;

pub use algebra::{Algebra, AlgebraError, IdentityReport, IdentityTag, Witness};
pub use field::{FieldError, FieldSpec, Scalar};
pub use linalg::{Matrix, Subspace};
