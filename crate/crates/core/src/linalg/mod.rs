//! Finite fields, matrices and semilinear maps.

pub mod classical;
pub mod field;
pub mod matrix;

pub use field::FieldCtx;
pub use matrix::{Matrix, SemilinearMap};
