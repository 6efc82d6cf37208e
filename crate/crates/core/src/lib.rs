//! Permutation group toolkit centered on Wielandt's k-closure.

pub mod actions;
pub mod affine;
pub mod budget;
pub mod chain;
pub mod closure;
pub mod constructions;
pub mod corpus;
pub mod error;
pub mod group;
pub mod io;
pub mod linalg;
pub mod perm;
pub mod structure;
pub mod subgroups;
pub mod tensor;
pub mod verify;

pub use budget::Budget;
pub use error::{Error, Result};
pub use group::Group;
pub use perm::Permutation;
