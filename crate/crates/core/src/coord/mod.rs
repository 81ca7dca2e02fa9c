//! Exact scalars and vectors, orthogonality checks, masters from component
//! alphabets and orthogonal completion.

mod complete;
mod scalar;
mod vecfind;
mod vector;

pub use complete::complete_hyperedge;
pub use scalar::{ExactScalar, Ring};
pub use vecfind::{split_master, vecfind_master, MasterPart, VECFIND_BUDGET};
pub use vector::{inner_product, verify_coordinatization, Coordinatization, ExactVector, OrthoFailure, OrthoReport};
