//! Extended double shuffle relations at a fixed weight, their exact reduction, and their
//! numeric verification.

mod generation;
mod matrix;
mod verify;

pub use generation::{generate_double_shuffle, generate_double_shuffle_with, GenerationOptions, Provenance, Relation};
pub use matrix::{graded_lex, rank_and_nullspace, Reduction, RelationMatrix};
pub use verify::{evaluate_t_free, verify_relations_numeric, NumericVerification};
