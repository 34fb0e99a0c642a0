//! High-precision numerics with rigorous error bounds: real and complex balls, multiple
//! polylogarithms inside their region of convergence, multiple zeta values, and a
//! finite-difference check of the polylogarithm differential system.

mod ball;
mod complex;
pub mod constants;
mod mpl;
mod mzv;
mod pde;

pub use ball::{bits_for_digits, Real};
pub use complex::Complex;
pub use mpl::{
    eval_mpl_bits, eval_mpl_multi, eval_mpl_one, eval_mpl_one_bits, eval_mpl_truncated, MplPoint, MplReport, real_point,
    MplValue, ONE_VARIABLE_RADIUS, TAIL_PRODUCT_MARGIN,
};
pub use mzv::{eval_mzv, eval_mzv_bits, eval_mzv_with, MzvEvaluator, MzvStrategy, MzvValue};
pub use pde::{mpl_partial_derivative, verify_mpl_pde, PdeReport};
