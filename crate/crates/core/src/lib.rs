//! Exact and numeric machinery for the double shuffle structure of multiple zeta values.
//!
//! The crate is organised bottom up:
//!
//! * [`word_algebra`]: words over `{A, B}`, indices, shuffle and stuffle products.
//! * [`regularization`]: integral and series regularized values as polynomials in `T`
//!   over a ring of formal zeta symbols, and the comparison map between them.
//! * [`relations`]: generation of extended double shuffle relations and their exact reduction.
//! * [`numeric`]: ball arithmetic, multiple polylogarithms and multiple zeta values.
//! * [`padic`]: truncated p-adic numbers, logarithms and polylogarithm series.
//! * [`ncseries`]: truncated noncommutative series, coproducts and the DMR0 test.
//! * [`moduli`]: stable trees, boundary divisors and coordinates on the moduli of
//!   genus zero curves with marked points.

pub mod error;
pub mod linalg;
pub mod moduli;
pub mod ncseries;
pub mod numeric;
pub mod padic;
pub mod regularization;
pub mod relations;
pub mod word_algebra;

pub use error::{Error, Result};
pub use regularization::{Monomial, RegMonomial, RegValue};
pub use word_algebra::{Index, IndexCombination, Letter, Word, WordCombination};
