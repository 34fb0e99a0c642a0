//! Truncated `p`-adic numbers, the branched logarithm and multiple polylogarithm series
//! inside the unit polydisc.

mod log;
mod number;
mod series;

pub use log::padic_log;
pub use number::{PAdic, PAdicContext, EXACT};
pub use series::{
    eval_li_padic, eval_mpl_padic, one_variable_point, verify_integral_shuffle_padic, verify_series_shuffle_padic,
};
