//! Truncated noncommutative power series, the shuffle and quasi-shuffle coproducts, and the
//! double shuffle membership test for group-like series.

mod dmr;
mod ring;
mod series;
mod words;
mod yseries;

pub use dmr::{
    check_dmr0, g_star, kz_associator, kz_associator_symbolic, kz_associator_with, Dmr0Report, MAX_KZ_DEGREE,
};
pub use ring::{RationalRing, RealBallRing, Ring, SymbolRing};
pub use series::{Comparison, Monomial, NCSeries, Series, Tensor, YSeries};
pub use words::{coproduct_word, exp_primitive, y_monomial};
pub use yseries::coproduct_star_monomial;
