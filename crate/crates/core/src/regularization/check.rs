use serde::Serialize;

use super::ideal::KnownRelations;
use super::integral::reg_integral;
use super::lmap::l_map;
use super::series::reg_series;
use super::symbol::RegValue;
use crate::word_algebra::Index;

/// Outcome of comparing `reg_series(a)` with `l_map(reg_integral(W_a))`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RegularizationReport {
    pub index: Index,
    pub series: RegValue,
    pub integral_then_l: RegValue,
    /// `series - integral_then_l`.
    pub difference: RegValue,
    /// The two sides are identical as polynomials in `T` over free symbols.
    pub formally_equal: bool,
    /// The difference lies in the ideal of finite double shuffle relations.
    pub reduces_to_zero: bool,
    /// `formally_equal || reduces_to_zero`.
    pub holds: bool,
}

/// Compares both regularizations of an index.
///
/// The symbols are free generators, so the two sides can differ by a polynomial in the
/// symbols that vanishes only because of relations among zeta values (for `(2,1)` the
/// difference is `z(1,2) - z(3)`). The report therefore also decides, by exact linear
/// algebra, whether the difference is a consequence of the finite double shuffle relations.
pub fn check_regularization_relation(index: &Index) -> RegularizationReport {
    let ideal = KnownRelations::new(index.weight().max(2));
    check_regularization_relation_with(index, &ideal)
}

/// As [`check_regularization_relation`], reusing a prepared ideal of sufficient weight.
pub fn check_regularization_relation_with(index: &Index, ideal: &KnownRelations) -> RegularizationReport {
    let series = reg_series(index);
    let integral = reg_integral(&index.to_word()).expect("index words end with B");
    let integral_then_l = l_map(&integral);
    let difference = series.sub(&integral_then_l);
    let formally_equal = difference.is_zero();
    let reduces_to_zero = formally_equal || ideal.contains(&difference).unwrap_or(false);
    RegularizationReport {
        index: index.clone(),
        series,
        integral_then_l,
        difference,
        formally_equal,
        reduces_to_zero,
        holds: formally_equal || reduces_to_zero,
    }
}
