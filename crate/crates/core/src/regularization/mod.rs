//! Regularized multiple zeta values as polynomials in `T` over a ring of formal symbols
//! `z(a)`, one for each admissible index `a`.

mod check;
mod ideal;
mod integral;
mod lmap;
mod series;
mod symbol;

pub use check::{check_regularization_relation, check_regularization_relation_with, RegularizationReport};
pub use ideal::{finite_double_shuffle_relations, hoffman_relation, monomials_of_weight, KnownRelations};
pub use integral::{reg_integral, reg_integral_combination, IntegralRegularizer};
pub use lmap::{l_map, l_map_powers};
pub use series::{reg_series, reg_series_combination, SeriesRegularizer};
pub use symbol::{FactorJson, Monomial, RegMonomial, RegTermJson, RegValue};
