use std::cmp::Ordering;

use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use super::generation::{Provenance, Relation};
use crate::linalg::{EchelonForm, RationalMatrix};
use crate::regularization::{Monomial, RegMonomial, RegValue};

/// Graded lexicographic order on monomials: by weight, then by number of generators,
/// then by the generator list.
pub fn graded_lex(a: &Monomial, b: &Monomial) -> Ordering {
    a.weight().cmp(&b.weight()).then(a.degree().cmp(&b.degree())).then_with(|| a.cmp(b))
}

/// Relations as rows over the monomials that occur in them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationMatrix {
    columns: Vec<Monomial>,
    matrix: RationalMatrix,
}

/// Result of [`rank_and_nullspace`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Reduction {
    pub rank: usize,
    pub basis: Vec<Relation>,
}

impl RelationMatrix {
    /// Rows in input order; columns are every monomial present, in graded lexicographic order.
    pub fn assemble(relations: &[Relation]) -> Self {
        let mut columns: Vec<Monomial> = relations
            .iter()
            .flat_map(|r| r.combination.iter().map(|(m, _)| m.monomial.clone()))
            .collect();
        columns.sort_by(graded_lex);
        columns.dedup();
        Self::with_columns(relations, columns)
    }

    /// Rows in input order over a prescribed column set, which must contain every monomial.
    pub fn with_columns(relations: &[Relation], columns: Vec<Monomial>) -> Self {
        let mut matrix = RationalMatrix::new(columns.len());
        for r in relations {
            assert!(r.combination.is_t_free(), "relation rows must be T-free");
            matrix.push_row(to_row(&r.combination, &columns).expect("column set covers the relations"));
        }
        RelationMatrix { columns, matrix }
    }

    pub fn columns(&self) -> &[Monomial] {
        &self.columns
    }

    pub fn nrows(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn echelon(&self) -> EchelonForm {
        self.matrix.row_reduce()
    }

    /// Whether a `T`-free value lies in the row space. Monomials outside the column set
    /// make the answer `false` unless their coefficients vanish.
    pub fn contains(&self, value: &RegValue) -> bool {
        match to_row(value, &self.columns) {
            Some(row) => self.echelon().contains(&row),
            None => false,
        }
    }
}

fn to_row(value: &RegValue, columns: &[Monomial]) -> Option<Vec<BigRational>> {
    let mut row = vec![BigRational::zero(); columns.len()];
    for (m, c) in value.iter() {
        if m.t_power != 0 {
            return None;
        }
        let k = columns.binary_search_by(|x| graded_lex(x, &m.monomial)).ok()?;
        row[k] += c;
    }
    Some(row)
}

/// Exact rank of the relation matrix and a reduced echelon basis of its row space.
pub fn rank_and_nullspace(matrix: &RelationMatrix) -> Reduction {
    let echelon = matrix.echelon();
    let basis = echelon
        .rows()
        .iter()
        .enumerate()
        .map(|(k, row)| {
            let mut value = RegValue::zero();
            for (c, m) in row.iter().zip(&matrix.columns) {
                value.add_term(RegMonomial::new(0, m.clone()), c.clone());
            }
            Relation {
                weight: value.homogeneous_weight().unwrap_or(0),
                combination: value,
                provenance: Provenance::Reduced { row: k },
            }
        })
        .collect();
    Reduction { rank: echelon.rank(), basis }
}
