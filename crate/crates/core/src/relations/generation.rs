use std::fmt;

use num_rational::BigRational;
use num_traits::One;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use serde::{Deserialize, Serialize};

use crate::regularization::{
    l_map, reg_integral_combination, reg_series_combination, IntegralRegularizer, RegValue, SeriesRegularizer,
};
use crate::word_algebra::{shuffle, stuffle, Index, IndexCombination};

/// How a relation was produced.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "mechanism", rename_all = "kebab-case")]
pub enum Provenance {
    /// `L(reg_integral(W_a ⧢ W_b)) - reg_series(a * b)`, one of `a`, `b` admissible.
    ShuffleMinusStuffle { left: Index, right: Index, t_power: u32 },
    /// `reg_integral(W_a) reg_integral(W_b) - reg_integral(W_a ⧢ W_b)`.
    IntegralProduct { left: Index, right: Index, t_power: u32 },
    /// `reg_series(a) reg_series(b) - reg_series(a * b)`.
    SeriesProduct { left: Index, right: Index, t_power: u32 },
    /// `reg_series(c) - L(reg_integral(W_c))` for a non-admissible `c`.
    RegularizationRelation { index: Index, t_power: u32 },
    /// A reduced echelon row of a relation matrix.
    Reduced { row: usize },
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::ShuffleMinusStuffle { left, right, t_power } => {
                write!(f, "shuffle-minus-stuffle {left} {right} [T^{t_power}]")
            }
            Provenance::IntegralProduct { left, right, t_power } => {
                write!(f, "integral-product {left} {right} [T^{t_power}]")
            }
            Provenance::SeriesProduct { left, right, t_power } => {
                write!(f, "series-product {left} {right} [T^{t_power}]")
            }
            Provenance::RegularizationRelation { index, t_power } => {
                write!(f, "regularization-relation {index} [T^{t_power}]")
            }
            Provenance::Reduced { row } => write!(f, "reduced row {row}"),
        }
    }
}

/// A `T`-free, weight-homogeneous polynomial in the zeta symbols asserted to vanish.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Relation {
    pub weight: u32,
    pub combination: RegValue,
    pub provenance: Provenance,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = 0   ({})", self.combination, self.provenance)
    }
}

/// Options for [`generate_double_shuffle_with`].
#[derive(Debug, Clone, Default)]
pub struct GenerationOptions {
    /// When set, the pair list is shuffled with this seed before generation.
    pub pair_order_seed: Option<u64>,
    /// Number of worker threads for the per-pair computations; `0` or `1` means sequential.
    pub threads: usize,
}

/// Extended double shuffle relations of the given weight with the default options.
pub fn generate_double_shuffle(weight: u32) -> Vec<Relation> {
    generate_double_shuffle_with(weight, &GenerationOptions::default())
}

enum Task {
    Pair(Index, Index),
    Regularization(Index),
}

/// Extended double shuffle relations of the given weight.
///
/// For every unordered pair of nonempty indices `a`, `b` of total weight `weight`:
/// if at least one is admissible, `L(reg_integral(W_a ⧢ W_b)) - reg_series(a * b)`;
/// otherwise the two product relations `reg_integral(W_a) reg_integral(W_b) -
/// reg_integral(W_a ⧢ W_b)` and `reg_series(a) reg_series(b) - reg_series(a * b)`.
/// For every non-admissible index `c` of weight `weight`: `reg_series(c) - L(reg_integral(W_c))`.
/// Each value is split into its `T`-coefficients; zero pieces are dropped.
pub fn generate_double_shuffle_with(weight: u32, options: &GenerationOptions) -> Vec<Relation> {
    let mut tasks = Vec::new();
    for wa in 1..weight {
        for a in Index::all_of_weight(wa) {
            for b in Index::all_of_weight(weight - wa) {
                if a <= b {
                    tasks.push(Task::Pair(a.clone(), b));
                }
            }
        }
    }
    for c in Index::all_of_weight(weight) {
        if !c.is_admissible() {
            tasks.push(Task::Regularization(c));
        }
    }
    if let Some(seed) = options.pair_order_seed {
        tasks.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
    }

    let results: Vec<Vec<Relation>> = if options.threads > 1 && tasks.len() > 1 {
        let chunk = tasks.len().div_ceil(options.threads);
        std::thread::scope(|scope| {
            let handles: Vec<_> = tasks
                .chunks(chunk)
                .map(|part| scope.spawn(move || part.iter().map(run_task).collect::<Vec<_>>()))
                .collect();
            handles.into_iter().flat_map(|h| h.join().expect("worker panicked")).collect()
        })
    } else {
        tasks.iter().map(run_task).collect()
    };
    results.into_iter().flatten().collect()
}

fn run_task(task: &Task) -> Vec<Relation> {
    let mut out = Vec::new();
    match task {
        Task::Pair(a, b) => {
            let words = shuffle(&a.to_word(), &b.to_word());
            let stuffled = stuffle(a, b);
            if a.is_admissible() || b.is_admissible() {
                let lhs = l_map(&reg_integral_combination(&words).expect("index words end with B"));
                let value = lhs.sub(&reg_series_combination(&stuffled));
                split(&value, &mut out, |t| Provenance::ShuffleMinusStuffle {
                    left: a.clone(),
                    right: b.clone(),
                    t_power: t,
                });
            } else {
                let mut integral = IntegralRegularizer::default();
                let product = integral.eval(&a.to_word()).mul(&integral.eval(&b.to_word()));
                let value = product.sub(&reg_integral_combination(&words).expect("index words end with B"));
                split(&value, &mut out, |t| Provenance::IntegralProduct {
                    left: a.clone(),
                    right: b.clone(),
                    t_power: t,
                });
                let mut series = SeriesRegularizer::default();
                let product = series.eval(a).mul(&series.eval(b));
                let value = product.sub(&reg_series_combination(&stuffled));
                split(&value, &mut out, |t| Provenance::SeriesProduct {
                    left: a.clone(),
                    right: b.clone(),
                    t_power: t,
                });
            }
        }
        Task::Regularization(c) => {
            let series = reg_series_combination(&IndexCombination::single(c.clone()));
            let integral = crate::regularization::reg_integral(&c.to_word()).expect("index words end with B");
            let value = series.sub(&l_map(&integral));
            split(&value, &mut out, |t| Provenance::RegularizationRelation { index: c.clone(), t_power: t });
        }
    }
    out
}

fn split<F: Fn(u32) -> Provenance>(value: &RegValue, out: &mut Vec<Relation>, provenance: F) {
    for (t, coeff) in value.t_coefficients() {
        if coeff.is_zero() {
            continue;
        }
        let weight = coeff.homogeneous_weight().expect("regularized values are weight homogeneous");
        out.push(Relation { weight, combination: normalize(&coeff), provenance: provenance(t) });
    }
}

/// Scales so that the leading coefficient (largest monomial) is positive with no common
/// denominators, purely for readability; the row space is unchanged.
fn normalize(value: &RegValue) -> RegValue {
    use num_integer::Integer;
    use num_traits::Signed;
    let mut lcm = num_bigint::BigInt::one();
    let mut gcd = num_bigint::BigInt::from(0);
    for (_, c) in value.iter() {
        lcm = lcm.lcm(c.denom());
        gcd = gcd.gcd(c.numer());
    }
    let lead_negative = value.iter().last().is_some_and(|(_, c)| c.is_negative());
    let mut factor = BigRational::new(lcm, gcd);
    if lead_negative {
        factor = -factor;
    }
    value.scale(&factor)
}
