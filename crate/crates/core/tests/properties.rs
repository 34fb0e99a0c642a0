use dshuffle_core::moduli::{x_to_z, z_to_x};
use dshuffle_core::ncseries::{exp_primitive, RationalRing, Ring};
use dshuffle_core::padic::{padic_log, verify_series_shuffle_padic, PAdicContext};
use dshuffle_core::regularization::{reg_integral, reg_integral_combination, reg_series, KnownRelations};
use dshuffle_core::word_algebra::{shuffle, shuffle_combinations, stuffle, stuffle_combinations};
use dshuffle_core::{Index, IndexCombination, Letter, RegValue, Word, WordCombination};
use num_bigint::BigInt;
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;
use std::sync::OnceLock;

fn word(max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(any::<bool>(), 0..=max_len)
        .prop_map(|bits| Word::new(bits.into_iter().map(|b| if b { Letter::A } else { Letter::B }).collect()))
}

fn index(max_depth: usize, max_entry: u32) -> impl Strategy<Value = Index> {
    prop::collection::vec(1..=max_entry, 0..=max_depth).prop_map(|e| Index::new(e).unwrap())
}

fn small_rational() -> impl Strategy<Value = BigRational> {
    (-30i64..=30, 1i64..=12).prop_map(|(n, d)| BigRational::new(n.into(), d.into()))
}

fn known() -> &'static KnownRelations {
    static K: OnceLock<KnownRelations> = OnceLock::new();
    K.get_or_init(|| KnownRelations::new(6))
}

fn word_ending_in_b(max_len: usize) -> impl Strategy<Value = Word> {
    word(max_len - 1).prop_map(|w| w.concat(&Word::b_power(1)))
}

fn reg_series_of(c: &IndexCombination) -> RegValue {
    let mut out = RegValue::zero();
    for (i, k) in c.iter() {
        out.add_assign_scaled(&reg_series(i), k);
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn shuffle_is_commutative_and_associative(u in word(4), v in word(4), w in word(3)) {
        prop_assert_eq!(shuffle(&u, &v), shuffle(&v, &u));
        let left = shuffle_combinations(&shuffle(&u, &v), &WordCombination::single(w.clone()));
        let right = shuffle_combinations(&WordCombination::single(u.clone()), &shuffle(&v, &w));
        prop_assert_eq!(left, right);
    }

    #[test]
    fn shuffle_counts_interleavings(u in word(5), v in word(5)) {
        let mass = shuffle(&u, &v).total_mass();
        let expected = binomial(BigInt::from(u.len() + v.len()), BigInt::from(u.len()));
        prop_assert_eq!(mass, BigRational::from_integer(expected));
    }

    #[test]
    fn stuffle_is_commutative_and_associative(a in index(3, 3), b in index(3, 3), c in index(2, 3)) {
        prop_assert_eq!(stuffle(&a, &b), stuffle(&b, &a));
        let left = stuffle_combinations(&stuffle(&a, &b), &IndexCombination::single(c.clone()));
        let right = stuffle_combinations(&IndexCombination::single(a.clone()), &stuffle(&b, &c));
        prop_assert_eq!(left, right);
    }

    #[test]
    fn stuffle_preserves_weight(a in index(3, 4), b in index(3, 4)) {
        for (term, _) in stuffle(&a, &b).iter() {
            prop_assert_eq!(term.weight(), a.weight() + b.weight());
        }
    }

    #[test]
    fn integral_regularization_respects_shuffle(u in word_ending_in_b(3), v in word_ending_in_b(3)) {
        let diff = reg_integral_combination(&shuffle(&u, &v))
            .unwrap()
            .sub(&reg_integral(&u).unwrap().mul(&reg_integral(&v).unwrap()));
        prop_assert_eq!(known().contains(&diff), Some(true));
    }

    #[test]
    fn series_regularization_respects_stuffle(a in index(3, 3), b in index(3, 3)) {
        prop_assume!(a.weight() + b.weight() <= 6);
        let diff = reg_series_of(&stuffle(&a, &b)).sub(&reg_series(&a).mul(&reg_series(&b)));
        prop_assert_eq!(known().contains(&diff), Some(true));
    }

    #[test]
    fn grouplike_characterizations_agree(alpha in small_rational(), beta in small_rational()) {
        let ring = RationalRing;
        let g = exp_primitive(ring, 5, &alpha, &beta).unwrap();
        prop_assert!(g.is_grouplike(0.0).unwrap().holds);
        prop_assert!(g.is_grouplike_shuffle(0.0).unwrap().holds);
        // perturbing a single degree-two coefficient breaks both
        let mut h = g.clone();
        let ab: Word = "AB".parse().unwrap();
        h.add_to(ab, &ring.one());
        prop_assert!(!h.is_grouplike(0.0).unwrap().holds);
        prop_assert!(!h.is_grouplike_shuffle(0.0).unwrap().holds);
    }

    #[test]
    fn log_of_exp_primitive_is_primitive(alpha in small_rational(), beta in small_rational()) {
        let g = exp_primitive(RationalRing, 5, &alpha, &beta).unwrap();
        let l = g.log().unwrap();
        prop_assert!(l.is_primitive(0.0).holds);
        prop_assert_eq!(l.coefficient(&"A".parse().unwrap()), alpha);
        prop_assert_eq!(l.coefficient(&"B".parse().unwrap()), beta);
        prop_assert!(l.coefficient(&"AB".parse().unwrap()).is_zero());
    }

    #[test]
    fn coordinates_round_trip(x in prop::collection::vec(small_rational(), 1..=5)) {
        if let Ok(z) = x_to_z(&x) {
            if let Ok(back) = z_to_x(&z) {
                prop_assert_eq!(back, x);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn padic_log_is_additive(p in prop::sample::select(vec![5u64, 7, 11]), a in 1i64..400, b in 1i64..400,
                             va in 0u32..3, vb in 0u32..3, branch in 0i64..3) {
        let ctx = PAdicContext::new(p, 20, &BigRational::from_integer(branch.into())).unwrap();
        let pi = p as i64;
        let x = ctx.from_rational(&BigRational::new((a * pi.pow(va)).into(), (b % pi + pi + 1).into()));
        let y = ctx.from_integer(b * pi.pow(vb));
        prop_assume!(!x.is_zero() && !y.is_zero());
        let lhs = padic_log(&x.mul(&y), &ctx).unwrap();
        let rhs = padic_log(&x, &ctx).unwrap().add(&padic_log(&y, &ctx).unwrap());
        let diff = lhs.sub(&rhs);
        prop_assert!(diff.is_zero());
        prop_assert!(diff.abs_prec() >= 18, "abs precision {}", diff.abs_prec());
    }

    #[test]
    fn padic_series_shuffle(p in prop::sample::select(vec![5u64, 7]), a in index(2, 2), b in index(2, 2),
                            seed in prop::collection::vec(1i64..30, 4)) {
        prop_assume!(a.weight() + b.weight() <= 4);
        let ctx = PAdicContext::new(p, 15, &BigRational::zero()).unwrap();
        let pt = |k: usize| ctx.from_integer(p as i64 * seed[k]);
        let x: Vec<_> = (0..a.depth()).map(pt).collect();
        let y: Vec<_> = (0..b.depth()).map(|k| pt(k + 2)).collect();
        let v = verify_series_shuffle_padic(&a, &x, &b, &y, &ctx).unwrap();
        prop_assert!(v >= 12, "residual valuation {}", v);
    }
}
