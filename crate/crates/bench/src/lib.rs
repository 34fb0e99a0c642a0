//! Inputs shared by the benchmarks.

use dshuffle_core::padic::{PAdic, PAdicContext};
use dshuffle_core::Word;
use num_rational::BigRational;

/// `A^k B` repeated `reps` times.
pub fn sample_word(k: usize, reps: usize) -> Word {
    let block = Word::a_power(k).concat(&Word::b_power(1));
    (0..reps).fold(Word::empty(), |w, _| w.concat(&block))
}

/// A p-adic context with branch 0 and the point `(p, 2p, ...)`.
pub fn padic_setup(p: u64, precision: u32, depth: usize) -> (PAdicContext, Vec<PAdic>) {
    let ctx = PAdicContext::new(p, precision, &BigRational::from_integer(0.into())).expect("prime");
    let point = (1..=depth as i64).map(|j| ctx.from_integer(p as i64 * j)).collect();
    (ctx, point)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures() {
        assert_eq!(sample_word(1, 2).to_string(), "ABAB");
        let (ctx, pt) = padic_setup(5, 10, 3);
        assert_eq!(ctx.p(), 5);
        assert_eq!(pt.len(), 3);
        assert_eq!(pt[2].valuation(), 1);
    }
}
