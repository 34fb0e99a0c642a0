use num_rational::BigRational;
use num_traits::One;

use super::combination::WordCombination;
use super::word::Word;

/// The shuffle permutations `Sh(k, l)`: bijections `tau` of `{0, .., k+l-1}` that are
/// increasing on `{0, .., k-1}` and on `{k, .., k+l-1}`.
///
/// Each permutation is returned as the vector `[tau(0), .., tau(k+l-1)]`.
pub fn shuffle_permutations(k: usize, l: usize) -> Vec<Vec<usize>> {
    fn rec(k: usize, l: usize, pos: usize, chosen: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if chosen.len() == k {
            let mut tau = chosen.clone();
            tau.extend((0..k + l).filter(|p| !chosen.contains(p)));
            out.push(tau);
            return;
        }
        let remaining = k - chosen.len();
        for p in pos..=(k + l - remaining) {
            chosen.push(p);
            rec(k, l, p + 1, chosen, out);
            chosen.pop();
        }
    }
    let mut out = Vec::new();
    rec(k, l, 0, &mut Vec::with_capacity(k), &mut out);
    out
}

/// `tau(W, W')`: the word `Z_1 .. Z_{k+l}` with `Z_i = X_{tau^{-1}(i)}`, where
/// `X_1 .. X_{k+l}` is the concatenation of `u` and `v`.
pub fn apply_shuffle(tau: &[usize], u: &Word, v: &Word) -> Word {
    let joined = u.concat(v);
    let mut letters = joined.letters().to_vec();
    for (src, &dst) in tau.iter().enumerate() {
        letters[dst] = joined.letters()[src];
    }
    Word::new(letters)
}

/// The shuffle product of two words: the sum over `Sh(|u|, |v|)` of the interleaved words.
pub fn shuffle(u: &Word, v: &Word) -> WordCombination {
    let mut out = WordCombination::zero();
    if u.is_empty() || v.is_empty() {
        out.add_term(u.concat(v), BigRational::one());
        return out;
    }
    for tau in shuffle_permutations(u.len(), v.len()) {
        out.add_term(apply_shuffle(&tau, u, v), BigRational::one());
    }
    out
}

/// Bilinear extension of [`shuffle`].
pub fn shuffle_combinations(a: &WordCombination, b: &WordCombination) -> WordCombination {
    a.bilinear(b, shuffle)
}
