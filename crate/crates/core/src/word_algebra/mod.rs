//! Words over `{A, B}`, multiple zeta indices, and the two product structures on them:
//! the shuffle product of words and the stuffle (quasi-shuffle) product of indices.

mod combination;
mod index;
mod shuffle;
mod surjection;
mod word;

pub use combination::{parse_rational, Combination, IndexCombination, TermJson, WordCombination};
pub use index::{index_to_word, word_to_index, Index};
pub use shuffle::{apply_shuffle, shuffle, shuffle_combinations, shuffle_permutations};
pub use surjection::{
    enumerate_ordered_surjections, stuffle, stuffle_combinations, stuffle_contract, OrderedSurjection,
};
pub use word::{Letter, Word};
