//! Braid groups in the standard generators.
//!
//! Convention: the permutation of a word is the composition of the letter
//! transpositions as functions, so the rightmost letter acts first.

mod garside;
mod handle;
mod perm;
mod pure;
mod word;

pub use garside::GarsideNF;
pub use handle::{is_trivial_by_handles, words_equal_by_handles};
pub use perm::Permutation;
pub use pure::{
    band_generator, base_conjugator, comb_pure, delta_twist_order, full_twist, garside_delta, is_pure,
    positive_conjugator, pure_decompose, twist_word_to_braid, PositiveTwistWord, TwistLetter,
};
pub use word::BraidWord;

use crate::error::{Error, Result};

/// Largest supported strand count. Permutations are stored as bytes.
pub const MAX_STRANDS: usize = 64;

pub fn permutation_of(w: &BraidWord) -> Permutation {
    let mut p = Permutation::identity(w.strand_count());
    for &x in w.letters() {
        p.mul_adjacent(x.unsigned_abs() as usize - 1);
    }
    p
}

pub fn normal_form(w: &BraidWord) -> GarsideNF {
    GarsideNF::from_word(w)
}

pub fn words_equal(w1: &BraidWord, w2: &BraidWord) -> Result<bool> {
    if w1.strand_count() != w2.strand_count() {
        return Err(Error::StrandMismatch(w1.strand_count(), w2.strand_count()));
    }
    Ok(GarsideNF::from_word(w1) == GarsideNF::from_word(w2))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn permutation_convention() {
        let a = |l: &[i32]| BraidWord::new(4, l.to_vec()).unwrap();
        assert_eq!(permutation_of(&a(&[1])), Permutation::transposition(4, 1, 2));
        assert_eq!(permutation_of(&a(&[3])), Permutation::transposition(4, 3, 4));
        assert!(permutation_of(&a(&[])).is_identity());
        // (ac^3) b (ac^3)^{-1} is the band between 1 and 4
        let w = a(&[1, 3, 3, 3, 2, -3, -3, -3, -1]);
        assert_eq!(permutation_of(&w), Permutation::transposition(4, 1, 4));
    }

    #[test]
    fn words_equal_examples() {
        let w = |l: &[i32]| BraidWord::new(4, l.to_vec()).unwrap();
        // (bacb)a = c(bacb) and a(bacb) = (bacb)c
        assert!(words_equal(&w(&[2, 1, 3, 2, 1]), &w(&[3, 2, 1, 3, 2])).unwrap());
        assert!(words_equal(&w(&[1, 2, 1, 3, 2]), &w(&[2, 1, 3, 2, 3])).unwrap());
        let v = |l: &[i32]| BraidWord::new(3, l.to_vec()).unwrap();
        assert!(!words_equal(&v(&[1]), &v(&[2])).unwrap());
        assert!(words_equal(&v(&[1]), &w(&[1])).is_err());
    }

    #[test]
    fn delta_squared_is_power_of_coxeter_word() {
        for m in 2..=6 {
            let d2 = garside_delta(m).unwrap().pow(2);
            let cox = BraidWord::new(m, (1..m as i32).collect()).unwrap().pow(m as i32);
            assert!(words_equal(&d2, &cox).unwrap());
            assert!(is_pure(&d2));
        }
    }
}
