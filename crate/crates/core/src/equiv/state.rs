//! Factorizations as lists of normal forms, for hashing during search.

use crate::braid::GarsideNF;
use crate::cert::{Direction, Move};
use crate::search::Space;
use crate::semigroup::{Factorization, SingClass};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) struct NfFactor {
    pub class: SingClass,
    pub nf: GarsideNF,
}

pub(crate) fn nf_state(s: &Factorization) -> Vec<NfFactor> {
    s.factors().iter().map(|f| NfFactor { class: f.class, nf: f.value_nf() }).collect()
}

/// Hurwitz move on normal forms; `i` is 1-based.
pub(crate) fn nf_hurwitz(s: &[NfFactor], i: usize, dir: Direction) -> Vec<NfFactor> {
    let mut out = s.to_vec();
    let (x, y) = (&s[i - 1], &s[i]);
    let mul = |a: &GarsideNF, b: &GarsideNF| a.mul(b).expect("same strand count");
    match dir {
        Direction::R => {
            let conj = mul(&mul(&y.nf.inverse(), &x.nf), &y.nf);
            out[i - 1] = y.clone();
            out[i] = NfFactor { class: x.class, nf: conj };
        }
        Direction::L => {
            let conj = mul(&mul(&x.nf, &y.nf), &x.nf.inverse());
            out[i - 1] = NfFactor { class: y.class, nf: conj };
            out[i] = x.clone();
        }
    }
    out
}

pub(crate) fn cancels(x: &NfFactor, y: &NfFactor) -> bool {
    matches!((x.class, y.class), (SingClass::A(1), SingClass::Abar1) | (SingClass::Abar1, SingClass::A(1)))
        && x.nf == y.nf.inverse()
}

/// Hurwitz moves in the order (position, R before L), then cancellations.
pub(crate) struct NfSpace {
    pub max_word_length: usize,
    pub cancel: bool,
}

impl Space for NfSpace {
    type State = Vec<NfFactor>;
    type Step = Move;

    fn expand(&self, s: &Vec<NfFactor>, out: &mut Vec<(Move, Vec<NfFactor>)>) -> bool {
        let mut complete = true;
        for i in 1..s.len() {
            for dir in [Direction::R, Direction::L] {
                let next = nf_hurwitz(s, i, dir);
                let changed = if dir == Direction::R { i } else { i - 1 };
                if next[changed].nf.word_len() > self.max_word_length {
                    complete = false;
                } else if &next != s {
                    out.push((Move::Hurwitz(dir, i), next));
                }
            }
        }
        if self.cancel {
            for i in 1..s.len() {
                if cancels(&s[i - 1], &s[i]) {
                    let mut next = s.clone();
                    next.drain(i - 1..=i);
                    out.push((Move::Cancel(i), next));
                }
            }
        }
        complete
    }
}
