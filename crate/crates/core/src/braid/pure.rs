//! Band generators, full twists and pure braids.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::garside::simple_word;
use super::word::check_strands;
use super::{permutation_of, BraidWord, GarsideNF, Permutation};
use crate::error::{Error, Result};

fn check_pair(m: usize, k: usize, l: usize) -> Result<()> {
    if 1 <= k && k < l && l <= m {
        Ok(())
    } else {
        Err(Error::BadPair { k, l, m })
    }
}

/// `Δ = (a_1..a_{m-1})(a_1..a_{m-2})..(a_1 a_2)(a_1)`.
pub fn garside_delta(m: usize) -> Result<BraidWord> {
    check_strands(m)?;
    let mut letters = Vec::with_capacity(m * (m - 1) / 2);
    for top in (1..m as i32).rev() {
        letters.extend(1..=top);
    }
    Ok(BraidWord::from_raw(m, letters))
}

fn descending(from: usize, to: usize) -> impl Iterator<Item = i32> {
    // a_from a_{from-1} .. a_to, empty when from < to
    (to..=from).rev().map(|x| x as i32)
}

/// `z_{k,l} = (a_{l-1}..a_{k+1}) a_k (a_{l-1}..a_{k+1})^{-1}`.
pub fn band_generator(m: usize, k: usize, l: usize) -> Result<BraidWord> {
    check_strands(m)?;
    check_pair(m, k, l)?;
    let prefix: Vec<i32> = descending(l - 1, k + 1).collect();
    let mut letters = prefix.clone();
    letters.push(k as i32);
    letters.extend(prefix.iter().rev().map(|&x| -x));
    Ok(BraidWord::from_raw(m, letters))
}

/// The full twist `z_{k,l}^2`.
pub fn full_twist(m: usize, k: usize, l: usize) -> Result<BraidWord> {
    Ok(band_generator(m, k, l)?.pow(2))
}

/// A word `w` with `w a_1 w^{-1} = z_{k,l}`, namely
/// `(a_{l-1}..a_{k+1})(a_{k-1}a_k)(a_{k-2}a_{k-1})..(a_1a_2)`.
pub fn base_conjugator(m: usize, k: usize, l: usize) -> Result<BraidWord> {
    check_strands(m)?;
    check_pair(m, k, l)?;
    let mut letters: Vec<i32> = descending(l - 1, k + 1).collect();
    for j in (1..k).rev() {
        letters.push(j as i32);
        letters.push(j as i32 + 1);
    }
    Ok(BraidWord::from_raw(m, letters))
}

pub fn is_pure(w: &BraidWord) -> bool {
    permutation_of(w).is_identity()
}

/// One letter `z_{k,l}^{±2}` of a word in the full twists.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TwistLetter {
    pub k: usize,
    pub l: usize,
    pub positive: bool,
}

impl TwistLetter {
    pub fn new(k: usize, l: usize, positive: bool) -> Self {
        TwistLetter { k, l, positive }
    }

    pub fn inverse(self) -> Self {
        TwistLetter { positive: !self.positive, ..self }
    }
}

impl fmt::Debug for TwistLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "A{},{}{}", self.k, self.l, if self.positive { "" } else { "^-1" })
    }
}

/// Product of twist letters as a braid word.
pub fn twist_word_to_braid(m: usize, letters: &[TwistLetter]) -> Result<BraidWord> {
    check_strands(m)?;
    let mut out = Vec::new();
    for t in letters {
        check_pair(m, t.k, t.l)?;
        let z = full_twist(m, t.k, t.l)?;
        let z = if t.positive { z } else { z.invert() };
        out.extend_from_slice(z.letters());
    }
    Ok(BraidWord::from_raw(m, out))
}

/// A positive word in the full twists `z_{k,l}^2`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PositiveTwistWord {
    pub strand_count: usize,
    pub letters: Vec<(usize, usize)>,
}

impl PositiveTwistWord {
    pub fn to_braid_word(&self) -> BraidWord {
        let letters: Vec<TwistLetter> = self.letters.iter().map(|&(k, l)| TwistLetter::new(k, l, true)).collect();
        twist_word_to_braid(self.strand_count, &letters).expect("letters validated on construction")
    }
}

impl fmt::Debug for PositiveTwistWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PositiveTwistWord(m={}, {:?})", self.strand_count, self.letters)
    }
}

/// The pairs of the full-twist factorization of `Δ²`: `l` from `m` down to 2,
/// and for each `l`, `k` from 1 to `l-1`.
pub fn delta_twist_order(m: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity(m * (m - 1) / 2);
    for l in (2..=m).rev() {
        for k in 1..l {
            out.push((k, l));
        }
    }
    out
}

fn pos(k: usize, l: usize) -> TwistLetter {
    TwistLetter::new(k, l, true)
}

fn neg(k: usize, l: usize) -> TwistLetter {
    TwistLetter::new(k, l, false)
}

/// `a_j A_{k,l} a_j^{-1}` (or `a_j^{-1} A_{k,l} a_j` when `!forward`) as twist letters.
fn conjugate_twist(m: usize, j: usize, forward: bool, k: usize, l: usize) -> Vec<TwistLetter> {
    if forward {
        if j == l && l < m {
            vec![pos(k, l + 1)]
        } else if j + 1 == l && k + 1 < l {
            vec![pos(l - 1, l), pos(k, l - 1), neg(l - 1, l)]
        } else if j == k && k + 1 < l {
            vec![pos(k + 1, l)]
        } else if j + 1 == k {
            vec![neg(k, l), pos(k - 1, l), pos(k, l)]
        } else {
            vec![pos(k, l)]
        }
    } else if j + 1 == l && k + 1 < l {
        vec![pos(k, l - 1)]
    } else if j == l && l < m {
        vec![neg(l, l + 1), pos(k, l + 1), pos(l, l + 1)]
    } else if j == k && k + 1 < l {
        vec![pos(k, l), pos(k + 1, l), neg(k, l)]
    } else if j + 1 == k {
        vec![pos(k - 1, l)]
    } else {
        vec![pos(k, l)]
    }
}

fn push_reduced(out: &mut Vec<TwistLetter>, t: TwistLetter) {
    if out.last() == Some(&t.inverse()) {
        out.pop();
    } else {
        out.push(t);
    }
}

/// Conjugates a twist word by a single generator letter.
fn conjugate_twist_word(m: usize, letter: i32, word: &[TwistLetter]) -> Vec<TwistLetter> {
    let j = letter.unsigned_abs() as usize;
    let mut out = Vec::with_capacity(word.len() * 3);
    for t in word {
        let image = conjugate_twist(m, j, letter > 0, t.k, t.l);
        if t.positive {
            for x in image {
                push_reduced(&mut out, x);
            }
        } else {
            for x in image.into_iter().rev() {
                push_reduced(&mut out, x.inverse());
            }
        }
    }
    out
}

/// `c · A_{i,i+1} · c^{-1}` for a positive word `c`.
fn conjugated_twist(m: usize, c: &[i32], i: usize) -> Vec<TwistLetter> {
    let mut word = vec![pos(i, i + 1)];
    for &b in c.iter().rev() {
        word = conjugate_twist_word(m, b, &word);
    }
    word
}

/// Writes a pure braid as a word in the full twists `z_{k,l}^{±2}`.
///
/// Uses the permutation braids as coset representatives of the pure braid
/// group: each letter of `w` contributes at most one conjugated twist.
pub fn comb_pure(w: &BraidWord) -> Result<Vec<TwistLetter>> {
    if !is_pure(w) {
        return Err(Error::NotPure);
    }
    let m = w.strand_count();
    let mut cache: HashMap<(Permutation, usize), Vec<TwistLetter>> = HashMap::new();
    let mut pi = Permutation::identity(m);
    let mut out: Vec<TwistLetter> = Vec::new();
    for &x in w.letters() {
        let i = x.unsigned_abs() as usize;
        let descent = pi.raw()[i - 1] > pi.raw()[i];
        let mut next = pi.clone();
        next.mul_adjacent(i - 1);
        let emitted = match (x > 0, descent) {
            (true, true) => Some((next.clone(), true)),
            (false, false) => Some((pi.clone(), false)),
            _ => None,
        };
        if let Some((rep, positive)) = emitted {
            let word = cache
                .entry((rep.clone(), i))
                .or_insert_with(|| conjugated_twist(m, &simple_word(&rep), i));
            if positive {
                for &t in word.iter() {
                    push_reduced(&mut out, t);
                }
            } else {
                for &t in word.iter().rev() {
                    push_reduced(&mut out, t.inverse());
                }
            }
        }
        pi = next;
    }
    Ok(out)
}

/// A positive twist word `w` and the number `M` of replaced negative letters,
/// with `w x w^{-1} = p x p^{-1}` for every braid `x`.
///
/// Each `z_{k,l}^{-2}` is replaced by the product of the other letters of the
/// full-twist factorization of `Δ²`, rotated to start just after `(k,l)`. This
/// multiplies `p` by the central `Δ^{2M}`.
pub fn positive_conjugator(p: &BraidWord) -> Result<(PositiveTwistWord, usize)> {
    let m = p.strand_count();
    if !is_pure(p) {
        return Err(Error::NotPure);
    }
    if GarsideNF::from_word(p).is_central() {
        return Ok((PositiveTwistWord { strand_count: m, letters: Vec::new() }, 0));
    }
    let order = delta_twist_order(m);
    let mut letters = Vec::new();
    let mut deficit = 0;
    for t in comb_pure(p)? {
        if t.positive {
            letters.push((t.k, t.l));
        } else {
            deficit += 1;
            let at = order.iter().position(|&x| x == (t.k, t.l)).expect("every pair occurs");
            letters.extend_from_slice(&order[at + 1..]);
            letters.extend_from_slice(&order[..at]);
        }
    }
    Ok((PositiveTwistWord { strand_count: m, letters }, deficit))
}

/// A pure braid `p` and pair `(k,l)` with `q a_1^e q^{-1} = p z_{k,l}^e p^{-1}`,
/// where `{k,l}` is the image of `{1,2}` under the permutation of `q`.
pub fn pure_decompose(q: &BraidWord, e: i32) -> Result<(BraidWord, (usize, usize))> {
    if e == 0 {
        return Err(Error::Precondition("exponent must be nonzero".into()));
    }
    let m = q.strand_count();
    let sigma = permutation_of(q);
    let (a, b) = (sigma.apply(1), sigma.apply(2));
    let (k, l) = (a.min(b), a.max(b));
    let w0 = base_conjugator(m, k, l)?;
    // pi fixes {1,2} setwise, so its reduced word only uses a_1 and a_3..a_{m-1}
    let pi = permutation_of(&w0).inverse().compose(&sigma);
    let u = BraidWord::from_raw(m, simple_word(&pi));
    let p = q.compose(&u.invert())?.compose(&w0.invert())?.free_reduced();
    Ok((p, (k, l)))
}
