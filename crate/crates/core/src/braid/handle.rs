//! Handle reduction, used only as an independent check on the normal form.
//!
//! A handle is a factor `a_i^e v a_i^{-e}` where `v` has no letter `a_i^{±1}`
//! or `a_{i-1}^{±1}`. Reducing the handle with the leftmost end replaces it by
//! `v` with each `a_{i+1}^d` turned into `a_{i+1}^{-e} a_i^d a_{i+1}^e`. A word
//! is trivial iff this process reaches the empty word.

use super::BraidWord;

/// `Some(true)` if `w` is trivial, `Some(false)` if not, `None` if the step
/// budget ran out first.
pub fn is_trivial_by_handles(w: &BraidWord, max_steps: usize) -> Option<bool> {
    let mut word: Vec<i32> = w.letters().to_vec();
    for _ in 0..max_steps {
        match leftmost_handle(&word) {
            None => return Some(word.is_empty()),
            Some((start, end)) => reduce(&mut word, start, end),
        }
    }
    None
}

pub fn words_equal_by_handles(a: &BraidWord, b: &BraidWord, max_steps: usize) -> Option<bool> {
    let w = a.compose(&b.invert()).ok()?;
    is_trivial_by_handles(&w, max_steps)
}

fn leftmost_handle(word: &[i32]) -> Option<(usize, usize)> {
    for end in 1..word.len() {
        let x = word[end];
        let i = x.abs();
        for start in (0..end).rev() {
            let y = word[start];
            if y.abs() == i {
                if y == -x {
                    return Some((start, end));
                }
                break;
            }
            if y.abs() == i - 1 {
                break;
            }
        }
    }
    None
}

fn reduce(word: &mut Vec<i32>, start: usize, end: usize) {
    let x = word[start];
    let (i, e) = (x.abs(), x.signum());
    let mut middle = Vec::with_capacity(3 * (end - start));
    for &y in &word[start + 1..end] {
        if y.abs() == i + 1 {
            middle.extend_from_slice(&[-(i + 1) * e, i * y.signum(), (i + 1) * e]);
        } else {
            middle.push(y);
        }
    }
    word.splice(start..=end, middle);
}
