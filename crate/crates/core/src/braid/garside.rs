//! Left-greedy normal form with permutation braids as simple elements.
//!
//! A simple braid is stored as its permutation `p`, with `p(xy) = p(x) ∘ p(y)`.
//! Its right descents `{i : p(i) > p(i+1)}` are the generators a word for it can
//! end with; the descents of `p⁻¹` are the generators it can start with.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::{garside_delta, BraidWord, Permutation};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GarsideNF {
    strand_count: usize,
    delta_power: i64,
    factors: Vec<Permutation>,
}

fn delta_perm(m: usize) -> Permutation {
    Permutation::from_raw((0..m as u8).rev().collect())
}

fn tau(p: &Permutation) -> Permutation {
    let m = p.degree();
    let raw = p.raw();
    Permutation::from_raw((0..m).map(|i| (m - 1) as u8 - raw[m - 1 - i]).collect())
}

fn tau_pow(p: &Permutation, k: i64) -> Permutation {
    if k.rem_euclid(2) == 1 {
        tau(p)
    } else {
        p.clone()
    }
}

fn is_delta(p: &Permutation) -> bool {
    let m = p.degree();
    p.raw().iter().enumerate().all(|(i, &x)| x as usize == m - 1 - i)
}

/// Moves generators from the front of `t` onto the end of `s` until every
/// generator `t` can start with is one `s` can already end with. Returns
/// whether anything moved.
fn left_weight(s: &mut Permutation, t: &mut Permutation) -> bool {
    let m = s.degree();
    let mut changed = false;
    loop {
        let ti = t.inverse();
        let (sr, tir) = (s.raw(), ti.raw());
        let pick = (0..m - 1).find(|&i| tir[i] > tir[i + 1] && sr[i] < sr[i + 1]);
        match pick {
            Some(i) => {
                s.mul_adjacent(i);
                t.adjacent_mul(i);
                changed = true;
            }
            None => return changed,
        }
    }
}

/// Positive word for a permutation braid, as 1-based letters.
pub(crate) fn simple_word(p: &Permutation) -> Vec<i32> {
    let mut q = p.clone();
    let mut rev = Vec::new();
    while let Some(i) = (0..q.degree() - 1).find(|&i| q.raw()[i] > q.raw()[i + 1]) {
        rev.push(i as i32 + 1);
        q.mul_adjacent(i);
    }
    rev.reverse();
    rev
}

fn simple_len(p: &Permutation) -> usize {
    let r = p.raw();
    let mut n = 0;
    for i in 0..r.len() {
        for j in i + 1..r.len() {
            if r[i] > r[j] {
                n += 1;
            }
        }
    }
    n
}

impl GarsideNF {
    pub fn identity(strand_count: usize) -> Self {
        GarsideNF { strand_count, delta_power: 0, factors: Vec::new() }
    }

    pub fn delta_power(strand_count: usize, k: i64) -> Self {
        GarsideNF { strand_count, delta_power: k, factors: Vec::new() }
    }

    pub fn strand_count(&self) -> usize {
        self.strand_count
    }

    /// Exponent of the leading power of Δ (the infimum).
    pub fn inf(&self) -> i64 {
        self.delta_power
    }

    pub fn sup(&self) -> i64 {
        self.delta_power + self.factors.len() as i64
    }

    pub fn factors(&self) -> &[Permutation] {
        &self.factors
    }

    pub fn is_identity(&self) -> bool {
        self.delta_power == 0 && self.factors.is_empty()
    }

    /// True when this is `Δ^{2k}`, a central element.
    pub fn is_central(&self) -> bool {
        self.factors.is_empty() && self.delta_power % 2 == 0
    }

    /// The same element times a power of the central `Δ²`, with Δ-exponent 0 or 1.
    pub fn without_center(&self) -> GarsideNF {
        GarsideNF { delta_power: self.delta_power.rem_euclid(2), ..self.clone() }
    }

    pub fn from_word(w: &BraidWord) -> GarsideNF {
        let m = w.strand_count();
        let delta = delta_perm(m);
        let total_neg = w.letters().iter().filter(|&&x| x < 0).count() as i64;
        let mut nf = GarsideNF { strand_count: m, delta_power: -total_neg, factors: Vec::new() };
        let mut neg_after = total_neg;
        for &x in w.letters() {
            let i = x.unsigned_abs() as usize - 1;
            let mut y = Permutation::identity(m);
            y.mul_adjacent(i);
            if x < 0 {
                neg_after -= 1;
                y = delta.compose(&y);
            }
            nf.push_simple(tau_pow(&y, neg_after));
        }
        nf
    }

    /// Appends a simple element on the right and restores normality.
    fn push_simple(&mut self, x: Permutation) {
        if x.is_identity() {
            return;
        }
        self.factors.push(x);
        let mut j = self.factors.len() - 1;
        while j > 0 {
            let (head, tail) = self.factors.split_at_mut(j);
            if !left_weight(&mut head[j - 1], &mut tail[0]) {
                break;
            }
            j -= 1;
        }
        while self.factors.last().is_some_and(|p| p.is_identity()) {
            self.factors.pop();
        }
        let lead = self.factors.iter().take_while(|p| is_delta(p)).count();
        if lead > 0 {
            self.factors.drain(..lead);
            self.delta_power += lead as i64;
        }
    }

    pub fn mul(&self, other: &GarsideNF) -> Result<GarsideNF> {
        if self.strand_count != other.strand_count {
            return Err(Error::StrandMismatch(self.strand_count, other.strand_count));
        }
        let mut out = GarsideNF {
            strand_count: self.strand_count,
            delta_power: self.delta_power + other.delta_power,
            factors: self.factors.iter().map(|p| tau_pow(p, other.delta_power)).collect(),
        };
        for p in &other.factors {
            out.push_simple(p.clone());
        }
        Ok(out)
    }

    pub fn inverse(&self) -> GarsideNF {
        // (Δ^k s_1..s_r)^{-1} = Δ^{-k-r} · Π_{j=r..1} τ^{k+j}(s_j^{-1} Δ)
        let m = self.strand_count;
        let delta = delta_perm(m);
        let r = self.factors.len() as i64;
        let k = self.delta_power;
        let mut out = GarsideNF { strand_count: m, delta_power: -k - r, factors: Vec::new() };
        for (j, s) in self.factors.iter().enumerate().rev() {
            let star = s.inverse().compose(&delta);
            out.push_simple(tau_pow(&star, k + j as i64 + 1));
        }
        out
    }

    /// Conjugate `x⁻¹ · self · x`.
    pub fn conjugate_by(&self, x: &GarsideNF) -> Result<GarsideNF> {
        x.inverse().mul(self)?.mul(x)
    }

    pub fn to_word(&self) -> BraidWord {
        let m = self.strand_count;
        let delta = garside_delta(m).expect("strand count checked at construction");
        let block = if self.delta_power >= 0 { delta } else { delta.invert() };
        let mut letters = Vec::with_capacity(self.word_len());
        for _ in 0..self.delta_power.unsigned_abs() {
            letters.extend_from_slice(block.letters());
        }
        for p in &self.factors {
            letters.extend(simple_word(p));
        }
        BraidWord::from_raw(m, letters)
    }

    /// Length of the word produced by `to_word`.
    pub fn word_len(&self) -> usize {
        let m = self.strand_count;
        self.delta_power.unsigned_abs() as usize * m * (m - 1) / 2
            + self.factors.iter().map(simple_len).sum::<usize>()
    }

    pub fn permutation(&self) -> Permutation {
        let m = self.strand_count;
        let mut p = if self.delta_power.rem_euclid(2) == 1 { delta_perm(m) } else { Permutation::identity(m) };
        for f in &self.factors {
            p = p.compose(f);
        }
        p
    }

    #[cfg(test)]
    pub(crate) fn is_left_weighted(&self) -> bool {
        self.factors.windows(2).all(|w| {
            let (mut s, mut t) = (w[0].clone(), w[1].clone());
            !left_weight(&mut s, &mut t)
        }) && self.factors.iter().all(|p| !p.is_identity() && !is_delta(p))
    }
}

impl fmt::Display for GarsideNF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Δ^{}", self.delta_power)?;
        for p in &self.factors {
            let w: Vec<String> = simple_word(p).iter().map(|x| x.to_string()).collect();
            write!(f, " [{}]", w.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for GarsideNF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GarsideNF(m={}, {self})", self.strand_count)
    }
}
