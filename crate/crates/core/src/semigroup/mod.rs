//! Factorizations into conjugates of powers of `a_1`.

mod factor;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::braid::{base_conjugator, delta_twist_order, normal_form, BraidWord, GarsideNF, Permutation};
use crate::cert::{Direction, Move};
use crate::error::{Error, Result};
use crate::sym::{closure, MarkedSymFactorization, SymEntry, SymSubgroup, NEGATIVE_NODE_MARK};

pub use factor::{compact_conjugator, Factor, SingClass};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Factorization {
    strand_count: usize,
    factors: Vec<Factor>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MultiDegree {
    pub d_bar1: usize,
    pub d: BTreeMap<u32, usize>,
}

impl MultiDegree {
    pub fn total(&self) -> usize {
        self.d_bar1 + self.d.values().sum::<usize>()
    }

    pub fn count(&self, i: u32) -> usize {
        self.d.get(&i).copied().unwrap_or(0)
    }
}

impl fmt::Display for MultiDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(d_bar1={}", self.d_bar1)?;
        for (i, n) in &self.d {
            write!(f, ", d{i}={n}")?;
        }
        write!(f, ")")
    }
}

impl Factorization {
    pub fn new(strand_count: usize, factors: Vec<Factor>) -> Result<Self> {
        crate::braid::BraidWord::identity(strand_count)?;
        for f in &factors {
            if f.conj.strand_count() != strand_count {
                return Err(Error::StrandMismatch(strand_count, f.conj.strand_count()));
            }
        }
        Ok(Factorization { strand_count, factors })
    }

    pub fn empty(strand_count: usize) -> Result<Self> {
        Self::new(strand_count, Vec::new())
    }

    pub fn strand_count(&self) -> usize {
        self.strand_count
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn classes(&self) -> Vec<SingClass> {
        self.factors.iter().map(|f| f.class).collect()
    }

    /// `s · t`
    pub fn concat(&self, other: &Factorization) -> Result<Factorization> {
        if self.strand_count != other.strand_count {
            return Err(Error::StrandMismatch(self.strand_count, other.strand_count));
        }
        let mut factors = self.factors.clone();
        factors.extend_from_slice(&other.factors);
        Ok(Factorization { strand_count: self.strand_count, factors })
    }

    pub fn pow(&self, n: usize) -> Factorization {
        let factors = (0..n).flat_map(|_| self.factors.iter().cloned()).collect();
        Factorization { strand_count: self.strand_count, factors }
    }

    /// Same factors on more strands.
    pub fn widen(&self, strand_count: usize) -> Result<Factorization> {
        let factors = self
            .factors
            .iter()
            .map(|f| Ok(Factor { class: f.class, conj: f.conj.widen(strand_count)? }))
            .collect::<Result<Vec<_>>>()?;
        Ok(Factorization { strand_count, factors })
    }

    pub fn value_nfs(&self) -> Vec<GarsideNF> {
        self.factors.iter().map(Factor::value_nf).collect()
    }

    /// Class tags equal and values equal in the braid group, position by position.
    pub fn matches(&self, other: &Factorization) -> bool {
        self.strand_count == other.strand_count
            && self.len() == other.len()
            && self.factors.iter().zip(&other.factors).all(|(a, b)| a.class == b.class && a.value_nf() == b.value_nf())
    }

    /// Position of the first factor where `matches` fails.
    pub fn first_mismatch(&self, other: &Factorization) -> Option<usize> {
        if self.len() != other.len() {
            return Some(self.len().min(other.len()) + 1);
        }
        self.factors
            .iter()
            .zip(&other.factors)
            .position(|(a, b)| a.class != b.class || a.value_nf() != b.value_nf())
            .map(|p| p + 1)
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i == 0 || i >= self.len() {
            Err(Error::Index { index: i, len: self.len() })
        } else {
            Ok(())
        }
    }

    /// `(x, y) -> (y, y⁻¹xy)` or `(xyx⁻¹, x)` at positions `i, i+1`.
    pub fn hurwitz(&self, i: usize, dir: Direction) -> Result<Factorization> {
        self.check_index(i)?;
        let mut out = self.clone();
        let (x, y) = (&self.factors[i - 1], &self.factors[i]);
        let (first, second) = match dir {
            Direction::R => {
                let conj = y.value_inverse().compose(&x.conj)?;
                (y.clone(), Factor { class: x.class, conj: compact_conjugator(&conj) })
            }
            Direction::L => {
                let conj = x.value().compose(&y.conj)?;
                (Factor { class: y.class, conj: compact_conjugator(&conj) }, x.clone())
            }
        };
        out.factors[i - 1] = first;
        out.factors[i] = second;
        Ok(out)
    }

    /// `λ(g)`: every conjugator `q` becomes `g q`.
    pub fn simultaneous_conjugate(&self, g: &BraidWord) -> Result<Factorization> {
        if g.strand_count() != self.strand_count {
            return Err(Error::StrandMismatch(self.strand_count, g.strand_count()));
        }
        let factors = self
            .factors
            .iter()
            .map(|f| Ok(Factor { class: f.class, conj: g.compose(&f.conj)?.free_reduced() }))
            .collect::<Result<Vec<_>>>()?;
        Ok(Factorization { strand_count: self.strand_count, factors })
    }

    /// Inserts `g` and its inverse, of classes A1 and Abar1, at `i` and `i+1`.
    pub fn insert_pair(&self, i: usize, g: &Factor) -> Result<Factorization> {
        if g.class != SingClass::A(1) {
            return Err(Error::InsertClass(g.class.to_string()));
        }
        if i == 0 || i > self.len() + 1 {
            return Err(Error::Index { index: i, len: self.len() });
        }
        if g.conj.strand_count() != self.strand_count {
            return Err(Error::StrandMismatch(self.strand_count, g.conj.strand_count()));
        }
        let mut out = self.clone();
        out.factors.insert(i - 1, Factor { class: SingClass::Abar1, conj: g.conj.clone() });
        out.factors.insert(i - 1, g.clone());
        Ok(out)
    }

    /// Removes an adjacent A1/Abar1 pair with mutually inverse values.
    pub fn cancel_pair(&self, i: usize) -> Result<Factorization> {
        self.check_index(i)?;
        let (x, y) = (&self.factors[i - 1], &self.factors[i]);
        let classes_ok = matches!(
            (x.class, y.class),
            (SingClass::A(1), SingClass::Abar1) | (SingClass::Abar1, SingClass::A(1))
        );
        if !classes_ok || x.value_nf() != y.value_nf().inverse() {
            return Err(Error::NotCancelling(i));
        }
        let mut out = self.clone();
        out.factors.drain(i - 1..=i);
        Ok(out)
    }

    pub fn apply(&self, mv: &Move) -> Result<Factorization> {
        match mv {
            Move::Hurwitz(d, i) => self.hurwitz(*i, *d),
            Move::Conj(g) => self.simultaneous_conjugate(g),
            Move::Insert(i, conj) => self.insert_pair(*i, &Factor { class: SingClass::A(1), conj: conj.clone() }),
            Move::Cancel(i) => self.cancel_pair(*i),
        }
    }

    pub fn multi_degree(&self) -> MultiDegree {
        let mut md = MultiDegree::default();
        for f in &self.factors {
            match f.class {
                SingClass::Abar1 => md.d_bar1 += 1,
                SingClass::A(i) => *md.d.entry(i).or_insert(0) += 1,
            }
        }
        md
    }

    /// `(d_0, d_1 - d_bar1, d_2, ..)`, with trailing zeros beyond `d_0` dropped
    /// so that inserting a node pair leaves it unchanged.
    pub fn c_multi_degree(&self) -> Vec<i64> {
        let md = self.multi_degree();
        let top = md.d.keys().next_back().copied().unwrap_or(0).max(1);
        let mut v: Vec<i64> = (0..=top).map(|i| md.count(i) as i64).collect();
        v[1] -= md.d_bar1 as i64;
        while v.len() > 1 && v.last() == Some(&0) {
            v.pop();
        }
        v
    }

    /// Product of the factor values, left to right.
    pub fn alpha(&self) -> BraidWord {
        let mut letters = Vec::new();
        for f in &self.factors {
            letters.extend_from_slice(f.value().letters());
        }
        BraidWord::new(self.strand_count, letters).expect("factor values share strand count")
    }

    pub fn alpha_nf(&self) -> GarsideNF {
        normal_form(&self.alpha())
    }

    /// Image in the symmetric group with marks: `i` for class `A(i)`,
    /// `NEGATIVE_NODE_MARK` for Abar1.
    pub fn sym_image(&self) -> MarkedSymFactorization {
        let entries = self
            .factors
            .iter()
            .map(|f| SymEntry {
                perm: f.permutation(),
                mark: match f.class {
                    SingClass::Abar1 => NEGATIVE_NODE_MARK,
                    SingClass::A(i) => i,
                },
            })
            .collect();
        MarkedSymFactorization::new(self.strand_count, entries).expect("images are transpositions or trivial")
    }

    pub fn generated_sym_subgroup(&self) -> Result<SymSubgroup> {
        let gens: Vec<Permutation> = self.factors.iter().map(Factor::permutation).collect();
        closure(self.strand_count, &gens)
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.factors.iter().map(|x| x.to_string()).collect();
        write!(f, "m={} {}", self.strand_count, parts.join(" · "))
    }
}

pub fn hurwitz_r(s: &Factorization, i: usize) -> Result<Factorization> {
    s.hurwitz(i, Direction::R)
}

pub fn hurwitz_l(s: &Factorization, i: usize) -> Result<Factorization> {
    s.hurwitz(i, Direction::L)
}

/// `δ² = (a_1 ⋯ a_{m-1})^m` with factors of class A0.
pub fn delta_squared(m: usize) -> Result<Factorization> {
    let block: Vec<Factor> = (1..m)
        .map(|j| Ok(Factor { class: SingClass::A(0), conj: base_conjugator(m, j, j + 1)? }))
        .collect::<Result<_>>()?;
    Ok(Factorization::new(m, block)?.pow(m))
}

/// `δ̃²_m`: the full twists `z²_{k,l}` in the order of `delta_twist_order`, class A1.
pub fn delta_tilde_squared(m: usize) -> Result<Factorization> {
    let factors = delta_twist_order(m)
        .into_iter()
        .map(|(k, l)| Ok(Factor { class: SingClass::A(1), conj: base_conjugator(m, k, l)? }))
        .collect::<Result<Vec<_>>>()?;
    Factorization::new(m, factors)
}

/// `δ̃⁻²_m`: the inverse twists in reverse order, class Abar1.
pub fn delta_tilde_inv_squared(m: usize) -> Result<Factorization> {
    let mut d = delta_tilde_squared(m)?;
    d.factors.reverse();
    for f in &mut d.factors {
        f.class = SingClass::Abar1;
    }
    Ok(d)
}

/// L-moves taking `s·t` to `λ(α(s))(t)·s` for `|s| = p`, `|t| = q`: the last
/// factor of `s` travels right through `t`, then the one before it, and so on.
pub fn cl1_moves(p: usize, q: usize) -> Vec<Move> {
    let mut out = Vec::with_capacity(p * q);
    for j in (1..=p).rev() {
        for i in j..j + q {
            out.push(Move::l(i));
        }
    }
    out
}

/// Replays `cl1_moves` on `s·t`. The factors of `s` must come out literally
/// unchanged and the first `|t|` factors must agree with `λ(α(s))(t)`.
pub fn check_cl1(s: &Factorization, t: &Factorization) -> Result<bool> {
    let mut cur = s.concat(t)?;
    for mv in cl1_moves(s.len(), t.len()) {
        cur = cur.apply(&mv)?;
    }
    let conj = t.simultaneous_conjugate(&s.alpha())?;
    let (head, tail) = cur.factors.split_at(t.len());
    let head = Factorization { strand_count: s.strand_count, factors: head.to_vec() };
    Ok(tail == s.factors() && head.matches(&conj))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::{garside_delta, words_equal};

    fn w(m: usize, l: &[i32]) -> BraidWord {
        BraidWord::new(m, l.to_vec()).unwrap()
    }

    fn f(class: SingClass, m: usize, conj: &[i32]) -> Factor {
        Factor { class, conj: w(m, conj) }
    }

    #[test]
    fn moves_on_generators() {
        let s = Factorization::new(3, vec![f(SingClass::A(0), 3, &[]), f(SingClass::A(0), 3, &[1])]).unwrap();
        // a1^-1 a2^-1 a1 a2 a1 = a2
        let s2 = Factorization::new(3, vec![f(SingClass::A(0), 3, &[]), f(SingClass::A(0), 3, &[-1, -2])]).unwrap();
        assert!(words_equal(&s2.factors()[1].value(), &w(3, &[2])).unwrap());
        let r = hurwitz_r(&s2, 1).unwrap();
        assert!(words_equal(&r.factors()[0].value(), &w(3, &[2])).unwrap());
        assert!(words_equal(&r.factors()[1].value(), &w(3, &[-2, 1, 2])).unwrap());
        let back = hurwitz_r(&hurwitz_l(&s2, 1).unwrap(), 1).unwrap();
        assert!(back.matches(&s2));
        assert!(hurwitz_r(&s, 2).is_err());
        assert!(hurwitz_r(&s, 0).is_err());
    }

    #[test]
    fn distinguished_elements() {
        for m in 2..=6 {
            let d2 = garside_delta(m).unwrap().pow(2);
            let dt = delta_tilde_squared(m).unwrap();
            assert_eq!(dt.len(), m * (m - 1) / 2);
            assert!(words_equal(&dt.alpha(), &d2).unwrap());
            assert_eq!(dt.multi_degree().count(1), m * (m - 1) / 2);
            assert!(dt.sym_image().entries().iter().all(|e| e.perm.is_identity()));
            let ds = delta_squared(m).unwrap();
            assert_eq!(ds.len(), m * (m - 1));
            assert!(words_equal(&ds.alpha(), &d2).unwrap());
            let inv = delta_tilde_inv_squared(m).unwrap();
            assert!(words_equal(&inv.alpha(), &d2.invert()).unwrap());
            if m > 2 {
                let head: Vec<Factor> = (1..m)
                    .map(|k| Factor { class: SingClass::A(1), conj: base_conjugator(m, k, m).unwrap() })
                    .collect();
                let rec = Factorization::new(m, head).unwrap().concat(&delta_tilde_squared(m - 1).unwrap().widen(m).unwrap());
                assert_eq!(rec.unwrap(), dt);
            }
        }
        let d3 = delta_tilde_squared(3).unwrap();
        let pairs: Vec<_> = d3.factors().iter().map(|x| x.permutation_pair()).collect();
        assert_eq!(pairs, vec![(1, 3), (2, 3), (1, 2)]);
        assert!(delta_squared(1).is_err());
    }

    #[test]
    fn insert_and_cancel() {
        let s = delta_squared(3).unwrap();
        let g = f(SingClass::A(1), 3, &[2, -1]);
        let t = s.insert_pair(3, &g).unwrap();
        assert_eq!(t.len(), s.len() + 2);
        assert_eq!(t.c_multi_degree(), s.c_multi_degree());
        assert_eq!(t.multi_degree().d_bar1, 1);
        assert!(words_equal(&t.alpha(), &s.alpha()).unwrap());
        assert_eq!(t.cancel_pair(3).unwrap(), s);
        assert!(t.cancel_pair(2).is_err());
        assert!(s.insert_pair(1, &f(SingClass::A(0), 3, &[])).is_err());
        let bad = Factorization::new(3, vec![f(SingClass::A(1), 3, &[]), f(SingClass::Abar1, 3, &[-1, -2])]).unwrap();
        assert!(matches!(bad.cancel_pair(1), Err(Error::NotCancelling(1))));
    }

    #[test]
    fn c_multi_degree_folds_nodes() {
        let s = delta_tilde_squared(3).unwrap().concat(&delta_tilde_inv_squared(3).unwrap()).unwrap();
        assert_eq!(s.c_multi_degree(), vec![0]);
        let s = delta_squared(3).unwrap();
        assert_eq!(s.c_multi_degree(), vec![6]);
        let md = s.multi_degree();
        assert_eq!((md.d_bar1, md.count(0)), (0, 6));
    }

    #[test]
    fn cl1_realization() {
        let s = Factorization::new(4, vec![f(SingClass::A(0), 4, &[2]), f(SingClass::A(2), 4, &[-3, 1])]).unwrap();
        let t = delta_tilde_squared(3).unwrap().widen(4).unwrap();
        assert_eq!(cl1_moves(2, 3).len(), 6);
        assert!(check_cl1(&s, &t).unwrap());
        assert!(check_cl1(&Factorization::empty(4).unwrap(), &t).unwrap());
    }

    #[test]
    fn conjugating_by_delta_squared_fixes_values() {
        let s = delta_squared(4).unwrap();
        let d2 = garside_delta(4).unwrap().pow(2);
        assert!(s.simultaneous_conjugate(&d2).unwrap().matches(&s));
    }
}
