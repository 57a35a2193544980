use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::braid::{normal_form, BraidWord, GarsideNF, Permutation};
use crate::error::{Error, Result};

/// Conjugacy class tag: `A(i)` holds conjugates of `a_1^{i+1}`, `Abar1` those of `a_1^{-2}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum SingClass {
    Abar1,
    A(u32),
}

impl SingClass {
    pub fn exponent(self) -> i32 {
        match self {
            SingClass::Abar1 => -2,
            SingClass::A(i) => i as i32 + 1,
        }
    }

    /// True when the image in the symmetric group is a transposition.
    pub fn is_even(self) -> bool {
        matches!(self, SingClass::A(i) if i % 2 == 0)
    }
}

impl fmt::Display for SingClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SingClass::Abar1 => write!(f, "Abar1"),
            SingClass::A(i) => write!(f, "A{i}"),
        }
    }
}

impl FromStr for SingClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "Abar1" {
            return Ok(SingClass::Abar1);
        }
        s.strip_prefix('A')
            .and_then(|d| if d.starts_with('+') { None } else { d.parse::<u32>().ok() })
            .map(SingClass::A)
            .ok_or_else(|| Error::Parse(format!("unknown class `{s}`")))
    }
}

impl TryFrom<String> for SingClass {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<SingClass> for String {
    fn from(c: SingClass) -> String {
        c.to_string()
    }
}

/// The factor `q a_1^e q⁻¹` with `e` fixed by the class.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Factor {
    pub class: SingClass,
    pub conj: BraidWord,
}

impl Factor {
    pub fn new(class: SingClass, conj: BraidWord) -> Self {
        Factor { class, conj }
    }

    fn power(&self, e: i32) -> BraidWord {
        let m = self.conj.strand_count();
        let mut letters = self.conj.letters().to_vec();
        letters.extend(std::iter::repeat_n(e.signum(), e.unsigned_abs() as usize));
        letters.extend(self.conj.letters().iter().rev().map(|x| -x));
        BraidWord::new(m, letters).expect("letters of a valid word")
    }

    pub fn value(&self) -> BraidWord {
        self.power(self.class.exponent())
    }

    pub fn value_inverse(&self) -> BraidWord {
        self.power(-self.class.exponent())
    }

    pub fn value_nf(&self) -> GarsideNF {
        normal_form(&self.value())
    }

    pub fn permutation(&self) -> Permutation {
        let m = self.conj.strand_count();
        if self.class.exponent() % 2 == 0 {
            return Permutation::identity(m);
        }
        let (k, l) = self.permutation_pair();
        Permutation::transposition(m, k, l)
    }

    /// Sorted image of `{1, 2}` under the permutation of the conjugator.
    pub fn permutation_pair(&self) -> (usize, usize) {
        let s = crate::braid::permutation_of(&self.conj);
        let (a, b) = (s.apply(1), s.apply(2));
        (a.min(b), a.max(b))
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let conj: Vec<String> = self.conj.letters().iter().map(|x| x.to_string()).collect();
        write!(f, "{}[{}]", self.class, conj.join(" "))
    }
}

fn strip_centralizer_suffix(w: &BraidWord) -> BraidWord {
    let mut letters = w.letters().to_vec();
    while letters.last().is_some_and(|x| x.abs() != 2) {
        letters.pop();
    }
    BraidWord::new(w.strand_count(), letters).expect("prefix of a valid word")
}

/// A short conjugator with the same conjugate of `a_1^e`: free reduction, a
/// trailing run of letters commuting with `a_1` removed, and the normal form
/// rendering, stripped of powers of `Δ²`, used instead when that is shorter.
pub fn compact_conjugator(q: &BraidWord) -> BraidWord {
    let a = strip_centralizer_suffix(&q.free_reduced());
    let b = strip_centralizer_suffix(&normal_form(&a).without_center().to_word());
    if b.len() < a.len() {
        b
    } else {
        a
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::words_equal;

    #[test]
    fn class_tags() {
        assert_eq!(SingClass::Abar1.exponent(), -2);
        assert_eq!(SingClass::A(0).exponent(), 1);
        assert_eq!(SingClass::A(3).exponent(), 4);
        for s in ["A0", "A1", "A12", "Abar1"] {
            assert_eq!(s.parse::<SingClass>().unwrap().to_string(), s);
        }
        for s in ["A", "B1", "A-1", "Abar2", "A+1"] {
            assert!(s.parse::<SingClass>().is_err());
        }
    }

    #[test]
    fn values() {
        let m = 4;
        let e = Factor::new(SingClass::A(0), BraidWord::identity(m).unwrap());
        assert_eq!(e.value().letters(), &[1]);
        let n = Factor::new(SingClass::Abar1, BraidWord::identity(m).unwrap());
        assert_eq!(n.value().letters(), &[-1, -1]);
        let first = Factor::new(SingClass::A(0), BraidWord::new(m, vec![-3, -3, 2]).unwrap());
        assert_eq!(first.value().letters(), &[-3, -3, 2, 1, -2, 3, 3]);
        assert_eq!(first.permutation(), Permutation::transposition(4, 1, 3));
    }

    #[test]
    fn compaction_preserves_values() {
        let q = BraidWord::new(4, vec![2, 1, -1, 3, 1, -3, 1]).unwrap();
        let c = compact_conjugator(&q);
        assert_eq!(c.letters(), &[2]);
        for class in [SingClass::A(0), SingClass::A(1), SingClass::Abar1] {
            let a = Factor::new(class, q.clone()).value();
            let b = Factor::new(class, c.clone()).value();
            assert!(words_equal(&a, &b).unwrap());
        }
    }
}
