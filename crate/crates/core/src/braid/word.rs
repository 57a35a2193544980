use std::fmt;

use serde::{Deserialize, Serialize};

use super::MAX_STRANDS;
use crate::error::{Error, Result};

/// A word in the standard generators `a_1..a_{m-1}` of the braid group on `m`
/// strands. Letter `i > 0` is `a_i`, letter `-i` is its inverse.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BraidWord {
    strand_count: usize,
    letters: Vec<i32>,
}

pub(crate) fn check_strands(m: usize) -> Result<()> {
    if (2..=MAX_STRANDS).contains(&m) {
        Ok(())
    } else {
        Err(Error::StrandCount(m))
    }
}

impl BraidWord {
    pub fn new(strand_count: usize, letters: Vec<i32>) -> Result<Self> {
        check_strands(strand_count)?;
        for &x in &letters {
            if x == 0 || x.unsigned_abs() as usize >= strand_count {
                return Err(Error::BadLetter { letter: x, m: strand_count });
            }
        }
        Ok(BraidWord { strand_count, letters })
    }

    /// Skips validation; callers guarantee the letters are in range.
    pub(crate) fn from_raw(strand_count: usize, letters: Vec<i32>) -> Self {
        debug_assert!(letters.iter().all(|&x| x != 0 && (x.unsigned_abs() as usize) < strand_count));
        BraidWord { strand_count, letters }
    }

    pub fn identity(strand_count: usize) -> Result<Self> {
        Self::new(strand_count, Vec::new())
    }

    pub fn generator(strand_count: usize, letter: i32) -> Result<Self> {
        Self::new(strand_count, vec![letter])
    }

    pub fn strand_count(&self) -> usize {
        self.strand_count
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Plain concatenation. No letters are cancelled.
    pub fn compose(&self, other: &BraidWord) -> Result<BraidWord> {
        if self.strand_count != other.strand_count {
            return Err(Error::StrandMismatch(self.strand_count, other.strand_count));
        }
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.letters);
        letters.extend_from_slice(&other.letters);
        Ok(BraidWord { strand_count: self.strand_count, letters })
    }

    /// Concatenation followed by free reduction across the seam and inside
    /// both operands.
    pub fn compose_reduced(&self, other: &BraidWord) -> Result<BraidWord> {
        Ok(self.compose(other)?.free_reduced())
    }

    pub fn invert(&self) -> BraidWord {
        BraidWord {
            strand_count: self.strand_count,
            letters: self.letters.iter().rev().map(|&x| -x).collect(),
        }
    }

    pub fn pow(&self, n: i32) -> BraidWord {
        let base = if n < 0 { self.invert() } else { self.clone() };
        let mut letters = Vec::with_capacity(base.len() * n.unsigned_abs() as usize);
        for _ in 0..n.unsigned_abs() {
            letters.extend_from_slice(&base.letters);
        }
        BraidWord { strand_count: self.strand_count, letters }
    }

    pub fn free_reduced(&self) -> BraidWord {
        let mut out: Vec<i32> = Vec::with_capacity(self.letters.len());
        for &x in &self.letters {
            if out.last() == Some(&-x) {
                out.pop();
            } else {
                out.push(x);
            }
        }
        BraidWord { strand_count: self.strand_count, letters: out }
    }

    /// The same letters read in a braid group with more strands.
    pub fn widen(&self, strand_count: usize) -> Result<BraidWord> {
        if strand_count < self.strand_count {
            return Err(Error::StrandMismatch(self.strand_count, strand_count));
        }
        BraidWord::new(strand_count, self.letters.clone())
    }

    /// Parses whitespace separated signed integers, optionally preceded by a
    /// `m=<int>` token. With `aliases`, letters may also be written `a`, `b^-1`, ...
    pub fn parse(text: &str, m: Option<usize>, aliases: bool) -> Result<BraidWord> {
        let mut strands = m;
        let mut letters = Vec::new();
        for token in text.split(|c: char| c.is_whitespace() || c == ',') {
            if token.is_empty() {
                continue;
            }
            if let Some(rest) = token.strip_prefix("m=") {
                let value: usize = rest
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad strand header `{token}`")))?;
                if let Some(given) = strands {
                    if given != value {
                        return Err(Error::StrandMismatch(given, value));
                    }
                }
                strands = Some(value);
                continue;
            }
            letters.push(parse_letter(token, aliases)?);
        }
        let m = strands.ok_or_else(|| Error::Parse("strand count not given".into()))?;
        BraidWord::new(m, letters)
    }

    pub fn to_alias_string(&self) -> String {
        self.letters
            .iter()
            .map(|&x| {
                let c = (b'a' + (x.unsigned_abs() - 1) as u8) as char;
                if x < 0 {
                    format!("{c}^-1")
                } else {
                    c.to_string()
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

fn parse_letter(token: &str, aliases: bool) -> Result<i32> {
    if let Ok(v) = token.parse::<i32>() {
        return Ok(v);
    }
    if aliases {
        let (head, inverse) = match token.strip_suffix("^-1") {
            Some(h) => (h, true),
            None => (token, false),
        };
        let mut chars = head.chars();
        if let (Some(c), None) = (chars.next(), chars.next()) {
            if c.is_ascii_lowercase() {
                let i = (c as u8 - b'a' + 1) as i32;
                return Ok(if inverse { -i } else { i });
            }
        }
    }
    Err(Error::Parse(format!("bad letter `{token}`")))
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "m={}", self.strand_count)?;
        for x in &self.letters {
            write!(f, " {x}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BraidWord({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compose_keeps_letters() {
        let a = BraidWord::new(2, vec![1]).unwrap();
        let w = a.compose(&a.invert()).unwrap();
        assert_eq!(w.letters(), &[1, -1]);
        let e = BraidWord::identity(4).unwrap();
        let x = BraidWord::new(4, vec![2, 1, 3, 2]).unwrap();
        assert_eq!(e.compose(&x).unwrap(), x);
    }

    #[test]
    fn invert_reverses_and_flips() {
        let w = BraidWord::new(3, vec![1, 2]).unwrap();
        assert_eq!(w.invert().letters(), &[-2, -1]);
        assert!(BraidWord::identity(3).unwrap().invert().is_empty());
    }

    #[test]
    fn rejects_bad_letters() {
        assert!(BraidWord::new(3, vec![3]).is_err());
        assert!(BraidWord::new(3, vec![0]).is_err());
        assert!(BraidWord::new(1, vec![]).is_err());
        let a = BraidWord::new(3, vec![1]).unwrap();
        let b = BraidWord::new(4, vec![1]).unwrap();
        assert!(a.compose(&b).is_err());
    }

    #[test]
    fn parses_both_formats() {
        let w = BraidWord::parse("m=4 1 -3 2", None, false).unwrap();
        assert_eq!(w.letters(), &[1, -3, 2]);
        let v = BraidWord::parse("a c^-1 b", Some(4), true).unwrap();
        assert_eq!(v, w);
        assert_eq!(v.to_alias_string(), "a c^-1 b");
        assert!(BraidWord::parse("1 2", None, false).is_err());
        assert!(BraidWord::parse("m=3 1 x", None, true).is_err());
        assert!(BraidWord::parse("m=3 1", Some(4), false).is_err());
    }

    #[test]
    fn free_reduction() {
        let w = BraidWord::new(3, vec![1, 2, -2, -1, 2]).unwrap();
        assert_eq!(w.free_reduced().letters(), &[2]);
    }
}
