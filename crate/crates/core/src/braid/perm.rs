use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A bijection of `{1..m}`, stored 0-based.
///
/// Composition follows function notation: `p.compose(&q)` applies `q` first.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Permutation {
    images: Vec<u8>,
}

impl Permutation {
    pub fn identity(m: usize) -> Self {
        Permutation { images: (0..m as u8).collect() }
    }

    /// Builds from 1-based images.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let m = images.len();
        let mut seen = vec![false; m];
        let mut out = Vec::with_capacity(m);
        for &x in images {
            if x == 0 || x > m || seen[x - 1] {
                return Err(Error::Parse(format!("not a permutation: {images:?}")));
            }
            seen[x - 1] = true;
            out.push((x - 1) as u8);
        }
        Ok(Permutation { images: out })
    }

    /// The transposition exchanging the 1-based points `i` and `j`.
    pub fn transposition(m: usize, i: usize, j: usize) -> Self {
        let mut p = Self::identity(m);
        p.images.swap(i - 1, j - 1);
        p
    }

    pub(crate) fn from_raw(images: Vec<u8>) -> Self {
        Permutation { images }
    }

    pub(crate) fn raw(&self) -> &[u8] {
        &self.images
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of the 1-based point `i`, 1-based.
    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1] as usize + 1
    }

    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&x| x as usize + 1).collect()
    }

    pub fn compose(&self, first: &Permutation) -> Permutation {
        Permutation { images: first.images.iter().map(|&x| self.images[x as usize]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut out = vec![0u8; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            out[x as usize] = i as u8;
        }
        Permutation { images: out }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    /// `Some((i, j))` with `i < j`, 1-based, when this is a transposition.
    pub fn as_transposition(&self) -> Option<(usize, usize)> {
        let moved: Vec<usize> =
            self.images.iter().enumerate().filter(|&(i, &x)| i != x as usize).map(|(i, _)| i).collect();
        match moved[..] {
            [i, j] => Some((i + 1, j + 1)),
            _ => None,
        }
    }

    /// Right-multiplies by the adjacent transposition `(i+1, i+2)` in place (0-based `i`).
    pub(crate) fn mul_adjacent(&mut self, i: usize) {
        self.images.swap(i, i + 1);
    }

    /// Left-multiplies by the adjacent transposition on values `i, i+1` (0-based).
    pub(crate) fn adjacent_mul(&mut self, i: usize) {
        let (a, b) = (i as u8, i as u8 + 1);
        for x in self.images.iter_mut() {
            if *x == a {
                *x = b;
            } else if *x == b {
                *x = a;
            }
        }
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.images.len()];
        let mut out = Vec::new();
        for start in 0..self.images.len() {
            if seen[start] || self.images[start] as usize == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x + 1);
                x = self.images[x] as usize;
            }
            out.push(cycle);
        }
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let parts: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            write!(f, "({})", parts.join(","))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
