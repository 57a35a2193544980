//! Hurwitz search on marked transposition sequences with bit-packed states.
//!
//! An entry is encoded as `pair * marks + mark`, where `pair` indexes the
//! transpositions of `Σ_m` and `mark` indexes the distinct marks in play.
//! Sequences that fit in 128 bits are stored as a `u128`, longer ones as
//! `Vec<u16>`.

use std::hash::Hash;

use rayon::prelude::*;
use rustc_hash::FxHashSet;

use super::MarkedSymFactorization;
use crate::braid::Permutation;
use crate::cert::{Direction, Move, MoveCertificate, SearchLimits, SearchOutcome};
use crate::error::{Error, Result};
use crate::search::{bidirectional, Bfs, Space};

trait Key: Clone + Hash + Eq + Send + Sync {
    fn zeroed(len: usize) -> Self;
    fn get(&self, pos: usize, width: u32) -> u32;
    fn set(&mut self, pos: usize, width: u32, value: u32);
}

impl Key for u128 {
    fn zeroed(_: usize) -> Self {
        0
    }

    fn get(&self, pos: usize, width: u32) -> u32 {
        ((self >> (pos as u32 * width)) & ((1u128 << width) - 1)) as u32
    }

    fn set(&mut self, pos: usize, width: u32, value: u32) {
        let shift = pos as u32 * width;
        *self = (*self & !(((1u128 << width) - 1) << shift)) | ((value as u128) << shift);
    }
}

impl Key for Vec<u16> {
    fn zeroed(len: usize) -> Self {
        vec![0; len]
    }

    fn get(&self, pos: usize, _: u32) -> u32 {
        self[pos] as u32
    }

    fn set(&mut self, pos: usize, _: u32, value: u32) {
        self[pos] = value as u16;
    }
}

struct Codec {
    len: usize,
    width: u32,
    marks: Vec<u32>,
    pairs: Vec<(usize, usize)>,
    /// `conj[x][y]` is the pair index of `y x y`.
    conj: Vec<Vec<u32>>,
}

impl Codec {
    fn new(degree: usize, len: usize, mut marks: Vec<u32>) -> Codec {
        marks.sort_unstable();
        marks.dedup();
        let mut pairs = Vec::new();
        for i in 1..=degree {
            for j in i + 1..=degree {
                pairs.push((i, j));
            }
        }
        let perms: Vec<Permutation> = pairs.iter().map(|&(i, j)| Permutation::transposition(degree, i, j)).collect();
        let index = |p: &Permutation| perms.iter().position(|q| q == p).expect("conjugate of a transposition");
        let conj = perms
            .iter()
            .map(|x| perms.iter().map(|y| index(&y.compose(x).compose(y)) as u32).collect())
            .collect();
        let codes = (pairs.len() * marks.len()).max(2);
        let width = usize::BITS - (codes - 1).leading_zeros();
        Codec { len, width, marks, pairs, conj }
    }

    fn fits_u128(&self) -> bool {
        self.len as u32 * self.width <= 128
    }

    fn encode<K: Key>(&self, f: &MarkedSymFactorization) -> K {
        let mut k = K::zeroed(self.len);
        for (pos, e) in f.entries().iter().enumerate() {
            let pair = e.perm.as_transposition().expect("transposition entries only");
            let p = self.pairs.iter().position(|&q| q == pair).expect("pair in range");
            let m = self.marks.binary_search(&e.mark).expect("known mark");
            k.set(pos, self.width, (p * self.marks.len() + m) as u32);
        }
        k
    }

    fn step<K: Key>(&self, k: &K, i: usize, dir: Direction) -> K {
        let nm = self.marks.len() as u32;
        let (x, y) = (k.get(i - 1, self.width), k.get(i, self.width));
        let (xp, xm, yp, ym) = (x / nm, x % nm, y / nm, y % nm);
        let mut out = k.clone();
        match dir {
            Direction::R => {
                out.set(i - 1, self.width, y);
                out.set(i, self.width, self.conj[xp as usize][yp as usize] * nm + xm);
            }
            Direction::L => {
                out.set(i - 1, self.width, self.conj[yp as usize][xp as usize] * nm + ym);
                out.set(i, self.width, x);
            }
        }
        out
    }

    fn neighbors<K: Key>(&self, k: &K, out: &mut Vec<(Move, K)>) {
        for i in 1..self.len {
            for dir in [Direction::R, Direction::L] {
                let next = self.step(k, i, dir);
                if &next != k {
                    out.push((Move::Hurwitz(dir, i), next));
                }
            }
        }
    }
}

struct Walk<'a, K> {
    codec: &'a Codec,
    _key: std::marker::PhantomData<fn() -> K>,
}

impl<K: Key> Space for Walk<'_, K> {
    type State = K;
    type Step = Move;

    fn expand(&self, s: &K, out: &mut Vec<(Move, K)>) -> bool {
        self.codec.neighbors(s, out);
        true
    }
}

fn run<K: Key>(
    codec: &Codec,
    f1: &MarkedSymFactorization,
    f2: &MarkedSymFactorization,
    limits: &SearchLimits,
) -> SearchOutcome {
    let space = Walk::<K> { codec, _key: std::marker::PhantomData };
    match bidirectional(&space, codec.encode(f1), codec.encode(f2), limits.max_depth, limits.max_states) {
        Bfs::Found { forward, backward } => {
            let mut moves = forward;
            let back = MoveCertificate::new(backward).inverse_hurwitz().expect("Hurwitz moves only");
            moves.extend(back.moves);
            SearchOutcome::Equivalent(MoveCertificate::new(moves))
        }
        Bfs::Exhausted { states, .. } => {
            SearchOutcome::Inequivalent(format!("Hurwitz orbit exhausted after {states} states"))
        }
        Bfs::Limit(why) => SearchOutcome::Inconclusive(why),
    }
}

/// Connects two factorizations made of transpositions only.
pub(super) fn connect(
    f1: &MarkedSymFactorization,
    f2: &MarkedSymFactorization,
    limits: &SearchLimits,
) -> Result<SearchOutcome> {
    let codec = Codec::new(f1.degree(), f1.len(), f1.marks());
    Ok(if codec.fits_u128() { run::<u128>(&codec, f1, f2, limits) } else { run::<Vec<u16>>(&codec, f1, f2, limits) })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MarkedOrbitReport {
    pub states: usize,
    /// False when `max_states` stopped the enumeration.
    pub complete: bool,
}

// R-moves alone suffice: each is a bijection of a finite set, so its inverse is one of its powers.
fn count<K: Key>(codec: &Codec, f: &MarkedSymFactorization, max_states: usize) -> MarkedOrbitReport {
    let root: K = codec.encode(f);
    let mut seen = FxHashSet::default();
    seen.insert(root.clone());
    let mut frontier = vec![root];
    while !frontier.is_empty() {
        let fresh: Vec<K> = frontier
            .par_iter()
            .flat_map_iter(|k| (1..codec.len).map(move |i| codec.step(k, i, Direction::R)))
            .filter(|k| !seen.contains(k))
            .collect();
        let mut next = Vec::new();
        for k in fresh {
            if seen.insert(k.clone()) {
                next.push(k);
            }
        }
        if seen.len() > max_states {
            return MarkedOrbitReport { states: seen.len(), complete: false };
        }
        frontier = next;
    }
    MarkedOrbitReport { states: seen.len(), complete: true }
}

/// Size of the Hurwitz orbit of `f`, which must consist of transpositions.
pub fn marked_orbit_size(f: &MarkedSymFactorization, max_states: usize) -> Result<MarkedOrbitReport> {
    if f.entries().iter().any(|e| e.perm.is_identity()) {
        return Err(Error::Precondition("orbit enumeration needs transposition entries".into()));
    }
    let codec = Codec::new(f.degree(), f.len(), f.marks());
    Ok(if codec.fits_u128() { count::<u128>(&codec, f, max_states) } else { count::<Vec<u16>>(&codec, f, max_states) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sym::hurwitz_element;

    #[test]
    fn packing_round_trip() {
        let f = MarkedSymFactorization::from_pairs(4, &[((1, 2), 3), ((2, 4), 0), ((3, 4), 3)]).unwrap();
        let codec = Codec::new(4, 3, f.marks());
        let a: u128 = codec.encode(&f);
        let b: Vec<u16> = codec.encode(&f);
        for pos in 0..3 {
            assert_eq!(a.get(pos, codec.width), b.get(pos, codec.width));
        }
        let a = codec.step(&a, 1, Direction::R);
        let b = codec.step(&b, 1, Direction::R);
        for pos in 0..3 {
            assert_eq!(a.get(pos, codec.width), b.get(pos, codec.width));
        }
    }

    #[test]
    fn small_orbits() {
        // (1,2)^2 in Σ2 is fixed by every move.
        let h = hurwitz_element(2, 0).unwrap();
        assert_eq!(marked_orbit_size(&h, 10).unwrap(), MarkedOrbitReport { states: 1, complete: true });
        let h = hurwitz_element(3, 0).unwrap();
        assert_eq!(marked_orbit_size(&h, 1000).unwrap().states, 24);
        let marked = h.with_marks(&[2, 0, 0, 0]).unwrap();
        assert_eq!(marked_orbit_size(&marked, 1000).unwrap().states, 96);
        assert!(!marked_orbit_size(&marked, 10).unwrap().complete);
    }
}
