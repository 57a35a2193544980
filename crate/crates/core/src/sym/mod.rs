//! Symmetric groups: transposition factorizations with marks, subgroup
//! closure and the finite Hurwitz action.

mod packed;

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use crate::braid::Permutation;
use crate::cert::{Direction, Move, MoveCertificate, SearchLimits, SearchOutcome};
use crate::error::{Error, Result};

pub use packed::{marked_orbit_size, MarkedOrbitReport};

/// Mark carried by the identity image of a negative node.
pub const NEGATIVE_NODE_MARK: u32 = u32::MAX;

/// Largest degree accepted by `closure`.
pub const MAX_CLOSURE_DEGREE: usize = 10;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SymEntry {
    pub perm: Permutation,
    pub mark: u32,
}

impl fmt::Debug for SymEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_{}", self.perm, self.mark)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MarkedSymFactorization {
    degree: usize,
    entries: Vec<SymEntry>,
}

impl MarkedSymFactorization {
    pub fn new(degree: usize, entries: Vec<SymEntry>) -> Result<Self> {
        for e in &entries {
            if e.perm.degree() != degree {
                return Err(Error::DegreeMismatch(degree, e.perm.degree()));
            }
            if !e.perm.is_identity() && e.perm.as_transposition().is_none() {
                return Err(Error::Precondition(format!("{} is not a transposition", e.perm)));
            }
        }
        Ok(MarkedSymFactorization { degree, entries })
    }

    /// Transpositions `(i, j)` with marks; `(0, 0)` stands for the identity.
    pub fn from_pairs(degree: usize, pairs: &[((usize, usize), u32)]) -> Result<Self> {
        let entries = pairs
            .iter()
            .map(|&((i, j), mark)| {
                let perm = if i == 0 && j == 0 {
                    Permutation::identity(degree)
                } else if 1 <= i && i < j && j <= degree {
                    Permutation::transposition(degree, i, j)
                } else {
                    return Err(Error::BadPair { k: i, l: j, m: degree });
                };
                Ok(SymEntry { perm, mark })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(degree, entries)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn entries(&self) -> &[SymEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Product of the entries, left to right as functions (rightmost first).
    pub fn product(&self) -> Permutation {
        self.entries.iter().fold(Permutation::identity(self.degree), |acc, e| acc.compose(&e.perm))
    }

    pub fn marks(&self) -> Vec<u32> {
        self.entries.iter().map(|e| e.mark).collect()
    }

    /// Sorted marks of the transposition entries.
    pub fn transposition_marks(&self) -> Vec<u32> {
        let mut v: Vec<u32> = self.entries.iter().filter(|e| !e.perm.is_identity()).map(|e| e.mark).collect();
        v.sort_unstable();
        v
    }

    fn identity_marks(&self) -> Vec<u32> {
        let mut v: Vec<u32> = self.entries.iter().filter(|e| e.perm.is_identity()).map(|e| e.mark).collect();
        v.sort_unstable();
        v
    }

    pub fn with_marks(&self, marks: &[u32]) -> Result<Self> {
        if marks.len() != self.entries.len() {
            return Err(Error::Index { index: marks.len(), len: self.entries.len() });
        }
        let entries =
            self.entries.iter().zip(marks).map(|(e, &mark)| SymEntry { perm: e.perm.clone(), mark }).collect();
        Ok(MarkedSymFactorization { degree: self.degree, entries })
    }

    pub fn transpositions(&self) -> Vec<Option<(usize, usize)>> {
        self.entries.iter().map(|e| e.perm.as_transposition()).collect()
    }
}

impl fmt::Display for MarkedSymFactorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|e| e.perm.to_string()).collect();
        write!(f, "{}", parts.join("·"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymSubgroup {
    degree: usize,
    elements: BTreeSet<Permutation>,
}

impl SymSubgroup {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.elements.contains(p)
    }

    pub fn elements(&self) -> impl Iterator<Item = &Permutation> {
        self.elements.iter()
    }

    /// `σ H σ⁻¹`.
    pub fn conjugate(&self, sigma: &Permutation) -> SymSubgroup {
        let inv = sigma.inverse();
        SymSubgroup {
            degree: self.degree,
            elements: self.elements.iter().map(|p| sigma.compose(p).compose(&inv)).collect(),
        }
    }

    pub fn is_full(&self) -> bool {
        self.order() == (1..=self.degree).product::<usize>()
    }
}

/// The subgroup of `Σ_m` generated by `generators`.
pub fn closure(degree: usize, generators: &[Permutation]) -> Result<SymSubgroup> {
    if degree > MAX_CLOSURE_DEGREE {
        return Err(Error::SubgroupTooLarge((1..=degree).product()));
    }
    for g in generators {
        if g.degree() != degree {
            return Err(Error::DegreeMismatch(degree, g.degree()));
        }
    }
    let gens: Vec<&Permutation> = generators.iter().filter(|g| !g.is_identity()).collect();
    let mut elements = BTreeSet::new();
    let id = Permutation::identity(degree);
    elements.insert(id.clone());
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in &gens {
            let y = x.compose(g);
            if elements.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    Ok(SymSubgroup { degree, elements })
}

/// `h_g = ((1,2)·(1,2))^{g+1} · ((2,3)·(2,3)) ⋯ ((m-1,m)·(m-1,m))`, all marks 0.
pub fn hurwitz_element(m: usize, g: usize) -> Result<MarkedSymFactorization> {
    if m < 2 {
        return Err(Error::StrandCount(m));
    }
    let mut pairs = Vec::with_capacity(2 * (g + 1) + 2 * (m - 2));
    for _ in 0..2 * (g + 1) {
        pairs.push(((1, 2), 0));
    }
    for i in 2..m {
        pairs.push(((i, i + 1), 0));
        pairs.push(((i, i + 1), 0));
    }
    MarkedSymFactorization::from_pairs(m, &pairs)
}

/// Hurwitz move on entries `i, i+1` (1-based); marks travel with their factors.
pub fn sym_hurwitz_move(f: &MarkedSymFactorization, i: usize, dir: Direction) -> Result<MarkedSymFactorization> {
    if i == 0 || i >= f.len() {
        return Err(Error::Index { index: i, len: f.len() });
    }
    let mut out = f.clone();
    let (x, y) = (&f.entries[i - 1], &f.entries[i]);
    let (new_x, new_y) = match dir {
        Direction::R => {
            let conj = y.perm.inverse().compose(&x.perm).compose(&y.perm);
            (y.clone(), SymEntry { perm: conj, mark: x.mark })
        }
        Direction::L => {
            let conj = x.perm.compose(&y.perm).compose(&x.perm.inverse());
            (SymEntry { perm: conj, mark: y.mark }, x.clone())
        }
    };
    out.entries[i - 1] = new_x;
    out.entries[i] = new_y;
    Ok(out)
}

pub fn lambda_conjugate(f: &MarkedSymFactorization, sigma: &Permutation) -> Result<MarkedSymFactorization> {
    if sigma.degree() != f.degree {
        return Err(Error::DegreeMismatch(f.degree, sigma.degree()));
    }
    let inv = sigma.inverse();
    let entries = f
        .entries
        .iter()
        .map(|e| SymEntry { perm: sigma.compose(&e.perm).compose(&inv), mark: e.mark })
        .collect();
    Ok(MarkedSymFactorization { degree: f.degree, entries })
}

pub fn apply_sym_certificate(f: &MarkedSymFactorization, cert: &MoveCertificate) -> Result<MarkedSymFactorization> {
    let mut cur = f.clone();
    for (step, m) in cert.moves.iter().enumerate() {
        match m {
            Move::Hurwitz(d, i) => {
                cur = sym_hurwitz_move(&cur, *i, *d)
                    .map_err(|e| Error::Replay { step, reason: e.to_string() })?;
            }
            other => {
                return Err(Error::Replay { step, reason: format!("{other} is not a Hurwitz move") });
            }
        }
    }
    Ok(cur)
}

/// Moves every identity entry to the front, keeping relative orders.
fn identities_to_front(f: &MarkedSymFactorization) -> (Vec<Move>, MarkedSymFactorization) {
    let mut moves = Vec::new();
    let mut cur = f.clone();
    let mut placed = 0;
    for p in 0..cur.len() {
        if cur.entries[p].perm.is_identity() {
            for i in (placed + 1..=p).rev() {
                moves.push(Move::r(i));
                cur.entries.swap(i - 1, i);
            }
            placed += 1;
        }
    }
    (moves, cur)
}

/// Sorts the leading `count` identity entries into the mark order `target`.
fn arrange_identities(cur: &mut MarkedSymFactorization, target: &[u32], moves: &mut Vec<Move>) {
    for (pos, &want) in target.iter().enumerate() {
        let at = (pos..target.len()).find(|&j| cur.entries[j].mark == want).expect("same identity marks");
        for i in (pos + 1..=at).rev() {
            moves.push(Move::r(i));
            cur.entries.swap(i - 1, i);
        }
    }
}

/// Decides Hurwitz equivalence of two marked factorizations by search over the
/// finite state space. Identity entries are moved out of the way first; they
/// commute with everything.
pub fn marked_equiv(
    f1: &MarkedSymFactorization,
    f2: &MarkedSymFactorization,
    limits: &SearchLimits,
) -> Result<SearchOutcome> {
    if f1.degree != f2.degree {
        return Err(Error::DegreeMismatch(f1.degree, f2.degree));
    }
    if f1.len() != f2.len() {
        return Err(Error::Precondition(format!("lengths differ: {} vs {}", f1.len(), f2.len())));
    }
    if f1.product() != f2.product() {
        return Err(Error::Precondition("products differ".into()));
    }
    if f1.transposition_marks() != f2.transposition_marks() {
        return Err(Error::Precondition("mark multisets differ".into()));
    }
    if f1.identity_marks() != f2.identity_marks() {
        return Err(Error::Precondition("marks of identity entries differ".into()));
    }
    let (mut head, mut g1) = identities_to_front(f1);
    let (tail, g2) = identities_to_front(f2);
    let ids = f1.len() - f1.transposition_marks().len();
    let target: Vec<u32> = g2.entries[..ids].iter().map(|e| e.mark).collect();
    arrange_identities(&mut g1, &target, &mut head);
    let t1 = MarkedSymFactorization { degree: f1.degree, entries: g1.entries[ids..].to_vec() };
    let t2 = MarkedSymFactorization { degree: f1.degree, entries: g2.entries[ids..].to_vec() };
    let outcome = packed::connect(&t1, &t2, limits)?;
    Ok(match outcome {
        SearchOutcome::Equivalent(mid) => {
            let mut moves = head;
            moves.extend(mid.moves.iter().map(|m| m.shifted(ids)));
            let back = MoveCertificate::new(tail).inverse_hurwitz().expect("Hurwitz moves only");
            moves.extend(back.moves);
            SearchOutcome::Equivalent(MoveCertificate::new(moves))
        }
        other => other,
    })
}

/// One case of the mark-multiset test on `h_g`: the first `twos` entries carry
/// mark 2, the others mark 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MarkedOrbitCase {
    pub m: usize,
    pub g: usize,
    pub twos: usize,
    pub unmarked: usize,
    pub marked: usize,
    /// Unmarked orbit size times the number of placements of the marks.
    pub expected: usize,
    pub complete: bool,
}

impl MarkedOrbitCase {
    /// Every factorization in the orbit of `h_g`, with any placement of the
    /// marks, was reached.
    pub fn holds(&self) -> bool {
        self.complete && self.marked == self.expected
    }
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// Enumerates the orbits of `h_g` with and without marks. The marked orbit can
/// hold at most `unmarked · C(len, twos)` states; reaching that bound means any
/// two marked factorizations in the orbit with equal mark multisets are
/// Hurwitz equivalent.
pub fn marked_orbit_case(m: usize, g: usize, twos: usize, max_states: usize) -> Result<MarkedOrbitCase> {
    let h = hurwitz_element(m, g)?;
    if twos > h.len() {
        return Err(Error::Precondition(format!("{twos} marks on {} entries", h.len())));
    }
    let marks: Vec<u32> = (0..h.len()).map(|i| if i < twos { 2 } else { 0 }).collect();
    let unmarked = marked_orbit_size(&h, max_states)?;
    let marked = marked_orbit_size(&h.with_marks(&marks)?, max_states)?;
    Ok(MarkedOrbitCase {
        m,
        g,
        twos,
        unmarked: unmarked.states,
        marked: marked.states,
        expected: unmarked.states * binomial(h.len(), twos),
        complete: unmarked.complete && marked.complete,
    })
}

/// Counts entries per mark.
pub fn mark_histogram(f: &MarkedSymFactorization) -> BTreeMap<u32, usize> {
    let mut h = BTreeMap::new();
    for e in &f.entries {
        *h.entry(e.mark).or_insert(0) += 1;
    }
    h
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(m: usize, pairs: &[((usize, usize), u32)]) -> MarkedSymFactorization {
        MarkedSymFactorization::from_pairs(m, pairs).unwrap()
    }

    #[test]
    fn closure_orders() {
        let t = |i, j| Permutation::transposition(4, i, j);
        assert_eq!(closure(4, &[t(1, 4), t(2, 3)]).unwrap().order(), 4);
        let full = closure(4, &[t(1, 3), t(2, 3), t(1, 4), t(2, 4), t(3, 4)]).unwrap();
        assert_eq!(full.order(), 24);
        assert!(full.is_full());
        assert_eq!(closure(4, &[]).unwrap().order(), 1);
        assert!(closure(11, &[]).is_err());
        assert!(closure(4, &[Permutation::identity(3)]).is_err());
    }

    #[test]
    fn hurwitz_elements() {
        let h = hurwitz_element(2, 0).unwrap();
        assert_eq!(h.to_string(), "(1,2)·(1,2)");
        let h = hurwitz_element(3, 0).unwrap();
        assert_eq!(h.to_string(), "(1,2)·(1,2)·(2,3)·(2,3)");
        let h = hurwitz_element(4, 1).unwrap();
        assert_eq!(h.len(), 8);
        assert!(h.product().is_identity());
        assert!(hurwitz_element(1, 0).is_err());
    }

    #[test]
    fn moves() {
        let x = f(3, &[((1, 2), 5), ((2, 3), 7)]);
        let r = sym_hurwitz_move(&x, 1, Direction::R).unwrap();
        assert_eq!(r, f(3, &[((2, 3), 7), ((1, 3), 5)]));
        let back = sym_hurwitz_move(&sym_hurwitz_move(&x, 1, Direction::L).unwrap(), 1, Direction::R).unwrap();
        assert_eq!(back, x);
        let mut y = f(4, &[((1, 1 + 1), 0), ((2, 3), 2), ((1, 2), 0)]);
        let y0 = y.clone();
        for _ in 0..3 {
            y = sym_hurwitz_move(&y, 1, Direction::R).unwrap();
        }
        assert_eq!(y.marks(), vec![2, 0, 0]);
        assert_eq!(y.transpositions()[..2], y0.transpositions()[..2]);
        assert!(sym_hurwitz_move(&y, 3, Direction::R).is_err());
    }

    #[test]
    fn conjugation() {
        let x = f(3, &[((1, 2), 0), ((1, 2), 0)]);
        assert_eq!(lambda_conjugate(&x, &Permutation::identity(3)).unwrap(), x);
        assert_eq!(lambda_conjugate(&x, &Permutation::transposition(3, 1, 2)).unwrap(), x);
    }

    #[test]
    fn marked_equivalence() {
        let lim = SearchLimits::default();
        let h = hurwitz_element(3, 0).unwrap();
        let out = marked_equiv(&h, &h, &lim).unwrap();
        assert_eq!(out.certificate().unwrap().len(), 0);
        let a = h.with_marks(&[2, 0, 0, 0]).unwrap();
        let b = h.with_marks(&[0, 0, 0, 2]).unwrap();
        let cert = marked_equiv(&a, &b, &lim).unwrap();
        let cert = cert.certificate().unwrap();
        assert_eq!(apply_sym_certificate(&a, cert).unwrap(), b);
        let c = h.with_marks(&[0, 0, 2, 2]).unwrap();
        assert!(marked_equiv(&a, &c, &lim).is_err());
    }

    #[test]
    fn identity_entries_are_transparent() {
        let lim = SearchLimits::default();
        let a = f(3, &[((0, 0), 1), ((1, 2), 0), ((1, 2), 2), ((0, 0), 3)]);
        let b = f(3, &[((1, 2), 2), ((0, 0), 3), ((1, 2), 0), ((0, 0), 1)]);
        let out = marked_equiv(&a, &b, &lim).unwrap();
        assert_eq!(apply_sym_certificate(&a, out.certificate().unwrap()).unwrap(), b);
    }

    #[test]
    fn inequivalent_orbits_are_detected() {
        // (1,2)(1,2)(1,3)(1,3) generates all of Σ3; (1,2)^4 does not
        let lim = SearchLimits::default();
        let a = f(3, &[((1, 2), 0), ((1, 2), 0), ((1, 3), 0), ((1, 3), 0)]);
        let b = f(3, &[((1, 2), 0), ((1, 2), 0), ((1, 2), 0), ((1, 2), 0)]);
        assert!(matches!(marked_equiv(&a, &b, &lim).unwrap(), SearchOutcome::Inequivalent(_)));
    }
}
