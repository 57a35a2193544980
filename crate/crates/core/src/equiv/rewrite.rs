//! Constructive weak equivalence of two factorizations of `Δ^{2N}` whose
//! symmetric images generate `Σ_m`.
//!
//! Each side is first normalized by Hurwitz moves: factors of odd index (node
//! classes and their kin, whose images are trivial) go to the front, their
//! underlying pairs are steered to `(1,2)` and they are sorted by class. The
//! marked transposition images of the remaining factors are then matched by a
//! finite search. At that point the two sides agree factor by factor up to
//! conjugation by pure braids, and each such conjugation is paid for with
//! full twists taken from inserted `δ̃² · δ̃⁻²` pairs. The twists left over
//! multiply to a power of `Δ²`, are rewritten to literal `δ̃²` blocks and
//! cancelled.

use std::collections::VecDeque;

use super::recognize::delta_tilde_recognize;
use super::verified;
use crate::braid::{
    comb_pure, delta_twist_order, full_twist, garside_delta, pure_decompose, BraidWord, Permutation, TwistLetter,
};
use crate::cert::{Move, MoveCertificate, SearchLimits, SearchOutcome};
use crate::error::{Error, Result};
use crate::semigroup::{delta_tilde_squared, Factorization, SingClass};
use crate::sym::{marked_equiv, MarkedSymFactorization, SymEntry};

/// Range of `t` and `u` in the search for a short `p₁ z^{2t} Δ^{2u} p₂⁻¹`.
const TWIST_SHIFT: i32 = 3;
const CENTER_SHIFT: i32 = 2;

struct Tracker {
    cur: Factorization,
    moves: Vec<Move>,
}

impl Tracker {
    fn new(s: &Factorization) -> Tracker {
        Tracker { cur: s.clone(), moves: Vec::new() }
    }

    fn apply(&mut self, mv: Move) -> Result<()> {
        self.cur = self.cur.apply(&mv)?;
        self.moves.push(mv);
        Ok(())
    }

    fn apply_all(&mut self, moves: impl IntoIterator<Item = Move>) -> Result<()> {
        for mv in moves {
            self.apply(mv)?;
        }
        Ok(())
    }
}

/// Node classes and the other classes with even exponent map to the identity.
fn trivial_image(c: SingClass) -> bool {
    c.exponent() % 2 == 0
}

fn pair_image(p: &Permutation, (a, b): (usize, usize)) -> (usize, usize) {
    let (x, y) = (p.apply(a), p.apply(b));
    (x.min(y), x.max(y))
}

/// Shortest sequence of generator indices taking `from` to `(1,2)`.
fn steer(from: (usize, usize), gens: &[Permutation]) -> Option<Vec<usize>> {
    let mut prev = std::collections::BTreeMap::new();
    prev.insert(from, None);
    let mut queue = VecDeque::from([from]);
    while let Some(p) = queue.pop_front() {
        if p == (1, 2) {
            let mut path = Vec::new();
            let mut at = p;
            while let Some(&Some((before, t))) = prev.get(&at) {
                path.push(t);
                at = before;
            }
            path.reverse();
            return Some(path);
        }
        for (t, g) in gens.iter().enumerate() {
            let q = pair_image(g, p);
            if let std::collections::btree_map::Entry::Vacant(e) = prev.entry(q) {
                e.insert(Some((p, t)));
                queue.push_back(q);
            }
        }
    }
    None
}

/// Hurwitz moves bringing `s` to the normalized shape; returns them with the
/// number of leading trivial-image factors.
fn normalize(s: &Factorization) -> Result<(Tracker, usize)> {
    let mut t = Tracker::new(s);
    let len = s.len();
    let mut k = 0;
    for p in 0..len {
        if trivial_image(t.cur.factors()[p].class) {
            // each factor passed is conjugated by a pure braid
            t.apply_all((k + 1..=p).rev().map(Move::r))?;
            k += 1;
        }
    }
    let m = s.strand_count();
    let mut prefix = Permutation::identity(m);
    let gens: Vec<Permutation> = t.cur.factors()[k..]
        .iter()
        .map(|f| {
            prefix = f.permutation().compose(&prefix);
            prefix.clone()
        })
        .collect();
    for idx in 0..k {
        let pair = t.cur.factors()[idx].permutation_pair();
        let path = steer(pair, &gens).ok_or_else(|| Error::Precondition("images do not act transitively".into()))?;
        for g in path {
            // out through the first g+1 factors of the even block and back
            let far = k + g + 1;
            t.apply_all((idx + 1..far).map(Move::r))?;
            t.apply_all((idx + 1..far).rev().map(Move::r))?;
        }
        debug_assert_eq!(t.cur.factors()[idx].permutation_pair(), (1, 2));
    }
    for p in 1..k {
        let mut q = p;
        while q > 0 && t.cur.factors()[q - 1].class > t.cur.factors()[q].class {
            t.apply(Move::r(q))?;
            q -= 1;
        }
    }
    Ok((t, k))
}

fn marked_image(s: &Factorization, from: usize) -> Result<MarkedSymFactorization> {
    let entries = s.factors()[from..]
        .iter()
        .map(|f| SymEntry {
            perm: f.permutation(),
            mark: match f.class {
                SingClass::A(i) => i,
                SingClass::Abar1 => unreachable!("trivial-image classes were moved out"),
            },
        })
        .collect();
    MarkedSymFactorization::new(s.strand_count(), entries)
}

/// Twist letters of a short pure `P` with `P⁻¹ g₁ P = g₂`, where `g_i = q_i a_1^e q_i⁻¹`.
fn pure_conjugator(q1: &BraidWord, q2: &BraidWord, e: i32) -> Result<Vec<TwistLetter>> {
    let m = q1.strand_count();
    let (p1, pair1) = pure_decompose(q1, e)?;
    let (p2, pair2) = pure_decompose(q2, e)?;
    if pair1 != pair2 {
        return Err(Error::Precondition(format!("pairs {pair1:?} and {pair2:?} differ after alignment")));
    }
    let z2 = full_twist(m, pair1.0, pair1.1)?;
    let d2 = garside_delta(m)?.pow(2);
    let p2i = p2.invert();
    let mut best: Option<Vec<TwistLetter>> = None;
    for t in -TWIST_SHIFT..=TWIST_SHIFT {
        for u in -CENTER_SHIFT..=CENTER_SHIFT {
            let p = p1.compose(&z2.pow(t))?.compose(&d2.pow(u))?.compose(&p2i)?.free_reduced();
            let letters = comb_pure(&p)?;
            if best.as_ref().is_none_or(|b| letters.len() < b.len()) {
                best = Some(letters);
            }
        }
    }
    Ok(best.expect("at least one candidate"))
}

fn check_preconditions(s1: &Factorization, s2: &Factorization) -> Result<i64> {
    if s1.strand_count() != s2.strand_count() {
        return Err(Error::StrandMismatch(s1.strand_count(), s2.strand_count()));
    }
    let (md1, md2) = (s1.multi_degree(), s2.multi_degree());
    if md1 != md2 {
        return Err(Error::Precondition(format!("multi-degrees differ: {md1} vs {md2}")));
    }
    let power = |s: &Factorization| {
        let a = s.alpha_nf();
        (a.factors().is_empty() && a.inf() % 2 == 0 && a.inf() >= 0).then_some(a.inf() / 2)
    };
    let (n1, n2) = (power(s1), power(s2));
    match (n1, n2) {
        (Some(a), Some(b)) if a == b => Ok(a),
        _ => Err(Error::Precondition("products are not the same power of Δ²".into())),
    }
}

/// Certificate of Hurwitz moves, node-pair insertions and cancellations taking
/// `s1` to `s2`. Sub-searches that run out of budget make the result
/// `Inconclusive`; every returned certificate has been replayed.
pub fn rewrite_theorem_main(s1: &Factorization, s2: &Factorization, limits: &SearchLimits) -> Result<SearchOutcome> {
    check_preconditions(s1, s2)?;
    if s1.matches(s2) {
        return Ok(SearchOutcome::Equivalent(MoveCertificate::default()));
    }
    let all_nodes = |s: &Factorization| s.factors().iter().all(|f| f.class == SingClass::A(1));
    if all_nodes(s1) && all_nodes(s2) {
        return through_delta_tilde(s1, s2, limits);
    }
    for (name, s) in [("first", s1), ("second", s2)] {
        if !s.generated_sym_subgroup()?.is_full() {
            return Err(Error::Precondition(format!("images of the {name} factorization do not generate Σ_m")));
        }
    }
    let m = s1.strand_count();
    let (mut t1, k) = normalize(s1)?;
    let (t2, _) = normalize(s2)?;

    let (img1, img2) = (marked_image(&t1.cur, k)?, marked_image(&t2.cur, k)?);
    match marked_equiv(&img1, &img2, limits)? {
        SearchOutcome::Equivalent(c) => t1.apply_all(c.moves.iter().map(|mv| mv.shifted(k)))?,
        SearchOutcome::Inequivalent(why) => {
            return Ok(SearchOutcome::Inconclusive(format!("marked images are not Hurwitz equivalent: {why}")))
        }
        SearchOutcome::Inconclusive(why) => return Ok(SearchOutcome::Inconclusive(why)),
    }

    let len = s1.len();
    let mut plans = Vec::with_capacity(len);
    for j in 0..len {
        let (f1, f2) = (&t1.cur.factors()[j], &t2.cur.factors()[j]);
        plans.push(pure_conjugator(&f1.conj, &f2.conj, f1.class.exponent())?);
    }
    let blocks: usize = plans.iter().map(Vec::len).sum();
    let d = delta_tilde_squared(m)?;
    let n = d.len();
    let order = delta_twist_order(m);
    for (b, f) in (0..blocks).flat_map(|b| d.factors().iter().enumerate().map(move |(i, f)| (b * n + i, f))) {
        t1.apply(Move::Insert(len + b + 1, f.conj.clone()))?;
    }

    // 0-based layout while factor j is processed:
    // [g_0..g_{j-1} | z-stack(a) | g_j | leftovers(b) | fixed g'_{j+1..} | junk | unused blocks | inverses]
    let mut junk = 0;
    for j in (0..len).rev() {
        let (mut a, mut b) = (0usize, 0usize);
        for letter in &plans[j] {
            let g = j + a;
            t1.apply_all(park(len + junk + a + b, g + 1, n))?;
            let idx = order.iter().position(|&p| p == (letter.k, letter.l)).expect("pair in range");
            let start = g + 1;
            if letter.positive {
                t1.apply_all((start..start + idx).rev().map(|i| Move::r(i + 1)))?;
                t1.apply(Move::r(g + 1))?;
                a += 1;
                b += n - 1;
            } else {
                t1.apply_all((start + idx..start + n - 1).map(|i| Move::l(i + 1)))?;
                t1.apply_all((g..g + n - 1).map(|i| Move::r(i + 1)))?;
                a += n - 1;
                b += 1;
            }
        }
        // g'_j back to position j, then everything fixed moves left past the leftovers
        t1.apply_all((j..j + a).rev().map(|i| Move::r(i + 1)))?;
        let extra = a + b;
        for f in j + 1 + extra..len + extra {
            t1.apply_all((f - extra..f).rev().map(|i| Move::r(i + 1)))?;
        }
        junk += extra;
    }
    debug_assert_eq!(junk, blocks * n);

    if blocks > 0 {
        let rest = Factorization::new(m, t1.cur.factors()[len..len + junk].to_vec())?;
        match delta_tilde_recognize(&rest, limits)? {
            SearchOutcome::Equivalent(c) => t1.apply_all(c.moves.iter().map(|mv| mv.shifted(len)))?,
            other => {
                return Ok(SearchOutcome::Inconclusive(format!("leftover twists not recognized: {other:?}")));
            }
        }
        t1.apply_all((len + 1..=len + junk).rev().map(Move::Cancel))?;
    }
    let back = MoveCertificate::new(t2.moves).inverse_hurwitz().expect("normalization uses Hurwitz moves");
    let mut moves = t1.moves;
    moves.extend(back.moves);
    Ok(verified(s1, s2, MoveCertificate::new(moves)))
}

/// Moves the block `[at, at+n)` left to start at `to` (0-based).
fn park(at: usize, to: usize, n: usize) -> Vec<Move> {
    let mut out = Vec::with_capacity((at - to) * n);
    for p in (to..at).rev() {
        out.extend((p..p + n).map(|i| Move::r(i + 1)));
    }
    out
}

fn through_delta_tilde(s1: &Factorization, s2: &Factorization, limits: &SearchLimits) -> Result<SearchOutcome> {
    let outcome = |s| delta_tilde_recognize(s, limits);
    match (outcome(s1)?, outcome(s2)?) {
        (SearchOutcome::Equivalent(a), SearchOutcome::Equivalent(b)) => {
            let mut moves = a.moves;
            moves.extend(b.inverse_hurwitz().expect("Hurwitz moves").moves);
            Ok(verified(s1, s2, MoveCertificate::new(moves)))
        }
        (SearchOutcome::Equivalent(_), other) | (other, _) => Ok(match other {
            SearchOutcome::Inconclusive(why) => SearchOutcome::Inconclusive(why),
            other => SearchOutcome::Inconclusive(format!("{other:?}")),
        }),
    }
}
