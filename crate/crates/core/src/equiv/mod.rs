//! Certificate replay and the equivalence searches.

mod recognize;
mod rewrite;
mod state;

use crate::cert::{Direction, Move, MoveCertificate, SearchLimits, SearchOutcome};
use crate::error::{Error, Result};
use crate::search::{bidirectional, Bfs};
use crate::semigroup::{Factorization, SingClass};

pub use recognize::{delta_tilde_recognize, generator_path, PathCache, CACHE_ENV};
pub use rewrite::rewrite_theorem_main;
use state::NfSpace;

/// Replays `cert` on `s`. Errors carry the 0-based index of the failing move.
pub fn apply_certificate(s: &Factorization, cert: &MoveCertificate) -> Result<Factorization> {
    let mut cur = s.clone();
    for (step, mv) in cert.moves.iter().enumerate() {
        cur = cur.apply(mv).map_err(|e| Error::Replay { step, reason: e.to_string() })?;
    }
    Ok(cur)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertificateCheck {
    pub ok: bool,
    pub detail: String,
}

/// Replays `cert` on `s1` and compares the result with `s2` factor by factor:
/// equal class tags and equal values in the braid group.
pub fn check_certificate(s1: &Factorization, s2: &Factorization, cert: &MoveCertificate) -> CertificateCheck {
    match apply_certificate(s1, cert) {
        Err(e) => CertificateCheck { ok: false, detail: e.to_string() },
        Ok(out) => match out.first_mismatch(s2) {
            None => CertificateCheck { ok: true, detail: format!("{} moves replayed", cert.len()) },
            Some(_) if out.len() != s2.len() => CertificateCheck {
                ok: false,
                detail: format!("lengths differ after replay: {} vs {}", out.len(), s2.len()),
            },
            Some(p) => CertificateCheck { ok: false, detail: format!("factor {p} differs after replay") },
        },
    }
}

/// Invariants of Hurwitz moves that tell `s1` and `s2` apart, if any.
pub fn hurwitz_invariant_mismatch(s1: &Factorization, s2: &Factorization) -> Result<Option<String>> {
    let (md1, md2) = (s1.multi_degree(), s2.multi_degree());
    if md1 != md2 {
        return Ok(Some(format!("multi-degrees differ: {md1} vs {md2}")));
    }
    if s1.alpha_nf() != s2.alpha_nf() {
        return Ok(Some("products differ".into()));
    }
    let (h1, h2) = (s1.generated_sym_subgroup()?, s2.generated_sym_subgroup()?);
    if h1.order() != h2.order() {
        return Ok(Some(format!("generated subgroups have orders {} and {}", h1.order(), h2.order())));
    }
    if h1 != h2 {
        return Ok(Some(format!("generated subgroups of order {} differ", h1.order())));
    }
    Ok(None)
}

fn check_pair(s1: &Factorization, s2: &Factorization) -> Result<()> {
    if s1.strand_count() != s2.strand_count() {
        return Err(Error::StrandMismatch(s1.strand_count(), s2.strand_count()));
    }
    Ok(())
}

/// Turns a sound certificate into `Equivalent`, anything else into an internal error report.
fn verified(s1: &Factorization, s2: &Factorization, cert: MoveCertificate) -> SearchOutcome {
    let check = check_certificate(s1, s2, &cert);
    if check.ok {
        SearchOutcome::Equivalent(cert)
    } else {
        SearchOutcome::Inconclusive(format!("certificate failed its replay check: {}", check.detail))
    }
}

/// Bounded bidirectional search using Hurwitz moves only.
pub fn bfs_hurwitz_equiv(s1: &Factorization, s2: &Factorization, limits: &SearchLimits) -> Result<SearchOutcome> {
    check_pair(s1, s2)?;
    if s1.len() != s2.len() {
        return Err(Error::Precondition(format!("lengths differ: {} vs {}", s1.len(), s2.len())));
    }
    if let Some(why) = hurwitz_invariant_mismatch(s1, s2)? {
        return Ok(SearchOutcome::Inequivalent(why));
    }
    let space = NfSpace { max_word_length: limits.max_word_length, cancel: false };
    let out = bidirectional(&space, state::nf_state(s1), state::nf_state(s2), limits.max_depth, limits.max_states);
    Ok(match out {
        Bfs::Found { forward, backward } => {
            let mut moves = forward;
            moves.extend(MoveCertificate::new(backward).inverse_hurwitz().expect("Hurwitz moves only").moves);
            verified(s1, s2, MoveCertificate::new(moves))
        }
        Bfs::Exhausted { pruned: false, states } => {
            SearchOutcome::Inequivalent(format!("Hurwitz orbit exhausted after {states} states"))
        }
        Bfs::Exhausted { pruned: true, states } => SearchOutcome::Inconclusive(format!(
            "explored {states} states; some were cut by the word length limit {}",
            limits.max_word_length
        )),
        Bfs::Limit(why) => SearchOutcome::Inconclusive(why),
    })
}

/// Inverts a path of Hurwitz moves and cancellations that starts at `s`.
fn invert_with_inserts(s: &Factorization, path: &[Move]) -> Result<Vec<Move>> {
    let mut cur = s.clone();
    let mut inverse = Vec::with_capacity(path.len());
    for mv in path {
        match mv {
            Move::Hurwitz(d, i) => inverse.push(vec![Move::Hurwitz(d.inverse(), *i)]),
            Move::Cancel(i) => {
                let (x, y) = (&cur.factors()[i - 1], &cur.factors()[*i]);
                inverse.push(if x.class == SingClass::A(1) {
                    vec![Move::Insert(*i, x.conj.clone())]
                } else {
                    vec![Move::Insert(*i, y.conj.clone()), Move::Hurwitz(Direction::R, *i)]
                });
            }
            other => return Err(Error::Precondition(format!("unexpected move {other} in a search path"))),
        }
        cur = cur.apply(mv)?;
    }
    Ok(inverse.into_iter().rev().flatten().collect())
}

/// Bounded search with Hurwitz moves and node-pair cancellations from both ends.
pub fn bfs_weak_equiv(s1: &Factorization, s2: &Factorization, limits: &SearchLimits) -> Result<SearchOutcome> {
    check_pair(s1, s2)?;
    if s1.alpha_nf() != s2.alpha_nf() {
        return Ok(SearchOutcome::Inequivalent("products differ".into()));
    }
    if s1.c_multi_degree() != s2.c_multi_degree() {
        return Ok(SearchOutcome::Inequivalent(format!(
            "c-multi-degrees differ: {:?} vs {:?}",
            s1.c_multi_degree(),
            s2.c_multi_degree()
        )));
    }
    let space = NfSpace { max_word_length: limits.max_word_length, cancel: true };
    let out = bidirectional(&space, state::nf_state(s1), state::nf_state(s2), limits.max_depth, limits.max_states);
    Ok(match out {
        Bfs::Found { forward, backward } => {
            let mut moves = forward;
            moves.extend(invert_with_inserts(s2, &backward)?);
            verified(s1, s2, MoveCertificate::new(moves))
        }
        Bfs::Exhausted { states, .. } => SearchOutcome::Inconclusive(format!(
            "no path found among {states} states; node pairs are only cancelled, never created, during search"
        )),
        Bfs::Limit(why) => SearchOutcome::Inconclusive(why),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::BraidWord;
    use crate::semigroup::{delta_squared, delta_tilde_squared, Factor};

    fn w(m: usize, l: &[i32]) -> BraidWord {
        BraidWord::new(m, l.to_vec()).unwrap()
    }

    #[test]
    fn replay_basics() {
        let s = delta_squared(3).unwrap();
        assert_eq!(apply_certificate(&s, &MoveCertificate::default()).unwrap(), s);
        let c = MoveCertificate::new(vec![Move::Insert(1, w(3, &[2])), Move::Cancel(1)]);
        assert_eq!(apply_certificate(&s, &c).unwrap(), s);
        let bad = MoveCertificate::new(vec![Move::r(1), Move::Cancel(1)]);
        assert!(matches!(apply_certificate(&s, &bad), Err(Error::Replay { step: 1, .. })));
        assert!(check_certificate(&s, &s, &MoveCertificate::default()).ok);
        assert!(!check_certificate(&s, &s.hurwitz(1, Direction::R).unwrap(), &MoveCertificate::default()).ok);
    }

    #[test]
    fn depth_one_search() {
        let s = delta_squared(3).unwrap();
        let t = s.hurwitz(1, Direction::R).unwrap();
        let out = bfs_hurwitz_equiv(&s, &t, &SearchLimits::default()).unwrap();
        assert_eq!(out.certificate().unwrap().moves, vec![Move::r(1)]);
    }

    #[test]
    fn conjugated_delta_tilde_returns() {
        let d = delta_tilde_squared(3).unwrap();
        let c = d.simultaneous_conjugate(&w(3, &[1])).unwrap();
        let out = bfs_hurwitz_equiv(&c, &d, &SearchLimits::default()).unwrap();
        assert!(out.is_equivalent(), "{out:?}");
    }

    #[test]
    fn weak_search_cancels() {
        let s = delta_squared(3).unwrap();
        let g = Factor::new(SingClass::A(1), w(3, &[2, -1]));
        let t = s.insert_pair(4, &g).unwrap();
        let lim = SearchLimits::default();
        let out = bfs_weak_equiv(&t, &s, &lim).unwrap();
        assert!(out.certificate().unwrap().moves.contains(&Move::Cancel(4)));
        let back = bfs_weak_equiv(&s, &t, &lim).unwrap();
        assert_eq!(back.certificate().unwrap().count_inserts(), 1);
        // an (Abar1, A1) pair is recreated with an insertion and one move
        let u = t.hurwitz(4, Direction::R).unwrap();
        let out = bfs_weak_equiv(&s, &u, &lim).unwrap();
        assert!(out.is_equivalent(), "{out:?}");
        let md = bfs_weak_equiv(&s, &delta_tilde_squared(3).unwrap(), &lim).unwrap();
        assert!(matches!(md, SearchOutcome::Inequivalent(_)));
    }
}
