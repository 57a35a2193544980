//! Rewriting a node factorization of `Δ^{2N}` into `(δ̃²)^N`.
//!
//! Strategy: greedy descent on the total normal-form length; whenever a
//! window of `m(m-1)/2` consecutive factors multiplies to `Δ²` it is turned
//! into a literal `δ̃²` and parked at the front. A window of the form
//! `λ(b)(δ̃²)` is handled with cached per-generator paths, anything else with a
//! small search. What is left at the end goes to a bounded search.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::{Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use super::state::{nf_hurwitz, nf_state, NfFactor, NfSpace};
use super::{check_certificate, verified};
use crate::braid::{BraidWord, GarsideNF};
use crate::cert::{Direction, Move, MoveCertificate, SearchLimits, SearchOutcome};
use crate::error::{Error, Result};
use crate::search::{bidirectional, Bfs};
use crate::semigroup::{delta_tilde_squared, Factorization, SingClass};

/// Environment variable naming the directory of the path cache.
pub const CACHE_ENV: &str = "MONODROMY_CACHE_DIR";
const CACHE_FILE: &str = "delta_tilde_paths.json";
const CACHE_VERSION: u32 = 1;

/// Largest `|t|` tried when matching a window against `λ(q a_1^t)(δ̃²)`.
const MAX_A1_SHIFT: i32 = 6;
/// Budget of the search on a single central window that is not of `λ` form.
const WINDOW_STATES: usize = 20_000;
const WINDOW_WORD_LENGTH: usize = 120;
const MAX_WINDOW_SEARCHES: usize = 8;
/// The final search only runs on this many leftover blocks.
const MAX_FALLBACK_BLOCKS: usize = 2;

#[derive(Default, Serialize, Deserialize)]
struct CacheFile {
    version: u32,
    /// Keyed by `"m,j"` with signed `j`.
    paths: BTreeMap<String, String>,
}

/// Certificates taking `λ(a_j^{±1})(δ̃²_m)` to `δ̃²_m`, computed on demand and
/// kept in memory and, best effort, on disk.
pub struct PathCache {
    dir: Option<PathBuf>,
    paths: Mutex<BTreeMap<(usize, i32), MoveCertificate>>,
}

impl PathCache {
    pub fn new(dir: Option<PathBuf>) -> PathCache {
        let cache = PathCache { dir, paths: Mutex::new(BTreeMap::new()) };
        cache.load();
        cache
    }

    /// The process-wide cache under `$MONODROMY_CACHE_DIR` (default `.cache`).
    pub fn global() -> &'static PathCache {
        static CACHE: OnceLock<PathCache> = OnceLock::new();
        CACHE.get_or_init(|| {
            let dir = std::env::var_os(CACHE_ENV).map(PathBuf::from).unwrap_or_else(|| PathBuf::from(".cache"));
            PathCache::new(Some(dir))
        })
    }

    fn file(&self) -> Option<PathBuf> {
        self.dir.as_deref().map(|d| d.join(CACHE_FILE))
    }

    fn load(&self) {
        let Some(text) = self.file().and_then(|f| std::fs::read_to_string(f).ok()) else { return };
        let Ok(file) = serde_json::from_str::<CacheFile>(&text) else { return };
        if file.version != CACHE_VERSION {
            return;
        }
        let mut paths = self.paths.lock().expect("cache lock");
        for (key, cert) in file.paths {
            let Some((m, j)) = key.split_once(',') else { continue };
            let (Ok(m), Ok(j)) = (m.parse::<usize>(), j.parse::<i32>()) else { continue };
            let Ok(cert) = MoveCertificate::from_json(&cert, m) else { continue };
            // entries are trusted only after a replay
            if path_is_valid(m, j, &cert) {
                paths.insert((m, j), cert);
            }
        }
    }

    fn store(&self, paths: &BTreeMap<(usize, i32), MoveCertificate>) {
        let Some(file) = self.file() else { return };
        let out = CacheFile {
            version: CACHE_VERSION,
            paths: paths.iter().map(|((m, j), c)| (format!("{m},{j}"), c.to_json())).collect(),
        };
        let write = |dir: &Path| -> std::io::Result<()> {
            std::fs::create_dir_all(dir)?;
            let tmp = file.with_extension(format!("tmp{}", std::process::id()));
            std::fs::write(&tmp, serde_json::to_string_pretty(&out).expect("cache serializes"))?;
            std::fs::rename(tmp, &file)
        };
        if let Some(dir) = file.parent() {
            let _ = write(dir);
        }
    }

    /// The path for `λ(a_j)` (`j > 0`) or `λ(a_{|j|}^{-1})` (`j < 0`).
    pub fn get(&self, m: usize, j: i32) -> Result<MoveCertificate> {
        if j == 0 || j.unsigned_abs() as usize >= m {
            return Err(Error::BadLetter { letter: j, m });
        }
        if let Some(c) = self.paths.lock().expect("cache lock").get(&(m, j)) {
            return Ok(c.clone());
        }
        let cert = generator_path(m, j)?;
        let mut paths = self.paths.lock().expect("cache lock");
        paths.insert((m, j), cert.clone());
        self.store(&paths);
        Ok(cert)
    }
}

fn path_is_valid(m: usize, j: i32, cert: &MoveCertificate) -> bool {
    let (Ok(d), Ok(g)) = (delta_tilde_squared(m), BraidWord::new(m, vec![j])) else { return false };
    match d.simultaneous_conjugate(&g) {
        Ok(start) => check_certificate(&start, &d, cert).ok,
        Err(_) => false,
    }
}

/// Searches for Hurwitz moves taking `λ(a_j^{±1})(δ̃²_m)` to `δ̃²_m`.
pub fn generator_path(m: usize, j: i32) -> Result<MoveCertificate> {
    let d = delta_tilde_squared(m)?;
    let start = d.simultaneous_conjugate(&BraidWord::new(m, vec![j])?)?;
    let limits = SearchLimits { max_depth: 40, max_states: 4_000_000, max_word_length: 200 };
    match super::bfs_hurwitz_equiv(&start, &d, &limits)? {
        SearchOutcome::Equivalent(c) => Ok(c),
        other => Err(Error::Precondition(format!("no path for generator {j} on {m} strands: {other:?}"))),
    }
}

/// Works on a factorization while recording the moves applied to it.
struct Worker {
    cur: Factorization,
    nfs: Vec<GarsideNF>,
    moves: Vec<Move>,
}

impl Worker {
    fn apply(&mut self, mv: Move) -> Result<()> {
        if let Move::Hurwitz(d, i) = mv {
            let st: Vec<NfFactor> = self.nf_view(i - 1, i + 1);
            let next = nf_hurwitz(&st, 1, d);
            self.nfs[i - 1] = next[0].nf.clone();
            self.nfs[i] = next[1].nf.clone();
        }
        self.cur = self.cur.apply(&mv)?;
        self.moves.push(mv);
        Ok(())
    }

    fn nf_view(&self, from: usize, to: usize) -> Vec<NfFactor> {
        self.nfs[from..to].iter().map(|nf| NfFactor { class: SingClass::A(1), nf: nf.clone() }).collect()
    }

    /// Best single move in `[from, len)` that lowers the total length.
    fn best_move(&self, from: usize) -> Option<Move> {
        let mut best: Option<(isize, Move)> = None;
        for i in from + 1..self.nfs.len() {
            let pair = self.nf_view(i - 1, i + 1);
            let before = (pair[0].nf.word_len() + pair[1].nf.word_len()) as isize;
            for d in [Direction::R, Direction::L] {
                let after = nf_hurwitz(&pair, 1, d);
                let delta = (after[0].nf.word_len() + after[1].nf.word_len()) as isize - before;
                if delta < 0 && best.as_ref().is_none_or(|(b, _)| delta < *b) {
                    best = Some((delta, Move::Hurwitz(d, i)));
                }
            }
        }
        best.map(|(_, m)| m)
    }

    /// Leftmost window at or after `from` with product `Δ²`.
    fn central_window(&self, from: usize, n: usize, target: &GarsideNF) -> Option<usize> {
        (from..=self.nfs.len().saturating_sub(n)).find(|&p| {
            let prod = self.nfs[p..p + n].iter().fold(GarsideNF::identity(target.strand_count()), |acc, x| {
                acc.mul(x).expect("same strand count")
            });
            &prod == target
        })
    }

    /// Moves the block `[at, at+n)` left to start at `to`; the block stays literal
    /// and the factors it passes keep their values because its product is central.
    fn park(&mut self, at: usize, to: usize, n: usize) -> Result<()> {
        for p in (to..at).rev() {
            for i in p + 1..p + 1 + n {
                self.apply(Move::r(i))?;
            }
        }
        Ok(())
    }
}

/// Finds `b = q a_1^t` with `λ(b)(δ̃²) = window`, where `q` is the last conjugator.
fn lambda_form(window: &Factorization, d: &Factorization) -> Option<BraidWord> {
    let m = d.strand_count();
    let q = window.factors().last()?.conj.clone();
    for t in (0..=MAX_A1_SHIFT).flat_map(|t| if t == 0 { vec![0] } else { vec![t, -t] }) {
        let b = q.compose(&BraidWord::generator(m, 1).ok()?.pow(t)).ok()?;
        if d.simultaneous_conjugate(&b).ok()?.matches(window) {
            return Some(b);
        }
    }
    None
}

fn window_moves(
    window: &Factorization,
    d: &Factorization,
    cache: &PathCache,
    search: Option<&SearchLimits>,
    searches: &mut usize,
) -> Result<Option<Vec<Move>>> {
    if window.matches(d) {
        return Ok(Some(Vec::new()));
    }
    if let Some(b) = lambda_form(window, d) {
        let mut moves = Vec::new();
        for &x in b.letters().iter().rev() {
            moves.extend(cache.get(d.strand_count(), x)?.moves);
        }
        return Ok(Some(moves));
    }
    let Some(limits) = search else { return Ok(None) };
    *searches += 1;
    let space = NfSpace { max_word_length: limits.max_word_length, cancel: false };
    Ok(match bidirectional(&space, nf_state(window), nf_state(d), limits.max_depth, limits.max_states) {
        Bfs::Found { forward, backward } => {
            let mut moves = forward;
            moves.extend(MoveCertificate::new(backward).inverse_hurwitz().expect("Hurwitz moves").moves);
            Some(moves)
        }
        _ => None,
    })
}

/// Certificate taking `s` (all factors of class A1, product `Δ^{2N}`) to the
/// literal `(δ̃²_m)^N`. Running out of budget is `Inconclusive`, never a "no".
pub fn delta_tilde_recognize(s: &Factorization, limits: &SearchLimits) -> Result<SearchOutcome> {
    delta_tilde_recognize_with(s, limits, PathCache::global())
}

pub(crate) fn delta_tilde_recognize_with(
    s: &Factorization,
    limits: &SearchLimits,
    cache: &PathCache,
) -> Result<SearchOutcome> {
    let m = s.strand_count();
    if let Some(f) = s.factors().iter().find(|f| f.class != SingClass::A(1)) {
        return Err(Error::Precondition(format!("factor of class {} is not a node", f.class)));
    }
    let alpha = s.alpha_nf();
    let n = m * (m - 1) / 2;
    if !(alpha.factors().is_empty() && alpha.inf() % 2 == 0 && alpha.inf() >= 0) || s.len() != n * (alpha.inf() as usize / 2) {
        return Err(Error::Precondition("product is not (Δ²)^N with N = length / (m(m-1)/2)".into()));
    }
    let d = delta_tilde_squared(m)?;
    let total = d.pow(s.len() / n);
    if s.matches(&total) {
        return Ok(SearchOutcome::Equivalent(MoveCertificate::default()));
    }
    let delta2 = GarsideNF::delta_power(m, 2);
    let mut w = Worker { cur: s.clone(), nfs: s.value_nfs(), moves: Vec::new() };
    let mut done = 0;
    let small = SearchLimits {
        max_depth: limits.max_depth.min(16),
        max_states: limits.max_states.min(WINDOW_STATES),
        max_word_length: limits.max_word_length.min(WINDOW_WORD_LENGTH),
    };
    let mut budget = limits.max_states;
    let mut searches = 0;
    while done < w.nfs.len() {
        if let Some(at) = w.central_window(done, n, &delta2) {
            let window = Factorization::new(m, w.cur.factors()[at..at + n].to_vec())?;
            let search = (searches < MAX_WINDOW_SEARCHES).then_some(&small);
            if let Some(moves) = window_moves(&window, &d, cache, search, &mut searches)? {
                for mv in moves {
                    w.apply(mv.shifted(at))?;
                }
                w.park(at, done, n)?;
                done += n;
                continue;
            }
        }
        match w.best_move(done) {
            Some(mv) if budget > 0 => {
                budget -= 1;
                w.apply(mv)?;
            }
            _ => break,
        }
    }
    if w.nfs.len() - done > MAX_FALLBACK_BLOCKS * n {
        return Ok(SearchOutcome::Inconclusive(format!(
            "{} of {} factors left unrecognized after greedy descent",
            w.nfs.len() - done,
            w.nfs.len()
        )));
    }
    if done < w.nfs.len() {
        let rest = Factorization::new(m, w.cur.factors()[done..].to_vec())?;
        let target = d.pow(rest.len() / n);
        let space = NfSpace { max_word_length: limits.max_word_length, cancel: false };
        match bidirectional(&space, nf_state(&rest), nf_state(&target), limits.max_depth, limits.max_states) {
            Bfs::Found { forward, backward } => {
                for mv in forward {
                    w.apply(mv.shifted(done))?;
                }
                for mv in MoveCertificate::new(backward).inverse_hurwitz().expect("Hurwitz moves").moves {
                    w.apply(mv.shifted(done))?;
                }
            }
            other => {
                let why = match other {
                    Bfs::Limit(why) => why,
                    _ => "search space exhausted under the word length limit".into(),
                };
                return Ok(SearchOutcome::Inconclusive(format!(
                    "{} of {} factors recognized; remaining search: {why}",
                    done,
                    s.len()
                )));
            }
        }
    }
    Ok(verified(s, &total, MoveCertificate::new(w.moves)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn cache() -> PathCache {
        PathCache::new(None)
    }

    #[test]
    fn generator_paths_replay() {
        for m in 2..=3 {
            for j in 1..m as i32 {
                for j in [j, -j] {
                    let c = generator_path(m, j).unwrap();
                    assert!(path_is_valid(m, j, &c));
                }
            }
        }
    }

    #[test]
    fn literal_input_needs_no_moves() {
        let d = delta_tilde_squared(3).unwrap().pow(2);
        let out = delta_tilde_recognize_with(&d, &SearchLimits::default(), &cache()).unwrap();
        assert_eq!(out.certificate().unwrap().len(), 0);
    }

    #[test]
    fn conjugated_and_shuffled_inputs() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let c = cache();
        for n in 1..=3 {
            for _ in 0..5 {
                let d = delta_tilde_squared(3).unwrap().pow(n);
                let g: Vec<i32> = (0..4).map(|_| if rng.gen() { 1 } else { -1 } * rng.gen_range(1..3)).collect();
                let mut s = d.simultaneous_conjugate(&BraidWord::new(3, g).unwrap()).unwrap();
                for _ in 0..6 {
                    let i = rng.gen_range(1..s.len());
                    s = s.hurwitz(i, if rng.gen() { Direction::R } else { Direction::L }).unwrap();
                }
                let out = delta_tilde_recognize_with(&s, &SearchLimits::default(), &c).unwrap();
                assert!(out.is_equivalent(), "{s}: {out:?}");
            }
        }
    }

    #[test]
    fn two_strands() {
        let d = delta_tilde_squared(2).unwrap().pow(3);
        let s = d.hurwitz(1, Direction::L).unwrap().simultaneous_conjugate(&BraidWord::new(2, vec![1, 1]).unwrap());
        let out = delta_tilde_recognize_with(&s.unwrap(), &SearchLimits::default(), &cache()).unwrap();
        assert!(out.is_equivalent());
    }

    #[test]
    fn rejects_bad_input() {
        let lim = SearchLimits::default();
        assert!(delta_tilde_recognize_with(&crate::semigroup::delta_squared(3).unwrap(), &lim, &cache()).is_err());
        let d = delta_tilde_squared(3).unwrap();
        let short = Factorization::new(3, d.factors()[..2].to_vec()).unwrap();
        assert!(delta_tilde_recognize_with(&short, &lim, &cache()).is_err());
    }
}
