//! Seeded instance pairs for the rewriting pipeline.

use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::braid::{base_conjugator, BraidWord};
use crate::cert::Direction;
use crate::error::{Error, Result};
use crate::semigroup::{delta_squared, Factor, Factorization, SingClass};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Profile {
    /// `(s, λ(g)(s))` for a short random `g`.
    Conjugate,
    /// `(s, t)` with `t` at the end of a random walk of Hurwitz moves.
    Shuffle,
}

impl FromStr for Profile {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "conjugate" => Ok(Profile::Conjugate),
            "shuffle" => Ok(Profile::Shuffle),
            other => Err(Error::Parse(format!("unknown profile `{other}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InstancePair {
    pub name: String,
    pub s1: Factorization,
    pub s2: Factorization,
}

pub const MAX_CONJUGATOR: usize = 4;
const WALK: std::ops::RangeInclusive<usize> = 4..=10;

fn word(m: usize, letters: &[i32]) -> Result<BraidWord> {
    BraidWord::new(m, letters.to_vec())
}

/// Factorizations of `Δ²_m` with full symmetric image.
pub fn seeds(m: usize) -> Result<Vec<(String, Factorization)>> {
    if m < 2 {
        return Err(Error::StrandCount(m));
    }
    let d2 = delta_squared(m)?;
    let mut out = vec![("delta2".to_string(), d2.clone())];
    // a node pair inserted in the middle, conjugated by a_{m-1}
    let node = Factor::new(SingClass::A(1), base_conjugator(m, m - 1, m)?);
    out.push(("delta2+pair".into(), d2.insert_pair(d2.len() / 2, &node)?));
    if m == 3 {
        // Δ² = a1³ · (a1⁻¹ a2 a1) · a1 · a2
        let cusp = Factorization::new(
            3,
            vec![
                Factor::new(SingClass::A(2), word(3, &[])?),
                Factor::new(SingClass::A(0), word(3, &[-1, -1, -2])?),
                Factor::new(SingClass::A(0), word(3, &[])?),
                Factor::new(SingClass::A(0), word(3, &[-1, -2])?),
            ],
        )?;
        // Δ² = a1 a2 a1² a2 a1
        let nodal = Factorization::new(
            3,
            vec![
                Factor::new(SingClass::A(0), word(3, &[])?),
                Factor::new(SingClass::A(0), word(3, &[-1, -2])?),
                Factor::new(SingClass::A(1), word(3, &[])?),
                Factor::new(SingClass::A(0), word(3, &[-1, -2])?),
                Factor::new(SingClass::A(0), word(3, &[])?),
            ],
        )?;
        out.push(("cusp".into(), cusp));
        out.push(("node".into(), nodal));
    }
    Ok(out)
}

fn random_word(rng: &mut ChaCha8Rng, m: usize, max_len: usize) -> Result<BraidWord> {
    let len = rng.gen_range(1..=max_len);
    let letters = (0..len)
        .map(|_| {
            let g = rng.gen_range(1..m as i32);
            if rng.gen_bool(0.5) {
                g
            } else {
                -g
            }
        })
        .collect();
    BraidWord::new(m, letters).map(|w| w.free_reduced())
}

/// `count` pairs cycling through the seeds of `m`; identical for equal arguments.
pub fn gen_instances(m: usize, count: usize, profile: Profile, seed: u64) -> Result<Vec<InstancePair>> {
    let seeds = seeds(m)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    for k in 0..count {
        let (name, s) = &seeds[k % seeds.len()];
        let s2 = match profile {
            Profile::Conjugate => s.simultaneous_conjugate(&random_word(&mut rng, m, MAX_CONJUGATOR)?)?,
            Profile::Shuffle => {
                let mut t = s.clone();
                for _ in 0..rng.gen_range(WALK) {
                    let i = rng.gen_range(1..t.len());
                    let dir = if rng.gen_bool(0.5) { Direction::R } else { Direction::L };
                    t = t.hurwitz(i, dir)?;
                }
                t
            }
        };
        let tag = match profile {
            Profile::Conjugate => "conjugate",
            Profile::Shuffle => "shuffle",
        };
        out.push(InstancePair { name: format!("{name}-{tag}-{k}"), s1: s.clone(), s2 });
    }
    Ok(out)
}
