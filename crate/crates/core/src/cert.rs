//! Moves, certificates and search limits shared by the search engines.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::braid::BraidWord;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Direction {
    /// `(x, y) -> (y, y⁻¹xy)`
    R,
    /// `(x, y) -> (xyx⁻¹, x)`
    L,
}

impl Direction {
    pub fn inverse(self) -> Direction {
        match self {
            Direction::R => Direction::L,
            Direction::L => Direction::R,
        }
    }
}

/// One step of a certificate. Positions are 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Move {
    Hurwitz(Direction, usize),
    /// Simultaneous conjugation of every factor by `g`.
    Conj(BraidWord),
    /// Inserts the node pair with conjugator `conj` (class A1, then Abar1) at `i`, `i+1`.
    Insert(usize, BraidWord),
    Cancel(usize),
}

impl Move {
    pub fn r(i: usize) -> Move {
        Move::Hurwitz(Direction::R, i)
    }

    pub fn l(i: usize) -> Move {
        Move::Hurwitz(Direction::L, i)
    }

    pub fn shifted(&self, offset: usize) -> Move {
        match self {
            Move::Hurwitz(d, i) => Move::Hurwitz(*d, i + offset),
            Move::Conj(g) => Move::Conj(g.clone()),
            Move::Insert(i, g) => Move::Insert(i + offset, g.clone()),
            Move::Cancel(i) => Move::Cancel(i + offset),
        }
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Move::Hurwitz(d, i) => write!(f, "{d:?}{i}"),
            Move::Conj(g) => write!(f, "conj[{}]", letters_str(g)),
            Move::Insert(i, g) => write!(f, "insert{i}[{}]", letters_str(g)),
            Move::Cancel(i) => write!(f, "cancel{i}"),
        }
    }
}

fn letters_str(g: &BraidWord) -> String {
    g.letters().iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct MoveCertificate {
    pub moves: Vec<Move>,
}

#[derive(Serialize, Deserialize)]
struct MoveRecord {
    op: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    i: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    g: Option<Vec<i32>>,
}

impl MoveCertificate {
    pub fn new(moves: Vec<Move>) -> Self {
        MoveCertificate { moves }
    }

    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }

    pub fn count_inserts(&self) -> usize {
        self.moves.iter().filter(|m| matches!(m, Move::Insert(..))).count()
    }

    pub fn count_cancels(&self) -> usize {
        self.moves.iter().filter(|m| matches!(m, Move::Cancel(_))).count()
    }

    /// The reverse certificate, for certificates made of Hurwitz moves and
    /// conjugations only.
    pub fn inverse_hurwitz(&self) -> Option<MoveCertificate> {
        let mut out = Vec::with_capacity(self.moves.len());
        for m in self.moves.iter().rev() {
            out.push(match m {
                Move::Hurwitz(d, i) => Move::Hurwitz(d.inverse(), *i),
                Move::Conj(g) => Move::Conj(g.invert()),
                _ => return None,
            });
        }
        Some(MoveCertificate { moves: out })
    }

    pub fn to_json(&self) -> String {
        let records: Vec<MoveRecord> = self
            .moves
            .iter()
            .map(|m| match m {
                Move::Hurwitz(d, i) => MoveRecord { op: format!("{d:?}"), i: Some(*i), g: None },
                Move::Conj(g) => MoveRecord { op: "conj".into(), i: None, g: Some(g.letters().to_vec()) },
                Move::Insert(i, g) => MoveRecord { op: "insert".into(), i: Some(*i), g: Some(g.letters().to_vec()) },
                Move::Cancel(i) => MoveRecord { op: "cancel".into(), i: Some(*i), g: None },
            })
            .collect();
        serde_json::to_string(&records).expect("records serialize")
    }

    /// Parses the JSON array form; braid words in `g` are read with `m` strands.
    pub fn from_json(text: &str, m: usize) -> Result<MoveCertificate> {
        let records: Vec<MoveRecord> = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let mut moves = Vec::with_capacity(records.len());
        for (k, r) in records.into_iter().enumerate() {
            let need_i = || r.i.ok_or_else(|| Error::Parse(format!("record {k}: missing `i`")));
            let need_g = || -> Result<BraidWord> {
                let g = r.g.clone().ok_or_else(|| Error::Parse(format!("record {k}: missing `g`")))?;
                BraidWord::new(m, g)
            };
            moves.push(match r.op.as_str() {
                "L" => Move::l(need_i()?),
                "R" => Move::r(need_i()?),
                "conj" => Move::Conj(need_g()?),
                "insert" => Move::Insert(need_i()?, need_g()?),
                "cancel" => Move::Cancel(need_i()?),
                other => return Err(Error::Parse(format!("record {k}: unknown op `{other}`"))),
            });
        }
        Ok(MoveCertificate { moves })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchLimits {
    pub max_depth: usize,
    pub max_states: usize,
    pub max_word_length: usize,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits { max_depth: 24, max_states: 2_000_000, max_word_length: 400 }
    }
}

/// Result of an equivalence search. Running out of budget is reported as
/// `Inconclusive`, never as inequivalence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    Equivalent(MoveCertificate),
    Inequivalent(String),
    Inconclusive(String),
}

impl SearchOutcome {
    pub fn certificate(&self) -> Option<&MoveCertificate> {
        match self {
            SearchOutcome::Equivalent(c) => Some(c),
            _ => None,
        }
    }

    pub fn is_equivalent(&self) -> bool {
        matches!(self, SearchOutcome::Equivalent(_))
    }
}
