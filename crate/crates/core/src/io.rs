//! JSON documents for factorizations.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::braid::BraidWord;
use crate::error::{Error, Result};
use crate::semigroup::{Factor, Factorization, SingClass};

pub const SCHEMA_VERSION: &str = "1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorRecord {
    pub class: SingClass,
    pub conj: Vec<i32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorizationDocument {
    pub schema_version: String,
    pub m: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub factors: Vec<FactorRecord>,
}

impl FactorizationDocument {
    pub fn from_factorization(s: &Factorization, name: Option<&str>) -> Self {
        FactorizationDocument {
            schema_version: SCHEMA_VERSION.into(),
            m: s.strand_count(),
            name: name.map(str::to_owned),
            factors: s.factors().iter().map(|f| FactorRecord { class: f.class, conj: f.conj.letters().to_vec() }).collect(),
        }
    }

    pub fn to_factorization(&self) -> Result<Factorization> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(Error::Parse(format!("unsupported schema_version `{}`", self.schema_version)));
        }
        let factors = self
            .factors
            .iter()
            .map(|r| Ok(Factor::new(r.class, BraidWord::new(self.m, r.conj.clone())?)))
            .collect::<Result<Vec<_>>>()?;
        Factorization::new(self.m, factors)
    }

    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents serialize")
    }
}

pub fn read_factorization(path: &Path) -> Result<(Factorization, Option<String>)> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let doc = FactorizationDocument::parse(&text)?;
    Ok((doc.to_factorization()?, doc.name))
}
