//! Default seeds and limits, read from `config/defaults.json` at build time.

use std::sync::OnceLock;

use serde::Deserialize;

use crate::cert::SearchLimits;

#[derive(Clone, Debug, Deserialize)]
pub struct Seeds {
    pub gen_instances: u64,
    pub properties: u64,
    pub cl1: u64,
    pub d2_conjugators: u64,
}

#[derive(Clone, Debug, Deserialize)]
pub struct Defaults {
    pub seeds: Seeds,
    pub limits: SearchLimits,
}

const RAW: &str = include_str!("../../../config/defaults.json");

pub fn defaults() -> &'static Defaults {
    static CELL: OnceLock<Defaults> = OnceLock::new();
    CELL.get_or_init(|| serde_json::from_str(RAW).expect("config/defaults.json is valid"))
}
