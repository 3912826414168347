//! Named parameter sets shipped with the crate (`data/params.toml`).

use std::collections::BTreeMap;
use std::sync::OnceLock;

use serde::Deserialize;

use crate::natural::parse_decimal;
use crate::numtheory::{GroupParams, Mode};
use crate::{Error, Result};

pub const REGISTRY_TOML: &str = include_str!("../data/params.toml");

#[derive(Debug, Clone, Deserialize)]
pub struct PrimalityNotes {
    pub deterministic_below: String,
    pub witnesses: Vec<u32>,
    pub random_rounds: usize,
}

#[derive(Debug, Clone, Deserialize)]
pub struct SetEntry {
    pub mode: Mode,
    pub p: String,
    pub g: String,
    pub q: Option<String>,
    /// Present on generated sets, with the seed that reproduces them.
    pub bits: Option<u32>,
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct Registry {
    pub primality: PrimalityNotes,
    pub sets: BTreeMap<String, SetEntry>,
}

impl Registry {
    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Registry(e.to_string()))
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.sets.keys().map(String::as_str)
    }

    pub fn get(&self, name: &str) -> Result<GroupParams> {
        let entry = self.sets.get(name).ok_or_else(|| Error::UnknownParamSet(name.to_string()))?;
        let dec = |s: &str| parse_decimal(s).map_err(|e| Error::Registry(format!("{name}: {e}")));
        let q = entry.q.as_deref().map(dec).transpose()?;
        GroupParams::new(dec(&entry.p)?, dec(&entry.g)?, entry.mode, q)
    }
}

pub fn registry() -> &'static Registry {
    static REGISTRY: OnceLock<Registry> = OnceLock::new();
    REGISTRY.get_or_init(|| Registry::parse(REGISTRY_TOML).expect("bundled params.toml parses"))
}

pub fn lookup(name: &str) -> Result<GroupParams> {
    registry().get(name)
}
