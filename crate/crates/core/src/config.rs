//! Tiling configuration files (TOML).
//!
//! ```toml
//! name = "danzer"
//! lattice_type = "F"          # "P", "F" or "custom"
//! planes = "5-fold"           # optional, free text
//! group_order_bound = 1024    # optional
//! symmetry_generators = [ [[1, 0, 0, 0, 0, 0], ...], ... ]   # 6x6 integer matrices
//!
//! [[seed_tori]]
//! stabilizer = [[0, 1, 0, 0, 0, 0], ...]                      # four integer 6-vectors
//! offset = ["0", "0", "1/2", "0", "0", "0"]                   # exact rationals
//!
//! [verify]
//! primes = [2]
//! oracle_denominator_cap = 12
//! oracle_samples = 40
//! ```
//!
//! Integers may be written as TOML integers or as decimal strings; offsets
//! are strings `"p/q"` or `"n"`.

use std::fmt;
use std::path::Path;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::arrangement::Subtorus;
use crate::error::{Error, Result};
use crate::exactlin::{IntMatrix, Sublattice};

pub const DEFAULT_GROUP_ORDER_BOUND: usize = 1024;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum LatticeType {
    P,
    F,
    #[serde(rename = "custom")]
    Custom,
}

impl fmt::Display for LatticeType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LatticeType::P => "P",
            LatticeType::F => "F",
            LatticeType::Custom => "custom",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeedTorus {
    pub stabilizer: Vec<Vec<BigInt>>,
    pub offset: Vec<BigRational>,
}

impl SeedTorus {
    pub fn to_subtorus(&self) -> Result<Subtorus> {
        Subtorus::new(&Sublattice::from_vectors(6, &self.stabilizer)?, &self.offset)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyOptions {
    #[serde(default = "default_primes")]
    pub primes: Vec<u64>,
    #[serde(default = "default_cap")]
    pub oracle_denominator_cap: u64,
    #[serde(default = "default_samples")]
    pub oracle_samples: usize,
}

fn default_primes() -> Vec<u64> {
    vec![2]
}

fn default_cap() -> u64 {
    12
}

fn default_samples() -> usize {
    40
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            primes: default_primes(),
            oracle_denominator_cap: default_cap(),
            oracle_samples: default_samples(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TilingConfig {
    pub name: String,
    pub lattice_type: LatticeType,
    pub planes: Option<String>,
    pub description: Option<String>,
    pub symmetry_generators: Vec<IntMatrix>,
    pub group_order_bound: usize,
    pub seed_tori: Vec<SeedTorus>,
    pub verify: VerifyOptions,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
enum Entry {
    Int(i64),
    Text(String),
}

impl Entry {
    fn from_big(x: &BigInt) -> Self {
        match x.to_i64() {
            Some(v) => Entry::Int(v),
            None => Entry::Text(x.to_string()),
        }
    }

    fn integer(&self, field: &str) -> Result<BigInt> {
        match self {
            Entry::Int(v) => Ok(BigInt::from(*v)),
            Entry::Text(t) => t.trim().parse::<BigInt>().map_err(|_| {
                Error::Config(format!("{field}: `{t}` is not an integer"))
            }),
        }
    }

    fn rational(&self, field: &str) -> Result<BigRational> {
        match self {
            Entry::Int(v) => Ok(BigRational::from_integer(BigInt::from(*v))),
            Entry::Text(t) => parse_rational(t)
                .ok_or_else(|| Error::Config(format!("{field}: `{t}` is not a rational p/q"))),
        }
    }
}

pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        None => s.parse::<BigInt>().ok().map(BigRational::from_integer),
        Some((p, q)) => {
            let p = p.trim().parse::<BigInt>().ok()?;
            let q = q.trim().parse::<BigInt>().ok()?;
            (!q.is_zero()).then(|| BigRational::new(p, q))
        }
    }
}

fn rational_text(x: &BigRational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SeedFile {
    stabilizer: Vec<Vec<Entry>>,
    #[serde(default)]
    offset: Option<Vec<Entry>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    name: String,
    lattice_type: LatticeType,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    planes: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    description: Option<String>,
    #[serde(default)]
    group_order_bound: Option<usize>,
    symmetry_generators: Vec<Vec<Vec<Entry>>>,
    seed_tori: Vec<SeedFile>,
    #[serde(default)]
    verify: Option<VerifyOptions>,
}

impl TilingConfig {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        let raw: ConfigFile =
            toml::from_str(text).map_err(|e| Error::Config(e.to_string().trim_end().to_string()))?;
        Self::from_raw(raw)
    }

    fn from_raw(raw: ConfigFile) -> Result<Self> {
        let mut generators = Vec::new();
        for (g, m) in raw.symmetry_generators.iter().enumerate() {
            if m.len() != 6 || m.iter().any(|r| r.len() != 6) {
                return Err(Error::Config(format!(
                    "symmetry_generators[{g}]: expected a 6x6 matrix"
                )));
            }
            let rows = m
                .iter()
                .enumerate()
                .map(|(i, r)| {
                    r.iter()
                        .enumerate()
                        .map(|(j, x)| x.integer(&format!("symmetry_generators[{g}][{i}][{j}]")))
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            generators.push(IntMatrix::from_rows(rows, 6)?);
        }

        if raw.seed_tori.is_empty() {
            return Err(Error::EmptySeed);
        }
        let mut seeds = Vec::new();
        for (s, seed) in raw.seed_tori.iter().enumerate() {
            if seed.stabilizer.len() != 4 || seed.stabilizer.iter().any(|v| v.len() != 6) {
                return Err(Error::Config(format!(
                    "seed_tori[{s}].stabilizer: expected four 6-vectors"
                )));
            }
            let stabilizer = seed
                .stabilizer
                .iter()
                .enumerate()
                .map(|(i, v)| {
                    v.iter()
                        .enumerate()
                        .map(|(j, x)| x.integer(&format!("seed_tori[{s}].stabilizer[{i}][{j}]")))
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            let rank = IntMatrix::from_columns(&stabilizer, 6)?.rank();
            if rank != 4 {
                return Err(Error::RankDeficientSeed { index: s, rank });
            }
            let offset = match &seed.offset {
                None => vec![BigRational::zero(); 6],
                Some(o) if o.len() == 6 => o
                    .iter()
                    .enumerate()
                    .map(|(j, x)| x.rational(&format!("seed_tori[{s}].offset[{j}]")))
                    .collect::<Result<Vec<_>>>()?,
                Some(o) => {
                    return Err(Error::Config(format!(
                        "seed_tori[{s}].offset: expected 6 entries, found {}",
                        o.len()
                    )))
                }
            };
            seeds.push(SeedTorus { stabilizer, offset });
        }

        Ok(TilingConfig {
            name: raw.name,
            lattice_type: raw.lattice_type,
            planes: raw.planes,
            description: raw.description,
            symmetry_generators: generators,
            group_order_bound: raw.group_order_bound.unwrap_or(DEFAULT_GROUP_ORDER_BOUND),
            seed_tori: seeds,
            verify: raw.verify.unwrap_or_default(),
        })
    }

    fn to_raw(&self) -> ConfigFile {
        ConfigFile {
            name: self.name.clone(),
            lattice_type: self.lattice_type,
            planes: self.planes.clone(),
            description: self.description.clone(),
            group_order_bound: Some(self.group_order_bound),
            symmetry_generators: self
                .symmetry_generators
                .iter()
                .map(|m| {
                    (0..m.rows())
                        .map(|i| m.row(i).iter().map(Entry::from_big).collect())
                        .collect()
                })
                .collect(),
            seed_tori: self
                .seed_tori
                .iter()
                .map(|s| SeedFile {
                    stabilizer: s
                        .stabilizer
                        .iter()
                        .map(|v| v.iter().map(Entry::from_big).collect())
                        .collect(),
                    offset: Some(
                        s.offset
                            .iter()
                            .map(|x| Entry::Text(rational_text(x)))
                            .collect(),
                    ),
                })
                .collect(),
            verify: Some(self.verify.clone()),
        }
    }

    pub fn to_toml_string(&self) -> String {
        toml::to_string(&self.to_raw()).expect("config serializes")
    }

    /// SHA-256 of the canonical serialization, hex encoded.
    pub fn hash(&self) -> String {
        hex::encode(Sha256::digest(self.to_toml_string().as_bytes()))
    }

    pub fn seeds(&self) -> Result<Vec<Subtorus>> {
        self.seed_tori.iter().map(SeedTorus::to_subtorus).collect()
    }
}

pub fn load_config(path: &Path) -> Result<TilingConfig> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
    TilingConfig::from_toml_str(&text)
        .map_err(|e| match e {
            Error::Config(msg) => Error::Config(format!("{}: {msg}", path.display())),
            other => other,
        })
}
