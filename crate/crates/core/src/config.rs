//! Enumeration caps and run configuration.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};

/// Environment variable read by [`Caps::from_env`].
pub const CAP_ENV: &str = "LIFTEDCODES_CAP";

/// Upper bounds on every exhaustive enumeration in the crate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Caps {
    /// Coset-level work: `Q^{n-k} * n * (Q-1)` neighbor visits.
    pub coset_steps: u64,
    /// Ambient vectors `Q^n` enumerated by vector-level checks.
    pub vectors: u64,
    /// Codewords `Q^k` enumerated explicitly.
    pub codewords: u64,
    pub field_order: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            coset_steps: 100_000_000,
            vectors: 1 << 20,
            codewords: 1 << 20,
            field_order: crate::gf::DEFAULT_FIELD_ORDER_CAP,
        }
    }
}

impl Caps {
    /// Defaults, overridden by `LIFTEDCODES_CAP` when it is set.
    pub fn from_env() -> Result<Caps> {
        match std::env::var(CAP_ENV) {
            Ok(v) if !v.trim().is_empty() => v.parse(),
            _ => Ok(Caps::default()),
        }
    }

    /// Applies `key=value` overrides on top of `self`.
    pub fn with_overrides(mut self, spec: &str) -> Result<Caps> {
        let spec = spec.trim();
        // A bare number caps the two vector-style enumerations at once.
        if let Ok(n) = spec.parse::<u64>() {
            self.vectors = n;
            self.codewords = n;
            return self.validated();
        }
        for item in spec.split(',').filter(|s| !s.trim().is_empty()) {
            let (key, value) = item
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("cap entry {item:?} is not key=value")))?;
            let value: u64 = value
                .trim()
                .replace('_', "")
                .parse()
                .map_err(|_| Error::Parse(format!("cap value {value:?} is not an integer")))?;
            match key.trim() {
                "coset" | "coset-steps" => self.coset_steps = value,
                "vector" | "vectors" => self.vectors = value,
                "codeword" | "codewords" => self.codewords = value,
                "field" => self.field_order = value,
                other => return Err(Error::Parse(format!("unknown cap {other:?}"))),
            }
        }
        self.validated()
    }

    fn validated(self) -> Result<Caps> {
        if self.coset_steps == 0
            || self.vectors == 0
            || self.codewords == 0
            || self.field_order == 0
        {
            return Err(Error::OutOfRange("caps must be positive".into()));
        }
        Ok(self)
    }
}

impl FromStr for Caps {
    type Err = Error;

    fn from_str(s: &str) -> Result<Caps> {
        Caps::default().with_overrides(s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
    Text,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            "text" => Ok(OutputFormat::Text),
            other => Err(Error::UnsupportedFormat(other.to_string())),
        }
    }
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OutputFormat::Json => "json",
            OutputFormat::Csv => "csv",
            OutputFormat::Text => "text",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RunConfig {
    pub q: u64,
    pub m: u32,
    pub r: u32,
    pub caps: Caps,
    pub format: OutputFormat,
    pub seed: u64,
}

impl RunConfig {
    pub fn new(q: u64, m: u32, r: u32) -> Result<RunConfig> {
        if crate::gf::prime_power(q).is_none() {
            return Err(Error::OutOfRange(format!("q = {q} is not a prime power")));
        }
        if m == 0 || r == 0 {
            return Err(Error::OutOfRange("m and r must be positive".into()));
        }
        Ok(RunConfig {
            q,
            m,
            r,
            caps: Caps::default(),
            format: OutputFormat::default(),
            seed: 0,
        })
    }
}
