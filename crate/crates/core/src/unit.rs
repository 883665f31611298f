use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Logarithm base used to report information quantities.
///
/// All internal computation runs in nats; conversion to the requested unit
/// happens once at the boundary (`value_in_base_b = value_in_nats / ln b`).
/// Canonical units: `bit` (base 2), `nat` (base e) and `mut` (base 13, for
/// 13-symbol alphabets).
#[derive(Clone, Copy, Debug)]
pub struct LogUnit {
    base: f64,
    ln_base: f64,
}

impl LogUnit {
    pub const BIT: LogUnit = LogUnit {
        base: 2.0,
        ln_base: std::f64::consts::LN_2,
    };
    pub const NAT: LogUnit = LogUnit {
        base: std::f64::consts::E,
        ln_base: 1.0,
    };
    pub const MUT: LogUnit = LogUnit {
        base: 13.0,
        ln_base: 2.5649493574615367,
    };

    /// A unit with an arbitrary base > 1.
    pub fn with_base(base: f64) -> Result<LogUnit> {
        if base <= 1.0 || !base.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "log base must be a finite real > 1, got {base}"
            )));
        }
        Ok(LogUnit {
            base,
            ln_base: base.ln(),
        })
    }

    pub fn base(&self) -> f64 {
        self.base
    }

    pub fn from_nats(&self, nats: f64) -> f64 {
        nats / self.ln_base
    }

    pub fn to_nats(&self, value: f64) -> f64 {
        value * self.ln_base
    }

    /// Canonical name: "bit", "nat", "mut" or "base:`<b>`".
    pub fn name(&self) -> String {
        if self.base == 2.0 {
            "bit".into()
        } else if self.base == std::f64::consts::E {
            "nat".into()
        } else if self.base == 13.0 {
            "mut".into()
        } else {
            format!("base:{}", self.base)
        }
    }

    /// Parses "bit" | "nat" | "mut" | "base:`<real>`".
    pub fn parse(s: &str) -> Result<LogUnit> {
        match s {
            "bit" | "bits" => Ok(LogUnit::BIT),
            "nat" | "nats" => Ok(LogUnit::NAT),
            "mut" | "muts" => Ok(LogUnit::MUT),
            other => {
                if let Some(b) = other.strip_prefix("base:") {
                    let base: f64 = b
                        .parse()
                        .map_err(|_| Error::Parse(format!("invalid log base {b:?}")))?;
                    LogUnit::with_base(base)
                } else {
                    Err(Error::Parse(format!(
                        "unknown unit {other:?}; expected bit, nat, mut or base:<real>"
                    )))
                }
            }
        }
    }
}

impl PartialEq for LogUnit {
    fn eq(&self, other: &Self) -> bool {
        self.base == other.base
    }
}

impl fmt::Display for LogUnit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

impl Serialize for LogUnit {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.name())
    }
}

impl<'de> Deserialize<'de> for LogUnit {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        LogUnit::parse(&s).map_err(D::Error::custom)
    }
}
