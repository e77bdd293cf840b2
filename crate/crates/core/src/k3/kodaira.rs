use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Singular fiber types that can occur on an elliptic fibration whose fiber
/// has degree at most 4 against an ample class (with some slack for `I_n`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum KodairaType {
    /// A cycle of `n` rational curves; `I_1` is a nodal cubic.
    I(u8),
    /// Cuspidal cubic.
    II,
    /// Two rational curves tangent at a point.
    III,
    /// Three rational curves through a point.
    IV,
}

impl KodairaType {
    /// Largest `n` accepted for `I_n`.
    pub const MAX_CYCLE: u8 = 9;

    /// Length at the fiber of the non-smooth locus of the fibration.
    pub fn s_degree(self) -> u32 {
        match self {
            KodairaType::I(n) => n as u32,
            KodairaType::II => 2,
            KodairaType::III => 3,
            KodairaType::IV => 4,
        }
    }

    /// Number of irreducible components of the fiber.
    pub fn component_count(self) -> u32 {
        match self {
            KodairaType::I(n) => n as u32,
            KodairaType::II => 1,
            KodairaType::III => 2,
            KodairaType::IV => 3,
        }
    }

    /// Each component of a fiber has positive degree against an ample class,
    /// so a fiber of degree `r` has at most `r` components.
    pub fn admissible_for_degree(self, r: i64) -> bool {
        self.component_count() as i64 <= r
    }
}

impl fmt::Display for KodairaType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KodairaType::I(n) => write!(f, "I{n}"),
            KodairaType::II => write!(f, "II"),
            KodairaType::III => write!(f, "III"),
            KodairaType::IV => write!(f, "IV"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseKodairaError(pub String);

impl fmt::Display for ParseKodairaError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "unknown fiber type {:?} (expected I1..I{}, II, III or IV)",
            self.0,
            KodairaType::MAX_CYCLE
        )
    }
}

impl std::error::Error for ParseKodairaError {}

impl FromStr for KodairaType {
    type Err = ParseKodairaError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        match t {
            "II" => return Ok(KodairaType::II),
            "III" => return Ok(KodairaType::III),
            "IV" => return Ok(KodairaType::IV),
            _ => {}
        }
        let digits = t
            .strip_prefix("I_")
            .or_else(|| t.strip_prefix('I'))
            .ok_or_else(|| ParseKodairaError(s.to_string()))?;
        match digits.parse::<u8>() {
            Ok(n) if (1..=Self::MAX_CYCLE).contains(&n) && !digits.starts_with('0') => {
                Ok(KodairaType::I(n))
            }
            _ => Err(ParseKodairaError(s.to_string())),
        }
    }
}

impl Serialize for KodairaType {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for KodairaType {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
