use crate::syntax::Level;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::str::FromStr;

/// A point of the three-valued scale.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TruthValue {
    False,
    Undefined,
    True,
}

impl TruthValue {
    pub const ALL: [TruthValue; 3] = [TruthValue::False, TruthValue::Undefined, TruthValue::True];

    pub fn from_bool(b: bool) -> Self {
        if b {
            TruthValue::True
        } else {
            TruthValue::False
        }
    }

    pub fn is_defined(self) -> bool {
        self != TruthValue::Undefined
    }

    pub fn is_true(self) -> bool {
        self == TruthValue::True
    }

    pub fn is_false(self) -> bool {
        self == TruthValue::False
    }

    pub fn level(self) -> Level {
        match self {
            TruthValue::False => Level::Zero,
            TruthValue::Undefined => Level::Half,
            TruthValue::True => Level::One,
        }
    }

    pub fn from_level(level: Level) -> Self {
        match level {
            Level::Zero => TruthValue::False,
            Level::Half => TruthValue::Undefined,
            Level::One => TruthValue::True,
        }
    }

    pub fn not(self) -> Self {
        match self {
            TruthValue::False => TruthValue::True,
            TruthValue::Undefined => TruthValue::Undefined,
            TruthValue::True => TruthValue::False,
        }
    }

    /// Undefined if either side is; otherwise the minimum. This is not the
    /// strong Kleene conjunction: `0 ∧ ½` is `½`.
    pub fn and(self, other: Self) -> Self {
        if !self.is_defined() || !other.is_defined() {
            TruthValue::Undefined
        } else {
            self.min(other)
        }
    }

    /// The nonstandard implication `↪`.
    pub fn nimp(self, other: Self) -> Self {
        match self {
            TruthValue::Undefined => TruthValue::True,
            TruthValue::True => other,
            TruthValue::False if other.is_defined() => TruthValue::True,
            TruthValue::False => TruthValue::Undefined,
        }
    }
}

impl fmt::Display for TruthValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.level().fmt(f)
    }
}

impl FromStr for TruthValue {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "0" => Ok(TruthValue::False),
            "1/2" => Ok(TruthValue::Undefined),
            "1" => Ok(TruthValue::True),
            other => Err(format!(
                "invalid truth value {other:?} (expected 0, 1/2 or 1)"
            )),
        }
    }
}

impl Serialize for TruthValue {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for TruthValue {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::TruthValue::{False as F, True as T, Undefined as U};
    use super::*;

    #[test]
    fn tables() {
        assert_eq!([F.not(), U.not(), T.not()], [T, U, F]);
        assert_eq!(F.and(U), U);
        assert_eq!(F.and(T), F);
        assert_eq!(T.and(T), T);
        assert_eq!(U.nimp(F), T);
        assert_eq!(T.nimp(U), U);
        assert_eq!(F.nimp(U), U);
        assert_eq!(F.nimp(F), T);
    }

    #[test]
    fn text_round_trip() {
        for v in TruthValue::ALL {
            assert_eq!(v.to_string().parse::<TruthValue>().unwrap(), v);
            assert_eq!(TruthValue::from_level(v.level()), v);
        }
        assert_eq!(serde_json::to_string(&U).unwrap(), "\"1/2\"");
        assert!("2".parse::<TruthValue>().is_err());
    }
}
