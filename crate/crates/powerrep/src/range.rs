use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::Error;

/// Inclusive integer range, written `A..B` on the command line and in
/// reports. A bare `N` is shorthand for `N..N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IntRange {
    pub lo: u64,
    pub hi: u64,
}

impl IntRange {
    pub fn new(lo: u64, hi: u64) -> Self {
        assert!(lo <= hi, "range lower bound {lo} exceeds upper bound {hi}");
        IntRange { lo, hi }
    }

    pub fn len(&self) -> u64 {
        self.hi - self.lo + 1
    }

    pub fn is_empty(&self) -> bool {
        false // construction rejects lo > hi
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> {
        self.lo..=self.hi
    }

    /// Rejects ranges whose lower bound is below `min`, for flags that only
    /// accept positive values.
    pub fn require_min(&self, min: u64, what: &str) -> Result<(), Error> {
        if self.lo < min {
            return Err(Error::InvalidRange {
                text: self.to_string(),
                reason: format!("{what} must be at least {min}"),
            });
        }
        Ok(())
    }
}

impl fmt::Display for IntRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.lo, self.hi)
    }
}

impl FromStr for IntRange {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self, Error> {
        let invalid = |reason: &str| Error::InvalidRange {
            text: text.to_string(),
            reason: reason.to_string(),
        };
        let (lo, hi) = match text.split_once("..") {
            Some((a, b)) => (
                a.trim().parse().map_err(|_| invalid("bounds must be non-negative integers"))?,
                b.trim().parse().map_err(|_| invalid("bounds must be non-negative integers"))?,
            ),
            None => {
                let v = text.trim().parse().map_err(|_| invalid("expected `A..B` or a single integer"))?;
                (v, v)
            }
        };
        if lo > hi {
            return Err(invalid("lower bound exceeds upper bound"));
        }
        Ok(IntRange { lo, hi })
    }
}

impl Serialize for IntRange {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for IntRange {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_pair_and_single() {
        assert_eq!("1..50".parse::<IntRange>().unwrap(), IntRange::new(1, 50));
        assert_eq!("7".parse::<IntRange>().unwrap(), IntRange::new(7, 7));
    }

    #[test]
    fn rejects_inverted_and_garbage() {
        assert!("9..3".parse::<IntRange>().is_err());
        assert!("a..b".parse::<IntRange>().is_err());
        assert!("".parse::<IntRange>().is_err());
        assert!("-4..2".parse::<IntRange>().is_err());
    }

    #[test]
    fn display_roundtrip() {
        let r = IntRange::new(3, 12);
        assert_eq!(r.to_string().parse::<IntRange>().unwrap(), r);
    }

    #[test]
    fn minimum_bound_check() {
        let r = IntRange::new(0, 3);
        assert!(r.require_min(1, "x").is_err());
        assert!(r.require_min(0, "L").is_ok());
    }
}
