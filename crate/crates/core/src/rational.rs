//! Exact non-negative rationals for densities, thresholds and similarities.

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// A reduced non-negative fraction. Always rendered as `num/den`, so `1`
/// prints as `1/1`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(Ratio<u64>);

impl Rational {
    pub const ZERO: Rational = Rational(Ratio::new_raw(0, 1));
    pub const ONE: Rational = Rational(Ratio::new_raw(1, 1));

    /// Panics when `den` is zero.
    pub fn new(num: u64, den: u64) -> Self {
        assert!(den != 0, "zero denominator");
        Rational(Ratio::new(num, den))
    }

    pub fn numer(&self) -> u64 {
        *self.0.numer()
    }

    pub fn denom(&self) -> u64 {
        *self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    /// Mean of two rationals, computed exactly.
    pub fn mean(a: Rational, b: Rational) -> Rational {
        Rational((a.0 + b.0) / Ratio::from_integer(2))
    }

    /// `num/den (0.xxxx)`.
    pub fn display_with_float(&self) -> String {
        format!("{} ({:.4})", self, self.to_f64())
    }
}

impl Default for Rational {
    fn default() -> Self {
        Rational::ZERO
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numer(), self.denom())
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Accepts `n/d`, integers and plain decimals such as `0.01`; decimals are
/// converted exactly.
impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || Error::InvalidRational(s.to_string());
        let t = s.trim();
        if let Some((n, d)) = t.split_once('/') {
            let n: u64 = n.trim().parse().map_err(|_| bad())?;
            let d: u64 = d.trim().parse().map_err(|_| bad())?;
            if d == 0 {
                return Err(bad());
            }
            return Ok(Rational::new(n, d));
        }
        let (int, frac) = t.split_once('.').unwrap_or((t, ""));
        if (int.is_empty() && frac.is_empty())
            || !int.chars().all(|c| c.is_ascii_digit())
            || !frac.chars().all(|c| c.is_ascii_digit())
            || frac.len() > 18
        {
            return Err(bad());
        }
        let scale = 10u64.pow(frac.len() as u32);
        let int: u64 = if int.is_empty() {
            0
        } else {
            int.parse().map_err(|_| bad())?
        };
        let frac: u64 = if frac.is_empty() {
            0
        } else {
            frac.parse().map_err(|_| bad())?
        };
        let num = int
            .checked_mul(scale)
            .and_then(|v| v.checked_add(frac))
            .ok_or_else(bad)?;
        Ok(Rational::new(num, scale))
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders_reduced_fraction() {
        assert_eq!(Rational::new(22, 48).to_string(), "11/24");
        assert_eq!(Rational::ONE.to_string(), "1/1");
        assert_eq!(Rational::ZERO.to_string(), "0/1");
        assert_eq!(Rational::new(11, 24).display_with_float(), "11/24 (0.4583)");
    }

    #[test]
    fn parses_fractions_and_decimals() {
        assert_eq!("5/6".parse::<Rational>().unwrap(), Rational::new(5, 6));
        assert_eq!("0.01".parse::<Rational>().unwrap(), Rational::new(1, 100));
        assert_eq!("1".parse::<Rational>().unwrap(), Rational::ONE);
        assert_eq!(".5".parse::<Rational>().unwrap(), Rational::new(1, 2));
        for bad in ["", "1/0", "-1", "a", "1.2.3", "0x1", "."] {
            assert!(bad.parse::<Rational>().is_err(), "{bad}");
        }
    }

    #[test]
    fn orders_exactly() {
        assert!(Rational::new(5, 6) < Rational::ONE);
        assert!(Rational::new(7, 12) > Rational::new(5, 12));
        assert_eq!(
            Rational::mean(Rational::new(2, 3), Rational::new(1, 2)),
            Rational::new(7, 12)
        );
    }
}
