//! Exact membership degrees.

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A membership degree: an exact rational in `[0, 1]`, always in lowest terms.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Degree(Ratio<i64>);

impl Degree {
    pub const ZERO: Degree = Degree(Ratio::new_raw(0, 1));
    pub const ONE: Degree = Degree(Ratio::new_raw(1, 1));

    pub fn new(numer: i64, denom: i64) -> Result<Self> {
        if denom == 0 {
            return Err(Error::BadRational {
                text: format!("{numer}/{denom}"),
                reason: "zero denominator".into(),
            });
        }
        Self::from_ratio(Ratio::new(numer, denom))
    }

    pub fn from_ratio(value: Ratio<i64>) -> Result<Self> {
        if value < Ratio::zero() || value > Ratio::one() {
            return Err(Error::DegreeOutOfRange {
                value: format_ratio(&value),
            });
        }
        Ok(Degree(value))
    }

    pub fn ratio(&self) -> Ratio<i64> {
        self.0
    }

    pub fn numer(&self) -> i64 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i64 {
        *self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// `1 - self`. Never leaves `[0, 1]` and never grows the denominator.
    pub fn complement(&self) -> Self {
        Degree(Ratio::new_raw(self.denom() - self.numer(), self.denom()))
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_ratio(&self.0))
    }
}

impl fmt::Debug for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Degree {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        Degree::from_ratio(parse_rational(text)?)
    }
}

impl Serialize for Degree {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Degree {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

/// Renders `p/q` in lowest terms, or `p` when `q == 1`.
pub fn format_ratio(value: &Ratio<i64>) -> String {
    let reduced = value.reduced();
    if *reduced.denom() == 1 {
        reduced.numer().to_string()
    } else {
        format!("{}/{}", reduced.numer(), reduced.denom())
    }
}

/// Parses the rational literal grammar `p` or `p/q`: decimal integer `p`
/// (optionally negative), positive integer `q`. Decimal floats are rejected.
pub fn parse_rational(text: &str) -> Result<Ratio<i64>> {
    let bad = |reason: &str| Error::BadRational {
        text: text.to_string(),
        reason: reason.to_string(),
    };
    if let Some(hint) = decimal_hint(text) {
        return Err(bad(&format!("floats forbidden; write {hint}")));
    }
    let (num_text, den_text) = match text.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (text, None),
    };
    let numer = parse_integer(num_text, true).ok_or_else(|| bad("numerator is not a decimal integer"))?;
    let denom = match den_text {
        Some(d) => parse_integer(d, false).ok_or_else(|| bad("denominator is not a positive decimal integer"))?,
        None => 1,
    };
    if denom == 0 {
        return Err(bad("zero denominator"));
    }
    Ok(Ratio::new(numer, denom))
}

fn parse_integer(text: &str, allow_sign: bool) -> Option<i64> {
    let digits = match text.strip_prefix('-') {
        Some(rest) if allow_sign => rest,
        Some(_) => return None,
        None => text,
    };
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    text.parse().ok()
}

/// If `text` looks like a decimal float, returns the exact fraction it denotes
/// (or a generic `p/q` hint) for use in error messages.
pub fn decimal_hint(text: &str) -> Option<String> {
    let numeric = text.bytes().any(|b| b.is_ascii_digit())
        && text.bytes().all(|b| b.is_ascii_digit() || b"+-.eE".contains(&b));
    let looks_float = numeric && (text.contains('.') || text.contains(['e', 'E']));
    if !looks_float {
        return None;
    }
    let (sign, body) = match text.strip_prefix('-') {
        Some(rest) => ("-", rest),
        None => ("", text),
    };
    let exact = body.split_once('.').and_then(|(int, frac)| {
        let all_digits = |s: &str| s.bytes().all(|b| b.is_ascii_digit());
        if !all_digits(int) || !all_digits(frac) || (int.is_empty() && frac.is_empty()) || frac.len() > 18 {
            return None;
        }
        let scale = 10i64.checked_pow(frac.len() as u32)?;
        let int_part: i64 = if int.is_empty() { 0 } else { int.parse().ok()? };
        let frac_part: i64 = if frac.is_empty() { 0 } else { frac.parse().ok()? };
        let numer = int_part.checked_mul(scale)?.checked_add(frac_part)?;
        Some(format_ratio(&Ratio::new(numer, scale)))
    });
    Some(match exact {
        Some(r) => format!("{sign}{r}"),
        None => "p/q".to_string(),
    })
}
