use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use bigdecimal::BigDecimal;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid decimal offset {0:?}")]
pub struct OffsetParseError(pub String);

/// An exact decimal offset into a timeline or signal-group dimension.
///
/// The source text is kept verbatim so that `382.520` is written back as
/// `382.520`; comparison is by numeric value, so `5200` equals `5200.0`.
#[derive(Debug, Clone)]
pub struct Offset {
    text: String,
    value: BigDecimal,
}

impl Offset {
    pub fn parse(text: &str) -> Result<Self, OffsetParseError> {
        text.parse()
    }

    /// The original decimal text.
    pub fn as_str(&self) -> &str {
        &self.text
    }

    pub fn value(&self) -> &BigDecimal {
        &self.value
    }
}

// Plain positional decimals only: optional sign, digits, optional fraction.
fn is_plain_decimal(s: &str) -> bool {
    let body = s.strip_prefix(['-', '+']).unwrap_or(s);
    let (int, frac) = match body.split_once('.') {
        Some((i, f)) => (i, Some(f)),
        None => (body, None),
    };
    let digits = |p: &str| p.bytes().all(|b| b.is_ascii_digit());
    match frac {
        None => !int.is_empty() && digits(int),
        Some(f) => (!int.is_empty() || !f.is_empty()) && digits(int) && digits(f),
    }
}

impl FromStr for Offset {
    type Err = OffsetParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if !is_plain_decimal(s) {
            return Err(OffsetParseError(s.to_owned()));
        }
        let value = BigDecimal::from_str(s).map_err(|_| OffsetParseError(s.to_owned()))?;
        Ok(Offset {
            text: s.to_owned(),
            value,
        })
    }
}

impl From<u64> for Offset {
    fn from(v: u64) -> Self {
        Offset {
            text: v.to_string(),
            value: BigDecimal::from(v),
        }
    }
}

impl From<i64> for Offset {
    fn from(v: i64) -> Self {
        Offset {
            text: v.to_string(),
            value: BigDecimal::from(v),
        }
    }
}

impl PartialEq for Offset {
    fn eq(&self, other: &Self) -> bool {
        self.value == other.value
    }
}

impl Eq for Offset {}

impl PartialOrd for Offset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Offset {
    fn cmp(&self, other: &Self) -> Ordering {
        self.value.cmp(&other.value)
    }
}

impl fmt::Display for Offset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text)
    }
}
