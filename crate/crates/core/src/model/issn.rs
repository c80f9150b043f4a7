use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IssnError {
    #[error("ISSN {0:?} does not match NNNN-NNNC")]
    Format(String),
    #[error("ISSN {0:?} has a wrong check digit")]
    CheckDigit(String),
}

/// A syntactically valid ISSN whose check digit verifies.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Issn(String);

impl Issn {
    pub fn parse(candidate: &str) -> Result<Self, IssnError> {
        let b = candidate.as_bytes();
        let shape_ok = b.len() == 9
            && b[..4].iter().all(u8::is_ascii_digit)
            && b[4] == b'-'
            && b[5..8].iter().all(u8::is_ascii_digit)
            && (b[8].is_ascii_digit() || b[8] == b'X');
        if !shape_ok {
            return Err(IssnError::Format(candidate.to_string()));
        }
        let digits = b[..4].iter().chain(&b[5..8]).map(|d| u32::from(d - b'0'));
        let expected = check_digit(digits);
        let actual = match b[8] {
            b'X' => 10,
            d => u32::from(d - b'0'),
        };
        if expected != actual {
            return Err(IssnError::CheckDigit(candidate.to_string()));
        }
        Ok(Self(candidate.to_string()))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// The eight characters without the hyphen, e.g. `03178471`.
    pub fn compact(&self) -> String {
        self.0.replace('-', "")
    }
}

/// Mod-11 check value over the first seven digits, weights 8 down to 2.
/// Returns 0..=10, where 10 is written as `X`.
fn check_digit(digits: impl Iterator<Item = u32>) -> u32 {
    let sum: u32 = digits.zip((2..=8).rev()).map(|(d, w)| d * w).sum();
    (11 - sum % 11) % 11
}

impl FromStr for Issn {
    type Err = IssnError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse(s)
    }
}

impl fmt::Display for Issn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// `true` iff `candidate` has the `NNNN-NNNC` shape and a valid check digit.
pub fn check_issn(candidate: &str) -> bool {
    Issn::parse(candidate).is_ok()
}
