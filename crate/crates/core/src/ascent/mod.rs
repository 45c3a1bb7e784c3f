//! Ascent sequences: validation, ascent counting, pattern containment and
//! exhaustive enumeration of avoider classes.
//!
//! A sequence `x_0 x_1 ... x_{n-1}` of non-negative integers is an ascent
//! sequence when `x_0 = 0` and every later entry is at most one more than
//! the number of ascents strictly before it. Entries are stored 0-based.

mod enumerate;
mod pattern;
mod rho;
mod stats;

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

pub use enumerate::{count_by_ascents, enumerate, for_each_avoider};
pub use pattern::{contains, count_occurrences, ends_with_occurrence, Pattern};
pub use rho::rho_prime;
pub use stats::{avoider_stats, AvoiderStatRecord};

/// Number of positions `j` with `seq[j] < seq[j + 1]`.
pub fn ascents(seq: &[u32]) -> u32 {
    seq.windows(2).filter(|w| w[0] < w[1]).count() as u32
}

/// A validated ascent sequence.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AscentSequence(Vec<u32>);

impl AscentSequence {
    /// Checks a raw integer sequence against the ascent-sequence invariants,
    /// reporting the first violation.
    pub fn validate(entries: &[i64]) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::EmptySequence);
        }
        if let Some((index, &value)) = entries.iter().enumerate().find(|(_, &v)| v < 0) {
            return Err(Error::NegativeEntry { index, value });
        }
        if entries[0] != 0 {
            return Err(Error::NonzeroStart { value: entries[0] });
        }
        let mut asc = 0u32;
        for i in 1..entries.len() {
            let bound = asc + 1;
            if entries[i] > bound as i64 {
                return Err(Error::AscentBound {
                    index: i,
                    value: entries[i],
                    bound,
                });
            }
            if entries[i - 1] < entries[i] {
                asc += 1;
            }
        }
        Ok(Self(entries.iter().map(|&v| v as u32).collect()))
    }

    pub fn new(entries: Vec<u32>) -> Result<Self> {
        let raw: Vec<i64> = entries.iter().map(|&v| v as i64).collect();
        Self::validate(&raw)?;
        Ok(Self(entries))
    }

    /// Wraps entries already known to satisfy the invariants.
    pub(crate) fn from_trusted(entries: Vec<u32>) -> Self {
        debug_assert!(is_ascent_sequence(&entries));
        Self(entries)
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<u32> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn asc(&self) -> u32 {
        ascents(&self.0)
    }

    pub fn max_letter(&self) -> u32 {
        self.0.iter().copied().max().unwrap_or(0)
    }

    pub fn last_letter(&self) -> u32 {
        self.0.last().copied().unwrap_or(0)
    }

    pub fn contains(&self, pat: &Pattern) -> bool {
        contains(&self.0, pat)
    }

    pub fn avoids_all(&self, pats: &[Pattern]) -> bool {
        pats.iter().all(|p| !contains(&self.0, p))
    }
}

/// True when `seq` is a nonempty ascent sequence.
pub fn is_ascent_sequence(seq: &[u32]) -> bool {
    if seq.first() != Some(&0) {
        return false;
    }
    let mut asc = 0;
    for i in 1..seq.len() {
        if seq[i] > asc + 1 {
            return false;
        }
        if seq[i - 1] < seq[i] {
            asc += 1;
        }
    }
    true
}

/// Parses either a comma-free digit string (`"0101303543"`) or a
/// comma-separated integer list (`"0,1,10"`).
pub fn parse_letters(text: &str) -> Result<Vec<i64>> {
    let text = text.trim();
    let bad = || Error::ParseSequence(text.to_string());
    if text.is_empty() {
        return Ok(Vec::new());
    }
    if text.contains(',') {
        text.split(',')
            .map(|t| t.trim().parse::<i64>().map_err(|_| bad()))
            .collect()
    } else {
        text.chars()
            .map(|c| c.to_digit(10).map(|d| d as i64).ok_or_else(bad))
            .collect()
    }
}

/// Renders letters as a digit string when every letter is at most 9, and as
/// a comma-separated list otherwise.
pub fn format_letters(seq: &[u32]) -> String {
    if seq.iter().all(|&v| v <= 9) {
        seq.iter().map(|v| char::from(b'0' + *v as u8)).collect()
    } else {
        seq.iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

impl fmt::Display for AscentSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_letters(&self.0))
    }
}

impl FromStr for AscentSequence {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::validate(&parse_letters(s)?)
    }
}

impl Serialize for AscentSequence {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(s: &str) -> AscentSequence {
        s.parse().unwrap()
    }

    #[test]
    fn asc_examples() {
        assert_eq!(seq("0101303543").asc(), 5);
        assert_eq!(seq("000").asc(), 0);
        assert_eq!(seq("01").asc(), 1);
    }

    #[test]
    fn asc_matches_pairwise_count() {
        let s = [0u32, 1, 0, 1, 3, 0, 3, 5, 4, 3];
        let mut pairwise = 0;
        for i in 0..s.len() {
            for j in i + 1..s.len() {
                if j == i + 1 && s[i] < s[j] {
                    pairwise += 1;
                }
            }
        }
        assert_eq!(ascents(&s), pairwise);
    }

    #[test]
    fn validate_accepts_and_rejects() {
        assert!(AscentSequence::validate(&[0, 1, 0, 1, 3, 0, 3, 5, 4, 3]).is_ok());
        assert_eq!(
            AscentSequence::validate(&[0, 0, 1, 1, 0, 2, 4, 2]),
            Err(Error::AscentBound {
                index: 6,
                value: 4,
                bound: 3
            })
        );
        assert_eq!(seq("0").entries(), &[0]);
    }

    #[test]
    fn validate_error_kinds() {
        assert_eq!(AscentSequence::validate(&[]), Err(Error::EmptySequence));
        assert_eq!(
            AscentSequence::validate(&[0, -1]),
            Err(Error::NegativeEntry {
                index: 1,
                value: -1
            })
        );
        assert_eq!(
            AscentSequence::validate(&[1, 0]),
            Err(Error::NonzeroStart { value: 1 })
        );
    }

    #[test]
    fn serialization_forms() {
        assert_eq!(seq("0101303543").to_string(), "0101303543");
        let long: Vec<u32> = (0..12).collect();
        let s = AscentSequence::new(long.clone()).unwrap();
        assert_eq!(s.to_string(), "0,1,2,3,4,5,6,7,8,9,10,11");
        assert_eq!(s.to_string().parse::<AscentSequence>().unwrap(), s);
        assert_eq!(seq("0,1,0"), seq("010"));
        assert!("01x".parse::<AscentSequence>().is_err());
    }
}
