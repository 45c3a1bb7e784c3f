use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

use super::{format_letters, parse_letters};

/// An order-isomorphism template, stored flattened so that its distinct
/// letters are exactly `0..=k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pattern(Vec<u32>);

impl Pattern {
    /// Builds the canonical form of `letters`, keeping relative order and
    /// equalities.
    pub fn new(letters: &[u32]) -> Self {
        let mut distinct: Vec<u32> = letters.to_vec();
        distinct.sort_unstable();
        distinct.dedup();
        let flat = letters
            .iter()
            .map(|v| distinct.binary_search(v).unwrap() as u32)
            .collect();
        Self(flat)
    }

    pub fn letters(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Parses a comma-separated list of patterns such as `"0011,0021"`.
    /// Each pattern is a digit string.
    pub fn parse_list(text: &str) -> Result<Vec<Pattern>> {
        text.split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(str::parse)
            .collect()
    }
}

impl FromStr for Pattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let letters = parse_letters(s).map_err(|_| Error::ParsePattern(s.to_string()))?;
        if letters.is_empty() || letters.iter().any(|&v| v < 0) {
            return Err(Error::ParsePattern(s.to_string()));
        }
        let letters: Vec<u32> = letters.into_iter().map(|v| v as u32).collect();
        Ok(Self::new(&letters))
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_letters(&self.0))
    }
}

/// Backtracking search for index sets witnessing `pat` in `text`.
///
/// `assigned` holds (pattern letter, text value) pairs that every new pick
/// must be order-consistent with. Pattern positions are placed left to
/// right at increasing indices of `text`.
struct Search<'a> {
    text: &'a [u32],
    pat: &'a [u32],
    assigned: Vec<(u32, u32)>,
    stop_at_first: bool,
    found: u64,
}

impl Search<'_> {
    fn consistent(&self, p: u32, x: u32) -> bool {
        self.assigned.iter().all(|&(q, y)| p.cmp(&q) == x.cmp(&y))
    }

    fn run(&mut self, k: usize, start: usize) -> bool {
        if k == self.pat.len() {
            self.found += 1;
            return self.stop_at_first;
        }
        let remaining = self.pat.len() - k;
        if self.text.len() < start + remaining {
            return false;
        }
        let p = self.pat[k];
        for i in start..=self.text.len() - remaining {
            let x = self.text[i];
            if !self.consistent(p, x) {
                continue;
            }
            self.assigned.push((p, x));
            let stop = self.run(k + 1, i + 1);
            self.assigned.pop();
            if stop {
                return true;
            }
        }
        false
    }
}

/// True iff `text` has a subsequence order-isomorphic to `pat`.
pub fn contains(text: &[u32], pat: &Pattern) -> bool {
    let mut s = Search {
        text,
        pat: &pat.0,
        assigned: Vec::with_capacity(pat.len()),
        stop_at_first: true,
        found: 0,
    };
    s.run(0, 0);
    s.found > 0
}

/// Number of index sets `f(1) < ... < f(m)` witnessing `pat` in `text`.
pub fn count_occurrences(text: &[u32], pat: &Pattern) -> u64 {
    let mut s = Search {
        text,
        pat: &pat.0,
        assigned: Vec::with_capacity(pat.len()),
        stop_at_first: false,
        found: 0,
    };
    s.run(0, 0);
    s.found
}

/// True iff some occurrence of `pat` in `text` uses the last entry of
/// `text` as its last letter.
pub fn ends_with_occurrence(text: &[u32], pat: &Pattern) -> bool {
    let (Some(&last), Some((&p_last, head))) = (text.last(), pat.0.split_last()) else {
        return false;
    };
    let mut s = Search {
        text: &text[..text.len() - 1],
        pat: head,
        assigned: vec![(p_last, last)],
        stop_at_first: true,
        found: 0,
    };
    s.run(0, 0);
    s.found > 0
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pat(s: &str) -> Pattern {
        s.parse().unwrap()
    }

    #[test]
    fn canonical_form() {
        assert_eq!(Pattern::new(&[3, 3, 7, 5]).letters(), &[0, 0, 2, 1]);
        assert_eq!(pat("0021").letters(), &[0, 0, 2, 1]);
        assert_eq!(Pattern::new(&[2, 4]).to_string(), "01");
        assert!("".parse::<Pattern>().is_err());
        assert!("0a".parse::<Pattern>().is_err());
    }

    #[test]
    fn occurrence_examples() {
        let text = [0, 1, 0, 0, 1, 3, 4, 1, 4, 0, 4, 6, 5, 4];
        assert!(contains(&text, &pat("210")));
        assert_eq!(count_occurrences(&text, &pat("210")), 3);
        assert!(!contains(&text, &pat("201")));
        assert!(contains(&[0], &pat("0")));
        assert_eq!(count_occurrences(&[0], &pat("0")), 1);
    }

    #[test]
    fn equal_letters_must_match_equal_values() {
        // 0011 needs two equal small letters then two equal larger ones.
        assert!(!contains(&[0, 1, 2, 3], &pat("0011")));
        assert!(contains(&[0, 1, 1, 2, 2], &pat("0011")));
        assert!(!contains(&[0, 0, 1, 2], &pat("0011")));
    }

    #[test]
    fn ending_occurrence() {
        assert!(ends_with_occurrence(&[0, 0, 2, 1], &pat("0021")));
        assert!(!ends_with_occurrence(&[0, 0, 2, 1, 2], &pat("0021")));
        assert!(contains(&[0, 0, 2, 1, 2], &pat("0021")));
    }

    #[test]
    fn count_matches_combination_brute_force() {
        let text = [0u32, 1, 0, 2, 1, 3, 0, 2];
        for p in ["01", "10", "00", "011", "021", "0102"] {
            let p = pat(p);
            let m = p.len();
            let n = text.len();
            let mut brute = 0;
            for mask in 0u32..(1 << n) {
                if mask.count_ones() as usize != m {
                    continue;
                }
                let sub: Vec<u32> = (0..n)
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| text[i])
                    .collect();
                if Pattern::new(&sub) == p {
                    brute += 1;
                }
            }
            assert_eq!(count_occurrences(&text, &p), brute, "pattern {p}");
        }
    }
}
