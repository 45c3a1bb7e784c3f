use std::collections::BTreeMap;

use super::{ends_with_occurrence, AscentSequence, Pattern};

/// Visits every ascent sequence of length `n` avoiding all of `avoid`, in
/// lexicographic order, passing the entries and their ascent count.
///
/// Sequences are grown one letter at a time; the next letter ranges over
/// `0..=asc(prefix) + 1`. A prefix that contains a forbidden pattern is
/// dropped, and since the prefix before the new letter already avoided
/// everything, only occurrences ending at the new letter need checking.
pub fn for_each_avoider<F>(n: usize, avoid: &[Pattern], mut visit: F)
where
    F: FnMut(&[u32], u32),
{
    if n == 0 {
        return;
    }
    let mut prefix = Vec::with_capacity(n);
    prefix.push(0);
    grow(&mut prefix, 0, n, avoid, &mut visit);
}

fn grow<F>(prefix: &mut Vec<u32>, asc: u32, n: usize, avoid: &[Pattern], visit: &mut F)
where
    F: FnMut(&[u32], u32),
{
    if prefix.len() == n {
        visit(prefix, asc);
        return;
    }
    let last = *prefix.last().unwrap();
    for letter in 0..=asc + 1 {
        prefix.push(letter);
        if !avoid.iter().any(|p| ends_with_occurrence(prefix, p)) {
            let next_asc = asc + u32::from(last < letter);
            grow(prefix, next_asc, n, avoid, visit);
        }
        prefix.pop();
    }
}

/// All ascent sequences of length `n` avoiding every pattern in `avoid`,
/// in lexicographic order.
pub fn enumerate(n: usize, avoid: &[Pattern]) -> Vec<AscentSequence> {
    let mut out = Vec::new();
    for_each_avoider(n, avoid, |s, _| {
        out.push(AscentSequence::from_trusted(s.to_vec()))
    });
    out
}

/// `m -> S_{n,m}(avoid)`: avoiders of length `n` counted by ascents.
pub fn count_by_ascents(n: usize, avoid: &[Pattern]) -> BTreeMap<u32, u64> {
    let mut counts = BTreeMap::new();
    for_each_avoider(n, avoid, |_, asc| *counts.entry(asc).or_insert(0) += 1);
    counts
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ascent::contains;

    fn pats(s: &str) -> Vec<Pattern> {
        Pattern::parse_list(s).unwrap()
    }

    #[test]
    fn five_avoiders_of_length_three() {
        let got: Vec<String> = enumerate(3, &pats("0011,0021"))
            .iter()
            .map(|s| s.to_string())
            .collect();
        assert_eq!(got, ["000", "001", "010", "011", "012"]);
    }

    #[test]
    fn trivial_cases() {
        assert_eq!(enumerate(1, &[]).len(), 1);
        assert_eq!(enumerate(1, &[])[0].entries(), &[0]);
        assert!(enumerate(0, &[]).is_empty());
        assert_eq!(
            count_by_ascents(1, &pats("0021,0121")),
            BTreeMap::from([(0, 1)])
        );
    }

    #[test]
    fn catalan_count_for_021() {
        assert_eq!(enumerate(4, &pats("021")).len(), 14);
    }

    #[test]
    fn ascent_refined_counts() {
        let got = count_by_ascents(4, &pats("0021,0121"));
        assert_eq!(got, BTreeMap::from([(0, 1), (1, 6), (2, 6), (3, 1)]));
        let total: u64 = count_by_ascents(3, &pats("0011,0021")).values().sum();
        assert_eq!(total, 5);
    }

    #[test]
    fn pruned_enumeration_matches_filtering() {
        let avoid = pats("0010,0021");
        let unrestricted = enumerate(7, &[]);
        let filtered: Vec<_> = unrestricted
            .into_iter()
            .filter(|s| avoid.iter().all(|p| !contains(s.entries(), p)))
            .collect();
        assert_eq!(filtered, enumerate(7, &avoid));
    }
}
