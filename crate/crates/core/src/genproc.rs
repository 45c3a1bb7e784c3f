//! Active sites and the two recursive generators for (0010, 0021)- and
//! (0011, 0021)-avoiders.
//!
//! A sequence `pi` of length `l` is relabelled to the positive alphabet
//! (`pi + 1`) and a `0` is prepended. Its active sites are the gaps after
//! each letter of the trailing run `b1 >= b2 < b3 < ... < bt` of the
//! relabelled sequence, or every gap (including the one after the new `0`)
//! when `pi = 0 1 ... (l - 1)`. Choosing a subset of sites, the leftmost
//! chosen one receives a run of `0`s; each later one receives either a run
//! of its preceding letter (the U procedure) or another run of `0`s (the V
//! procedure). When the leftmost chosen site follows `b1`, a tail of fresh
//! large letters may be appended.

use std::collections::{BTreeMap, HashMap};

use crate::ascent::{ascents, enumerate, AscentSequence, Pattern};
use crate::error::{Error, Result};
use crate::report::CheckReport;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Procedure {
    /// Later sites repeat the preceding letter; generates (0010, 0021)-avoiders.
    U,
    /// Later sites receive zeros; generates (0011, 0021)-avoiders.
    V,
}

impl Procedure {
    pub fn class(self) -> [Pattern; 2] {
        match self {
            Procedure::U => [Pattern::new(&[0, 0, 1, 0]), Pattern::new(&[0, 0, 2, 1])],
            Procedure::V => [Pattern::new(&[0, 0, 1, 1]), Pattern::new(&[0, 0, 2, 1])],
        }
    }
}

fn is_staircase(seq: &[u32]) -> bool {
    seq.iter().enumerate().all(|(i, &x)| x as usize == i)
}

/// Index where the trailing run `b1 >= b2 < b3 < ...` starts, or `None` for
/// a strictly increasing sequence.
fn tail_start(seq: &[u32]) -> Option<usize> {
    (0..seq.len().saturating_sub(1))
        .rev()
        .find(|&i| seq[i] >= seq[i + 1])
}

/// Number of active sites.
pub fn ase(seq: &[u32]) -> Result<usize> {
    match tail_start(seq) {
        Some(i) => Ok(seq.len() - i),
        None if is_staircase(seq) => Ok(seq.len() + 1),
        None => Err(Error::NoDecomposition(crate::ascent::format_letters(seq))),
    }
}

/// A sequence together with its active sites, given as gap positions in
/// the relabelled sequence `0 (seq + 1)`: site `p` is the gap after its
/// `p`-th letter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SitedAvoider {
    pub seq: AscentSequence,
    pub sites: Vec<usize>,
    pub ase: usize,
}

impl SitedAvoider {
    pub fn new(seq: AscentSequence) -> Result<Self> {
        let sites = active_sites(seq.entries())?;
        Ok(Self {
            ase: sites.len(),
            sites,
            seq,
        })
    }
}

fn active_sites(seq: &[u32]) -> Result<Vec<usize>> {
    let l = seq.len();
    match tail_start(seq) {
        Some(i) => Ok((i + 1..=l).collect()),
        None if is_staircase(seq) => Ok((0..=l).collect()),
        None => Err(Error::NoDecomposition(crate::ascent::format_letters(seq))),
    }
}

/// One output of a generator with the choices that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generated {
    pub seq: Vec<u32>,
    pub source: Vec<u32>,
    /// `(site, run length)` for each chosen site, left to right.
    pub runs: Vec<(usize, usize)>,
    /// Block lengths `i_1, ..., i_d` of the appended tail.
    pub tail: Vec<usize>,
}

/// All length-`n` sequences obtained from `pi` by one step of `proc`.
pub fn expand(pi: &[u32], n: usize, proc: Procedure) -> Result<Vec<Generated>> {
    let l = pi.len();
    let sites = active_sites(pi)?;
    if n < l + 1 {
        return Ok(Vec::new());
    }
    let mut base = Vec::with_capacity(l + 1);
    base.push(0);
    base.extend(pi.iter().map(|&x| x + 1));
    let tail_site = tail_start(pi).map(|i| i + 1);
    let top = ascents(pi) + 2;

    let mut out = Vec::new();
    let mut runs = Vec::new();
    choose_runs(&sites, 0, n - l - 1, &mut runs, &mut |runs, left| {
        let tail_ok = left > 0 && tail_site.is_some() && runs.first().map(|r| r.0) == tail_site;
        if left == 0 {
            out.push(build(&base, pi, runs, &[], proc, top));
        } else if tail_ok {
            for tail in compositions(left) {
                out.push(build(&base, pi, runs, &tail, proc, top));
            }
        }
    });
    Ok(out)
}

/// Walks subsets of `sites[j..]` with positive run lengths using at most
/// `budget` letters, reporting each choice with its leftover budget.
fn choose_runs<F>(
    sites: &[usize],
    j: usize,
    budget: usize,
    runs: &mut Vec<(usize, usize)>,
    emit: &mut F,
) where
    F: FnMut(&[(usize, usize)], usize),
{
    if j == sites.len() {
        emit(runs, budget);
        return;
    }
    choose_runs(sites, j + 1, budget, runs, emit);
    for len in 1..=budget {
        runs.push((sites[j], len));
        choose_runs(sites, j + 1, budget - len, runs, emit);
        runs.pop();
    }
}

fn compositions(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in 1..=k {
        for mut rest in compositions(k - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn build(
    base: &[u32],
    pi: &[u32],
    runs: &[(usize, usize)],
    tail: &[usize],
    proc: Procedure,
    top: u32,
) -> Generated {
    let mut seq = Vec::new();
    let mut next = runs.iter().peekable();
    for (p, &letter) in base.iter().enumerate() {
        seq.push(letter);
        if let Some(&&(site, len)) = next.peek() {
            if site == p {
                let leftmost = seq.len() == p + 1;
                let fill = if leftmost || proc == Procedure::V {
                    0
                } else {
                    letter
                };
                seq.extend(std::iter::repeat_n(fill, len));
                next.next();
            }
        }
    }
    for (k, &len) in tail.iter().enumerate() {
        let letter = top + 1 + k as u32;
        match proc {
            Procedure::U => seq.extend(std::iter::repeat_n(letter, len)),
            Procedure::V => {
                seq.push(letter);
                seq.extend(std::iter::repeat_n(0, len - 1));
            }
        }
    }
    Generated {
        seq,
        source: pi.to_vec(),
        runs: runs.to_vec(),
        tail: tail.to_vec(),
    }
}

/// Every output of `proc` at lengths `1..=n_max`, built recursively from
/// the generator's own outputs at smaller lengths (starting from the empty
/// sequence), without deduplication.
pub fn generate(n_max: usize, proc: Procedure) -> Result<Vec<Vec<Generated>>> {
    let mut levels: Vec<Vec<Generated>> = vec![vec![Generated {
        seq: Vec::new(),
        source: Vec::new(),
        runs: Vec::new(),
        tail: Vec::new(),
    }]];
    for n in 1..=n_max {
        let mut level = Vec::new();
        for smaller in &levels {
            let mut seen = std::collections::HashSet::new();
            for g in smaller {
                // sources are taken once each even if a smaller level had repeats
                if seen.insert(&g.seq) {
                    level.extend(expand(&g.seq, n, proc)?);
                }
            }
        }
        levels.push(level);
    }
    Ok(levels)
}

/// Key for the refined comparison: source length and active sites, then
/// the output's active sites and ascents.
type RefinedKey = (usize, usize, usize, u32);

fn refined_counts(level: &[Generated]) -> Result<BTreeMap<RefinedKey, u64>> {
    let mut counts = BTreeMap::new();
    for g in level {
        let key = (
            g.source.len(),
            ase(&g.source)?,
            ase(&g.seq)?,
            ascents(&g.seq),
        );
        *counts.entry(key).or_insert(0) += 1;
    }
    Ok(counts)
}

/// `(n, r, m) -> (U count, V count)`
pub type SideBySide = BTreeMap<(usize, usize, u32), (u64, u64)>;

/// Side-by-side counts `(n, r, m) -> (U, V)` of generated sequences by
/// active sites `r` and ascents `m`.
pub fn side_by_side(n_max: usize) -> Result<SideBySide> {
    let u = generate(n_max, Procedure::U)?;
    let v = generate(n_max, Procedure::V)?;
    let mut table = BTreeMap::new();
    for n in 1..=n_max {
        for g in &u[n] {
            table
                .entry((n, ase(&g.seq)?, ascents(&g.seq)))
                .or_insert((0, 0))
                .0 += 1;
        }
        for g in &v[n] {
            table
                .entry((n, ase(&g.seq)?, ascents(&g.seq)))
                .or_insert((0, 0))
                .1 += 1;
        }
    }
    Ok(table)
}

pub fn side_by_side_csv(n_max: usize) -> Result<String> {
    let mut out = String::from("n,r,m,u_count,v_count\n");
    for ((n, r, m), (a, b)) in side_by_side(n_max)? {
        out.push_str(&format!("{n},{r},{m},{a},{b}\n"));
    }
    Ok(out)
}

fn check_exactness(report: &mut CheckReport, n: usize, level: &[Generated], proc: Procedure) {
    let class = proc.class();
    let oracle = enumerate(n, &class);
    let mut seen: HashMap<&[u32], &Generated> = HashMap::new();
    let mut problems = 0;
    for g in level {
        if let Some(first) = seen.insert(&g.seq, g) {
            problems += 1;
            if problems <= 5 {
                report.fail(format!(
                    "{proc:?} n={n}: {} generated twice ({first:?} and {g:?})",
                    crate::ascent::format_letters(&g.seq)
                ));
            }
        }
        let valid = AscentSequence::new(g.seq.clone()).map(|s| s.avoids_all(&class));
        if valid != Ok(true) {
            problems += 1;
            if problems <= 5 {
                report.fail(format!("{proc:?} n={n}: {g:?} is not in the class"));
            }
        }
    }
    let missing: Vec<_> = oracle
        .iter()
        .filter(|s| !seen.contains_key(s.entries()))
        .take(5)
        .map(|s| s.to_string())
        .collect();
    report.expect(missing.is_empty(), || {
        format!("{proc:?} n={n}: never generated {missing:?}")
    });
    report.expect(problems == 0 && seen.len() == oracle.len(), || {
        format!(
            "{proc:?} n={n}: {} distinct outputs, {} avoiders, {problems} problems",
            seen.len(),
            oracle.len()
        )
    });
}

/// Generation is exact and non-redundant for both procedures, and the
/// counts refined by source class, active sites and ascents agree between
/// them; also compares the distribution of active sites over both classes.
pub fn check_prop4(n_max: usize) -> CheckReport {
    let mut report = CheckReport::new("prop4").param("n_max", n_max);
    let (u, v) = match (generate(n_max, Procedure::U), generate(n_max, Procedure::V)) {
        (Ok(u), Ok(v)) => (u, v),
        (Err(e), _) | (_, Err(e)) => {
            report.fail(format!("generation failed: {e}"));
            return report;
        }
    };
    for n in 1..=n_max {
        check_exactness(&mut report, n, &u[n], Procedure::U);
        check_exactness(&mut report, n, &v[n], Procedure::V);
        match (refined_counts(&u[n]), refined_counts(&v[n])) {
            (Ok(cu), Ok(cv)) => {
                for key in cu.keys().chain(cv.keys()) {
                    let (a, b) = (
                        cu.get(key).copied().unwrap_or(0),
                        cv.get(key).copied().unwrap_or(0),
                    );
                    report.expect(a == b, || {
                        format!("n={n} (l, t, r, m) = {key:?}: U gives {a}, V gives {b}")
                    });
                }
            }
            (Err(e), _) | (_, Err(e)) => report.fail(format!("n={n}: {e}")),
        }
        let dist = |proc: Procedure| -> BTreeMap<usize, u64> {
            let mut d = BTreeMap::new();
            for s in enumerate(n, &proc.class()) {
                *d.entry(ase(s.entries()).unwrap_or(0)).or_insert(0) += 1;
            }
            d
        };
        let (du, dv) = (dist(Procedure::U), dist(Procedure::V));
        report.expect(du == dv, || {
            format!("n={n}: ase distributions {du:?} vs {dv:?}")
        });
        report.note(format!(
            "n={n}: {} sequences per class, ase distribution {du:?}",
            u[n].len()
        ));
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seqs(level: &[Generated]) -> Vec<String> {
        let mut out: Vec<String> = level
            .iter()
            .map(|g| crate::ascent::format_letters(&g.seq))
            .collect();
        out.sort();
        out
    }

    #[test]
    fn active_site_counts() {
        assert_eq!(ase(&[]).unwrap(), 1);
        assert_eq!(ase(&[0, 1, 2]).unwrap(), 4);
        assert_eq!(ase(&[0, 0]).unwrap(), 2);
        assert_eq!(ase(&[0, 1, 1, 2, 3]).unwrap(), 4);
        assert_eq!(ase(&[0, 1, 0]).unwrap(), 2);
        assert!(matches!(ase(&[0, 2]), Err(Error::NoDecomposition(_))));
        let s = SitedAvoider::new(AscentSequence::new(vec![0, 1, 1]).unwrap()).unwrap();
        assert_eq!((s.ase, s.sites), (2, vec![2, 3]));
    }

    #[test]
    fn smallest_expansions() {
        let u = generate(3, Procedure::U).unwrap();
        let v = generate(3, Procedure::V).unwrap();
        assert_eq!(seqs(&u[1]), vec!["0"]);
        assert_eq!(seqs(&u[2]), vec!["00", "01"]);
        assert_eq!(seqs(&v[2]), vec!["00", "01"]);
        assert_eq!(seqs(&u[3]).len(), 5);
    }

    #[test]
    fn empty_selection_prepends_zero() {
        let out = expand(&[0, 0], 3, Procedure::U).unwrap();
        let plain: Vec<_> = out.iter().filter(|g| g.runs.is_empty()).collect();
        assert_eq!(plain.len(), 1);
        assert_eq!(plain[0].seq, vec![0, 1, 1]);
    }

    #[test]
    fn procedures_differ_only_in_later_runs_and_tails() {
        // source 00 relabels to 0 1 1 with sites after each 1
        let u = expand(&[0, 0], 5, Procedure::U).unwrap();
        let v = expand(&[0, 0], 5, Procedure::V).unwrap();
        let find = |gs: &[Generated], runs: &[(usize, usize)], tail: &[usize]| {
            gs.iter()
                .find(|g| g.runs == runs && g.tail == tail)
                .unwrap()
                .seq
                .clone()
        };
        assert_eq!(find(&u, &[(1, 1), (2, 1)], &[]), vec![0, 1, 0, 1, 1]);
        assert_eq!(find(&v, &[(1, 1), (2, 1)], &[]), vec![0, 1, 0, 1, 0]);
        assert_eq!(find(&u, &[(1, 1)], &[1]), vec![0, 1, 0, 1, 3]);
    }

    #[test]
    fn exact_generation_small() {
        let report = check_prop4(6);
        assert!(report.pass, "{:?}", report.details);
    }

    #[test]
    fn csv_header() {
        let csv = side_by_side_csv(3).unwrap();
        assert!(csv.starts_with("n,r,m,u_count,v_count\n1,"));
    }
}
