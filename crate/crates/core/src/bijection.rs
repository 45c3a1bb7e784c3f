//! The bijection `φ` from (0011, 0021)-avoiding ascent sequences onto Dyck
//! paths of the same size, its inverse, and the checks comparing avoider
//! statistics with path statistics through it.
//!
//! `φ` sends the number of 0s to the number of components. Avoiders of
//! length at least 2 fall into four cases:
//!
//! 1. all 0s: the sawtooth `(UD)^n`;
//! 2. a single 0: delete it, decrement everything, and elevate the image;
//! 3. several 0s but no 1 after the second 0: delete the first 0, decrement
//!    the nonzero entries, and regroup the image as `U P D Q` where `Q` is the
//!    last `k - 1` components (`k` = number of 0s);
//! 4. a 1 after the second 0: delete the 0-run before that 1 together with
//!    the 1, lower the later nonzero entries minimally, and rebuild the image
//!    as `(UD)^{j+1} U U P D Q D R`.

use std::collections::{BTreeMap, HashSet};

use serde::Serialize;

use crate::ascent::{
    ascents, avoider_stats, ends_with_occurrence, enumerate, format_letters, AscentSequence,
    AvoiderStatRecord, Pattern,
};
use crate::counting::catalan;
use crate::dyck::{all_paths, dyck_stats, DyckPath, DyckStatRecord, Step};
use crate::error::{Error, Result};
use crate::report::CheckReport;

/// The two patterns defining the domain of `φ`.
pub fn avoider_class() -> [Pattern; 2] {
    [Pattern::new(&[0, 0, 1, 1]), Pattern::new(&[0, 0, 2, 1])]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "tag")]
pub enum PhiCase {
    AllZeros,
    SingleZero,
    /// `k` is the total number of 0s.
    NoOneAfterSecondZero {
        k: u32,
    },
    /// `j` is the length of the 0-run strictly between the second 0 and
    /// the single 1 after it.
    OneAfterSecondZero {
        j: u32,
    },
}

impl PhiCase {
    pub fn number(&self) -> u8 {
        match self {
            PhiCase::AllZeros => 1,
            PhiCase::SingleZero => 2,
            PhiCase::NoOneAfterSecondZero { .. } => 3,
            PhiCase::OneAfterSecondZero { .. } => 4,
        }
    }
}

fn check_avoider(u: &AscentSequence) -> Result<()> {
    if u.avoids_all(&avoider_class()) {
        Ok(())
    } else {
        Err(Error::NotInClass {
            seq: u.to_string(),
            class: "0011,0021".into(),
        })
    }
}

fn second_zero(u: &[u32]) -> Option<usize> {
    u.iter()
        .enumerate()
        .filter(|(_, &v)| v == 0)
        .nth(1)
        .map(|(i, _)| i)
}

fn classify_raw(u: &[u32]) -> PhiCase {
    let zeros = u.iter().filter(|&&v| v == 0).count();
    if zeros == u.len() {
        return PhiCase::AllZeros;
    }
    if zeros == 1 {
        return PhiCase::SingleZero;
    }
    let z = second_zero(u).unwrap();
    match u[z + 1..].iter().position(|&v| v == 1) {
        Some(p) => PhiCase::OneAfterSecondZero { j: p as u32 },
        None => PhiCase::NoOneAfterSecondZero { k: zeros as u32 },
    }
}

/// Which of the four cases `u` falls in. The single sequence `0` counts as
/// all 0s.
pub fn classify(u: &AscentSequence) -> Result<PhiCase> {
    check_avoider(u)?;
    Ok(classify_raw(u.entries()))
}

/// True when `prefix + [y]` is still an ascent sequence avoiding 0011 and
/// 0021, given that `prefix` is one.
fn extends_validly(prefix: &mut Vec<u32>, y: u32, class: &[Pattern; 2]) -> bool {
    if y > ascents(prefix) + 1 {
        return false;
    }
    prefix.push(y);
    let ok = !class.iter().any(|p| ends_with_occurrence(prefix, p));
    prefix.pop();
    ok
}

/// Case-4 reduction. Returns `w` and `j`.
fn case4_reduce_raw(u: &[u32]) -> Result<(Vec<u32>, usize)> {
    let class = avoider_class();
    let fault = |reason: &str| Error::ReductionFault {
        seq: format_letters(u),
        reason: reason.to_string(),
    };
    let z = second_zero(u).ok_or_else(|| fault("no second 0"))?;
    let one = z
        + 1
        + u[z + 1..]
            .iter()
            .position(|&v| v == 1)
            .ok_or_else(|| fault("no 1 after the second 0"))?;
    let j = one - z - 1;

    let mut w = u[..=z].to_vec();
    for &v in &u[one + 1..] {
        if v == 0 {
            w.push(0);
            continue;
        }
        let lowered = (1..v)
            .rev()
            .find(|&y| extends_validly(&mut w, y, &class))
            .ok_or_else(|| fault("no admissible lowered value"))?;
        w.push(lowered);
    }
    Ok((w, j))
}

/// Deletes the 0-run between the second 0 and the 1 after it, deletes that
/// 1, then lowers each later nonzero entry, left to right, to the largest
/// smaller positive value that keeps the sequence a (0011, 0021)-avoiding
/// ascent sequence. Returns the reduced avoider and the length of the
/// deleted 0-run.
pub fn case4_reduce(u: &AscentSequence) -> Result<(AscentSequence, usize)> {
    check_avoider(u)?;
    let (w, j) = case4_reduce_raw(u.entries())?;
    Ok((AscentSequence::from_trusted(w), j))
}

fn phi_raw(u: &[u32]) -> Result<Vec<Step>> {
    if u.len() == 1 {
        return Ok(vec![Step::U, Step::D]);
    }
    match classify_raw(u) {
        PhiCase::AllZeros => Ok(DyckPath::sawtooth(u.len()).steps().to_vec()),
        PhiCase::SingleZero => {
            let w: Vec<u32> = u[1..].iter().map(|v| v - 1).collect();
            let mut steps = vec![Step::U];
            steps.extend(phi_raw(&w)?);
            steps.push(Step::D);
            Ok(steps)
        }
        PhiCase::NoOneAfterSecondZero { k } => {
            let w: Vec<u32> = u[1..].iter().map(|&v| v.saturating_sub(1)).collect();
            let image = DyckPath::from_trusted(phi_raw(&w)?);
            let comps = image.components();
            let keep = comps.len() - (k as usize - 1);
            let mut steps = vec![Step::U];
            for c in &comps[..keep] {
                steps.extend_from_slice(c.steps());
            }
            steps.push(Step::D);
            for c in &comps[keep..] {
                steps.extend_from_slice(c.steps());
            }
            Ok(steps)
        }
        PhiCase::OneAfterSecondZero { j } => {
            let (w, _) = case4_reduce_raw(u)?;
            let image = DyckPath::from_trusted(phi_raw(&w)?);
            let comps = image.components();
            // image = (U P D) (U Q D) R
            let first = comps[0].steps();
            let second = comps[1].steps();
            let mut steps = DyckPath::sawtooth(j as usize + 1).steps().to_vec();
            steps.push(Step::U);
            steps.extend_from_slice(first);
            steps.extend_from_slice(&second[1..second.len() - 1]);
            steps.push(Step::D);
            for c in &comps[2..] {
                steps.extend_from_slice(c.steps());
            }
            Ok(steps)
        }
    }
}

pub fn phi(u: &AscentSequence) -> Result<DyckPath> {
    check_avoider(u)?;
    Ok(DyckPath::from_trusted(phi_raw(u.entries())?))
}

fn concat_steps<'a>(parts: impl IntoIterator<Item = &'a [Step]>) -> Vec<Step> {
    parts.into_iter().flat_map(|p| p.iter().copied()).collect()
}

/// Undoes the case-4 reduction: re-inserts `0^j 1` after the second 0 of
/// `w` and raises each later nonzero entry to the smallest value that the
/// minimal lowering would send back to it while keeping the result an
/// avoider.
fn case4_expand(w: &[u32], j: usize) -> Result<Vec<u32>> {
    let class = avoider_class();
    let fault = |reason: &str| Error::ReductionFault {
        seq: format_letters(w),
        reason: reason.to_string(),
    };
    let z = second_zero(w).ok_or_else(|| fault("no second 0"))?;
    let mut u = w[..=z].to_vec();
    u.extend(std::iter::repeat_n(0, j));
    u.push(1);
    let mut w_prefix = w[..=z].to_vec();
    for &e in &w[z + 1..] {
        if e == 0 {
            u.push(0);
            w_prefix.push(0);
            continue;
        }
        let bound = ascents(&u) + 1;
        let mut raised = None;
        for v in e + 1..=bound {
            if extends_validly(&mut u, v, &class) {
                raised = Some(v);
                break;
            }
            // a value admissible in the reduced sequence would have been
            // chosen by the lowering instead of e
            if extends_validly(&mut w_prefix, v, &class) {
                break;
            }
        }
        u.push(raised.ok_or_else(|| fault("no admissible raised value"))?);
        w_prefix.push(e);
    }
    Ok(u)
}

fn inverse_raw(p: &DyckPath) -> Result<Vec<u32>> {
    let n = p.size();
    if n == 0 {
        return Err(Error::EmptyPath);
    }
    if *p == DyckPath::sawtooth(n) {
        return Ok(vec![0; n]);
    }
    let comps = p.components();
    let s = p.steps();
    if comps.len() == 1 {
        let inner = DyckPath::from_trusted(s[1..s.len() - 1].to_vec());
        let w = inverse_raw(&inner)?;
        return Ok(std::iter::once(0)
            .chain(w.into_iter().map(|v| v + 1))
            .collect());
    }
    if p.starts_with(&[Step::U, Step::U]) {
        // p = U P D Q with Q the last k - 1 components
        let k = comps.len();
        let first = comps[0].steps();
        let inner = &first[1..first.len() - 1];
        let rest = comps[1..].iter().map(|c| c.steps());
        let w = inverse_raw(&DyckPath::from_trusted(concat_steps(
            std::iter::once(inner).chain(rest),
        )))?;
        // the last k - 1 zeros of w were 0s of u, the earlier ones were 1s
        let zeros = w.iter().filter(|&&v| v == 0).count();
        let mut seen = 0;
        let mut u = vec![0];
        for v in w {
            if v == 0 {
                seen += 1;
                u.push(if seen > zeros - (k - 1) { 0 } else { 1 });
            } else {
                u.push(v + 1);
            }
        }
        return Ok(u);
    }
    // p = (UD)^{j+1} U U P D Q D R
    let a = s
        .chunks_exact(2)
        .take_while(|c| c == &[Step::U, Step::D])
        .count();
    let rest = DyckPath::from_trusted(s[2 * a..].to_vec());
    let rest_comps = rest.components();
    let outer = rest_comps[0].steps();
    let inner = DyckPath::from_trusted(outer[1..outer.len() - 1].to_vec());
    let inner_comps = inner.components();
    let first = inner_comps[0].steps();
    let q = concat_steps(inner_comps[1..].iter().map(|c| c.steps()));
    let mut image = first.to_vec();
    image.push(Step::U);
    image.extend(q);
    image.push(Step::D);
    for c in &rest_comps[1..] {
        image.extend_from_slice(c.steps());
    }
    let w = inverse_raw(&DyckPath::from_trusted(image))?;
    case4_expand(&w, a - 1)
}

pub fn phi_inverse(p: &DyckPath) -> Result<AscentSequence> {
    let u = inverse_raw(p)?;
    Ok(AscentSequence::from_trusted(u))
}

/// Record of `φ` applied to one avoider.
#[derive(Debug, Clone, Serialize)]
pub struct PhiRecord {
    pub case: PhiCase,
    pub input: AscentSequence,
    pub image: DyckPath,
    pub stats_left: AvoiderStatRecord,
    pub stats_right: DyckStatRecord,
    /// Number of 0s equals number of components, and (except for the all
    /// 0s input) the three per-object correspondences hold.
    pub pass: bool,
}

pub fn phi_record(u: &AscentSequence) -> Result<PhiRecord> {
    let case = classify(u)?;
    let image = phi(u)?;
    let stats_left = avoider_stats(u);
    let stats_right = dyck_stats(&image)?;
    let pass = stats_left.num_zeros == stats_right.num_components
        && (case == PhiCase::AllZeros || stats_left.table1() == stats_right.table1());
    Ok(PhiRecord {
        case,
        input: u.clone(),
        image,
        stats_left,
        stats_right,
        pass,
    })
}

const MAX_LISTED: usize = 10;

/// Checks, for every avoider of length `n` other than `0^n`, the three
/// per-object correspondences between avoider and path statistics.
pub fn check_table1(n: usize) -> CheckReport {
    let mut report = CheckReport::new("table1").param("n", n);
    let mut checked = 0u64;
    let mut failures = 0usize;
    for u in enumerate(n, &avoider_class()) {
        if u.entries().iter().all(|&v| v == 0) {
            continue;
        }
        checked += 1;
        let rec = match phi_record(&u) {
            Ok(r) => r,
            Err(e) => {
                report.fail(format!("{u}: {e}"));
                continue;
            }
        };
        if !rec.pass {
            failures += 1;
            if failures <= MAX_LISTED {
                report.fail(format!(
                    "{u} -> {}: left {:?} right {:?}",
                    rec.image,
                    rec.stats_left.table1(),
                    rec.stats_right.table1()
                ));
            } else {
                report.pass = false;
            }
        }
    }
    report.note(format!("{checked} avoiders checked, {failures} exceptions"));
    report
}

/// Compares the multisets of seven-statistic tuples on avoiders of length
/// `n` (excluding `0^n` and `01...(n-1)`) and on Dyck paths of size `n`
/// (excluding the sawtooth and the pyramid).
///
/// This equidistribution is conjectural; the report's status is
/// `conjecture-consistent` or `counterexample-found`.
pub fn check_table2(n: usize) -> CheckReport {
    let mut report = CheckReport::new("table2").param("n", n);
    let increasing: Vec<u32> = (0..n as u32).collect();
    let mut left: BTreeMap<[u32; 7], i64> = BTreeMap::new();
    let mut left_total = 0;
    for u in enumerate(n, &avoider_class()) {
        let e = u.entries();
        if e.iter().all(|&v| v == 0) || e == increasing.as_slice() {
            continue;
        }
        left_total += 1;
        *left.entry(avoider_stats(&u).table2()).or_insert(0) += 1;
    }
    let mut right_total = 0;
    let mut diff = left.clone();
    let (saw, pyr) = (DyckPath::sawtooth(n), DyckPath::pyramid(n));
    for p in all_paths(n) {
        if p == saw || p == pyr {
            continue;
        }
        right_total += 1;
        let t = dyck_stats(&p).expect("nonempty").table2();
        *diff.entry(t).or_insert(0) -= 1;
    }
    report.note(format!(
        "{left_total} avoiders, {right_total} paths, {} distinct avoider tuples",
        left.len()
    ));
    match diff.iter().find(|(_, &c)| c != 0) {
        None => report.status = Some("conjecture-consistent".into()),
        Some((t, c)) => {
            report.status = Some("counterexample-found".into());
            report.fail(format!(
                "tuple {t:?} occurs {} more times among {}",
                c.abs(),
                if *c > 0 { "avoiders" } else { "paths" }
            ));
        }
    }
    report
}

/// Exhaustive bijectivity check of `φ` at size `n`, together with the
/// 0s-to-components invariant, the case-to-image-class correspondence and
/// round trips in both directions.
pub fn check_phi_bijectivity(n: usize) -> CheckReport {
    let mut report = CheckReport::new("phi-bijectivity").param("n", n);
    let avoiders = enumerate(n, &avoider_class());
    let expected = catalan(n as u32);
    report.expect(expected == avoiders.len().into(), || {
        format!("{} avoiders, expected C_{n} = {expected}", avoiders.len())
    });
    let saw = DyckPath::sawtooth(n);
    let mut images = HashSet::with_capacity(avoiders.len());
    let mut problems = 0;
    let mut fail = |report: &mut CheckReport, msg: String| {
        problems += 1;
        if problems <= MAX_LISTED {
            report.fail(msg);
        } else {
            report.pass = false;
        }
    };
    for u in &avoiders {
        let image = match phi(u) {
            Ok(p) => p,
            Err(e) => {
                fail(&mut report, format!("phi({u}) failed: {e}"));
                continue;
            }
        };
        if image.size() != n {
            fail(&mut report, format!("phi({u}) = {image} has wrong size"));
        }
        let zeros = u.entries().iter().filter(|&&v| v == 0).count();
        if zeros != image.num_components() {
            fail(
                &mut report,
                format!(
                    "phi({u}) = {image}: {zeros} zeros but {} components",
                    image.num_components()
                ),
            );
        }
        let in_class = match classify_raw(u.entries()) {
            PhiCase::AllZeros => image == saw,
            PhiCase::SingleZero => image.is_elevated(),
            PhiCase::NoOneAfterSecondZero { .. } => {
                image.starts_with(&[Step::U, Step::U]) && !image.is_elevated()
            }
            PhiCase::OneAfterSecondZero { .. } => {
                image.starts_with(&[Step::U, Step::D]) && image != saw
            }
        };
        if !in_class {
            fail(
                &mut report,
                format!("phi({u}) = {image} lands outside its case's image class"),
            );
        }
        match phi_inverse(&image) {
            Ok(back) if back == *u => {}
            Ok(back) => fail(&mut report, format!("phi_inverse(phi({u})) = {back}")),
            Err(e) => fail(&mut report, format!("phi_inverse({image}) failed: {e}")),
        }
        if !images.insert(image.clone()) {
            fail(
                &mut report,
                format!("phi({u}) = {image} is a repeated image"),
            );
        }
    }
    report.expect(images.len() == avoiders.len(), || {
        format!(
            "{} distinct images of {} avoiders",
            images.len(),
            avoiders.len()
        )
    });
    for p in all_paths(n) {
        match phi_inverse(&p).and_then(|u| phi(&u).map(|q| (u, q))) {
            Ok((_, q)) if q == p => {}
            Ok((u, q)) => fail(
                &mut report,
                format!("phi(phi_inverse({p})) = phi({u}) = {q}"),
            ),
            Err(e) => fail(&mut report, format!("round trip from {p} failed: {e}")),
        }
    }
    report.note(format!(
        "{} avoiders, {} distinct images",
        avoiders.len(),
        images.len()
    ));
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(s: &str) -> AscentSequence {
        s.parse().unwrap()
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify(&seq("000")).unwrap(), PhiCase::AllZeros);
        assert_eq!(classify(&seq("011")).unwrap(), PhiCase::SingleZero);
        assert_eq!(
            classify(&seq("001")).unwrap(),
            PhiCase::OneAfterSecondZero { j: 0 }
        );
        assert_eq!(
            classify(&seq("010")).unwrap(),
            PhiCase::NoOneAfterSecondZero { k: 2 }
        );
        assert!(classify(&seq("0011")).is_err());
    }

    #[test]
    fn small_images() {
        assert_eq!(phi(&seq("0")).unwrap().to_string(), "UD");
        assert_eq!(phi(&seq("01")).unwrap().to_string(), "UUDD");
        for (u, p) in [
            ("000", "UDUDUD"),
            ("001", "UDUUDD"),
            ("010", "UUDDUD"),
            ("011", "UUDUDD"),
            ("012", "UUUDDD"),
        ] {
            assert_eq!(phi(&seq(u)).unwrap().to_string(), p, "phi({u})");
        }
    }

    #[test]
    fn case4_worked_example() {
        let (w, j) = case4_reduce(&seq("0123341120013057")).unwrap();
        assert_eq!(j, 1);
        assert_eq!(w.to_string(), "01233411201036");
    }

    #[test]
    fn case4_small_reductions() {
        let (w, j) = case4_reduce(&seq("001")).unwrap();
        assert_eq!((w.to_string(), j), ("00".to_string(), 0));
        let (w, j) = case4_reduce(&seq("0010")).unwrap();
        assert_eq!((w.to_string(), j), ("000".to_string(), 0));
        let u = seq("0010");
        assert_eq!(phi_inverse(&phi(&u).unwrap()).unwrap(), u);
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(
            phi_inverse(&"UUDD".parse().unwrap()).unwrap().to_string(),
            "01"
        );
        assert_eq!(
            phi_inverse(&"UDUUDD".parse().unwrap()).unwrap().to_string(),
            "001"
        );
        assert_eq!(phi_inverse(&DyckPath::empty()), Err(Error::EmptyPath));
    }

    #[test]
    fn bijective_at_length_six() {
        let report = check_phi_bijectivity(6);
        assert!(report.pass, "{:?}", report.details);
    }

    #[test]
    fn table1_small() {
        for n in 2..=8 {
            let report = check_table1(n);
            assert!(report.pass, "n={n}: {:?}", report.details);
        }
    }

    #[test]
    fn table2_small() {
        let r = check_table2(3);
        assert_eq!(r.status.as_deref(), Some("conjecture-consistent"));
        let r = check_table2(2);
        assert!(r.pass);
    }

    #[test]
    fn nonzero_entries_after_second_zero_increase() {
        for u in enumerate(9, &avoider_class()) {
            let e = u.entries();
            if let Some(z) = second_zero(e) {
                let after: Vec<u32> = e[z + 1..].iter().copied().filter(|&v| v != 0).collect();
                assert!(after.windows(2).all(|w| w[0] < w[1]), "{u}");
                assert!(after.iter().filter(|&&v| v == 1).count() <= 1);
            }
        }
    }
}
