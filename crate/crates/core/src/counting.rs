//! Catalan and Narayana numbers, the table `a(n, m, r, s)` of 021-avoiders
//! by length, ascents, largest letter and last letter, and the drivers that
//! check the recurrences and the Catalan-count pairs.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::ascent::{for_each_avoider, Pattern};
use crate::error::{Error, Result};
use crate::report::CheckReport;
use crate::series::{Ring, TruncatedSeries, Var};

/// `binom(n, k)`, zero when `k < 0` or `k > n`.
pub fn binomial(n: i64, k: i64) -> BigUint {
    if n < 0 || k < 0 || k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k) as u64;
    let n = n as u64;
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// `C_n = binom(2n, n) / (n + 1)`.
pub fn catalan(n: u32) -> BigUint {
    binomial(2 * n as i64, n as i64) / (n as u64 + 1)
}

/// `N(n, m) = binom(n, m) binom(n, m - 1) / n` for `1 <= m <= n`.
pub fn narayana(n: u32, m: u32) -> Result<BigUint> {
    if m < 1 || m > n {
        return Err(Error::NarayanaRange { n, m });
    }
    let (n, m) = (n as i64, m as i64);
    Ok(binomial(n, m) * binomial(n, m - 1) / n as u64)
}

/// Exact counts indexed by `(n, m, r, s)`: length, ascents, largest letter,
/// last letter, each in `0..=n_max`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountTable {
    n_max: usize,
    values: Vec<BigUint>,
}

impl CountTable {
    pub fn new(n_max: usize) -> Self {
        let side = n_max + 1;
        Self {
            n_max,
            values: vec![BigUint::zero(); side * side * side * side],
        }
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    fn index(&self, n: usize, m: usize, r: usize, s: usize) -> Option<usize> {
        let side = self.n_max + 1;
        (n < side && m < side && r < side && s < side)
            .then(|| ((n * side + m) * side + r) * side + s)
    }

    /// Zero outside the table.
    pub fn get(&self, n: usize, m: usize, r: usize, s: usize) -> BigUint {
        self.index(n, m, r, s)
            .map(|i| self.values[i].clone())
            .unwrap_or_default()
    }

    fn entry(&mut self, n: usize, m: usize, r: usize, s: usize) -> &mut BigUint {
        let i = self.index(n, m, r, s).expect("table index within n_max");
        &mut self.values[i]
    }

    pub fn set(&mut self, n: usize, m: usize, r: usize, s: usize, value: BigUint) {
        *self.entry(n, m, r, s) = value;
    }

    /// Nonzero entries in `(n, m, r, s)` order.
    pub fn nonzero_entries(&self) -> impl Iterator<Item = (usize, usize, usize, usize, &BigUint)> {
        let side = self.n_max + 1;
        self.values
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(move |(i, v)| {
                let s = i % side;
                let r = (i / side) % side;
                let m = (i / side / side) % side;
                let n = i / side / side / side;
                (n, m, r, s, v)
            })
    }

    /// `sum_{m,r,s} a(n, m, r, s)`
    pub fn total(&self, n: usize) -> BigUint {
        self.nonzero_entries()
            .filter(|e| e.0 == n)
            .map(|e| e.4.clone())
            .sum()
    }

    /// `sum_{r,s} a(n, m, r, s)`
    pub fn by_ascents(&self, n: usize, m: usize) -> BigUint {
        self.nonzero_entries()
            .filter(|e| e.0 == n && e.1 == m)
            .map(|e| e.4.clone())
            .sum()
    }

    /// `A_{n,m,r}(u) = sum_s a(n, m, r, s) u^s`, as coefficients indexed by `s`.
    pub fn by_last_letter(&self, n: usize, m: usize, r: usize) -> Vec<BigUint> {
        (0..=self.n_max).map(|s| self.get(n, m, r, s)).collect()
    }

    /// Entries breaking the support conditions: nonzero only when
    /// `1 <= n`, `s <= r <= m < n`, and never when `r > s >= 1`.
    pub fn structural_violations(&self) -> Vec<(usize, usize, usize, usize)> {
        self.nonzero_entries()
            .filter(|&(n, m, r, s, _)| {
                let supported = n >= 1 && s <= r && r <= m && m < n;
                !supported || (r > s && s >= 1)
            })
            .map(|(n, m, r, s, _)| (n, m, r, s))
            .collect()
    }

    /// `A_{n,m}(u, v) = sum_{r,s} a(n, m, r, s) u^s v^r` in the ring `ring`.
    pub fn poly_a(&self, n: usize, m: usize, ring: Ring) -> TruncatedSeries {
        let terms = self
            .nonzero_entries()
            .filter(|e| e.0 == n && e.1 == m)
            .map(|(_, _, r, s, c)| {
                (
                    [0, s as u32, r as u32, 0, 0],
                    BigRational::from_integer(c.clone().into()),
                )
            })
            .collect::<Vec<_>>();
        TruncatedSeries::from_terms(terms, ring.x_cap, ring.aux_cap)
    }

    /// `B_{n,m}(v) = sum_r a(n, m, r, r) v^r` in the ring `ring`.
    pub fn poly_b(&self, n: usize, m: usize, ring: Ring) -> TruncatedSeries {
        let terms = self
            .nonzero_entries()
            .filter(|e| e.0 == n && e.1 == m && e.2 == e.3)
            .map(|(_, _, r, _, c)| {
                (
                    [0, 0, r as u32, 0, 0],
                    BigRational::from_integer(c.clone().into()),
                )
            })
            .collect::<Vec<_>>();
        TruncatedSeries::from_terms(terms, ring.x_cap, ring.aux_cap)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,m,r,s,count\n");
        for (n, m, r, s, c) in self.nonzero_entries() {
            out.push_str(&format!("{n},{m},{r},{s},{c}\n"));
        }
        out
    }
}

/// The table from the recurrences alone, filled row by row in `n`.
///
/// * `a(n, 0, 0, 0) = 1`, and `a(n, m, 0, 0) = 0` for `m >= 1`;
/// * `a(n, m, 1, 1) = binom(n - 1, 2m - 1)`;
/// * `a(n, m, r, 0) = sum_{j <= r} a(n - 1, m, r, j)` for `r >= 1`;
/// * `a(n, m, r, r) = a(n-1, m, r, r) + sum_{1 <= i < r} sum_{j <= i} a(n-1, m-1, i, j)
///   + sum_{j <= r} a(n-2, m-1, r, j)` for `r >= 2`;
/// * everything else is zero.
pub fn lemma0_table(n_max: usize) -> CountTable {
    let mut t = CountTable::new(n_max);
    for n in 1..=n_max {
        t.set(n, 0, 0, 0, BigUint::one());
        for m in 1..n {
            t.set(n, m, 1, 1, binomial(n as i64 - 1, 2 * m as i64 - 1));
            for r in 1..=m {
                let ends_zero: BigUint = (0..=r).map(|j| t.get(n - 1, m, r, j)).sum();
                t.set(n, m, r, 0, ends_zero);
            }
            for r in 2..=m {
                let mut v = t.get(n - 1, m, r, r);
                for i in 1..r {
                    for j in 0..=i {
                        v += t.get(n - 1, m - 1, i, j);
                    }
                }
                if n >= 2 {
                    for j in 0..=r {
                        v += t.get(n - 2, m - 1, r, j);
                    }
                }
                t.set(n, m, r, r, v);
            }
        }
    }
    t
}

/// The table by classifying every 021-avoider of length `n <= n_max`.
pub fn brute_force_table(n_max: usize) -> CountTable {
    let mut t = CountTable::new(n_max);
    let avoid = [Pattern::new(&[0, 2, 1])];
    for n in 1..=n_max {
        for_each_avoider(n, &avoid, |seq, asc| {
            let r = *seq.iter().max().unwrap() as usize;
            let s = *seq.last().unwrap() as usize;
            *t.entry(n, asc as usize, r, s) += 1u32;
        });
    }
    t
}

/// Recurrence table against brute force, support conditions on both, and
/// the closed form for `a(n, m, 1, 1)`.
pub fn check_lemma0(n_max: usize) -> CheckReport {
    let mut report = CheckReport::new("lemma0").param("n_max", n_max);
    let rec = lemma0_table(n_max);
    let brute = brute_force_table(n_max);
    let side = n_max + 1;
    let mut mismatches = 0usize;
    for n in 0..side {
        for m in 0..side {
            for r in 0..side {
                for s in 0..side {
                    let (a, b) = (rec.get(n, m, r, s), brute.get(n, m, r, s));
                    if a != b {
                        mismatches += 1;
                        if mismatches <= 20 {
                            report.fail(format!(
                                "a({n},{m},{r},{s}): recurrence {a}, brute force {b}"
                            ));
                        }
                    }
                }
            }
        }
    }
    report.expect(mismatches == 0, || {
        format!("{mismatches} mismatched entries")
    });
    for (name, table) in [("recurrence", &rec), ("brute force", &brute)] {
        let bad = table.structural_violations();
        report.expect(bad.is_empty(), || {
            format!("{name} table breaks support conditions at {bad:?}")
        });
    }
    for n in 1..=n_max {
        for m in 1..n {
            let expected = binomial(n as i64 - 1, 2 * m as i64 - 1);
            let got = brute.get(n, m, 1, 1);
            report.expect(got == expected, || {
                format!("a({n},{m},1,1) = {got}, binomial gives {expected}")
            });
        }
        report.expect(brute.total(n) == catalan(n as u32), || {
            format!("row {n} does not sum to C_{n}")
        });
        for m in 0..n {
            let nar = narayana(n as u32, m as u32 + 1).unwrap();
            report.expect(brute.by_ascents(n, m) == nar, || {
                format!("a({n},{m},*,*) does not sum to N({n},{})", m + 1)
            });
        }
    }
    report.note(format!(
        "{} nonzero entries compared",
        brute.nonzero_entries().count()
    ));
    report
}

/// Both polynomial recurrences for `A_{n,m}(u, v)` and `B_{n,m}(v)`,
/// multiplied through by `1 - uv` and `1 - v` respectively so that they are
/// checked as identities between polynomials.
pub fn check_lemma1(n_max: usize) -> CheckReport {
    let mut report = CheckReport::new("lemma1").param("n_max", n_max);
    let table = brute_force_table(n_max);
    let ring = Ring::new(0, 2 * n_max as u32 + 6);
    let one = ring.int(1);
    let v = ring.var(Var::V);
    let uv = ring.mono(1, [0, 1, 1, 0, 0]);
    let one_uv = &one - &uv;
    let one_v = &one - &v;
    let a = |n: usize, m: usize| table.poly_a(n, m, ring);
    let b = |n: usize, m: usize| table.poly_b(n, m, ring);
    let at = |p: &TruncatedSeries,
              u_val: &TruncatedSeries,
              v_val: &TruncatedSeries|
     -> TruncatedSeries {
        // u goes first: the replacement for v may itself contain u
        let pu = p.substitute(Var::U, u_val).expect("polynomials are exact");
        pu.substitute(Var::V, v_val).expect("polynomials are exact")
    };
    let value_at_one =
        |p: &TruncatedSeries| -> BigRational { p.terms().map(|(_, c)| c.clone()).sum() };

    let mut checked = 0;
    for n in 1..=n_max {
        // the m = 1 closed forms
        if n >= 2 {
            let expected_a = &v.scale(&BigRational::from_integer(binomial(n as i64 - 1, 2).into()))
                + &uv.scale(&BigRational::from_integer((n as i64 - 1).into()));
            report.expect(a(n, 1) == expected_a, || {
                format!("A_{{{n},1}}(u,v) = {}", a(n, 1).to_string().trim())
            });
            let expected_b = v.scale(&BigRational::from_integer((n as i64 - 1).into()));
            report.expect(b(n, 1) == expected_b, || {
                format!("B_{{{n},1}}(v) = {}", b(n, 1).to_string().trim())
            });
        }
        for m in 2..n {
            let prev = a(n - 1, m - 1);
            let prev_total = value_at_one(&prev);
            let before = if n >= 2 {
                a(n - 2, m - 1)
            } else {
                TruncatedSeries::zero(0, ring.aux_cap)
            };
            let uv_m = uv.pow(m as u32);
            let v_m = v.pow(m as u32);

            let lhs1 = &one_uv * &a(n, m);
            let b_uv = b(n - 1, m).substitute(Var::V, &uv).unwrap();
            let inner1 = &(&b_uv + &at(&a(n - 1, m), &one, &v)) + &at(&before, &one, &uv);
            let rest1 = &at(&prev, &one, &uv) - &uv_m.scale(&prev_total);
            let rhs1 = &(&one_uv * &inner1) + &(&uv * &rest1);
            let d1 = lhs1.first_difference(&rhs1);
            report.expect(d1.is_none(), || {
                format!("A_{{{n},{m}}} recurrence fails: {d1:?}")
            });

            let lhs2 = &one_v * &b(n, m);
            let inner2 = &b(n - 1, m) + &at(&before, &one, &v);
            let rest2 = &at(&prev, &one, &v) - &v_m.scale(&prev_total);
            let rhs2 = &(&one_v * &inner2) + &(&v * &rest2);
            let d2 = lhs2.first_difference(&rhs2);
            report.expect(d2.is_none(), || {
                format!("B_{{{n},{m}}} recurrence fails: {d2:?}")
            });
            checked += 1;
        }
    }
    report.note(format!("{checked} (n, m) pairs checked"));
    report
}

/// The eight pattern pairs whose avoiders are counted by `C_n`; from the
/// fourth on, the ascent refinement is `N(n, m + 1)`.
pub fn theorem1_pairs() -> Vec<(usize, [Pattern; 2], bool)> {
    const PAIRS: [([u32; 4], [u32; 4]); 8] = [
        ([0, 0, 0, 1], [1, 0, 1, 2]),
        ([0, 0, 1, 0], [0, 0, 2, 1]),
        ([0, 0, 1, 1], [0, 0, 2, 1]),
        ([0, 0, 2, 1], [0, 1, 2, 1]),
        ([0, 1, 2, 1], [0, 1, 3, 2]),
        ([0, 1, 2, 1], [1, 0, 3, 2]),
        ([0, 1, 2, 2], [0, 1, 3, 2]),
        ([0, 1, 2, 2], [1, 0, 3, 2]),
    ];
    PAIRS
        .iter()
        .enumerate()
        .map(|(i, (p, q))| (i + 1, [Pattern::new(p), Pattern::new(q)], i >= 3))
        .collect()
}

/// Brute-force counts for every pair and every `n <= n_max`, one detail
/// line per pair listing `n:count` with a `!` after any mismatch.
pub fn verify_theorem1(n_max: usize) -> CheckReport {
    let mut report = CheckReport::new("theorem1").param("n_max", n_max);
    for (id, pair, refined) in theorem1_pairs() {
        let mut cells = Vec::new();
        let mut ok = true;
        for n in 1..=n_max {
            let mut by_m = vec![0u64; n];
            for_each_avoider(n, &pair, |_, asc| by_m[asc as usize] += 1);
            let total: u64 = by_m.iter().sum();
            let mut cell_ok = BigUint::from(total) == catalan(n as u32);
            if refined {
                for (m, &count) in by_m.iter().enumerate() {
                    cell_ok &= BigUint::from(count) == narayana(n as u32, m as u32 + 1).unwrap();
                }
            }
            ok &= cell_ok;
            cells.push(format!("{n}:{total}{}", if cell_ok { "" } else { "!" }));
        }
        let line = format!(
            "({id}) {},{}{} {} {}",
            pair[0],
            pair[1],
            if refined { " [refined]" } else { "" },
            if ok { "pass" } else { "FAIL" },
            cells.join(" ")
        );
        if ok {
            report.note(line);
        } else {
            report.fail(line);
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn closed_forms() {
        assert_eq!(catalan(0), big(1));
        assert_eq!(catalan(4), big(14));
        assert_eq!(catalan(10), big(16796));
        assert_eq!(catalan(11), big(58786));
        assert_eq!(narayana(4, 2).unwrap(), big(6));
        assert_eq!(narayana(3, 2).unwrap(), big(3));
        assert_eq!(narayana(7, 1).unwrap(), big(1));
        assert_eq!(narayana(3, 0), Err(Error::NarayanaRange { n: 3, m: 0 }));
        assert_eq!(narayana(3, 4), Err(Error::NarayanaRange { n: 3, m: 4 }));
        for n in 1..15 {
            let s: BigUint = (1..=n).map(|m| narayana(n, m).unwrap()).sum();
            assert_eq!(s, catalan(n));
        }
        assert_eq!(binomial(4, 5), big(0));
        assert_eq!(binomial(4, -1), big(0));
        assert_eq!(binomial(40, 20), big(137846528820));
    }

    #[test]
    fn catalan_beyond_u64() {
        assert_eq!(catalan(40).to_string(), "2622127042276492108820");
    }

    #[test]
    fn recurrence_values() {
        let t = lemma0_table(10);
        for n in 1..=10 {
            assert_eq!(t.get(n, 0, 0, 0), big(1));
        }
        assert_eq!(t.get(5, 2, 1, 1), big(4));
        assert_eq!(t.get(2, 1, 1, 0), big(0));
        assert!(t.get(10, 4, 3, 0) >= big(1));
    }

    #[test]
    fn witness_is_counted() {
        let w = crate::AscentSequence::new(vec![0, 1, 0, 1, 1, 0, 3, 0, 3, 0]).unwrap();
        assert!(!w.contains(&Pattern::new(&[0, 2, 1])));
        assert_eq!((w.asc(), w.max_letter(), w.last_letter()), (4, 3, 0));
        let b = brute_force_table(10);
        assert!(b.get(10, 4, 3, 0) >= big(1));
    }

    #[test]
    fn brute_force_small() {
        let b = brute_force_table(3);
        assert_eq!(b.nonzero_entries().filter(|e| e.0 == 1).count(), 1);
        assert_eq!(b.get(1, 0, 0, 0), big(1));
        // 000 001 010 011 012
        assert_eq!(b.total(3), big(5));
        assert_eq!(b.get(3, 1, 1, 1), big(2));
        assert_eq!(b.get(3, 2, 2, 2), big(1));
        assert!(b.to_csv().starts_with("n,m,r,s,count\n1,0,0,0,1\n"));
    }

    #[test]
    fn tables_agree() {
        let report = check_lemma0(8);
        assert!(report.pass, "{:?}", report.details);
    }

    #[test]
    fn polynomial_recurrences() {
        let report = check_lemma1(8);
        assert!(report.pass, "{:?}", report.details);
    }

    #[test]
    fn pair_examples() {
        let pairs = theorem1_pairs();
        let count = |id: usize, n: usize| {
            let (_, pair, _) = &pairs[id - 1];
            crate::ascent::enumerate(n, pair).len()
        };
        assert_eq!(count(2, 5), 42);
        assert_eq!(count(1, 6), 132);
        let by_m = crate::ascent::count_by_ascents(6, &pairs[7].1);
        assert_eq!(
            by_m.values().copied().collect::<Vec<_>>(),
            vec![1, 15, 50, 50, 15, 1]
        );
        assert!(verify_theorem1(7).pass);
    }
}
