use std::collections::BTreeSet;

use ascent_catalan::ascent::{contains, enumerate, for_each_avoider, Pattern};
use ascent_catalan::bijection::{avoider_class, phi, phi_inverse};
use ascent_catalan::dyck::{dyck_stats, DyckPath, Step};
use ascent_catalan::series::{TruncatedSeries, Var};
use ascent_catalan::AscentSequence;
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

/// Ascent sequences of length `n` counted by a DP over (ascents, last letter).
#[allow(clippy::needless_range_loop)]
fn ascent_sequence_count(n: usize) -> u64 {
    if n == 0 {
        return 0;
    }
    // state[a][l]: prefixes with `a` ascents ending in `l`
    let mut state = vec![vec![0u64; n + 1]; n + 1];
    state[0][0] = 1;
    for _ in 1..n {
        let mut next = vec![vec![0u64; n + 1]; n + 1];
        for a in 0..=n {
            for l in 0..=n {
                let c = state[a][l];
                if c == 0 {
                    continue;
                }
                for y in 0..=(a + 1).min(n) {
                    let a2 = a + usize::from(y > l);
                    if a2 <= n {
                        next[a2][y] += c;
                    }
                }
            }
        }
        state = next;
    }
    state.iter().flatten().sum()
}

#[test]
fn unrestricted_enumeration_matches_dp() {
    for n in 1..=9 {
        assert_eq!(
            enumerate(n, &[]).len() as u64,
            ascent_sequence_count(n),
            "n={n}"
        );
    }
}

#[test]
fn adding_patterns_shrinks_the_class() {
    let one: BTreeSet<_> = enumerate(7, &Pattern::parse_list("0021").unwrap())
        .into_iter()
        .collect();
    let two: BTreeSet<_> = enumerate(7, &Pattern::parse_list("0021,0011").unwrap())
        .into_iter()
        .collect();
    assert!(two.is_subset(&one));
    for s in one.difference(&two) {
        assert!(s.contains(&Pattern::new(&[0, 0, 1, 1])));
    }
}

#[test]
fn visitor_reports_ascents() {
    for_each_avoider(8, &avoider_class(), |seq, asc| {
        assert_eq!(AscentSequence::new(seq.to_vec()).unwrap().asc(), asc);
    });
}

fn ascent_sequence() -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(any::<u32>(), 1..12).prop_map(|raw| {
        let mut out = vec![0u32];
        let mut asc = 0;
        for r in &raw[1..] {
            let y = r % (asc + 2);
            asc += u32::from(y > *out.last().unwrap());
            out.push(y);
        }
        out
    })
}

fn dyck_path() -> impl Strategy<Value = DyckPath> {
    // a random walk, repaired into a Dyck path by clamping at the axis and
    // closing with down steps
    (1usize..12, prop::collection::vec(any::<bool>(), 24)).prop_map(|(n, bits)| {
        let mut steps = Vec::new();
        let (mut ups, mut height) = (0, 0);
        for up in bits {
            if ups == n {
                break;
            }
            if up || height == 0 {
                steps.push(Step::U);
                ups += 1;
                height += 1;
            } else {
                steps.push(Step::D);
                height -= 1;
            }
        }
        while ups < n {
            steps.push(Step::U);
            ups += 1;
            height += 1;
        }
        steps.extend(std::iter::repeat_n(Step::D, height));
        DyckPath::from_steps(steps).unwrap()
    })
}

fn small_pattern() -> impl Strategy<Value = Pattern> {
    prop::collection::vec(0u32..3, 1..4).prop_map(|letters| Pattern::new(&letters))
}

proptest! {
    #[test]
    fn generated_sequences_are_valid(seq in ascent_sequence()) {
        prop_assert!(AscentSequence::new(seq).is_ok());
    }

    #[test]
    fn containment_survives_extension(seq in ascent_sequence(), pat in small_pattern(), extra in any::<u32>()) {
        let mut longer = seq.clone();
        let asc = ascent_catalan::ascent::ascents(&seq);
        longer.push(extra % (asc + 2));
        if contains(&seq, &pat) {
            prop_assert!(contains(&longer, &pat));
        }
        // every sequence contains the pattern it equals after flattening
        prop_assert!(contains(&seq, &Pattern::new(&seq)));
    }

    #[test]
    fn paths_round_trip(p in dyck_path()) {
        let u = phi_inverse(&p).unwrap();
        prop_assert!(u.avoids_all(&avoider_class()));
        prop_assert_eq!(u.len(), p.size());
        prop_assert_eq!(phi(&u).unwrap(), p.clone());
        let zeros = u.entries().iter().filter(|&&x| x == 0).count() as u32;
        prop_assert_eq!(zeros, dyck_stats(&p).unwrap().num_components);
    }

    #[test]
    fn avoiders_round_trip(seq in ascent_sequence()) {
        let s = AscentSequence::new(seq).unwrap();
        if s.avoids_all(&avoider_class()) {
            let p = phi(&s).unwrap();
            prop_assert_eq!(phi_inverse(&p).unwrap(), s);
        } else {
            prop_assert!(phi(&s).is_err());
        }
    }

    #[test]
    fn substitution_is_multiplicative(
        a in prop::collection::vec((0u32..4, 0u32..3, -4i64..5), 0..5),
        b in prop::collection::vec((0u32..4, 0u32..3, -4i64..5), 0..5),
        k in 1u32..3,
    ) {
        let build = |terms: &[(u32, u32, i64)]| TruncatedSeries::from_terms(
            terms.iter().map(|&(x, v, c)| ([x, 0, v, 0, 0], BigRational::from_integer(BigInt::from(c)))),
            6,
            8,
        );
        let (a, b) = (build(&a), build(&b));
        // v := x^k w is sound and maps products to products
        let repl = TruncatedSeries::monomial(BigRational::from_integer(1.into()), [k, 0, 0, 1, 0], 6, 8);
        let lhs = (&a * &b).substitute(Var::V, &repl).unwrap();
        let rhs = &a.substitute(Var::V, &repl).unwrap() * &b.substitute(Var::V, &repl).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn inverse_of_product(
        a in prop::collection::vec((0u32..4, 0u32..3, -4i64..5), 0..5),
        b in prop::collection::vec((0u32..4, 0u32..3, -4i64..5), 0..5),
    ) {
        let unit = |terms: &[(u32, u32, i64)]| {
            let rest = TruncatedSeries::from_terms(
                terms.iter().filter(|t| t.0 + t.1 > 0).map(|&(x, v, c)| ([x, 0, v, 0, 0], BigRational::from_integer(BigInt::from(c)))),
                5,
                6,
            );
            &TruncatedSeries::one(5, 6) + &rest
        };
        let (a, b) = (unit(&a), unit(&b));
        let lhs = (&a * &b).invert().unwrap();
        let rhs = &a.invert().unwrap() * &b.invert().unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}
