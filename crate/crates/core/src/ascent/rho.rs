use crate::error::{Error, Result};

use super::{contains, AscentSequence, Pattern};

/// Maps a (0121, 0132)-avoider to a (0122, 0132)-avoider with the same
/// length and number of ascents.
///
/// Binary sequences are fixed. Otherwise the sequence splits as `αβ` with
/// `α` its longest binary prefix; every occurrence of a letter `r > 1` in
/// `β` other than its first is replaced by 1.
pub fn rho_prime(rho: &AscentSequence) -> Result<AscentSequence> {
    let class: [Pattern; 2] = [Pattern::new(&[0, 1, 2, 1]), Pattern::new(&[0, 1, 3, 2])];
    let s = rho.entries();
    if class.iter().any(|p| contains(s, p)) {
        return Err(Error::NotInClass {
            seq: rho.to_string(),
            class: "0121,0132".into(),
        });
    }
    let split = s.iter().position(|&v| v > 1).unwrap_or(s.len());
    let (alpha, beta) = s.split_at(split);
    debug_assert!(!beta.contains(&1));

    let mut out = alpha.to_vec();
    let mut seen = vec![false; s.len() + 1];
    for &v in beta {
        if v > 1 {
            let first = !seen[v as usize];
            seen[v as usize] = true;
            out.push(if first { v } else { 1 });
        } else {
            out.push(v);
        }
    }
    Ok(AscentSequence::from_trusted(out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ascent::enumerate;
    use std::collections::BTreeSet;

    #[test]
    fn worked_example() {
        let rho: AscentSequence = "001122020404".parse().unwrap();
        assert_eq!(rho_prime(&rho).unwrap().to_string(), "001121010401");
    }

    #[test]
    fn binary_fixed_point() {
        let rho: AscentSequence = "0101".parse().unwrap();
        assert_eq!(rho_prime(&rho).unwrap(), rho);
    }

    #[test]
    fn rejects_outside_class() {
        let rho: AscentSequence = "0121".parse().unwrap();
        assert!(matches!(rho_prime(&rho), Err(Error::NotInClass { .. })));
    }

    #[test]
    fn bijection_at_length_six() {
        let src = enumerate(6, &Pattern::parse_list("0121,0132").unwrap());
        let dst: BTreeSet<_> = enumerate(6, &Pattern::parse_list("0122,0132").unwrap())
            .into_iter()
            .collect();
        let image: BTreeSet<_> = src.iter().map(|r| rho_prime(r).unwrap()).collect();
        assert_eq!(src.len(), dst.len());
        assert_eq!(image, dst);
        for r in &src {
            let img = rho_prime(r).unwrap();
            assert_eq!(img.asc(), r.asc());
        }
    }
}
