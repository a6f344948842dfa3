use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::invariants::{GInvariant, SrcData, SrcTriple};

fn factorials(n: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::from(1u32)];
    for i in 1..=n {
        let next = &out[i - 1] * BigInt::from(i);
        out.push(next);
    }
    out
}

fn binomial(facts: &[BigInt], a: usize, b: usize) -> BigInt {
    &facts[a] / (&facts[b] * &facts[a - b])
}

/// Size-rank-coloop data from the G-invariant.
///
/// An ordering is counted at `(s, t, c)` when its first `s` entries have
/// rank `t` and the last `c` of them each raise the rank, which happens
/// exactly when they are coloops of the restriction to the first `s`. A set
/// with `c'` coloops is counted `C(c', c) c! (s-c)! (n-s)!` times, so the
/// counts by coloop number are solved from the largest `c` down.
pub fn src_from_g(g: &GInvariant) -> Result<SrcData> {
    let n = g.n();
    let mut ordered: BTreeMap<SrcTriple, BigInt> = BTreeMap::new();
    for (seq, count) in g.counts() {
        let count = BigInt::from(count.clone());
        let bits = seq.bits();
        let (mut ones, mut run) = (0, 0);
        for s in 0..=n {
            for c in 0..=run {
                *ordered.entry((s, ones, c)).or_insert_with(BigInt::zero) += &count;
            }
            if s < n {
                if bits[s] {
                    ones += 1;
                    run += 1;
                } else {
                    run = 0;
                }
            }
        }
    }
    let facts = factorials(n);
    let mut solved: BTreeMap<SrcTriple, BigInt> = BTreeMap::new();
    let pairs: Vec<(usize, usize)> = {
        let mut p: Vec<_> = ordered.keys().map(|&(s, t, _)| (s, t)).collect();
        p.dedup();
        p
    };
    for (s, t) in pairs {
        for c in (0..=t.min(s)).rev() {
            let mut rest = ordered.get(&(s, t, c)).cloned().unwrap_or_default();
            for c2 in c + 1..=t.min(s) {
                if let Some(f) = solved.get(&(s, t, c2)) {
                    rest -= f * binomial(&facts, c2, c) * &facts[c] * &facts[s - c] * &facts[n - s];
                }
            }
            let per_set = &facts[c] * &facts[s - c] * &facts[n - s];
            if rest.is_negative() || !(&rest % &per_set).is_zero() {
                return Err(Error::InconsistentSystem(format!(
                    "no whole number of sets fits ({s},{t},{c})"
                )));
            }
            let f = rest / per_set;
            if !f.is_zero() {
                solved.insert((s, t, c), f);
            }
        }
    }
    SrcData::from_counts(
        n,
        solved
            .into_iter()
            .map(|(k, v)| (k, v.to_biguint().expect("checked nonnegative"))),
    )
    .map_err(|e| Error::InconsistentSystem(e.to_string()))
}

#[cfg(test)]
mod tests {
    use num_bigint::BigUint;

    use super::*;
    use crate::catalog;
    use crate::invariants::{g_invariant, src_data, RankSequence};
    use crate::matroid::Matroid;

    #[test]
    fn single_point() {
        let g = g_invariant(&Matroid::uniform(1, 1)).unwrap();
        let src = src_from_g(&g).unwrap();
        assert_eq!(src.counts().len(), 2);
        assert_eq!(src.get((0, 0, 0)), BigUint::from(1u32));
        assert_eq!(src.get((1, 1, 1)), BigUint::from(1u32));
    }

    #[test]
    fn recovers_fixture_data() {
        for (name, m) in catalog::fixtures() {
            let g = g_invariant(&m).unwrap();
            assert_eq!(src_from_g(&g).unwrap(), src_data(&m).unwrap(), "{name}");
        }
    }

    #[test]
    fn corrupted_input_is_reported() {
        let seq: RankSequence = "10".parse().unwrap();
        let g = GInvariant::from_counts(2, 1, [(seq, BigUint::from(1u32))]).unwrap();
        assert!(matches!(src_from_g(&g), Err(Error::InconsistentSystem(_))));
    }
}
