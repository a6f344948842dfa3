use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::cone::VariantKind;
use crate::error::{Error, Result};
use crate::invariants::{SrcData, TuttePolynomial};

/// Coefficients of `((1 + x)^width - 1)^s`.
fn nonempty_picks(width: usize, s: usize) -> Vec<BigUint> {
    let mut column = vec![BigUint::zero(); width + 1];
    let mut c = BigUint::one();
    for (i, slot) in column.iter_mut().enumerate().skip(1) {
        c = c * BigUint::from(width + 1 - i) / BigUint::from(i);
        *slot = c.clone();
    }
    let mut out = vec![BigUint::one()];
    for _ in 0..s {
        let mut next = vec![BigUint::zero(); out.len() + width];
        for (i, x) in out.iter().enumerate() {
            for (j, y) in column.iter().enumerate().skip(1) {
                next[i + j] += x * y;
            }
        }
        out = next;
    }
    out
}

/// Tutte polynomial of a variant of the free `m`-cone, from the
/// size-rank-coloop data of the loopless source.
///
/// A tip-free set over a source set `S` of rank `t` with `c` coloops keeps
/// rank `t` exactly when it takes one element over each point of `S` and
/// takes fibers only over coloops; every other set over `S` has rank `t + 1`.
pub fn tutte_of_cone_from_src(src: &SrcData, m: usize, kind: VariantKind) -> Result<TuttePolynomial> {
    if m == 0 {
        return Err(Error::ZeroMultiplicity);
    }
    let width = if kind.keeps_base() { m + 1 } else { m };
    let mut counts: BTreeMap<(usize, usize), BigUint> = BTreeMap::new();
    let mut add = |size: usize, rank: usize, value: BigUint| {
        if !value.is_zero() {
            *counts.entry((size, rank)).or_insert_with(BigUint::zero) += value;
        }
    };
    for (&(s, t, c), mult) in src.counts() {
        if s == 1 && t == 0 {
            return Err(Error::MalformedSrc("the source has a loop".into()));
        }
        let picks = nonempty_picks(width, s);
        let same_rank = if kind.keeps_base() {
            BigUint::from(m + 1).pow(c as u32)
        } else if c == s {
            BigUint::from(m).pow(s as u32)
        } else {
            BigUint::zero()
        };
        for (z, g) in picks.iter().enumerate() {
            let higher = if z == s { g - &same_rank } else { g.clone() };
            add(z, t + 1, mult * higher);
            if kind.keeps_tip() {
                add(z + 1, t + 1, mult * g);
            }
        }
        add(s, t, mult * same_rank);
    }
    let rank = counts.keys().map(|&(_, r)| r).max().unwrap_or(0);
    Ok(TuttePolynomial::from_size_rank(rank, &counts))
}
