use std::collections::BTreeMap;

use num_bigint::BigUint;
use rayon::prelude::*;

use super::cone_size_map;
use crate::cone::VariantKind;
use crate::error::{Error, Result};
use crate::invariants::{CatenaryData, Composition};

/// Composition of the cone flags indexed by tuples whose source flag has
/// composition `a`, with `split` steps before the tip and fiber steps
/// `fiber_steps` (1-based). `None` when those flags collapse in the variant.
pub fn cone_composition(
    a: &[usize],
    split: usize,
    fiber_steps: &[usize],
    m: usize,
    kind: VariantKind,
) -> Option<Vec<usize>> {
    let k = a.len().checked_sub(1)?;
    if split > k || fiber_steps.iter().any(|&i| i == 0 || i > split) {
        return None;
    }
    if !kind.keeps_base() && fiber_steps.len() != split {
        return None;
    }
    let (slope, intercept) = cone_size_map(kind, m);
    let mut b = Vec::with_capacity(k + 2);
    b.push(0);
    let mut plain = 0;
    for i in 1..=split {
        if fiber_steps.contains(&i) {
            b.push(1);
        } else {
            plain += 1;
            b.push(a[plain]);
        }
    }
    let grown: usize = (1..=split).map(|j| slope * a[j]).sum();
    let placed: usize = b[1..].iter().sum();
    b.push((intercept + grown).checked_sub(placed)?);
    for i in split + 2..=k + 1 {
        b.push(slope * a[i - 1]);
    }
    b[1..].iter().all(|&x| x > 0).then_some(b)
}

/// Number of tuples sharing a source flag, `split` and `fiber_count` fiber
/// steps: one of `m * a_i` fiber elements at each of the last `fiber_count`
/// steps up to `split`.
pub fn cone_weight(a: &[usize], split: usize, fiber_count: usize, m: usize) -> BigUint {
    (split - fiber_count + 1..=split)
        .map(|i| BigUint::from(m * a[i]))
        .product()
}

/// Catenary data of a variant of the free `m`-cone, from the catenary data
/// of the loopless source.
pub fn catenary_of_cone(cat: &CatenaryData, m: usize, kind: VariantKind) -> Result<CatenaryData> {
    if m == 0 {
        return Err(Error::ZeroMultiplicity);
    }
    let (n, k) = (cat.n(), cat.rank());
    for comp in cat.counts().keys() {
        let parts = comp.parts();
        if parts.first() != Some(&0) {
            return Err(Error::MalformedCatenary(format!(
                "{comp} has a nonzero first part, so the source has loops"
            )));
        }
        if parts.len() != k + 1 || comp.total() != n || parts[1..].contains(&0) {
            return Err(Error::MalformedCatenary(format!(
                "{comp} is not an ({n},{k})-composition"
            )));
        }
    }
    let (slope, intercept) = cone_size_map(kind, m);
    let size = slope * n + intercept;
    if size == 0 {
        return CatenaryData::from_counts(0, 0, [(Composition(vec![0]), BigUint::from(1u32))]);
    }
    if kind == VariantKind::TiplessBaseless && m == 1 && n == k {
        // a single fiber over a free matroid is a copy of it
        return Ok(cat.clone());
    }
    let tally = cat
        .counts()
        .par_iter()
        .fold(
            BTreeMap::new,
            |mut acc: BTreeMap<Vec<usize>, BigUint>, (comp, count)| {
                let a = comp.parts();
                for split in 0..=k {
                    for mask in 0u64..1 << split {
                        let steps: Vec<usize> = (1..=split).filter(|i| mask >> (i - 1) & 1 == 1).collect();
                        let Some(b) = cone_composition(a, split, &steps, m, kind) else {
                            continue;
                        };
                        let weight = cone_weight(a, split, steps.len(), m) * count;
                        *acc.entry(b).or_insert_with(|| BigUint::ZERO) += weight;
                    }
                }
                acc
            },
        )
        .reduce(BTreeMap::new, |mut x, y| {
            for (b, c) in y {
                *x.entry(b).or_insert_with(|| BigUint::ZERO) += c;
            }
            x
        });
    CatenaryData::from_counts(size, k + 1, tally.into_iter().map(|(b, c)| (Composition(b), c)))
}
