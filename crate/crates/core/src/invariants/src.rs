use std::collections::BTreeMap;

use num_bigint::BigUint;
use rayon::prelude::*;

use super::{rank_table, Limits};
use crate::error::{Error, Result};
use crate::matroid::Matroid;
use crate::subset::Subset;

/// `(size, rank, number of coloops of the restriction)` of a subset.
pub type SrcTriple = (usize, usize, usize);

/// The multiset of size-rank-coloop triples over all subsets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SrcData {
    n: usize,
    counts: BTreeMap<SrcTriple, BigUint>,
}

impl SrcData {
    /// Checks `s >= t >= c` for every triple and that the counts add up to
    /// `2^n`. Zero counts are dropped.
    pub fn from_counts(n: usize, counts: impl IntoIterator<Item = (SrcTriple, BigUint)>) -> Result<Self> {
        let mut map: BTreeMap<SrcTriple, BigUint> = BTreeMap::new();
        for ((s, t, c), count) in counts {
            if !(s >= t && t >= c && s <= n) {
                return Err(Error::MalformedSrc(format!(
                    "({s},{t},{c}) is not a size-rank-coloop triple on {n} elements"
                )));
            }
            if count != BigUint::ZERO {
                *map.entry((s, t, c)).or_insert_with(|| BigUint::ZERO) += count;
            }
        }
        let total: BigUint = map.values().sum();
        if total != BigUint::from(1u32) << n {
            return Err(Error::MalformedSrc(format!(
                "counts add up to {total}, not 2^{n}"
            )));
        }
        Ok(SrcData { n, counts: map })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Largest rank among the triples.
    pub fn rank(&self) -> usize {
        self.counts.keys().map(|&(_, t, _)| t).max().unwrap_or(0)
    }

    pub fn counts(&self) -> &BTreeMap<SrcTriple, BigUint> {
        &self.counts
    }

    pub fn get(&self, triple: SrcTriple) -> BigUint {
        self.counts.get(&triple).cloned().unwrap_or_default()
    }

    /// Forgets the coloop counts.
    pub fn size_rank(&self) -> BTreeMap<(usize, usize), BigUint> {
        let mut out: BTreeMap<(usize, usize), BigUint> = BTreeMap::new();
        for (&(s, t, _), count) in &self.counts {
            *out.entry((s, t)).or_insert_with(|| BigUint::ZERO) += count;
        }
        out
    }
}

/// Size-rank-coloop data with default limits.
pub fn src_data(m: &Matroid) -> Result<SrcData> {
    src_data_with(m, &Limits::default())
}

pub fn src_data_with(m: &Matroid, limits: &Limits) -> Result<SrcData> {
    let n = m.len();
    limits.check_subsets("size-rank-coloop data", n)?;
    let table = rank_table(m);
    let tally: BTreeMap<SrcTriple, u64> = (0..1u64 << n)
        .into_par_iter()
        .fold(BTreeMap::new, |mut acc: BTreeMap<SrcTriple, u64>, bits| {
            let x = Subset::from_bits(bits);
            let r = table[bits as usize];
            let coloops = x
                .iter()
                .filter(|&e| table[x.without(e).bits() as usize] < r)
                .count();
            *acc.entry((x.len(), r as usize, coloops)).or_default() += 1;
            acc
        })
        .reduce(BTreeMap::new, |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_default() += v;
            }
            a
        });
    SrcData::from_counts(n, tally.into_iter().map(|(k, v)| (k, BigUint::from(v))))
}
