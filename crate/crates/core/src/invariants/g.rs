use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;

use super::{rank_table, Limits};
use crate::error::{Error, Result};
use crate::matroid::Matroid;

/// The rank increments along an ordering of the ground set.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RankSequence(Vec<bool>);

impl RankSequence {
    pub fn new(bits: Vec<bool>) -> Self {
        RankSequence(bits)
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn ones(&self) -> usize {
        self.0.iter().filter(|&&b| b).count()
    }
}

impl fmt::Display for RankSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for RankSequence {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(format!("rank sequences use 0 and 1, found {other:?}")),
            })
            .collect::<std::result::Result<Vec<bool>, String>>()
            .map(RankSequence)
    }
}

/// The multiset of rank sequences over all orderings of the ground set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GInvariant {
    n: usize,
    k: usize,
    counts: BTreeMap<RankSequence, BigUint>,
}

impl GInvariant {
    /// Checks that every sequence has length `n` with `k` ones and that the
    /// counts are positive.
    pub fn from_counts(
        n: usize,
        k: usize,
        counts: impl IntoIterator<Item = (RankSequence, BigUint)>,
    ) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (seq, count) in counts {
            if seq.len() != n || seq.ones() != k {
                return Err(Error::InconsistentSystem(format!(
                    "sequence {seq} is not an ({n},{k})-sequence"
                )));
            }
            if count == BigUint::ZERO {
                continue;
            }
            *map.entry(seq).or_insert_with(|| BigUint::ZERO) += count;
        }
        Ok(GInvariant { n, k, counts: map })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.k
    }

    pub fn counts(&self) -> &BTreeMap<RankSequence, BigUint> {
        &self.counts
    }

    pub fn get(&self, seq: &RankSequence) -> BigUint {
        self.counts.get(seq).cloned().unwrap_or_default()
    }

    pub fn total(&self) -> BigUint {
        self.counts.values().sum()
    }
}

impl fmt::Display for GInvariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // largest coefficients of the basis order first, matching the usual
        // presentation 648[111000] + 72[110100]
        let terms: Vec<String> = self
            .counts
            .iter()
            .rev()
            .map(|(seq, c)| format!("{c}[{seq}]"))
            .collect();
        f.write_str(&terms.join(" + "))
    }
}

/// The G-invariant with default limits.
pub fn g_invariant(m: &Matroid) -> Result<GInvariant> {
    g_invariant_with(m, &Limits::default())
}

/// Counts rank sequences by dynamic programming over subsets: orderings are
/// grouped by the set of elements placed so far and the sequence of rank
/// increments produced, so each subset is extended once per distinct prefix.
pub fn g_invariant_with(m: &Matroid, limits: &Limits) -> Result<GInvariant> {
    let n = m.len();
    limits.check_perms("G-invariant", n)?;
    let table = rank_table(m);
    // layer[X] maps a prefix (bit i = increment at step i) to its count
    let mut layer: HashMap<u64, HashMap<u64, u128>> = HashMap::new();
    layer.insert(0, HashMap::from([(0, 1)]));
    for step in 0..n {
        let mut next: HashMap<u64, HashMap<u64, u128>> = HashMap::new();
        for (&x, prefixes) in &layer {
            let r = table[x as usize];
            for e in 0..n {
                let bit = 1u64 << e;
                if x & bit != 0 {
                    continue;
                }
                let y = x | bit;
                let up = u64::from(table[y as usize] > r) << step;
                let target = next.entry(y).or_default();
                for (&seq, &count) in prefixes {
                    *target.entry(seq | up).or_default() += count;
                }
            }
        }
        layer = next;
    }
    let k = m.full_rank();
    let full = layer.remove(&((1u64 << n) - 1)).unwrap_or_default();
    let counts = full.into_iter().map(|(seq, count)| {
        let bits = (0..n).map(|i| seq >> i & 1 == 1).collect();
        (RankSequence(bits), BigUint::from(count))
    });
    GInvariant::from_counts(n, k, counts)
}
