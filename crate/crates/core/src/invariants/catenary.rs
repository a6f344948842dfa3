use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::matroid::{FlatLattice, Matroid};
use crate::subset::Subset;

/// A maximal chain of flats `X_0 ⊂ X_1 ⊂ ... ⊂ X_k`, with `X_i` of rank `i`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Flag(pub Vec<Subset>);

impl Flag {
    pub fn sets(&self) -> &[Subset] {
        &self.0
    }

    /// `(|X_0|, |X_1 - X_0|, ..., |X_k - X_{k-1}|)`.
    pub fn composition(&self) -> Composition {
        let mut parts = Vec::with_capacity(self.0.len());
        let mut prev = Subset::EMPTY;
        for &x in &self.0 {
            parts.push((x - prev).len());
            prev = x;
        }
        Composition(parts)
    }
}

/// The sizes `(a_0, a_1, ..., a_k)` of the steps of a flag.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Composition(pub Vec<usize>);

impl Composition {
    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    /// Number of parts after the first, i.e. the rank.
    pub fn rank(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Number of flags with each composition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatenaryData {
    n: usize,
    k: usize,
    counts: BTreeMap<Composition, BigUint>,
}

impl CatenaryData {
    /// Checks every key is an `(n, k)`-composition: `k + 1` parts summing to
    /// `n`, all but the first positive. Zero counts are dropped.
    pub fn from_counts(
        n: usize,
        k: usize,
        counts: impl IntoIterator<Item = (Composition, BigUint)>,
    ) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (comp, count) in counts {
            if comp.0.len() != k + 1 || comp.total() != n || comp.0[1..].contains(&0) {
                return Err(Error::MalformedCatenary(format!(
                    "{comp} is not an ({n},{k})-composition"
                )));
            }
            if count != BigUint::ZERO {
                *map.entry(comp).or_insert_with(|| BigUint::ZERO) += count;
            }
        }
        Ok(CatenaryData { n, k, counts: map })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.k
    }

    pub fn counts(&self) -> &BTreeMap<Composition, BigUint> {
        &self.counts
    }

    pub fn get(&self, parts: &[usize]) -> BigUint {
        self.counts
            .get(&Composition(parts.to_vec()))
            .cloned()
            .unwrap_or_default()
    }

    /// Number of flags.
    pub fn total(&self) -> BigUint {
        self.counts.values().sum()
    }
}

/// Counts flags by composition, walking the covers of the lattice of flats
/// upward and carrying, for each flat, the compositions of the partial flags
/// ending there.
pub fn catenary_data(m: &Matroid) -> CatenaryData {
    let lattice = m.flat_lattice();
    let k = lattice.rank();
    let bottom = lattice.layer(0)[0];
    let mut current: Vec<HashMap<Vec<usize>, BigUint>> =
        vec![HashMap::from([(vec![bottom.len()], BigUint::from(1u32))])];
    for rank in 0..k {
        let below = lattice.layer(rank);
        let above = lattice.layer(rank + 1);
        let mut next: Vec<HashMap<Vec<usize>, BigUint>> = vec![HashMap::new(); above.len()];
        for (i, prefixes) in current.iter().enumerate() {
            for &j in lattice.covers_above(rank, i) {
                let step = (above[j] - below[i]).len();
                for (prefix, count) in prefixes {
                    let mut extended = prefix.clone();
                    extended.push(step);
                    *next[j].entry(extended).or_insert_with(|| BigUint::ZERO) += count;
                }
            }
        }
        current = next;
    }
    let top = current.pop().unwrap_or_default();
    CatenaryData::from_counts(
        m.len(),
        k,
        top.into_iter().map(|(parts, c)| (Composition(parts), c)),
    )
    .expect("flag compositions are compositions")
}

/// Depth-first stream over the flags of a matroid.
pub struct Flags {
    lattice: Arc<FlatLattice>,
    /// `(index in layer, next cover to try)` for each rank on the path.
    path: Vec<(usize, usize)>,
}

impl Iterator for Flags {
    type Item = Flag;

    fn next(&mut self) -> Option<Flag> {
        let top = self.lattice.rank();
        loop {
            let depth = self.path.len();
            let &(index, child) = self.path.last()?;
            let rank = depth - 1;
            if rank == top {
                let flag = self
                    .path
                    .iter()
                    .enumerate()
                    .map(|(r, &(i, _))| self.lattice.layer(r)[i])
                    .collect();
                self.path.pop();
                return Some(Flag(flag));
            }
            let covers = self.lattice.covers_above(rank, index);
            if let Some(&up) = covers.get(child) {
                self.path.last_mut().unwrap().1 += 1;
                self.path.push((up, 0));
            } else {
                self.path.pop();
            }
        }
    }
}

/// All flags of `m`, streamed.
pub fn flags(m: &Matroid) -> Flags {
    Flags {
        lattice: m.flat_lattice(),
        path: vec![(0, 0)],
    }
}

/// The flags of `m \ s`, obtained as `(Y_i - s)` over the flags `(Y_i)` of
/// `m` whose sets stay distinct after removing `s`. Sets are expressed in
/// the element ids of `m`. Fails when deleting `s` lowers the rank, since
/// then every flag collapses.
pub fn flags_of_deletion(m: &Matroid, s: Subset) -> Result<impl Iterator<Item = Flag>> {
    if m.rank(m.ground() - s) < m.full_rank() {
        return Err(Error::AllCollapse);
    }
    Ok(flags(m).filter_map(move |Flag(sets)| {
        let trimmed: Vec<Subset> = sets.iter().map(|&y| y - s).collect();
        trimmed.windows(2).all(|w| w[0] != w[1]).then_some(Flag(trimmed))
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::cone::free_m_cone;

    #[test]
    fn two_planes_counts() {
        for m in [catalog::m1(), catalog::m2()] {
            let cat = catenary_data(&m);
            assert_eq!(cat.get(&[0, 1, 2, 3]), BigUint::from(6u32));
            assert_eq!(cat.get(&[0, 1, 1, 4]), BigUint::from(18u32));
        }
        assert_eq!(catenary_data(&catalog::m1()), catenary_data(&catalog::m2()));
    }

    #[test]
    fn small_cases() {
        let cat = catenary_data(&Matroid::uniform(2, 3));
        assert_eq!(cat.counts().len(), 1);
        assert_eq!(cat.get(&[0, 1, 2]), BigUint::from(3u32));
        assert_eq!(flags(&Matroid::uniform(2, 3)).count(), 3);
        let cone = free_m_cone(&Matroid::uniform(1, 1), 1).unwrap();
        assert_eq!(catenary_data(cone.matroid()).get(&[0, 1, 2]), BigUint::from(3u32));
    }

    #[test]
    fn streamed_flags_agree_with_counts() {
        for (name, m) in catalog::fixtures() {
            let mut tally: BTreeMap<Composition, BigUint> = BTreeMap::new();
            for flag in flags(&m) {
                for (i, w) in flag.0.windows(2).enumerate() {
                    assert!(w[0].is_proper_subset(w[1]));
                    assert_eq!(m.rank(w[1]), i + 1);
                    assert!(m.is_flat(w[1]));
                }
                *tally.entry(flag.composition()).or_default() += 1u32;
            }
            assert_eq!(&tally, catenary_data(&m).counts(), "{name}");
        }
    }

    #[test]
    fn deletion_flags_match_direct_enumeration() {
        let cone = free_m_cone(&catalog::m1(), 1).unwrap();
        let q = cone.matroid();
        let tip = Subset::singleton(cone.tip());
        let deleted = q.delete(tip);
        let keep = q.ground() - tip;
        let old_id: Vec<usize> = keep.iter().collect();
        let mut direct: Vec<Flag> = flags(&deleted)
            .map(|Flag(sets)| Flag(sets.iter().map(|x| x.map(|e| old_id[e])).collect()))
            .collect();
        let mut via: Vec<Flag> = flags_of_deletion(q, tip).unwrap().collect();
        direct.sort();
        via.sort();
        assert_eq!(direct, via);
    }

    #[test]
    fn full_collapse_is_reported() {
        let cone = free_m_cone(&Matroid::uniform(2, 2), 1).unwrap();
        let s = cone.base().with(cone.tip());
        assert!(matches!(
            flags_of_deletion(cone.matroid(), s),
            Err(Error::AllCollapse)
        ));
    }

    #[test]
    fn malformed_compositions_rejected() {
        let bad = [(Composition(vec![0, 0, 2]), BigUint::from(1u32))];
        assert!(CatenaryData::from_counts(2, 2, bad).is_err());
        let bad = [(Composition(vec![0, 1]), BigUint::from(1u32))];
        assert!(CatenaryData::from_counts(2, 1, bad).is_err());
    }
}
