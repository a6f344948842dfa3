//! Lattices of cyclic flats: extraction, the cyclic-flat axioms, and
//! configurations (the abstract lattice labelled by size and rank) compared up
//! to isomorphism.

use std::fmt;

use crate::error::{Error, Result};
use crate::matroid::Matroid;
use crate::subset::Subset;

/// One of the four cyclic-flat axioms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Axiom {
    /// The family is a lattice under inclusion.
    Z0,
    /// The least set has rank zero.
    Z1,
    /// `0 < r(Y) - r(X) < |Y - X|` whenever `X` is properly contained in `Y`.
    Z2,
    /// `r(X v Y) + r(X ^ Y) + |(X n Y) - (X ^ Y)| <= r(X) + r(Y)`.
    Z3,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Axiom::Z0 => "Z0",
            Axiom::Z1 => "Z1",
            Axiom::Z2 => "Z2",
            Axiom::Z3 => "Z3",
        };
        f.write_str(s)
    }
}

/// Which pairs the submodularity axiom (Z3) is checked on. Comparable pairs
/// satisfy it trivially, so both modes give the same verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Z3Mode {
    AllPairs,
    IncomparableOnly,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AxiomReport {
    Pass,
    Violation {
        axiom: Axiom,
        first: Subset,
        second: Subset,
    },
}

impl AxiomReport {
    pub fn is_pass(&self) -> bool {
        matches!(self, AxiomReport::Pass)
    }

    pub fn axiom(&self) -> Option<Axiom> {
        match self {
            AxiomReport::Pass => None,
            AxiomReport::Violation { axiom, .. } => Some(*axiom),
        }
    }
}

/// Index of the least member of `sets` containing `x`, if it exists.
fn least_above(sets: &[Subset], x: Subset) -> Option<usize> {
    let uppers: Vec<usize> = (0..sets.len()).filter(|&i| x.is_subset(sets[i])).collect();
    let &best = uppers.iter().min_by_key(|&&i| sets[i].len())?;
    uppers
        .iter()
        .all(|&i| sets[best].is_subset(sets[i]))
        .then_some(best)
}

/// Index of the greatest member of `sets` contained in `x`, if it exists.
fn greatest_below(sets: &[Subset], x: Subset) -> Option<usize> {
    let lowers: Vec<usize> = (0..sets.len()).filter(|&i| sets[i].is_subset(x)).collect();
    let &best = lowers.iter().max_by_key(|&&i| sets[i].len())?;
    lowers
        .iter()
        .all(|&i| sets[i].is_subset(sets[best]))
        .then_some(best)
}

/// Checks the cyclic-flat axioms on an arbitrary family of sets with ranks and
/// reports the first violation. Axioms are checked in order Z0..Z3, and pairs
/// in canonical order of the sets.
pub fn validate_axioms(family: &[(Subset, usize)], mode: Z3Mode) -> AxiomReport {
    let mut entries = family.to_vec();
    entries.sort_by(|a, b| a.0.canonical_cmp(b.0));
    let sets: Vec<Subset> = entries.iter().map(|e| e.0).collect();
    let ranks: Vec<usize> = entries.iter().map(|e| e.1).collect();
    let violation = |axiom, i: usize, j: usize| AxiomReport::Violation {
        axiom,
        first: sets[i],
        second: sets[j],
    };

    // Z0
    if sets.is_empty() {
        return AxiomReport::Violation {
            axiom: Axiom::Z0,
            first: Subset::EMPTY,
            second: Subset::EMPTY,
        };
    }
    for i in 1..sets.len() {
        if sets[i] == sets[i - 1] {
            return violation(Axiom::Z0, i - 1, i);
        }
    }
    let Some(least) = greatest_below(&sets, sets[0]).filter(|&l| sets.iter().all(|s| sets[l].is_subset(*s)))
    else {
        let other = (1..sets.len())
            .find(|&j| !sets[0].is_subset(sets[j]))
            .unwrap_or(0);
        return violation(Axiom::Z0, 0, other);
    };
    let n = sets.len();
    let mut join = vec![vec![0; n]; n];
    let mut meet = vec![vec![0; n]; n];
    for i in 0..n {
        for j in i..n {
            match (
                least_above(&sets, sets[i] | sets[j]),
                greatest_below(&sets, sets[i] & sets[j]),
            ) {
                (Some(u), Some(l)) => {
                    join[i][j] = u;
                    join[j][i] = u;
                    meet[i][j] = l;
                    meet[j][i] = l;
                }
                _ => return violation(Axiom::Z0, i, j),
            }
        }
    }

    // Z1
    if ranks[least] != 0 {
        return violation(Axiom::Z1, least, least);
    }

    // Z2
    for i in 0..n {
        for j in i + 1..n {
            if sets[i].is_proper_subset(sets[j]) {
                let gap = ranks[j] as i64 - ranks[i] as i64;
                if gap <= 0 || gap >= (sets[j] - sets[i]).len() as i64 {
                    return violation(Axiom::Z2, i, j);
                }
            }
        }
    }

    // Z3
    for i in 0..n {
        for j in i + 1..n {
            let comparable = sets[i].is_subset(sets[j]) || sets[j].is_subset(sets[i]);
            if comparable && mode == Z3Mode::IncomparableOnly {
                continue;
            }
            let (u, l) = (join[i][j], meet[i][j]);
            let lhs = ranks[u] + ranks[l] + ((sets[i] & sets[j]) - sets[l]).len();
            if lhs > ranks[i] + ranks[j] {
                return violation(Axiom::Z3, i, j);
            }
        }
    }
    AxiomReport::Pass
}

/// A lattice of cyclic flats with precomputed joins and meets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclicFlatFamily {
    entries: Vec<(Subset, usize)>,
    join: Vec<Vec<usize>>,
    meet: Vec<Vec<usize>>,
}

impl CyclicFlatFamily {
    /// Validates the family against the cyclic-flat axioms.
    pub fn new(entries: Vec<(Subset, usize)>) -> Result<Self> {
        if let AxiomReport::Violation { axiom, first, second } = validate_axioms(&entries, Z3Mode::AllPairs) {
            return Err(Error::AxiomViolation { axiom, first, second });
        }
        Ok(Self::from_valid(entries))
    }

    fn from_valid(mut entries: Vec<(Subset, usize)>) -> Self {
        entries.sort_by(|a, b| a.0.canonical_cmp(b.0));
        let sets: Vec<Subset> = entries.iter().map(|e| e.0).collect();
        let n = sets.len();
        let mut join = vec![vec![0; n]; n];
        let mut meet = vec![vec![0; n]; n];
        for i in 0..n {
            for j in 0..n {
                join[i][j] = least_above(&sets, sets[i] | sets[j]).expect("lattice");
                meet[i][j] = greatest_below(&sets, sets[i] & sets[j]).expect("lattice");
            }
        }
        CyclicFlatFamily { entries, join, meet }
    }

    /// Entries in canonical order.
    pub fn entries(&self) -> &[(Subset, usize)] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn position(&self, set: Subset) -> Option<usize> {
        self.entries.iter().position(|e| e.0 == set)
    }

    pub fn join(&self, i: usize, j: usize) -> usize {
        self.join[i][j]
    }

    pub fn meet(&self, i: usize, j: usize) -> usize {
        self.meet[i][j]
    }
}

/// The cyclic flats of `m`, found by scanning its flats for those whose
/// restriction has no coloops.
pub fn cyclic_flats(m: &Matroid) -> CyclicFlatFamily {
    let entries = m
        .all_flats()
        .into_iter()
        .filter(|&(flat, _)| m.is_cyclic(flat))
        .collect();
    CyclicFlatFamily::from_valid(entries)
}

/// An abstract lattice with a size and a rank attached to each node.
///
/// Matroids with coloops are represented by the labelled lattice of their
/// cyclic flats together with the number of coloops.
#[derive(Clone, PartialEq, Eq)]
pub struct Configuration {
    sizes: Vec<usize>,
    ranks: Vec<usize>,
    covers: Vec<(usize, usize)>,
    coloops: usize,
    leq: Vec<Vec<bool>>,
}

impl fmt::Debug for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Configuration")
            .field("sizes", &self.sizes)
            .field("ranks", &self.ranks)
            .field("covers", &self.covers)
            .field("coloops", &self.coloops)
            .finish()
    }
}

/// Certificate of a configuration up to isomorphism.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm(Vec<usize>);

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        f.write_str(&parts.join("."))
    }
}

impl Configuration {
    /// Validates that the covers form the Hasse diagram of a lattice along
    /// which both labels strictly increase, starting from rank zero.
    pub fn new(
        sizes: Vec<usize>,
        ranks: Vec<usize>,
        covers: Vec<(usize, usize)>,
        coloops: usize,
    ) -> Result<Self> {
        let bad = |msg: String| Err(Error::InvalidConfiguration(msg));
        let n = sizes.len();
        if n == 0 {
            return bad("no nodes".into());
        }
        if ranks.len() != n {
            return bad("sizes and ranks differ in length".into());
        }
        let mut covers = covers;
        covers.sort_unstable();
        covers.dedup();
        for &(lo, hi) in &covers {
            if lo >= n || hi >= n {
                return bad(format!("cover ({lo}, {hi}) names a missing node"));
            }
            if ranks[lo] >= ranks[hi] || sizes[lo] >= sizes[hi] {
                return bad(format!("labels do not increase along cover ({lo}, {hi})"));
            }
        }
        // ranks strictly increase along covers, so the cover graph is acyclic
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&v| std::cmp::Reverse(ranks[v]));
        let mut up = vec![Vec::new(); n];
        for &(lo, hi) in &covers {
            up[lo].push(hi);
        }
        let mut leq = vec![vec![false; n]; n];
        for &v in &order {
            leq[v][v] = true;
            for &w in &up[v] {
                for x in 0..n {
                    if leq[w][x] {
                        leq[v][x] = true;
                    }
                }
            }
        }
        for &(lo, hi) in &covers {
            if up[lo].iter().any(|&w| w != hi && leq[w][hi]) {
                return bad(format!("({lo}, {hi}) is not a cover"));
            }
        }
        let config = Configuration {
            sizes,
            ranks,
            covers,
            coloops,
            leq,
        };
        let bottoms: Vec<usize> = (0..n).filter(|&v| (0..n).all(|w| config.leq(v, w))).collect();
        let tops: Vec<usize> = (0..n).filter(|&v| (0..n).all(|w| config.leq(w, v))).collect();
        if bottoms.len() != 1 || tops.len() != 1 {
            return bad("no unique least and greatest node".into());
        }
        if config.ranks[bottoms[0]] != 0 {
            return bad("the least node has nonzero rank".into());
        }
        for i in 0..n {
            for j in i + 1..n {
                if config.try_join(i, j).is_none() || config.try_meet(i, j).is_none() {
                    return bad(format!("nodes {i} and {j} have no join or meet"));
                }
            }
        }
        Ok(config)
    }

    /// The configuration of `m`, with nodes numbered canonically.
    pub fn of(m: &Matroid) -> Self {
        let flats = m.cyclic_flats();
        let n = flats.len();
        let mut covers = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let (lo, hi) = (flats[i].0, flats[j].0);
                if lo.is_proper_subset(hi)
                    && !flats
                        .iter()
                        .any(|&(z, _)| lo.is_proper_subset(z) && z.is_proper_subset(hi))
                {
                    covers.push((i, j));
                }
            }
        }
        let config = Configuration::new(
            flats.iter().map(|f| f.0.len()).collect(),
            flats.iter().map(|f| f.1).collect(),
            covers,
            m.coloops_of_restriction(m.ground()).len(),
        )
        .expect("cyclic flats form a lattice");
        config.canonical()
    }

    pub fn len(&self) -> usize {
        self.sizes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sizes.is_empty()
    }

    pub fn size(&self, v: usize) -> usize {
        self.sizes[v]
    }

    pub fn rank(&self, v: usize) -> usize {
        self.ranks[v]
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    /// Cover pairs `(lower, upper)`, sorted.
    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn coloops(&self) -> usize {
        self.coloops
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a][b]
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq[a][b]
    }

    pub fn bottom(&self) -> usize {
        (0..self.len())
            .find(|&v| (0..self.len()).all(|w| self.leq(v, w)))
            .expect("validated lattice")
    }

    pub fn top(&self) -> usize {
        (0..self.len())
            .find(|&v| (0..self.len()).all(|w| self.leq(w, v)))
            .expect("validated lattice")
    }

    fn try_join(&self, a: usize, b: usize) -> Option<usize> {
        let uppers: Vec<usize> = (0..self.len())
            .filter(|&v| self.leq(a, v) && self.leq(b, v))
            .collect();
        uppers
            .iter()
            .copied()
            .find(|&u| uppers.iter().all(|&w| self.leq(u, w)))
    }

    fn try_meet(&self, a: usize, b: usize) -> Option<usize> {
        let lowers: Vec<usize> = (0..self.len())
            .filter(|&v| self.leq(v, a) && self.leq(v, b))
            .collect();
        lowers
            .iter()
            .copied()
            .find(|&l| lowers.iter().all(|&w| self.leq(w, l)))
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.try_join(a, b).expect("validated lattice")
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.try_meet(a, b).expect("validated lattice")
    }

    /// Join of a set of nodes; the bottom for the empty set.
    pub fn join_all(&self, nodes: impl IntoIterator<Item = usize>) -> usize {
        nodes.into_iter().fold(self.bottom(), |acc, v| self.join(acc, v))
    }

    /// Returns a copy with the sizes replaced.
    pub fn with_sizes(&self, sizes: Vec<usize>) -> Result<Self> {
        Configuration::new(sizes, self.ranks.clone(), self.covers.clone(), self.coloops)
    }

    fn adjacency(&self) -> (Vec<Vec<usize>>, Vec<Vec<usize>>) {
        let mut down = vec![Vec::new(); self.len()];
        let mut up = vec![Vec::new(); self.len()];
        for &(lo, hi) in &self.covers {
            up[lo].push(hi);
            down[hi].push(lo);
        }
        (down, up)
    }

    fn certificate(&self, position: &[usize]) -> Vec<usize> {
        let n = self.len();
        let mut node_at = vec![0; n];
        for (v, &p) in position.iter().enumerate() {
            node_at[p] = v;
        }
        let mut cert = Vec::with_capacity(3 + 2 * n + 2 * self.covers.len());
        cert.extend([n, self.coloops, self.covers.len()]);
        for &v in &node_at {
            cert.push(self.ranks[v]);
            cert.push(self.sizes[v]);
        }
        let mut edges: Vec<(usize, usize)> = self
            .covers
            .iter()
            .map(|&(lo, hi)| (position[lo], position[hi]))
            .collect();
        edges.sort_unstable();
        for (lo, hi) in edges {
            cert.push(lo);
            cert.push(hi);
        }
        cert
    }

    /// Canonical numbering by colour refinement and individualisation: every
    /// leaf of the search tree is a labelling, and the one with the smallest
    /// certificate wins.
    fn canonical_labeling(&self) -> (Vec<usize>, Vec<usize>) {
        let (down, up) = self.adjacency();
        let initial: Vec<(usize, usize, usize, usize)> = (0..self.len())
            .map(|v| (self.ranks[v], self.sizes[v], down[v].len(), up[v].len()))
            .collect();
        let mut colors = rank_values(&initial);
        refine(&mut colors, &down, &up);
        let mut best: Option<(Vec<usize>, Vec<usize>)> = None;
        self.search(colors, &down, &up, &mut best);
        best.expect("search visits at least one leaf")
    }

    fn search(
        &self,
        colors: Vec<usize>,
        down: &[Vec<usize>],
        up: &[Vec<usize>],
        best: &mut Option<(Vec<usize>, Vec<usize>)>,
    ) {
        let n = self.len();
        let mut counts = vec![0usize; n];
        for &c in &colors {
            counts[c] += 1;
        }
        let target = (0..n).filter(|&c| counts[c] > 1).min_by_key(|&c| (counts[c], c));
        let Some(target) = target else {
            let cert = self.certificate(&colors);
            if best.as_ref().is_none_or(|(b, _)| cert < *b) {
                *best = Some((cert, colors));
            }
            return;
        };
        for v in (0..n).filter(|&v| colors[v] == target) {
            let split: Vec<usize> = (0..n).map(|w| 2 * colors[w] + usize::from(w != v)).collect();
            let mut next = rank_values(&split);
            refine(&mut next, down, up);
            self.search(next, down, up, best);
        }
    }

    /// Isomorphism-invariant certificate: two configurations are isomorphic
    /// exactly when their canonical forms are equal.
    pub fn canonical_form(&self) -> CanonicalForm {
        CanonicalForm(self.canonical_labeling().0)
    }

    /// The isomorphic configuration with canonically numbered nodes.
    pub fn canonical(&self) -> Self {
        let (_, position) = self.canonical_labeling();
        self.relabel(&position)
    }

    /// Renumbers node `v` as `position[v]`.
    pub fn relabel(&self, position: &[usize]) -> Self {
        let n = self.len();
        let mut sizes = vec![0; n];
        let mut ranks = vec![0; n];
        for v in 0..n {
            sizes[position[v]] = self.sizes[v];
            ranks[position[v]] = self.ranks[v];
        }
        let covers = self
            .covers
            .iter()
            .map(|&(lo, hi)| (position[lo], position[hi]))
            .collect();
        Configuration::new(sizes, ranks, covers, self.coloops).expect("relabelling a lattice")
    }
}

/// The configuration of `m`.
pub fn configuration(m: &Matroid) -> Configuration {
    Configuration::of(m)
}

/// Whether two configurations are isomorphic as labelled lattices.
pub fn configurations_equal(a: &Configuration, b: &Configuration) -> bool {
    a.len() == b.len()
        && a.coloops == b.coloops
        && a.covers.len() == b.covers.len()
        && a.canonical_form() == b.canonical_form()
}

/// Replaces each value by its position among the sorted distinct values.
fn rank_values<T: Ord + Clone>(values: &[T]) -> Vec<usize> {
    let mut distinct: Vec<T> = values.to_vec();
    distinct.sort();
    distinct.dedup();
    values
        .iter()
        .map(|v| distinct.binary_search(v).expect("present"))
        .collect()
}

/// Colour refinement until the partition is stable. Colours stay ordered
/// consistently with the input colouring.
fn refine(colors: &mut Vec<usize>, down: &[Vec<usize>], up: &[Vec<usize>]) {
    let mut classes = colors.iter().max().map_or(0, |m| m + 1);
    loop {
        let signatures: Vec<(usize, Vec<usize>, Vec<usize>)> = (0..colors.len())
            .map(|v| {
                let mut d: Vec<usize> = down[v].iter().map(|&w| colors[w]).collect();
                let mut u: Vec<usize> = up[v].iter().map(|&w| colors[w]).collect();
                d.sort_unstable();
                u.sort_unstable();
                (colors[v], d, u)
            })
            .collect();
        let next = rank_values(&signatures);
        let next_classes = next.iter().max().map_or(0, |m| m + 1);
        *colors = next;
        if next_classes == classes {
            return;
        }
        classes = next_classes;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn set(ids: &[usize]) -> Subset {
        ids.iter().map(|i| i - 1).collect()
    }

    #[test]
    fn cyclic_flats_of_two_planes() {
        let z1: Vec<Subset> = cyclic_flats(&catalog::m1())
            .entries()
            .iter()
            .map(|e| e.0)
            .collect();
        assert_eq!(
            z1,
            vec![Subset::EMPTY, set(&[1, 2, 3]), set(&[4, 5, 6]), Subset::full(6)]
        );
        let z2: Vec<Subset> = cyclic_flats(&catalog::m2())
            .entries()
            .iter()
            .map(|e| e.0)
            .collect();
        assert_eq!(
            z2,
            vec![Subset::EMPTY, set(&[1, 2, 3]), set(&[1, 4, 5]), Subset::full(6)]
        );
        let free = cyclic_flats(&Matroid::uniform(3, 3));
        assert_eq!(free.entries(), &[(Subset::EMPTY, 0)]);
    }

    #[test]
    fn z2_failure_reports_witness() {
        let report = validate_axioms(&[(Subset::EMPTY, 0), (set(&[1, 2]), 2)], Z3Mode::AllPairs);
        assert_eq!(
            report,
            AxiomReport::Violation {
                axiom: Axiom::Z2,
                first: Subset::EMPTY,
                second: set(&[1, 2]),
            }
        );
    }

    #[test]
    fn z0_and_z1_failures() {
        // two incomparable minimal sets
        let r = validate_axioms(&[(set(&[1]), 0), (set(&[2]), 0)], Z3Mode::AllPairs);
        assert_eq!(r.axiom(), Some(Axiom::Z0));
        // no join for {1,2} and {3,4} below two incomparable tops
        let r = validate_axioms(
            &[
                (Subset::EMPTY, 0),
                (set(&[1, 2, 3]), 1),
                (set(&[1, 2, 3, 4, 5]), 2),
                (set(&[1, 2, 3, 4, 6]), 2),
            ],
            Z3Mode::AllPairs,
        );
        assert_eq!(r.axiom(), Some(Axiom::Z0));
        let r = validate_axioms(&[(Subset::EMPTY, 1)], Z3Mode::AllPairs);
        assert_eq!(r.axiom(), Some(Axiom::Z1));
        assert_eq!(validate_axioms(&[], Z3Mode::AllPairs).axiom(), Some(Axiom::Z0));
    }

    #[test]
    fn z3_failure() {
        // two 3-point lines meeting in a point, inside a rank-3 top
        let family = [
            (Subset::EMPTY, 0),
            (set(&[1, 2, 3]), 2),
            (set(&[1, 4, 5]), 2),
            (Subset::full(5), 3),
        ];
        assert!(validate_axioms(&family, Z3Mode::AllPairs).is_pass());
        // two lines sharing two points: their meet is empty
        let family = [
            (Subset::EMPTY, 0),
            (set(&[1, 2, 3]), 2),
            (set(&[2, 3, 4]), 2),
            (Subset::full(5), 3),
        ];
        let r = validate_axioms(&family, Z3Mode::AllPairs);
        assert_eq!(
            r,
            AxiomReport::Violation {
                axiom: Axiom::Z3,
                first: set(&[1, 2, 3]),
                second: set(&[2, 3, 4]),
            }
        );
        assert_eq!(validate_axioms(&family, Z3Mode::IncomparableOnly), r);
    }

    #[test]
    fn two_planes_configuration_is_the_labelled_diamond() {
        let c = configuration(&catalog::m1());
        assert_eq!(c.len(), 4);
        let mut labels: Vec<(usize, usize)> = (0..4).map(|v| (c.size(v), c.rank(v))).collect();
        labels.sort_unstable();
        assert_eq!(labels, vec![(0, 0), (3, 2), (3, 2), (6, 3)]);
        assert_eq!(c.covers().len(), 4);
        assert!(configurations_equal(&c, &configuration(&catalog::m2())));
        assert_eq!(c, configuration(&catalog::m2()));
    }

    #[test]
    fn free_matroid_configuration() {
        let c = configuration(&Matroid::uniform(3, 3));
        assert_eq!(c.len(), 1);
        assert_eq!((c.size(0), c.rank(0)), (0, 0));
        assert_eq!(c.coloops(), 3);
    }

    #[test]
    fn configuration_rejects_non_lattices() {
        // two maximal nodes
        let err = Configuration::new(vec![0, 2, 2], vec![0, 1, 1], vec![(0, 1), (0, 2)], 0);
        assert!(err.is_err());
        // decreasing size along a cover
        let err = Configuration::new(vec![3, 2], vec![0, 1], vec![(0, 1)], 0);
        assert!(err.is_err());
        // transitive edge is not a cover
        let err = Configuration::new(vec![0, 2, 5], vec![0, 1, 2], vec![(0, 1), (1, 2), (0, 2)], 0);
        assert!(err.is_err());
    }

    #[test]
    fn configuration_invariant_under_relabelling() {
        for (name, m) in catalog::fixtures() {
            let n = m.len();
            let perm: Vec<usize> = (0..n).map(|i| (i * 5 + 3) % n).collect();
            if (0..n).any(|i| !perm.contains(&i)) {
                continue;
            }
            let relabelled = m.relabel(&perm);
            assert_eq!(configuration(&m), configuration(&relabelled), "{name}");
        }
    }

    #[test]
    fn extracted_cyclic_flats_match_stored_ones() {
        for (name, m) in catalog::fixtures() {
            let family = cyclic_flats(&m);
            assert_eq!(family.entries(), m.cyclic_flats(), "{name}");
            assert!(validate_axioms(family.entries(), Z3Mode::AllPairs).is_pass());
        }
    }
}
