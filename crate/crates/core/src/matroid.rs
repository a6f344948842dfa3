//! The matroid kernel.
//!
//! A [`Matroid`] is stored as its cyclic flats together with their ranks; this
//! determines the rank of every subset through
//! `r(X) = min { r(Z) + |X - Z| : Z cyclic flat }`.
//! Everything else (closure, flats, bases, minors) is derived from that rank
//! oracle.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::subset::{sort_canonical, Subset, MAX_ELEMENTS};
use crate::zlattice::{validate_axioms, AxiomReport, Z3Mode};

/// The flats of a matroid grouped by rank, with their cover relation.
#[derive(Debug)]
pub struct FlatLattice {
    layers: Vec<Vec<Subset>>,
    /// `up[i][j]` lists the indices in `layers[i + 1]` of the flats covering
    /// `layers[i][j]`.
    up: Vec<Vec<Vec<usize>>>,
}

impl FlatLattice {
    /// Builds the lattice of flats of the matroid on `n` elements with the
    /// given rank function by repeatedly closing `F + e` over the flats `F`
    /// of the previous rank.
    pub fn build(n: usize, rank: impl Fn(Subset) -> usize) -> Self {
        let ground = Subset::full(n);
        let close = |x: Subset, r: usize| -> Subset {
            (ground - x)
                .iter()
                .filter(|&e| rank(x.with(e)) == r)
                .fold(x, |acc, e| acc.with(e))
        };
        let mut layers = vec![vec![close(Subset::EMPTY, 0)]];
        let mut up = Vec::new();
        loop {
            let current = layers.last().unwrap();
            if current.len() == 1 && current[0] == ground {
                break;
            }
            let i = layers.len() - 1;
            let mut index: HashMap<Subset, usize> = HashMap::new();
            let mut next: Vec<Subset> = Vec::new();
            let mut covers: Vec<Vec<usize>> = Vec::with_capacity(current.len());
            for &flat in current {
                let mut remaining = ground - flat;
                let mut above = Vec::new();
                while let Some(e) = remaining.first() {
                    let cover = close(flat.with(e), i + 1);
                    remaining = remaining - cover;
                    let id = *index.entry(cover).or_insert_with(|| {
                        next.push(cover);
                        next.len() - 1
                    });
                    above.push(id);
                }
                covers.push(above);
            }
            // canonical order within the new layer
            let mut order: Vec<usize> = (0..next.len()).collect();
            order.sort_by(|&a, &b| next[a].canonical_cmp(next[b]));
            let mut position = vec![0; next.len()];
            for (new, &old) in order.iter().enumerate() {
                position[old] = new;
            }
            for above in &mut covers {
                for id in above.iter_mut() {
                    *id = position[*id];
                }
                above.sort_unstable();
            }
            layers.push(order.iter().map(|&old| next[old]).collect());
            up.push(covers);
        }
        up.push(vec![Vec::new()]);
        FlatLattice { layers, up }
    }

    /// Rank of the matroid.
    pub fn rank(&self) -> usize {
        self.layers.len() - 1
    }

    pub fn layer(&self, rank: usize) -> &[Subset] {
        self.layers.get(rank).map_or(&[], Vec::as_slice)
    }

    /// Indices, in `layer(rank + 1)`, of the flats covering `layer(rank)[index]`.
    pub fn covers_above(&self, rank: usize, index: usize) -> &[usize] {
        &self.up[rank][index]
    }

    pub fn len(&self) -> usize {
        self.layers.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// All flats with their ranks, ordered by rank and then canonically.
    pub fn iter(&self) -> impl Iterator<Item = (Subset, usize)> + '_ {
        self.layers
            .iter()
            .enumerate()
            .flat_map(|(r, layer)| layer.iter().map(move |&f| (f, r)))
    }
}

/// A matroid on the ground set `{0, ..., n-1}`.
#[derive(Clone)]
pub struct Matroid {
    names: Vec<String>,
    cyclic_flats: Vec<(Subset, usize)>,
    flats: OnceLock<Arc<FlatLattice>>,
}

impl PartialEq for Matroid {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names && self.cyclic_flats == other.cyclic_flats
    }
}

impl Eq for Matroid {}

impl fmt::Debug for Matroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Matroid")
            .field("names", &self.names)
            .field("cyclic_flats", &self.cyclic_flats)
            .finish()
    }
}

/// Element names `"1"`, `"2"`, ..., `"n"`.
pub fn default_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| i.to_string()).collect()
}

fn check_names(names: &[String]) -> Result<()> {
    if names.len() > MAX_ELEMENTS {
        return Err(Error::TooManyElements(names.len()));
    }
    let mut seen = HashSet::new();
    for name in names {
        if !seen.insert(name.as_str()) {
            return Err(Error::DuplicateName(name.clone()));
        }
    }
    Ok(())
}

fn check_range(set: Subset, n: usize) -> Result<()> {
    match (set - Subset::full(n)).first() {
        Some(element) => Err(Error::ElementOutOfRange { element, n }),
        None => Ok(()),
    }
}

/// All `k`-element subsets of `{0, ..., n-1}` in increasing numeric order.
pub fn combinations(n: usize, k: usize) -> impl Iterator<Item = Subset> {
    assert!(n < MAX_ELEMENTS);
    let limit = 1u64 << n;
    let start = if k > n { None } else { Some((1u64 << k) - 1) };
    std::iter::successors(start, move |&x| {
        if x == 0 {
            return None;
        }
        // Gosper's hack
        let c = x & x.wrapping_neg();
        let r = x + c;
        let next = (((r ^ x) >> 2) / c) | r;
        (next < limit).then_some(next)
    })
    .take_while(move |&x| x < limit)
    .map(Subset::from_bits)
}

impl Matroid {
    /// Builds the matroid with the given cyclic flats and ranks, checking the
    /// cyclic-flat axioms.
    pub fn from_cyclic_flats(n: usize, family: impl IntoIterator<Item = (Subset, usize)>) -> Result<Self> {
        if n > MAX_ELEMENTS {
            return Err(Error::TooManyElements(n));
        }
        Self::from_cyclic_flats_named(default_names(n), family)
    }

    pub fn from_cyclic_flats_named(
        names: Vec<String>,
        family: impl IntoIterator<Item = (Subset, usize)>,
    ) -> Result<Self> {
        check_names(&names)?;
        let family: Vec<(Subset, usize)> = family.into_iter().collect();
        for &(set, _) in &family {
            check_range(set, names.len())?;
        }
        if let AxiomReport::Violation { axiom, first, second } = validate_axioms(&family, Z3Mode::AllPairs) {
            return Err(Error::AxiomViolation { axiom, first, second });
        }
        Ok(Self::from_cyclic_flats_unchecked(names, family))
    }

    /// Skips axiom validation outside debug builds. Callers must pass a family
    /// known to satisfy the axioms.
    pub(crate) fn from_cyclic_flats_unchecked(names: Vec<String>, mut family: Vec<(Subset, usize)>) -> Self {
        family.sort_by(|a, b| a.0.canonical_cmp(b.0));
        debug_assert_eq!(
            validate_axioms(&family, Z3Mode::AllPairs),
            AxiomReport::Pass,
            "cyclic flats {family:?}"
        );
        Matroid {
            names,
            cyclic_flats: family,
            flats: OnceLock::new(),
        }
    }

    /// Extracts the matroid whose rank function is `rank` by scanning its
    /// flats for the cyclic ones. `rank` must be a matroid rank function on
    /// subsets of `{0, ..., names.len()-1}`.
    pub fn from_rank_fn(names: Vec<String>, rank: impl Fn(Subset) -> usize) -> Result<Self> {
        check_names(&names)?;
        let lattice = FlatLattice::build(names.len(), &rank);
        let family: Vec<(Subset, usize)> = lattice
            .iter()
            .filter(|&(flat, r)| flat.iter().all(|e| rank(flat.without(e)) == r))
            .collect();
        let matroid = Self::from_cyclic_flats_named(names, family)?;
        let _ = matroid.flats.set(Arc::new(lattice));
        Ok(matroid)
    }

    /// Builds a matroid from its bases, checking the exchange axiom.
    pub fn from_bases(n: usize, bases: impl IntoIterator<Item = Subset>) -> Result<Self> {
        if n > MAX_ELEMENTS {
            return Err(Error::TooManyElements(n));
        }
        Self::from_bases_named(default_names(n), bases)
    }

    pub fn from_bases_named(names: Vec<String>, bases: impl IntoIterator<Item = Subset>) -> Result<Self> {
        check_names(&names)?;
        let mut bases: Vec<Subset> = bases.into_iter().collect();
        bases.sort_by(|a, b| a.canonical_cmp(*b));
        bases.dedup();
        let Some(&first) = bases.first() else {
            return Err(Error::NotABasisSystem {
                first: Subset::EMPTY,
                second: Subset::EMPTY,
            });
        };
        for &b in &bases {
            check_range(b, names.len())?;
            if b.len() != first.len() {
                return Err(Error::NotABasisSystem { first, second: b });
            }
        }
        let lookup: HashSet<Subset> = bases.iter().copied().collect();
        for &b1 in &bases {
            for &b2 in &bases {
                for x in (b1 - b2).iter() {
                    let exchanged = (b2 - b1).iter().any(|y| lookup.contains(&b1.without(x).with(y)));
                    if !exchanged {
                        return Err(Error::NotABasisSystem {
                            first: b1,
                            second: b2,
                        });
                    }
                }
            }
        }
        Self::from_rank_fn(names, |x| bases.iter().map(|b| (*b & x).len()).max().unwrap_or(0))
    }

    /// The uniform matroid `U_{k,n}`.
    pub fn uniform(k: usize, n: usize) -> Self {
        assert!(k <= n && n <= MAX_ELEMENTS);
        let family = if k == n {
            vec![(Subset::EMPTY, 0)]
        } else if k == 0 {
            vec![(Subset::full(n), 0)]
        } else {
            vec![(Subset::EMPTY, 0), (Subset::full(n), k)]
        };
        Self::from_cyclic_flats_unchecked(default_names(n), family)
    }

    /// Replaces the element names.
    pub fn with_names(mut self, names: Vec<String>) -> Result<Self> {
        assert_eq!(names.len(), self.names.len());
        check_names(&names)?;
        self.names = names;
        Ok(self)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, e: usize) -> &str {
        &self.names[e]
    }

    pub fn element(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn ground(&self) -> Subset {
        Subset::full(self.len())
    }

    /// Cyclic flats with their ranks, in canonical order.
    pub fn cyclic_flats(&self) -> &[(Subset, usize)] {
        &self.cyclic_flats
    }

    pub fn rank(&self, x: Subset) -> usize {
        self.cyclic_flats
            .iter()
            .map(|&(z, r)| r + (x - z).len())
            .min()
            .expect("a matroid has at least one cyclic flat")
    }

    /// Rank of the whole ground set.
    pub fn full_rank(&self) -> usize {
        self.rank(self.ground())
    }

    pub fn closure(&self, x: Subset) -> Subset {
        let r = self.rank(x);
        (self.ground() - x)
            .iter()
            .filter(|&e| self.rank(x.with(e)) == r)
            .fold(x, |acc, e| acc.with(e))
    }

    pub fn is_flat(&self, x: Subset) -> bool {
        self.closure(x) == x
    }

    pub fn is_independent(&self, x: Subset) -> bool {
        self.rank(x) == x.len()
    }

    /// Elements of `x` whose removal lowers the rank of `x`.
    pub fn coloops_of_restriction(&self, x: Subset) -> Subset {
        let r = self.rank(x);
        x.iter().filter(|&e| self.rank(x.without(e)) < r).collect()
    }

    pub fn is_cyclic(&self, x: Subset) -> bool {
        self.coloops_of_restriction(x).is_empty()
    }

    pub fn loops(&self) -> Subset {
        self.cyclic_flats[0].0
    }

    pub fn is_loopless(&self) -> bool {
        self.loops().is_empty()
    }

    pub fn flat_lattice(&self) -> Arc<FlatLattice> {
        self.flats
            .get_or_init(|| Arc::new(FlatLattice::build(self.len(), |x| self.rank(x))))
            .clone()
    }

    pub fn flats_of_rank(&self, rank: usize) -> Vec<Subset> {
        self.flat_lattice().layer(rank).to_vec()
    }

    /// All flats with their ranks, ordered by rank.
    pub fn all_flats(&self) -> Vec<(Subset, usize)> {
        self.flat_lattice().iter().collect()
    }

    /// All bases, by scanning the subsets of size `r(M)`.
    pub fn bases(&self) -> Vec<Subset> {
        combinations(self.len(), self.full_rank())
            .filter(|&b| self.is_independent(b))
            .collect()
    }

    /// The deletion `M \ d`; surviving elements keep their names and order.
    pub fn delete(&self, d: Subset) -> Matroid {
        let keep = self.ground() - d;
        let mut new_id = vec![usize::MAX; self.len()];
        for (i, e) in keep.iter().enumerate() {
            new_id[e] = i;
        }
        let mut family: Vec<(Subset, usize)> = Vec::new();
        for &(z, _) in &self.cyclic_flats {
            let rest = z - d;
            if self.is_cyclic(rest) {
                let item = (rest.map(|e| new_id[e]), self.rank(rest));
                if !family.contains(&item) {
                    family.push(item);
                }
            }
        }
        let names = keep.iter().map(|e| self.names[e].clone()).collect();
        Self::from_cyclic_flats_unchecked(names, family)
    }

    /// The restriction `M | x`.
    pub fn restrict(&self, x: Subset) -> Matroid {
        self.delete(self.ground() - x)
    }

    /// Renumbers the elements: element `e` becomes `perm[e]`, keeping its name.
    pub fn relabel(&self, perm: &[usize]) -> Matroid {
        assert_eq!(perm.len(), self.len());
        let mut names = vec![String::new(); self.len()];
        for (e, &to) in perm.iter().enumerate() {
            names[to] = self.names[e].clone();
        }
        let family = self
            .cyclic_flats
            .iter()
            .map(|&(z, r)| (z.map(|e| perm[e]), r))
            .collect();
        Self::from_cyclic_flats_unchecked(names, family)
    }

    /// Looks up names and returns the subset, or `None` for an unknown name.
    pub fn subset_of<'a>(&self, names: impl IntoIterator<Item = &'a str>) -> Option<Subset> {
        names
            .into_iter()
            .map(|n| self.element(n))
            .collect::<Option<Vec<_>>>()
            .map(|ids| ids.into_iter().collect())
    }

    /// Formats a subset with element names, e.g. `{1,2,3}`.
    pub fn display_set(&self, x: Subset) -> String {
        let parts: Vec<&str> = x.iter().map(|e| self.name(e)).collect();
        format!("{{{}}}", parts.join(","))
    }

    /// Cyclic flats sorted canonically; identical to [`Matroid::cyclic_flats`].
    pub fn canonical_cyclic_flats(&self) -> Vec<Subset> {
        let mut sets: Vec<Subset> = self.cyclic_flats.iter().map(|&(z, _)| z).collect();
        sort_canonical(&mut sets);
        sets
    }
}
