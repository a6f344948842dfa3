//! The free m-cone of a matroid, its three deletion variants and the Higgs
//! lift.
//!
//! For a loopless matroid `M` on `E = {0..n}` the cone lives on
//! `E ∪ T ∪ {a}` where every `e` has a fiber `T_e` of `m` new elements and
//! `a` is the tip. Its cyclic flats are those of `M`, with the same ranks,
//! together with the cones `q(F)` of the nonempty flats `F` of `M`, each of
//! rank `r(F) + 1`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::matroid::Matroid;
use crate::subset::{Subset, MAX_ELEMENTS};

/// An element of a cone, in terms of the source matroid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ConeElement {
    /// The copy of a source element.
    Base(usize),
    /// The `j`-th element (`1 <= j <= m`) of the fiber over a source element.
    Fiber(usize, usize),
    Tip,
}

/// Which part of the cone is kept.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VariantKind {
    Full,
    /// The tip is deleted.
    Tipless,
    /// The base copy of the source is deleted.
    Baseless,
    /// Both the tip and the base are deleted.
    TiplessBaseless,
}

impl VariantKind {
    pub const ALL: [VariantKind; 4] = [
        VariantKind::Full,
        VariantKind::Tipless,
        VariantKind::Baseless,
        VariantKind::TiplessBaseless,
    ];

    pub fn keeps_tip(self) -> bool {
        matches!(self, VariantKind::Full | VariantKind::Baseless)
    }

    pub fn keeps_base(self) -> bool {
        matches!(self, VariantKind::Full | VariantKind::Tipless)
    }

    /// Smallest `m` for which the configuration of this variant determines
    /// the source matroid.
    pub fn min_reconstructible_m(self) -> usize {
        match self {
            VariantKind::Full => 1,
            VariantKind::Tipless | VariantKind::Baseless => 2,
            VariantKind::TiplessBaseless => 3,
        }
    }
}

impl fmt::Display for VariantKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            VariantKind::Full => "full",
            VariantKind::Tipless => "tipless",
            VariantKind::Baseless => "baseless",
            VariantKind::TiplessBaseless => "tipless-baseless",
        })
    }
}

impl FromStr for VariantKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "full" => Ok(VariantKind::Full),
            "tipless" => Ok(VariantKind::Tipless),
            "baseless" => Ok(VariantKind::Baseless),
            "tipless-baseless" | "tipless_baseless" => Ok(VariantKind::TiplessBaseless),
            other => Err(format!("unknown variant {other:?}")),
        }
    }
}

/// Name given to the tip of a cone.
pub const TIP_NAME: &str = "@tip";

/// The free m-cone of a loopless matroid.
///
/// Element ids: base copies are `0..n`, fiber element `j` over `e` is
/// `n + e*m + (j-1)`, and the tip is `n*(m+1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConeMatroid {
    source: Matroid,
    m: usize,
    matroid: Matroid,
}

/// Builds the free m-cone of `source`.
pub fn free_m_cone(source: &Matroid, m: usize) -> Result<ConeMatroid> {
    if m == 0 {
        return Err(Error::ZeroMultiplicity);
    }
    if !source.is_loopless() {
        return Err(Error::SourceHasLoops);
    }
    let n = source.len();
    let size = (m + 1) * n + 1;
    if size > MAX_ELEMENTS {
        return Err(Error::TooManyElements(size));
    }
    let mut names: Vec<String> = source.names().to_vec();
    for e in 0..n {
        for j in 1..=m {
            names.push(format!("{}#{j}", source.name(e)));
        }
    }
    names.push(TIP_NAME.to_string());
    let mut cone = ConeMatroid {
        source: source.clone(),
        m,
        matroid: Matroid::uniform(0, 0),
    };
    let mut family: Vec<(Subset, usize)> = source.cyclic_flats().to_vec();
    for (flat, rank) in source.all_flats() {
        if !flat.is_empty() {
            family.push((cone.q(flat), rank + 1));
        }
    }
    cone.matroid = Matroid::from_cyclic_flats_unchecked(names, family);
    Ok(cone)
}

impl ConeMatroid {
    pub fn source(&self) -> &Matroid {
        &self.source
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// The cone as a plain matroid.
    pub fn matroid(&self) -> &Matroid {
        &self.matroid
    }

    pub fn into_matroid(self) -> Matroid {
        self.matroid
    }

    fn n(&self) -> usize {
        self.source.len()
    }

    pub fn index(&self, element: ConeElement) -> usize {
        match element {
            ConeElement::Base(e) => e,
            ConeElement::Fiber(e, j) => {
                assert!(1 <= j && j <= self.m && e < self.n());
                self.n() + e * self.m + (j - 1)
            }
            ConeElement::Tip => self.tip(),
        }
    }

    pub fn element(&self, index: usize) -> ConeElement {
        let n = self.n();
        if index < n {
            ConeElement::Base(index)
        } else if index == self.tip() {
            ConeElement::Tip
        } else {
            assert!(index < self.tip());
            let offset = index - n;
            ConeElement::Fiber(offset / self.m, offset % self.m + 1)
        }
    }

    pub fn tip(&self) -> usize {
        self.n() * (self.m + 1)
    }

    /// The base copy `E` of the source ground set.
    pub fn base(&self) -> Subset {
        Subset::full(self.n())
    }

    /// The fiber `T_e`.
    pub fn fiber(&self, e: usize) -> Subset {
        let start = self.n() + e * self.m;
        (start..start + self.m).collect()
    }

    /// All fiber elements `T`.
    pub fn fibers(&self) -> Subset {
        Subset::full(self.tip()) - self.base()
    }

    /// The cone `S ∪ {a} ∪ T_S` over a set of source elements.
    pub fn q(&self, s: Subset) -> Subset {
        s.iter().fold(s.with(self.tip()), |acc, e| acc | self.fiber(e))
    }

    /// The source elements a set of cone elements lies over.
    pub fn p(&self, s: Subset) -> Subset {
        let n = self.n();
        let fibers: Subset = (s & self.fibers()).iter().map(|x| (x - n) / self.m).collect();
        (s & self.base()) | fibers
    }

    /// Elements removed to form the given variant.
    pub fn deleted(&self, kind: VariantKind) -> Subset {
        let tip = Subset::singleton(self.tip());
        match kind {
            VariantKind::Full => Subset::EMPTY,
            VariantKind::Tipless => tip,
            VariantKind::Baseless => self.base(),
            VariantKind::TiplessBaseless => self.base() | tip,
        }
    }

    /// The variant as a matroid; element names are kept.
    pub fn variant(&self, kind: VariantKind) -> Matroid {
        self.matroid.delete(self.deleted(kind))
    }

    /// Flat test through the structural description of cone flats: a flat
    /// containing the tip is the cone of a flat of the source; a flat
    /// avoiding it meets the base in a flat, lies over distinct source
    /// elements, and its fiber part projects to elements independent of
    /// that base flat.
    pub fn is_flat_in_cone(&self, f: Subset) -> bool {
        let on_base = f & self.base();
        if !self.source.is_flat(on_base) {
            return false;
        }
        if f.contains(self.tip()) {
            return f == self.q(on_base);
        }
        if self.p(f).len() != f.len() {
            return false;
        }
        let lifted = self.p(f & self.fibers());
        self.source.rank(on_base | lifted) == self.source.rank(on_base) + lifted.len()
    }
}

/// The Higgs lift, with rank `min(r(X) + 1, |X|)`.
pub fn higgs_lift(m: &Matroid) -> Matroid {
    Matroid::from_rank_fn(m.names().to_vec(), |x| (m.rank(x) + 1).min(x.len()))
        .expect("the Higgs lift of a matroid is a matroid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::iso::is_isomorphic;
    use crate::zlattice::{validate_axioms, Z3Mode};

    #[test]
    fn element_indexing_round_trips() {
        let q = free_m_cone(&catalog::m1(), 2).unwrap();
        assert_eq!(q.matroid().len(), 19);
        for i in 0..19 {
            assert_eq!(q.index(q.element(i)), i);
        }
        assert_eq!(q.element(18), ConeElement::Tip);
        assert_eq!(q.matroid().name(q.index(ConeElement::Fiber(2, 2))), "3#2");
        assert_eq!(q.matroid().name(18), TIP_NAME);
    }

    #[test]
    fn q_and_p() {
        let q = free_m_cone(&catalog::m1(), 1).unwrap();
        assert_eq!(q.q(Subset::EMPTY), Subset::singleton(q.tip()));
        let e = Subset::singleton(0);
        assert_eq!(
            q.q(e),
            Subset::from_iter([0, q.index(ConeElement::Fiber(0, 1)), q.tip()])
        );
        let s = Subset::from_iter([q.index(ConeElement::Fiber(2, 1)), 5]);
        assert_eq!(q.p(s), Subset::from_iter([2, 5]));
        for s in q.base().subsets() {
            assert_eq!(q.p(q.q(s)), s);
            assert_eq!(q.q(s).len(), 2 * s.len() + 1);
        }
    }

    #[test]
    fn cone_of_a_point_is_a_three_point_line() {
        let q = free_m_cone(&Matroid::uniform(1, 1), 1).unwrap();
        assert_eq!(q.matroid().cyclic_flats(), Matroid::uniform(2, 3).cyclic_flats());
    }

    #[test]
    fn plane_through_tip() {
        let q = free_m_cone(&catalog::m1(), 1).unwrap();
        let plane = q.q(Subset::from_iter([2, 5]));
        assert_eq!(plane.len(), 5);
        assert!(q.matroid().cyclic_flats().contains(&(plane, 3)));
    }

    #[test]
    fn rejects_loops_and_zero_m() {
        let looped = Matroid::from_cyclic_flats(2, [(Subset::singleton(0), 0)]).unwrap();
        assert_eq!(free_m_cone(&looped, 1).unwrap_err(), Error::SourceHasLoops);
        assert_eq!(
            free_m_cone(&catalog::m1(), 0).unwrap_err(),
            Error::ZeroMultiplicity
        );
    }

    #[test]
    fn cone_passes_axioms_and_restricts_to_source() {
        for (name, m) in catalog::fixtures() {
            for mult in 1..=2 {
                let q = free_m_cone(&m, mult).unwrap();
                assert!(
                    validate_axioms(q.matroid().cyclic_flats(), Z3Mode::AllPairs).is_pass(),
                    "{name}"
                );
                assert_eq!(q.matroid().full_rank(), m.full_rank() + 1);
                assert_eq!(q.matroid().restrict(q.base()), m, "{name}");
                let baseless = q.variant(VariantKind::Baseless);
                assert_eq!(baseless.len(), mult * m.len() + 1);
                assert_eq!(q.variant(VariantKind::Tipless).full_rank(), m.full_rank() + 1);
            }
        }
    }

    #[test]
    fn tipless_baseless_one_cone_is_higgs_lift() {
        for (name, m) in catalog::fixtures() {
            let q = free_m_cone(&m, 1).unwrap();
            let lift = higgs_lift(&m);
            assert!(
                is_isomorphic(&q.variant(VariantKind::TiplessBaseless), &lift)
                    .unwrap()
                    .is_some(),
                "{name}"
            );
        }
    }

    #[test]
    fn higgs_lift_examples() {
        assert_eq!(higgs_lift(&Matroid::uniform(2, 3)), Matroid::uniform(3, 3));
        assert_eq!(higgs_lift(&Matroid::uniform(2, 2)), Matroid::uniform(2, 2));
        let lift = higgs_lift(&catalog::m1());
        assert_eq!(lift.full_rank(), 4);
        assert_eq!(lift.rank(Subset::from_iter([0, 1, 2])), 3);
    }

    #[test]
    fn structural_flat_test_agrees_with_closure() {
        for m in [catalog::m1(), catalog::m2(), Matroid::uniform(2, 4)] {
            let q = free_m_cone(&m, 1).unwrap();
            let qm = q.matroid();
            for f in qm.ground().subsets() {
                assert_eq!(q.is_flat_in_cone(f), qm.is_flat(f), "{}", qm.display_set(f));
            }
        }
        let q = free_m_cone(&catalog::m1(), 1).unwrap();
        let pair = Subset::from_iter([0, q.index(ConeElement::Fiber(0, 1))]);
        assert!(!q.is_flat_in_cone(pair));
        assert!(q.is_flat_in_cone(Subset::EMPTY));
    }

    #[test]
    fn projection_rank_drops_exactly_when_tip_in_closure() {
        let q = free_m_cone(&catalog::m2(), 1).unwrap();
        let qm = q.matroid();
        for s in qm.ground().subsets() {
            let expected = if qm.closure(s).contains(q.tip()) {
                qm.rank(s) - 1
            } else {
                qm.rank(s)
            };
            assert_eq!(q.source().rank(q.p(s)), expected);
        }
    }

    #[test]
    fn variant_kind_parses() {
        for kind in VariantKind::ALL {
            assert_eq!(kind.to_string().parse::<VariantKind>().unwrap(), kind);
        }
        assert!("half".parse::<VariantKind>().is_err());
    }
}
