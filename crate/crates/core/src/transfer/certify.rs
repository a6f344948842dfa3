use std::fmt;

use super::catenary::catenary_of_cone;
use crate::cone::{free_m_cone, VariantKind};
use crate::error::{Error, Result};
use crate::invariants::{catenary_data, g_invariant, CatenaryData, GInvariant};
use crate::iso::is_isomorphic;
use crate::matroid::Matroid;
use crate::zlattice::{configuration, configurations_equal};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LegStatus {
    Pass,
    Fail,
}

impl fmt::Display for LegStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LegStatus::Pass => "pass",
            LegStatus::Fail => "fail",
        })
    }
}

/// One claim of a certificate. `inconsistent` marks legs whose independent
/// computations disagreed with each other, which points at a defect rather
/// than at the pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Leg {
    pub claim: String,
    pub method: String,
    pub status: LegStatus,
    pub witness: Option<String>,
    pub inconsistent: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertificateReport {
    pub m: usize,
    pub legs: Vec<Leg>,
}

impl CertificateReport {
    pub fn all_pass(&self) -> bool {
        self.legs.iter().all(|l| l.status == LegStatus::Pass)
    }

    pub fn any_inconsistent(&self) -> bool {
        self.legs.iter().any(|l| l.inconsistent)
    }
}

fn status(ok: bool) -> LegStatus {
    if ok {
        LegStatus::Pass
    } else {
        LegStatus::Fail
    }
}

/// First composition on which two catenary data differ.
fn catenary_difference(a: &CatenaryData, b: &CatenaryData) -> Option<String> {
    if (a.n(), a.rank()) != (b.n(), b.rank()) {
        return Some(format!(
            "sizes and ranks ({}, {}) vs ({}, {})",
            a.n(),
            a.rank(),
            b.n(),
            b.rank()
        ));
    }
    a.counts()
        .keys()
        .chain(b.counts().keys())
        .find(|c| a.get(c.parts()) != b.get(c.parts()))
        .map(|c| format!("{c}: {} vs {}", a.get(c.parts()), b.get(c.parts())))
}

fn g_difference(a: &GInvariant, b: &GInvariant) -> Option<String> {
    if a == b {
        return None;
    }
    a.counts()
        .keys()
        .chain(b.counts().keys())
        .find(|s| a.get(s) != b.get(s))
        .map(|s| format!("[{s}]: {} vs {}", a.get(s), b.get(s)))
        .or_else(|| Some("sizes or ranks differ".into()))
}

/// Checks that `first` and `second` are non-isomorphic with equal catenary
/// data while their free `m`-cones have equal catenary data and different
/// configurations.
pub fn certify_pair(first: &Matroid, second: &Matroid, m: usize) -> Result<CertificateReport> {
    for source in [first, second] {
        if !source.is_loopless() {
            return Err(Error::SourceHasLoops);
        }
    }
    let cone_first = free_m_cone(first, m)?;
    let cone_second = free_m_cone(second, m)?;

    let iso = is_isomorphic(first, second)?;
    let distinct = Leg {
        claim: "the matroids are not isomorphic".into(),
        method: "backtracking search over element bijections".into(),
        status: status(iso.is_none()),
        witness: iso.map(|perm| format!("isomorphism {perm:?}")),
        inconsistent: false,
    };

    let cat_first = catenary_data(first);
    let cat_second = catenary_data(second);
    let cat_diff = catenary_difference(&cat_first, &cat_second);
    let mut method = "flags counted over the lattice of flats".to_string();
    let mut witness = cat_diff.clone();
    let mut inconsistent = false;
    if let (Ok(g_first), Ok(g_second)) = (g_invariant(first), g_invariant(second)) {
        method.push_str(", G-invariant counted over orderings");
        let g_diff = g_difference(&g_first, &g_second);
        // the two invariants determine each other
        inconsistent = g_diff.is_some() != cat_diff.is_some();
        if let Some(d) = g_diff {
            witness = Some(match witness {
                Some(w) => format!("{w}; {d}"),
                None => d,
            });
        }
    }
    let same_source = Leg {
        claim: "the matroids have the same catenary data and G-invariant".into(),
        method,
        status: status(cat_diff.is_none() && !inconsistent),
        witness,
        inconsistent,
    };

    let direct_first = catenary_data(cone_first.matroid());
    let direct_second = catenary_data(cone_second.matroid());
    let via_first = catenary_of_cone(&cat_first, m, VariantKind::Full)?;
    let via_second = catenary_of_cone(&cat_second, m, VariantKind::Full)?;
    let mut notes = Vec::new();
    let direct_diff = catenary_difference(&direct_first, &direct_second);
    if let Some(d) = &direct_diff {
        notes.push(format!("cones differ at {d}"));
    }
    let mut inconsistent = false;
    for (label, direct, via) in [
        ("first", &direct_first, &via_first),
        ("second", &direct_second, &via_second),
    ] {
        if let Some(d) = catenary_difference(direct, via) {
            inconsistent = true;
            notes.push(format!(
                "transfer disagrees with enumeration for the {label} cone at {d}"
            ));
        }
    }
    let same_cone = Leg {
        claim: format!("the free {m}-cones have the same catenary data"),
        method: "flags of each cone counted directly, and transferred from the source".into(),
        status: status(direct_diff.is_none() && !inconsistent),
        witness: (!notes.is_empty()).then(|| notes.join("; ")),
        inconsistent,
    };

    let config_first = configuration(cone_first.matroid());
    let config_second = configuration(cone_second.matroid());
    let equal = configurations_equal(&config_first, &config_second);
    let different = Leg {
        claim: format!("the free {m}-cones have different configurations"),
        method: "canonical forms of the labelled lattices of cyclic flats".into(),
        status: status(!equal),
        witness: Some(format!(
            "{} vs {}",
            config_first.canonical_form(),
            config_second.canonical_form()
        )),
        inconsistent: false,
    };

    Ok(CertificateReport {
        m,
        legs: vec![distinct, same_source, same_cone, different],
    })
}
