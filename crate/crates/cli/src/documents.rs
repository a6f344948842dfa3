//! JSON documents read and written by the command line.
//!
//! Output is canonical: object keys are sorted, sets list their elements in
//! ground-set order, families of sets are sorted, and integers that do not
//! fit in 64 bits are written as decimal strings. Parsing a canonical
//! document and writing it again reproduces the input byte for byte.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::{BigInt, BigUint};
use serde::de::{self, Deserializer, Visitor};
use serde::{Deserialize, Serialize, Serializer};

use freecone::invariants::{
    CatenaryData, CharacteristicPolynomial, Composition, GInvariant, RankSequence, SrcData, TuttePolynomial,
};
use freecone::subset::MAX_ELEMENTS;
use freecone::transfer::CertificateReport;
use freecone::zlattice::{validate_axioms, AxiomReport, Z3Mode};
use freecone::{Configuration, Matroid, Subset};

use crate::error::CliError;

/// Renders any document in the canonical layout.
pub fn to_canonical_json<T: Serialize>(doc: &T) -> String {
    // serde_json objects keep keys sorted, so going through a value sorts
    // struct fields as well
    let value = serde_json::to_value(doc).expect("documents serialize");
    let mut text = serde_json::to_string_pretty(&value).expect("values serialize");
    text.push('\n');
    text
}

/// Parses a document, reporting malformed JSON by line and column.
pub fn parse<'a, T: Deserialize<'a>>(text: &'a str) -> Result<T, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

/// A nonnegative count, written as a number when it fits in 64 bits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Count(pub BigUint);

impl Serialize for Count {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match u64::try_from(&self.0) {
            Ok(small) => serializer.serialize_u64(small),
            Err(_) => serializer.serialize_str(&self.0.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for Count {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct CountVisitor;

        impl Visitor<'_> for CountVisitor {
            type Value = Count;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a nonnegative integer or a decimal string")
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Count, E> {
                Ok(Count(v.into()))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<Count, E> {
                v.parse().map(Count).map_err(E::custom)
            }
        }

        deserializer.deserialize_any(CountVisitor)
    }
}

/// A signed coefficient, written as a number when it fits in 64 bits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coefficient(pub BigInt);

impl Serialize for Coefficient {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match i64::try_from(&self.0) {
            Ok(small) => serializer.serialize_i64(small),
            Err(_) => serializer.serialize_str(&self.0.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for Coefficient {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct CoefficientVisitor;

        impl Visitor<'_> for CoefficientVisitor {
            type Value = Coefficient;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an integer or a decimal string")
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Coefficient, E> {
                Ok(Coefficient(v.into()))
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Coefficient, E> {
                Ok(Coefficient(v.into()))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<Coefficient, E> {
                v.parse().map(Coefficient).map_err(E::custom)
            }
        }

        deserializer.deserialize_any(CoefficientVisitor)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FlatEntry {
    pub set: Vec<String>,
    pub rank: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatroidDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub ground_set: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cyclic_flats: Option<Vec<FlatEntry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bases: Option<Vec<Vec<String>>>,
}

impl MatroidDocument {
    /// The canonical document of `m`, listing its cyclic flats.
    pub fn from_matroid(m: &Matroid, name: Option<String>) -> Self {
        let names = |set: Subset| set.iter().map(|e| m.name(e).to_string()).collect();
        MatroidDocument {
            name,
            ground_set: m.names().to_vec(),
            cyclic_flats: Some(
                m.cyclic_flats()
                    .iter()
                    .map(|&(set, rank)| FlatEntry {
                        set: names(set),
                        rank: rank as i64,
                    })
                    .collect(),
            ),
            bases: None,
        }
    }

    fn subset(&self, lookup: &HashMap<&str, usize>, names: &[String]) -> Result<Subset, CliError> {
        let mut set = Subset::EMPTY;
        for name in names {
            let &e = lookup
                .get(name.as_str())
                .ok_or_else(|| CliError::Validation(format!("{name:?} is not in the ground set")))?;
            if set.contains(e) {
                return Err(CliError::Validation(format!("{name:?} is listed twice in a set")));
            }
            set = set.with(e);
        }
        Ok(set)
    }

    fn lookup(&self) -> Result<HashMap<&str, usize>, CliError> {
        if self.ground_set.len() > MAX_ELEMENTS {
            return Err(freecone::Error::TooManyElements(self.ground_set.len()).into());
        }
        let mut lookup = HashMap::new();
        for (e, name) in self.ground_set.iter().enumerate() {
            if lookup.insert(name.as_str(), e).is_some() {
                return Err(freecone::Error::DuplicateName(name.clone()).into());
            }
        }
        Ok(lookup)
    }

    /// The listed cyclic flats as subsets with ranks, without checking the
    /// axioms.
    pub fn family(&self) -> Result<Option<Vec<(Subset, usize)>>, CliError> {
        let lookup = self.lookup()?;
        let Some(flats) = &self.cyclic_flats else {
            return Ok(None);
        };
        let mut family = Vec::with_capacity(flats.len());
        for entry in flats {
            let rank = usize::try_from(entry.rank)
                .map_err(|_| CliError::Validation(format!("rank {} is negative", entry.rank)))?;
            family.push((self.subset(&lookup, &entry.set)?, rank));
        }
        Ok(Some(family))
    }

    pub fn to_matroid(&self) -> Result<Matroid, CliError> {
        match (&self.cyclic_flats, &self.bases) {
            (Some(_), None) => {
                let family = self.family()?.expect("cyclic flats are present");
                Ok(Matroid::from_cyclic_flats_named(self.ground_set.clone(), family)?)
            }
            (None, Some(bases)) => {
                let lookup = self.lookup()?;
                let bases = bases
                    .iter()
                    .map(|b| self.subset(&lookup, b))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(Matroid::from_bases_named(self.ground_set.clone(), bases)?)
            }
            _ => Err(CliError::Validation(
                "a matroid document lists exactly one of cyclic_flats and bases".into(),
            )),
        }
    }

    /// The axiom report of the document.
    pub fn validate(&self) -> Result<ValidationReport, CliError> {
        let violation = match (self.family()?, &self.bases) {
            (Some(family), None) => match validate_axioms(&family, Z3Mode::AllPairs) {
                AxiomReport::Pass => None,
                AxiomReport::Violation { axiom, first, second } => {
                    let names = |set: Subset| -> Vec<String> {
                        set.iter().map(|e| self.ground_set[e].clone()).collect()
                    };
                    Some(ValidationReport {
                        valid: false,
                        axiom: Some(axiom.to_string()),
                        sets: Some(vec![names(first), names(second)]),
                        message: None,
                        n: None,
                        rank: None,
                        cyclic_flats: None,
                    })
                }
            },
            _ => None,
        };
        if let Some(report) = violation {
            return Ok(report);
        }
        match self.to_matroid() {
            Ok(m) => Ok(ValidationReport {
                valid: true,
                axiom: None,
                sets: None,
                message: None,
                n: Some(m.len()),
                rank: Some(m.full_rank()),
                cyclic_flats: Some(m.cyclic_flats().len()),
            }),
            Err(CliError::Core(e @ freecone::Error::NotABasisSystem { .. })) => Ok(ValidationReport {
                valid: false,
                axiom: None,
                sets: None,
                message: Some(e.to_string()),
                n: None,
                rank: None,
                cyclic_flats: None,
            }),
            Err(e) => Err(e),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ValidationReport {
    pub valid: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub axiom: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sets: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cyclic_flats: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NodeEntry {
    pub id: usize,
    pub size: usize,
    pub rank: usize,
}

/// A configuration with nodes numbered canonically. `coloops` is left out
/// when zero.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigurationDocument {
    pub nodes: Vec<NodeEntry>,
    pub covers: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "is_zero")]
    pub coloops: usize,
}

fn is_zero(x: &usize) -> bool {
    *x == 0
}

impl ConfigurationDocument {
    pub fn from_configuration(config: &Configuration) -> Self {
        let config = config.canonical();
        ConfigurationDocument {
            nodes: (0..config.len())
                .map(|id| NodeEntry {
                    id,
                    size: config.size(id),
                    rank: config.rank(id),
                })
                .collect(),
            covers: config.covers().iter().map(|&(lo, hi)| [lo, hi]).collect(),
            coloops: config.coloops(),
        }
    }

    pub fn to_configuration(&self) -> Result<Configuration, CliError> {
        let mut position = HashMap::new();
        for (index, node) in self.nodes.iter().enumerate() {
            if position.insert(node.id, index).is_some() {
                return Err(CliError::Validation(format!("node id {} is repeated", node.id)));
            }
        }
        let mut covers = Vec::with_capacity(self.covers.len());
        for &[lo, hi] in &self.covers {
            let find = |id: usize| {
                position
                    .get(&id)
                    .copied()
                    .ok_or_else(|| CliError::Validation(format!("cover names missing node {id}")))
            };
            covers.push((find(lo)?, find(hi)?));
        }
        Ok(Configuration::new(
            self.nodes.iter().map(|n| n.size).collect(),
            self.nodes.iter().map(|n| n.rank).collect(),
            covers,
            self.coloops,
        )?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TutteTerm {
    pub x: usize,
    pub y: usize,
    pub coefficient: Coefficient,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SrcEntry {
    pub size: usize,
    pub rank: usize,
    pub coloops: usize,
    pub count: Count,
}

/// An invariant of a matroid. G-invariant counts are keyed by rank
/// sequence, catenary counts by composition, and Tutte terms are listed by
/// increasing exponents.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "invariant", rename_all = "kebab-case")]
pub enum InvariantDocument {
    G {
        n: usize,
        rank: usize,
        counts: BTreeMap<String, Count>,
    },
    Catenary {
        n: usize,
        rank: usize,
        counts: BTreeMap<String, Count>,
    },
    Tutte {
        terms: Vec<TutteTerm>,
    },
    Characteristic {
        coefficients: Vec<Coefficient>,
    },
    Src {
        n: usize,
        counts: Vec<SrcEntry>,
    },
}

impl InvariantDocument {
    pub fn g(g: &GInvariant) -> Self {
        InvariantDocument::G {
            n: g.n(),
            rank: g.rank(),
            counts: g
                .counts()
                .iter()
                .map(|(seq, c)| (seq.to_string(), Count(c.clone())))
                .collect(),
        }
    }

    pub fn catenary(cat: &CatenaryData) -> Self {
        InvariantDocument::Catenary {
            n: cat.n(),
            rank: cat.rank(),
            counts: cat
                .counts()
                .iter()
                .map(|(comp, c)| (comp.to_string(), Count(c.clone())))
                .collect(),
        }
    }

    pub fn tutte(t: &TuttePolynomial) -> Self {
        let mut terms: Vec<TutteTerm> = t
            .terms()
            .map(|((x, y), c)| TutteTerm {
                x,
                y,
                coefficient: Coefficient(c.clone()),
            })
            .collect();
        terms.sort_by_key(|t| (t.x, t.y));
        InvariantDocument::Tutte { terms }
    }

    pub fn characteristic(p: &CharacteristicPolynomial) -> Self {
        InvariantDocument::Characteristic {
            coefficients: p.coeffs().iter().cloned().map(Coefficient).collect(),
        }
    }

    pub fn src(src: &SrcData) -> Self {
        InvariantDocument::Src {
            n: src.n(),
            counts: src
                .counts()
                .iter()
                .map(|(&(size, rank, coloops), c)| SrcEntry {
                    size,
                    rank,
                    coloops,
                    count: Count(c.clone()),
                })
                .collect(),
        }
    }

    /// Every entry of the invariant under a readable key, for locating the
    /// first difference between two invariants.
    pub fn keyed_entries(&self) -> BTreeMap<String, String> {
        let mut out = BTreeMap::new();
        match self {
            InvariantDocument::G { n, rank, counts } | InvariantDocument::Catenary { n, rank, counts } => {
                out.insert("n".to_string(), n.to_string());
                out.insert("rank".to_string(), rank.to_string());
                for (key, c) in counts {
                    out.insert(key.clone(), c.0.to_string());
                }
            }
            InvariantDocument::Tutte { terms } => {
                for t in terms {
                    out.insert(format!("x^{} y^{}", t.x, t.y), t.coefficient.0.to_string());
                }
            }
            InvariantDocument::Characteristic { coefficients } => {
                for (i, c) in coefficients.iter().enumerate() {
                    out.insert(format!("x^{i}"), c.0.to_string());
                }
            }
            InvariantDocument::Src { n, counts } => {
                out.insert("n".to_string(), n.to_string());
                for e in counts {
                    out.insert(
                        format!("({},{},{})", e.size, e.rank, e.coloops),
                        e.count.0.to_string(),
                    );
                }
            }
        }
        out
    }

    /// Rebuilds the G-invariant, checking each key is a rank sequence.
    pub fn to_g(&self) -> Result<GInvariant, CliError> {
        let InvariantDocument::G { n, rank, counts } = self else {
            return Err(CliError::Validation("not a G-invariant document".into()));
        };
        let counts = counts
            .iter()
            .map(|(key, c)| {
                key.parse::<RankSequence>()
                    .map(|seq| (seq, c.0.clone()))
                    .map_err(CliError::Validation)
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(GInvariant::from_counts(*n, *rank, counts)?)
    }

    /// Rebuilds catenary data from keys of the form `(a0,a1,...)`.
    pub fn to_catenary(&self) -> Result<CatenaryData, CliError> {
        let InvariantDocument::Catenary { n, rank, counts } = self else {
            return Err(CliError::Validation("not a catenary document".into()));
        };
        let counts = counts
            .iter()
            .map(|(key, c)| {
                let inner = key
                    .strip_prefix('(')
                    .and_then(|k| k.strip_suffix(')'))
                    .ok_or_else(|| CliError::Validation(format!("{key:?} is not a composition")))?;
                let parts = inner
                    .split(',')
                    .map(|p| p.parse::<usize>())
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|e| CliError::Validation(format!("{key:?}: {e}")))?;
                Ok((Composition(parts), c.0.clone()))
            })
            .collect::<Result<Vec<_>, CliError>>()?;
        Ok(CatenaryData::from_counts(*n, *rank, counts)?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LegEntry {
    pub claim: String,
    pub method: String,
    pub status: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    pub inconsistent: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertificateDocument {
    pub m: usize,
    pub all_pass: bool,
    pub legs: Vec<LegEntry>,
}

impl CertificateDocument {
    pub fn from_report(report: &CertificateReport) -> Self {
        CertificateDocument {
            m: report.m,
            all_pass: report.all_pass(),
            legs: report
                .legs
                .iter()
                .map(|leg| LegEntry {
                    claim: leg.claim.clone(),
                    method: leg.method.clone(),
                    status: leg.status.to_string(),
                    witness: leg.witness.clone(),
                    inconsistent: leg.inconsistent,
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Difference {
    pub key: String,
    pub left: String,
    pub right: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComparisonDocument {
    pub kind: String,
    pub equal: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub first_difference: Option<Difference>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use freecone::catalog;
    use freecone::invariants::{catenary_data, g_invariant};

    #[test]
    fn wide_counts_become_strings() {
        let wide = Count(BigUint::from(u64::MAX) + 1u32);
        assert_eq!(serde_json::to_string(&wide).unwrap(), "\"18446744073709551616\"");
        assert_eq!(serde_json::to_string(&Count(7u32.into())).unwrap(), "7");
        let back: Count = serde_json::from_str("\"18446744073709551616\"").unwrap();
        assert_eq!(back, wide);
        let negative = Coefficient(BigInt::from(i64::MIN) - 1);
        let text = serde_json::to_string(&negative).unwrap();
        assert_eq!(serde_json::from_str::<Coefficient>(&text).unwrap(), negative);
        assert_eq!(serde_json::to_string(&Coefficient((-3).into())).unwrap(), "-3");
    }

    #[test]
    fn keys_are_sorted() {
        let doc = MatroidDocument::from_matroid(&catalog::m1(), Some("M1".into()));
        let text = to_canonical_json(&doc);
        let cyclic = text.find("\"cyclic_flats\"").unwrap();
        let ground = text.find("\"ground_set\"").unwrap();
        let name = text.find("\"name\"").unwrap();
        assert!(cyclic < ground && ground < name);
    }

    #[test]
    fn invariants_rebuild() {
        let m = catalog::m2();
        let g = g_invariant(&m).unwrap();
        assert_eq!(InvariantDocument::g(&g).to_g().unwrap(), g);
        let cat = catenary_data(&m);
        assert_eq!(InvariantDocument::catenary(&cat).to_catenary().unwrap(), cat);
    }

    #[test]
    fn configuration_round_trip() {
        let config = Configuration::of(&catalog::m1());
        let doc = ConfigurationDocument::from_configuration(&config);
        assert_eq!(doc.to_configuration().unwrap(), config);
    }

    #[test]
    fn parse_errors_carry_positions() {
        let err = parse::<MatroidDocument>("{\n  \"ground_set\": [1]\n}").unwrap_err();
        assert!(matches!(err, CliError::Parse { line: 2, .. }), "{err:?}");
    }

    #[test]
    fn both_or_neither_family_is_rejected() {
        let neither = MatroidDocument {
            name: None,
            ground_set: vec![],
            cyclic_flats: None,
            bases: None,
        };
        assert!(matches!(neither.to_matroid(), Err(CliError::Validation(_))));
    }
}
