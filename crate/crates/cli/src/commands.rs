//! The command surface. Each command reads its inputs, writes one canonical
//! JSON document and picks an exit code.

use std::io::Read;

use clap::{Args, Parser, Subcommand, ValueEnum};

use freecone::invariants::{
    catenary_data, characteristic_with, g_invariant_with, src_data_with, tutte_with, Limits,
};
use freecone::transfer::{
    catenary_of_cone, certify_pair, reconstruct_from_cone_config, tutte_of_cone_from_src,
};
use freecone::{configuration, configurations_equal, free_m_cone, higgs_lift, Matroid, VariantKind};

use crate::documents::{
    parse, to_canonical_json, CertificateDocument, ComparisonDocument, ConfigurationDocument, Difference,
    InvariantDocument, MatroidDocument,
};
use crate::error::CliError;

pub const EXIT_OK: u8 = 0;
pub const EXIT_INVALID: u8 = 1;
pub const EXIT_UNEQUAL: u8 = 2;
pub const EXIT_INCONSISTENT: u8 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "freecone",
    version,
    about = "Free m-cones of matroids and their invariants"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOptions,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalOptions {
    /// Worker threads for parallel enumeration; all cores when omitted.
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    /// Largest number of subsets an enumeration may visit.
    #[arg(long, global = true, default_value_t = Limits::default().max_subsets)]
    pub max_subsets: u128,

    /// Largest number of orderings the G-invariant may account for.
    #[arg(long, global = true, default_value_t = Limits::default().max_perms)]
    pub max_perms: u128,
}

impl GlobalOptions {
    pub fn limits(&self) -> Limits {
        Limits {
            max_subsets: self.max_subsets,
            max_perms: self.max_perms,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Variant {
    Full,
    Tipless,
    Baseless,
    TiplessBaseless,
}

impl From<Variant> for VariantKind {
    fn from(v: Variant) -> Self {
        match v {
            Variant::Full => VariantKind::Full,
            Variant::Tipless => VariantKind::Tipless,
            Variant::Baseless => VariantKind::Baseless,
            Variant::TiplessBaseless => VariantKind::TiplessBaseless,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InvariantKind {
    G,
    Catenary,
    Tutte,
    Characteristic,
    Src,
    Config,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ComparedKind {
    G,
    Catenary,
    Tutte,
    Src,
    Config,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Transferred {
    Catenary,
    Tutte,
}

/// Files are JSON documents; `-` reads standard input.
#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a matroid document against the cyclic-flat or basis axioms.
    Validate { file: String },

    /// The free m-cone of a matroid, or one of its deletion variants.
    Cone {
        #[arg(long)]
        m: usize,
        #[arg(long, value_enum, default_value_t = Variant::Full)]
        variant: Variant,
        file: String,
    },

    /// An invariant of a matroid.
    Invariant {
        #[arg(long, value_enum)]
        kind: InvariantKind,
        file: String,
    },

    /// An invariant of a cone computed from the source matroid alone.
    Transfer {
        #[arg(long, value_enum)]
        what: Transferred,
        #[arg(long)]
        m: usize,
        #[arg(long, value_enum, default_value_t = Variant::Full)]
        variant: Variant,
        file: String,
    },

    /// Recover the source matroid from the configuration of a cone.
    Reconstruct {
        #[arg(long, value_enum)]
        variant: Variant,
        #[arg(long)]
        m: usize,
        file: String,
    },

    /// Compare an invariant of two matroids.
    Compare {
        #[arg(long, value_enum)]
        kind: ComparedKind,
        first: String,
        second: String,
    },

    /// Certify that two matroids have cones with equal catenary data and
    /// different configurations.
    CertifyPair {
        #[arg(long)]
        m: usize,
        first: String,
        second: String,
    },

    /// The Higgs lift of a matroid.
    Higgs { file: String },
}

/// A rendered document and the exit code that goes with it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub output: String,
    pub exit_code: u8,
}

impl Outcome {
    fn ok(output: String) -> Self {
        Outcome {
            output,
            exit_code: EXIT_OK,
        }
    }
}

pub fn read_input(path: &str) -> Result<String, CliError> {
    let io_error = |source| CliError::Io {
        path: path.to_string(),
        source,
    };
    if path == "-" {
        let mut text = String::new();
        std::io::stdin().read_to_string(&mut text).map_err(io_error)?;
        Ok(text)
    } else {
        std::fs::read_to_string(path).map_err(io_error)
    }
}

fn read_matroid_document(path: &str) -> Result<MatroidDocument, CliError> {
    parse(&read_input(path)?)
}

fn read_matroid(path: &str) -> Result<(Matroid, Option<String>), CliError> {
    let doc = read_matroid_document(path)?;
    Ok((doc.to_matroid()?, doc.name))
}

fn invariant_document(
    m: &Matroid,
    kind: ComparedKind,
    limits: &Limits,
) -> Result<InvariantDocument, CliError> {
    Ok(match kind {
        ComparedKind::G => InvariantDocument::g(&g_invariant_with(m, limits)?),
        ComparedKind::Catenary => InvariantDocument::catenary(&catenary_data(m)),
        ComparedKind::Tutte => InvariantDocument::tutte(&tutte_with(m, limits)?),
        ComparedKind::Src => InvariantDocument::src(&src_data_with(m, limits)?),
        ComparedKind::Config => unreachable!("configurations are compared up to isomorphism"),
    })
}

fn describe(name: Option<String>, what: &str) -> Option<String> {
    name.map(|n| format!("{what} of {n}"))
}

/// Runs one command.
pub fn run(command: &Command, limits: &Limits) -> Result<Outcome, CliError> {
    match command {
        Command::Validate { file } => {
            let report = read_matroid_document(file)?.validate()?;
            let exit_code = if report.valid { EXIT_OK } else { EXIT_INVALID };
            Ok(Outcome {
                output: to_canonical_json(&report),
                exit_code,
            })
        }
        Command::Cone { m, variant, file } => {
            let (source, name) = read_matroid(file)?;
            let kind = VariantKind::from(*variant);
            let cone = free_m_cone(&source, *m)?;
            let doc = MatroidDocument::from_matroid(
                &cone.variant(kind),
                describe(name, &format!("{kind} free {m}-cone")),
            );
            Ok(Outcome::ok(to_canonical_json(&doc)))
        }
        Command::Invariant { kind, file } => {
            let (m, _) = read_matroid(file)?;
            let output = match kind {
                InvariantKind::Config => {
                    to_canonical_json(&ConfigurationDocument::from_configuration(&configuration(&m)))
                }
                InvariantKind::Characteristic => to_canonical_json(&InvariantDocument::characteristic(
                    &characteristic_with(&m, limits)?,
                )),
                InvariantKind::G => to_canonical_json(&invariant_document(&m, ComparedKind::G, limits)?),
                InvariantKind::Catenary => {
                    to_canonical_json(&invariant_document(&m, ComparedKind::Catenary, limits)?)
                }
                InvariantKind::Tutte => {
                    to_canonical_json(&invariant_document(&m, ComparedKind::Tutte, limits)?)
                }
                InvariantKind::Src => to_canonical_json(&invariant_document(&m, ComparedKind::Src, limits)?),
            };
            Ok(Outcome::ok(output))
        }
        Command::Transfer {
            what,
            m,
            variant,
            file,
        } => {
            let (source, _) = read_matroid(file)?;
            let kind = VariantKind::from(*variant);
            let doc = match what {
                Transferred::Catenary => {
                    InvariantDocument::catenary(&catenary_of_cone(&catenary_data(&source), *m, kind)?)
                }
                Transferred::Tutte => InvariantDocument::tutte(&tutte_of_cone_from_src(
                    &src_data_with(&source, limits)?,
                    *m,
                    kind,
                )?),
            };
            Ok(Outcome::ok(to_canonical_json(&doc)))
        }
        Command::Reconstruct { variant, m, file } => {
            let doc: ConfigurationDocument = parse(&read_input(file)?)?;
            let found = reconstruct_from_cone_config(&doc.to_configuration()?, (*variant).into(), *m)?;
            Ok(Outcome::ok(to_canonical_json(&MatroidDocument::from_matroid(
                &found, None,
            ))))
        }
        Command::Compare { kind, first, second } => {
            let (a, _) = read_matroid(first)?;
            let (b, _) = read_matroid(second)?;
            let name = kind
                .to_possible_value()
                .expect("no skipped values")
                .get_name()
                .to_string();
            let first_difference = if *kind == ComparedKind::Config {
                let (ca, cb) = (configuration(&a), configuration(&b));
                (!configurations_equal(&ca, &cb)).then(|| Difference {
                    key: "canonical form".into(),
                    left: ca.canonical_form().to_string(),
                    right: cb.canonical_form().to_string(),
                })
            } else {
                let left = invariant_document(&a, *kind, limits)?.keyed_entries();
                let right = invariant_document(&b, *kind, limits)?.keyed_entries();
                left.keys()
                    .chain(right.keys())
                    .filter(|key| left.get(*key) != right.get(*key))
                    .min()
                    .map(|key| {
                        let value = |side: &std::collections::BTreeMap<String, String>| {
                            side.get(key).cloned().unwrap_or_else(|| "0".into())
                        };
                        Difference {
                            key: key.clone(),
                            left: value(&left),
                            right: value(&right),
                        }
                    })
            };
            let equal = first_difference.is_none();
            let doc = ComparisonDocument {
                kind: name,
                equal,
                first_difference,
            };
            Ok(Outcome {
                output: to_canonical_json(&doc),
                exit_code: if equal { EXIT_OK } else { EXIT_UNEQUAL },
            })
        }
        Command::CertifyPair { m, first, second } => {
            let (a, _) = read_matroid(first)?;
            let (b, _) = read_matroid(second)?;
            let report = certify_pair(&a, &b, *m)?;
            let exit_code = if report.any_inconsistent() {
                EXIT_INCONSISTENT
            } else if report.all_pass() {
                EXIT_OK
            } else {
                EXIT_UNEQUAL
            };
            Ok(Outcome {
                output: to_canonical_json(&CertificateDocument::from_report(&report)),
                exit_code,
            })
        }
        Command::Higgs { file } => {
            let (m, name) = read_matroid(file)?;
            let doc = MatroidDocument::from_matroid(&higgs_lift(&m), describe(name, "Higgs lift"));
            Ok(Outcome::ok(to_canonical_json(&doc)))
        }
    }
}
