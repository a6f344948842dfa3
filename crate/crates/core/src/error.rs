use thiserror::Error;

use crate::cone::VariantKind;
use crate::subset::Subset;
use crate::zlattice::Axiom;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cyclic-flat axiom {axiom} fails for {first} and {second}")]
    AxiomViolation {
        axiom: Axiom,
        first: Subset,
        second: Subset,
    },

    #[error("element {element} is outside a ground set of size {n}")]
    ElementOutOfRange { element: usize, n: usize },

    #[error("ground set of {0} elements exceeds the 64-element limit")]
    TooManyElements(usize),

    #[error("duplicate element name {0:?}")]
    DuplicateName(String),

    #[error("not a basis system: exchange fails between {first} and {second}")]
    NotABasisSystem { first: Subset, second: Subset },

    #[error("{what} needs {required} steps, above the limit of {limit}")]
    GroundSetTooLarge {
        what: &'static str,
        required: u128,
        limit: u128,
    },

    #[error("the source matroid has loops")]
    SourceHasLoops,

    #[error("the cone parameter m must be positive")]
    ZeroMultiplicity,

    #[error("every flag collapses: the deletion has smaller rank")]
    AllCollapse,

    #[error("invalid flag tuple: {0}")]
    InvalidTuple(String),

    #[error("malformed catenary data: {0}")]
    MalformedCatenary(String),

    #[error("malformed size-rank-coloop data: {0}")]
    MalformedSrc(String),

    #[error("inconsistent G-invariant system: {0}")]
    InconsistentSystem(String),

    #[error("invalid configuration: {0}")]
    InvalidConfiguration(String),

    #[error("not the configuration of a cone: {0}")]
    NotAConeConfiguration(String),

    #[error("the {kind} configuration does not determine the source matroid when m = {m}")]
    OutsideReconstructionBound { kind: VariantKind, m: usize },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
