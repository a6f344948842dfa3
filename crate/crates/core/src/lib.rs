//! Free m-cones of matroids and the invariants they preserve.
//!
//! Matroids are stored by their lattice of cyclic flats. The crate builds
//! free m-cones and their deletion variants, computes the G-invariant,
//! catenary data, Tutte and characteristic polynomials and size-rank-coloop
//! data exactly, transfers these invariants from a matroid to its cones
//! without building the cone, and recovers a matroid from the configuration
//! of its cone.

pub mod catalog;
pub mod cone;
pub mod error;
pub mod invariants;
pub mod iso;
pub mod matroid;
pub mod subset;
pub mod transfer;
pub mod zlattice;

pub use cone::{free_m_cone, higgs_lift, ConeElement, ConeMatroid, VariantKind};
pub use error::{Error, Result};
pub use iso::is_isomorphic;
pub use matroid::Matroid;
pub use subset::Subset;
pub use zlattice::{configuration, configurations_equal, Configuration};
