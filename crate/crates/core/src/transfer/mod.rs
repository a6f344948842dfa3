//! Passing data between a matroid and its free m-cones: the bijection between
//! flags, the catenary and Tutte transfers, recovering size-rank-coloop data
//! from the G-invariant, reconstructing a matroid from the configuration of
//! its cone, and certificates for pairs of matroids.

mod bijection;
mod catenary;
mod certify;
mod reconstruct;
mod srcg;
mod tutte;

pub use bijection::{enumerate_tuples, flag_bijection, flag_bijection_inverse, FlagTuple};
pub use catenary::{catenary_of_cone, cone_composition, cone_weight};
pub use certify::{certify_pair, CertificateReport, Leg, LegStatus};
pub use reconstruct::{identify_cone_lines, reconstruct_from_cone_config, restore_cone_configuration};
pub use srcg::src_from_g;
pub use tutte::tutte_of_cone_from_src;

use crate::cone::VariantKind;

/// Size of `q(F)` with the deleted parts removed, as `slope * |F| + intercept`.
pub(crate) fn cone_size_map(kind: VariantKind, m: usize) -> (usize, usize) {
    let slope = if kind.keeps_base() { m + 1 } else { m };
    (slope, usize::from(kind.keeps_tip()))
}
