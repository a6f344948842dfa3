//! Exact matroid invariants computed from their definitions.

mod catenary;
mod g;
mod src;
mod tutte;

pub use catenary::{catenary_data, flags, flags_of_deletion, CatenaryData, Composition, Flag, Flags};
pub use g::{g_invariant, g_invariant_with, GInvariant, RankSequence};
pub use src::{src_data, src_data_with, SrcData, SrcTriple};
pub use tutte::{
    characteristic, characteristic_with, tutte, tutte_with, CharacteristicPolynomial, TuttePolynomial,
};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::matroid::Matroid;
use crate::subset::Subset;

/// Bounds on exhaustive enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest number of subsets an enumeration may visit.
    pub max_subsets: u128,
    /// Largest number of permutations the G-invariant may account for.
    pub max_perms: u128,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_subsets: 1 << 25,
            max_perms: 3_628_800,
        }
    }
}

impl Limits {
    pub(crate) fn check_subsets(&self, what: &'static str, n: usize) -> Result<()> {
        let required = 1u128.checked_shl(n as u32).unwrap_or(u128::MAX);
        if required > self.max_subsets {
            return Err(Error::GroundSetTooLarge {
                what,
                required,
                limit: self.max_subsets,
            });
        }
        Ok(())
    }

    pub(crate) fn check_perms(&self, what: &'static str, n: usize) -> Result<()> {
        let required = (1..=n as u128).try_fold(1u128, |acc, i| acc.checked_mul(i));
        let required = required.unwrap_or(u128::MAX);
        if required > self.max_perms {
            return Err(Error::GroundSetTooLarge {
                what,
                required,
                limit: self.max_perms,
            });
        }
        Ok(())
    }
}

/// Rank of every subset, indexed by bitmask.
pub(crate) fn rank_table(m: &Matroid) -> Vec<u8> {
    (0..1u64 << m.len())
        .into_par_iter()
        .map(|bits| m.rank(Subset::from_bits(bits)) as u8)
        .collect()
}
