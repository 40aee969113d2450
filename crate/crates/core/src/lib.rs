//! Bollobás-type set-pair systems and their generalizations.
//!
//! - [`sets`] and [`dpartition`]: bitmask set pairs, d-partitions, verifiers
//!   and exact weights.
//! - [`constructions`]: the extremal families and the saturation move.
//! - [`exterior`]: exact linear algebra, exterior-algebra wedges and
//!   certificates for subspace systems over a prime field.
//! - [`search`]: exhaustive and branch-and-bound maxima at small `n`.

pub mod constructions;
pub mod count;
pub mod dpartition;
pub mod error;
pub mod exterior;
pub mod io;
pub mod search;
pub mod sets;

pub use count::{binomial, format_rational, multinomial, parse_rational, Rational};
pub use dpartition::{orderly_overlap, DPartition, DPartitionSystem};
pub use error::{Error, Result};
pub use io::{parse_system, to_json_line, AnySystem};
pub use sets::{is_antichain, lym_weight, Cell, GroundSize, SetPair, SetPairSystem, SubsetMask, Variant};

use exterior::{MultiVector, PrimeField, RationalField, Subspace};

/// Subspace of `F_p^n`.
pub type ModpSubspace = Subspace<PrimeField>;
/// Element of `Λ(F_p^n)`.
pub type ModpMultiVector = MultiVector<PrimeField>;
/// Subspace of `Q^n`.
pub type RationalSubspace = Subspace<RationalField>;
/// Element of `Λ(Q^n)`.
pub type RationalMultiVector = MultiVector<RationalField>;
