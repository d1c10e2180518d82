//! Set partitions, their ordered and two-faced variants, and the counts of
//! bi-monotone pair partitions.
//!
//! Points of the ground set are numbered `1..=m` in every public type.

mod classify;
mod count;
mod enumerate;
mod pattern;
mod types;

use thiserror::Error;

pub use classify::{
    is_bi_monotone, is_bi_noncrossing, is_interval, is_irreducible, is_monotone, is_noncrossing,
};
pub use count::{
    bimonotone_pair_partitions, count_bimonotone_all, count_bimonotone_pp,
    count_irreducible_bimonotone_pp, count_linear_extensions, decomposition_rhs,
    for_each_bimonotone_pairing, for_each_constrained_pairing, is_irreducible_bimonotone,
    pairs_to_partition, verify_decomposition_identity, CountTable, MAX_PAIRS,
};
pub use enumerate::{for_each_linear_extension, pair_partitions, PairPartitions};
pub use pattern::{Face, Pattern};
pub use types::{OrderedSetPartition, OrderedTwoFacedPartition, SetPartition, TwoFacedPartition};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("invalid face `{found}` at position {position} (expected `l` or `r`)")]
    InvalidPattern { position: usize, found: char },
    #[error("partition has an empty block")]
    EmptyBlock,
    #[error("point {0} appears twice")]
    DuplicatePoint(usize),
    #[error("point {point} outside the ground set 1..={size}")]
    PointOutOfRange { point: usize, size: usize },
    #[error("block order is not a permutation of the blocks")]
    InvalidOrder,
    #[error("pattern has length {pattern} but the partition has {points} points")]
    LengthMismatch { points: usize, pattern: usize },
}
