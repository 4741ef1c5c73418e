//! Exact arithmetic for q-rook polynomials on Ferrers boards.
//!
//! The crate computes the inversion-statistic q-analogue of rook numbers for
//! integer partitions, together with everything the associated coefficient
//! experiments need: dense big-integer polynomials with unimodality and
//! log-concavity testers, reverse-lexicographic partition enumeration and
//! rook-equivalence classes, q-Stirling and q-Bell numbers, and exhaustive
//! finite-field matrix rank counts as an independent cross-check.
//!
//! The crate is `no_std` (with `alloc`); IO, parallel scan drivers, and file
//! formats live in the companion CLI crate.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod partition;
pub mod poly;
pub mod qrook;
pub mod qstirling;

pub use partition::{
    class_members, equivalence_classes, partition_count, partitions_of, DiagonalVector, Partition,
    PartitionParseError, RookEquivalenceClass,
};
pub use poly::{q_integer, IntPolynomial, LogConcavityBreak, NegativeCoefficient, ValleyWitness};
pub use qrook::{
    are_q_rook_equivalent, count_rank_matrices, inversion_number, predicted_rank_matrices, qrook,
    qrook_all, qrook_all_with_memo, qrook_enumerate, qrook_full_rank, qrook_rank_one,
    qrook_with_memo, rook_number, total_qrook, total_qrook_with_memo, MatrixCountError,
    PlacementError, RookMemo, RookPlacement,
};
pub use qstirling::{qbell, qstirling, qstirling_via_h, QStirlingTable};

// Re-exported so downstream crates handle the same integer types without
// pinning their own copy of the dependency.
pub use num_bigint::{BigInt, BigUint};
