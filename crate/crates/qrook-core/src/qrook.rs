//! q-rook polynomials of Ferrers boards.
//!
//! The inversion statistic of a rook placement `w` on the board of `λ`:
//! each rook `(a, b)` deletes every cell `(i, b)` with `i <= a` and every
//! cell `(a, j)` with `j <= b`; `inv(w)` is the number of undeleted cells.
//! The rank-`k` q-rook polynomial is `R_k(λ; q) = Σ_w q^{inv(w)}` over all
//! `k`-rook placements.
//!
//! Three independent routes compute it:
//! - [`qrook_enumerate`] sums over all placements directly (the oracle,
//!   exponential, small boards only);
//! - [`qrook`] runs the deletion-contraction recurrence on the last cell of
//!   the last row, memoized on (board, rank);
//! - [`qrook_full_rank`] and [`qrook_rank_one`] are closed forms for the
//!   extreme ranks.

use alloc::boxed::Box;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use hashbrown::HashMap;
use num_bigint::BigInt;

use crate::partition::Partition;
use crate::poly::{q_integer, IntPolynomial};

/// A set of nonattacking rook positions, `(row, col)` 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RookPlacement {
    cells: Vec<(u32, u32)>,
}

/// A placement that is not valid on the given board.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PlacementError {
    OutsideBoard { row: u32, col: u32 },
    SharedRow { row: u32 },
    SharedColumn { col: u32 },
}

impl fmt::Display for PlacementError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::OutsideBoard { row, col } => {
                write!(f, "rook ({}, {}) lies outside the board", row, col)
            }
            Self::SharedRow { row } => write!(f, "two rooks share row {}", row),
            Self::SharedColumn { col } => write!(f, "two rooks share column {}", col),
        }
    }
}

impl RookPlacement {
    pub fn new(cells: Vec<(u32, u32)>) -> Self {
        RookPlacement { cells }
    }

    pub fn cells(&self) -> &[(u32, u32)] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }
}

/// The inversion statistic of `placement` on the board of `lambda`, by direct
/// deletion simulation. Rejects placements that leave the board or attack
/// each other.
pub fn inversion_number(
    lambda: &Partition,
    placement: &RookPlacement,
) -> Result<u64, PlacementError> {
    let rows = lambda.len();
    let cols = lambda.first_part() as usize;
    let mut row_used = vec![false; rows + 1];
    let mut col_used = vec![false; cols + 1];
    for &(r, c) in placement.cells() {
        if !lambda.contains_cell(r, c) {
            return Err(PlacementError::OutsideBoard { row: r, col: c });
        }
        if row_used[r as usize] {
            return Err(PlacementError::SharedRow { row: r });
        }
        if col_used[c as usize] {
            return Err(PlacementError::SharedColumn { col: c });
        }
        row_used[r as usize] = true;
        col_used[c as usize] = true;
    }

    let mut deleted = vec![false; rows * cols];
    let at = |r: usize, c: usize| (r - 1) * cols + (c - 1);
    for &(a, b) in placement.cells() {
        for i in 1..=a {
            if lambda.contains_cell(i, b) {
                deleted[at(i as usize, b as usize)] = true;
            }
        }
        for j in 1..=b {
            deleted[at(a as usize, j as usize)] = true;
        }
    }
    let mut undeleted = 0u64;
    for (i, &p) in lambda.parts().iter().enumerate() {
        for j in 1..=p as usize {
            if !deleted[at(i + 1, j)] {
                undeleted += 1;
            }
        }
    }
    Ok(undeleted)
}

/// `R_k(λ; q)` by exhaustive enumeration of every `k`-rook placement, rows
/// top-down, inversion counted per complete placement. Exponential; this is
/// the reference oracle for small boards, not a production path.
pub fn qrook_enumerate(lambda: &Partition, k: usize) -> IntPolynomial {
    let mut acc = IntPolynomial::zero();
    let mut stack: Vec<(u32, u32)> = Vec::with_capacity(k);
    let cols = lambda.first_part() as usize;
    let mut used = vec![false; cols + 1];
    enumerate_rows(lambda, k, 0, &mut used, &mut stack, &mut acc);
    acc
}

fn enumerate_rows(
    lambda: &Partition,
    k: usize,
    row: usize,
    used: &mut Vec<bool>,
    stack: &mut Vec<(u32, u32)>,
    acc: &mut IntPolynomial,
) {
    if stack.len() == k {
        let placement = RookPlacement::new(stack.clone());
        let inv = inversion_number(lambda, &placement).expect("constructed placements are valid");
        *acc += &IntPolynomial::monomial(inv as usize);
        return;
    }
    if row == lambda.len() || lambda.len() - row < k - stack.len() {
        return;
    }
    // No rook in this row.
    enumerate_rows(lambda, k, row + 1, used, stack, acc);
    // Or a rook in any unused column of this row.
    for col in 1..=lambda.parts()[row] {
        if !used[col as usize] {
            used[col as usize] = true;
            stack.push((row as u32 + 1, col));
            enumerate_rows(lambda, k, row + 1, used, stack, acc);
            stack.pop();
            used[col as usize] = false;
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
struct MemoKey {
    parts: Box<[u32]>,
    rank: u32,
}

/// Memo for the deletion-contraction recurrence, keyed by canonical board
/// and rank. Subproblems overlap heavily across boards of one size, so share
/// one memo per scan where possible. When the entry count passes the limit
/// the whole map is cleared; cached state never affects returned values.
pub struct RookMemo {
    map: HashMap<MemoKey, IntPolynomial>,
    limit: usize,
}

impl Default for RookMemo {
    fn default() -> Self {
        Self::new()
    }
}

impl RookMemo {
    /// Default high-water mark of one million entries.
    pub fn new() -> Self {
        Self::with_limit(1_000_000)
    }

    pub fn with_limit(limit: usize) -> Self {
        RookMemo {
            map: HashMap::new(),
            limit: limit.max(1),
        }
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn clear(&mut self) {
        self.map.clear();
    }

    fn insert(&mut self, key: MemoKey, value: IntPolynomial) {
        if self.map.len() >= self.limit {
            self.map.clear();
        }
        self.map.insert(key, value);
    }
}

/// `R_k(λ; q)` via the recurrence on the cell `(ℓ, λ_ℓ)`:
///
/// `R_k(⟨λ_1, ..., λ_ℓ⟩) = q·R_k(⟨λ_1, ..., λ_ℓ - 1⟩)
///                        + R_{k-1}(⟨λ_1 - 1, ..., λ_{ℓ-1} - 1⟩)`
///
/// with `R_0(λ) = q^{|λ|}`, and `R_k = 0` when `k` exceeds the number of
/// rows or columns. Parts reduced to zero are dropped, so every intermediate
/// shape stays a Ferrers board.
pub fn qrook_with_memo(lambda: &Partition, k: usize, memo: &mut RookMemo) -> IntPolynomial {
    qrook_rec(lambda.parts(), k, memo)
}

/// [`qrook_with_memo`] with a fresh memo.
pub fn qrook(lambda: &Partition, k: usize) -> IntPolynomial {
    qrook_with_memo(lambda, k, &mut RookMemo::new())
}

fn qrook_rec(parts: &[u32], k: usize, memo: &mut RookMemo) -> IntPolynomial {
    if k == 0 {
        let size: u64 = parts.iter().map(|&p| p as u64).sum();
        return IntPolynomial::monomial(size as usize);
    }
    if k > parts.len() || k > parts[0] as usize {
        return IntPolynomial::zero();
    }
    let key = MemoKey {
        parts: parts.into(),
        rank: k as u32,
    };
    if let Some(hit) = memo.map.get(&key) {
        return hit.clone();
    }

    let last = parts.len() - 1;
    let deleted = if parts[last] > 1 {
        let mut shorter = parts.to_vec();
        shorter[last] -= 1;
        qrook_rec(&shorter, k, memo)
    } else {
        qrook_rec(&parts[..last], k, memo)
    };
    let contracted: Vec<u32> = parts[..last]
        .iter()
        .filter(|&&p| p > 1)
        .map(|&p| p - 1)
        .collect();
    let result = &deleted.shift(1) + &qrook_rec(&contracted, k - 1, memo);

    memo.insert(key, result.clone());
    result
}

/// All ranks `R_0, ..., R_ℓ` in one memo-sharing pass.
pub fn qrook_all_with_memo(lambda: &Partition, memo: &mut RookMemo) -> Vec<IntPolynomial> {
    (0..=lambda.len())
        .map(|k| qrook_with_memo(lambda, k, memo))
        .collect()
}

/// [`qrook_all_with_memo`] with a fresh memo.
pub fn qrook_all(lambda: &Partition) -> Vec<IntPolynomial> {
    qrook_all_with_memo(lambda, &mut RookMemo::new())
}

/// Full-rank closed form:
/// `R_ℓ(λ; q) = [λ_ℓ]_q · [λ_{ℓ-1} - 1]_q ··· [λ_1 - (ℓ-1)]_q`.
/// Any factor `[n]_q` with `n <= 0` makes the whole product zero.
pub fn qrook_full_rank(lambda: &Partition) -> IntPolynomial {
    let ell = lambda.len();
    let mut acc = IntPolynomial::one();
    for (i, &part) in lambda.parts().iter().enumerate() {
        let legal = part as i64 - (ell - 1 - i) as i64;
        let factor = q_integer(legal);
        if factor.is_zero() {
            return IntPolynomial::zero();
        }
        acc = &acc * &factor;
    }
    acc
}

/// Rank-one closed form: `R_1(λ; q) = Σ_i d_i(λ) · q^{|λ| - i}` over the
/// diagonal counts. Zero polynomial for the empty partition.
pub fn qrook_rank_one(lambda: &Partition) -> IntPolynomial {
    let size = lambda.size() as usize;
    let diag = lambda.diagonal_vector();
    let mut coeffs = vec![BigInt::from(0); size];
    for (i, &d) in diag.counts().iter().enumerate() {
        // d_{i+1} contributes to exponent |λ| - (i+1).
        coeffs[size - (i + 1)] = BigInt::from(d);
    }
    IntPolynomial::from_coeffs(coeffs)
}

/// Total q-rook polynomial `R(λ; q) = Σ_k R_k(λ; q)`.
pub fn total_qrook_with_memo(lambda: &Partition, memo: &mut RookMemo) -> IntPolynomial {
    let mut acc = IntPolynomial::zero();
    for k in 0..=lambda.len() {
        acc += &qrook_with_memo(lambda, k, memo);
    }
    acc
}

/// [`total_qrook_with_memo`] with a fresh memo.
pub fn total_qrook(lambda: &Partition) -> IntPolynomial {
    total_qrook_with_memo(lambda, &mut RookMemo::new())
}

/// The plain rook number `R_k(B_λ) = R_k(λ; 1)`.
pub fn rook_number(lambda: &Partition, k: usize) -> BigInt {
    qrook(lambda, k).eval_at_one()
}

/// True iff `λ` and `μ` have equal q-rook polynomials at every rank. The
/// diagonal-vector criterion is computed alongside; the two characterizations
/// provably coincide, so a disagreement can only mean a bug and panics.
pub fn are_q_rook_equivalent(lambda: &Partition, mu: &Partition) -> bool {
    let max_rank = lambda.len().max(mu.len());
    let mut memo = RookMemo::new();
    let by_polynomials = (0..=max_rank)
        .all(|k| qrook_with_memo(lambda, k, &mut memo) == qrook_with_memo(mu, k, &mut memo));
    let by_diagonals = lambda.diagonal_vector() == mu.diagonal_vector();
    assert_eq!(
        by_polynomials, by_diagonals,
        "internal consistency failure: polynomial and diagonal-vector \
         equivalence disagree for {:?} and {:?}",
        lambda, mu
    );
    by_polynomials
}

mod gf;

pub use gf::{count_rank_matrices, predicted_rank_matrices, MatrixCountError};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::partitions_of;
    use alloc::string::ToString;

    fn part(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec())
    }

    #[test]
    fn inversion_of_pictured_placement() {
        let lambda = part(&[6, 5, 3, 3]);
        let w = RookPlacement::new(vec![(1, 5), (3, 1), (4, 3)]);
        assert_eq!(inversion_number(&lambda, &w), Ok(5));
    }

    #[test]
    fn inversion_of_empty_placement_is_board_size() {
        let lambda = part(&[6, 5, 3, 3]);
        assert_eq!(
            inversion_number(&lambda, &RookPlacement::new(vec![])),
            Ok(17)
        );
    }

    #[test]
    fn inversion_on_single_row() {
        let lambda = part(&[2]);
        assert_eq!(
            inversion_number(&lambda, &RookPlacement::new(vec![(1, 1)])),
            Ok(1)
        );
        assert_eq!(
            inversion_number(&lambda, &RookPlacement::new(vec![(1, 2)])),
            Ok(0)
        );
    }

    #[test]
    fn invalid_placements_are_rejected() {
        let lambda = part(&[2, 1]);
        assert_eq!(
            inversion_number(&lambda, &RookPlacement::new(vec![(2, 2)])),
            Err(PlacementError::OutsideBoard { row: 2, col: 2 })
        );
        assert_eq!(
            inversion_number(&lambda, &RookPlacement::new(vec![(1, 1), (1, 2)])),
            Err(PlacementError::SharedRow { row: 1 })
        );
        assert_eq!(
            inversion_number(&lambda, &RookPlacement::new(vec![(1, 1), (2, 1)])),
            Err(PlacementError::SharedColumn { col: 1 })
        );
    }

    #[test]
    fn enumerate_small_boards() {
        assert_eq!(
            qrook_enumerate(&part(&[2]), 1),
            IntPolynomial::from_coeffs([1, 1])
        );
        // Rank 0 has the single empty placement with nothing deleted.
        assert_eq!(
            qrook_enumerate(&part(&[4, 1]), 0),
            IntPolynomial::monomial(5)
        );
        assert_eq!(
            qrook_enumerate(&part(&[4, 1]), 1),
            IntPolynomial::from_coeffs([0, 1, 1, 2, 1])
        );
    }

    #[test]
    fn recurrence_reproduces_rank2_counterexample() {
        let lambda = part(&[10, 9, 3, 2, 1]);
        let r2 = qrook(&lambda, 2);
        assert_eq!(
            r2.to_string(),
            "q^22 + 3*q^21 + 7*q^20 + 13*q^19 + 18*q^18 + 21*q^17 + 22*q^16 + \
             20*q^15 + 21*q^14 + 20*q^13 + 17*q^12 + 12*q^11 + 5*q^10 + 4*q^9 + \
             3*q^8 + 2*q^7 + q^6"
        );
        assert_eq!(r2.eval_at_one(), BigInt::from(190));
        let w = r2.unimodality_failure().unwrap().unwrap();
        assert_eq!((w.left, w.valley, w.right), (14, 15, 16));
        assert_eq!(r2.coeff(14), BigInt::from(21));
        assert_eq!(r2.coeff(15), BigInt::from(20));
        assert_eq!(r2.coeff(16), BigInt::from(22));
    }

    #[test]
    fn recurrence_base_cases() {
        assert_eq!(qrook(&Partition::empty(), 0), IntPolynomial::one());
        assert!(qrook(&Partition::empty(), 1).is_zero());
        assert!(qrook(&part(&[3, 2]), 3).is_zero());
        // More rooks than columns is just as impossible as more than rows.
        assert!(qrook(&part(&[1, 1]), 2).is_zero());
        assert_eq!(qrook(&part(&[4, 1]), 0), IntPolynomial::monomial(5));
    }

    #[test]
    fn full_rank_closed_form() {
        let nine_sq = &q_integer(9) * &q_integer(9);
        assert_eq!(qrook_full_rank(&part(&[10, 9])), nine_sq);
        assert_eq!(qrook(&part(&[10, 9]), 2), nine_sq);
        assert_eq!(qrook_full_rank(&part(&[2, 1])), IntPolynomial::one());
        assert!(qrook_full_rank(&part(&[1, 1])).is_zero());
        assert_eq!(qrook_full_rank(&Partition::empty()), IntPolynomial::one());
    }

    #[test]
    fn rank_one_closed_form() {
        assert_eq!(
            qrook_rank_one(&part(&[4, 1])),
            IntPolynomial::from_coeffs([0, 1, 1, 2, 1])
        );
        assert_eq!(qrook_rank_one(&part(&[1])), IntPolynomial::one());
        assert_eq!(
            qrook_rank_one(&part(&[2, 1])),
            IntPolynomial::from_coeffs([0, 2, 1])
        );
        assert!(qrook_rank_one(&Partition::empty()).is_zero());
    }

    #[test]
    fn all_ranks_and_total() {
        let lambda = part(&[2, 1]);
        let all = qrook_all(&lambda);
        assert_eq!(
            all,
            vec![
                IntPolynomial::monomial(3),
                IntPolynomial::from_coeffs([0, 2, 1]),
                IntPolynomial::one()
            ]
        );
        assert_eq!(
            total_qrook(&lambda),
            IntPolynomial::from_coeffs([1, 2, 1, 1])
        );
        assert_eq!(qrook_all(&part(&[1])).len(), 2);
        assert_eq!(qrook_all(&Partition::empty()), vec![IntPolynomial::one()]);
        assert_eq!(total_qrook(&Partition::empty()), IntPolynomial::one());
        assert_eq!(total_qrook(&part(&[1])), IntPolynomial::from_coeffs([1, 1]));
    }

    #[test]
    fn staircase_rook_numbers_are_stirling() {
        let delta4 = Partition::staircase(4);
        assert_eq!(rook_number(&delta4, 1), BigInt::from(6)); // S(4,3)
        assert_eq!(rook_number(&delta4, 2), BigInt::from(7)); // S(4,2)
        assert_eq!(rook_number(&delta4, 0), BigInt::from(1));
    }

    #[test]
    fn q_rook_equivalence_matches_diagonals() {
        let p = part(&[10, 9, 3, 2, 1]);
        assert!(are_q_rook_equivalent(&p, &p));
        assert!(are_q_rook_equivalent(&p, &p.conjugate()));
        assert!(are_q_rook_equivalent(&part(&[2]), &part(&[1, 1])));
        assert!(!are_q_rook_equivalent(&part(&[2]), &part(&[2, 1])));
    }

    #[test]
    fn recurrence_matches_oracle_to_size_six() {
        let mut memo = RookMemo::new();
        for n in 0..=6 {
            for lambda in partitions_of(n) {
                for k in 0..=lambda.len() + 1 {
                    assert_eq!(
                        qrook_with_memo(&lambda, k, &mut memo),
                        qrook_enumerate(&lambda, k),
                        "mismatch at {:?} k={}",
                        lambda,
                        k
                    );
                }
            }
        }
    }

    #[test]
    fn memo_eviction_does_not_change_values() {
        let lambda = part(&[6, 5, 4, 3, 2, 1]);
        let expected = qrook(&lambda, 3);
        let mut tight = RookMemo::with_limit(8);
        assert_eq!(qrook_with_memo(&lambda, 3, &mut tight), expected);
        assert_eq!(qrook_with_memo(&lambda, 3, &mut tight), expected);
        assert!(tight.len() <= 8);
    }
}
