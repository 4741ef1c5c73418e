//! Exhaustive rank counts of finite-field matrices supported on a Ferrers
//! board, and the q-rook prediction they must match.
//!
//! Elements of GF(p^e) are encoded as integers `0..p^e` read as base-`p`
//! coefficient vectors. For e > 1 the multiplication table is built from a
//! fixed irreducible polynomial (x^2+x+1 over GF(2), x^3+x+1 over GF(2),
//! x^2+1 over GF(3)); rank is basis-independent, so the choice does not
//! affect counts.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::partition::Partition;
use crate::qrook::qrook;

/// Largest board accepted: enumeration visits `q^|λ|` fillings.
pub const MAX_BOARD_CELLS: u64 = 16;

const SUPPORTED_ORDERS: &[u64] = &[2, 3, 4, 5, 7, 8, 9];

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MatrixCountError {
    UnsupportedOrder { order: u64 },
    BoardTooLarge { cells: u64 },
}

impl fmt::Display for MatrixCountError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::UnsupportedOrder { order } => write!(
                f,
                "unsupported field order {} (supported: 2, 3, 4, 5, 7, 8, 9)",
                order
            ),
            Self::BoardTooLarge { cells } => write!(
                f,
                "board has {} cells; exhaustive rank counting is limited to {}",
                cells, MAX_BOARD_CELLS
            ),
        }
    }
}

/// Arithmetic tables for one small field.
struct Field {
    order: usize,
    mul: Vec<u8>,
    sub: Vec<u8>,
    inv: Vec<u8>,
}

impl Field {
    fn new(order: u64) -> Result<Self, MatrixCountError> {
        if !SUPPORTED_ORDERS.contains(&order) {
            return Err(MatrixCountError::UnsupportedOrder { order });
        }
        let (p, e, modulus): (u64, u32, &[u8]) = match order {
            4 => (2, 2, &[1, 1, 1]),    // x^2 + x + 1
            8 => (2, 3, &[1, 1, 0, 1]), // x^3 + x + 1
            9 => (3, 2, &[1, 0, 1]),    // x^2 + 1
            p => (p, 1, &[]),
        };
        let order = order as usize;
        let mut mul = vec![0u8; order * order];
        let mut sub = vec![0u8; order * order];
        for a in 0..order {
            for b in 0..order {
                mul[a * order + b] = mul_elems(a as u64, b as u64, p, e, modulus) as u8;
                sub[a * order + b] = sub_elems(a as u64, b as u64, p, e) as u8;
            }
        }
        let mut inv = vec![0u8; order];
        for a in 1..order {
            for b in 1..order {
                if mul[a * order + b] == 1 {
                    inv[a] = b as u8;
                    break;
                }
            }
        }
        Ok(Field {
            order,
            mul,
            sub,
            inv,
        })
    }

    #[inline]
    fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize * self.order + b as usize]
    }

    #[inline]
    fn sub(&self, a: u8, b: u8) -> u8 {
        self.sub[a as usize * self.order + b as usize]
    }

    #[inline]
    fn inv(&self, a: u8) -> u8 {
        self.inv[a as usize]
    }
}

fn to_digits(mut a: u64, p: u64, e: u32) -> Vec<u64> {
    let mut d = Vec::with_capacity(e as usize);
    for _ in 0..e {
        d.push(a % p);
        a /= p;
    }
    d
}

fn from_digits(d: &[u64], p: u64) -> u64 {
    d.iter().rev().fold(0, |acc, &x| acc * p + x)
}

fn sub_elems(a: u64, b: u64, p: u64, e: u32) -> u64 {
    let da = to_digits(a, p, e);
    let db = to_digits(b, p, e);
    let diff: Vec<u64> = da.iter().zip(&db).map(|(&x, &y)| (x + p - y) % p).collect();
    from_digits(&diff, p)
}

fn mul_elems(a: u64, b: u64, p: u64, e: u32, modulus: &[u8]) -> u64 {
    if e == 1 {
        return (a * b) % p;
    }
    let da = to_digits(a, p, e);
    let db = to_digits(b, p, e);
    // Polynomial product, then reduction by the monic modulus of degree e.
    let mut prod = vec![0u64; 2 * e as usize - 1];
    for (i, &x) in da.iter().enumerate() {
        for (j, &y) in db.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    for i in (e as usize..prod.len()).rev() {
        let c = prod[i];
        if c == 0 {
            continue;
        }
        prod[i] = 0;
        for (k, &m) in modulus.iter().enumerate() {
            let idx = i - e as usize + k;
            prod[idx] = (prod[idx] + c * (p - m as u64 % p)) % p;
        }
    }
    from_digits(&prod[..e as usize], p)
}

fn rank(field: &Field, mat: &mut [Vec<u8>]) -> usize {
    let rows = mat.len();
    let cols = if rows == 0 { 0 } else { mat[0].len() };
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..rows).find(|&r| mat[r][col] != 0) else {
            continue;
        };
        mat.swap(rank, pivot);
        let scale = field.inv(mat[rank][col]);
        for x in &mut mat[rank][col..] {
            *x = field.mul(*x, scale);
        }
        let pivot_row = mat[rank].clone();
        for (r, row) in mat.iter_mut().enumerate() {
            if r == rank || row[col] == 0 {
                continue;
            }
            let factor = row[col];
            for (x, &p) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                *x = field.sub(*x, field.mul(factor, p));
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

/// Counts matrices of rank `target_rank` over GF(`order`) whose nonzero
/// entries all lie on the board of `lambda`, by enumerating every filling
/// and running Gaussian elimination.
pub fn count_rank_matrices(
    lambda: &Partition,
    order: u64,
    target_rank: usize,
) -> Result<BigUint, MatrixCountError> {
    let cells_total = lambda.size();
    if cells_total > MAX_BOARD_CELLS {
        return Err(MatrixCountError::BoardTooLarge { cells: cells_total });
    }
    let field = Field::new(order)?;

    let rows = lambda.len();
    let cols = lambda.first_part() as usize;
    let cells: Vec<(usize, usize)> = lambda
        .parts()
        .iter()
        .enumerate()
        .flat_map(|(i, &p)| (0..p as usize).map(move |j| (i, j)))
        .collect();

    let mut count = BigUint::zero();
    let mut filling = vec![0u8; cells.len()];
    let mut scratch = vec![vec![0u8; cols]; rows];
    loop {
        for row in scratch.iter_mut() {
            row.fill(0);
        }
        for (&(i, j), &v) in cells.iter().zip(&filling) {
            scratch[i][j] = v;
        }
        if rank(&field, &mut scratch) == target_rank {
            count += BigUint::one();
        }
        // Odometer over base-`order` fillings.
        let mut pos = 0;
        loop {
            if pos == filling.len() {
                return Ok(count);
            }
            filling[pos] += 1;
            if (filling[pos] as u64) < order {
                break;
            }
            filling[pos] = 0;
            pos += 1;
        }
    }
}

/// The count [`count_rank_matrices`] must produce, derived from the q-rook
/// polynomial: `(q-1)^r · q^{|λ| - r - deg R_r} · rev(R_r)(q)` where
/// `rev(R_r)(q) = Σ_e a_e q^{deg - e}`. Equivalently
/// `(q-1)^r q^{|λ|-r} R_r(λ; 1/q)` evaluated exactly.
pub fn predicted_rank_matrices(
    lambda: &Partition,
    order: u64,
    target_rank: usize,
) -> Result<BigUint, MatrixCountError> {
    if !SUPPORTED_ORDERS.contains(&order) {
        return Err(MatrixCountError::UnsupportedOrder { order });
    }
    let poly = qrook(lambda, target_rank);
    let Some(deg) = poly.degree() else {
        return Ok(BigUint::zero());
    };
    let size = lambda.size();
    let exponent = size - target_rank as u64 - deg as u64;
    let value = BigUint::from(order - 1).pow(target_rank as u32)
        * BigUint::from(order).pow(exponent as u32)
        * poly
            .reversed_eval(order)
            .to_biguint()
            .expect("q-rook coefficients are nonnegative");
    Ok(value)
}
