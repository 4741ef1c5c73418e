//! Integer partitions and their Ferrers boards: parsing, conjugation,
//! antidiagonal counts, reverse-lexicographic enumeration, and grouping into
//! rook-equivalence classes.
//!
//! Matrix coordinates throughout: cell `(i, j)` of the board of
//! `λ = ⟨λ_1, ..., λ_ℓ⟩` exists iff `1 <= i <= ℓ` and `1 <= j <= λ_i`,
//! with row 1 on top.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use hashbrown::HashMap;
use num_bigint::BigUint;
use num_traits::Zero;

/// A finite nonincreasing sequence of positive integers.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Partition {
    parts: Vec<u32>,
}

/// The sequence `d_1, d_2, ...` of antidiagonal cell counts of a Ferrers
/// board (`d_m` counts cells with `i + j = m + 1`), trailing zeros trimmed.
/// Two partitions are rook-equivalent exactly when these sequences agree, so
/// this is the class key.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct DiagonalVector {
    counts: Vec<u32>,
}

/// Rejected partition text, with the 1-based position of the offending part.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PartitionParseError {
    EmptyPart { position: usize },
    InvalidPart { position: usize, token: String },
    ZeroPart { position: usize },
    Increasing { position: usize },
}

impl fmt::Display for PartitionParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::EmptyPart { position } => write!(f, "empty part at position {}", position),
            Self::InvalidPart { position, token } => {
                write!(
                    f,
                    "part {:?} at position {} is not a positive integer",
                    token, position
                )
            }
            Self::ZeroPart { position } => write!(f, "zero part at position {}", position),
            Self::Increasing { position } => write!(
                f,
                "parts must be nonincreasing: part at position {} exceeds its predecessor",
                position
            ),
        }
    }
}

impl Partition {
    /// The empty partition (the empty board).
    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// Builds a partition from parts that must already be nonincreasing and
    /// positive. Panics otherwise; use [`Partition::parse`] for fallible input.
    pub fn new(parts: Vec<u32>) -> Self {
        assert!(
            parts.windows(2).all(|w| w[0] >= w[1]),
            "partition parts must be nonincreasing"
        );
        assert!(!parts.contains(&0), "partition parts must be positive");
        Partition { parts }
    }

    /// Parses comma-separated decimal parts, e.g. `"10,9,3,2,1"`. The empty
    /// string is the empty partition. Whitespace around parts is ignored.
    pub fn parse(text: &str) -> Result<Self, PartitionParseError> {
        if text.trim().is_empty() {
            return Ok(Self::empty());
        }
        let mut parts = Vec::new();
        for (idx, token) in text.split(',').enumerate() {
            let position = idx + 1;
            let token = token.trim();
            if token.is_empty() {
                return Err(PartitionParseError::EmptyPart { position });
            }
            let part: u32 = token
                .parse()
                .map_err(|_| PartitionParseError::InvalidPart {
                    position,
                    token: String::from(token),
                })?;
            if part == 0 {
                return Err(PartitionParseError::ZeroPart { position });
            }
            if let Some(&prev) = parts.last() {
                if part > prev {
                    return Err(PartitionParseError::Increasing { position });
                }
            }
            parts.push(part);
        }
        Ok(Partition { parts })
    }

    /// The staircase `δ_n = ⟨n-1, n-2, ..., 1⟩` (empty for `n <= 1`).
    pub fn staircase(n: u32) -> Self {
        Partition {
            parts: (1..n).rev().collect(),
        }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// Number of cells `|λ|`.
    pub fn size(&self) -> u64 {
        self.parts.iter().map(|&p| p as u64).sum()
    }

    /// Number of parts `ℓ(λ)`.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// The widest row (0 for the empty partition).
    pub fn first_part(&self) -> u32 {
        self.parts.first().copied().unwrap_or(0)
    }

    /// True iff cell `(row, col)` (1-based) lies on the board.
    pub fn contains_cell(&self, row: u32, col: u32) -> bool {
        row >= 1
            && col >= 1
            && (row as usize) <= self.parts.len()
            && col <= self.parts[row as usize - 1]
    }

    /// The transpose of the board: part `i` of the result is the number of
    /// parts of `self` that are `>= i`. An involution.
    pub fn conjugate(&self) -> Partition {
        let mut parts = Vec::with_capacity(self.first_part() as usize);
        for col in 1..=self.first_part() {
            let height = self.parts.iter().take_while(|&&p| p >= col).count();
            parts.push(height as u32);
        }
        Partition { parts }
    }

    /// Antidiagonal counts: `counts[m-1]` is the number of board cells with
    /// `i + j = m + 1`. Row `i` meets exactly the diagonals `i ..= i + λ_i - 1`.
    pub fn diagonal_vector(&self) -> DiagonalVector {
        let maxdiag = self
            .parts
            .iter()
            .enumerate()
            .map(|(i, &p)| i as u32 + p)
            .max()
            .unwrap_or(0);
        let mut counts = alloc::vec![0u32; maxdiag as usize];
        for (i, &p) in self.parts.iter().enumerate() {
            // Row i+1 meets diagonals i+1 ..= i+p, stored at indices i..i+p.
            for c in &mut counts[i..i + p as usize] {
                *c += 1;
            }
        }
        DiagonalVector { counts }
    }
}

impl fmt::Display for Partition {
    /// The parse format: comma-separated parts, empty string for the empty
    /// partition.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", p)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "⟨{}⟩", self)
    }
}

impl DiagonalVector {
    pub fn counts(&self) -> &[u32] {
        &self.counts
    }

    pub fn sum(&self) -> u64 {
        self.counts.iter().map(|&c| c as u64).sum()
    }
}

/// Iterator over all partitions of `n` in reverse-lexicographic order:
/// `⟨n⟩` first, `⟨1, ..., 1⟩` last. The order is part of the contract:
/// search sharding and class representatives depend on it.
pub struct Partitions {
    current: Option<Vec<u32>>,
}

/// All partitions of `n`, reverse-lexicographically.
pub fn partitions_of(n: u32) -> Partitions {
    Partitions {
        current: Some(if n == 0 { Vec::new() } else { alloc::vec![n] }),
    }
}

impl Iterator for Partitions {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        let cur = self.current.take()?;
        let out = Partition { parts: cur.clone() };
        // Decrement the rightmost part exceeding 1, then repack the freed
        // cells greedily at the new maximum.
        if let Some(i) = cur.iter().rposition(|&p| p > 1) {
            let cap = cur[i] - 1;
            let mut rem = cur[i] + (cur.len() - 1 - i) as u32;
            let mut next = cur[..i].to_vec();
            while rem > cap {
                next.push(cap);
                rem -= cap;
            }
            next.push(rem);
            self.current = Some(next);
        }
        Some(out)
    }
}

/// `p(n)` by the pentagonal-number recurrence; independent of
/// [`partitions_of`] so the two can cross-check each other.
pub fn partition_count(n: u32) -> BigUint {
    let n = n as usize;
    let mut p: Vec<BigUint> = Vec::with_capacity(n + 1);
    p.push(BigUint::from(1u32));
    for m in 1..=n {
        let mut total = BigUint::zero();
        let mut negative_total = BigUint::zero();
        let mut k = 1usize;
        loop {
            let g1 = k * (3 * k - 1) / 2;
            if g1 > m {
                break;
            }
            let g2 = k * (3 * k + 1) / 2;
            let sign_positive = k % 2 == 1;
            for g in [g1, g2] {
                if g <= m {
                    if sign_positive {
                        total += &p[m - g];
                    } else {
                        negative_total += &p[m - g];
                    }
                }
            }
            k += 1;
        }
        p.push(total - negative_total);
    }
    p.pop().expect("table is nonempty")
}

/// One rook-equivalence class of partitions of a fixed size.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RookEquivalenceClass {
    /// Reverse-lexicographically first member.
    pub representative: Partition,
    pub diagonal: DiagonalVector,
    pub members: u64,
}

/// Groups all partitions of `n` by diagonal vector. Classes come back in
/// order of their representative (equivalently, of first appearance in
/// enumeration order).
pub fn equivalence_classes(n: u32) -> Vec<RookEquivalenceClass> {
    let mut classes: Vec<RookEquivalenceClass> = Vec::new();
    let mut index: HashMap<DiagonalVector, usize> = HashMap::new();
    for p in partitions_of(n) {
        let diag = p.diagonal_vector();
        match index.get(&diag) {
            Some(&i) => classes[i].members += 1,
            None => {
                index.insert(diag.clone(), classes.len());
                classes.push(RookEquivalenceClass {
                    representative: p,
                    diagonal: diag,
                    members: 1,
                });
            }
        }
    }
    classes
}

/// Every partition of `|λ|` sharing `λ`'s diagonal vector (including `λ`),
/// in enumeration order.
pub fn class_members(lambda: &Partition) -> Vec<Partition> {
    let diag = lambda.diagonal_vector();
    partitions_of(lambda.size() as u32)
        .filter(|p| p.diagonal_vector() == diag)
        .collect()
}
