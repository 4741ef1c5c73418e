//! q-Stirling numbers of the second kind and q-Bell numbers.
//!
//! `S_q(n, k)` satisfies `S_q(n, k) = q^(k-1) S_q(n-1, k-1) + [k]_q S_q(n-1, k)`
//! with `S_q(0, k) = δ_{0,k}`; at `q = 1` it reduces to the classical Stirling
//! recurrence. Rows are filled bottom-up, and row `n` needs only row `n - 1`,
//! which is what keeps the long log-concavity scans within memory.

use alloc::vec;
use alloc::vec::Vec;

use crate::poly::{q_integer, IntPolynomial, LogConcavityBreak};

/// Triangular table of `S_q(n, k)` for `0 <= k <= n <= n_max`.
pub struct QStirlingTable {
    rows: Vec<Vec<IntPolynomial>>,
}

impl QStirlingTable {
    /// Fills the table bottom-up to `n_max`.
    pub fn up_to(n_max: usize) -> Self {
        let mut rows: Vec<Vec<IntPolynomial>> = Vec::with_capacity(n_max + 1);
        rows.push(vec![IntPolynomial::one()]);
        for n in 1..=n_max {
            let next = next_row(&rows[n - 1]);
            rows.push(next);
        }
        QStirlingTable { rows }
    }

    pub fn n_max(&self) -> usize {
        self.rows.len() - 1
    }

    /// `S_q(n, k)`; zero beyond the triangle. Panics if `n` exceeds the table.
    pub fn get(&self, n: usize, k: usize) -> IntPolynomial {
        if k > n {
            return IntPolynomial::zero();
        }
        self.rows[n][k].clone()
    }
}

/// Entry `k` of row `n` given row `n - 1` (`prev[k]` is `S_q(n-1, k)`, so
/// `prev.len() == n`). Entries within a row are independent given the
/// previous row, so callers may compute them in any order or in parallel.
pub fn row_entry(prev: &[IntPolynomial], k: usize) -> IntPolynomial {
    let n = prev.len();
    if k == 0 || k > n {
        // S_q(n, 0) = 0 for n > 0; beyond the triangle everything is zero.
        return IntPolynomial::zero();
    }
    let carry = prev[k - 1].shift(k - 1);
    if k < n {
        &carry + &(&q_integer(k as i64) * &prev[k])
    } else {
        carry
    }
}

/// Row `n` of the triangle from row `n - 1`.
pub fn next_row(prev: &[IntPolynomial]) -> Vec<IntPolynomial> {
    (0..=prev.len()).map(|k| row_entry(prev, k)).collect()
}

/// `S_q(n, k)` via a table up to `n`. Zero for `k > n`.
pub fn qstirling(n: usize, k: usize) -> IntPolynomial {
    QStirlingTable::up_to(n).get(n, k)
}

/// `S_q(n, k)` through the complete homogeneous symmetric polynomial:
/// `q^C(k,2) · h_{n-k}([1]_q, ..., [k]_q)`, computed with the variable-
/// extension recurrence `h_m(x_1..x_j) = h_m(x_1..x_{j-1}) + x_j h_{m-1}(x_1..x_j)`.
/// An independent route used to cross-check [`qstirling`].
pub fn qstirling_via_h(n: usize, k: usize) -> IntPolynomial {
    assert!(k >= 1 && k <= n, "requires 1 <= k <= n");
    let m = n - k;
    // h[d] holds h_d over the variables admitted so far; starts over zero
    // variables where h_0 = 1 and h_d = 0 for d > 0.
    let mut h = vec![IntPolynomial::zero(); m + 1];
    h[0] = IntPolynomial::one();
    for j in 1..=k {
        let x = q_integer(j as i64);
        for d in 1..=m {
            let extended = &x * &h[d - 1];
            h[d] = &h[d] + &extended;
        }
    }
    h[m].shift(k * (k - 1) / 2)
}

/// The q-Bell polynomial `B_q(n) = Σ_k S_q(n, k)`.
pub fn qbell(n: usize) -> IntPolynomial {
    let table = QStirlingTable::up_to(n);
    let mut acc = IntPolynomial::zero();
    for k in 0..=n {
        acc += &table.get(n, k);
    }
    acc
}

/// One failed entry of a log-concavity scan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QStirlingLogConcavityFailure {
    pub n: usize,
    pub k: usize,
    pub witness: LogConcavityBreak,
}

/// Progress of a scan after finishing row `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowProgress {
    pub n: usize,
    pub entries_checked: usize,
    pub failures_so_far: usize,
}

/// Outcome of [`scan_log_concavity`].
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LogConcavityScan {
    pub rows_scanned: usize,
    pub entries_checked: usize,
    pub failures: Vec<QStirlingLogConcavityFailure>,
}

/// Tests every `S_q(n, k)` with `1 <= k <= n <= n_max` for log-concavity,
/// keeping only two rows in memory. `on_row` fires after each completed row;
/// `start_row` rows are rebuilt without re-testing (resume support).
pub fn scan_log_concavity(
    n_max: usize,
    start_row: usize,
    mut on_row: impl FnMut(&RowProgress),
) -> LogConcavityScan {
    let mut scan = LogConcavityScan::default();
    let mut prev = vec![IntPolynomial::one()];
    for n in 1..=n_max {
        let row = next_row(&prev);
        if n > start_row {
            for (k, entry) in row.iter().enumerate().skip(1) {
                scan.entries_checked += 1;
                if let Some(witness) = entry
                    .log_concavity_failure()
                    .expect("q-Stirling coefficients are nonnegative")
                {
                    scan.failures
                        .push(QStirlingLogConcavityFailure { n, k, witness });
                }
            }
            on_row(&RowProgress {
                n,
                entries_checked: scan.entries_checked,
                failures_so_far: scan.failures.len(),
            });
        }
        scan.rows_scanned = n;
        prev = row;
    }
    scan
}
