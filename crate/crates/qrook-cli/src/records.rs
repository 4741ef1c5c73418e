//! JSON Lines records written by the scan drivers: class reports, per-size
//! summaries, checkpoints, and q-Stirling scan progress.
//!
//! One record per line, UTF-8, tagged by `"kind"`. Partitions are serialized
//! as part arrays, big integers as decimal strings. Field order is fixed by
//! the struct definitions, which is what makes merged reports byte-stable
//! across worker counts and resumes.

use qrook_core::poly::{LogConcavityBreak, ValleyWitness};
use qrook_core::IntPolynomial;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Record {
    ClassReport(ClassReport),
    SizeSummary(SizeSummary),
    Checkpoint(Checkpoint),
    StirlingRow(StirlingRow),
    StirlingFailure(StirlingFailure),
    StirlingSummary(StirlingSummary),
    StirlingCheckpoint(StirlingCheckpoint),
}

/// Verdicts for one scanned item (a class representative or a single
/// partition).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassReport {
    pub n: u32,
    /// Position in the canonical enumeration order of the size.
    pub index: u64,
    pub partition: Vec<u32>,
    pub diagonal: Vec<u32>,
    /// Partitions in the rook-equivalence class (1 in per-partition mode).
    pub members: u64,
    pub checks: Vec<CheckRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRecord {
    /// Absent for total-polynomial checks.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
    pub property: Property,
    pub holds: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessRecord>,
    /// `ℓ(λ) - k` for failed per-rank checks.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gap: Option<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Property {
    Unimodal,
    LogConcave,
}

impl std::fmt::Display for Property {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Property::Unimodal => write!(f, "unimodal"),
            Property::LogConcave => write!(f, "log-concave"),
        }
    }
}

/// A re-verifiable description of why a check failed. Coefficient values are
/// decimal strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum WitnessRecord {
    /// Exponents `left < valley < right` with
    /// `a[left] > a[valley] < a[right]`.
    Valley {
        left: usize,
        valley: usize,
        right: usize,
        left_value: String,
        valley_value: String,
        right_value: String,
    },
    /// Exponent `e` with `a[e]^2 < a[e-1] * a[e+1]` (or an internal zero).
    LogConcavityBreak {
        exponent: usize,
        prev_value: String,
        value: String,
        next_value: String,
    },
}

impl WitnessRecord {
    pub fn valley(poly: &IntPolynomial, w: ValleyWitness) -> Self {
        WitnessRecord::Valley {
            left: w.left,
            valley: w.valley,
            right: w.right,
            left_value: poly.coeff(w.left).to_string(),
            valley_value: poly.coeff(w.valley).to_string(),
            right_value: poly.coeff(w.right).to_string(),
        }
    }

    pub fn log_concavity(poly: &IntPolynomial, w: LogConcavityBreak) -> Self {
        WitnessRecord::LogConcavityBreak {
            exponent: w.exponent,
            prev_value: poly.coeff(w.exponent - 1).to_string(),
            value: poly.coeff(w.exponent).to_string(),
            next_value: poly.coeff(w.exponent + 1).to_string(),
        }
    }

    /// Human form, e.g. `a[14]=21 > a[15]=20 < a[16]=22`.
    pub fn describe(&self) -> String {
        match self {
            WitnessRecord::Valley {
                left,
                valley,
                right,
                left_value,
                valley_value,
                right_value,
            } => format!(
                "a[{}]={} > a[{}]={} < a[{}]={}",
                left, left_value, valley, valley_value, right, right_value
            ),
            WitnessRecord::LogConcavityBreak {
                exponent,
                prev_value,
                value,
                next_value,
            } => format!(
                "a[{e}]^2 = {v}^2 < a[{pe}]*a[{ne}] = {p}*{nx}",
                e = exponent,
                v = value,
                pe = exponent - 1,
                ne = exponent + 1,
                p = prev_value,
                nx = next_value
            ),
        }
    }
}

/// Totals for one completed size.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SizeSummary {
    pub n: u32,
    /// Partitions covered (class member counts sum to p(n) in class mode).
    pub partitions: u64,
    /// Distinct rook-equivalence classes; absent in per-partition mode.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub classes: Option<u64>,
    /// Items scanned: classes or partitions depending on mode.
    pub items: u64,
    /// Items with at least one failed check.
    pub failures: u64,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counts {
    pub items: u64,
    pub partitions: u64,
    pub failures: u64,
}

/// Resumable position of a search. `cursor` items of size `next_size` are
/// complete and their reports occupy the first `report_bytes` bytes of the
/// report file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Checkpoint {
    pub fingerprint: String,
    pub next_size: u32,
    pub cursor: u64,
    pub report_bytes: u64,
    pub totals: Counts,
    pub size_progress: Counts,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StirlingRow {
    pub n: usize,
    pub entries_checked: u64,
    pub failures_so_far: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StirlingFailure {
    pub n: usize,
    pub k: usize,
    pub witness: WitnessRecord,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StirlingSummary {
    pub max_n: usize,
    pub entries_checked: u64,
    pub failures: u64,
}

/// Resumable position of a q-Stirling scan: rows `1..=row` are fully
/// reported.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StirlingCheckpoint {
    pub max_n: usize,
    pub row: usize,
    pub report_bytes: u64,
    pub entries_checked: u64,
    pub failures: u64,
}

impl Record {
    pub fn to_json_line(&self) -> String {
        let mut line = serde_json::to_string(self).expect("records serialize infallibly");
        line.push('\n');
        line
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn records_round_trip_through_json_lines() {
        let record = Record::ClassReport(ClassReport {
            n: 25,
            index: 57,
            partition: vec![10, 9, 3, 2, 1],
            diagonal: vec![1, 2, 3, 4, 5, 2, 2, 2, 2, 2],
            members: 5,
            checks: vec![CheckRecord {
                rank: Some(2),
                property: Property::Unimodal,
                holds: false,
                witness: Some(WitnessRecord::Valley {
                    left: 14,
                    valley: 15,
                    right: 16,
                    left_value: "21".into(),
                    valley_value: "20".into(),
                    right_value: "22".into(),
                }),
                gap: Some(3),
            }],
        });
        let line = record.to_json_line();
        assert!(line.starts_with("{\"kind\":\"class_report\""));
        let parsed: Record = serde_json::from_str(line.trim()).unwrap();
        assert_eq!(parsed, record);
    }

    #[test]
    fn witness_description_shows_the_valley() {
        let poly = IntPolynomial::from_coeffs([1i64, 0, 2]);
        let w = poly.unimodality_failure().unwrap().unwrap();
        let record = WitnessRecord::valley(&poly, w);
        assert_eq!(record.describe(), "a[0]=1 > a[1]=0 < a[2]=2");
    }
}
