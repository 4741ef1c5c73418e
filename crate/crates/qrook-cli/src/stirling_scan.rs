//! Checkpointed, row-parallel log-concavity scan of the q-Stirling triangle.
//!
//! Row `n` is built from row `n - 1` alone, so only two rows are ever in
//! memory. With `W` workers the row's column range is split into `W`
//! contiguous chunks computed concurrently and merged back in column order;
//! output is identical for every `W`. Resuming rebuilds rows up to the
//! checkpoint without re-testing them (the rows themselves are far too large
//! to persist), then continues both building and testing.

use std::io;

use qrook_core::qstirling::row_entry;
use qrook_core::IntPolynomial;

use crate::checkpoint::{CheckpointWriter, ReportSink};
use crate::records::{
    Record, StirlingCheckpoint, StirlingFailure, StirlingRow, StirlingSummary, WitnessRecord,
};

#[derive(Clone, Copy, Debug)]
pub struct StirlingScanConfig {
    pub max_n: usize,
    pub workers: usize,
}

#[derive(Clone, Debug, Default)]
pub struct StirlingResume {
    /// Rows `1..=row` are already reported.
    pub row: usize,
    pub entries_checked: u64,
    pub failures: u64,
}

#[derive(Clone, Debug, Default)]
pub struct StirlingOutcome {
    pub rows_scanned: usize,
    pub entries_checked: u64,
    pub failures: u64,
    pub stopped: bool,
}

/// Progress after each reported row.
pub struct StirlingProgress {
    pub n: usize,
    pub entries_checked: u64,
    pub failures: u64,
}

pub fn run_stirling_scan(
    config: &StirlingScanConfig,
    sink: &mut ReportSink,
    mut checkpoints: Option<&mut CheckpointWriter>,
    control: &mut dyn FnMut(&StirlingProgress) -> bool,
    resume: Option<StirlingResume>,
) -> io::Result<StirlingOutcome> {
    let workers = config.workers.max(1);
    let resume = resume.unwrap_or_default();
    let mut outcome = StirlingOutcome {
        entries_checked: resume.entries_checked,
        failures: resume.failures,
        ..StirlingOutcome::default()
    };

    let mut prev: Vec<IntPolynomial> = vec![IntPolynomial::one()];
    for n in 1..=config.max_n {
        let test = n > resume.row;
        let row = compute_row(&prev, workers, test, &mut |k, witness| {
            outcome.entries_checked += 1;
            if let Some(witness) = witness {
                outcome.failures += 1;
                sink.write_record(&Record::StirlingFailure(StirlingFailure { n, k, witness }))?;
            }
            Ok(())
        })?;
        outcome.rows_scanned = n;
        prev = row;
        if !test {
            continue;
        }

        sink.write_record(&Record::StirlingRow(StirlingRow {
            n,
            entries_checked: outcome.entries_checked,
            failures_so_far: outcome.failures,
        }))?;
        sink.flush()?;
        if let Some(writer) = checkpoints.as_deref_mut() {
            writer.write_record(&Record::StirlingCheckpoint(StirlingCheckpoint {
                max_n: config.max_n,
                row: n,
                report_bytes: sink.bytes_written(),
                entries_checked: outcome.entries_checked,
                failures: outcome.failures,
            }))?;
        }
        let progress = StirlingProgress {
            n,
            entries_checked: outcome.entries_checked,
            failures: outcome.failures,
        };
        if !control(&progress) {
            outcome.stopped = true;
            return Ok(outcome);
        }
    }

    sink.write_record(&Record::StirlingSummary(StirlingSummary {
        max_n: config.max_n,
        entries_checked: outcome.entries_checked,
        failures: outcome.failures,
    }))?;
    sink.flush()?;
    Ok(outcome)
}

/// Builds the next row from `prev`, optionally testing log-concavity of each
/// entry `k >= 1`. `on_entry` is called in ascending column order.
fn compute_row(
    prev: &[IntPolynomial],
    workers: usize,
    test: bool,
    on_entry: &mut dyn FnMut(usize, Option<WitnessRecord>) -> io::Result<()>,
) -> io::Result<Vec<IntPolynomial>> {
    let cols = prev.len() + 1;
    let chunk = cols.div_ceil(workers);
    let mut pieces: Vec<Vec<(IntPolynomial, Option<WitnessRecord>)>> = Vec::new();
    std::thread::scope(|scope| {
        let mut handles = Vec::new();
        for w in 0..workers {
            let lo = w * chunk;
            let hi = ((w + 1) * chunk).min(cols);
            if lo >= hi {
                break;
            }
            handles.push(scope.spawn(move || {
                (lo..hi)
                    .map(|k| {
                        let entry = row_entry(prev, k);
                        let witness = (test && k >= 1)
                            .then(|| {
                                entry
                                    .log_concavity_failure()
                                    .expect("q-Stirling coefficients are nonnegative")
                                    .map(|b| WitnessRecord::log_concavity(&entry, b))
                            })
                            .flatten();
                        (entry, witness)
                    })
                    .collect::<Vec<_>>()
            }));
        }
        for handle in handles {
            pieces.push(handle.join().expect("row workers do not panic"));
        }
    });

    let mut row = Vec::with_capacity(cols);
    for (k, (entry, witness)) in pieces.into_iter().flatten().enumerate() {
        if test && k >= 1 {
            on_entry(k, witness)?;
        }
        row.push(entry);
    }
    Ok(row)
}
