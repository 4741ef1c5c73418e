//! Exhaustive, checkpointed, sharded scans over partitions.
//!
//! A task walks a size range; within each size, items (rook-equivalence
//! class representatives, or every partition) are indexed by their position
//! in the canonical reverse-lexicographic enumeration order and processed in
//! blocks. Inside a block, worker `w` of `W` owns exactly the items with
//! `index mod W == w`, each with a private recurrence memo; results are
//! merged back in index order. Block boundaries and record contents depend
//! only on the task, never on the worker count, so merged reports are
//! byte-identical for any `W` and across kill/resume.

use std::io;
use std::ops::RangeInclusive;

use qrook_core::{
    equivalence_classes, partitions_of, qrook_with_memo, total_qrook_with_memo, DiagonalVector,
    IntPolynomial, Partition, RookMemo,
};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::checkpoint::{CheckpointWriter, ReportSink};
use crate::records::{
    CheckRecord, Checkpoint, ClassReport, Counts, Property, Record, SizeSummary, WitnessRecord,
};

/// Which ranks of each board a scan tests.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum RankSelector {
    /// Every rank `0 ..= ℓ(λ)`, the cheap provably-unimodal ones included as
    /// online sanity checks.
    All,
    /// Only rank `ℓ(λ) - 1`.
    EllMinusOne,
    /// An explicit list.
    List(Vec<usize>),
}

/// What property a scan tests.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Target {
    /// Unimodality of the selected per-rank polynomials.
    Unimodal,
    /// Unimodality of the total polynomial (rank selector unused).
    TotalUnimodal,
    /// Log-concavity of the selected per-rank polynomials.
    LogConcave,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ClassMode {
    /// One representative per rook-equivalence class (sound by the
    /// equivalence theorem, ~30x cheaper at size 40).
    Representatives,
    /// Every partition separately; exercises the equivalence theorem at
    /// scale and lists all class members.
    PerPartition,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchTask {
    pub sizes: RangeInclusive<u32>,
    pub ranks: RankSelector,
    pub target: Target,
    pub class_mode: ClassMode,
    /// Also report items whose checks all hold.
    pub report_successes: bool,
}

impl SearchTask {
    /// Canonical one-line description; the fingerprint hashes this.
    pub fn canonical_string(&self) -> String {
        let ranks = match &self.ranks {
            RankSelector::All => "all".to_string(),
            RankSelector::EllMinusOne => "ell-1".to_string(),
            RankSelector::List(list) => list
                .iter()
                .map(|k| k.to_string())
                .collect::<Vec<_>>()
                .join(","),
        };
        let target = match self.target {
            Target::Unimodal => "unimodal",
            Target::TotalUnimodal => "total",
            Target::LogConcave => "log-concave",
        };
        let mode = match self.class_mode {
            ClassMode::Representatives => "classes",
            ClassMode::PerPartition => "partitions",
        };
        format!(
            "sizes={}..{};ranks={};target={};mode={};successes={}",
            self.sizes.start(),
            self.sizes.end(),
            ranks,
            target,
            mode,
            self.report_successes
        )
    }

    /// Hex digest identifying the task; checkpoints from a different task are
    /// refused. The worker count is deliberately not part of it: output is
    /// worker-invariant.
    pub fn fingerprint(&self) -> String {
        let digest = Sha256::digest(self.canonical_string().as_bytes());
        let mut hex = String::with_capacity(16);
        for byte in &digest[..8] {
            hex.push_str(&format!("{:02x}", byte));
        }
        hex
    }
}

#[derive(Clone, Copy, Debug)]
pub struct RunConfig {
    pub workers: usize,
    /// Items per block; a checkpoint lands after every block.
    pub block_size: usize,
    /// High-water entry count of each worker's memo.
    pub memo_limit: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            workers: 1,
            block_size: 1024,
            memo_limit: 1_000_000,
        }
    }
}

/// Where to pick up an interrupted run.
#[derive(Clone, Debug, Default)]
pub struct ResumePoint {
    pub next_size: u32,
    pub cursor: u64,
    pub totals: Counts,
    pub size_progress: Counts,
}

impl ResumePoint {
    pub fn from_checkpoint(c: &Checkpoint) -> Self {
        ResumePoint {
            next_size: c.next_size,
            cursor: c.cursor,
            totals: c.totals,
            size_progress: c.size_progress,
        }
    }
}

/// Progress handed to the control callback after every flushed block.
pub struct ProgressEvent<'a> {
    pub size: u32,
    pub cursor: u64,
    pub items_in_size: u64,
    /// Set when this block completed the size.
    pub finished_size: Option<&'a SizeSummary>,
    pub totals: Counts,
}

#[derive(Clone, Debug, Default)]
pub struct SearchOutcome {
    pub summaries: Vec<SizeSummary>,
    pub totals: Counts,
    /// True when the control callback stopped the run early.
    pub stopped: bool,
}

struct ScanItem {
    partition: Partition,
    diagonal: DiagonalVector,
    members: u64,
}

enum ItemSource {
    Classes(std::vec::IntoIter<ScanItem>),
    Stream(qrook_core::partition::Partitions),
}

impl ItemSource {
    fn for_size(n: u32, mode: ClassMode, skip: u64) -> (Self, u64) {
        match mode {
            ClassMode::Representatives => {
                let items: Vec<ScanItem> = equivalence_classes(n)
                    .into_iter()
                    .map(|c| ScanItem {
                        partition: c.representative,
                        diagonal: c.diagonal,
                        members: c.members,
                    })
                    .collect();
                let total = items.len() as u64;
                let mut iter = items.into_iter();
                for _ in 0..skip {
                    iter.next();
                }
                (ItemSource::Classes(iter), total)
            }
            ClassMode::PerPartition => {
                let total = qrook_core::partition_count(n)
                    .try_into()
                    .expect("partition counts in scan range fit in u64");
                let mut iter = partitions_of(n);
                for _ in 0..skip {
                    iter.next();
                }
                (ItemSource::Stream(iter), total)
            }
        }
    }

    fn next_block(&mut self, len: usize) -> Vec<ScanItem> {
        let mut block = Vec::with_capacity(len);
        for _ in 0..len {
            let item = match self {
                ItemSource::Classes(iter) => iter.next(),
                ItemSource::Stream(iter) => iter.next().map(|p| {
                    let diagonal = p.diagonal_vector();
                    ScanItem {
                        partition: p,
                        diagonal,
                        members: 1,
                    }
                }),
            };
            match item {
                Some(item) => block.push(item),
                None => break,
            }
        }
        block
    }
}

fn ranks_for(selector: &RankSelector, lambda: &Partition) -> Vec<usize> {
    match selector {
        RankSelector::All => (0..=lambda.len()).collect(),
        RankSelector::EllMinusOne => vec![lambda.len().saturating_sub(1)],
        RankSelector::List(list) => list.clone(),
    }
}

fn check_polynomial(
    rank: Option<usize>,
    property: Property,
    poly: &IntPolynomial,
    ell: usize,
) -> CheckRecord {
    let witness = match property {
        Property::Unimodal => poly
            .unimodality_failure()
            .expect("q-rook coefficients are nonnegative")
            .map(|w| WitnessRecord::valley(poly, w)),
        Property::LogConcave => poly
            .log_concavity_failure()
            .expect("q-rook coefficients are nonnegative")
            .map(|w| WitnessRecord::log_concavity(poly, w)),
    };
    let holds = witness.is_none();
    let gap = match (holds, rank) {
        (false, Some(k)) => Some((ell - k) as u64),
        _ => None,
    };
    CheckRecord {
        rank,
        property,
        holds,
        witness,
        gap,
    }
}

fn evaluate_item(task: &SearchTask, item: &ScanItem, memo: &mut RookMemo) -> Vec<CheckRecord> {
    let lambda = &item.partition;
    match task.target {
        Target::TotalUnimodal => {
            let total = total_qrook_with_memo(lambda, memo);
            vec![check_polynomial(
                None,
                Property::Unimodal,
                &total,
                lambda.len(),
            )]
        }
        Target::Unimodal | Target::LogConcave => {
            let property = if task.target == Target::Unimodal {
                Property::Unimodal
            } else {
                Property::LogConcave
            };
            ranks_for(&task.ranks, lambda)
                .into_iter()
                .map(|k| {
                    let poly = qrook_with_memo(lambda, k, memo);
                    check_polynomial(Some(k), property, &poly, lambda.len())
                })
                .collect()
        }
    }
}

/// Whether worker `w` of `W` owns the item at enumeration position `index`.
/// Assignment is purely positional: residue classes of the canonical order,
/// so any worker count covers each item exactly once and the index-merged
/// output is the same for every `W`.
pub fn shard_accepts(index: u64, worker: usize, workers: usize) -> bool {
    index % workers as u64 == worker as u64
}

/// Runs `task`, streaming records into `sink` and (optionally) checkpoints
/// into `checkpoints`. `control` fires after each flushed block; returning
/// `false` stops the run at a valid resumable point. `resume` positions the
/// run mid-task; counts continue from it.
pub fn run_search(
    task: &SearchTask,
    config: &RunConfig,
    sink: &mut ReportSink,
    mut checkpoints: Option<&mut CheckpointWriter>,
    control: &mut dyn FnMut(&ProgressEvent) -> bool,
    resume: Option<ResumePoint>,
) -> io::Result<SearchOutcome> {
    let workers = config.workers.max(1);
    let block_size = config.block_size.max(1);
    let fingerprint = task.fingerprint();
    let resume = resume.unwrap_or(ResumePoint {
        next_size: *task.sizes.start(),
        ..ResumePoint::default()
    });

    let mut outcome = SearchOutcome {
        totals: resume.totals,
        ..SearchOutcome::default()
    };
    let mut memos: Vec<RookMemo> = Vec::new();

    for n in task.sizes.clone() {
        if n < resume.next_size {
            continue;
        }
        let starting_cursor = if n == resume.next_size {
            resume.cursor
        } else {
            0
        };
        let mut size_progress = if n == resume.next_size {
            resume.size_progress
        } else {
            Counts::default()
        };

        let (mut source, items_in_size) = ItemSource::for_size(n, task.class_mode, starting_cursor);
        let mut cursor = starting_cursor;

        // Fresh memos per size: reuse within a size is what pays, growth
        // across sizes is what hurts.
        memos.clear();
        memos.resize_with(workers, || RookMemo::with_limit(config.memo_limit));

        while cursor < items_in_size {
            let want = block_size.min((items_in_size - cursor) as usize);
            let block = source.next_block(want);
            debug_assert_eq!(block.len(), want);

            // Shard by global index residue, then merge back in index order.
            let mut shards: Vec<Vec<(u64, ScanItem)>> = (0..workers).map(|_| Vec::new()).collect();
            for (offset, item) in block.into_iter().enumerate() {
                let index = cursor + offset as u64;
                let owner = (index % workers as u64) as usize;
                debug_assert!(shard_accepts(index, owner, workers));
                shards[owner].push((index, item));
            }

            let mut results: Vec<(u64, ScanItem, Vec<CheckRecord>)> = Vec::with_capacity(want);
            std::thread::scope(|scope| {
                let mut handles = Vec::with_capacity(workers);
                for (shard, memo) in shards.into_iter().zip(memos.iter_mut()) {
                    handles.push(scope.spawn(move || {
                        shard
                            .into_iter()
                            .map(|(index, item)| {
                                let checks = evaluate_item(task, &item, memo);
                                (index, item, checks)
                            })
                            .collect::<Vec<_>>()
                    }));
                }
                for handle in handles {
                    results.extend(handle.join().expect("scan workers do not panic"));
                }
            });
            results.sort_by_key(|(index, _, _)| *index);

            for (index, item, checks) in results {
                let failed = checks.iter().any(|c| !c.holds);
                size_progress.items += 1;
                size_progress.partitions += item.members;
                outcome.totals.items += 1;
                outcome.totals.partitions += item.members;
                if failed {
                    size_progress.failures += 1;
                    outcome.totals.failures += 1;
                }
                if failed || task.report_successes {
                    sink.write_record(&Record::ClassReport(ClassReport {
                        n,
                        index,
                        partition: item.partition.parts().to_vec(),
                        diagonal: item.diagonal.counts().to_vec(),
                        members: item.members,
                        checks,
                    }))?;
                }
            }
            cursor += want as u64;

            let finished = cursor == items_in_size;
            let summary = finished.then_some(SizeSummary {
                n,
                partitions: size_progress.partitions,
                classes: match task.class_mode {
                    ClassMode::Representatives => Some(items_in_size),
                    ClassMode::PerPartition => None,
                },
                items: size_progress.items,
                failures: size_progress.failures,
            });
            if let Some(summary) = &summary {
                sink.write_record(&Record::SizeSummary(summary.clone()))?;
            }
            sink.flush()?;

            let (next_size, next_cursor, next_progress) = if finished {
                (n + 1, 0, Counts::default())
            } else {
                (n, cursor, size_progress)
            };
            if let Some(writer) = checkpoints.as_deref_mut() {
                writer.write_record(&Record::Checkpoint(Checkpoint {
                    fingerprint: fingerprint.clone(),
                    next_size,
                    cursor: next_cursor,
                    report_bytes: sink.bytes_written(),
                    totals: outcome.totals,
                    size_progress: next_progress,
                }))?;
            }

            let event = ProgressEvent {
                size: n,
                cursor,
                items_in_size,
                finished_size: summary.as_ref(),
                totals: outcome.totals,
            };
            if let Some(summary) = summary.clone() {
                outcome.summaries.push(summary);
            }
            if !control(&event) {
                outcome.stopped = true;
                return Ok(outcome);
            }
        }

        // Sizes with zero items (cannot happen for n >= 1) would still need
        // their summary; the loop above always runs at least one block since
        // every size has at least one partition.
    }
    Ok(outcome)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn task_sizes_1_to(n: u32) -> SearchTask {
        SearchTask {
            sizes: 1..=n,
            ranks: RankSelector::List(vec![2]),
            target: Target::Unimodal,
            class_mode: ClassMode::Representatives,
            report_successes: false,
        }
    }

    #[test]
    fn fingerprint_depends_on_task_fields() {
        let a = task_sizes_1_to(25);
        let mut b = task_sizes_1_to(25);
        assert_eq!(a.fingerprint(), b.fingerprint());
        b.ranks = RankSelector::List(vec![3]);
        assert_ne!(a.fingerprint(), b.fingerprint());
    }

    #[test]
    fn shards_partition_every_index_exactly_once() {
        assert!(shard_accepts(7, 1, 3));
        assert!(shard_accepts(7, 0, 1));
        for workers in [1usize, 2, 3, 8] {
            for index in 0..100u64 {
                let owners = (0..workers)
                    .filter(|&w| shard_accepts(index, w, workers))
                    .count();
                assert_eq!(owners, 1, "index {} workers {}", index, workers);
            }
        }
    }

    #[test]
    fn first_failure_is_the_size_25_class() {
        let task = task_sizes_1_to(25);
        let mut sink = ReportSink::sink();
        let outcome = run_search(
            &task,
            &RunConfig::default(),
            &mut sink,
            None,
            &mut |_| true,
            None,
        )
        .unwrap();
        assert_eq!(outcome.totals.failures, 1);
        let last = outcome.summaries.last().unwrap();
        assert_eq!(last.n, 25);
        assert_eq!(last.failures, 1);
        assert_eq!(last.partitions, 1958);
        assert_eq!(last.classes, Some(142));
        assert!(outcome.summaries[..24].iter().all(|s| s.failures == 0));
    }

    #[test]
    fn ell_minus_one_selector_uses_each_items_length() {
        let task = SearchTask {
            sizes: 1..=6,
            ranks: RankSelector::EllMinusOne,
            target: Target::Unimodal,
            class_mode: ClassMode::PerPartition,
            report_successes: false,
        };
        let outcome = run_search(
            &task,
            &RunConfig::default(),
            &mut ReportSink::sink(),
            None,
            &mut |_| true,
            None,
        )
        .unwrap();
        assert_eq!(outcome.totals.failures, 0);
        let total_partitions: u64 = (1..=6u32)
            .map(|n| u64::try_from(qrook_core::partition_count(n)).unwrap())
            .sum();
        assert_eq!(outcome.totals.items, total_partitions);
    }
}
