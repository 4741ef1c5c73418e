//! The `qrook` command-line tool.
//!
//! Exit codes: 0 success / property holds; 1 property fails (check, or
//! search with --fail-on-find); 2 usage error; 3 cross-method verification
//! mismatch; 4 checkpoint mismatch; 10 unexpected internal error.

use std::fmt;
use std::io::Write;
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};

use qrook_cli::checkpoint::{
    last_valid_record, truncate_to, CheckpointWriter, ReportSink, ResumeError,
};
use qrook_cli::output::{
    render, CheckOutput, ComputeOutput, Format, MatrixCountOutput, RankPolynomial, StirlingEntry,
    StirlingOutput, StirlingRowOutput,
};
use qrook_cli::records::{Property, Record, WitnessRecord};
use qrook_cli::search::{
    run_search, ClassMode, RankSelector, ResumePoint, RunConfig, SearchTask, Target,
};
use qrook_cli::stirling_scan::{run_stirling_scan, StirlingResume, StirlingScanConfig};
use qrook_core::{
    count_rank_matrices, predicted_rank_matrices, qrook_enumerate, qrook_full_rank, qrook_rank_one,
    qrook_with_memo, total_qrook_with_memo, IntPolynomial, Partition, QStirlingTable, RookMemo,
};

const WORKERS_ENV: &str = "QROOK_WORKERS";

#[derive(Parser)]
#[command(
    name = "qrook",
    version,
    about = "Exact q-rook polynomials on Ferrers boards: compute, test, and scan",
    after_help = "Exit codes: 0 ok/holds, 1 property fails, 2 usage, \
                  3 verification mismatch, 4 checkpoint mismatch, 10 internal error."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Suppress progress output on stderr.
    #[arg(short, long, global = true)]
    quiet: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Compute q-rook polynomials of a board.
    Compute(ComputeArgs),
    /// Test unimodality or log-concavity of one polynomial.
    Check(CheckArgs),
    /// Scan size ranges for failures, sharded and checkpointed.
    Search(SearchArgs),
    /// q-Stirling numbers: single entries, rows, or the log-concavity scan.
    Stirling(StirlingArgs),
    /// Count finite-field matrices of given rank supported on a board.
    MatrixCount(MatrixCountArgs),
}

#[derive(Args)]
struct EnvelopeArgs {
    /// Output format.
    #[arg(long, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,
    /// Write output to a file instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Text,
    Json,
    Csv,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Format {
        match f {
            FormatArg::Text => Format::Text,
            FormatArg::Json => Format::Json,
            FormatArg::Csv => Format::Csv,
        }
    }
}

#[derive(Args)]
struct ComputeArgs {
    /// Comma-separated parts, e.g. "10,9,3,2,1"; empty for the empty board.
    #[arg(long)]
    partition: String,
    /// Number of rooks.
    #[arg(
        long,
        conflicts_with = "all_ranks",
        required_unless_present = "all_ranks"
    )]
    rank: Option<usize>,
    /// Compute every rank 0..=ℓ.
    #[arg(long)]
    all_ranks: bool,
    #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
    method: MethodArg,
    /// Cross-check recurrence, closed forms, and (small boards) enumeration;
    /// disagreement exits 3.
    #[arg(long)]
    verify: bool,
    #[command(flatten)]
    envelope: EnvelopeArgs,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    /// Closed forms where they exist, recurrence otherwise.
    Auto,
    Recurrence,
    /// Brute-force placement enumeration (boards up to 20 cells).
    Enumerate,
    /// Ranks 0, 1, and ℓ only.
    ClosedForm,
}

#[derive(Args)]
struct CheckArgs {
    #[arg(long)]
    partition: String,
    /// Rank to test.
    #[arg(long, conflicts_with = "total", required_unless_present = "total")]
    rank: Option<usize>,
    /// Test the total polynomial (sum over all ranks).
    #[arg(long)]
    total: bool,
    #[arg(long, value_enum)]
    test: PropertyArg,
    #[command(flatten)]
    envelope: EnvelopeArgs,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PropertyArg {
    Unimodal,
    LogConcave,
}

#[derive(Args)]
struct SearchArgs {
    /// Inclusive size range "A..B", or a single size "N". Sizes start at 1.
    #[arg(long)]
    sizes: String,
    /// "all", "ell-1", or a comma-separated rank list. Defaults to "all";
    /// not accepted with --target total.
    #[arg(long)]
    ranks: Option<String>,
    #[arg(long, value_enum, default_value_t = TargetArg::Unimodal)]
    target: TargetArg,
    /// Scan one representative per rook-equivalence class (the default).
    #[arg(long)]
    classes: bool,
    /// Scan every partition separately.
    #[arg(long, conflicts_with = "classes")]
    per_partition: bool,
    /// JSONL report destination (class reports and size summaries);
    /// standard output if omitted.
    #[arg(long)]
    report: Option<PathBuf>,
    /// JSONL checkpoint file; an existing one resumes the task. Requires
    /// --report.
    #[arg(long, requires = "report")]
    checkpoint: Option<PathBuf>,
    /// Worker thread count; defaults to $QROOK_WORKERS, then 1.
    #[arg(long)]
    workers: Option<usize>,
    /// Items per checkpoint block.
    #[arg(long, default_value_t = 1024)]
    checkpoint_every: usize,
    /// High-water entry count per worker memo.
    #[arg(long, default_value_t = 1_000_000)]
    memo_limit: usize,
    /// Exit 1 when any failure is found.
    #[arg(long)]
    fail_on_find: bool,
    /// Also report items whose checks all pass.
    #[arg(long)]
    report_successes: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TargetArg {
    /// Per-rank unimodality.
    Unimodal,
    /// Unimodality of the total polynomial.
    Total,
    /// Per-rank log-concavity.
    LogConcave,
}

#[derive(Args)]
struct StirlingArgs {
    /// Row index; prints S_q(n, k) with --k, or the whole row without.
    #[arg(
        long,
        required_unless_present = "scan_log_concave",
        conflicts_with = "scan_log_concave"
    )]
    n: Option<usize>,
    #[arg(long, requires = "n")]
    k: Option<usize>,
    /// Scan every entry with 1 <= k <= n <= max-n for log-concavity.
    #[arg(long, requires = "max_n")]
    scan_log_concave: bool,
    #[arg(long)]
    max_n: Option<usize>,
    /// JSONL report destination for the scan; standard output if omitted.
    #[arg(long)]
    report: Option<PathBuf>,
    /// JSONL checkpoint file for the scan; an existing one resumes at row
    /// granularity. Requires --report.
    #[arg(long, requires = "report")]
    checkpoint: Option<PathBuf>,
    /// Worker threads for the scan; defaults to $QROOK_WORKERS, then 1.
    #[arg(long)]
    workers: Option<usize>,
    #[command(flatten)]
    envelope: EnvelopeArgs,
}

#[derive(Args)]
struct MatrixCountArgs {
    #[arg(long)]
    partition: String,
    /// Field order: 2, 3, 4, 5, 7, 8, or 9.
    #[arg(long = "q")]
    order: u64,
    /// Matrix rank to count.
    #[arg(long)]
    rank: usize,
    /// Also compute the q-rook prediction; disagreement exits 3.
    #[arg(long)]
    verify: bool,
    #[command(flatten)]
    envelope: EnvelopeArgs,
}

/// Bad input detected after clap parsing; maps to exit code 2.
#[derive(Debug)]
struct UsageError(String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl std::error::Error for UsageError {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    anyhow::Error::new(UsageError(msg.into()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            if err.downcast_ref::<UsageError>().is_some() {
                eprintln!("error: {err}");
                ExitCode::from(2)
            } else if let Some(resume) = err.downcast_ref::<ResumeError>() {
                match resume {
                    ResumeError::FingerprintMismatch { .. }
                    | ResumeError::WrongRecordKind { .. } => {
                        eprintln!("error: {err}");
                        ExitCode::from(4)
                    }
                    ResumeError::Io(_) => {
                        eprintln!("error: {err:#}");
                        ExitCode::from(10)
                    }
                }
            } else {
                eprintln!("error: {err:#}");
                ExitCode::from(10)
            }
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    match cli.command {
        Command::Compute(args) => cmd_compute(args),
        Command::Check(args) => cmd_check(args),
        Command::Search(args) => cmd_search(args, cli.quiet),
        Command::Stirling(args) => cmd_stirling(args, cli.quiet),
        Command::MatrixCount(args) => cmd_matrix_count(args),
    }
}

fn parse_partition(text: &str) -> anyhow::Result<Partition> {
    Partition::parse(text).map_err(|e| usage(format!("invalid partition: {e}")))
}

fn emit(envelope: &EnvelopeArgs, rendered: String) -> anyhow::Result<()> {
    match &envelope.output {
        Some(path) => {
            std::fs::write(path, rendered).with_context(|| format!("writing {}", path.display()))?
        }
        None => std::io::stdout().write_all(rendered.as_bytes())?,
    }
    Ok(())
}

fn worker_count(flag: Option<usize>) -> anyhow::Result<usize> {
    if let Some(w) = flag {
        if w == 0 {
            return Err(usage("--workers must be at least 1"));
        }
        return Ok(w);
    }
    match std::env::var(WORKERS_ENV) {
        Ok(value) => value
            .parse::<usize>()
            .ok()
            .filter(|&w| w >= 1)
            .ok_or_else(|| usage(format!("{WORKERS_ENV} must be a positive integer"))),
        Err(_) => Ok(1),
    }
}

// ---- compute ----

const ENUMERATE_CELL_LIMIT: u64 = 20;
const VERIFY_ENUMERATE_LIMIT: u64 = 10;

fn cmd_compute(args: ComputeArgs) -> anyhow::Result<ExitCode> {
    let lambda = parse_partition(&args.partition)?;
    let ranks: Vec<usize> = if args.all_ranks {
        (0..=lambda.len()).collect()
    } else {
        vec![args.rank.expect("clap enforces rank xor all-ranks")]
    };

    if args.method == MethodArg::Enumerate && lambda.size() > ENUMERATE_CELL_LIMIT {
        return Err(usage(format!(
            "enumeration is limited to boards of {} cells (this one has {})",
            ENUMERATE_CELL_LIMIT,
            lambda.size()
        )));
    }

    let mut memo = RookMemo::new();
    let mut polynomials = Vec::with_capacity(ranks.len());
    let mut verified = args.verify.then_some(true);
    for &k in &ranks {
        let poly = match args.method {
            MethodArg::Auto => compute_auto(&lambda, k, &mut memo),
            MethodArg::Recurrence => qrook_with_memo(&lambda, k, &mut memo),
            MethodArg::Enumerate => qrook_enumerate(&lambda, k),
            MethodArg::ClosedForm => closed_form(&lambda, k)?,
        };
        if args.verify {
            let all_agree = verification_routes(&lambda, k, &mut memo)
                .into_iter()
                .all(|p| p == poly);
            if !all_agree {
                verified = Some(false);
            }
        }
        polynomials.push(RankPolynomial {
            rank: k,
            polynomial: (&poly).into(),
        });
    }

    let method = args
        .method
        .to_possible_value()
        .expect("method has a value")
        .get_name()
        .to_string();
    let out = ComputeOutput {
        partition: lambda.parts().to_vec(),
        method,
        polynomials,
        verified,
    };
    emit(
        &args.envelope,
        render(
            &out,
            args.envelope.format.into(),
            ComputeOutput::to_text,
            ComputeOutput::to_csv,
        ),
    )?;
    Ok(if verified == Some(false) {
        ExitCode::from(3)
    } else {
        ExitCode::SUCCESS
    })
}

fn compute_auto(lambda: &Partition, k: usize, memo: &mut RookMemo) -> IntPolynomial {
    if k == 0 {
        IntPolynomial::monomial(lambda.size() as usize)
    } else if k == 1 && !lambda.is_empty() {
        qrook_rank_one(lambda)
    } else if k == lambda.len() {
        qrook_full_rank(lambda)
    } else {
        qrook_with_memo(lambda, k, memo)
    }
}

fn closed_form(lambda: &Partition, k: usize) -> anyhow::Result<IntPolynomial> {
    if k == 0 {
        Ok(IntPolynomial::monomial(lambda.size() as usize))
    } else if k == 1 && !lambda.is_empty() {
        Ok(qrook_rank_one(lambda))
    } else if k == lambda.len() && k > 0 {
        Ok(qrook_full_rank(lambda))
    } else {
        Err(usage(format!(
            "closed forms exist only for ranks 0, 1, and {} on this board",
            lambda.len()
        )))
    }
}

/// Every route applicable to `(λ, k)`; routes all agree on a correct build.
fn verification_routes(lambda: &Partition, k: usize, memo: &mut RookMemo) -> Vec<IntPolynomial> {
    let mut routes = vec![qrook_with_memo(lambda, k, memo)];
    if k == 0 {
        routes.push(IntPolynomial::monomial(lambda.size() as usize));
    }
    if k == 1 && !lambda.is_empty() {
        routes.push(qrook_rank_one(lambda));
    }
    if k == lambda.len() && k > 0 {
        routes.push(qrook_full_rank(lambda));
    }
    if lambda.size() <= VERIFY_ENUMERATE_LIMIT {
        routes.push(qrook_enumerate(lambda, k));
    }
    routes
}

// ---- check ----

fn cmd_check(args: CheckArgs) -> anyhow::Result<ExitCode> {
    let lambda = parse_partition(&args.partition)?;
    let mut memo = RookMemo::new();
    let (rank, poly) = if args.total {
        (None, total_qrook_with_memo(&lambda, &mut memo))
    } else {
        let k = args.rank.expect("clap enforces rank xor total");
        (Some(k), qrook_with_memo(&lambda, k, &mut memo))
    };

    let (property, witness) = match args.test {
        PropertyArg::Unimodal => (
            Property::Unimodal,
            poly.unimodality_failure()
                .expect("q-rook coefficients are nonnegative")
                .map(|w| WitnessRecord::valley(&poly, w)),
        ),
        PropertyArg::LogConcave => (
            Property::LogConcave,
            poly.log_concavity_failure()
                .expect("q-rook coefficients are nonnegative")
                .map(|w| WitnessRecord::log_concavity(&poly, w)),
        ),
    };

    let holds = witness.is_none();
    let out = CheckOutput {
        partition: lambda.parts().to_vec(),
        rank,
        total: args.total,
        property: property.to_string(),
        polynomial: (&poly).into(),
        holds,
        witness,
    };
    emit(
        &args.envelope,
        render(
            &out,
            args.envelope.format.into(),
            CheckOutput::to_text,
            CheckOutput::to_csv,
        ),
    )?;
    Ok(if holds {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

// ---- search ----

fn parse_sizes(text: &str) -> anyhow::Result<RangeInclusive<u32>> {
    let parse_bound = |s: &str| {
        s.trim()
            .parse::<u32>()
            .map_err(|_| usage(format!("invalid size {s:?}")))
    };
    let (lo, hi) = match text.split_once("..") {
        Some((a, b)) => (parse_bound(a)?, parse_bound(b)?),
        None => {
            let n = parse_bound(text)?;
            (n, n)
        }
    };
    if lo < 1 {
        return Err(usage("sizes start at 1"));
    }
    if lo > hi {
        return Err(usage(format!("empty size range {lo}..{hi}")));
    }
    Ok(lo..=hi)
}

fn parse_ranks(text: &str) -> anyhow::Result<RankSelector> {
    match text.trim() {
        "all" => Ok(RankSelector::All),
        "ell-1" | "ell-minus-1" => Ok(RankSelector::EllMinusOne),
        list => {
            let mut ranks = Vec::new();
            for token in list.split(',') {
                let k: usize = token
                    .trim()
                    .parse()
                    .map_err(|_| usage(format!("invalid rank {token:?}")))?;
                if !ranks.contains(&k) {
                    ranks.push(k);
                }
            }
            if ranks.is_empty() {
                return Err(usage("empty rank list"));
            }
            Ok(RankSelector::List(ranks))
        }
    }
}

fn cmd_search(args: SearchArgs, quiet: bool) -> anyhow::Result<ExitCode> {
    let sizes = parse_sizes(&args.sizes)?;
    let target = match args.target {
        TargetArg::Unimodal => Target::Unimodal,
        TargetArg::Total => Target::TotalUnimodal,
        TargetArg::LogConcave => Target::LogConcave,
    };
    let ranks = match (&args.ranks, target) {
        (Some(_), Target::TotalUnimodal) => {
            return Err(usage("--ranks does not apply to --target total"));
        }
        (Some(text), _) => parse_ranks(text)?,
        (None, _) => RankSelector::All,
    };
    let class_mode = if args.per_partition {
        ClassMode::PerPartition
    } else {
        ClassMode::Representatives
    };
    let task = SearchTask {
        sizes,
        ranks,
        target,
        class_mode,
        report_successes: args.report_successes,
    };
    let config = RunConfig {
        workers: worker_count(args.workers)?,
        block_size: args.checkpoint_every.max(1),
        memo_limit: args.memo_limit.max(1),
    };

    let (mut sink, mut checkpoints, resume) = open_search_files(&task, &args)?;
    let outcome = run_search(
        &task,
        &config,
        &mut sink,
        checkpoints.as_mut(),
        &mut |event| {
            if !quiet {
                if let Some(summary) = event.finished_size {
                    match summary.classes {
                        Some(classes) => eprintln!(
                            "n={}: classes={} partitions={} failures={}",
                            summary.n, classes, summary.partitions, summary.failures
                        ),
                        None => eprintln!(
                            "n={}: partitions={} failures={}",
                            summary.n, summary.partitions, summary.failures
                        ),
                    }
                }
            }
            true
        },
        resume,
    )?;

    if !quiet {
        eprintln!(
            "done: items={} partitions={} failures={}",
            outcome.totals.items, outcome.totals.partitions, outcome.totals.failures
        );
    }
    Ok(if args.fail_on_find && outcome.totals.failures > 0 {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    })
}

type SearchFiles = (ReportSink, Option<CheckpointWriter>, Option<ResumePoint>);

/// Opens report/checkpoint destinations, resuming from the checkpoint file
/// when it already holds a matching checkpoint: both files are trimmed back
/// to the last consistent point so the finished run is byte-identical to an
/// uninterrupted one.
fn open_search_files(task: &SearchTask, args: &SearchArgs) -> anyhow::Result<SearchFiles> {
    let Some(checkpoint_path) = &args.checkpoint else {
        let sink = match &args.report {
            Some(path) => {
                truncate_or_create(path)?;
                ReportSink::append_to_file(path)?
            }
            None => ReportSink::stdout(),
        };
        return Ok((sink, None, None));
    };
    let report_path = args
        .report
        .as_ref()
        .expect("clap enforces --checkpoint requires --report");

    let resume = match last_valid_record(checkpoint_path)? {
        None => {
            truncate_or_create(report_path)?;
            truncate_or_create(checkpoint_path)?;
            None
        }
        Some((Record::Checkpoint(c), offset)) => {
            let expected = task.fingerprint();
            if c.fingerprint != expected {
                return Err(ResumeError::FingerprintMismatch {
                    expected,
                    found: c.fingerprint,
                }
                .into());
            }
            truncate_to(checkpoint_path, offset).map_err(ResumeError::Io)?;
            truncate_to(report_path, c.report_bytes).map_err(ResumeError::Io)?;
            Some(ResumePoint::from_checkpoint(&c))
        }
        Some(_) => {
            return Err(ResumeError::WrongRecordKind {
                path: checkpoint_path.clone(),
            }
            .into());
        }
    };
    let sink = ReportSink::append_to_file(report_path)?;
    let checkpoints = CheckpointWriter::append_to(checkpoint_path)?;
    Ok((sink, Some(checkpoints), resume))
}

fn truncate_or_create(path: &Path) -> std::io::Result<()> {
    std::fs::write(path, b"")
}

// ---- stirling ----

fn cmd_stirling(args: StirlingArgs, quiet: bool) -> anyhow::Result<ExitCode> {
    if args.scan_log_concave {
        return stirling_scan(&args, quiet);
    }
    let n = args.n.expect("clap enforces --n unless scanning");
    let table = QStirlingTable::up_to(n);
    let rendered = match args.k {
        Some(k) => {
            if k > n {
                return Err(usage(format!("k={k} exceeds n={n}")));
            }
            let out = StirlingOutput {
                n,
                k,
                polynomial: (&table.get(n, k)).into(),
            };
            render(
                &out,
                args.envelope.format.into(),
                StirlingOutput::to_text,
                StirlingOutput::to_csv,
            )
        }
        None => {
            let out = StirlingRowOutput {
                n,
                entries: (0..=n)
                    .map(|k| StirlingEntry {
                        k,
                        polynomial: (&table.get(n, k)).into(),
                    })
                    .collect(),
            };
            render(
                &out,
                args.envelope.format.into(),
                StirlingRowOutput::to_text,
                StirlingRowOutput::to_csv,
            )
        }
    };
    emit(&args.envelope, rendered)?;
    Ok(ExitCode::SUCCESS)
}

fn stirling_scan(args: &StirlingArgs, quiet: bool) -> anyhow::Result<ExitCode> {
    let max_n = args.max_n.expect("clap enforces --max-n with the scan");
    if max_n < 1 {
        return Err(usage("--max-n must be at least 1"));
    }
    let config = StirlingScanConfig {
        max_n,
        workers: worker_count(args.workers)?,
    };

    let (mut sink, mut checkpoints, resume) = open_stirling_files(args, max_n)?;
    let outcome = run_stirling_scan(
        &config,
        &mut sink,
        checkpoints.as_mut(),
        &mut |progress| {
            if !quiet && (progress.n % 10 == 0 || progress.failures > 0) {
                eprintln!(
                    "row {}/{}: entries={} failures={}",
                    progress.n, max_n, progress.entries_checked, progress.failures
                );
            }
            true
        },
        resume,
    )?;

    if !quiet {
        eprintln!(
            "done: rows={} entries={} failures={}",
            outcome.rows_scanned, outcome.entries_checked, outcome.failures
        );
    }
    Ok(ExitCode::SUCCESS)
}

type StirlingFiles = (ReportSink, Option<CheckpointWriter>, Option<StirlingResume>);

fn open_stirling_files(args: &StirlingArgs, max_n: usize) -> anyhow::Result<StirlingFiles> {
    let Some(checkpoint_path) = &args.checkpoint else {
        let sink = match &args.report {
            Some(path) => {
                truncate_or_create(path)?;
                ReportSink::append_to_file(path)?
            }
            None => ReportSink::stdout(),
        };
        return Ok((sink, None, None));
    };
    let report_path = args
        .report
        .as_ref()
        .expect("clap enforces --checkpoint requires --report");

    let resume = match last_valid_record(checkpoint_path)? {
        None => {
            truncate_or_create(report_path)?;
            truncate_or_create(checkpoint_path)?;
            None
        }
        Some((Record::StirlingCheckpoint(c), offset)) => {
            if c.max_n != max_n {
                return Err(ResumeError::FingerprintMismatch {
                    expected: format!("stirling-scan max_n={max_n}"),
                    found: format!("stirling-scan max_n={}", c.max_n),
                }
                .into());
            }
            truncate_to(checkpoint_path, offset).map_err(ResumeError::Io)?;
            truncate_to(report_path, c.report_bytes).map_err(ResumeError::Io)?;
            Some(StirlingResume {
                row: c.row,
                entries_checked: c.entries_checked,
                failures: c.failures,
            })
        }
        Some(_) => {
            return Err(ResumeError::WrongRecordKind {
                path: checkpoint_path.clone(),
            }
            .into());
        }
    };
    let sink = ReportSink::append_to_file(report_path)?;
    let checkpoints = CheckpointWriter::append_to(checkpoint_path)?;
    Ok((sink, Some(checkpoints), resume))
}

// ---- matrix-count ----

fn cmd_matrix_count(args: MatrixCountArgs) -> anyhow::Result<ExitCode> {
    let lambda = parse_partition(&args.partition)?;
    let count =
        count_rank_matrices(&lambda, args.order, args.rank).map_err(|e| usage(e.to_string()))?;
    let (predicted, agree) = if args.verify {
        let predicted = predicted_rank_matrices(&lambda, args.order, args.rank)
            .map_err(|e| usage(e.to_string()))?;
        let agree = predicted == count;
        (Some(predicted.to_string()), Some(agree))
    } else {
        (None, None)
    };

    let out = MatrixCountOutput {
        partition: lambda.parts().to_vec(),
        order: args.order,
        rank: args.rank,
        count: count.to_string(),
        predicted,
        agree,
    };
    emit(
        &args.envelope,
        render(
            &out,
            args.envelope.format.into(),
            MatrixCountOutput::to_text,
            MatrixCountOutput::to_csv,
        ),
    )?;
    Ok(if agree == Some(false) {
        ExitCode::from(3)
    } else {
        ExitCode::SUCCESS
    })
}
