//! Report sinks and checkpoint files.
//!
//! Both files are JSON Lines and append-only during a run. A checkpoint line
//! is written only after the report lines it covers have been flushed, and it
//! carries the report-file byte offset at that instant. Resume reads the last
//! fully parseable checkpoint line (a torn final line is discarded), trims
//! both files back to that consistent point, and continues, so a finished
//! resumed run is byte-identical to an uninterrupted one.

use std::fs::{File, OpenOptions};
use std::io::{self, BufRead, BufReader, Seek, SeekFrom, Write};
use std::path::{Path, PathBuf};

use crate::records::Record;

/// Destination for report records, tracking bytes written so checkpoints can
/// reference exact offsets.
pub struct ReportSink {
    writer: Box<dyn Write + Send>,
    bytes: u64,
}

impl ReportSink {
    /// Appends to `path`, which must already be positioned/truncated by the
    /// resume logic; `bytes` continues from the current file length.
    pub fn append_to_file(path: &Path) -> io::Result<Self> {
        let file = OpenOptions::new().create(true).append(true).open(path)?;
        let bytes = file.metadata()?.len();
        Ok(ReportSink {
            writer: Box::new(file),
            bytes,
        })
    }

    pub fn stdout() -> Self {
        ReportSink {
            writer: Box::new(io::stdout()),
            bytes: 0,
        }
    }

    /// Discards everything; for callers that only need summaries.
    pub fn sink() -> Self {
        ReportSink {
            writer: Box::new(io::sink()),
            bytes: 0,
        }
    }

    pub fn write_record(&mut self, record: &Record) -> io::Result<()> {
        let line = record.to_json_line();
        self.writer.write_all(line.as_bytes())?;
        self.bytes += line.len() as u64;
        Ok(())
    }

    pub fn flush(&mut self) -> io::Result<()> {
        self.writer.flush()
    }

    pub fn bytes_written(&self) -> u64 {
        self.bytes
    }
}

/// Append-side handle of a checkpoint file.
pub struct CheckpointWriter {
    file: File,
}

impl CheckpointWriter {
    pub fn append_to(path: &Path) -> io::Result<Self> {
        let file = OpenOptions::new().create(true).append(true).open(path)?;
        Ok(CheckpointWriter { file })
    }

    pub fn write_record(&mut self, record: &Record) -> io::Result<()> {
        self.file.write_all(record.to_json_line().as_bytes())?;
        self.file.flush()
    }
}

/// The last fully parseable record in a JSONL file, with the byte offset just
/// past its newline. Unparseable or truncated tail lines are ignored.
pub fn last_valid_record(path: &Path) -> io::Result<Option<(Record, u64)>> {
    let file = match File::open(path) {
        Ok(f) => f,
        Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(None),
        Err(e) => return Err(e),
    };
    let mut reader = BufReader::new(file);
    let mut offset = 0u64;
    let mut best: Option<(Record, u64)> = None;
    let mut line = String::new();
    loop {
        line.clear();
        let read = reader.read_line(&mut line)?;
        if read == 0 {
            break;
        }
        offset += read as u64;
        if !line.ends_with('\n') {
            break; // torn final line
        }
        if let Ok(record) = serde_json::from_str::<Record>(line.trim_end()) {
            best = Some((record, offset));
        }
    }
    Ok(best)
}

/// Truncates `path` to exactly `len` bytes. Missing file with `len == 0` is
/// fine; a file shorter than `len` is corruption and an error.
pub fn truncate_to(path: &Path, len: u64) -> io::Result<()> {
    match OpenOptions::new().write(true).open(path) {
        Ok(file) => {
            let current = file.metadata()?.len();
            if current < len {
                return Err(io::Error::other(format!(
                    "{} is {} bytes but the checkpoint covers {}; refusing to resume",
                    path.display(),
                    current,
                    len
                )));
            }
            file.set_len(len)?;
            let mut f = file;
            f.seek(SeekFrom::End(0))?;
            Ok(())
        }
        Err(e) if e.kind() == io::ErrorKind::NotFound && len == 0 => Ok(()),
        Err(e) => Err(e),
    }
}

/// Why a checkpointed run refused to resume.
#[derive(Debug)]
pub enum ResumeError {
    FingerprintMismatch { expected: String, found: String },
    WrongRecordKind { path: PathBuf },
    Io(io::Error),
}

impl std::fmt::Display for ResumeError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ResumeError::FingerprintMismatch { expected, found } => write!(
                f,
                "checkpoint belongs to a different task: expected fingerprint {}, found {}",
                expected, found
            ),
            ResumeError::WrongRecordKind { path } => write!(
                f,
                "{} does not contain checkpoint records of the expected kind",
                path.display()
            ),
            ResumeError::Io(e) => write!(f, "{}", e),
        }
    }
}

impl std::error::Error for ResumeError {}

impl From<io::Error> for ResumeError {
    fn from(e: io::Error) -> Self {
        ResumeError::Io(e)
    }
}
