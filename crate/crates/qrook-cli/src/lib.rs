//! Search harness, file formats, and output rendering behind the `qrook`
//! command-line tool. The exact mathematics lives in `qrook-core`; this crate
//! adds IO: JSONL reports, resumable checkpoints, worker pools, and the CLI
//! payload renderers.

pub mod checkpoint;
pub mod output;
pub mod records;
pub mod search;
pub mod stirling_scan;
