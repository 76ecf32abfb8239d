//! Gopala-Hemachandra (GH) and Fibonacci universal integer codes.
//!
//! A GH sequence with parameter `a <= -2` starts `a, 1 - a` and follows the
//! Fibonacci recurrence. A GH code for `n` is a Zeckendorf representation of
//! `n` over that sequence (no two adjacent indices) with a `1` appended, so
//! every codeword ends in `11` and contains no other adjacent ones. Codes
//! exist for every `n` when `a` is -2, -3 or -4; for `a = -(4 + k)` some
//! integers have no code, but never more than `k` consecutive ones.
//!
//! ```
//! use ghcodes::GhCodec;
//!
//! let codec = GhCodec::new(-2)?;
//! let code = codec.encode(7)?.unwrap();
//! assert_eq!(code.to_string(), "01011");
//! assert_eq!(codec.decode(&code)?, 7);
//!
//! assert!(!GhCodec::new(-5)?.exists(12)?);
//! # Ok::<(), ghcodes::Error>(())
//! ```

pub mod bitcode;
pub mod error;
pub mod fib_codec;
pub mod gh_codec;
pub mod ghseq;
pub mod oracle;
pub mod par;
pub mod stream;
pub mod verify;

pub use bitcode::{Bitstring, Codeword};
pub use error::{CodeRule, Error, Result};
pub use fib_codec::FibCodec;
pub use gh_codec::{EncodeOutcome, GhCodec, GreedySplit, RemainderTable};
pub use ghseq::{FibSequence, GhSequence, Recurrence};
pub use oracle::{gap_scan, GapReport, Oracle, ScanMode};
pub use par::Execution;
pub use verify::{verify, VerifyReport};
