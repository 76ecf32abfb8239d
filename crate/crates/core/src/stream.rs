//! The `GHC1` bitstream container.
//!
//! Layout, all integers little-endian:
//!
//! | offset | size | field                                         |
//! |--------|------|-----------------------------------------------|
//! | 0      | 4    | magic `GHC1`                                  |
//! | 4      | 1    | version, `0x01`                               |
//! | 5      | 1    | codec: `0x00` Fibonacci, `0x01` GH            |
//! | 6      | 2    | `a` as `i16` (must be 0 for Fibonacci)        |
//! | 8      | 8    | value count, `u64`                            |
//! | 16     | 8    | payload length in bits, `u64`                 |
//! | 24     | ...  | payload, `ceil(bits / 8)` bytes               |
//!
//! Codewords are concatenated and packed most-significant bit first, so the
//! textual form of a codeword reads left to right through each byte. The
//! final byte is zero-padded. Since `11` only ever appears as a terminator,
//! frames are found by splitting at each first `11`.

use std::fmt;
use std::ops::Range;

use thiserror::Error;

use crate::bitcode::{Bitstring, Codeword};
use crate::error::{CodeRule, Error};
use crate::fib_codec::FibCodec;
use crate::gh_codec::GhCodec;

pub const MAGIC: [u8; 4] = *b"GHC1";
pub const VERSION: u8 = 0x01;
pub const HEADER_LEN: usize = 24;

const CODEC_FIB: u8 = 0x00;
const CODEC_GH: u8 = 0x01;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CodecKind {
    Fibonacci,
    Gh { a: i64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PayloadFault {
    Truncated {
        expected_bytes: u64,
        found_bytes: u64,
    },
    TrailingBytes {
        expected_bytes: u64,
        found_bytes: u64,
    },
    NonzeroPadding,
    Malformed(CodeRule),
    NonPositiveValue(i128),
    ValueOverflow(i128),
    /// Frame longer than the sequence's term cap, or its sum overflows.
    FrameTooLong,
    UnterminatedFrame,
    CountMismatch {
        expected: u64,
        found: u64,
    },
}

impl fmt::Display for PayloadFault {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PayloadFault::Truncated {
                expected_bytes,
                found_bytes,
            } => write!(
                f,
                "payload truncated: expected {expected_bytes} bytes, found {found_bytes}"
            ),
            PayloadFault::TrailingBytes {
                expected_bytes,
                found_bytes,
            } => write!(
                f,
                "trailing bytes: expected {expected_bytes}, found {found_bytes}"
            ),
            PayloadFault::NonzeroPadding => f.write_str("nonzero padding bits"),
            PayloadFault::Malformed(rule) => write!(f, "malformed codeword: {rule}"),
            PayloadFault::NonPositiveValue(v) => write!(f, "codeword value {v} is not positive"),
            PayloadFault::ValueOverflow(v) => write!(f, "codeword value {v} exceeds 64 bits"),
            PayloadFault::FrameTooLong => f.write_str("codeword too long to evaluate"),
            PayloadFault::UnterminatedFrame => f.write_str("payload ends inside a codeword"),
            PayloadFault::CountMismatch { expected, found } => {
                write!(
                    f,
                    "header declares {expected} values, payload holds {found}"
                )
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StreamError {
    #[error("header error: {0}")]
    Header(String),

    #[error("payload error at bit {offset}: {fault}")]
    Payload { offset: u64, fault: PayloadFault },

    #[error("value {n} has no code under this codec")]
    UnencodableValue { n: u64 },

    #[error(transparent)]
    Codec(#[from] Error),
}

pub type Result<T> = std::result::Result<T, StreamError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StreamHeader {
    pub codec: CodecKind,
    pub count: u64,
    pub bit_length: u64,
}

impl StreamHeader {
    pub fn payload_bytes(&self) -> u64 {
        self.bit_length.div_ceil(8)
    }

    pub fn write_to(&self, out: &mut Vec<u8>) -> Result<()> {
        let (codec, a) = match self.codec {
            CodecKind::Fibonacci => (CODEC_FIB, 0i16),
            CodecKind::Gh { a } => {
                let a16 = i16::try_from(a).map_err(|_| {
                    StreamError::Header(format!("parameter a = {a} does not fit in 16 bits"))
                })?;
                (CODEC_GH, a16)
            }
        };
        out.extend_from_slice(&MAGIC);
        out.push(VERSION);
        out.push(codec);
        out.extend_from_slice(&a.to_le_bytes());
        out.extend_from_slice(&self.count.to_le_bytes());
        out.extend_from_slice(&self.bit_length.to_le_bytes());
        Ok(())
    }

    /// Parses the fixed header, returning it and the remaining bytes.
    pub fn parse(bytes: &[u8]) -> Result<(Self, &[u8])> {
        let header_err = |msg: String| StreamError::Header(msg);
        if bytes.len() < HEADER_LEN {
            return Err(header_err(format!(
                "need {HEADER_LEN} header bytes, found {}",
                bytes.len()
            )));
        }
        if bytes[..4] != MAGIC {
            return Err(header_err("bad magic".into()));
        }
        if bytes[4] != VERSION {
            return Err(header_err(format!("unsupported version {:#04x}", bytes[4])));
        }
        let a = i16::from_le_bytes([bytes[6], bytes[7]]);
        let codec = match bytes[5] {
            CODEC_FIB if a == 0 => CodecKind::Fibonacci,
            CODEC_FIB => return Err(header_err(format!("Fibonacci stream with a = {a}"))),
            CODEC_GH if a <= -2 => CodecKind::Gh { a: a.into() },
            CODEC_GH => return Err(header_err(format!("invalid GH parameter a = {a}"))),
            other => return Err(header_err(format!("unknown codec {other:#04x}"))),
        };
        let word = |at: usize| u64::from_le_bytes(bytes[at..at + 8].try_into().unwrap());
        let header = StreamHeader {
            codec,
            count: word(8),
            bit_length: word(16),
        };
        Ok((header, &bytes[HEADER_LEN..]))
    }
}

/// A parsed header plus its raw payload bytes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StreamDocument {
    pub header: StreamHeader,
    pub payload: Vec<u8>,
}

impl StreamDocument {
    pub fn to_bytes(&self) -> Result<Vec<u8>> {
        let mut out = Vec::with_capacity(HEADER_LEN + self.payload.len());
        self.header.write_to(&mut out)?;
        out.extend_from_slice(&self.payload);
        Ok(out)
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        let (header, payload) = StreamHeader::parse(bytes)?;
        Ok(Self {
            header,
            payload: payload.to_vec(),
        })
    }

    /// Payload bit `i`, most significant bit of each byte first.
    fn bit(&self, i: u64) -> bool {
        self.payload[(i / 8) as usize] >> (7 - i % 8) & 1 == 1
    }
}

enum Codec {
    Fib(FibCodec),
    Gh(GhCodec),
}

impl Codec {
    fn new(kind: CodecKind) -> Result<Self> {
        Ok(match kind {
            CodecKind::Fibonacci => Codec::Fib(FibCodec::new()),
            CodecKind::Gh { a } => Codec::Gh(GhCodec::new(a)?),
        })
    }

    fn encode(&self, n: u64) -> Result<Codeword> {
        let code = match self {
            _ if n == 0 => None,
            Codec::Fib(fib) => Some(fib.encode(n)?),
            Codec::Gh(gh) => gh.encode(n)?,
        };
        code.ok_or(StreamError::UnencodableValue { n })
    }

    /// Decodes a frame already known to end at its first `11`.
    fn decode_frame(&self, bits: Vec<bool>) -> std::result::Result<u64, PayloadFault> {
        let code = Codeword::new(bits).map_err(|e| match e {
            Error::MalformedCode { rule, .. } => PayloadFault::Malformed(rule),
            _ => unreachable!("codeword construction only reports structure"),
        })?;
        let result = match self {
            Codec::Fib(fib) => fib.decode(&code),
            Codec::Gh(gh) => gh.decode(&code),
        };
        result.map_err(|e| match e {
            Error::NonPositiveValue { value } => PayloadFault::NonPositiveValue(value),
            Error::ValueOverflow { value } => PayloadFault::ValueOverflow(value),
            _ => PayloadFault::FrameTooLong,
        })
    }
}

#[derive(Default)]
struct BitWriter {
    bytes: Vec<u8>,
    len: u64,
}

impl BitWriter {
    fn push(&mut self, bit: bool) {
        if self.len.is_multiple_of(8) {
            self.bytes.push(0);
        }
        if bit {
            *self.bytes.last_mut().unwrap() |= 0x80 >> (self.len % 8);
        }
        self.len += 1;
    }
}

/// Packs `values` into a `GHC1` document.
pub fn encode(kind: CodecKind, values: &[u64]) -> Result<Vec<u8>> {
    let codec = Codec::new(kind)?;
    let mut writer = BitWriter::default();
    for &n in values {
        for &bit in codec.encode(n)?.bits() {
            writer.push(bit);
        }
    }
    let doc = StreamDocument {
        header: StreamHeader {
            codec: kind,
            count: values.len() as u64,
            bit_length: writer.len,
        },
        payload: writer.bytes,
    };
    doc.to_bytes()
}

/// Splits `bits` of the payload at each first `11`. Returns the terminated
/// frames and the start of any unterminated tail.
fn frames(doc: &StreamDocument, bits: u64) -> (Vec<Range<u64>>, Option<u64>) {
    let mut out = Vec::new();
    let mut start = 0;
    let mut prev = false;
    for i in 0..bits {
        let cur = doc.bit(i);
        if prev && cur {
            out.push(start..i + 1);
            start = i + 1;
            prev = false;
        } else {
            prev = cur;
        }
    }
    let tail = (start < bits).then_some(start);
    (out, tail)
}

fn frame_bits(doc: &StreamDocument, span: &Range<u64>) -> Vec<bool> {
    span.clone().map(|i| doc.bit(i)).collect()
}

/// Strict decode: every check failure is an error.
pub fn decode(bytes: &[u8]) -> Result<Vec<u64>> {
    let doc = StreamDocument::from_bytes(bytes)?;
    let header = doc.header;
    let expected_bytes = header.payload_bytes();
    let found_bytes = doc.payload.len() as u64;
    if found_bytes < expected_bytes {
        return Err(StreamError::Payload {
            offset: found_bytes * 8,
            fault: PayloadFault::Truncated {
                expected_bytes,
                found_bytes,
            },
        });
    }
    if found_bytes > expected_bytes {
        return Err(StreamError::Payload {
            offset: expected_bytes * 8,
            fault: PayloadFault::TrailingBytes {
                expected_bytes,
                found_bytes,
            },
        });
    }
    if let Some(pad) = (header.bit_length..expected_bytes * 8).find(|&i| doc.bit(i)) {
        return Err(StreamError::Payload {
            offset: pad,
            fault: PayloadFault::NonzeroPadding,
        });
    }

    let codec = Codec::new(header.codec)?;
    let (spans, tail) = frames(&doc, header.bit_length);
    let mut values = Vec::with_capacity(spans.len());
    for span in &spans {
        if values.len() as u64 == header.count {
            return Err(StreamError::Payload {
                offset: span.start,
                fault: PayloadFault::CountMismatch {
                    expected: header.count,
                    found: spans.len() as u64,
                },
            });
        }
        let value = codec
            .decode_frame(frame_bits(&doc, span))
            .map_err(|fault| StreamError::Payload {
                offset: span.start,
                fault,
            })?;
        values.push(value);
    }
    if let Some(offset) = tail {
        return Err(StreamError::Payload {
            offset,
            fault: PayloadFault::UnterminatedFrame,
        });
    }
    if values.len() as u64 != header.count {
        return Err(StreamError::Payload {
            offset: header.bit_length,
            fault: PayloadFault::CountMismatch {
                expected: header.count,
                found: values.len() as u64,
            },
        });
    }
    Ok(values)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ResyncToken {
    Value { value: u64, span: Range<u64> },
    Garbage { span: Range<u64> },
}

impl ResyncToken {
    pub fn span(&self) -> &Range<u64> {
        match self {
            ResyncToken::Value { span, .. } | ResyncToken::Garbage { span } => span,
        }
    }

    pub fn value(&self) -> Option<u64> {
        match self {
            ResyncToken::Value { value, .. } => Some(*value),
            ResyncToken::Garbage { .. } => None,
        }
    }
}

/// Lenient decode that keeps going past damaged frames.
///
/// Only header problems are errors. The payload is read up to the declared
/// bit length or the end of the data, whichever comes first; padding and the
/// declared count are ignored. Tokens cover the scanned bits contiguously.
pub fn resync_decode(bytes: &[u8]) -> Result<Vec<ResyncToken>> {
    let doc = StreamDocument::from_bytes(bytes)?;
    let codec = Codec::new(doc.header.codec)?;
    let bits = doc.header.bit_length.min(doc.payload.len() as u64 * 8);
    let (spans, tail) = frames(&doc, bits);
    let mut tokens: Vec<ResyncToken> = spans
        .into_iter()
        .map(|span| match codec.decode_frame(frame_bits(&doc, &span)) {
            Ok(value) => ResyncToken::Value { value, span },
            Err(_) => ResyncToken::Garbage { span },
        })
        .collect();
    if let Some(start) = tail {
        tokens.push(ResyncToken::Garbage { span: start..bits });
    }
    Ok(tokens)
}

/// Codewords of `values` as text, in stream order; handy for inspecting a
/// document alongside its bytes.
pub fn codeword_texts(kind: CodecKind, values: &[u64]) -> Result<Vec<String>> {
    let codec = Codec::new(kind)?;
    values
        .iter()
        .map(|&n| codec.encode(n).map(|c| c.to_string()))
        .collect()
}

/// Bits of the payload as a `0`/`1` string, without padding.
pub fn payload_text(bytes: &[u8]) -> Result<String> {
    let doc = StreamDocument::from_bytes(bytes)?;
    let bits = doc.header.bit_length.min(doc.payload.len() as u64 * 8);
    Ok(Bitstring::new((0..bits).map(|i| doc.bit(i)).collect()).to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    const GH2: CodecKind = CodecKind::Gh { a: -2 };

    fn flip(bytes: &mut [u8], bit: u64) {
        bytes[HEADER_LEN + (bit / 8) as usize] ^= 0x80 >> (bit % 8);
    }

    #[test]
    fn fib_single_value_is_byte_exact() {
        let bytes = encode(CodecKind::Fibonacci, &[1]).unwrap();
        let mut expected = b"GHC1".to_vec();
        expected.extend([0x01, 0x00, 0x00, 0x00]);
        expected.extend(1u64.to_le_bytes());
        expected.extend(2u64.to_le_bytes());
        expected.push(0b1100_0000);
        assert_eq!(bytes, expected);
        assert_eq!(payload_text(&bytes).unwrap(), "11");
    }

    #[test]
    fn gh_document_is_byte_exact() {
        // 01011 0010011 0011
        let bytes = encode(GH2, &[7, 10, 1]).unwrap();
        assert_eq!(&bytes[5..8], &[0x01, 0xFE, 0xFF]);
        assert_eq!(bytes[16..24], 16u64.to_le_bytes());
        assert_eq!(&bytes[HEADER_LEN..], &[0b0101_1001, 0b0011_0011]);
        assert_eq!(
            codeword_texts(GH2, &[7, 10, 1]).unwrap(),
            ["01011", "0010011", "0011"]
        );
    }

    #[test]
    fn empty_document() {
        let bytes = encode(GH2, &[]).unwrap();
        assert_eq!(bytes.len(), HEADER_LEN);
        let (header, payload) = StreamHeader::parse(&bytes).unwrap();
        assert_eq!((header.count, header.bit_length), (0, 0));
        assert!(payload.is_empty());
        assert!(decode(&bytes).unwrap().is_empty());
    }

    #[test]
    fn unencodable_values() {
        assert_eq!(
            encode(CodecKind::Gh { a: -5 }, &[1, 5]),
            Err(StreamError::UnencodableValue { n: 5 })
        );
        assert_eq!(
            encode(CodecKind::Fibonacci, &[0]),
            Err(StreamError::UnencodableValue { n: 0 })
        );
        assert!(matches!(
            encode(CodecKind::Gh { a: -40_000 }, &[1]),
            Err(StreamError::Header(_))
        ));
    }

    #[test]
    fn round_trip() {
        let values = [7, 10, 1];
        assert_eq!(decode(&encode(GH2, &values).unwrap()).unwrap(), values);
        let values: Vec<u64> = (1..500).chain([u64::MAX]).collect();
        assert_eq!(
            decode(&encode(CodecKind::Fibonacci, &values).unwrap()).unwrap(),
            values
        );
    }

    #[test]
    fn truncated_and_padded_payloads() {
        let bytes = encode(GH2, &[7, 10, 1, 3]).unwrap();
        let cut = &bytes[..bytes.len() - 1];
        assert!(matches!(
            decode(cut),
            Err(StreamError::Payload {
                fault: PayloadFault::Truncated { .. },
                ..
            })
        ));
        let mut longer = bytes.clone();
        longer.push(0);
        assert!(matches!(
            decode(&longer),
            Err(StreamError::Payload {
                fault: PayloadFault::TrailingBytes { .. },
                ..
            })
        ));
        // 16 + 6 bits: the last byte has two padding bits
        let mut padded = bytes.clone();
        *padded.last_mut().unwrap() |= 1;
        assert_eq!(
            decode(&padded),
            Err(StreamError::Payload {
                offset: 23,
                fault: PayloadFault::NonzeroPadding
            })
        );
    }

    #[test]
    fn flip_creating_interior_pair_is_rejected() {
        // frame 2 "0010011" -> "0110011": splits into "011" and "0011"
        let mut bytes = encode(GH2, &[7, 10, 1]).unwrap();
        flip(&mut bytes, 6);
        assert_eq!(payload_text(&bytes).unwrap(), "0101101100110011");
        assert_eq!(
            decode(&bytes),
            Err(StreamError::Payload {
                offset: 12,
                fault: PayloadFault::CountMismatch {
                    expected: 3,
                    found: 4
                }
            })
        );
    }

    #[test]
    fn destroyed_terminator_is_rejected() {
        let mut bytes = encode(GH2, &[7, 10, 1]).unwrap();
        flip(&mut bytes, 4);
        assert!(matches!(decode(&bytes), Err(StreamError::Payload { .. })));
    }

    #[test]
    fn non_positive_frame() {
        // "11" is GH[1] = a < 0
        let mut bytes = encode(GH2, &[1]).unwrap();
        bytes[HEADER_LEN] = 0b1100_0000;
        bytes[16..24].copy_from_slice(&2u64.to_le_bytes());
        assert_eq!(
            decode(&bytes),
            Err(StreamError::Payload {
                offset: 0,
                fault: PayloadFault::NonPositiveValue(-2)
            })
        );
        let tokens = resync_decode(&bytes).unwrap();
        assert_eq!(tokens, [ResyncToken::Garbage { span: 0..2 }]);
    }

    #[test]
    fn overlong_frame_is_a_payload_error() {
        let ones = 400u64;
        let mut bytes = encode(CodecKind::Fibonacci, &[]).unwrap();
        bytes[8..16].copy_from_slice(&1u64.to_le_bytes());
        bytes[16..24].copy_from_slice(&(ones + 2).to_le_bytes());
        let mut w = BitWriter::default();
        (0..ones).for_each(|i| w.push(i % 2 == 0));
        w.push(true);
        w.push(true);
        bytes.extend(w.bytes);
        assert!(matches!(
            decode(&bytes),
            Err(StreamError::Payload {
                fault: PayloadFault::FrameTooLong,
                ..
            })
        ));
    }

    #[test]
    fn header_errors() {
        let good = encode(GH2, &[3]).unwrap();
        let mut bad = good.clone();
        bad[0] = b'X';
        assert!(matches!(decode(&bad), Err(StreamError::Header(_))));
        assert!(matches!(resync_decode(&bad), Err(StreamError::Header(_))));
        let mut bad = good.clone();
        bad[4] = 2;
        assert!(matches!(decode(&bad), Err(StreamError::Header(_))));
        let mut bad = good.clone();
        bad[5] = 7;
        assert!(matches!(decode(&bad), Err(StreamError::Header(_))));
        let mut bad = good.clone();
        bad[6..8].copy_from_slice(&(-1i16).to_le_bytes());
        assert!(matches!(decode(&bad), Err(StreamError::Header(_))));
        let mut bad = encode(CodecKind::Fibonacci, &[3]).unwrap();
        bad[6] = 0xFE;
        assert!(matches!(decode(&bad), Err(StreamError::Header(_))));
        assert!(matches!(decode(&good[..10]), Err(StreamError::Header(_))));
    }

    #[test]
    fn resync_on_clean_document_matches_strict() {
        let values = [7, 10, 1, 99, 4];
        let bytes = encode(GH2, &values).unwrap();
        let tokens = resync_decode(&bytes).unwrap();
        let recovered: Vec<u64> = tokens.iter().filter_map(|t| t.value()).collect();
        assert_eq!(recovered, values);
        assert_eq!(tokens.len(), values.len());
    }

    #[test]
    fn resync_terminator_flip_merges_two_frames() {
        // 01011 | 0010011 | 0011 | 01011 ; clear the final bit of frame 0
        let values = [7, 10, 1, 7];
        let mut bytes = encode(GH2, &values).unwrap();
        flip(&mut bytes, 4);
        let tokens = resync_decode(&bytes).unwrap();
        assert_eq!(tokens.len(), 3);
        assert_eq!(tokens[0].span(), &(0..12));
        assert_eq!(
            tokens[1],
            ResyncToken::Value {
                value: 1,
                span: 12..16
            }
        );
        assert_eq!(
            tokens[2],
            ResyncToken::Value {
                value: 7,
                span: 16..21
            }
        );
    }

    #[test]
    fn resync_tokens_cover_truncated_payload() {
        let bytes = encode(GH2, &[7, 10, 1]).unwrap();
        let cut = &bytes[..bytes.len() - 1];
        let tokens = resync_decode(cut).unwrap();
        assert_eq!(
            tokens[0],
            ResyncToken::Value {
                value: 7,
                span: 0..5
            }
        );
        assert_eq!(tokens[1], ResyncToken::Garbage { span: 5..8 });
    }
}
