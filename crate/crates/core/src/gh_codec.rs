//! Gopala-Hemachandra codes: existence, encoding and decoding.
//!
//! Every representation of `n` splits as `n = n0 + n1`, where `n0` is a sum of
//! initial-segment terms with `0 <= n0 < GH[6]` and `n1` is the greedy
//! Zeckendorf sum over the remaining segment. Two encoders are provided:
//!
//! * [`GhCodec::encode_simple`] tries every representable `n0` in ascending
//!   order and accepts the first one whose complement reduces greedily to 0.
//! * [`GhCodec::encode_fast`] runs the greedy split on `n` once; if its
//!   remainder has no initial-segment representation (only possible for
//!   `a <= -5`) it makes a single second attempt with `n0 = GH[2] + GH[4]`.
//!
//! The fast encoder's output is the canonical code for `n`.

use std::ops::RangeInclusive;

use crate::bitcode::{Bitstring, Codeword};
use crate::error::{Error, Result};
use crate::ghseq::{GhSequence, Recurrence, INITIAL_LEN, REMAINING_START};

const TABLE_A2: [&str; 9] = [
    "00000", "00100", "10010", "10001", "00010", "00001", "00101", "01010", "01001",
];

const TABLE_A3: [&str; 11] = [
    "00000", "00100", "10010", "10001", "10101", "00010", "00001", "00101", "10011", "01010",
    "01001",
];

const TABLE_A4: [&str; 13] = [
    "00000", "00100", "10010", "10001", "10101", "01000", "00010", "00001", "00101", "10011",
    "10111", "01010", "01001",
];

/// Rows for `a = -(4 + k)`: remainder `mult * k + offset` and its bits.
const TABLE_PARAMETRIC: [(i128, i128, &str); 13] = [
    (0, 0, "00000"),
    (0, 1, "00100"),
    (0, 2, "10010"),
    (0, 3, "10001"),
    (0, 4, "10101"),
    (1, 5, "01000"),
    (1, 6, "00010"),
    (1, 7, "00001"),
    (1, 8, "00101"),
    (1, 9, "10011"),
    (1, 10, "10111"),
    (2, 11, "01010"),
    (2, 12, "01001"),
];

/// Initial-segment representations of the remainders `0 <= r < GH[6]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RemainderTable {
    a: i64,
    rows: Vec<Option<Bitstring>>,
}

impl RemainderTable {
    pub fn new(seq: &GhSequence) -> Self {
        let limit = seq.remaining_start_term() as usize;
        let parse = |s: &str| Some(s.parse::<Bitstring>().expect("table literal"));
        let rows = match seq.gap_parameter() {
            None => {
                let fixed: &[&str] = match seq.a() {
                    -2 => &TABLE_A2,
                    -3 => &TABLE_A3,
                    _ => &TABLE_A4,
                };
                fixed.iter().map(|s| parse(s)).collect()
            }
            Some(k) => {
                let mut rows = vec![None; limit];
                for (mult, offset, bits) in TABLE_PARAMETRIC {
                    rows[(mult * i128::from(k) + offset) as usize] = parse(bits);
                }
                rows
            }
        };
        debug_assert_eq!(rows.len(), limit);
        Self { a: seq.a(), rows }
    }

    pub fn a(&self) -> i64 {
        self.a
    }

    /// Exclusive upper bound on remainders, `GH[6]`.
    pub fn limit(&self) -> i128 {
        self.rows.len() as i128
    }

    /// The 5-bit representation of `r`, or `None` if `r` lies in a gap.
    pub fn lookup(&self, r: i128) -> Result<Option<&Bitstring>> {
        if r < 0 || r >= self.limit() {
            return Err(Error::RemainderOutOfRange {
                a: self.a,
                r,
                limit: self.limit(),
            });
        }
        Ok(self.rows[r as usize].as_ref())
    }

    /// Representable remainders with their bits, ascending.
    pub fn entries(&self) -> impl Iterator<Item = (i128, &Bitstring)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .filter_map(|(r, bits)| bits.as_ref().map(|b| (r as i128, b)))
    }

    pub fn representable(&self) -> impl Iterator<Item = i128> + '_ {
        self.entries().map(|(r, _)| r)
    }

    /// Maximal runs of remainders with no representation.
    pub fn gap_intervals(&self) -> Vec<RangeInclusive<i128>> {
        let mut gaps = Vec::new();
        let mut start = None;
        for (r, row) in self.rows.iter().enumerate() {
            match (row, start) {
                (None, None) => start = Some(r as i128),
                (Some(_), Some(s)) => {
                    gaps.push(s..=r as i128 - 1);
                    start = None;
                }
                _ => {}
            }
        }
        if let Some(s) = start {
            gaps.push(s..=self.limit() - 1);
        }
        gaps
    }
}

/// Result of the greedy pass over the remaining segment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GreedySplit {
    /// Strictly decreasing indices `>= 6`.
    pub picked_indices: Vec<usize>,
    pub n1: u64,
    pub n0: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EncodeOutcome {
    pub code: Option<Codeword>,
    /// Split of the accepted attempt, or of the last attempt when no code
    /// exists.
    pub n0: u64,
    pub n1: u64,
    pub picked_indices: Vec<usize>,
    pub used_fallback: bool,
}

#[derive(Debug, Clone)]
pub struct GhCodec {
    seq: GhSequence,
    table: RemainderTable,
}

impl GhCodec {
    pub fn new(a: i64) -> Result<Self> {
        let seq = GhSequence::new(a)?;
        let table = RemainderTable::new(&seq);
        Ok(Self { seq, table })
    }

    pub fn a(&self) -> i64 {
        self.seq.a()
    }

    pub fn sequence(&self) -> &GhSequence {
        &self.seq
    }

    pub fn remainder_table(&self) -> &RemainderTable {
        &self.table
    }

    pub fn remainder_lookup(&self, r: i128) -> Result<Option<&Bitstring>> {
        self.table.lookup(r)
    }

    /// Greedy picks over the remaining segment until the target drops below
    /// `GH[6]`.
    pub fn greedy_remaining(&self, n: u64) -> GreedySplit {
        let (picked_indices, residual) = self.greedy(i128::from(n));
        GreedySplit {
            n1: n - residual as u64,
            n0: residual as u64,
            picked_indices,
        }
    }

    fn greedy(&self, target: i128) -> (Vec<usize>, i128) {
        let mut rest = target;
        let mut picked = Vec::new();
        while let Some(l) = self.seq.largest_remaining_leq(rest) {
            picked.push(l);
            rest -= self.seq.terms()[l - 1];
        }
        (picked, rest)
    }

    /// Remainder bits in positions 1-5, picked indices above, then
    /// normalize, trim and terminate.
    fn assemble(&self, n0_bits: &Bitstring, picked: &[usize]) -> Codeword {
        let mut bits = n0_bits.bits().to_vec();
        debug_assert_eq!(bits.len(), INITIAL_LEN);
        if let Some(&top) = picked.first() {
            bits.resize(top, false);
        }
        for &i in picked {
            bits[i - 1] = true;
        }
        Bitstring::new(bits)
            .normalize()
            .trim_trailing_zeros()
            .to_codeword()
            .expect("normalized nonzero representation is Zeckendorf")
    }

    fn check_input(n: u64) -> Result<()> {
        if n == 0 {
            Err(Error::NonPositiveInput { n })
        } else {
            Ok(())
        }
    }

    /// Exhaustive split search over every representable remainder.
    pub fn encode_simple(&self, n: u64) -> Result<EncodeOutcome> {
        Self::check_input(n)?;
        let target = i128::from(n);
        let mut outcome = EncodeOutcome {
            code: None,
            n0: 0,
            n1: 0,
            picked_indices: Vec::new(),
            used_fallback: false,
        };
        for (n0, bits) in self.table.entries() {
            if n0 > target {
                break;
            }
            let (picked, residual) = self.greedy(target - n0);
            outcome.n0 = n0 as u64;
            outcome.n1 = n - n0 as u64;
            if residual == 0 {
                outcome.code = Some(self.assemble(bits, &picked));
                outcome.picked_indices = picked;
                return Ok(outcome);
            }
        }
        Ok(outcome)
    }

    /// Greedy split with at most one fallback attempt.
    pub fn encode_fast(&self, n: u64) -> Result<EncodeOutcome> {
        Self::check_input(n)?;
        let split = self.greedy_remaining(n);
        if let Some(bits) = self.table.lookup(i128::from(split.n0))? {
            return Ok(EncodeOutcome {
                code: Some(self.assemble(bits, &split.picked_indices)),
                n0: split.n0,
                n1: split.n1,
                picked_indices: split.picked_indices,
                used_fallback: false,
            });
        }
        // Remainder tables for a in {-2, -3, -4} have no gaps.
        debug_assert!(self.seq.gap_parameter().is_some());

        let terms = self.seq.terms();
        let n0 = terms[1] + terms[3];
        let n1 = i128::from(n) - n0;
        let mut outcome = EncodeOutcome {
            code: None,
            n0: n0 as u64,
            n1: n1.max(0) as u64,
            picked_indices: Vec::new(),
            used_fallback: true,
        };
        if n1 < 0 {
            return Ok(outcome);
        }
        let (picked, residual) = self.greedy(n1);
        if residual == 0 {
            let prefix = Bitstring::new(vec![false, true, false, true, false]);
            outcome.code = Some(self.assemble(&prefix, &picked));
            outcome.picked_indices = picked;
        }
        Ok(outcome)
    }

    /// Canonical code for `n`, or `None` if no code exists.
    pub fn encode(&self, n: u64) -> Result<Option<Codeword>> {
        Ok(self.encode_fast(n)?.code)
    }

    pub fn exists(&self, n: u64) -> Result<bool> {
        Ok(self.encode_fast(n)?.code.is_some())
    }

    pub fn decode(&self, code: &Codeword) -> Result<u64> {
        let value = code.to_bitstring().value(&self.seq)?;
        if value <= 0 {
            return Err(Error::NonPositiveValue { value });
        }
        u64::try_from(value).map_err(|_| Error::ValueOverflow { value })
    }

    /// Parses and decodes a textual codeword.
    pub fn decode_str(&self, text: &str) -> Result<u64> {
        self.decode(&text.parse()?)
    }
}

impl GreedySplit {
    /// True when no two picked indices are adjacent.
    pub fn is_spaced(&self) -> bool {
        self.picked_indices.windows(2).all(|w| w[0] > w[1] + 1)
            && self.picked_indices.iter().all(|&i| i >= REMAINING_START)
    }
}
