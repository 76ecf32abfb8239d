//! Classic Fibonacci universal code.

use crate::bitcode::{Bitstring, Codeword};
use crate::error::{Error, Result};
use crate::ghseq::{FibSequence, Recurrence};

#[derive(Debug, Clone, Default)]
pub struct FibCodec {
    seq: FibSequence,
}

impl FibCodec {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn sequence(&self) -> &FibSequence {
        &self.seq
    }

    /// Greedy Zeckendorf representation plus terminator.
    pub fn encode(&self, n: u64) -> Result<Codeword> {
        if n == 0 {
            return Err(Error::NonPositiveInput { n });
        }
        let mut rest = i128::from(n);
        let mut picked = Vec::new();
        while rest > 0 {
            // rest >= 1 = F[1], so an index always exists
            let i = self.seq.largest_leq(rest).expect("rest is positive");
            picked.push(i);
            rest -= self.seq.terms()[i - 1];
        }
        Bitstring::from_indices(picked).to_codeword()
    }

    pub fn decode(&self, code: &Codeword) -> Result<u64> {
        let value = code.to_bitstring().value(&self.seq)?;
        u64::try_from(value).map_err(|_| Error::ValueOverflow { value })
    }

    /// Parses and decodes a textual codeword.
    pub fn decode_str(&self, text: &str) -> Result<u64> {
        self.decode(&text.parse()?)
    }
}
