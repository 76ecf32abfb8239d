//! Bit strings over sequence indices and terminated codewords.
//!
//! Text form puts index 1 leftmost, so `"0101"` under `a = -2` is
//! `GH[2] + GH[4] = 3 + 4 = 7`.

use std::fmt;
use std::str::FromStr;

use crate::error::{CodeRule, Error, Result};
use crate::ghseq::Recurrence;

/// An ordered bit vector `α₁…α_l`; leading and trailing zeros are significant.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Bitstring(Vec<bool>);

impl Bitstring {
    pub fn new(bits: Vec<bool>) -> Self {
        Self(bits)
    }

    /// Bit string with ones exactly at the given 1-based indices.
    pub fn from_indices(indices: impl IntoIterator<Item = usize>) -> Self {
        let mut bits = Vec::new();
        for i in indices {
            assert!(i >= 1, "bit indices are 1-based");
            if bits.len() < i {
                bits.resize(i, false);
            }
            bits[i - 1] = true;
        }
        Self(bits)
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    pub fn into_bits(self) -> Vec<bool> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// 1-based indices of the set bits, ascending.
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(i, _)| i + 1)
    }

    /// `Σ αᵢ·T[i]` under the given sequence; the empty string is 0.
    pub fn value(&self, seq: &impl Recurrence) -> Result<i128> {
        let terms = seq.terms();
        if self.0.len() > terms.len() {
            return Err(Error::IndexBeyondCap {
                index: self.0.len(),
                cap: terms.len(),
            });
        }
        self.ones()
            .try_fold(0i128, |acc, i| acc.checked_add(terms[i - 1]))
            .ok_or(Error::Overflow)
    }

    /// Applies one `110 -> 001` rewrite at the rightmost pair of adjacent ones.
    ///
    /// Returns `None` when there is no such pair. Rewriting a pair that ends
    /// on the last bit grows the string by one.
    pub fn rewrite_once(&self) -> Option<Bitstring> {
        let i = rightmost_pair(&self.0, self.0.len())?;
        let mut bits = self.0.clone();
        apply_rewrite(&mut bits, i);
        Some(Bitstring(bits))
    }

    /// Removes every pair of adjacent ones, preserving the value under any
    /// additive recurrence.
    ///
    /// Rewrites always target the rightmost remaining pair. After a rewrite at
    /// `i` the only new pair can sit at `(i + 2, i + 3)`, so the scan either
    /// follows that carry to the right or resumes strictly left of `i`.
    pub fn normalize(&self) -> Bitstring {
        let mut bits = self.0.clone();
        let mut cursor = rightmost_pair(&bits, bits.len());
        while let Some(i) = cursor {
            apply_rewrite(&mut bits, i);
            cursor = if bits.get(i + 3) == Some(&true) {
                Some(i + 2)
            } else {
                rightmost_pair(&bits, i)
            };
        }
        Bitstring(bits)
    }

    pub fn trim_trailing_zeros(&self) -> Bitstring {
        let end = self.0.iter().rposition(|&b| b).map_or(0, |p| p + 1);
        Bitstring(self.0[..end].to_vec())
    }

    /// Nonempty, no adjacent ones, last bit set.
    pub fn is_zeckendorf(&self) -> bool {
        self.0.last() == Some(&true) && !has_adjacent_ones(&self.0)
    }

    /// Appends the terminating 1.
    pub fn to_codeword(&self) -> Result<Codeword> {
        if !self.is_zeckendorf() {
            return Err(Error::NotZeckendorf {
                bits: self.to_string(),
            });
        }
        let mut bits = self.0.clone();
        bits.push(true);
        Ok(Codeword(bits))
    }
}

/// 0-based position `i` of the rightmost pair `bits[i] && bits[i + 1]` with
/// `i + 1 < end`.
fn rightmost_pair(bits: &[bool], end: usize) -> Option<usize> {
    (0..end.saturating_sub(1))
        .rev()
        .find(|&i| bits[i] && bits[i + 1])
}

fn apply_rewrite(bits: &mut Vec<bool>, i: usize) {
    debug_assert!(bits[i] && bits[i + 1]);
    bits[i] = false;
    bits[i + 1] = false;
    if i + 2 == bits.len() {
        bits.push(true);
    } else {
        debug_assert!(!bits[i + 2]);
        bits[i + 2] = true;
    }
}

fn has_adjacent_ones(bits: &[bool]) -> bool {
    bits.windows(2).any(|w| w[0] && w[1])
}

fn parse_bits(s: &str) -> Result<Vec<bool>> {
    s.chars()
        .enumerate()
        .map(|(offset, ch)| match ch {
            '0' => Ok(false),
            '1' => Ok(true),
            _ => Err(Error::InvalidBitChar { ch, offset }),
        })
        .collect()
}

fn write_bits(bits: &[bool], f: &mut fmt::Formatter<'_>) -> fmt::Result {
    for &b in bits {
        f.write_str(if b { "1" } else { "0" })?;
    }
    Ok(())
}

impl fmt::Display for Bitstring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_bits(&self.0, f)
    }
}

impl FromStr for Bitstring {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_bits(s).map(Bitstring)
    }
}

/// A terminated bit string: ends in `11` and has no other adjacent ones.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Codeword(Vec<bool>);

impl Codeword {
    pub fn new(bits: Vec<bool>) -> Result<Self> {
        Self::check(&bits)?;
        Ok(Self(bits))
    }

    /// Validates codeword structure, reporting the first violated rule and
    /// the 0-based bit offset where it was detected.
    pub fn check(bits: &[bool]) -> Result<()> {
        let len = bits.len();
        if len < 2 {
            return Err(Error::MalformedCode {
                rule: CodeRule::TooShort,
                offset: len,
            });
        }
        if let Some(offset) = bits[..len - 1].windows(2).position(|w| w[0] && w[1]) {
            if offset + 2 < len {
                return Err(Error::MalformedCode {
                    rule: CodeRule::InteriorAdjacentOnes,
                    offset,
                });
            }
        }
        if let Some(offset) = (len - 2..len).find(|&i| !bits[i]) {
            return Err(Error::MalformedCode {
                rule: CodeRule::MissingTerminator,
                offset,
            });
        }
        Ok(())
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Strips the terminator, leaving the Zeckendorf representation.
    pub fn to_bitstring(&self) -> Bitstring {
        Bitstring(self.0[..self.0.len() - 1].to_vec())
    }
}

impl fmt::Display for Codeword {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_bits(&self.0, f)
    }
}

impl FromStr for Codeword {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Codeword::new(parse_bits(s)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ghseq::{FibSequence, GhSequence};
    use proptest::prelude::*;

    fn bs(s: &str) -> Bitstring {
        s.parse().unwrap()
    }

    fn gh(a: i64) -> GhSequence {
        GhSequence::new(a).unwrap()
    }

    /// Reference normalization: restart the rightmost-pair search after every
    /// rewrite.
    fn normalize_by_rewrites(b: &Bitstring) -> Bitstring {
        let mut cur = b.clone();
        while let Some(next) = cur.rewrite_once() {
            cur = next;
        }
        cur
    }

    #[test]
    fn value_examples() {
        assert_eq!(bs("0101").value(&gh(-2)).unwrap(), 7);
        assert_eq!(bs("").value(&gh(-9)).unwrap(), 0);
        assert_eq!(bs("10001").value(&gh(-4)).unwrap(), 3);
        assert_eq!(bs("010011").value(&FibSequence::new()).unwrap(), 2 + 8 + 13);
    }

    #[test]
    fn value_past_cap_fails() {
        let seq = gh(-2);
        let long = Bitstring::from_indices([seq.max_index() + 1]);
        assert!(matches!(
            long.value(&seq),
            Err(Error::IndexBeyondCap { .. })
        ));
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(bs("011").normalize(), bs("0001"));
        assert_eq!(bs("0101").normalize(), bs("0101"));
        assert_eq!(bs("1000110101").normalize(), bs("10000000001"));
    }

    #[test]
    fn normalize_trace_for_135() {
        let seq = gh(-4);
        let mut cur = bs("1000110101");
        let mut trace = vec![cur.to_string()];
        while let Some(next) = cur.rewrite_once() {
            assert_eq!(next.value(&seq).unwrap(), 135);
            trace.push(next.to_string());
            cur = next;
        }
        assert_eq!(
            trace,
            ["1000110101", "1000001101", "1000000011", "10000000001"]
        );
    }

    #[test]
    fn zeckendorf_checks() {
        assert!(bs("0101").is_zeckendorf());
        assert!(!bs("011").is_zeckendorf());
        assert!(!bs("0100").is_zeckendorf());
        assert!(!bs("").is_zeckendorf());
    }

    #[test]
    fn codeword_conversion() {
        assert_eq!(bs("0101").to_codeword().unwrap().to_string(), "01011");
        assert_eq!(bs("1").to_codeword().unwrap().to_string(), "11");
        assert_eq!(
            bs("10000000001").to_codeword().unwrap().to_string(),
            "100000000011"
        );
        assert!(matches!(
            bs("011").to_codeword(),
            Err(Error::NotZeckendorf { .. })
        ));
        assert_eq!(
            "01011".parse::<Codeword>().unwrap().to_bitstring(),
            bs("0101")
        );
        assert_eq!("11".parse::<Codeword>().unwrap().to_bitstring(), bs("1"));
    }

    #[test]
    fn malformed_codewords() {
        let err = |s: &str| s.parse::<Codeword>().unwrap_err();
        assert_eq!(
            err("10000000110011"),
            Error::MalformedCode {
                rule: CodeRule::InteriorAdjacentOnes,
                offset: 8
            }
        );
        assert_eq!(
            err("10000000111"),
            Error::MalformedCode {
                rule: CodeRule::InteriorAdjacentOnes,
                offset: 8
            }
        );
        assert_eq!(
            err("1"),
            Error::MalformedCode {
                rule: CodeRule::TooShort,
                offset: 1
            }
        );
        assert_eq!(
            err("0101"),
            Error::MalformedCode {
                rule: CodeRule::MissingTerminator,
                offset: 2
            }
        );
        assert_eq!(err("01x1"), Error::InvalidBitChar { ch: 'x', offset: 2 });
    }

    fn bitstrings(max_len: usize) -> impl Strategy<Value = Bitstring> {
        prop::collection::vec(any::<bool>(), 0..=max_len).prop_map(Bitstring::new)
    }

    proptest! {
        #[test]
        fn normalize_preserves_value(b in bitstrings(30), a in -20i64..=-2) {
            let seq = gh(a);
            prop_assert_eq!(b.normalize().value(&seq)?, b.value(&seq)?);
            prop_assert_eq!(b.normalize().value(&FibSequence::new())?, b.value(&FibSequence::new())?);
        }

        #[test]
        fn normalize_is_canonical(b in bitstrings(40)) {
            let n = b.normalize();
            prop_assert!(!has_adjacent_ones(n.bits()));
            prop_assert_eq!(n.normalize(), n.clone());
            prop_assert!(n.len() == b.len() || n.len() == b.len() + 1);
            prop_assert_eq!(n, normalize_by_rewrites(&b));
        }

        #[test]
        fn codeword_round_trip(b in bitstrings(40)) {
            let z = b.normalize().trim_trailing_zeros();
            prop_assume!(!z.is_empty());
            let code = z.to_codeword()?;
            prop_assert_eq!(code.to_bitstring(), z.clone());
            prop_assert_eq!(code.to_string().parse::<Codeword>()?, code);
        }
    }
}
