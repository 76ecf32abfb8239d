//! Gopala-Hemachandra and Fibonacci sequences.
//!
//! Both sequences follow the additive recurrence `T[i] = T[i-1] + T[i-2]` and
//! are indexed from 1. Terms are held as `i128` and precomputed up to the
//! largest index whose term still fits; asking for a later term is an error
//! rather than a silent wrap. For `|a| <= 20` the cap sits a little above
//! index 180.
//!
//! A GH sequence with parameter `a` starts `a, 1 - a, 1, 2 - a, 3 - a, ...`.
//! Terms 1 through 5 form the *initial segment*; terms from index 6 on form
//! the *remaining segment*, which is positive and strictly increasing.

use crate::error::{Error, Result};

/// First index of the remaining segment.
pub const REMAINING_START: usize = 6;

/// Length of the initial segment.
pub const INITIAL_LEN: usize = 5;

/// An additive integer recurrence indexed from 1.
pub trait Recurrence {
    /// All precomputed terms; `terms()[0]` is the term at index 1.
    fn terms(&self) -> &[i128];

    /// Largest index that can be queried.
    fn max_index(&self) -> usize {
        self.terms().len()
    }

    fn term(&self, i: usize) -> Result<i128> {
        if i == 0 {
            return Err(Error::ZeroIndex);
        }
        self.terms()
            .get(i - 1)
            .copied()
            .ok_or(Error::IndexBeyondCap {
                index: i,
                cap: self.max_index(),
            })
    }
}

fn fill_to_cap(first: i128, second: i128) -> Vec<i128> {
    let mut terms = vec![first, second];
    loop {
        let n = terms.len();
        match terms[n - 1].checked_add(terms[n - 2]) {
            Some(next) => terms.push(next),
            None => break,
        }
    }
    terms
}

/// The GH sequence for a parameter `a <= -2`, with `b = 1 - a`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GhSequence {
    a: i64,
    terms: Vec<i128>,
}

impl GhSequence {
    pub fn new(a: i64) -> Result<Self> {
        if a > -2 {
            return Err(Error::InvalidParameter { a });
        }
        let a_wide = i128::from(a);
        Ok(Self {
            a,
            terms: fill_to_cap(a_wide, 1 - a_wide),
        })
    }

    pub fn a(&self) -> i64 {
        self.a
    }

    /// Gap parameter `k = -(a + 4)`; defined only for `a <= -5`.
    pub fn gap_parameter(&self) -> Option<u64> {
        (self.a <= -5).then(|| (-(i128::from(self.a) + 4)) as u64)
    }

    /// First term of the remaining segment, `GH[6]`.
    pub fn remaining_start_term(&self) -> i128 {
        self.terms[REMAINING_START - 1]
    }

    /// Largest index `l >= 6` with `GH[l] <= n`, or `None` when `GH[6] > n`.
    pub fn largest_remaining_leq(&self, n: i128) -> Option<usize> {
        let remaining = &self.terms[REMAINING_START - 1..];
        let count = remaining.partition_point(|&t| t <= n);
        (count > 0).then(|| REMAINING_START + count - 1)
    }
}

impl Recurrence for GhSequence {
    fn terms(&self) -> &[i128] {
        &self.terms
    }
}

/// Fibonacci numbers with `F[1] = 1`, `F[2] = 2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FibSequence {
    terms: Vec<i128>,
}

impl FibSequence {
    pub fn new() -> Self {
        Self {
            terms: fill_to_cap(1, 2),
        }
    }

    /// Largest index `l` with `F[l] <= n`, or `None` when `n < 1`.
    pub fn largest_leq(&self, n: i128) -> Option<usize> {
        let count = self.terms.partition_point(|&t| t <= n);
        (count > 0).then_some(count)
    }
}

impl Default for FibSequence {
    fn default() -> Self {
        Self::new()
    }
}

impl Recurrence for FibSequence {
    fn terms(&self) -> &[i128] {
        &self.terms
    }
}
