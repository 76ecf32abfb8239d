//! Brute-force ground truth for GH codes.
//!
//! The search enumerates subsets of sequence indices with no two consecutive
//! members, depth-first from the highest index down, and never consults the
//! encoder. Indices past the search bound `L` cannot take part: `L` is the
//! smallest index `>= 7` with `GH[L] + a > n`, and because `GH[1] = a` is the
//! only negative term, any subset touching an index `>= L` overshoots `n`.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::ops::RangeInclusive;

use crate::bitcode::{Bitstring, Codeword};
use crate::error::{Error, Result};
use crate::gh_codec::GhCodec;
use crate::ghseq::{GhSequence, Recurrence, INITIAL_LEN};
use crate::par::{self, Execution};

/// Default cap on the search bound; the search visits roughly `φ^L` states.
pub const DEFAULT_INDEX_CAP: usize = 64;

#[derive(Debug, Clone)]
pub struct Oracle {
    seq: GhSequence,
    index_cap: usize,
    /// Largest sum of non-consecutive terms drawn from indices `2..=i`.
    best_sum: Vec<i128>,
}

impl Oracle {
    pub fn new(a: i64) -> Result<Self> {
        Self::with_index_cap(a, DEFAULT_INDEX_CAP)
    }

    pub fn with_index_cap(a: i64, index_cap: usize) -> Result<Self> {
        let seq = GhSequence::new(a)?;
        let index_cap = index_cap.min(seq.max_index());
        let terms = seq.terms();
        let mut best_sum = vec![0i128; index_cap + 1];
        for i in 2..=index_cap {
            let with = terms[i - 1].saturating_add(best_sum[i - 2]);
            best_sum[i] = best_sum[i - 1].max(with);
        }
        Ok(Self {
            seq,
            index_cap,
            best_sum,
        })
    }

    pub fn sequence(&self) -> &GhSequence {
        &self.seq
    }

    /// The search bound `L` for `n`.
    pub fn search_bound(&self, n: u64) -> Result<usize> {
        let terms = self.seq.terms();
        let a = i128::from(self.seq.a());
        let target = i128::from(n);
        let bound = (7..=terms.len())
            .find(|&l| terms[l - 1] + a > target)
            .unwrap_or(terms.len() + 1);
        if bound > self.index_cap {
            return Err(Error::SearchBoundExceeded {
                bound,
                cap: self.index_cap,
            });
        }
        Ok(bound)
    }

    fn check(&self, n: u64) -> Result<usize> {
        if n == 0 {
            return Err(Error::NonPositiveInput { n });
        }
        self.search_bound(n)
    }

    pub fn exists(&self, n: u64) -> Result<bool> {
        let bound = self.check(n)?;
        self.exists_within(n, bound)
    }

    /// Existence with an explicit search bound (clamped to the index cap).
    pub fn exists_within(&self, n: u64, bound: usize) -> Result<bool> {
        if n == 0 {
            return Err(Error::NonPositiveInput { n });
        }
        let mut found = false;
        let mut chosen = Vec::new();
        self.search(
            bound.min(self.index_cap),
            i128::from(n),
            &mut chosen,
            &mut |_| {
                found = true;
                false
            },
        );
        Ok(found)
    }

    /// Every Zeckendorf representation of `n`, terminated into codewords.
    pub fn all_codes(&self, n: u64) -> Result<Vec<Codeword>> {
        let bound = self.check(n)?;
        let mut codes = Vec::new();
        let mut chosen = Vec::new();
        self.search(bound, i128::from(n), &mut chosen, &mut |picked| {
            let code = Bitstring::from_indices(picked.iter().copied())
                .to_codeword()
                .expect("non-consecutive subset ending at its maximum");
            codes.push(code);
            true
        });
        codes.sort();
        Ok(codes)
    }

    /// Visits subsets of `1..=top` with no two consecutive indices whose sum
    /// is `rest`. `visit` returns whether to keep searching; the return value
    /// of `search` says the same.
    fn search(
        &self,
        top: usize,
        rest: i128,
        chosen: &mut Vec<usize>,
        visit: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        if rest == 0 && !chosen.is_empty() && !visit(chosen) {
            return false;
        }
        if top == 0 {
            return true;
        }
        // Indices 2.. are positive; index 1 contributes a <= -2.
        let lowest = i128::from(self.seq.a());
        if rest < lowest || rest > self.best_sum[top] {
            return true;
        }
        let terms = self.seq.terms();
        for i in (1..=top).rev() {
            let next = rest - terms[i - 1];
            chosen.push(i);
            let keep_going = self.search(i.saturating_sub(2), next, chosen, visit);
            chosen.pop();
            if !keep_going {
                return false;
            }
            if i >= 2 && rest > self.best_sum[i - 1] && rest > 0 {
                // Nothing below i can reach rest without i itself.
                break;
            }
        }
        true
    }
}

/// All 5-bit subsets of the initial segment whose sum lies in `[0, GH[6])`,
/// keyed by that sum.
pub fn initial_segment_representations(seq: &GhSequence) -> BTreeMap<i128, Vec<Bitstring>> {
    let limit = seq.remaining_start_term();
    let mut out: BTreeMap<i128, Vec<Bitstring>> = BTreeMap::new();
    for mask in 0u32..1 << INITIAL_LEN {
        let bits = Bitstring::new((0..INITIAL_LEN).map(|i| mask >> i & 1 == 1).collect());
        let value = bits.value(seq).expect("five terms always fit");
        if (0..limit).contains(&value) {
            out.entry(value).or_default().push(bits);
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScanMode {
    /// Existence from the fast encoder.
    Fast,
    /// Existence from exhaustive search.
    Oracle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Run {
    pub start: u64,
    pub len: u64,
}

impl Run {
    pub fn end(&self) -> u64 {
        self.start + self.len - 1
    }
}

/// Existence bitmap over `1..=n_max` with its maximal runs of gaps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GapReport {
    pub a: i64,
    pub k: Option<u64>,
    pub n_range: RangeInclusive<u64>,
    pub exists: Vec<bool>,
    pub missing: Vec<u64>,
    pub runs: Vec<Run>,
    pub max_run: u64,
}

impl GapReport {
    pub fn from_bitmap(a: i64, k: Option<u64>, start: u64, exists: Vec<bool>) -> Self {
        let end = start + exists.len() as u64 - 1;
        let missing: Vec<u64> = exists
            .iter()
            .zip(start..)
            .filter(|(&e, _)| !e)
            .map(|(_, n)| n)
            .collect();
        let mut runs: Vec<Run> = Vec::new();
        for &n in &missing {
            match runs.last_mut() {
                Some(run) if run.end() + 1 == n => run.len += 1,
                _ => runs.push(Run { start: n, len: 1 }),
            }
        }
        let max_run = runs.iter().map(|r| r.len).max().unwrap_or(0);
        Self {
            a,
            k,
            n_range: start..=end,
            exists,
            missing,
            runs,
            max_run,
        }
    }

    /// Largest run of consecutive gaps the theory allows: `k` for
    /// `a = -(4 + k)`, and 0 for the universal parameters -2, -3, -4.
    pub fn allowed_run(&self) -> u64 {
        self.k.unwrap_or(0)
    }

    pub fn within_bound(&self) -> bool {
        self.max_run <= self.allowed_run()
    }

    /// `n,exists` rows, one per integer in range.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,exists\n");
        for (n, e) in self.n_range.clone().zip(&self.exists) {
            writeln!(out, "{n},{e}").unwrap();
        }
        out
    }

    pub fn summary(&self) -> String {
        let mut out = String::new();
        writeln!(out, "a: {}", self.a).unwrap();
        match self.k {
            Some(k) => writeln!(out, "k: {k}").unwrap(),
            None => writeln!(out, "k: -").unwrap(),
        }
        writeln!(
            out,
            "n_range: {}..={}",
            self.n_range.start(),
            self.n_range.end()
        )
        .unwrap();
        writeln!(out, "missing: {}", self.missing.len()).unwrap();
        writeln!(out, "max_run: {}", self.max_run).unwrap();
        let runs: Vec<String> = self
            .runs
            .iter()
            .map(|r| format!("[{}, {}]", r.start, r.end()))
            .collect();
        writeln!(out, "runs: {}", runs.join(", ")).unwrap();
        out
    }
}

/// Scans `1..=n_max` for integers with no GH code.
pub fn gap_scan(a: i64, n_max: u64, mode: ScanMode, exec: Execution) -> Result<GapReport> {
    if n_max == 0 {
        return Err(Error::NonPositiveInput { n: n_max });
    }
    let exists: Vec<bool> = match mode {
        ScanMode::Fast => {
            let codec = GhCodec::new(a)?;
            par::map_range(exec, 1..=n_max, |n| codec.exists(n))
                .into_iter()
                .collect::<Result<_>>()?
        }
        ScanMode::Oracle => {
            let oracle = Oracle::new(a)?;
            par::map_range(exec, 1..=n_max, |n| oracle.exists(n))
                .into_iter()
                .collect::<Result<_>>()?
        }
    };
    let k = GhSequence::new(a)?.gap_parameter();
    Ok(GapReport::from_bitmap(a, k, 1, exists))
}
