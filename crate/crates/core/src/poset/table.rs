use rayon::prelude::*;

use super::packed::{self, FACTORIALS, MAX_PACKED};
use crate::error::{Error, Result};
use crate::perm::Perm;

/// Ranks per parallel work unit when filling a level.
const CHUNK: usize = 720;

/// Dense Möbius values `μ(lower, π)` for every `π` up to a maximum length,
/// indexed by length and lexicographic rank.
///
/// Level `n` is filled from levels `< n` by summing over the distinct
/// sub-patterns of each permutation, so building to `n` costs roughly
/// `n! · 2^n` pattern deletions.
#[derive(Clone, Debug)]
pub struct MobiusTable {
    lower: Perm,
    levels: Vec<Vec<i64>>,
}

impl MobiusTable {
    /// Table of `μ(lower, ·)` over all permutations of length ≤ `max_n`.
    pub fn for_lower_bound(lower: &Perm, max_n: usize) -> Result<Self> {
        if lower.is_empty() {
            return Err(Error::domain("Möbius lower bound must be non-empty"));
        }
        let mut table = MobiusTable {
            lower: lower.clone(),
            levels: Vec::new(),
        };
        table.extend_to(max_n)?;
        Ok(table)
    }

    /// Table of the principal Möbius function `μ(1, ·)`.
    pub fn principal(max_n: usize) -> Result<Self> {
        Self::for_lower_bound(&Perm::identity(1), max_n)
    }

    pub fn lower(&self) -> &Perm {
        &self.lower
    }

    /// Longest length covered; levels `0..=max_len()` are present.
    pub fn max_len(&self) -> usize {
        self.levels.len().saturating_sub(1)
    }

    /// Values for length `n` in lexicographic order of the permutations.
    pub fn level(&self, n: usize) -> &[i64] {
        &self.levels[n]
    }

    /// `μ(lower, pi)`, or `None` when `pi` is longer than the table.
    pub fn get(&self, pi: &Perm) -> Option<i64> {
        let n = pi.len();
        let level = self.levels.get(n)?;
        Some(level[packed::rank(packed::pack(pi.entries()), n)])
    }

    pub fn extend_to(&mut self, max_n: usize) -> Result<()> {
        self.extend_with(max_n, |_| None)
    }

    /// Extends level by level; `prefilled(n)` may supply a complete level
    /// (e.g. from a persisted cache) instead of computing it.
    pub(crate) fn extend_with(
        &mut self,
        max_n: usize,
        mut prefilled: impl FnMut(usize) -> Option<Vec<i64>>,
    ) -> Result<()> {
        if max_n > MAX_PACKED {
            return Err(Error::domain(format!(
                "dense tables support lengths up to {MAX_PACKED}"
            )));
        }
        while self.levels.len() <= max_n {
            let n = self.levels.len();
            let level = match prefilled(n) {
                Some(level) if level.len() == FACTORIALS[n] => level,
                _ => self.compute_level(n)?,
            };
            self.levels.push(level);
        }
        Ok(())
    }

    fn compute_level(&self, n: usize) -> Result<Vec<i64>> {
        let m = self.lower.len();
        let mut values = vec![0i64; FACTORIALS[n]];
        if n < m {
            return Ok(values);
        }
        if n == m {
            values[packed::rank(packed::pack(self.lower.entries()), n)] = 1;
            return Ok(values);
        }
        let levels = &self.levels;
        values
            .par_chunks_mut(CHUNK)
            .enumerate()
            .try_for_each_init(Scratch::default, |scratch, (ci, out)| {
                let mut entries = packed::unrank(ci * CHUNK, n);
                for slot in out.iter_mut() {
                    *slot = scratch.mobius_from_below(levels, m, &entries)?;
                    Perm::next_lex(&mut entries);
                }
                Ok::<(), Error>(())
            })?;
        Ok(values)
    }
}

#[derive(Default)]
struct Scratch {
    current: Vec<u64>,
    next: Vec<u64>,
}

impl Scratch {
    /// `-Σ μ(lower, τ)` over the distinct proper patterns τ of `entries`
    /// with `|τ| ≥ lower_len`. Patterns not containing the lower bound
    /// carry zero in the table, so no containment test is needed.
    fn mobius_from_below(
        &mut self,
        levels: &[Vec<i64>],
        lower_len: usize,
        entries: &[u8],
    ) -> Result<i64> {
        let n = entries.len();
        self.current.clear();
        self.current.push(packed::pack(entries));
        let mut total: i64 = 0;
        for len in (lower_len..n).rev() {
            self.next.clear();
            for &code in &self.current {
                for idx in 0..=len {
                    self.next.push(packed::delete(code, len + 1, idx));
                }
            }
            self.next.sort_unstable();
            self.next.dedup();
            let level = &levels[len];
            for &code in &self.next {
                total = total
                    .checked_add(level[packed::rank(code, len)])
                    .ok_or(Error::Overflow)?;
            }
            std::mem::swap(&mut self.current, &mut self.next);
        }
        total.checked_neg().ok_or(Error::Overflow)
    }
}
