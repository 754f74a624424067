//! Permutations in one-line notation and their local structure.
//!
//! Values and positions are 1-based throughout, matching the way
//! permutations are written by hand: `346215` is the permutation sending
//! position 1 to 3, position 2 to 4, and so on. The empty permutation is a
//! first-class value and is written `e`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Longest permutation representable; entries are stored as bytes.
pub const MAX_LEN: usize = u8::MAX as usize;

/// A permutation of `1..=n` in one-line notation (`n = 0` is the empty
/// permutation).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Perm {
    entries: Vec<u8>,
}

impl Perm {
    /// Builds a permutation, checking that `entries` is a bijection on `1..=n`.
    pub fn new(entries: Vec<u8>) -> Result<Self> {
        let n = entries.len();
        let mut seen = vec![false; n + 1];
        for &v in &entries {
            let v = v as usize;
            if v == 0 || v > n || seen[v] {
                return Err(Error::MalformedPermutation {
                    text: render_entries(&entries),
                    reason: format!("offending value {v}"),
                });
            }
            seen[v] = true;
        }
        Ok(Perm { entries })
    }

    pub(crate) fn from_vec_unchecked(entries: Vec<u8>) -> Self {
        debug_assert!(Perm::new(entries.clone()).is_ok());
        Perm { entries }
    }

    /// The empty permutation ε.
    pub fn empty() -> Self {
        Perm { entries: Vec::new() }
    }

    /// `12…n`.
    pub fn identity(n: usize) -> Self {
        assert!(n <= MAX_LEN);
        Perm {
            entries: (1..=n as u8).collect(),
        }
    }

    /// The pattern (rank-reduction) of a sequence of distinct values.
    pub fn pattern_of<T: Ord + Copy>(values: &[T]) -> Self {
        let mut order: Vec<usize> = (0..values.len()).collect();
        order.sort_by_key(|&i| values[i]);
        let mut entries = vec![0u8; values.len()];
        for (rank, &i) in order.iter().enumerate() {
            entries[i] = (rank + 1) as u8;
        }
        Perm { entries }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[u8] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<u8> {
        self.entries
    }

    /// Value at 1-based position `i`.
    pub fn at(&self, i: usize) -> usize {
        self.entries[i - 1] as usize
    }

    pub fn is_identity(&self) -> bool {
        self.entries.iter().enumerate().all(|(i, &v)| v as usize == i + 1)
    }

    /// The pattern left after deleting the point at 0-based index `idx`.
    pub fn delete_index(&self, idx: usize) -> Perm {
        let removed = self.entries[idx];
        let entries = self
            .entries
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != idx)
            .map(|(_, &v)| if v > removed { v - 1 } else { v })
            .collect();
        Perm { entries }
    }

    pub fn reverse(&self) -> Perm {
        let mut entries = self.entries.clone();
        entries.reverse();
        Perm { entries }
    }

    pub fn complement(&self) -> Perm {
        let n = self.len() as u8;
        Perm {
            entries: self.entries.iter().map(|&v| n + 1 - v).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut entries = vec![0u8; self.len()];
        for (i, &v) in self.entries.iter().enumerate() {
            entries[v as usize - 1] = (i + 1) as u8;
        }
        Perm { entries }
    }

    /// All images under the group generated by reverse, complement and inverse.
    pub fn symmetry_orbit(&self) -> SymmetryOrbit {
        let mut images = Vec::with_capacity(8);
        for base in [self.clone(), self.inverse()] {
            let r = base.reverse();
            let c = base.complement();
            let rc = r.complement();
            images.extend([base, r, c, rc]);
        }
        images.sort();
        images.dedup();
        let canonical = images[0].clone();
        SymmetryOrbit { images, canonical }
    }

    /// The lexicographically smallest member of the symmetry orbit.
    pub fn canonical(&self) -> Perm {
        self.symmetry_orbit().canonical
    }

    pub fn is_canonical(&self) -> bool {
        *self == self.canonical()
    }

    pub fn adjacency_profile(&self) -> AdjacencyProfile {
        let mut up = Vec::new();
        let mut down = Vec::new();
        for (i, w) in self.entries.windows(2).enumerate() {
            if w[1] == w[0] + 1 {
                up.push(i + 1);
            } else if w[0] == w[1] + 1 {
                down.push(i + 1);
            }
        }
        let triple = self
            .entries
            .windows(3)
            .enumerate()
            .filter(|(_, w)| {
                (w[1] == w[0] + 1 && w[2] == w[1] + 1) || (w[0] == w[1] + 1 && w[1] == w[2] + 1)
            })
            .map(|(i, _)| i + 1)
            .collect();
        AdjacencyProfile {
            up_positions: up,
            down_positions: down,
            triple_positions: triple,
        }
    }

    pub fn has_opposing_adjacencies(&self) -> bool {
        let mut up = false;
        let mut down = false;
        for w in self.entries.windows(2) {
            up |= w[1] == w[0] + 1;
            down |= w[0] == w[1] + 1;
        }
        up && down
    }

    pub fn has_triple_adjacency(&self) -> bool {
        self.entries.windows(3).any(|w| {
            (w[1] == w[0] + 1 && w[2] == w[1] + 1) || (w[0] == w[1] + 1 && w[1] == w[2] + 1)
        })
    }

    pub fn is_adjacency_free(&self) -> bool {
        self.entries.windows(2).all(|w| w[0].abs_diff(w[1]) != 1)
    }

    /// Number of adjacencies (up and down).
    pub fn adjacency_count(&self) -> usize {
        self.entries.windows(2).filter(|w| w[0].abs_diff(w[1]) == 1).count()
    }

    /// True iff the only intervals are singletons and the whole permutation.
    /// `1`, `12` and `21` are simple; ε is not.
    pub fn is_simple(&self) -> bool {
        let n = self.len();
        if n == 0 {
            return false;
        }
        for start in 0..n {
            let (mut lo, mut hi) = (self.entries[start], self.entries[start]);
            for end in start + 1..n {
                lo = lo.min(self.entries[end]);
                hi = hi.max(self.entries[end]);
                let width = end - start;
                if width + 1 == n {
                    break;
                }
                if (hi - lo) as usize == width {
                    return false;
                }
            }
        }
        true
    }

    /// Intervals (contiguous positions with contiguous values) as 1-based
    /// inclusive position pairs, ordered by start then end, restricted to
    /// lengths in `min_len..=max_len`.
    pub fn intervals(&self, min_len: usize, max_len: usize) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for start in 0..n {
            let (mut lo, mut hi) = (u8::MAX, 0u8);
            for end in start..n {
                lo = lo.min(self.entries[end]);
                hi = hi.max(self.entries[end]);
                let len = end - start + 1;
                if len > max_len {
                    break;
                }
                if len >= min_len && (hi - lo) as usize + 1 == len {
                    out.push((start + 1, end + 1));
                }
            }
        }
        out
    }

    /// The pattern formed by the 1-based inclusive window `start..=end`.
    pub fn window_pattern(&self, start: usize, end: usize) -> Perm {
        Perm::pattern_of(&self.entries[start - 1..end])
    }

    /// Shortlex ordering key: by length, then lexicographic.
    pub fn shortlex_cmp(&self, other: &Perm) -> std::cmp::Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.entries.cmp(&other.entries))
    }

    /// All permutations of length `n` in lexicographic order.
    pub fn all_of_length(n: usize) -> AllPerms {
        AllPerms {
            next: Some((1..=n as u8).collect()),
        }
    }

    /// Advances to the lexicographic successor; false when already last.
    pub(crate) fn next_lex(entries: &mut [u8]) -> bool {
        next_permutation(entries)
    }
}

pub(crate) fn next_permutation(a: &mut [u8]) -> bool {
    let n = a.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && a[i - 1] >= a[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while a[j] <= a[i - 1] {
        j -= 1;
    }
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

/// Iterator over all permutations of one length in lexicographic order.
pub struct AllPerms {
    next: Option<Vec<u8>>,
}

impl Iterator for AllPerms {
    type Item = Perm;

    fn next(&mut self) -> Option<Perm> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        if next_permutation(&mut succ) {
            self.next = Some(succ);
        }
        Some(Perm { entries: current })
    }
}

/// Positions (1-based) of the adjacencies of a permutation.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct AdjacencyProfile {
    /// `i` such that `π(i+1) = π(i) + 1`.
    pub up_positions: Vec<usize>,
    /// `i` such that `π(i+1) = π(i) - 1`.
    pub down_positions: Vec<usize>,
    /// `i` such that positions `i, i+1, i+2` are a monotone interval.
    pub triple_positions: Vec<usize>,
}

/// The images of a permutation under the eight symmetries of the square.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetryOrbit {
    /// Distinct images, sorted lexicographically.
    pub images: Vec<Perm>,
    pub canonical: Perm,
}

fn render_entries(entries: &[u8]) -> String {
    if entries.is_empty() {
        return "e".to_string();
    }
    if entries.len() <= 9 && entries.iter().all(|&v| (1..=9).contains(&v)) {
        entries.iter().map(|v| char::from(b'0' + v)).collect()
    } else {
        entries
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_entries(&self.entries))
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm({self})")
    }
}

impl FromStr for Perm {
    type Err = Error;

    fn from_str(text: &str) -> Result<Perm> {
        let trimmed = text.trim();
        let malformed = |reason: String| Error::MalformedPermutation {
            text: text.to_string(),
            reason,
        };
        if trimmed == "e" {
            return Ok(Perm::empty());
        }
        if trimmed.is_empty() {
            return Err(malformed("empty text (use \"e\" for the empty permutation)".into()));
        }
        let values: Vec<usize> = if trimmed.contains(',') {
            trimmed
                .split(',')
                .map(|tok| {
                    let tok = tok.trim();
                    tok.parse::<usize>()
                        .map_err(|_| malformed(format!("bad token {tok:?}")))
                })
                .collect::<Result<_>>()?
        } else {
            trimmed
                .chars()
                .map(|c| {
                    c.to_digit(10)
                        .map(|d| d as usize)
                        .ok_or_else(|| malformed(format!("bad token {c:?}")))
                })
                .collect::<Result<_>>()?
        };
        if values.len() > MAX_LEN {
            return Err(malformed(format!("length exceeds {MAX_LEN}")));
        }
        let n = values.len();
        let mut seen = vec![false; n + 1];
        for &v in &values {
            if v == 0 || v > n || seen[v] {
                return Err(malformed(format!("offending value {v}")));
            }
            seen[v] = true;
        }
        Ok(Perm {
            entries: values.into_iter().map(|v| v as u8).collect(),
        })
    }
}
