//! Inflation of a skeleton permutation by blocks, and substitution
//! decomposition.
//!
//! Parts may be empty: inflating a point by ε deletes it. This makes every
//! pattern of an inflation itself an inflation of the same skeleton, which
//! is what the inflation and witness sets enumerate.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::perm::Perm;
use crate::poset::downset;

/// A skeleton permutation together with one part per skeleton point.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct InflationSpec {
    skeleton: Perm,
    parts: Vec<Perm>,
}

impl InflationSpec {
    pub fn new(skeleton: Perm, parts: Vec<Perm>) -> Result<Self> {
        if skeleton.is_empty() {
            return Err(Error::domain("inflation skeleton must be non-empty"));
        }
        if parts.len() != skeleton.len() {
            return Err(Error::domain(format!(
                "skeleton {skeleton} has {} points but {} parts were given",
                skeleton.len(),
                parts.len()
            )));
        }
        if parts.iter().all(Perm::is_empty) {
            return Err(Error::domain("at least one inflation part must be non-empty"));
        }
        Ok(InflationSpec { skeleton, parts })
    }

    pub fn skeleton(&self) -> &Perm {
        &self.skeleton
    }

    pub fn parts(&self) -> &[Perm] {
        &self.parts
    }

    pub fn inflate(&self) -> Perm {
        inflate_unchecked(&self.skeleton, &self.parts)
    }
}

impl fmt::Display for InflationSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[", self.skeleton)?;
        for (i, part) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{part}")?;
        }
        f.write_str("]")
    }
}

/// Parses `3624715[1,12,1,1,21,1,1]`; `e` denotes an empty part and
/// whitespace inside the brackets is ignored. Parts use digit notation.
impl FromStr for InflationSpec {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let malformed = |reason: &str| Error::MalformedInflation {
            text: text.to_string(),
            reason: reason.to_string(),
        };
        let trimmed = text.trim();
        let open = trimmed.find('[').ok_or_else(|| malformed("missing '['"))?;
        let inner = trimmed[open + 1..]
            .strip_suffix(']')
            .ok_or_else(|| malformed("missing closing ']'"))?;
        if inner.contains('[') || inner.contains(']') {
            return Err(malformed("nested brackets"));
        }
        let skeleton: Perm = trimmed[..open].trim().parse()?;
        let squeezed: String = inner.chars().filter(|c| !c.is_whitespace()).collect();
        if squeezed.is_empty() {
            return Err(malformed("no parts"));
        }
        let parts = squeezed
            .split(',')
            .map(|tok| {
                if tok.is_empty() {
                    Err(malformed("empty part token"))
                } else {
                    tok.parse::<Perm>()
                }
            })
            .collect::<Result<Vec<_>>>()?;
        InflationSpec::new(skeleton, parts)
    }
}

fn inflate_unchecked(skeleton: &Perm, parts: &[Perm]) -> Perm {
    let m = skeleton.len();
    // offset[v] = total size of parts whose skeleton value is below v
    let mut size_by_value = vec![0usize; m + 1];
    for (i, part) in parts.iter().enumerate() {
        size_by_value[skeleton.entries()[i] as usize] = part.len();
    }
    let mut offset = vec![0usize; m + 1];
    for v in 1..=m {
        offset[v] = if v == 1 { 0 } else { offset[v - 1] + size_by_value[v - 1] };
    }
    let mut entries = Vec::with_capacity(parts.iter().map(Perm::len).sum());
    for (i, part) in parts.iter().enumerate() {
        let base = offset[skeleton.entries()[i] as usize];
        entries.extend(part.entries().iter().map(|&x| (x as usize + base) as u8));
    }
    Perm::from_vec_unchecked(entries)
}

/// `skeleton[parts…]`.
pub fn inflate(skeleton: &Perm, parts: &[Perm]) -> Result<Perm> {
    Ok(InflationSpec::new(skeleton.clone(), parts.to_vec())?.inflate())
}

fn validate_positions(sigma: &Perm, positions: &[usize], parts_len: usize) -> Result<()> {
    if positions.len() != parts_len {
        return Err(Error::domain(format!(
            "{} positions but {} parts",
            positions.len(),
            parts_len
        )));
    }
    for (k, &pos) in positions.iter().enumerate() {
        if pos == 0 || pos > sigma.len() {
            return Err(Error::domain(format!(
                "position {pos} out of range 1..={}",
                sigma.len()
            )));
        }
        if k > 0 && positions[k - 1] >= pos {
            return Err(Error::domain(format!(
                "positions must be strictly increasing (got {} then {pos})",
                positions[k - 1]
            )));
        }
    }
    Ok(())
}

/// Inflates the listed 1-based positions of `sigma` by `parts` and every
/// other position by `1`.
pub fn inflate_at(sigma: &Perm, positions: &[usize], parts: &[Perm]) -> Result<Perm> {
    validate_positions(sigma, positions, parts.len())?;
    let mut all = vec![Perm::identity(1); sigma.len()];
    for (&pos, part) in positions.iter().zip(parts) {
        all[pos - 1] = part.clone();
    }
    inflate(sigma, &all)
}

fn enumerate_inflations(sigma: &Perm, choices: &[Vec<Perm>]) -> Vec<Perm> {
    let mut seen = HashSet::new();
    let mut index = vec![0usize; choices.len()];
    let mut selection: Vec<Perm> = choices.iter().map(|c| c[0].clone()).collect();
    loop {
        if selection.iter().any(|p| !p.is_empty()) {
            seen.insert(inflate_unchecked(sigma, &selection));
        }
        let mut k = 0;
        loop {
            if k == choices.len() {
                let mut out: Vec<Perm> = seen.into_iter().collect();
                out.sort_by(|a, b| a.shortlex_cmp(b));
                return out;
            }
            index[k] += 1;
            if index[k] < choices[k].len() {
                selection[k] = choices[k][index[k]].clone();
                break;
            }
            index[k] = 0;
            selection[k] = choices[k][0].clone();
            k += 1;
        }
    }
}

/// All distinct inflations of `sigma` in which each listed position carries
/// a pattern of its part and every other position carries `1` or ε
/// (excluding the all-empty selection). Shortlex ordered.
pub fn inflation_set(sigma: &Perm, positions: &[usize], parts: &[Perm]) -> Result<Vec<Perm>> {
    validate_positions(sigma, positions, parts.len())?;
    if sigma.is_empty() {
        return Err(Error::domain("inflation skeleton must be non-empty"));
    }
    let point = downset(&Perm::identity(1));
    let mut choices = vec![point; sigma.len()];
    for (&pos, part) in positions.iter().zip(parts) {
        choices[pos - 1] = downset(part);
    }
    Ok(enumerate_inflations(sigma, &choices))
}

/// Inflations of `sigma` carrying exactly `alpha` at `position` and `1` or ε
/// everywhere else. Shortlex ordered.
pub fn witness_set(sigma: &Perm, position: usize, alpha: &Perm) -> Result<Vec<Perm>> {
    if alpha.is_empty() {
        return Err(Error::domain("witness part must be non-empty"));
    }
    validate_positions(sigma, &[position], 1)?;
    let point = downset(&Perm::identity(1));
    let mut choices = vec![point; sigma.len()];
    choices[position - 1] = vec![alpha.clone()];
    Ok(enumerate_inflations(sigma, &choices))
}

/// Substitution decomposition: a simple skeleton and non-empty parts.
///
/// When the skeleton is `12` (resp. `21`) the first part is sum (resp. skew)
/// indecomposable, which makes the decomposition unique.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub skeleton: Perm,
    pub parts: Vec<Perm>,
}

impl Decomposition {
    pub fn inflate(&self) -> Perm {
        inflate_unchecked(&self.skeleton, &self.parts)
    }
}

impl fmt::Display for Decomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [ ", self.skeleton)?;
        for (i, part) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{part}")?;
        }
        f.write_str(" ]")
    }
}

/// Decomposes `pi` as a simple permutation inflated by non-empty blocks.
pub fn decompose(pi: &Perm) -> Result<Decomposition> {
    let n = pi.len();
    let e = pi.entries();
    if n == 0 {
        return Err(Error::domain("cannot decompose the empty permutation"));
    }
    if n == 1 {
        return Ok(Decomposition {
            skeleton: pi.clone(),
            parts: vec![pi.clone()],
        });
    }
    let split = |k: usize, skeleton: &str| Decomposition {
        skeleton: skeleton.parse().expect("literal"),
        parts: vec![Perm::pattern_of(&e[..k]), Perm::pattern_of(&e[k..])],
    };
    // shortest prefix occupying the bottom (resp. top) values
    let (mut lo, mut hi) = (u8::MAX, 0u8);
    for k in 1..n {
        lo = lo.min(e[k - 1]);
        hi = hi.max(e[k - 1]);
        if hi as usize == k {
            return Ok(split(k, "12"));
        }
        if lo as usize == n - k + 1 {
            return Ok(split(k, "21"));
        }
    }
    // Neither sum nor skew decomposable: the skeleton is simple of length
    // ≥ 4 and every proper interval lies inside one maximal block, so the
    // longest proper interval starting at each block start is that block.
    let mut blocks = Vec::new();
    let mut start = 0;
    while start < n {
        let (mut lo, mut hi) = (u8::MAX, 0u8);
        let mut best = start;
        for (end, &v) in e.iter().enumerate().skip(start) {
            lo = lo.min(v);
            hi = hi.max(v);
            if end - start + 1 == n {
                break;
            }
            if (hi - lo) as usize == end - start {
                best = end;
            }
        }
        blocks.push((start, best));
        start = best + 1;
    }
    let representatives: Vec<u8> = blocks.iter().map(|&(s, _)| e[s]).collect();
    Ok(Decomposition {
        skeleton: Perm::pattern_of(&representatives),
        parts: blocks
            .iter()
            .map(|&(s, t)| Perm::pattern_of(&e[s..=t]))
            .collect(),
    })
}

/// True iff `pi` is a direct sum of two non-empty permutations.
pub fn is_sum_decomposable(pi: &Perm) -> bool {
    let mut hi = 0u8;
    pi.entries()[..pi.len().saturating_sub(1)]
        .iter()
        .enumerate()
        .any(|(i, &v)| {
            hi = hi.max(v);
            hi as usize == i + 1
        })
}

/// True iff `pi` is a skew sum of two non-empty permutations.
pub fn is_skew_decomposable(pi: &Perm) -> bool {
    is_sum_decomposable(&pi.complement())
}
