//! The containment order on permutations and its Möbius function.

mod cache;
pub(crate) mod packed;
mod table;

use std::collections::HashSet;

pub use cache::{CacheStats, MobiusCache, CACHE_HEADER};
pub use table::MobiusTable;

use crate::error::{Error, Result};
use crate::perm::Perm;

/// True iff some subsequence of `pi` is order-isomorphic to `sigma`.
pub fn contains(sigma: &Perm, pi: &Perm) -> bool {
    let (s, p) = (sigma.entries(), pi.entries());
    if s.len() > p.len() {
        return false;
    }
    if s.len() == p.len() {
        return s == p;
    }
    let mut chosen = Vec::with_capacity(s.len());
    embed(s, p, 0, &mut chosen)
}

fn embed(s: &[u8], p: &[u8], from: usize, chosen: &mut Vec<usize>) -> bool {
    let k = chosen.len();
    if k == s.len() {
        return true;
    }
    let remaining = s.len() - k;
    for pos in from..=p.len() - remaining {
        let fits = chosen
            .iter()
            .enumerate()
            .all(|(j, &q)| (s[j] < s[k]) == (p[q] < p[pos]));
        if fits {
            chosen.push(pos);
            if embed(s, p, pos + 1, chosen) {
                return true;
            }
            chosen.pop();
        }
    }
    false
}

/// The distinct patterns obtained by deleting one point, sorted
/// lexicographically.
pub fn cover(pi: &Perm) -> Vec<Perm> {
    let mut out: Vec<Perm> = (0..pi.len()).map(|i| pi.delete_index(i)).collect();
    out.sort();
    out.dedup();
    out
}

/// Every pattern of `pi`, including `pi` itself and ε, in shortlex order.
pub fn downset(pi: &Perm) -> Vec<Perm> {
    let mut out = vec![pi.clone()];
    let mut level = vec![pi.clone()];
    while level.first().is_some_and(|p| !p.is_empty()) {
        let mut seen = HashSet::new();
        for p in &level {
            for i in 0..p.len() {
                seen.insert(p.delete_index(i));
            }
        }
        level = seen.into_iter().collect();
        level.sort();
        out.extend(level.iter().cloned());
    }
    out.sort_by(|a, b| a.shortlex_cmp(b));
    out
}

/// The closed interval `[sigma, pi]` in shortlex order (empty when
/// `sigma ≰ pi`).
pub fn interval(sigma: &Perm, pi: &Perm) -> Result<Vec<Perm>> {
    if sigma.is_empty() {
        return Err(Error::domain("interval lower bound must be non-empty"));
    }
    if !contains(sigma, pi) {
        return Ok(Vec::new());
    }
    Ok(downset(pi)
        .into_iter()
        .filter(|t| t.len() >= sigma.len() && contains(sigma, t))
        .collect())
}

/// Permutations contained in `pi` that also contain `sigma`. Same set as
/// [`interval`].
pub fn sigma_closure(sigma: &Perm, pi: &Perm) -> Result<Vec<Perm>> {
    interval(sigma, pi)
}
