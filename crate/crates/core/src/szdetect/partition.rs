//! Explicit partitions of `[1, π)` behind the two vanishing arguments:
//! one for a pair of opposing adjacencies, one for an interval isomorphic to
//! a nice permutation. Each block's Möbius sum is reported so callers can
//! check that it vanishes.

use std::collections::HashSet;

use super::SzRegistry;
use crate::error::{Error, Result};
use crate::inflation::inflate_at;
use crate::perm::Perm;
use crate::poset::{downset, MobiusCache};

/// Sums of `μ(1, ·)` over each block of an [`OpposingPartition`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct OpposingSums {
    pub l: i64,
    pub r: i64,
    pub t: i64,
    pub g_gamma: i64,
    pub g_x: i64,
}

impl OpposingSums {
    /// `-ΣL - ΣR - ΣT + ΣG`, which equals `μ(π)`.
    pub fn combined(&self) -> i64 {
        -self.l - self.r - self.t + self.g_gamma + self.g_x
    }
}

/// `[1, π)` split around two chosen opposing adjacencies of
/// `π = γ[ℓ, r ← a, b]` with `{a, b} = {12, 21}`.
#[derive(Clone, Debug)]
pub struct OpposingPartition {
    pub gamma: Perm,
    pub ell: usize,
    pub r: usize,
    /// `γ` with only the adjacency at `ell` restored.
    pub lambda: Perm,
    /// `γ` with only the adjacency at `r` restored.
    pub rho: Perm,
    /// `[1, λ]`.
    pub l_set: Vec<Perm>,
    /// `[1, ρ]`.
    pub r_set: Vec<Perm>,
    /// `[1, γ]`.
    pub g_gamma: Vec<Perm>,
    /// `(L ∩ R) \ [1, γ]`.
    pub g_x: Vec<Perm>,
    /// `[1, π) \ (L ∪ R)`.
    pub t_set: Vec<Perm>,
    pub sums: OpposingSums,
}

fn principal_interval(top: &Perm) -> Vec<Perm> {
    downset(top).into_iter().filter(|t| !t.is_empty()).collect()
}

fn mobius_sum<'a>(set: impl IntoIterator<Item = &'a Perm>, cache: &MobiusCache) -> Result<i64> {
    set.into_iter().try_fold(0i64, |acc, t| {
        acc.checked_add(cache.principal_mobius(t)?).ok_or(Error::Overflow)
    })
}

/// Every `(ℓ, r)` in γ-coordinates for which `π` is `γ` inflated by an
/// up-adjacency and a down-adjacency (in either order) at `ℓ < r`.
pub fn opposing_choices(pi: &Perm) -> Vec<(usize, usize)> {
    let prof = pi.adjacency_profile();
    let mut out = Vec::new();
    for &i in prof.up_positions.iter().chain(&prof.down_positions) {
        let opposite = if prof.up_positions.contains(&i) {
            &prof.down_positions
        } else {
            &prof.up_positions
        };
        for &j in opposite {
            if j >= i + 2 {
                out.push((i, j - 1));
            }
        }
    }
    out.sort_unstable();
    out
}

/// Builds the L / R / G / T partition of `[1, pi)` for the adjacencies at
/// π-positions `ell` and `r + 1` (so `ell` and `r` index the contracted
/// points of γ).
pub fn partition_opposing(
    pi: &Perm,
    ell: usize,
    r: usize,
    cache: &MobiusCache,
) -> Result<OpposingPartition> {
    let n = pi.len();
    if ell == 0 || r <= ell || r + 2 > n {
        return Err(Error::domain(format!(
            "need 1 ≤ ℓ < r ≤ |π| - 2, got ℓ = {ell}, r = {r}, |π| = {n}"
        )));
    }
    let adjacency = |i: usize| -> Option<Perm> {
        let (a, b) = (pi.at(i), pi.at(i + 1));
        if b == a + 1 {
            Some("12".parse().expect("literal"))
        } else if a == b + 1 {
            Some("21".parse().expect("literal"))
        } else {
            None
        }
    };
    let (first, second) = match (adjacency(ell), adjacency(r + 1)) {
        (Some(a), Some(b)) if a != b => (a, b),
        _ => {
            return Err(Error::domain(format!(
                "{pi} has no opposing adjacencies at positions {ell} and {}",
                r + 1
            )))
        }
    };
    // contract both adjacencies: drop their second points
    let kept: Vec<u8> = pi
        .entries()
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != ell && i != r + 1)
        .map(|(_, &v)| v)
        .collect();
    let gamma = Perm::pattern_of(&kept);
    let rebuilt = inflate_at(&gamma, &[ell, r], &[first.clone(), second.clone()])?;
    if rebuilt != *pi {
        return Err(Error::domain(format!("{pi} is not {gamma}[{ell},{r}]")));
    }
    let lambda = inflate_at(&gamma, &[ell], &[first])?;
    let rho = inflate_at(&gamma, &[r], &[second])?;

    let l_set = principal_interval(&lambda);
    let r_set = principal_interval(&rho);
    let g_gamma = principal_interval(&gamma);
    let l_lookup: HashSet<&Perm> = l_set.iter().collect();
    let r_lookup: HashSet<&Perm> = r_set.iter().collect();
    let g_lookup: HashSet<&Perm> = g_gamma.iter().collect();
    let g_x: Vec<Perm> = l_set
        .iter()
        .filter(|t| r_lookup.contains(t) && !g_lookup.contains(t))
        .cloned()
        .collect();
    let t_set: Vec<Perm> = principal_interval(pi)
        .into_iter()
        .filter(|t| t != pi && !l_lookup.contains(t) && !r_lookup.contains(t))
        .collect();
    let sums = OpposingSums {
        l: mobius_sum(&l_set, cache)?,
        r: mobius_sum(&r_set, cache)?,
        t: mobius_sum(&t_set, cache)?,
        g_gamma: mobius_sum(&g_gamma, cache)?,
        g_x: mobius_sum(&g_x, cache)?,
    };
    Ok(OpposingPartition {
        gamma,
        ell,
        r,
        lambda,
        rho,
        l_set,
        r_set,
        g_gamma,
        g_x,
        t_set,
        sums,
    })
}

/// `[1, π)` split into disjoint blocks around an interval of `π` isomorphic
/// to a nice permutation φ with core ψ.
#[derive(Clone, Debug)]
pub struct NicePartition {
    pub gamma: Perm,
    pub c: usize,
    pub phi: Perm,
    pub core: Perm,
    /// Cover of φ without the core, in lexicographic order.
    pub lambdas: Vec<Perm>,
    /// `[1, γ[c ← ψ]]`.
    pub p_set: Vec<Perm>,
    /// `[1, γ[c ← λ_i]]` minus `P` and the earlier blocks.
    pub l_sets: Vec<Vec<Perm>>,
    /// Everything else in `[1, π)`.
    pub r_set: Vec<Perm>,
    pub p_sum: i64,
    pub l_sums: Vec<i64>,
    pub r_sum: i64,
}

/// Builds the P / L_i / R partition for the interval of `pi` starting at
/// 1-based position `c` that is isomorphic to `phi`.
pub fn partition_nice(
    pi: &Perm,
    c: usize,
    phi: &Perm,
    registry: &SzRegistry,
    cache: &MobiusCache,
) -> Result<NicePartition> {
    let k = phi.len();
    if k < 2 || c == 0 || c + k - 1 > pi.len() {
        return Err(Error::domain(format!(
            "no window of length {k} at position {c} in {pi}"
        )));
    }
    let window = &pi.entries()[c - 1..c - 1 + k];
    let lo = *window.iter().min().expect("non-empty");
    let hi = *window.iter().max().expect("non-empty");
    if (hi - lo) as usize + 1 != k || Perm::pattern_of(window) != *phi {
        return Err(Error::domain(format!(
            "positions {c}..{} of {pi} are not an interval isomorphic to {phi}",
            c + k - 1
        )));
    }
    let core = match registry.core_of(phi) {
        Some(core) => core.clone(),
        None if cache.principal_mobius(phi)? == 0 => registry
            .find_core(phi)
            .ok_or_else(|| Error::domain(format!("{phi} has no core")))?,
        None => return Err(Error::domain(format!("{phi} is not nice"))),
    };
    let kept: Vec<u8> = pi
        .entries()
        .iter()
        .enumerate()
        .filter(|&(i, _)| i < c || i >= c - 1 + k)
        .map(|(_, &v)| v)
        .collect();
    let gamma = Perm::pattern_of(&kept);
    let lambdas: Vec<Perm> = crate::poset::cover(phi)
        .into_iter()
        .filter(|l| *l != core)
        .collect();

    let block = |part: &Perm| -> Result<Vec<Perm>> {
        if part.is_empty() {
            let mut all = vec![Perm::identity(1); gamma.len()];
            all[c - 1] = Perm::empty();
            if all.iter().all(Perm::is_empty) {
                return Ok(Vec::new());
            }
            return Ok(principal_interval(&crate::inflation::inflate(&gamma, &all)?));
        }
        Ok(principal_interval(&inflate_at(&gamma, &[c], std::slice::from_ref(part))?))
    };

    let p_set = block(&core)?;
    let mut covered: HashSet<Perm> = p_set.iter().cloned().collect();
    let mut l_sets = Vec::with_capacity(lambdas.len());
    for lambda in &lambdas {
        let full = block(lambda)?;
        let fresh: Vec<Perm> = full.iter().filter(|t| !covered.contains(*t)).cloned().collect();
        covered.extend(full);
        l_sets.push(fresh);
    }
    let r_set: Vec<Perm> = principal_interval(pi)
        .into_iter()
        .filter(|t| t != pi && !covered.contains(t))
        .collect();

    let p_sum = mobius_sum(&p_set, cache)?;
    let l_sums = l_sets
        .iter()
        .map(|s| mobius_sum(s, cache))
        .collect::<Result<Vec<_>>>()?;
    let r_sum = mobius_sum(&r_set, cache)?;
    Ok(NicePartition {
        gamma,
        c,
        phi: phi.clone(),
        core,
        lambdas,
        p_set,
        l_sets,
        r_set,
        p_sum,
        l_sums,
        r_sum,
    })
}
