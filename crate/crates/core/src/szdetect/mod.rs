//! Certified strongly-zero permutations.
//!
//! A permutation is strongly zero (for lower bound σ) when every permutation
//! containing an interval order-isomorphic to it has `μ(σ, ·) = 0`. The
//! registry here is an under-approximation built from two certificates:
//!
//! * opposing adjacencies (lower bound `1`), or an interval isomorphic to a
//!   symmetry of `1243` (adjacency-free lower bound σ ≠ 1);
//! * an interval isomorphic to a registered *nice* permutation: one with
//!   Möbius value zero that has a *core*, a cover member ψ such that every
//!   uncertified pattern of the other cover members lies below ψ.
//!
//! Registries are built by increasing length so that the certificate used
//! for length `n` only depends on nice permutations shorter than `n`.

mod partition;

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use rayon::prelude::*;

pub use partition::{
    opposing_choices, partition_nice, partition_opposing, NicePartition, OpposingPartition,
    OpposingSums,
};

use crate::error::{Error, Result};
use crate::perm::Perm;
use crate::poset::{contains, cover, downset, MobiusCache, MobiusTable};

/// The four symmetries of `1243`.
const SYMMETRIES_OF_1243: [[u8; 4]; 4] = [[1, 2, 4, 3], [2, 1, 3, 4], [3, 4, 2, 1], [4, 3, 1, 2]];

/// Why a permutation is certified strongly zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SzCertificate {
    /// First up-adjacency and first down-adjacency (1-based positions).
    OpposingAdjacencies { up: usize, down: usize },
    /// A length-4 interval isomorphic to a symmetry of `1243` starting at
    /// `start`; used for adjacency-free lower bounds σ ≠ 1.
    SymmetryOf1243 { start: usize, pattern: Perm },
    /// An interval at `start` isomorphic to the registered nice `pattern`.
    NiceInterval { start: usize, pattern: Perm, core: Perm },
}

impl fmt::Display for SzCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SzCertificate::OpposingAdjacencies { up, down } => {
                write!(f, "opposing adjacencies up@{up} down@{down}")
            }
            SzCertificate::SymmetryOf1243 { start, pattern } => {
                write!(f, "interval {pattern} at position {start}")
            }
            SzCertificate::NiceInterval { start, pattern, core } => {
                write!(f, "interval {pattern} at position {start} (nice, core {core})")
            }
        }
    }
}

/// Per-length tallies collected while building a registry.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SzCounts {
    /// Permutations with Möbius value zero.
    pub mu_zero: u64,
    /// Nice and certified by opposing adjacencies or a strictly shorter nice
    /// interval.
    pub obviously_zero: u64,
    /// Nice but not obviously zero.
    pub new: u64,
    /// Certified as for `obviously_zero` but without a core.
    pub certified_not_nice: u64,
    /// Möbius value zero without either certificate.
    pub zero_not_certified: u64,
}

/// Certified under-approximation of the strongly-zero set for one lower
/// bound.
#[derive(Clone, Debug)]
pub struct SzRegistry {
    lower: Perm,
    max_length: usize,
    nice: BTreeMap<usize, BTreeMap<Perm, Perm>>,
    counts: BTreeMap<usize, SzCounts>,
}

impl SzRegistry {
    /// A registry with no nice members yet.
    pub fn empty(lower: Perm) -> Result<Self> {
        if lower.is_empty() {
            return Err(Error::domain("registry lower bound must be non-empty"));
        }
        Ok(SzRegistry {
            max_length: lower.len(),
            lower,
            nice: BTreeMap::new(),
            counts: BTreeMap::new(),
        })
    }

    pub fn lower_bound(&self) -> &Perm {
        &self.lower
    }

    fn is_principal(&self) -> bool {
        self.lower.len() == 1
    }

    /// Longest length whose permutations have all been examined.
    pub fn max_length(&self) -> usize {
        self.max_length
    }

    /// Registered nice members of length `n` with their cores.
    pub fn nice_members(&self, n: usize) -> impl Iterator<Item = (&Perm, &Perm)> {
        self.nice.get(&n).into_iter().flat_map(|m| m.iter())
    }

    pub fn nice_count(&self) -> usize {
        self.nice.values().map(BTreeMap::len).sum()
    }

    pub fn core_of(&self, phi: &Perm) -> Option<&Perm> {
        self.nice.get(&phi.len())?.get(phi)
    }

    pub fn counts(&self, n: usize) -> Option<SzCounts> {
        self.counts.get(&n).copied()
    }

    /// Registers `phi` as nice with `core` (callers vouch for niceness).
    pub fn insert_nice(&mut self, phi: Perm, core: Perm) {
        self.nice.entry(phi.len()).or_default().insert(phi, core);
    }

    /// `is_certified_strongly_zero`: a certificate, if `pi` has one.
    pub fn certify(&self, pi: &Perm) -> Option<SzCertificate> {
        self.certify_with_patterns_up_to(pi, pi.len())
    }

    /// Like [`certify`](Self::certify) but only nice patterns of length at
    /// most `max_pattern` count.
    pub fn certify_with_patterns_up_to(&self, pi: &Perm, max_pattern: usize) -> Option<SzCertificate> {
        if self.is_principal() {
            let prof = pi.adjacency_profile();
            if let (Some(&up), Some(&down)) = (prof.up_positions.first(), prof.down_positions.first()) {
                return Some(SzCertificate::OpposingAdjacencies { up, down });
            }
        } else if self.lower.is_adjacency_free() {
            for (start, end) in pi.intervals(4, 4) {
                let window = &pi.entries()[start - 1..end];
                let pattern = Perm::pattern_of(window);
                if SYMMETRIES_OF_1243.iter().any(|s| s == pattern.entries()) {
                    return Some(SzCertificate::SymmetryOf1243 { start, pattern });
                }
            }
        }
        let min_len = self.nice.keys().next().copied()?;
        for (start, end) in pi.intervals(min_len, max_pattern) {
            let len = end - start + 1;
            let Some(bucket) = self.nice.get(&len) else {
                continue;
            };
            let pattern = pi.window_pattern(start, end);
            if let Some(core) = bucket.get(&pattern) {
                return Some(SzCertificate::NiceInterval {
                    start,
                    core: core.clone(),
                    pattern,
                });
            }
        }
        None
    }

    /// Patterns of `lambda` relevant to this registry's lower bound: the
    /// whole closure (including ε) for lower bound `1`, otherwise the
    /// σ-closure.
    fn closure(&self, lambda: &Perm) -> Vec<Perm> {
        let all = downset(lambda);
        if self.is_principal() {
            all
        } else {
            all.into_iter()
                .filter(|t| t.len() >= self.lower.len() && contains(&self.lower, t))
                .collect()
        }
    }

    /// Union of closures of `perms`, minus everything certified strongly
    /// zero. Shortlex ordered.
    pub fn ground(&self, perms: &[Perm]) -> Vec<Perm> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for lambda in perms {
            for tau in self.closure(lambda) {
                if seen.insert(tau.clone()) && self.certify(&tau).is_none() {
                    out.push(tau);
                }
            }
        }
        out.sort_by(|a, b| a.shortlex_cmp(b));
        out
    }

    /// The lexicographically smallest cover member ψ of `phi` whose closure
    /// contains the ground of the remaining cover.
    pub fn find_core(&self, phi: &Perm) -> Option<Perm> {
        if phi.len() < 2 {
            return None;
        }
        let covers = cover(phi);
        let uncertified = covers
            .iter()
            .filter(|c| self.in_scope(c) && self.certify(c).is_none())
            .count();
        if uncertified > 1 {
            return None;
        }
        covers.iter().enumerate().find_map(|(i, psi)| {
            let rest: Vec<Perm> = covers
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, c)| c.clone())
                .collect();
            let closure_psi: HashSet<Perm> = self.closure(psi).into_iter().collect();
            self.ground(&rest)
                .iter()
                .all(|t| closure_psi.contains(t))
                .then(|| psi.clone())
        })
    }

    /// Whether `tau` lies in the poset above the lower bound (only such
    /// cover members can fail to be certified in a way that matters).
    fn in_scope(&self, tau: &Perm) -> bool {
        self.is_principal() || contains(&self.lower, tau)
    }

    /// Members whose core no longer passes when re-checked against the
    /// registry as it stands now.
    pub fn recheck_cores(&self) -> Vec<Perm> {
        self.nice
            .values()
            .flat_map(|m| m.iter())
            .filter(|(phi, core)| {
                let covers = cover(phi);
                let rest: Vec<Perm> = covers.into_iter().filter(|c| c != *core).collect();
                let closure_core: HashSet<Perm> = self.closure(core).into_iter().collect();
                !self.ground(&rest).iter().all(|t| closure_core.contains(t))
            })
            .map(|(phi, _)| phi.clone())
            .collect()
    }

    /// One line per canonical nice member: length, TAB, permutation, TAB,
    /// core; sorted by length then permutation.
    pub fn export(&self) -> String {
        let mut out = String::new();
        for (len, members) in &self.nice {
            for (phi, core) in members {
                if !self.is_principal() || phi.is_canonical() {
                    out.push_str(&format!("{len}\t{phi}\t{core}\n"));
                }
            }
        }
        out
    }

    /// Examines every permutation of the next length using Möbius values
    /// from `values` (lexicographic order).
    fn absorb_length(&mut self, n: usize, values: &[i64]) {
        let candidates: Vec<Perm> = Perm::all_of_length(n)
            .zip(values)
            .filter(|&(ref p, &mu)| mu == 0 && p.len() > self.lower.len() && contains(&self.lower, p))
            .map(|(p, _)| p)
            .collect();
        let verdicts: Vec<Verdict> = candidates
            .par_iter()
            .map(|phi| {
                if self.certify_with_patterns_up_to(phi, n - 1).is_some() {
                    Verdict::Obvious {
                        nice: self.find_core(phi).is_some(),
                    }
                } else if let Some(core) = self.find_core(phi) {
                    Verdict::New(core)
                } else {
                    Verdict::Uncertified
                }
            })
            .collect();
        let mut counts = SzCounts {
            mu_zero: values.iter().filter(|&&v| v == 0).count() as u64,
            ..SzCounts::default()
        };
        for (phi, verdict) in candidates.into_iter().zip(verdicts) {
            match verdict {
                Verdict::Obvious { nice: true } => counts.obviously_zero += 1,
                Verdict::Obvious { nice: false } => counts.certified_not_nice += 1,
                Verdict::New(core) => {
                    counts.new += 1;
                    self.insert_nice(phi, core);
                }
                Verdict::Uncertified => counts.zero_not_certified += 1,
            }
        }
        self.counts.insert(n, counts);
        self.max_length = n;
    }

    fn build_from_table(lower: &Perm, table: &MobiusTable, max_n: usize) -> Result<Self> {
        let mut reg = SzRegistry::empty(lower.clone())?;
        for n in lower.len() + 1..=max_n {
            reg.absorb_length(n, table.level(n));
        }
        reg.max_length = reg.max_length.max(max_n);
        Ok(reg)
    }
}

enum Verdict {
    Obvious { nice: bool },
    New(Perm),
    Uncertified,
}

/// Registry for the principal Möbius function covering lengths ≤ `max_n`.
pub fn build_registry(max_n: usize, cache: &MobiusCache) -> Result<SzRegistry> {
    let table = cache.ensure_table(max_n)?;
    SzRegistry::build_from_table(&Perm::identity(1), &table, max_n)
}

/// Registry for `μ(sigma, ·)` covering lengths ≤ `max_n`.
///
/// `sigma` must be adjacency-free or of length at most 2. For longer
/// lower bounds with an adjacency, nice intervals no longer force a zero:
/// 34152 is an interval of 145263 with `μ(132, 34152) = 0`, yet
/// `μ(132, 145263) = -2`.
pub fn build_sigma_registry(sigma: &Perm, max_n: usize) -> Result<SzRegistry> {
    if sigma.len() > 2 && !sigma.is_adjacency_free() {
        return Err(Error::domain(format!(
            "lower bound {sigma} has an adjacency; σ-nice intervals are only sound for adjacency-free σ"
        )));
    }
    let table = MobiusTable::for_lower_bound(sigma, max_n)?;
    SzRegistry::build_from_table(sigma, &table, max_n)
}

pub fn ground(perms: &[Perm], registry: &SzRegistry) -> Vec<Perm> {
    registry.ground(perms)
}

pub fn find_core(phi: &Perm, registry: &SzRegistry) -> Option<Perm> {
    registry.find_core(phi)
}

pub fn is_certified_strongly_zero(pi: &Perm, registry: &SzRegistry) -> Option<SzCertificate> {
    registry.certify(pi)
}

/// `μ(phi) = 0` and `phi` has a core.
pub fn is_nice(phi: &Perm, registry: &SzRegistry, cache: &MobiusCache) -> Result<bool> {
    if phi.is_empty() || cache.principal_mobius(phi)? != 0 {
        return Ok(false);
    }
    Ok(registry.find_core(phi).is_some())
}

fn check_sigma(sigma: &Perm, registry: &SzRegistry) -> Result<()> {
    if sigma.is_empty() {
        return Err(Error::domain("σ must be non-empty"));
    }
    if registry.lower_bound() != sigma {
        return Err(Error::domain(format!(
            "registry is for lower bound {}, not {sigma}",
            registry.lower_bound()
        )));
    }
    Ok(())
}

/// Union of σ-closures minus the certified σ-strongly-zero permutations.
pub fn sigma_ground(perms: &[Perm], sigma: &Perm, registry: &SzRegistry) -> Result<Vec<Perm>> {
    check_sigma(sigma, registry)?;
    Ok(registry.ground(perms))
}

pub fn find_sigma_core(phi: &Perm, sigma: &Perm, registry: &SzRegistry) -> Result<Option<Perm>> {
    check_sigma(sigma, registry)?;
    Ok(registry.find_core(phi))
}

/// `σ < phi`, `μ(σ, phi) = 0` and `phi` has a σ-core.
pub fn is_sigma_nice(
    phi: &Perm,
    sigma: &Perm,
    registry: &SzRegistry,
    cache: &MobiusCache,
) -> Result<bool> {
    check_sigma(sigma, registry)?;
    if phi.len() <= sigma.len() || !contains(sigma, phi) || cache.mobius(sigma, phi)? != 0 {
        return Ok(false);
    }
    Ok(registry.find_core(phi).is_some())
}

/// Where a permutation sits in the strongly-zero taxonomy.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Classification {
    /// Obviously zero by opposing adjacencies.
    OpposingAdjacencies { up: usize, down: usize },
    /// Obviously zero by an interval isomorphic to a shorter nice permutation.
    ObviouslyZero { start: usize, pattern: Perm, core: Perm },
    /// Nice, not obviously zero.
    New { core: Perm },
    /// `μ = 0` with no certificate.
    ZeroNotCertified,
    NonZero { mu: i64 },
}

impl Classification {
    pub fn is_obviously_zero(&self) -> bool {
        matches!(
            self,
            Classification::OpposingAdjacencies { .. } | Classification::ObviouslyZero { .. }
        )
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Classification::OpposingAdjacencies { up, down } => {
                write!(f, "ObviouslyZero: opposing adjacencies up@{up} down@{down}")
            }
            Classification::ObviouslyZero { start, pattern, core } => write!(
                f,
                "ObviouslyZero: interval {pattern} at position {start} (nice, core {core})"
            ),
            Classification::New { core } => write!(f, "New: nice with core {core}"),
            Classification::ZeroNotCertified => f.write_str("ZeroNotCertified"),
            Classification::NonZero { mu } => write!(f, "NonZero(μ={mu})"),
        }
    }
}

/// Classifies `pi` against a principal registry covering lengths `< |pi|`.
pub fn classify(pi: &Perm, registry: &SzRegistry, cache: &MobiusCache) -> Result<Classification> {
    if !registry.is_principal() {
        return Err(Error::domain("classification needs a principal registry"));
    }
    if pi.is_empty() {
        return Err(Error::domain("cannot classify the empty permutation"));
    }
    if registry.max_length() + 1 < pi.len() {
        return Err(Error::domain(format!(
            "registry covers lengths ≤ {}, need ≥ {}",
            registry.max_length(),
            pi.len() - 1
        )));
    }
    let mu = cache.principal_mobius(pi)?;
    if mu != 0 {
        return Ok(Classification::NonZero { mu });
    }
    match registry.certify_with_patterns_up_to(pi, pi.len() - 1) {
        Some(SzCertificate::OpposingAdjacencies { up, down }) => {
            return Ok(Classification::OpposingAdjacencies { up, down })
        }
        Some(SzCertificate::NiceInterval { start, pattern, core }) => {
            return Ok(Classification::ObviouslyZero { start, pattern, core })
        }
        Some(SzCertificate::SymmetryOf1243 { .. }) => unreachable!("principal registry"),
        None => {}
    }
    Ok(match registry.find_core(pi) {
        Some(core) => Classification::New { core },
        None => Classification::ZeroNotCertified,
    })
}
