//! Exact censuses over all permutations of a length, the simple-permutation
//! counts, and the lower-bound series for the proportion of permutations
//! with vanishing principal Möbius value.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::perm::Perm;
use crate::poset::packed::{unrank, FACTORIALS};
use crate::poset::MobiusCache;
use crate::szdetect::SzRegistry;

/// Upper bound conjectured for `Z(n)`, reported alongside computed rows.
pub const CONJECTURED_Z_CEILING: &str = "0.6040";

/// Exact counts for one length. Fields not computed by a given census are
/// `None`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CensusRow {
    pub n: usize,
    pub total: u64,
    pub mu_zero: Option<u64>,
    pub nonopp_zero: Option<u64>,
    pub nonopp_nonzero: Option<u64>,
    pub obviously_zero: Option<u64>,
    pub new: Option<u64>,
    pub simple_count: Option<u64>,
}

impl CensusRow {
    fn new(n: usize) -> Self {
        CensusRow {
            n,
            total: factorial(n),
            ..Default::default()
        }
    }

    /// `Z(n)` to 4 decimals.
    pub fn z_display(&self) -> Option<String> {
        self.mu_zero.map(|z| decimal_ratio(z, self.total, 4))
    }

    /// Percentages (2 decimals) of obviously-zero and new permutations.
    pub fn sz_percentages(&self) -> Option<(String, String)> {
        Some((
            decimal_ratio(self.obviously_zero? * 100, self.total, 2),
            decimal_ratio(self.new? * 100, self.total, 2),
        ))
    }
}

pub fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// `num / den` rounded half-up to `places` decimals.
pub fn decimal_ratio(num: u64, den: u64, places: u32) -> String {
    let r = BigRational::new(BigInt::from(num), BigInt::from(den));
    decimal_round_half_up(&r, places)
}

/// Non-negative rational rounded half-up to `places` decimals.
pub fn decimal_round_half_up(r: &BigRational, places: u32) -> String {
    let scale = BigInt::from(10u32).pow(places);
    let scaled = r * BigRational::from_integer(scale.clone());
    let doubled = scaled * BigRational::from_integer(BigInt::from(2));
    // floor((2x + 1) / 2)
    let rounded = (doubled.numer() + doubled.denom()).div_floor(&(doubled.denom() * 2));
    format_scaled(&rounded, places)
}

/// Non-negative rational truncated toward zero to `places` decimals.
pub fn decimal_truncate(r: &BigRational, places: u32) -> String {
    let scale = BigInt::from(10u32).pow(places);
    let scaled = r * BigRational::from_integer(scale);
    format_scaled(&scaled.to_integer(), places)
}

fn format_scaled(v: &BigInt, places: u32) -> String {
    let neg = v.is_negative();
    let digits = v.abs().to_string();
    let places = places as usize;
    let digits = if digits.len() <= places {
        format!("{}{digits}", "0".repeat(places + 1 - digits.len()))
    } else {
        digits
    };
    let (int, frac) = digits.split_at(digits.len() - places);
    let sign = if neg { "-" } else { "" };
    if places == 0 {
        format!("{sign}{int}")
    } else {
        format!("{sign}{int}.{frac}")
    }
}

/// Counts of `μ(1, π) = 0` for every length `1..=max_n`.
pub fn z_table(max_n: usize, cache: &MobiusCache) -> Result<Vec<CensusRow>> {
    if max_n == 0 {
        return Err(Error::domain("max_n must be at least 1"));
    }
    let table = cache.ensure_table(max_n)?;
    Ok((1..=max_n)
        .map(|n| CensusRow {
            mu_zero: Some(table.level(n).iter().filter(|&&v| v == 0).count() as u64),
            ..CensusRow::new(n)
        })
        .collect())
}

/// Permutations with at least two adjacencies, all in the same direction,
/// split by whether `μ(1, π)` vanishes; lengths `4..=max_n`.
pub fn nonopp_table(max_n: usize, cache: &MobiusCache) -> Result<Vec<CensusRow>> {
    if max_n < 4 {
        return Err(Error::domain("max_n must be at least 4"));
    }
    let table = cache.ensure_table(max_n)?;
    Ok((4..=max_n)
        .map(|n| {
            let (zero, nonzero) = Perm::all_of_length(n)
                .zip(table.level(n))
                .filter(|(p, _)| p.adjacency_count() >= 2 && !p.has_opposing_adjacencies())
                .fold((0u64, 0u64), |(z, nz), (_, &mu)| {
                    if mu == 0 {
                        (z + 1, nz)
                    } else {
                        (z, nz + 1)
                    }
                });
            CensusRow {
                nonopp_zero: Some(zero),
                nonopp_nonzero: Some(nonzero),
                ..CensusRow::new(n)
            }
        })
        .collect())
}

/// `S(n)` for `n = 0..=max_n` (index = length) by testing every permutation.
pub fn simple_census(max_n: usize) -> Vec<u64> {
    const CHUNK: usize = 5040;
    (0..=max_n)
        .map(|n| {
            if n == 0 {
                return 0;
            }
            let total = FACTORIALS[n];
            (0..total.div_ceil(CHUNK))
                .into_par_iter()
                .map(|ci| {
                    let mut entries = unrank(ci * CHUNK, n);
                    let end = ((ci + 1) * CHUNK).min(total);
                    let mut count = 0u64;
                    for _ in ci * CHUNK..end {
                        if Perm::new(entries.clone()).is_ok_and(|p| p.is_simple()) {
                            count += 1;
                        }
                        Perm::next_lex(&mut entries);
                    }
                    count
                })
                .sum()
        })
        .collect()
}

/// `n!/e²` and the three-term refinement `n!/e² (1 - 1/n + 2/(n(n-1)))`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SimpleEstimate {
    pub n: usize,
    pub plain: f64,
    pub refined: f64,
}

pub fn s_asymptotic(n: usize) -> Result<SimpleEstimate> {
    if n == 0 {
        return Err(Error::domain("n must be at least 1"));
    }
    let plain = factorial(n) as f64 / std::f64::consts::E.powi(2);
    let nf = n as f64;
    let correction = if n >= 2 {
        1.0 - 1.0 / nf + 2.0 / (nf * (nf - 1.0))
    } else {
        f64::NAN
    };
    Ok(SimpleEstimate {
        n,
        plain,
        refined: plain * correction,
    })
}

/// `n!/e²` at the precision used when comparing with `S(n)`: truncated to
/// one decimal below 100 and to an integer from there on.
pub fn plain_estimate_display(n: usize) -> String {
    let value = factorial(n) as f64 / std::f64::consts::E.powi(2);
    let places = if value < 100.0 { 1 } else { 0 };
    let r = BigRational::from_float(value).expect("finite");
    decimal_truncate(&r, places)
}

/// `(2^k - 2)/k!`, the limit of `P(n, k)·e²`.
pub fn limit_coefficient(k: usize) -> Result<BigRational> {
    if k < 2 {
        return Err(Error::domain(format!("coefficient index must be ≥ 2, got {k}")));
    }
    let numer = (BigInt::one() << k) - 2;
    let denom: BigInt = (1..=k).map(BigInt::from).product();
    Ok(BigRational::new(numer, denom))
}

/// `e²` as an exact rational, accurate far beyond double precision.
fn e_squared() -> BigRational {
    let mut term = BigRational::one();
    let mut sum = BigRational::one();
    for j in 1..=80u32 {
        term = term * BigRational::from_integer(BigInt::from(2)) / BigRational::from_integer(BigInt::from(j));
        sum += &term;
    }
    sum
}

/// The lower bound `(1/e²)·Σ_{k=2..terms} (2^k - 2)/k!`.
#[derive(Clone, Debug, PartialEq)]
pub struct LowerBound {
    pub terms: usize,
    /// `Σ_{k=2..terms} (2^k - 2)/k!`, exact.
    pub coefficient_sum: BigRational,
    pub value: f64,
    /// Truncated to 10 decimals.
    pub decimal: String,
}

pub fn asymptotic_lower_bound(terms: usize) -> Result<LowerBound> {
    if terms < 2 {
        return Err(Error::domain(format!("need at least 2 terms, got {terms}")));
    }
    let mut sum = BigRational::zero();
    for k in 2..=terms {
        sum += limit_coefficient(k)?;
    }
    let ratio = &sum / e_squared();
    Ok(LowerBound {
        terms,
        value: ratio.to_f64().unwrap_or(f64::NAN),
        decimal: decimal_truncate(&ratio, 10),
        coefficient_sum: sum,
    })
}

/// `(1 - 1/e)²`, the limit of [`asymptotic_lower_bound`].
pub fn bound_limit() -> f64 {
    let x = 1.0 - (-1.0f64).exp();
    x * x
}

/// Finite-`n` inflation census:
/// `(1/n!) Σ_{k=2..⌊n/2⌋} S(n-k)·C(n-k, k)·(2^k - 2)`, where `simples[m]`
/// is `S(m)`.
pub fn zsz_lower_bound(n: usize, simples: &[u64]) -> Result<BigRational> {
    if n < 4 {
        return Err(Error::domain(format!("n must be at least 4, got {n}")));
    }
    if simples.len() <= n - 2 {
        return Err(Error::domain(format!("simple counts needed up to length {}", n - 2)));
    }
    let mut count = BigInt::zero();
    for k in 2..=n / 2 {
        let m = n - k;
        let s = BigInt::from(simples[m]);
        let choose = binomial(m, k);
        count += s * choose * ((BigInt::one() << k) - 2);
    }
    Ok(BigRational::new(count, BigInt::from(factorial(n))))
}

fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    BigInt::from(acc)
}

/// Coefficients, partial sums and finite-`n` values of the bound series.
#[derive(Clone, Debug)]
pub struct BoundSeries {
    pub terms: BTreeMap<usize, BigRational>,
    /// `K → (1/e²)·Σ_{k=2..K}` truncated to 10 decimals.
    pub partial_sums: BTreeMap<usize, String>,
    pub finite_n: BTreeMap<usize, BigRational>,
}

/// Series up to `max_terms` coefficients, with finite-`n` values for every
/// `4 ≤ n ≤ simples.len() + 1` that the simple counts support.
pub fn bound_series(max_terms: usize, simples: &[u64]) -> Result<BoundSeries> {
    let mut terms = BTreeMap::new();
    let mut partial_sums = BTreeMap::new();
    let e2 = e_squared();
    let mut sum = BigRational::zero();
    for k in 2..=max_terms {
        let c = limit_coefficient(k)?;
        sum += &c;
        terms.insert(k, c);
        partial_sums.insert(k, decimal_truncate(&(&sum / &e2), 10));
    }
    let mut finite_n = BTreeMap::new();
    for n in 4..=simples.len() + 1 {
        finite_n.insert(n, zsz_lower_bound(n, simples)?);
    }
    Ok(BoundSeries {
        terms,
        partial_sums,
        finite_n,
    })
}

/// Obviously-zero and new counts from a principal registry, lengths
/// `3..=max_n`.
pub fn sz_class_table(max_n: usize, registry: &SzRegistry) -> Result<Vec<CensusRow>> {
    if registry.max_length() < max_n {
        return Err(Error::domain(format!(
            "registry covers lengths ≤ {}, asked for {max_n}",
            registry.max_length()
        )));
    }
    (3..=max_n)
        .map(|n| {
            let c = registry
                .counts(n)
                .ok_or_else(|| Error::domain(format!("registry has no counts for length {n}")))?;
            Ok(CensusRow {
                mu_zero: Some(c.mu_zero),
                obviously_zero: Some(c.obviously_zero),
                new: Some(c.new),
                ..CensusRow::new(n)
            })
        })
        .collect()
}

/// Rough wall-clock estimate (seconds, single core) of filling the dense
/// Möbius table up to length `n`.
pub fn estimated_table_seconds(n: usize) -> f64 {
    // calibrated on n = 9: about 10 s for 9!·2^9 pattern deletions
    const SECONDS_PER_UNIT: f64 = 10.0 / (362_880.0 * 512.0);
    (1..=n)
        .map(|k| factorial(k) as f64 * 2f64.powi(k as i32))
        .sum::<f64>()
        * SECONDS_PER_UNIT
}
