//! Acceptance run: one line per criterion, non-zero exit if any fails.
//!
//! `cargo test -p pattern-mobius --test acceptance`

mod common;

use std::panic::{self, AssertUnwindSafe};
use std::process::Command;
use std::time::Instant;

use common::*;
use num_bigint::BigInt;
use num_rational::BigRational;
use pattern_mobius::inflation::{is_skew_decomposable, is_sum_decomposable};
use pattern_mobius::{build_registry, decompose, interval, zstats, MobiusCache, MobiusTable, Perm};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn z_census() -> Outcome {
    let want = [
        "0.0000", "0.0000", "0.3333", "0.4167", "0.4833", "0.5361", "0.5742", "0.5942", "0.6019",
    ];
    let out = Command::new(env!("CARGO_BIN_EXE_pattern-mobius"))
        .args(["census", "z", "--max-n", "9", "--format", "csv"])
        .env_remove("MOBIUS_CACHE")
        .output()
        .map_err(|e| e.to_string())?;
    ensure(out.status.success(), || String::from_utf8_lossy(&out.stderr).into_owned())?;
    let text = String::from_utf8(out.stdout).map_err(|e| e.to_string())?;
    let mut lines = text.lines();
    ensure(lines.next() == Some("Length,Z(n)"), || format!("unexpected header in\n{text}"))?;
    let got: Vec<(String, String)> = lines
        .map(|l| {
            let (n, z) = l.split_once(',').unwrap_or((l, ""));
            (n.to_string(), z.to_string())
        })
        .collect();
    ensure(got.len() == want.len(), || format!("{} rows", got.len()))?;
    for (i, ((n, z), w)) in got.iter().zip(want).enumerate() {
        ensure(*n == (i + 1).to_string() && z == w, || format!("n = {}: got {z}, want {w}", i + 1))?;
    }
    Ok(format!("Z(9) = {}", want[8]))
}

fn table_1() -> Outcome {
    let want = [(6, 4), (26, 8), (170, 38), (1154, 212), (8954, 1502), (78006, 13088)];
    let rows = zstats::nonopp_table(9, &MobiusCache::new()).map_err(|e| e.to_string())?;
    let mut bad = Vec::new();
    for (row, w) in rows.iter().zip(want) {
        let got = (row.nonopp_zero.unwrap(), row.nonopp_nonzero.unwrap());
        if got != w {
            bad.push(format!("n = {}: got {got:?}, want {w:?}", row.n));
        }
    }
    ensure(rows.len() == want.len(), || format!("{} rows", rows.len()))?;
    ensure(bad.is_empty(), || bad.join("; "))?;
    Ok("n = 4..9".into())
}

fn table_2() -> Outcome {
    let want = [(0, 2), (10, 0), (40, 10), (258, 16), (1570, 144), (11366, 816)];
    let cache = MobiusCache::new();
    let reg = build_registry(8, &cache).map_err(|e| e.to_string())?;
    for (n, w) in (3..=8).zip(want) {
        let c = reg.counts(n).ok_or_else(|| format!("no counts for n = {n}"))?;
        let got = (c.obviously_zero, c.new);
        if got != w {
            let first = reg
                .nice_members(n)
                .next()
                .map(|(p, core)| format!("{p} (core {core})"))
                .unwrap_or_else(|| "none".into());
            return Err(format!("n = {n}: got {got:?}, want {w:?}; first nice member {first}"));
        }
    }
    Ok("n = 3..8".into())
}

fn table_3() -> Outcome {
    let want_s = [2u64, 6, 46, 338, 2926, 28146, 298526];
    let want_e = ["3.2", "16.2", "97.4", "682", "5456", "49110", "491104"];
    let s = zstats::simple_census(10);
    for (i, n) in (4..=10).enumerate() {
        ensure(s[n] == want_s[i], || format!("S({n}) = {}, want {}", s[n], want_s[i]))?;
        let e = zstats::plain_estimate_display(n);
        ensure(e == want_e[i], || format!("{n}!/e^2 shown as {e}, want {}", want_e[i]))?;
    }
    Ok("S(4..10) and n!/e^2".into())
}

fn bound_series() -> Outcome {
    let coeffs = [
        ratio(1, 1),
        ratio(1, 1),
        ratio(7, 12),
        ratio(1, 4),
        ratio(31, 360),
        ratio(1, 40),
        ratio(127, 20160),
        ratio(17, 12096),
    ];
    for (k, want) in (2..).zip(&coeffs) {
        let got = zstats::limit_coefficient(k).map_err(|e| e.to_string())?;
        ensure(got == *want, || format!("coefficient {k}: got {got}, want {want}"))?;
    }
    let b100 = zstats::asymptotic_lower_bound(100).map_err(|e| e.to_string())?;
    ensure((b100.value - 0.3995764008).abs() <= 1e-10, || {
        format!("bound(100) = {}, want 0.3995764008", b100.decimal)
    })?;
    let gap = (b100.value - zstats::bound_limit()).abs();
    ensure(gap < 1e-10, || format!("|bound(100) - (1-1/e)^2| = {gap:e}"))?;
    let b9 = zstats::asymptotic_lower_bound(9).map_err(|e| e.to_string())?;
    ensure((b9.value - 0.3995299850).abs() <= 1e-10, || {
        format!(
            "bound(9) = {:.12}, want 0.3995299850 ± 1e-10 (difference {:e})",
            b9.value,
            b9.value - 0.3995299850
        )
    })?;
    Ok(format!("bound(9) = {}, bound(100) = {}", b9.decimal, b100.decimal))
}

fn principal_suites() -> Outcome {
    let table = MobiusTable::principal(8).map_err(|e| e.to_string())?;
    let (mut opposing, mut triple) = (0u64, 0u64);
    for n in 1..=8 {
        for (p, &v) in all_perms(n).iter().zip(table.level(n)) {
            if up_adjacencies(p) > 0 && down_adjacencies(p) > 0 {
                ensure(v == 0, || format!("opposing {p:?} has μ = {v}"))?;
                opposing += 1;
            }
            if has_interval_like(p, &[vec![1, 2, 3], vec![3, 2, 1]]) {
                ensure(v == 0, || format!("triple {p:?} has μ = {v}"))?;
                triple += 1;
            }
            let canon = symmetries(p).into_iter().next().unwrap();
            let cv = table.get(&to_perm(&canon)).unwrap();
            ensure(v == cv, || format!("μ{p:?} = {v} but μ{canon:?} = {cv}"))?;
        }
    }

    let mut intervals = 0u64;
    for k in 1..=5 {
        for s in all_perms(k) {
            let sigma = to_perm(&s);
            let lower = MobiusTable::for_lower_bound(&sigma, 6).map_err(|e| e.to_string())?;
            for n in k + 1..=6 {
                for p in all_perms(n) {
                    if !common::contains(&s, &p) {
                        continue;
                    }
                    let members = interval(&sigma, &to_perm(&p)).map_err(|e| e.to_string())?;
                    let sum: i64 = members.iter().map(|t| lower.get(t).unwrap()).sum();
                    ensure(sum == 0, || format!("Σμ over [{s:?}, {p:?}] = {sum}"))?;
                    intervals += 1;
                }
            }
        }
    }
    Ok(format!("{opposing} opposing, {triple} triple, {intervals} intervals"))
}

fn inflation_suites() -> Outcome {
    let symmetries_1243: Vec<Seq> = symmetries(&[1, 2, 4, 3]).into_iter().collect();
    let singles: [Seq; 3] = [vec![1], vec![1, 2], vec![2, 1]];
    let chain: [(Seq, i64); 6] = [
        (vec![1], 1),
        (vec![1, 2], -1),
        (vec![2, 1], -1),
        (vec![1, 2, 3], 0),
        (vec![1, 3, 2], 1),
        (vec![1, 2, 4, 3], 0),
    ];
    let sigmas: Vec<Seq> = (1..=4)
        .flat_map(all_perms)
        .filter(|s| up_adjacencies(s) + down_adjacencies(s) == 0)
        .collect();
    ensure(sigmas == [vec![1], vec![2, 4, 1, 3], vec![3, 1, 4, 2]], || format!("{sigmas:?}"))?;

    let (mut zero, mut boolean, mut pairs, mut chains) = (0u64, 0u64, 0u64, 0u64);
    for s in &sigmas {
        let k = s.len();
        let table = MobiusTable::for_lower_bound(&to_perm(s), 8).map_err(|e| e.to_string())?;
        let mu = |p: &Seq| table.get(&to_perm(p)).unwrap();

        for n in k..=8 {
            for (p, &v) in all_perms(n).iter().zip(table.level(n)) {
                if has_interval_like(p, &symmetries_1243) {
                    ensure(v == 0, || format!("μ({s:?}, {p:?}) = {v} with a 1243 interval"))?;
                    zero += 1;
                }
            }
        }

        for choice in 1..3usize.pow(k as u32) {
            let parts: Vec<Seq> = (0..k).map(|i| singles[choice / 3usize.pow(i as u32) % 3].clone()).collect();
            let p = inflate_all(s, &parts);
            let want = if (p.len() - k).is_multiple_of(2) { 1 } else { -1 };
            ensure(mu(&p) == want, || format!("μ({s:?}, {p:?}) = {}, want {want}", mu(&p)))?;
            boolean += 1;
        }

        if k > 1 {
            for l in 1..=k {
                for r in (1..=k).filter(|&r| r != l) {
                    let mut parts = vec![vec![1u8]; k];
                    parts[l - 1] = vec![1, 2];
                    parts[r - 1] = vec![2, 1];
                    let p = inflate_all(s, &parts);
                    ensure(mu(&p) == 1, || format!("μ({s:?}, {p:?}) = {}", mu(&p)))?;
                    pairs += 1;
                }
            }
        }

        for c in 1..=k {
            for (alpha, want) in &chain {
                let p = inflate_one(s, c, alpha);
                ensure(mu(&p) == *want, || format!("μ({s:?}, {p:?}) = {}, want {want}", mu(&p)))?;
            }
            chains += 1;
        }
    }
    Ok(format!(
        "{zero} with 1243 intervals, {boolean} boolean, {pairs} opposing pairs, {chains} chains"
    ))
}

fn naive_oracle() -> Outcome {
    let table = MobiusTable::principal(7).map_err(|e| e.to_string())?;
    let mut naive = NaivePrincipal::default();
    let (mut checked, mut wrong) = (0u64, Vec::new());
    for n in 1..=7 {
        for (p, &v) in all_perms(n).iter().zip(table.level(n)) {
            let w = naive.mu(p);
            if v != w {
                wrong.push(format!("{p:?}: {v} vs {w}"));
            }
            checked += 1;
        }
    }
    ensure(checked == 5913, || format!("checked {checked} values"))?;
    ensure(wrong.is_empty(), || format!("{} discrepancies, first {}", wrong.len(), wrong[0]))?;
    Ok("5913 values, 0 discrepancies".into())
}

fn round_trip() -> Outcome {
    let mut first_part = 0u64;
    for n in 1..=8 {
        for p in Perm::all_of_length(n) {
            let d = decompose(&p).map_err(|e| e.to_string())?;
            ensure(d.inflate() == p, || format!("{p} decomposes to {} [...]", d.skeleton))?;
            ensure(is_simple(d.skeleton.entries()), || format!("skeleton {} of {p}", d.skeleton))?;
            if n > 6 {
                continue;
            }
            let e = p.entries();
            let prefix = if is_sum_decomposable(&p) {
                (1..n).find(|&k| e[..k].iter().all(|&v| v as usize <= k))
            } else if is_skew_decomposable(&p) {
                (1..n).find(|&k| e[..k].iter().all(|&v| v as usize > n - k))
            } else {
                None
            };
            if let Some(k) = prefix {
                let want = to_perm(&reduce(&e[..k]));
                ensure(d.parts[0] == want, || format!("{p}: first part {}, want {want}", d.parts[0]))?;
                first_part += 1;
            }
        }
    }
    Ok(format!("46233 round trips, {first_part} first parts"))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("Z(n) census to n = 9", z_census),
        ("non-opposing multi-adjacency split", table_1),
        ("obviously zero / new counts", table_2),
        ("simple permutations and n!/e^2", table_3),
        ("asymptotic lower bound series", bound_series),
        ("principal zero theorems, zero sums, orbits", principal_suites),
        ("adjacency-free lower bounds", inflation_suites),
        ("naive recursion oracle", naive_oracle),
        ("decomposition round trip", round_trip),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            Err(format!("panicked: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {} ({name}): PASS [{secs:.1}s] {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {} ({name}): FAIL [{secs:.1}s] {detail}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
