use std::collections::HashMap;
use std::fs;
use std::io::{BufWriter, Write};
use std::path::Path;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, RwLock};

use super::packed::{FACTORIALS, MAX_PACKED};
use super::{contains, downset, MobiusTable};
use crate::error::{Error, Result};
use crate::perm::Perm;

/// First line of a persisted cache file.
pub const CACHE_HEADER: &str = "mobius-cache v1";

/// Memo of Möbius values.
///
/// Principal values `μ(1, π)` are keyed by the canonical member of the
/// symmetry orbit of `π`, since the eight symmetries are poset
/// automorphisms fixing `1`. General values `μ(σ, π)` are keyed by the raw
/// pair. A dense [`MobiusTable`] can be attached for exhaustive work; it is
/// consulted before the maps.
#[derive(Default)]
pub struct MobiusCache {
    principal: RwLock<HashMap<Perm, i64>>,
    general: RwLock<HashMap<(Perm, Perm), i64>>,
    table: RwLock<Option<Arc<MobiusTable>>>,
    hits: AtomicU64,
    misses: AtomicU64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CacheStats {
    pub hits: u64,
    pub misses: u64,
    pub principal_entries: usize,
    pub general_entries: usize,
    pub table_max_len: Option<usize>,
}

impl MobiusCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn stats(&self) -> CacheStats {
        CacheStats {
            hits: self.hits.load(Ordering::Relaxed),
            misses: self.misses.load(Ordering::Relaxed),
            principal_entries: self.principal.read().unwrap().len(),
            general_entries: self.general.read().unwrap().len(),
            table_max_len: self.table().map(|t| t.max_len()),
        }
    }

    /// The attached dense principal table, if any.
    pub fn table(&self) -> Option<Arc<MobiusTable>> {
        self.table.read().unwrap().clone()
    }

    /// Makes sure a dense principal table covers every length ≤ `max_n`,
    /// taking complete levels from the principal map when available.
    pub fn ensure_table(&self, max_n: usize) -> Result<Arc<MobiusTable>> {
        if let Some(t) = self.table() {
            if t.max_len() >= max_n {
                return Ok(t);
            }
        }
        let mut guard = self.table.write().unwrap();
        let mut table = match guard.as_ref() {
            Some(t) if t.max_len() >= max_n => return Ok(t.clone()),
            Some(t) => (**t).clone(),
            None => MobiusTable::principal(0)?,
        };
        {
            let principal = self.principal.read().unwrap();
            table.extend_with(max_n, |n| level_from_map(&principal, n))?;
        }
        let table = Arc::new(table);
        *guard = Some(table.clone());
        Ok(table)
    }

    /// The principal Möbius function `μ(1, pi)`.
    pub fn principal_mobius(&self, pi: &Perm) -> Result<i64> {
        if pi.is_empty() {
            return Err(Error::domain("principal Möbius function needs a non-empty permutation"));
        }
        if let Some(v) = self.table().and_then(|t| t.get(pi)) {
            self.hits.fetch_add(1, Ordering::Relaxed);
            return Ok(v);
        }
        let key = pi.canonical();
        if let Some(&v) = self.principal.read().unwrap().get(&key) {
            self.hits.fetch_add(1, Ordering::Relaxed);
            return Ok(v);
        }
        self.misses.fetch_add(1, Ordering::Relaxed);
        let value = if key.len() == 1 {
            1
        } else {
            let mut total: i64 = 0;
            // downset is shortlex ordered, so shorter patterns are memoized
            // before longer ones need them and recursion stays shallow.
            for tau in downset(&key) {
                if tau.is_empty() || tau == key {
                    continue;
                }
                total = total
                    .checked_add(self.principal_mobius(&tau)?)
                    .ok_or(Error::Overflow)?;
            }
            total.checked_neg().ok_or(Error::Overflow)?
        };
        self.principal.write().unwrap().insert(key, value);
        Ok(value)
    }

    /// The Möbius function `μ(sigma, pi)` of the containment order.
    pub fn mobius(&self, sigma: &Perm, pi: &Perm) -> Result<i64> {
        if sigma.is_empty() {
            return Err(Error::domain("Möbius lower bound must be non-empty"));
        }
        if sigma.len() == 1 {
            return if pi.is_empty() { Ok(0) } else { self.principal_mobius(pi) };
        }
        if sigma == pi {
            return Ok(1);
        }
        if !contains(sigma, pi) {
            return Ok(0);
        }
        let key = (sigma.clone(), pi.clone());
        if let Some(&v) = self.general.read().unwrap().get(&key) {
            self.hits.fetch_add(1, Ordering::Relaxed);
            return Ok(v);
        }
        self.misses.fetch_add(1, Ordering::Relaxed);
        let mut total: i64 = 0;
        for tau in downset(pi) {
            if tau.len() < sigma.len() || tau == *pi || !contains(sigma, &tau) {
                continue;
            }
            total = total
                .checked_add(self.mobius(sigma, &tau)?)
                .ok_or(Error::Overflow)?;
        }
        let value = total.checked_neg().ok_or(Error::Overflow)?;
        self.general.write().unwrap().insert(key, value);
        Ok(value)
    }

    /// Reads a cache file written by [`MobiusCache::save`].
    pub fn load(path: &Path) -> Result<Self> {
        let bytes = fs::read(path)?;
        let corrupt = |reason: String| Error::CacheCorrupt {
            path: path.to_path_buf(),
            reason,
        };
        let text = String::from_utf8(bytes)
            .map_err(|e| corrupt(format!("not UTF-8 at byte {}", e.utf8_error().valid_up_to())))?;
        let mut lines = text.split('\n');
        if lines.next() != Some(CACHE_HEADER) {
            return Err(corrupt(format!("missing header {CACHE_HEADER:?}")));
        }
        let mut map = HashMap::new();
        let mut previous: Option<Perm> = None;
        for (i, line) in lines.enumerate() {
            if line.is_empty() {
                continue;
            }
            let lineno = i + 2;
            let (perm, value) = line
                .split_once('\t')
                .ok_or_else(|| corrupt(format!("line {lineno}: expected permutation TAB value")))?;
            let perm: Perm = perm
                .parse()
                .map_err(|e| corrupt(format!("line {lineno}: {e}")))?;
            let value: i64 = value
                .parse()
                .map_err(|_| corrupt(format!("line {lineno}: bad value {value:?}")))?;
            if perm.is_empty() || !perm.is_canonical() {
                return Err(corrupt(format!("line {lineno}: {perm} is not a canonical key")));
            }
            if let Some(prev) = &previous {
                if prev.shortlex_cmp(&perm) != std::cmp::Ordering::Less {
                    return Err(corrupt(format!("line {lineno}: {perm} is out of order")));
                }
            }
            previous = Some(perm.clone());
            map.insert(perm, value);
        }
        Ok(MobiusCache {
            principal: RwLock::new(map),
            ..Self::default()
        })
    }

    /// Writes every known principal value (map and dense table) atomically.
    pub fn save(&self, path: &Path) -> Result<()> {
        let mut records: Vec<(Perm, i64)> = self
            .principal
            .read()
            .unwrap()
            .iter()
            .map(|(k, &v)| (k.clone(), v))
            .collect();
        if let Some(t) = self.table() {
            for n in 1..=t.max_len() {
                for (p, &v) in Perm::all_of_length(n).zip(t.level(n)) {
                    if p.is_canonical() {
                        records.push((p, v));
                    }
                }
            }
        }
        records.sort_by(|a, b| a.0.shortlex_cmp(&b.0));
        records.dedup_by(|a, b| a.0 == b.0);

        let dir = match path.parent() {
            Some(d) if !d.as_os_str().is_empty() => d,
            _ => Path::new("."),
        };
        let tmp = tempfile::NamedTempFile::new_in(dir)?;
        {
            let mut w = BufWriter::new(tmp.as_file());
            writeln!(w, "{CACHE_HEADER}")?;
            for (p, v) in &records {
                writeln!(w, "{p}\t{v}")?;
            }
            w.flush()?;
        }
        tmp.persist(path).map_err(|e| Error::Io(e.error))?;
        Ok(())
    }
}

fn level_from_map(map: &HashMap<Perm, i64>, n: usize) -> Option<Vec<i64>> {
    if n == 0 || n > MAX_PACKED || map.len() < FACTORIALS[n] / 8 {
        return None;
    }
    Perm::all_of_length(n)
        .map(|p| map.get(&p.canonical()).copied())
        .collect()
}
