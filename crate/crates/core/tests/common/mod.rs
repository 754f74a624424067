//! Brute-force reference implementations. Nothing here calls into the
//! library except to convert to and from `Perm`.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap};

use pattern_mobius::Perm;

pub type Seq = Vec<u8>;

pub fn perm(s: &str) -> Perm {
    s.parse().unwrap()
}

pub fn to_perm(s: &[u8]) -> Perm {
    Perm::new(s.to_vec()).unwrap()
}

/// Rank-reduces any sequence of distinct values to 1..=k.
pub fn reduce(seq: &[u8]) -> Seq {
    seq.iter()
        .map(|&v| 1 + seq.iter().filter(|&&w| w < v).count() as u8)
        .collect()
}

/// All permutations of length `n` in lexicographic order, built by
/// inserting values one at a time.
pub fn all_perms(n: usize) -> Vec<Seq> {
    let mut out = vec![Vec::new()];
    for v in 1..=n as u8 {
        let mut next = Vec::new();
        for p in &out {
            for i in 0..=p.len() {
                let mut q = p.clone();
                q.insert(i, v);
                next.push(q);
            }
        }
        out = next;
    }
    out.sort();
    out
}

/// Every pattern of `p` (including ε and `p`) by subset enumeration.
pub fn patterns(p: &[u8]) -> BTreeSet<Seq> {
    let n = p.len();
    (0u32..1 << n)
        .map(|mask| {
            let sub: Seq = (0..n).filter(|&i| mask >> i & 1 == 1).map(|i| p[i]).collect();
            reduce(&sub)
        })
        .collect()
}

pub fn contains(s: &[u8], p: &[u8]) -> bool {
    let (k, n) = (s.len(), p.len());
    if k > n {
        return false;
    }
    (0u32..1 << n).filter(|m| m.count_ones() as usize == k).any(|mask| {
        let sub: Seq = (0..n).filter(|&i| mask >> i & 1 == 1).map(|i| p[i]).collect();
        reduce(&sub) == s
    })
}

/// `μ(sigma, pi)` from the explicit interval: elements ordered by length,
/// each value minus the sum over elements strictly below it.
pub fn mobius_order_matrix(sigma: &[u8], pi: &[u8]) -> i64 {
    if !contains(sigma, pi) {
        return 0;
    }
    let mut elems: Vec<Seq> = patterns(pi).into_iter().filter(|t| contains(sigma, t)).collect();
    elems.sort_by_key(|t| t.len());
    let m = elems.len();
    let mut mu = vec![0i64; m];
    for x in 0..m {
        if elems[x] == sigma {
            mu[x] = 1;
            continue;
        }
        let below: i64 = (0..m)
            .filter(|&y| y != x && elems[y].len() < elems[x].len() && contains(&elems[y], &elems[x]))
            .map(|y| mu[y])
            .sum();
        mu[x] = -below;
    }
    mu[m - 1]
}

/// `μ(1, pi)` by the defining recursion over subset-enumerated patterns,
/// memoised on the raw sequence.
#[derive(Default)]
pub struct NaivePrincipal {
    memo: HashMap<Seq, i64>,
}

impl NaivePrincipal {
    pub fn mu(&mut self, pi: &[u8]) -> i64 {
        if pi.len() == 1 {
            return 1;
        }
        if let Some(&v) = self.memo.get(pi) {
            return v;
        }
        let below: i64 = patterns(pi)
            .into_iter()
            .filter(|t| !t.is_empty() && t.len() < pi.len())
            .map(|t| self.mu(&t))
            .sum();
        self.memo.insert(pi.to_vec(), -below);
        -below
    }
}

pub fn reverse(p: &[u8]) -> Seq {
    p.iter().rev().copied().collect()
}

pub fn complement(p: &[u8]) -> Seq {
    let n = p.len() as u8;
    p.iter().map(|&v| n + 1 - v).collect()
}

pub fn inverse(p: &[u8]) -> Seq {
    let mut q = vec![0u8; p.len()];
    for (i, &v) in p.iter().enumerate() {
        q[v as usize - 1] = i as u8 + 1;
    }
    q
}

pub fn symmetries(p: &[u8]) -> BTreeSet<Seq> {
    let mut out = BTreeSet::new();
    for a in [p.to_vec(), inverse(p)] {
        for b in [a.clone(), reverse(&a)] {
            out.insert(complement(&b));
            out.insert(b);
        }
    }
    out
}

/// `(start, len)` of every window whose values are contiguous, 0-based.
pub fn windows(p: &[u8]) -> Vec<(usize, usize)> {
    let n = p.len();
    let mut out = Vec::new();
    for len in 1..=n {
        for start in 0..=n - len {
            let w = &p[start..start + len];
            let (lo, hi) = (w.iter().min().unwrap(), w.iter().max().unwrap());
            if (hi - lo) as usize + 1 == len {
                out.push((start, len));
            }
        }
    }
    out
}

pub fn is_simple(p: &[u8]) -> bool {
    let n = p.len();
    n >= 1 && windows(p).iter().all(|&(_, len)| len == 1 || len == n)
}

pub fn up_adjacencies(p: &[u8]) -> usize {
    p.windows(2).filter(|w| w[1] == w[0] + 1).count()
}

pub fn down_adjacencies(p: &[u8]) -> usize {
    p.windows(2).filter(|w| w[0] == w[1] + 1).count()
}

/// Whether some window of `p` reduces to one of `targets`.
pub fn has_interval_like(p: &[u8], targets: &[Seq]) -> bool {
    windows(p)
        .into_iter()
        .any(|(s, len)| targets.iter().any(|t| t.len() == len && reduce(&p[s..s + len]) == *t))
}

/// `sigma` with point `c` (1-based) replaced by a block shaped like
/// `alpha`, computed directly on values.
pub fn inflate_one(sigma: &[u8], c: usize, alpha: &[u8]) -> Seq {
    let k = alpha.len() as u8;
    let v = sigma[c - 1];
    let mut out = Vec::new();
    for (i, &s) in sigma.iter().enumerate() {
        if i + 1 == c {
            out.extend(alpha.iter().map(|&a| v - 1 + a));
        } else if s > v {
            out.push(s + k - 1);
        } else {
            out.push(s);
        }
    }
    reduce(&out)
}

/// `sigma` with every point replaced by the block `parts[i]` (all
/// non-empty).
pub fn inflate_all(sigma: &[u8], parts: &[Seq]) -> Seq {
    let mut out = sigma.to_vec();
    // right to left so earlier positions keep their index
    for c in (1..=sigma.len()).rev() {
        out = inflate_one(&out, c, &parts[c - 1]);
    }
    out
}
