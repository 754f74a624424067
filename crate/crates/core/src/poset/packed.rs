//! Permutations of length ≤ 16 packed four bits per entry into a `u64`.
//!
//! Entry `i` (0-based) lives in bits `4i..4i+4` and stores `value - 1`.
//! Used by the dense tables where millions of sub-patterns are generated.

pub(crate) const MAX_PACKED: usize = 16;

pub(crate) const FACTORIALS: [usize; 17] = {
    let mut f = [1usize; 17];
    let mut i = 1;
    while i < 17 {
        f[i] = f[i - 1] * i;
        i += 1;
    }
    f
};

pub(crate) fn pack(entries: &[u8]) -> u64 {
    debug_assert!(entries.len() <= MAX_PACKED);
    entries
        .iter()
        .enumerate()
        .fold(0u64, |acc, (i, &v)| acc | (u64::from(v - 1) << (4 * i)))
}

#[cfg(test)]
pub(crate) fn unpack(code: u64, len: usize) -> Vec<u8> {
    (0..len).map(|i| ((code >> (4 * i)) & 0xf) as u8 + 1).collect()
}

/// Deletes entry `idx` of a length-`len` code and rank-reduces the rest.
#[inline]
pub(crate) fn delete(code: u64, len: usize, idx: usize) -> u64 {
    let shift = 4 * idx;
    let removed = (code >> shift) & 0xf;
    let low = code & ((1u64 << shift) - 1);
    let high = if idx + 1 >= 16 { 0 } else { code >> (shift + 4) };
    let mut out = low | (high << shift);
    for j in 0..len - 1 {
        if (out >> (4 * j)) & 0xf > removed {
            out -= 1u64 << (4 * j);
        }
    }
    out
}

/// Lexicographic rank among permutations of the same length.
#[inline]
pub(crate) fn rank(code: u64, len: usize) -> usize {
    let mut used: u32 = 0;
    let mut r = 0;
    for i in 0..len {
        let v = ((code >> (4 * i)) & 0xf) as u32;
        let smaller_unused = (!used & ((1u32 << v) - 1)).count_ones() as usize;
        r += smaller_unused * FACTORIALS[len - 1 - i];
        used |= 1 << v;
    }
    r
}

/// Entries (1-based values) of the permutation with lexicographic rank `r`.
pub(crate) fn unrank(mut r: usize, len: usize) -> Vec<u8> {
    let mut pool: Vec<u8> = (1..=len as u8).collect();
    let mut out = Vec::with_capacity(len);
    for i in 0..len {
        let f = FACTORIALS[len - 1 - i];
        out.push(pool.remove(r / f));
        r %= f;
    }
    out
}
