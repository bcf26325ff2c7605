//! Small helpers over `u64` vertex masks.

/// Mask with the low `n` bits set (`n <= 64`).
#[inline]
pub fn full_mask(n: usize) -> u64 {
    debug_assert!(n <= 64);
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

#[inline]
pub fn bit(v: usize) -> u64 {
    1u64 << v
}

/// Iterates the set bits of `mask` in increasing order.
#[inline]
pub fn iter_bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let v = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(v)
        }
    })
}

pub fn mask_of(vertices: &[usize]) -> u64 {
    vertices.iter().fold(0, |m, &v| m | bit(v))
}

pub fn to_vec(mask: u64) -> Vec<usize> {
    iter_bits(mask).collect()
}

/// `true` when the sorted vertex list of `a` precedes that of `b`
/// lexicographically. Both masks must have the same popcount.
pub fn lex_less_same_size(a: u64, b: u64) -> bool {
    let diff = a ^ b;
    diff != 0 && (a & diff & diff.wrapping_neg()) != 0
}

/// Calls `f` on every `k`-subset of the bits of `universe`, in lexicographic
/// order of sorted vertex lists. Stops early when `f` returns `false`.
pub fn for_each_subset_of_size(universe: u64, k: usize, mut f: impl FnMut(u64) -> bool) {
    let elems = to_vec(universe);
    if k > elems.len() {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        let mask = idx.iter().fold(0u64, |m, &i| m | bit(elems[i]));
        if !f(mask) {
            return;
        }
        let mut pos = k;
        while pos > 0 && idx[pos - 1] == elems.len() - k + pos - 1 {
            pos -= 1;
        }
        if pos == 0 {
            return;
        }
        idx[pos - 1] += 1;
        for j in pos..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}
