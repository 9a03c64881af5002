//! Small helpers for subsets of a ground set of at most 64 elements stored as `u64`.

pub type Mask = u64;

#[inline]
pub fn bit(i: usize) -> Mask {
    1u64 << i
}

pub fn mask_of(items: &[usize]) -> Mask {
    items.iter().fold(0, |m, &i| m | bit(i))
}

pub fn elements(mut m: Mask) -> Vec<usize> {
    let mut out = Vec::with_capacity(m.count_ones() as usize);
    while m != 0 {
        out.push(m.trailing_zeros() as usize);
        m &= m - 1;
    }
    out
}

pub fn full(n: usize) -> Mask {
    if n == 64 {
        u64::MAX
    } else {
        bit(n) - 1
    }
}

#[inline]
pub fn is_subset(a: Mask, b: Mask) -> bool {
    a & !b == 0
}

/// Inclusion-wise minimal sets of `sets`, deduplicated and sorted ascending.
pub fn minimal_sets(mut sets: Vec<Mask>) -> Vec<Mask> {
    sets.sort_unstable_by_key(|m| (m.count_ones(), *m));
    sets.dedup();
    let mut kept: Vec<Mask> = Vec::with_capacity(sets.len());
    for s in sets {
        if !kept.iter().any(|&k| is_subset(k, s)) {
            kept.push(s);
        }
    }
    kept.sort_unstable();
    kept
}

/// Re-indexes `m` onto the positions of `keep` (sorted ascending): bit `keep[i]`
/// of `m` becomes bit `i` of the result.
pub fn compress(m: Mask, keep: &[usize]) -> Mask {
    keep.iter()
        .enumerate()
        .fold(0, |acc, (i, &k)| if m & bit(k) != 0 { acc | bit(i) } else { acc })
}

/// Maps every element `e` of `m` to `perm[e]`.
pub fn permute(m: Mask, perm: &[usize]) -> Mask {
    let mut out = 0;
    let mut rest = m;
    while rest != 0 {
        let e = rest.trailing_zeros() as usize;
        out |= bit(perm[e]);
        rest &= rest - 1;
    }
    out
}

/// All `k`-subsets of `0..n` as masks, in colexicographic order.
pub fn k_subsets(n: usize, k: usize) -> Vec<Mask> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    if k == 0 {
        out.push(0);
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(mask_of(&idx));
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] < n - k + i {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Heap's algorithm over permutations of `0..k`.
pub fn permutations(k: usize) -> Vec<Vec<usize>> {
    let mut a: Vec<usize> = (0..k).collect();
    let mut out = vec![a.clone()];
    let mut c = vec![0usize; k];
    let mut i = 0;
    while i < k {
        if c[i] < i {
            if i % 2 == 0 {
                a.swap(0, i);
            } else {
                a.swap(c[i], i);
            }
            out.push(a.clone());
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}
