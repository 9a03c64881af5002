//! Exhaustive minor search and isomorphism search over set families on `u64` masks.
//!
//! The minor search fixes the surviving ground set `R` and a labelled copy `F`
//! of the target on `R`. A set `C` survives deletion of `I` exactly when its
//! outside part `C - R` lies in `J`, and then contributes its trace `C ∩ R`.
//! The minor on `R` equals `F` iff every `f ∈ F` is the trace of a survivor and
//! every survivor's trace contains some `f`. Surviving is monotone in `J`, so
//! it suffices to try the unions of one minimal witness outside-part per
//! `f`; any valid `J` contains such a union, and a subset of a valid `J` can
//! only lose bad survivors. This makes the search complete.

use std::collections::HashSet;

use crate::bits::{self, is_subset, Mask};
use crate::budget::{BudgetExceeded, Meter};

/// A located minor: `map[i]` is the ground element playing target element `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FoundMinor {
    pub delete: Mask,
    pub contract: Mask,
    pub map: Vec<usize>,
}

/// How sets with an empty trace on `R` are treated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EmptyTrace {
    /// Clutter minors: an empty surviving set makes the minor `{∅}`.
    Fatal,
    /// Matroid minors: circuits are the minimal *nonempty* sets.
    Ignored,
}

/// Distinct labelled copies of `target` (a family on `0..k`), each with a
/// permutation producing it.
fn distinct_images(k: usize, target: &[Mask]) -> Vec<(Vec<usize>, Vec<Mask>)> {
    let mut seen: HashSet<Vec<Mask>> = HashSet::new();
    let mut out = Vec::new();
    for p in bits::permutations(k) {
        let mut fam: Vec<Mask> = target.iter().map(|&t| bits::permute(t, &p)).collect();
        fam.sort_unstable();
        if seen.insert(fam.clone()) {
            out.push((p, fam));
        }
    }
    out
}

/// Largest target ground set; the search keeps a table indexed by traces.
pub const MAX_TARGET: usize = 12;

pub fn find_minor(
    n: usize,
    sets: &[Mask],
    k: usize,
    target: &[Mask],
    empty: EmptyTrace,
    meter: &mut Meter,
) -> Result<Option<FoundMinor>, BudgetExceeded> {
    assert!(k <= MAX_TARGET, "minor targets are limited to {MAX_TARGET} elements");
    if k > n {
        return Ok(None);
    }
    let images = distinct_images(k, target);
    let all = bits::full(n);
    // minimal outside parts of the sets, bucketed by their trace on R
    let mut buckets: Vec<Vec<Mask>> = vec![Vec::new(); 1 << k];
    for r in bits::k_subsets(n, k) {
        meter.tick()?;
        let pos = bits::elements(r);
        for b in buckets.iter_mut() {
            b.clear();
        }
        for &s in sets {
            buckets[bits::compress(s & r, &pos) as usize].push(s & !r);
        }
        for b in buckets.iter_mut() {
            if b.len() > 1 {
                *b = bits::minimal_sets(std::mem::take(b));
            }
        }
        for (perm, fam) in &images {
            meter.tick()?;
            if let Some(u) = solve_image(&buckets, fam, empty, meter)? {
                return Ok(Some(FoundMinor {
                    delete: all & !r & !u,
                    contract: u,
                    map: perm.iter().map(|&p| pos[p]).collect(),
                }));
            }
        }
    }
    Ok(None)
}

/// Finds a contraction set `J` (outside `R`) realising `fam`, if one exists.
/// `buckets[t]` holds the minimal outside parts of the sets with trace `t`.
fn solve_image(
    buckets: &[Vec<Mask>],
    fam: &[Mask],
    empty: EmptyTrace,
    meter: &mut Meter,
) -> Result<Option<Mask>, BudgetExceeded> {
    let mut bad = Vec::new();
    let mut order: Vec<&[Mask]> = Vec::with_capacity(fam.len());
    for &f in fam {
        let w = &buckets[f as usize];
        if w.is_empty() {
            return Ok(None);
        }
        order.push(w);
    }
    for (t, outs) in buckets.iter().enumerate() {
        if outs.is_empty() {
            continue;
        }
        let t = t as Mask;
        let harmless = if t == 0 {
            empty == EmptyTrace::Ignored
        } else {
            fam.iter().any(|&f| is_subset(f, t))
        };
        if !harmless {
            bad.extend_from_slice(outs);
        }
    }
    let bad = bits::minimal_sets(bad);
    if bad.first() == Some(&0) {
        return Ok(None);
    }
    order.sort_by_key(|w| w.len());
    backtrack(&order, 0, 0, &bad, meter)
}

fn backtrack(
    choices: &[&[Mask]],
    depth: usize,
    u: Mask,
    bad: &[Mask],
    meter: &mut Meter,
) -> Result<Option<Mask>, BudgetExceeded> {
    if depth == choices.len() {
        return Ok(Some(u));
    }
    let mut tried: Vec<Mask> = Vec::new();
    for &w in choices[depth] {
        meter.tick()?;
        let next = u | w;
        if tried.contains(&next) || bad.iter().any(|&b| is_subset(b, next)) {
            continue;
        }
        tried.push(next);
        if let Some(found) = backtrack(choices, depth + 1, next, bad, meter)? {
            return Ok(Some(found));
        }
    }
    Ok(None)
}

/// A bijection `map` from `0..n` onto `0..n` with `{map(s) : s ∈ a} = b`.
pub fn isomorphism(n: usize, a: &[Mask], b: &[Mask]) -> Option<Vec<usize>> {
    if a.len() != b.len() {
        return None;
    }
    let sig = |fam: &[Mask], e: usize| {
        let mut sizes: Vec<u32> = fam
            .iter()
            .filter(|&&m| m & bits::bit(e) != 0)
            .map(|m| m.count_ones())
            .collect();
        sizes.sort_unstable();
        sizes
    };
    let sig_a: Vec<Vec<u32>> = (0..n).map(|e| sig(a, e)).collect();
    let sig_b: Vec<Vec<u32>> = (0..n).map(|e| sig(b, e)).collect();
    let mut sa = sig_a.clone();
    let mut sb = sig_b.clone();
    sa.sort();
    sb.sort();
    if sa != sb {
        return None;
    }
    let mut size_a: Vec<u32> = a.iter().map(|m| m.count_ones()).collect();
    let mut size_b: Vec<u32> = b.iter().map(|m| m.count_ones()).collect();
    size_a.sort_unstable();
    size_b.sort_unstable();
    if size_a != size_b {
        return None;
    }
    // most constrained elements first
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&e| {
        let class = sig_a.iter().filter(|s| **s == sig_a[e]).count();
        (class, std::cmp::Reverse(sig_a[e].len()), e)
    });
    let bset: HashSet<Mask> = b.iter().copied().collect();
    let aset: HashSet<Mask> = a.iter().copied().collect();
    let mut state = IsoState {
        map: vec![usize::MAX; n],
        inv: vec![usize::MAX; n],
        done_a: 0,
        done_b: 0,
    };
    if iso_step(&order, 0, a, b, &aset, &bset, &sig_a, &sig_b, &mut state) {
        Some(state.map)
    } else {
        None
    }
}

struct IsoState {
    map: Vec<usize>,
    inv: Vec<usize>,
    done_a: Mask,
    done_b: Mask,
}

#[allow(clippy::too_many_arguments)]
fn iso_step(
    order: &[usize],
    depth: usize,
    a: &[Mask],
    b: &[Mask],
    aset: &HashSet<Mask>,
    bset: &HashSet<Mask>,
    sig_a: &[Vec<u32>],
    sig_b: &[Vec<u32>],
    st: &mut IsoState,
) -> bool {
    if depth == order.len() {
        return true;
    }
    let e = order[depth];
    for img in 0..order.len() {
        if st.inv[img] != usize::MAX || sig_a[e] != sig_b[img] {
            continue;
        }
        st.map[e] = img;
        st.inv[img] = e;
        st.done_a |= bits::bit(e);
        st.done_b |= bits::bit(img);
        let ok = a.iter().all(|&m| {
            !is_subset(m, st.done_a) || m & bits::bit(e) == 0 || bset.contains(&bits::permute(m, &st.map))
        }) && b.iter().all(|&m| {
            !is_subset(m, st.done_b)
                || m & bits::bit(img) == 0
                || aset.contains(&bits::permute(m, &st.inv))
        });
        if ok && iso_step(order, depth + 1, a, b, aset, bset, sig_a, sig_b, st) {
            return true;
        }
        st.map[e] = usize::MAX;
        st.inv[img] = usize::MAX;
        st.done_a &= !bits::bit(e);
        st.done_b &= !bits::bit(img);
    }
    false
}
