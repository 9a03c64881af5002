//! Vertices of `Q(C) = {x >= 0 : M(C) x >= 1}` by the double description method.
//!
//! We work with the homogenised cone `{(x, t) : x >= 0, t >= 0, M(C) x - t 1 >= 0}`
//! in integer coordinates. Its extreme rays with `t > 0` are the vertices of
//! `Q(C)` scaled by `t`; the rays with `t = 0` are the unit recession directions.
//! Constraints are added one member at a time; adjacency of rays is decided
//! combinatorially from their zero sets.

use num_integer::Integer;

use super::PolyError;
use crate::bits::{self, Mask};

const WORDS: usize = 4;
pub const MAX_CONSTRAINTS: usize = 64 * WORDS;

type ZeroSet = [u64; WORDS];

#[inline]
fn zs_and(a: &ZeroSet, b: &ZeroSet) -> ZeroSet {
    [a[0] & b[0], a[1] & b[1], a[2] & b[2], a[3] & b[3]]
}

#[inline]
fn zs_count(a: &ZeroSet) -> u32 {
    a.iter().map(|w| w.count_ones()).sum()
}

#[inline]
fn zs_contains(sup: &ZeroSet, sub: &ZeroSet) -> bool {
    (0..WORDS).all(|i| sub[i] & !sup[i] == 0)
}

#[inline]
fn zs_set(a: &mut ZeroSet, k: usize) {
    a[k / 64] |= 1u64 << (k % 64);
}

#[derive(Clone, Debug)]
struct Ray {
    /// `x_0 .. x_{d-1}, t`
    coords: Vec<i128>,
    zeros: ZeroSet,
}

/// Integer vertices `(x, t)` with `t > 0`, one per vertex of `Q(C)`.
/// `members` are masks over `0..d`; none may be empty.
pub(crate) fn cone_vertices(d: usize, members: &[Mask]) -> Result<Vec<(Vec<i128>, i128)>, PolyError> {
    let rows = d + 1 + members.len();
    if rows > MAX_CONSTRAINTS {
        return Err(PolyError::TooLarge {
            what: "constraint rows",
            size: rows,
            cap: MAX_CONSTRAINTS,
        });
    }
    let dim = d + 1;
    let mut rays: Vec<Ray> = (0..dim)
        .map(|i| {
            let mut coords = vec![0i128; dim];
            coords[i] = 1;
            let mut zeros = [0u64; WORDS];
            for k in (0..dim).filter(|&k| k != i) {
                zs_set(&mut zeros, k);
            }
            Ray { coords, zeros }
        })
        .collect();

    // members touching fewer elements first keeps the intermediate cones small
    let mut order: Vec<usize> = (0..members.len()).collect();
    order.sort_by_key(|&j| (members[j].count_ones(), members[j]));

    for &j in &order {
        let m = members[j];
        let k = dim + j;
        let els = bits::elements(m);
        let value = |r: &Ray| -> i128 { els.iter().map(|&v| r.coords[v]).sum::<i128>() - r.coords[d] };
        let vals: Vec<i128> = rays.iter().map(value).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| vals[i] > 0).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| vals[i] < 0).collect();
        if neg.is_empty() {
            for (i, r) in rays.iter_mut().enumerate() {
                if vals[i] == 0 {
                    zs_set(&mut r.zeros, k);
                }
            }
            continue;
        }
        // adjacent rays share at least dim-2 tight constraints
        let mut fresh: Vec<Ray> = Vec::new();
        for &p in &pos {
            for &n in &neg {
                let common = zs_and(&rays[p].zeros, &rays[n].zeros);
                if (zs_count(&common) as usize) + 2 < dim {
                    continue;
                }
                let blocked = rays.iter().enumerate().any(|(i, r)| {
                    i != p && i != n && zs_contains(&r.zeros, &common)
                });
                if blocked {
                    continue;
                }
                let (a, b) = (vals[p], -vals[n]);
                let mut coords = Vec::with_capacity(dim);
                for c in 0..dim {
                    let x = b
                        .checked_mul(rays[p].coords[c])
                        .and_then(|u| a.checked_mul(rays[n].coords[c]).and_then(|w| u.checked_add(w)))
                        .ok_or(PolyError::Overflow)?;
                    coords.push(x);
                }
                let g = coords.iter().fold(0i128, |g, &x| g.gcd(&x));
                if g > 1 {
                    for x in coords.iter_mut() {
                        *x /= g;
                    }
                }
                let mut zeros = common;
                zs_set(&mut zeros, k);
                fresh.push(Ray { coords, zeros });
            }
        }
        let mut next: Vec<Ray> = Vec::with_capacity(rays.len() + fresh.len());
        for (i, mut r) in rays.into_iter().enumerate() {
            if vals[i] > 0 {
                next.push(r);
            } else if vals[i] == 0 {
                zs_set(&mut r.zeros, k);
                next.push(r);
            }
        }
        next.extend(fresh);
        rays = next;
    }
    let mut out: Vec<(Vec<i128>, i128)> = rays
        .into_iter()
        .filter(|r| r.coords[d] > 0)
        .map(|mut r| {
            let t = r.coords.pop().expect("t coordinate");
            (r.coords, t)
        })
        .collect();
    out.sort();
    out.dedup();
    Ok(out)
}
