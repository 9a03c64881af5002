//! Exact computations on the set covering polyhedron `Q(C) = {x >= 0 : M(C) x >= 1}`.

mod covering;
mod dd;
mod lp;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bits::{self, Mask};
use crate::budget::{Budget, BudgetExceeded};
use crate::clutter::Clutter;

pub use covering::{
    guided_weights, has_packing_property, is_minimally_non_packing, max_packing, mfmc_check, min_cover, nu,
    packs, tau, violation_at, MfmcViolation, Packing,
};
pub use dd::MAX_CONSTRAINTS;
pub use lp::{nu_star, tau_star, LpSolution};

pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("{what} of size {size} exceeds the limit {cap}")]
    TooLarge {
        what: &'static str,
        size: usize,
        cap: usize,
    },
    #[error("integer overflow during vertex enumeration")]
    Overflow,
    #[error(transparent)]
    Budget(#[from] BudgetExceeded),
    #[error("internal check failed: {0}")]
    Verification(String),
}

/// A nonnegative integer weight, or `∞` (the element may never be used).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Weight {
    Finite(u64),
    Infinite,
}

impl Weight {
    pub fn finite(self) -> Option<u64> {
        match self {
            Weight::Finite(w) => Some(w),
            Weight::Infinite => None,
        }
    }
}

impl std::fmt::Display for Weight {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Weight::Finite(w) => write!(f, "{w}"),
            Weight::Infinite => write!(f, "inf"),
        }
    }
}

pub fn unit_weights(n: usize) -> Vec<Weight> {
    vec![Weight::Finite(1); n]
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IdealnessCertificate {
    Integral {
        extreme_points: usize,
    },
    /// A fractional extreme point with the member rows (indices into
    /// `members()`) and bounds `x_v >= 0` (ground indices) that are tight at it.
    FractionalPoint {
        point: Vec<Rational>,
        tight_members: Vec<usize>,
        tight_bounds: Vec<usize>,
    },
}

impl IdealnessCertificate {
    pub fn is_integral(&self) -> bool {
        matches!(self, IdealnessCertificate::Integral { .. })
    }
}

fn check_size(c: &Clutter, budget: &Budget) -> Result<(), PolyError> {
    if c.ground_size() > budget.max_poly_elements {
        return Err(PolyError::TooLarge {
            what: "ground set for vertex enumeration",
            size: c.ground_size(),
            cap: budget.max_poly_elements,
        });
    }
    Ok(())
}

/// All extreme points of `Q(C)`, sorted, each checked feasible and extreme.
pub fn extreme_points(c: &Clutter, budget: &Budget) -> Result<Vec<Vec<Rational>>, PolyError> {
    check_size(c, budget)?;
    if c.has_empty_member() {
        return Ok(Vec::new());
    }
    let d = c.ground_size();
    let raw = dd::cone_vertices(d, c.members())?;
    let mut out = Vec::with_capacity(raw.len());
    for (x, t) in raw {
        if !is_feasible_int(c, &x, t) {
            return Err(PolyError::Verification(format!("infeasible vertex {x:?}/{t}")));
        }
        let (rows, bounds) = tight_sets_int(c, &x, t);
        if tight_rank(c, &rows, &bounds) != d {
            return Err(PolyError::Verification(format!("non-extreme vertex {x:?}/{t}")));
        }
        let t = BigInt::from(t);
        out.push(
            x.into_iter()
                .map(|v| Rational::new(BigInt::from(v), t.clone()))
                .collect::<Vec<_>>(),
        );
    }
    out.sort();
    Ok(out)
}

/// `Integral` iff every extreme point of `Q(C)` is integral.
pub fn is_ideal(c: &Clutter, budget: &Budget) -> Result<IdealnessCertificate, PolyError> {
    let pts = extreme_points(c, budget)?;
    let count = pts.len();
    for p in pts {
        if p.iter().any(|v| !v.is_integer()) {
            let (tight_members, tight_bounds) = tight_sets(c, &p);
            return Ok(IdealnessCertificate::FractionalPoint {
                point: p,
                tight_members,
                tight_bounds,
            });
        }
    }
    Ok(IdealnessCertificate::Integral { extreme_points: count })
}

fn is_feasible_int(c: &Clutter, x: &[i128], t: i128) -> bool {
    t > 0
        && x.iter().all(|&v| v >= 0)
        && c
            .members()
            .iter()
            .all(|&m| bits::elements(m).iter().map(|&v| x[v]).sum::<i128>() >= t)
}

fn tight_sets_int(c: &Clutter, x: &[i128], t: i128) -> (Vec<usize>, Vec<usize>) {
    let rows = c
        .members()
        .iter()
        .enumerate()
        .filter(|(_, &m)| bits::elements(m).iter().map(|&v| x[v]).sum::<i128>() == t)
        .map(|(i, _)| i)
        .collect();
    let bounds = (0..x.len()).filter(|&v| x[v] == 0).collect();
    (rows, bounds)
}

/// Member rows and bounds tight at `x`.
pub fn tight_sets(c: &Clutter, x: &[Rational]) -> (Vec<usize>, Vec<usize>) {
    let one = Rational::one();
    let rows = c
        .members()
        .iter()
        .enumerate()
        .filter(|(_, &m)| member_sum(m, x) == one)
        .map(|(i, _)| i)
        .collect();
    let bounds = (0..x.len()).filter(|&v| x[v].is_zero()).collect();
    (rows, bounds)
}

fn member_sum(m: Mask, x: &[Rational]) -> Rational {
    bits::elements(m)
        .into_iter()
        .fold(Rational::zero(), |s, v| s + &x[v])
}

/// Rank of the 0/1 system formed by the given member rows and unit rows.
fn tight_rank(c: &Clutter, rows: &[usize], bounds: &[usize]) -> usize {
    let d = c.ground_size();
    let masks: Vec<Mask> = rows
        .iter()
        .map(|&i| c.members()[i])
        .chain(bounds.iter().map(|&v| bits::bit(v)))
        .collect();
    // rank mod p never exceeds the rational rank, so a full modular rank is conclusive
    let r = modular_rank(d, &masks);
    if r == d {
        return r;
    }
    rational_rank(d, &masks)
}

const PRIME: u64 = (1 << 61) - 1;

fn mulmod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % PRIME as u128) as u64
}

fn powmod(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a);
        }
        a = mulmod(a, a);
        e >>= 1;
    }
    r
}

fn modular_rank(d: usize, masks: &[Mask]) -> usize {
    let mut m: Vec<Vec<u64>> = masks
        .iter()
        .map(|&s| (0..d).map(|v| (s >> v) & 1).collect())
        .collect();
    let mut rank = 0;
    for col in 0..d {
        let Some(p) = (rank..m.len()).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(rank, p);
        let inv = powmod(m[rank][col], PRIME - 2);
        for r in 0..m.len() {
            if r != rank && m[r][col] != 0 {
                let f = mulmod(m[r][col], inv);
                for k in col..d {
                    let sub = mulmod(f, m[rank][k]);
                    m[r][k] = (m[r][k] + PRIME - sub) % PRIME;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn rational_rank(d: usize, masks: &[Mask]) -> usize {
    let mut m: Vec<Vec<Rational>> = masks
        .iter()
        .map(|&s| {
            (0..d)
                .map(|v| Rational::from_integer(BigInt::from((s >> v) & 1)))
                .collect()
        })
        .collect();
    let mut rank = 0;
    for col in 0..d {
        let Some(p) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let piv = m[rank][col].clone();
        for r in 0..m.len() {
            if r != rank && !m[r][col].is_zero() {
                let f = &m[r][col] / &piv;
                for k in col..d {
                    let sub = &f * &m[rank][k];
                    m[r][k] -= sub;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Independent check of a fractional-point certificate: feasibility, the
/// stated rows and bounds are tight, they have full column rank, and some
/// coordinate is not an integer.
pub fn check_fractional_point(
    c: &Clutter,
    point: &[Rational],
    tight_members: &[usize],
    tight_bounds: &[usize],
) -> bool {
    let d = c.ground_size();
    if point.len() != d || point.iter().any(|v| v.is_negative()) || point.iter().all(|v| v.is_integer()) {
        return false;
    }
    let one = Rational::one();
    if c.members().iter().any(|&m| member_sum(m, point) < one) {
        return false;
    }
    if tight_members
        .iter()
        .any(|&i| i >= c.len() || member_sum(c.members()[i], point) != one)
    {
        return false;
    }
    if tight_bounds.iter().any(|&v| v >= d || !point[v].is_zero()) {
        return false;
    }
    let masks: Vec<Mask> = tight_members
        .iter()
        .map(|&i| c.members()[i])
        .chain(tight_bounds.iter().map(|&v| bits::bit(v)))
        .collect();
    rational_rank(d, &masks) == d
}

/// `p/q`, or `p` for integers.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

pub fn format_vector(v: &[Rational]) -> String {
    format!("({})", v.iter().map(format_rational).collect::<Vec<_>>().join(","))
}

pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                return None;
            }
            Some(Rational::new(p, q))
        }
        None => Some(Rational::from_integer(s.parse().ok()?)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clutter::Builtin;

    fn half() -> Rational {
        Rational::new(BigInt::from(1), BigInt::from(2))
    }

    fn int(v: i64) -> Rational {
        Rational::from_integer(BigInt::from(v))
    }

    /// Brute force: solve every square subsystem of tight constraints.
    fn vertices_by_bases(c: &Clutter) -> Vec<Vec<Rational>> {
        let d = c.ground_size();
        let rows: Vec<Mask> = c
            .members()
            .iter()
            .copied()
            .chain((0..d).map(bits::bit))
            .collect();
        let rhs: Vec<i64> = c
            .members()
            .iter()
            .map(|_| 1)
            .chain((0..d).map(|_| 0))
            .collect();
        let mut out = Vec::new();
        for pick in bits::k_subsets(rows.len(), d) {
            let idx = bits::elements(pick);
            let mut a: Vec<Vec<Rational>> = idx
                .iter()
                .map(|&r| {
                    let mut row: Vec<Rational> = (0..d).map(|v| int(((rows[r] >> v) & 1) as i64)).collect();
                    row.push(int(rhs[r]));
                    row
                })
                .collect();
            let mut ok = true;
            for col in 0..d {
                let Some(p) = (col..d).find(|&r| !a[r][col].is_zero()) else {
                    ok = false;
                    break;
                };
                a.swap(col, p);
                let piv = a[col][col].clone();
                for k in 0..=d {
                    a[col][k] = &a[col][k] / &piv;
                }
                for r in 0..d {
                    if r != col && !a[r][col].is_zero() {
                        let f = a[r][col].clone();
                        for k in 0..=d {
                            let s = &f * &a[col][k];
                            a[r][k] -= s;
                        }
                    }
                }
            }
            if !ok {
                continue;
            }
            let x: Vec<Rational> = (0..d).map(|r| a[r][d].clone()).collect();
            if x.iter().all(|v| !v.is_negative()) && c.members().iter().all(|&m| member_sum(m, &x) >= int(1)) {
                out.push(x);
            }
        }
        out.sort();
        out.dedup();
        out
    }

    #[test]
    fn delta3_fractional_vertex() {
        let c = Clutter::builtin(Builtin::Delta3);
        let pts = extreme_points(&c, &Budget::default()).unwrap();
        let frac: Vec<_> = pts.iter().filter(|p| p.iter().any(|v| !v.is_integer())).collect();
        assert_eq!(frac, vec![&vec![half(), half(), half()]]);
        assert_eq!(pts, vertices_by_bases(&c));
        match is_ideal(&c, &Budget::default()).unwrap() {
            IdealnessCertificate::FractionalPoint {
                point,
                tight_members,
                tight_bounds,
            } => {
                assert!(check_fractional_point(&c, &point, &tight_members, &tight_bounds));
                assert_eq!(tight_members.len(), 3);
                assert!(tight_bounds.is_empty());
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn c5sq_and_q6() {
        let c = Clutter::builtin(Builtin::C5sq);
        let pts = extreme_points(&c, &Budget::default()).unwrap();
        assert_eq!(pts, vertices_by_bases(&c));
        assert!(pts.contains(&vec![half(); 5]));
        let q6 = Clutter::builtin(Builtin::Q6);
        assert!(is_ideal(&q6, &Budget::default()).unwrap().is_integral());
        assert_eq!(extreme_points(&q6, &Budget::default()).unwrap(), vertices_by_bases(&q6));
    }

    #[test]
    fn degenerate_clutters() {
        let none = Clutter::from_ids(3, &[]);
        assert_eq!(extreme_points(&none, &Budget::default()).unwrap(), vec![vec![int(0); 3]]);
        let single = Clutter::from_ids(3, &[&[1, 3]]);
        assert_eq!(
            extreme_points(&single, &Budget::default()).unwrap(),
            vec![vec![int(0), int(0), int(1)], vec![int(1), int(0), int(0)]]
        );
        let empty = Clutter::from_masks(vec![crate::clutter::Label::Id(1)], vec![0]).unwrap();
        assert!(extreme_points(&empty, &Budget::default()).unwrap().is_empty());
    }

    #[test]
    fn rejects_large_ground() {
        let c = Clutter::from_ids(20, &[&[1, 2]]);
        assert!(matches!(
            extreme_points(&c, &Budget::default()),
            Err(PolyError::TooLarge { size: 20, .. })
        ));
    }

    #[test]
    fn forged_certificate_is_rejected() {
        let c = Clutter::builtin(Builtin::Delta3);
        assert!(!check_fractional_point(&c, &[half(), half(), half()], &[0, 1], &[]));
        assert!(!check_fractional_point(&c, &[int(1), int(1), int(0)], &[0, 1], &[2]));
    }

    #[test]
    fn rational_text_round_trip() {
        assert_eq!(parse_rational("3/6"), Some(half()));
        assert_eq!(parse_rational("-2"), Some(int(-2)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(format_vector(&[half(), int(1)]), "(1/2,1)");
    }
}
