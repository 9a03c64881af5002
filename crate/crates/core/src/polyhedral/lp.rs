//! Exact simplex for the fractional packing LP
//! `max 1·y  s.t.  Σ_{C ∋ v} y_C <= w_v,  y >= 0`
//! and its dual, the fractional covering LP `min w·x` over `Q(C)`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{member_sum, PolyError, Rational};
use crate::bits;
use crate::budget::Meter;
use crate::clutter::Clutter;

/// Optimal primal/dual pair with equal objective values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpSolution {
    pub value: Rational,
    /// Fractional cover: `x ∈ Q(C)` with `w·x = value`.
    pub cover: Vec<Rational>,
    /// Fractional packing, one entry per member.
    pub packing: Vec<Rational>,
}

fn rat(v: u64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// `τ*(C, w)`. `None` when `Q(C)` is empty (some member is empty).
pub fn tau_star(c: &Clutter, w: &[u64], meter: &mut Meter) -> Result<Option<LpSolution>, PolyError> {
    assert_eq!(w.len(), c.ground_size(), "weight vector length");
    if c.has_empty_member() {
        return Ok(None);
    }
    let d = c.ground_size();
    let m = c.len();
    let cols = m + d;
    // constraint rows: one per element; basis starts at the slacks
    let mut rows: Vec<Vec<Rational>> = (0..d)
        .map(|v| {
            let mut r = vec![Rational::zero(); cols + 1];
            for (j, &mem) in c.members().iter().enumerate() {
                if mem & bits::bit(v) != 0 {
                    r[j] = Rational::one();
                }
            }
            r[m + v] = Rational::one();
            r[cols] = rat(w[v]);
            r
        })
        .collect();
    let mut basis: Vec<usize> = (m..cols).collect();
    // reduced costs c_j - c_B B^-1 A_j, and the objective value in the last slot
    let mut obj: Vec<Rational> = (0..=cols)
        .map(|j| if j < m { Rational::one() } else { Rational::zero() })
        .collect();
    loop {
        meter.tick()?;
        let Some(enter) = (0..cols).find(|&j| obj[j].is_positive()) else {
            break;
        };
        let mut leave: Option<(usize, Rational)> = None;
        for (r, row) in rows.iter().enumerate() {
            if row[enter].is_positive() {
                let ratio = &row[cols] / &row[enter];
                let better = match &leave {
                    None => true,
                    Some((lr, best)) => ratio < *best || (ratio == *best && basis[r] < basis[*lr]),
                };
                if better {
                    leave = Some((r, ratio));
                }
            }
        }
        let Some((lr, _)) = leave else {
            return Err(PolyError::Verification("unbounded packing LP".into()));
        };
        let piv = rows[lr][enter].clone();
        for k in 0..=cols {
            rows[lr][k] = &rows[lr][k] / &piv;
        }
        let prow = rows[lr].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != lr && !row[enter].is_zero() {
                let f = row[enter].clone();
                for k in 0..=cols {
                    let s = &f * &prow[k];
                    row[k] -= s;
                }
            }
        }
        let f = obj[enter].clone();
        for k in 0..=cols {
            let s = &f * &prow[k];
            obj[k] -= s;
        }
        basis[lr] = enter;
    }
    let value = -obj[cols].clone();
    let mut packing = vec![Rational::zero(); m];
    for (r, &b) in basis.iter().enumerate() {
        if b < m {
            packing[b] = rows[r][cols].clone();
        }
    }
    let cover: Vec<Rational> = (0..d).map(|v| -obj[m + v].clone()).collect();
    let sol = LpSolution { value, cover, packing };
    verify(c, w, &sol)?;
    Ok(Some(sol))
}

/// `ν*(C, w)`; equal to `τ*(C, w)` by duality, which [`tau_star`] checks.
pub fn nu_star(c: &Clutter, w: &[u64], meter: &mut Meter) -> Result<Option<Rational>, PolyError> {
    Ok(tau_star(c, w, meter)?.map(|s| s.packing.iter().fold(Rational::zero(), |a, b| a + b)))
}

fn verify(c: &Clutter, w: &[u64], sol: &LpSolution) -> Result<(), PolyError> {
    let fail = |what: &str| Err(PolyError::Verification(what.to_string()));
    let one = Rational::one();
    if sol.cover.iter().any(|x| x.is_negative()) || c.members().iter().any(|&m| member_sum(m, &sol.cover) < one) {
        return fail("fractional cover infeasible");
    }
    if sol.packing.iter().any(|y| y.is_negative()) {
        return fail("fractional packing negative");
    }
    for (v, &wv) in w.iter().enumerate() {
        let load = c
            .members()
            .iter()
            .zip(&sol.packing)
            .filter(|(&m, _)| m & bits::bit(v) != 0)
            .fold(Rational::zero(), |a, (_, y)| a + y);
        if load > rat(wv) {
            return fail("fractional packing exceeds a weight");
        }
    }
    let primal = w
        .iter()
        .zip(&sol.cover)
        .fold(Rational::zero(), |a, (&wv, x)| a + rat(wv) * x);
    let dual = sol.packing.iter().fold(Rational::zero(), |a, y| a + y);
    if primal != sol.value || dual != sol.value {
        return fail("primal and dual values differ");
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::budget::Budget;
    use crate::clutter::Builtin;
    use crate::polyhedral::extreme_points;

    fn min_over_vertices(c: &Clutter, w: &[u64]) -> Rational {
        extreme_points(c, &Budget::default())
            .unwrap()
            .iter()
            .map(|x| w.iter().zip(x).fold(Rational::zero(), |a, (&wv, xv)| a + rat(wv) * xv))
            .min()
            .unwrap()
    }

    #[test]
    fn delta3_and_q6_values() {
        let mut m = Meter::unlimited();
        let d3 = Clutter::builtin(Builtin::Delta3);
        let s = tau_star(&d3, &[1, 1, 1], &mut m).unwrap().unwrap();
        assert_eq!(s.value, Rational::new(3.into(), 2.into()));
        let q6 = Clutter::builtin(Builtin::Q6);
        assert_eq!(tau_star(&q6, &[1; 6], &mut m).unwrap().unwrap().value, rat(2));
        assert_eq!(nu_star(&q6, &[0; 6], &mut m).unwrap(), Some(rat(0)));
    }

    #[test]
    fn agrees_with_vertex_minimum() {
        let mut m = Meter::unlimited();
        let c5 = Clutter::builtin(Builtin::C5sq);
        for w in [[1, 1, 1, 1, 1], [3, 0, 2, 1, 5], [2, 2, 0, 0, 7]] {
            let s = tau_star(&c5, &w, &mut m).unwrap().unwrap();
            assert_eq!(s.value, min_over_vertices(&c5, &w));
        }
    }
}
