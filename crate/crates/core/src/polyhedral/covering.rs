//! Integer covering and packing numbers `τ(C, w)`, `ν(C, w)` and the tests
//! built on them.

use std::collections::HashSet;

use serde::Serialize;

use super::{PolyError, Weight};
use crate::bits::{self, bit, Mask};
use crate::budget::{Budget, BudgetExceeded, Meter};
use crate::clutter::{Clutter, MinorSpec};

/// A weighted packing: `multiplicities[i]` copies of member `i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Packing {
    pub value: u64,
    pub multiplicities: Vec<u64>,
}

/// A weight vector on which `τ > ν`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MfmcViolation {
    pub weights: Vec<u64>,
    pub tau: u64,
    pub nu: u64,
}

fn finite_weights(w: &[u64]) -> Vec<Weight> {
    w.iter().map(|&x| Weight::Finite(x)).collect()
}

/// A minimum-weight cover and its weight. `None` when some member has only
/// `∞` elements (no finite cover exists).
pub fn min_cover(c: &Clutter, w: &[Weight], meter: &mut Meter) -> Result<Option<(u64, Mask)>, BudgetExceeded> {
    assert_eq!(w.len(), c.ground_size(), "weight vector length");
    cover_masks(c.members(), w, meter)
}

pub fn tau(c: &Clutter, w: &[Weight], meter: &mut Meter) -> Result<Option<u64>, BudgetExceeded> {
    Ok(min_cover(c, w, meter)?.map(|(v, _)| v))
}

fn cover_masks(members: &[Mask], w: &[Weight], meter: &mut Meter) -> Result<Option<(u64, Mask)>, BudgetExceeded> {
    let mut inf: Mask = 0;
    let mut free: Mask = 0;
    let mut cost = vec![0u64; w.len()];
    for (v, &x) in w.iter().enumerate() {
        match x {
            Weight::Infinite => inf |= bit(v),
            Weight::Finite(0) => free |= bit(v),
            Weight::Finite(k) => cost[v] = k,
        }
    }
    let mut sets = Vec::with_capacity(members.len());
    for &m in members {
        let m = m & !inf;
        if m == 0 {
            return Ok(None);
        }
        if m & free == 0 {
            sets.push(m);
        }
    }
    let sets = bits::minimal_sets(sets);
    let mut best = (u64::MAX, 0);
    cover_step(&sets, &cost, free, 0, 0, &mut best, meter)?;
    Ok(Some(best))
}

fn cover_step(
    sets: &[Mask],
    cost: &[u64],
    chosen: Mask,
    total: u64,
    forbidden: Mask,
    best: &mut (u64, Mask),
    meter: &mut Meter,
) -> Result<(), BudgetExceeded> {
    meter.tick()?;
    let open: Vec<Mask> = sets
        .iter()
        .filter(|&&m| m & chosen == 0)
        .map(|&m| m & !forbidden)
        .collect();
    if open.is_empty() {
        if total < best.0 {
            *best = (total, chosen);
        }
        return Ok(());
    }
    // members with pairwise disjoint allowed parts need distinct elements
    let mut used: Mask = 0;
    let mut bound = 0u64;
    for &m in &open {
        if m == 0 {
            return Ok(());
        }
        if m & used == 0 {
            used |= m;
            bound += bits::elements(m).iter().map(|&v| cost[v]).min().unwrap_or(0);
        }
    }
    if total.saturating_add(bound) >= best.0 {
        return Ok(());
    }
    let pick = *open.iter().min_by_key(|m| m.count_ones()).expect("nonempty");
    let mut choices = bits::elements(pick);
    choices.sort_by_key(|&v| (cost[v], v));
    let mut forbid = forbidden;
    for v in choices {
        cover_step(sets, cost, chosen | bit(v), total + cost[v], forbid, best, meter)?;
        forbid |= bit(v);
    }
    Ok(())
}

/// A maximum packing of members with each element `v` used at most `w_v`
/// times. `None` when the optimum is unbounded (a member of `∞` elements).
pub fn max_packing(c: &Clutter, w: &[Weight], meter: &mut Meter) -> Result<Option<Packing>, BudgetExceeded> {
    assert_eq!(w.len(), c.ground_size(), "weight vector length");
    let Some(ub) = tau(c, w, meter)? else {
        return Ok(None);
    };
    let mut caps: Vec<u64> = w.iter().map(|x| x.finite().unwrap_or(u64::MAX)).collect();
    let usable: Vec<usize> = (0..c.len())
        .filter(|&i| bits::elements(c.members()[i]).iter().all(|&v| caps[v] > 0))
        .collect();
    let mut search = PackSearch {
        members: usable.iter().map(|&i| c.members()[i]).collect(),
        ub,
        best: 0,
        best_mult: vec![0; usable.len()],
        mult: vec![0; usable.len()],
    };
    search.step(0, 0, &mut caps, meter)?;
    let mut multiplicities = vec![0; c.len()];
    for (k, &i) in usable.iter().enumerate() {
        multiplicities[i] = search.best_mult[k];
    }
    Ok(Some(Packing {
        value: search.best,
        multiplicities,
    }))
}

pub fn nu(c: &Clutter, w: &[Weight], meter: &mut Meter) -> Result<Option<u64>, BudgetExceeded> {
    Ok(max_packing(c, w, meter)?.map(|p| p.value))
}

struct PackSearch {
    members: Vec<Mask>,
    ub: u64,
    best: u64,
    best_mult: Vec<u64>,
    mult: Vec<u64>,
}

impl PackSearch {
    /// Weight of a greedy cover of the still usable members `i..`, an upper
    /// bound on what they can add.
    fn bound(&self, i: usize, caps: &[u64]) -> u64 {
        let mut hit: Mask = 0;
        let mut total = 0u64;
        for &m in &self.members[i..] {
            let els = bits::elements(m);
            if m & hit != 0 || els.iter().any(|&v| caps[v] == 0) {
                continue;
            }
            let v = *els.iter().min_by_key(|&&v| caps[v]).expect("nonempty member");
            hit |= bit(v);
            total = total.saturating_add(caps[v]);
        }
        total
    }

    fn step(&mut self, i: usize, value: u64, caps: &mut [u64], meter: &mut Meter) -> Result<(), BudgetExceeded> {
        meter.tick()?;
        if value > self.best {
            self.best = value;
            self.best_mult.clone_from(&self.mult);
        }
        if i == self.members.len() || self.best == self.ub {
            return Ok(());
        }
        if value.saturating_add(self.bound(i, caps)) <= self.best {
            return Ok(());
        }
        let els = bits::elements(self.members[i]);
        let most = els
            .iter()
            .map(|&v| caps[v])
            .min()
            .expect("nonempty member")
            .min(self.ub - value);
        for k in (0..=most).rev() {
            for &v in &els {
                caps[v] -= k;
            }
            self.mult[i] = k;
            let r = self.step(i + 1, value + k, caps, meter);
            for &v in &els {
                caps[v] += k;
            }
            self.mult[i] = 0;
            r?;
            if self.best == self.ub {
                break;
            }
        }
        Ok(())
    }
}

/// `τ(C, 1) = ν(C, 1)`, counting the case where both are infinite as packing.
pub fn packs(c: &Clutter, meter: &mut Meter) -> Result<bool, BudgetExceeded> {
    packs_masks(c.ground_size(), c.members(), meter)
}

fn packs_masks(n: usize, members: &[Mask], meter: &mut Meter) -> Result<bool, BudgetExceeded> {
    let w = vec![Weight::Finite(1); n];
    let Some(t) = cover_masks(members, &w, meter)?.map(|(v, _)| v) else {
        return Ok(true);
    };
    let c = Clutter::from_masks(
        (0..n as u32).map(crate::clutter::Label::Id).collect(),
        members.to_vec(),
    )
    .expect("valid ground");
    Ok(nu(&c, &w, meter)? == Some(t))
}

fn check_sweep_size(c: &Clutter, budget: &Budget) -> Result<(), PolyError> {
    if c.ground_size() > budget.max_sweep_elements {
        return Err(PolyError::TooLarge {
            what: "ground set for the minor sweep",
            size: c.ground_size(),
            cap: budget.max_sweep_elements,
        });
    }
    Ok(())
}

/// Calls `f(delete, contract, family)` once per distinct minor family, in a
/// fixed order, until it returns `Some`.
fn sweep_minors<T>(
    c: &Clutter,
    meter: &mut Meter,
    mut f: impl FnMut(Mask, Mask, &[Mask], &mut Meter) -> Result<Option<T>, BudgetExceeded>,
) -> Result<Option<T>, BudgetExceeded> {
    let n = c.ground_size();
    let total = 3u64.pow(n as u32);
    let mut seen: HashSet<Vec<Mask>> = HashSet::new();
    for code in 0..total {
        meter.tick()?;
        let (mut del, mut con) = (0, 0);
        let mut rest = code;
        for v in 0..n {
            match rest % 3 {
                1 => del |= bit(v),
                2 => con |= bit(v),
                _ => {}
            }
            rest /= 3;
        }
        let fam = bits::minimal_sets(
            c.members()
                .iter()
                .filter(|&&m| m & del == 0)
                .map(|&m| m & !con)
                .collect(),
        );
        if !seen.insert(fam.clone()) {
            continue;
        }
        if let Some(found) = f(del, con, &fam, meter)? {
            return Ok(Some(found));
        }
    }
    Ok(None)
}

fn spec_of(c: &Clutter, del: Mask, con: Mask) -> MinorSpec {
    MinorSpec::new(c.labels_of(del), c.labels_of(con))
}

/// A minor that does not pack, or `None` if `C` has the packing property.
pub fn has_packing_property(c: &Clutter, budget: &Budget) -> Result<Option<MinorSpec>, PolyError> {
    check_sweep_size(c, budget)?;
    let n = c.ground_size();
    let mut meter = budget.meter();
    Ok(sweep_minors(c, &mut meter, |del, con, fam, m| {
        Ok((!packs_masks(n, fam, m)?).then(|| spec_of(c, del, con)))
    })?)
}

/// `C` does not pack but every minor with a different member family does.
pub fn is_minimally_non_packing(c: &Clutter, budget: &Budget) -> Result<bool, PolyError> {
    check_sweep_size(c, budget)?;
    let n = c.ground_size();
    let mut meter = budget.meter();
    if packs(c, &mut meter)? {
        return Ok(false);
    }
    let own = c.members().to_vec();
    let bad = sweep_minors(c, &mut meter, |_, _, fam, m| {
        Ok((fam != own.as_slice() && !packs_masks(n, fam, m)?).then_some(()))
    })?;
    Ok(bad.is_none())
}

/// Searches all `w ∈ {0..=bound}^V` for one with `τ(C, w) > ν(C, w)`.
/// Finding none is not a proof of the max-flow min-cut property.
pub fn mfmc_check(c: &Clutter, bound: u64, meter: &mut Meter) -> Result<Option<MfmcViolation>, BudgetExceeded> {
    let n = c.ground_size();
    let mut w = vec![0u64; n];
    loop {
        if let Some(v) = violation_at(c, &w, meter)? {
            return Ok(Some(v));
        }
        let Some(i) = w.iter().position(|&x| x < bound) else {
            return Ok(None);
        };
        w[i] += 1;
        for x in &mut w[..i] {
            *x = 0;
        }
    }
}

/// `Some` iff `τ(C, w) > ν(C, w)` at this finite weight vector.
pub fn violation_at(c: &Clutter, w: &[u64], meter: &mut Meter) -> Result<Option<MfmcViolation>, BudgetExceeded> {
    let ww = finite_weights(w);
    let t = tau(c, &ww, meter)?;
    let v = nu(c, &ww, meter)?;
    Ok(match (t, v) {
        (Some(t), Some(v)) if t > v => Some(MfmcViolation {
            weights: w.to_vec(),
            tau: t,
            nu: v,
        }),
        _ => None,
    })
}

/// Weights reproducing the minor `C \ I / J` inside `C`: `0` on `I`, `1` on
/// the kept elements and `|R|` on `J`, which no optimal cover needs.
/// `τ(C, w)` and `ν(C, w)` then equal `τ` and `ν` of the minor at weight 1.
pub fn guided_weights(n: usize, delete: Mask, contract: Mask) -> Vec<u64> {
    let kept = (n as u32 - (delete | contract).count_ones()).max(1) as u64;
    (0..n)
        .map(|v| {
            if delete & bit(v) != 0 {
                0
            } else if contract & bit(v) != 0 {
                kept
            } else {
                1
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clutter::Builtin;

    fn ones(n: usize) -> Vec<Weight> {
        vec![Weight::Finite(1); n]
    }

    /// Cheapest cover by listing all subsets.
    fn tau_brute(c: &Clutter, w: &[u64]) -> u64 {
        (0..1u64 << c.ground_size())
            .filter(|&x| c.members().iter().all(|&m| m & x != 0))
            .map(|x| bits::elements(x).iter().map(|&v| w[v]).sum())
            .min()
            .unwrap()
    }

    /// Largest packing by trying every multiplicity vector.
    fn nu_brute(c: &Clutter, w: &[u64]) -> u64 {
        let m = c.len();
        let cap = *w.iter().max().unwrap_or(&0);
        let mut best = 0;
        let mut mult = vec![0u64; m];
        loop {
            let ok = (0..c.ground_size()).all(|v| {
                (0..m)
                    .filter(|&i| c.members()[i] & bit(v) != 0)
                    .map(|i| mult[i])
                    .sum::<u64>()
                    <= w[v]
            });
            if ok {
                best = best.max(mult.iter().sum());
            }
            let Some(i) = mult.iter().position(|&x| x < cap) else {
                return best;
            };
            mult[i] += 1;
            for x in &mut mult[..i] {
                *x = 0;
            }
        }
    }

    #[test]
    fn small_values() {
        let mut m = Meter::unlimited();
        let q6 = Clutter::builtin(Builtin::Q6);
        assert_eq!(tau(&q6, &ones(6), &mut m).unwrap(), Some(2));
        assert_eq!(nu(&q6, &ones(6), &mut m).unwrap(), Some(1));
        assert!(!packs(&q6, &mut m).unwrap());
        let d3 = Clutter::builtin(Builtin::Delta3);
        assert_eq!(tau(&d3, &ones(3), &mut m).unwrap(), Some(2));
        assert_eq!(nu(&d3, &ones(3), &mut m).unwrap(), Some(1));
        assert_eq!(tau(&d3, &[Weight::Finite(0); 3], &mut m).unwrap(), Some(0));
        let single = Clutter::from_ids(3, &[&[1, 2]]);
        assert!(packs(&single, &mut m).unwrap());
    }

    #[test]
    fn infinite_weights() {
        let mut m = Meter::unlimited();
        let d3 = Clutter::builtin(Builtin::Delta3);
        let w = [Weight::Infinite, Weight::Infinite, Weight::Finite(4)];
        assert_eq!(tau(&d3, &w, &mut m).unwrap(), None);
        assert_eq!(nu(&d3, &w, &mut m).unwrap(), None);
        let w = [Weight::Infinite, Weight::Finite(2), Weight::Finite(3)];
        assert_eq!(tau(&d3, &w, &mut m).unwrap(), Some(5));
    }

    #[test]
    fn agrees_with_brute_force() {
        let mut m = Meter::unlimited();
        let cases = [
            Clutter::builtin(Builtin::C5sq),
            Clutter::builtin(Builtin::Q6),
            Clutter::from_ids(5, &[&[1, 2, 3], &[3, 4], &[1, 5], &[2, 4, 5]]),
        ];
        for c in &cases {
            let n = c.ground_size();
            for seed in 0..40u64 {
                let w: Vec<u64> = (0..n as u64).map(|v| (seed * 7 + v * 13 + seed * v) % 4).collect();
                let ww = finite_weights(&w);
                assert_eq!(tau(c, &ww, &mut m).unwrap(), Some(tau_brute(c, &w)), "{c:?} {w:?}");
                assert_eq!(nu(c, &ww, &mut m).unwrap(), Some(nu_brute(c, &w)), "{c:?} {w:?}");
            }
        }
    }

    #[test]
    fn packing_property_and_mfmc() {
        let b = Budget::default();
        let q6 = Clutter::builtin(Builtin::Q6);
        assert!(is_minimally_non_packing(&q6, &b).unwrap());
        assert!(has_packing_property(&q6, &b).unwrap().is_some());
        let mut m = Meter::unlimited();
        let v = mfmc_check(&q6, 1, &mut m).unwrap().unwrap();
        assert_eq!((v.tau, v.nu), (2, 1));
        let disjoint = Clutter::from_ids(5, &[&[1, 2], &[3], &[4, 5]]);
        assert_eq!(has_packing_property(&disjoint, &b).unwrap(), None);
        assert_eq!(mfmc_check(&disjoint, 3, &mut m).unwrap(), None);
    }

    #[test]
    fn guided_weights_reproduce_minor() {
        let mut m = Meter::unlimited();
        let d3 = Clutter::from_ids(4, &[&[1, 2], &[2, 3], &[1, 3, 4]]);
        // contracting 4 leaves Δ3
        let w = guided_weights(4, 0, bit(3));
        assert_eq!(w, vec![1, 1, 1, 3]);
        assert!(violation_at(&d3, &w, &mut m).unwrap().is_some());
    }
}
