//! Localizations of `A_n` spaces in characteristic 2, series reductions, and
//! the replication / covering-number-two checks.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::witness::normalize_parallel;
use super::VerifyError;
use crate::bits;
use crate::budget::Budget;
use crate::clutter::{localization, mult, Builtin, Clutter, Label, MinorSpec};
use crate::gf::FieldElement;
use crate::matroid::matroid_of;
use crate::polyhedral::{has_packing_property, is_ideal, is_minimally_non_packing, tau, unit_weights, PolyError};
use crate::vspace::{Point, Subspace};

/// One component of the graph of size-2 members. Values are normalised.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentProfile {
    /// `β_i` for each part; the component holds `β_i` and `β_i + σ`.
    pub beta: Vec<FieldElement>,
    pub vertices: Vec<(usize, FieldElement)>,
    pub edges: Vec<((usize, FieldElement), (usize, FieldElement))>,
}

/// Members of `local(S, α)` by size. Values are in the coordinates of
/// `{Σx = 0}`: element `(i, v)` of `mult(S)` appears as `(i, scale[i]·v)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalizationProfile {
    pub scale: Vec<FieldElement>,
    /// `α` in the coordinates of `S`.
    pub alpha: Point,
    /// `α` normalised.
    pub alpha_normalized: Point,
    pub sigma: FieldElement,
    pub singletons: Vec<(usize, FieldElement)>,
    pub components: Vec<ComponentProfile>,
    /// Members of size at least 3.
    pub residual: Vec<Vec<(usize, FieldElement)>>,
}

/// Builds the profile of `local(S, α)` and checks it against the predicted
/// shape: singletons `{α_i + σ}`, and `q/2 - 1` components of size-2 members,
/// each a complete bipartite graph minus a perfect matching on
/// `{β_i} ∪ {β_i + σ}` with `β_i = β_1 + α_1 + α_i`.
pub fn localization_profile(s: &Subspace, alpha: &Point) -> Result<LocalizationProfile, VerifyError> {
    let f = s.field().clone();
    if !f.is_char2() {
        return Err(VerifyError::PreconditionViolated(format!(
            "localization structure needs characteristic 2, got GF({})",
            s.q()
        )));
    }
    let scale = normalize_parallel(s).map_err(|e| match e {
        VerifyError::WrongShape(m) => VerifyError::PreconditionViolated(m),
        other => other,
    })?;
    let n = s.n();
    if alpha.len() != n || alpha.iter().any(|&x| x as u32 >= s.q()) {
        return Err(VerifyError::PreconditionViolated("alpha is not a vector of GF(q)^n".into()));
    }
    let at: Point = alpha.iter().zip(&scale).map(|(&x, &g)| f.mul(g, x)).collect();
    let sigma = at.iter().fold(0, |acc, &x| f.add(acc, x));
    if sigma == 0 {
        return Err(VerifyError::PreconditionViolated("alpha lies in S (σ = 0)".into()));
    }
    let local = localization(s, alpha)?;
    let norm = |l: &Label| -> (usize, FieldElement) {
        match *l {
            Label::Cell { part, value } => (part as usize, f.mul(scale[part as usize], value)),
            Label::Id(_) => unreachable!("mult labels are cells"),
        }
    };
    let members: Vec<Vec<(usize, FieldElement)>> = local
        .members()
        .iter()
        .map(|&m| local.labels_of(m).iter().map(norm).collect())
        .collect();
    let fail = |m: String| Err(VerifyError::Verification(m));

    // every member meets each part at most once and sums to σ + Σ_{touched} α_i
    for m in &members {
        let parts: BTreeSet<usize> = m.iter().map(|e| e.0).collect();
        let lhs = m.iter().fold(0, |acc, e| f.add(acc, e.1));
        let rhs = parts.iter().fold(sigma, |acc, &i| f.add(acc, at[i]));
        if parts.len() != m.len() || lhs != rhs {
            return fail(format!("member {m:?} violates the sum condition"));
        }
    }

    let mut singletons: Vec<(usize, FieldElement)> = members.iter().filter(|m| m.len() == 1).map(|m| m[0]).collect();
    singletons.sort_unstable();
    let expected: Vec<(usize, FieldElement)> = (0..n).map(|i| (i, f.add(at[i], sigma))).collect();
    if singletons != expected {
        return fail(format!("size-1 members {singletons:?}, expected {expected:?}"));
    }

    let edges: Vec<((usize, FieldElement), (usize, FieldElement))> = members
        .iter()
        .filter(|m| m.len() == 2)
        .map(|m| (m[0].min(m[1]), m[0].max(m[1])))
        .collect();
    // components by union-find over the edge endpoints
    let mut parent: BTreeMap<(usize, FieldElement), (usize, FieldElement)> = BTreeMap::new();
    fn find(
        p: &mut BTreeMap<(usize, FieldElement), (usize, FieldElement)>,
        x: (usize, FieldElement),
    ) -> (usize, FieldElement) {
        let mut r = x;
        while p[&r] != r {
            r = p[&r];
        }
        p.insert(x, r);
        r
    }
    for &(u, v) in &edges {
        parent.entry(u).or_insert(u);
        parent.entry(v).or_insert(v);
        let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
        if ru != rv {
            parent.insert(ru.max(rv), ru.min(rv));
        }
    }
    let verts: Vec<(usize, FieldElement)> = parent.keys().copied().collect();
    let mut groups: BTreeMap<(usize, FieldElement), Vec<(usize, FieldElement)>> = BTreeMap::new();
    for v in verts {
        let r = find(&mut parent, v);
        groups.entry(r).or_default().push(v);
    }
    let want = (s.q() / 2 - 1) as usize;
    if groups.len() != want {
        return fail(format!("{} components of size-2 members, expected {want}", groups.len()));
    }
    let mut components = Vec::new();
    for (_, mut vertices) in groups {
        vertices.sort_unstable();
        let first: Vec<FieldElement> = vertices.iter().filter(|v| v.0 == 0).map(|v| v.1).collect();
        if first.len() != 2 || f.add(first[0], first[1]) != sigma {
            return fail(format!("component {vertices:?} does not meet part 0 in a σ-pair"));
        }
        let beta: Vec<FieldElement> = (0..n).map(|i| f.add(f.add(first[0], at[0]), at[i])).collect();
        let mut want_v: Vec<(usize, FieldElement)> = (0..n)
            .flat_map(|i| [(i, beta[i]), (i, f.add(beta[i], sigma))])
            .collect();
        want_v.sort_unstable();
        if vertices != want_v {
            return fail(format!("component vertices {vertices:?}, expected {want_v:?}"));
        }
        if (0..n).any(|i| {
            let pair = [beta[i], f.add(beta[i], sigma)];
            pair.contains(&at[i]) || pair.contains(&f.add(at[i], sigma))
        }) {
            return fail(format!("component {vertices:?} meets some α_i or α_i + σ"));
        }
        let mut comp_edges: Vec<_> = edges
            .iter()
            .filter(|(u, _)| vertices.binary_search(u).is_ok())
            .copied()
            .collect();
        comp_edges.sort_unstable();
        let mut want_e: Vec<_> = (0..n)
            .flat_map(|i| (0..n).filter(move |&k| k != i).map(move |k| (i, k)))
            .map(|(i, k)| {
                let u = (i, beta[i]);
                let v = (k, f.add(beta[k], sigma));
                (u.min(v), u.max(v))
            })
            .collect();
        want_e.sort_unstable();
        if comp_edges != want_e {
            return fail(format!("component edges {comp_edges:?}, expected {want_e:?}"));
        }
        components.push(ComponentProfile {
            beta,
            vertices,
            edges: comp_edges,
        });
    }
    let mut residual: Vec<Vec<(usize, FieldElement)>> = members.into_iter().filter(|m| m.len() >= 3).collect();
    residual.iter_mut().for_each(|m| m.sort_unstable());
    residual.sort();
    Ok(LocalizationProfile {
        scale,
        alpha: alpha.clone(),
        alpha_normalized: at,
        sigma,
        singletons,
        components,
        residual,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesPairReport {
    /// The series class used.
    pub class: Vec<usize>,
    /// The coordinate projected away.
    pub dropped: usize,
    pub reduced: Vec<Point>,
    pub ideal: bool,
    pub reduced_ideal: bool,
}

/// Projects away one element of a series class of size at least 2 and checks
/// that `mult` of both spaces have the same idealness verdict.
pub fn series_extension_pair(s: &Subspace, budget: &Budget) -> Result<SeriesPairReport, VerifyError> {
    let m = matroid_of(s)?;
    let in_circuit = m.circuits().iter().fold(0, |acc, &c| acc | c);
    let class = m
        .series_classes()
        .into_iter()
        .find(|c| c.len() >= 2 && in_circuit & bits::bit(c[0]) != 0)
        .ok_or(VerifyError::NoSeriesPair)?;
    let dropped = *class.last().expect("nonempty class");
    let reduced = s.project(&[dropped])?;
    let ideal = is_ideal(&mult(s)?, budget)?.is_integral();
    let reduced_ideal = is_ideal(&mult(&reduced)?, budget)?.is_integral();
    if ideal != reduced_ideal {
        return Err(VerifyError::Verification(format!(
            "dropping series element {dropped} changes idealness ({ideal} vs {reduced_ideal})"
        )));
    }
    Ok(SeriesPairReport {
        class,
        dropped,
        reduced: reduced.basis().to_vec(),
        ideal,
        reduced_ideal,
    })
}

/// Outcome of the replication and covering-number-two checks. `None` fields
/// were not applicable or out of reach.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReplicationReport {
    pub packing_property: Option<bool>,
    /// A minor that does not pack, when the packing property fails.
    pub non_packing_minor: Option<MinorSpec>,
    /// Whether the space has a basis of disjoint supports.
    pub disjoint_support_basis: bool,
    pub ideal: Option<bool>,
    pub minimally_non_packing: Option<bool>,
    pub tau: Option<u64>,
    pub isomorphic_to_q6: Option<bool>,
}

fn reachable<T>(r: Result<T, PolyError>) -> Result<Option<T>, VerifyError> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(PolyError::TooLarge { .. }) | Err(PolyError::Budget(_)) => Ok(None),
        Err(e) => Err(e.into()),
    }
}

/// Packing property implies a disjoint-support basis; an ideal minimally
/// non-packing `mult(S)` has covering number 2 and is `Q6`.
pub fn replication_tau2_report(s: &Subspace, budget: &Budget) -> Result<ReplicationReport, VerifyError> {
    let c = mult(s)?;
    let disjoint = s.disjoint_support_basis()?.is_some();
    let sweep = reachable(has_packing_property(&c, budget))?;
    let packing_property = sweep.as_ref().map(|m| m.is_none());
    if packing_property == Some(true) && !disjoint {
        return Err(VerifyError::Verification(
            "packing property holds but the space has no disjoint-support basis".into(),
        ));
    }
    let ideal = reachable(is_ideal(&c, budget))?.map(|cert| cert.is_integral());
    let mnp = if packing_property == Some(true) {
        Some(false)
    } else {
        reachable(is_minimally_non_packing(&c, budget))?
    };
    let mut report = ReplicationReport {
        packing_property,
        non_packing_minor: sweep.flatten(),
        disjoint_support_basis: disjoint,
        ideal,
        minimally_non_packing: mnp,
        tau: None,
        isomorphic_to_q6: None,
    };
    if ideal == Some(true) && mnp == Some(true) {
        let t = tau(&c, &unit_weights(c.ground_size()), &mut budget.meter())?;
        let iso = c.is_isomorphic(&Clutter::builtin(Builtin::Q6))?.is_some();
        report.tau = t;
        report.isomorphic_to_q6 = Some(iso);
        if t != Some(2) || !iso {
            return Err(VerifyError::Verification(format!(
                "ideal minimally non-packing clutter with τ = {t:?}, Q6 = {iso}"
            )));
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::build_field;

    fn sp(q: u32, n: usize, rows: &[&[u8]]) -> Subspace {
        let rows: Vec<Point> = rows.iter().map(|r| r.to_vec()).collect();
        Subspace::from_rows(q, n, &rows).unwrap()
    }

    #[test]
    fn profile_gf4_is_one_six_cycle() {
        let s = Subspace::zero_sum(&build_field(4).unwrap(), 3);
        let p = localization_profile(&s, &vec![1, 0, 0]).unwrap();
        assert_eq!(p.singletons.len(), 3);
        assert_eq!(p.components.len(), 1);
        assert_eq!(p.components[0].edges.len(), 6);
        assert!(p.residual.is_empty());
    }

    #[test]
    fn profile_gf8_has_three_components() {
        let s = Subspace::zero_sum(&build_field(8).unwrap(), 3);
        let p = localization_profile(&s, &vec![1, 2, 4]).unwrap();
        assert_eq!(p.components.len(), 3);
        assert!(p.components.iter().all(|c| c.vertices.len() == 6 && c.edges.len() == 6));
        assert!(matches!(
            localization_profile(&s, &vec![1, 1, 0]),
            Err(VerifyError::PreconditionViolated(_))
        ));
    }

    #[test]
    fn series_pairs() {
        // subdivided A_3 over GF(4): coordinates 0 and 1 in series
        let s = sp(4, 4, &[&[1, 1, 1, 0], &[1, 1, 0, 1]]);
        let r = series_extension_pair(&s, &Budget::default()).unwrap();
        assert!(r.ideal && r.reduced_ideal);
        let t = sp(3, 4, &[&[1, 1, 1, 0], &[1, 1, 0, 1]]);
        let r = series_extension_pair(&t, &Budget::default()).unwrap();
        assert!(!r.ideal && !r.reduced_ideal);
        let u = sp(3, 2, &[&[1, 1]]);
        assert!(series_extension_pair(&u, &Budget::default()).unwrap().ideal);
        let a3 = sp(3, 3, &[&[1, 1, 0], &[1, 0, 1]]);
        assert_eq!(series_extension_pair(&a3, &Budget::default()), Err(VerifyError::NoSeriesPair));
    }

    #[test]
    fn replication_on_r11() {
        let s = sp(2, 3, &[&[0, 1, 1], &[1, 0, 1]]);
        let r = replication_tau2_report(&s, &Budget::default()).unwrap();
        assert_eq!(r.ideal, Some(true));
        assert_eq!(r.minimally_non_packing, Some(true));
        assert_eq!(r.tau, Some(2));
        assert_eq!(r.isomorphic_to_q6, Some(true));
        let d = sp(3, 3, &[&[1, 1, 0]]);
        let r = replication_tau2_report(&d, &Budget::default()).unwrap();
        assert_eq!(r.packing_property, Some(true));
        assert!(r.disjoint_support_basis);
    }
}
