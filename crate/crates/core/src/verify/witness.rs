//! Minor witnesses built by following explicit point constructions. Each chain
//! is replayed on `mult(S)` and compared with the target before it is returned.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::VerifyError;
use crate::budget::Meter;
use crate::clutter::{mult, mult_set_system, restriction_spec, Builtin, Clutter, Label, MinorSpec};
use crate::gf::{FieldElement, FieldSpec};
use crate::matroid::{matroid_of, MatroidTarget};
use crate::vspace::{Point, Subspace};

/// A minor chain claimed to turn `mult(S)` into `target`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinorWitness {
    pub target: Builtin,
    pub chain: Vec<MinorSpec>,
}

impl MinorWitness {
    /// Replays the chain on `c` and checks the result against the target.
    pub fn replay(&self, c: &Clutter) -> Result<bool, VerifyError> {
        let minor = c.minor_chain(&self.chain)?;
        Ok(minor.is_isomorphic(&Clutter::builtin(self.target))?.is_some())
    }
}

fn checked(s: &Subspace, w: MinorWitness) -> Result<MinorWitness, VerifyError> {
    if !w.replay(&mult(s)?)? {
        return Err(VerifyError::Verification(format!(
            "replayed chain does not give {}",
            w.target.name()
        )));
    }
    Ok(w)
}

/// The single spec of `mult(S)` giving `mult` of `S.minor_space(delete, contract)`:
/// keep the points vanishing on `delete`, then drop the coordinates of both sets.
pub fn subspace_minor_spec(q: u32, delete: &[usize], contract: &[usize]) -> MinorSpec {
    let mut del = Vec::new();
    let mut con = Vec::new();
    for &i in delete {
        for v in 1..q as FieldElement {
            del.push(Label::cell(i, v));
        }
        con.push(Label::cell(i, 0));
    }
    for &j in contract {
        for v in 0..q as FieldElement {
            con.push(Label::cell(j, v));
        }
    }
    MinorSpec::new(del, con)
}

/// Renames part `p` to `parts[p]` in every label of the chain.
pub fn relabel_parts(chain: &[MinorSpec], parts: &[usize]) -> Vec<MinorSpec> {
    let map = |l: &Label| match *l {
        Label::Cell { part, value } => Label::cell(parts[part as usize], value),
        other => other,
    };
    chain
        .iter()
        .map(|s| MinorSpec::new(s.delete.iter().map(map).collect(), s.contract.iter().map(map).collect()))
        .collect()
}

fn check_triple(points: &[Point], a: &Point, b: &Point, c: &Point, roles: (usize, usize, usize)) -> Result<(), VerifyError> {
    let (i, j, k) = roles;
    let n = a.len();
    let bad = |m: &str| Err(VerifyError::PreconditionViolated(m.to_string()));
    if b.len() != n || c.len() != n || i >= n || j >= n || k >= n {
        return bad("points and coordinates must have matching length");
    }
    if i == j || j == k || i == k {
        return bad("coordinates i, j, k must be distinct");
    }
    if a == b || b == c || a == c {
        return bad("points a, b, c must be distinct");
    }
    if !triple_condition_holds(a, b, c, roles) {
        return bad("a_i = b_i != c_i, b_j = c_j != a_j, c_k = a_k != b_k fails");
    }
    if [a, b, c].iter().any(|p| !points.contains(p)) {
        return bad("a, b, c must be points of the set");
    }
    Ok(())
}

/// `a_i = b_i != c_i`, `b_j = c_j != a_j` and `c_k = a_k != b_k`.
pub fn triple_condition_holds(a: &[FieldElement], b: &[FieldElement], c: &[FieldElement], roles: (usize, usize, usize)) -> bool {
    let (i, j, k) = roles;
    a[i] == b[i] && b[i] != c[i] && b[j] == c[j] && c[j] != a[j] && c[k] == a[k] && a[k] != b[k]
}

/// A point `d` of `S - {a,b,c}` with every `d_l ∈ {a_l, b_l, c_l}` and at least
/// two of `d_i = c_i`, `d_j = a_j`, `d_k = b_k`. If none exists, the chain of
/// [`triple_chain`] produces `Δ3`.
pub fn triple_condition_probe(
    s: &Subspace,
    a: &Point,
    b: &Point,
    c: &Point,
    roles: (usize, usize, usize),
) -> Result<Option<Point>, VerifyError> {
    let points = s.points()?;
    check_triple(&points, a, b, c, roles)?;
    let (i, j, k) = roles;
    Ok(points.into_iter().find(|d| {
        d != a
            && d != b
            && d != c
            && (0..d.len()).all(|l| d[l] == a[l] || d[l] == b[l] || d[l] == c[l])
            && [d[i] == c[i], d[j] == a[j], d[k] == b[k]].iter().filter(|&&x| x).count() >= 2
    }))
}

/// Two steps on a clutter with the given ground: keep only the values of
/// `a, b, c`, contract them outside `i, j, k`; then contract `c_i, a_j, b_k`.
pub fn triple_chain(ground: &[Label], a: &[FieldElement], b: &[FieldElement], c: &[FieldElement], roles: (usize, usize, usize)) -> Vec<MinorSpec> {
    let (i, j, k) = roles;
    let mut used = BTreeSet::new();
    let mut contract = BTreeSet::new();
    for l in 0..a.len() {
        for p in [a, b, c] {
            used.insert(Label::cell(l, p[l]));
            if l != i && l != j && l != k {
                contract.insert(Label::cell(l, p[l]));
            }
        }
    }
    let delete: Vec<Label> = ground.iter().filter(|g| !used.contains(g)).copied().collect();
    vec![
        MinorSpec::new(delete, contract.into_iter().collect()),
        MinorSpec::contract_only(vec![Label::cell(i, c[i]), Label::cell(j, a[j]), Label::cell(k, b[k])]),
    ]
}

fn scale(f: &FieldSpec, s: FieldElement, v: &[FieldElement]) -> Point {
    v.iter().map(|&x| f.mul(s, x)).collect()
}

fn add(f: &FieldSpec, u: &[FieldElement], v: &[FieldElement]) -> Point {
    u.iter().zip(v).map(|(&x, &y)| f.add(x, y)).collect()
}

/// Inverse of a matroid isomorphism onto `target`: target element -> coordinate.
fn target_map(s: &Subspace, target: MatroidTarget) -> Result<Vec<usize>, VerifyError> {
    let m = matroid_of(s)?;
    let iso = m
        .is_isomorphic(&target.matroid())
        .ok_or_else(|| VerifyError::WrongShape(format!("matroid is not isomorphic to {}", target.name())))?;
    let mut phi = vec![0; iso.len()];
    for (coord, &t) in iso.iter().enumerate() {
        phi[t] = coord;
    }
    Ok(phi)
}

/// `Δ3` chain for a space over GF(2^k) whose matroid is `U_{2,4}`.
pub fn delta3_witness_u24(s: &Subspace) -> Result<MinorWitness, VerifyError> {
    let f = s.field().clone();
    if !f.is_char2() {
        return Err(VerifyError::WrongField { q: s.q(), needed: "characteristic 2" });
    }
    target_map(s, MatroidTarget::U24)?;
    // {0,1} is a basis of U_{2,4}, so the canonical basis has pivots 0 and 1
    let v1 = &s.basis()[0];
    let v2 = &s.basis()[1];
    let (x, z) = (v1[2], v2[2]);
    let a = scale(&f, f.neg(f.div(z, x)), v1);
    let b = v2.clone();
    let c = add(&f, &a, &b);
    let roles = (2, 1, 0);
    debug_assert!(triple_condition_holds(&a, &b, &c, roles));
    let ground = mult(s)?.ground().to_vec();
    checked(
        s,
        MinorWitness {
            target: Builtin::Delta3,
            chain: triple_chain(&ground, &a, &b, &c, roles),
        },
    )
}

/// `Δ3` chain for a space over GF(2^k), `k >= 2`, whose matroid is `M(K4/e)`:
/// restrict to a box where `a, b, c` have no fourth companion, then apply the
/// triple chain.
pub fn delta3_witness_k4e(s: &Subspace) -> Result<MinorWitness, VerifyError> {
    let f = s.field().clone();
    if !f.is_char2() || s.q() < 4 {
        return Err(VerifyError::WrongField { q: s.q(), needed: "GF(2^k) with k >= 2" });
    }
    let phi = target_map(s, MatroidTarget::MK4e)?;
    // figure labels 1..5 are target elements 0..4
    let p = |label: usize| phi[label - 1];
    let circuit = |labels: &[usize], unit: usize| -> Result<Point, VerifyError> {
        let mut support: Vec<usize> = labels.iter().map(|&l| p(l)).collect();
        support.sort_unstable();
        let v = s
            .circuit_vector(&support)
            .ok_or_else(|| VerifyError::Verification("missing circuit vector".into()))?;
        Ok(scale(&f, f.inv(v[p(unit)])?, &v))
    };
    let v1 = circuit(&[1, 4, 5], 1)?;
    let v2 = circuit(&[2, 4], 2)?;
    let v3_raw = circuit(&[3, 5], 3)?;
    let (x, y) = (v1[p(4)], v1[p(5)]);
    let z = v2[p(4)];
    let sc = f
        .nonzero()
        .find(|&sc| f.mul(sc, v3_raw[p(5)]) != z)
        .expect("q > 2 leaves a second nonzero multiple");
    let v3 = scale(&f, sc, &v3_raw);
    let (t, w) = (v3[p(3)], v3[p(5)]);
    let full: Vec<FieldElement> = f.elements().collect();
    let mut boxes = vec![full; s.n()];
    boxes[p(1)] = vec![0, z, w];
    boxes[p(2)] = vec![0, x];
    boxes[p(3)] = vec![0, f.mul(t, y)];
    let sys = s.restrict(&boxes)?;
    let a = scale(&f, z, &v1);
    let b = scale(&f, w, &v1);
    let c = add(&f, &scale(&f, x, &v2), &scale(&f, y, &v3));
    let roles = (p(3), p(5), p(4));
    if !triple_condition_holds(&a, &b, &c, roles) || !sys.dropped.is_empty() {
        return Err(VerifyError::Verification("restricted points do not have the expected shape".into()));
    }
    let restricted = mult_set_system(&sys)?;
    let mut chain = vec![restriction_spec(s.q(), &sys)];
    chain.extend(triple_chain(restricted.ground(), &a, &b, &c, roles));
    checked(s, MinorWitness { target: Builtin::Delta3, chain })
}

/// The `C5²` witness with every intermediate value, in the coordinates of the
/// normalised space `{Σx = 0}` (value `g_i·x_i` for `x ∈ S`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct C5sqWitness {
    /// Scaling taking `S` to `{Σx = 0}`.
    pub scale: Vec<FieldElement>,
    /// The contracted point, in the coordinates of `S`.
    pub alpha: Point,
    pub sigma: FieldElement,
    pub a: FieldElement,
    pub b: FieldElement,
    /// The seven kept elements, in display column order (labels of `mult(S)`).
    pub columns: Vec<Label>,
    /// Incidence matrix of the clutter before the last contraction, columns as above.
    pub display: Vec<Vec<u8>>,
    pub chain: Vec<MinorSpec>,
}

/// Scaling `g` with `{(g_i x_i) : x ∈ S} = {Σx = 0}`, for a space whose matroid
/// has every pair of coordinates as a circuit.
pub fn normalize_parallel(s: &Subspace) -> Result<Vec<FieldElement>, VerifyError> {
    let n = s.n();
    let m = matroid_of(s)?;
    let all_pairs = n >= 3
        && m.circuits().len() == n * (n - 1) / 2
        && m.circuits().iter().all(|c| c.count_ones() == 2);
    if !all_pairs {
        return Err(VerifyError::WrongShape(format!("matroid is not that of A_{n}")));
    }
    let f = s.field();
    let mut g = vec![1 as FieldElement; n];
    for (i, gi) in g.iter_mut().enumerate().skip(1) {
        let u = s.circuit_vector(&[0, i]).expect("pairs are circuits");
        let lambda = f.div(u[i], u[0]);
        *gi = f.neg(f.inv(lambda)?);
    }
    let image: Vec<Point> = s
        .basis()
        .iter()
        .map(|r| r.iter().zip(&g).map(|(&x, &gi)| f.mul(gi, x)).collect())
        .collect();
    if Subspace::span(f, n, &image)? != Subspace::zero_sum(f, n) {
        return Err(VerifyError::Verification("scaled space is not {Σx = 0}".into()));
    }
    Ok(g)
}

/// `C5²` chain for a space over GF(2^k), `k >= 3`, with matroid `M(A_3)`,
/// contracting the lexicographically smallest point outside `S`.
pub fn c5sq_witness(s: &Subspace) -> Result<C5sqWitness, VerifyError> {
    c5sq_witness_with(s, None)
}

/// As [`c5sq_witness`], contracting `alpha` (coordinates of `S`) when given.
pub fn c5sq_witness_with(s: &Subspace, alpha: Option<&Point>) -> Result<C5sqWitness, VerifyError> {
    let f = s.field().clone();
    if !f.is_char2() || s.q() <= 4 {
        return Err(VerifyError::WrongField { q: s.q(), needed: "GF(2^k) with k >= 3" });
    }
    if s.n() != 3 {
        return Err(VerifyError::WrongShape(format!("need 3 coordinates, got {}", s.n())));
    }
    let g = normalize_parallel(s)?;
    let alpha: Point = match alpha {
        Some(a) => {
            if a.len() != 3 || a.iter().any(|&x| x as u32 >= s.q()) {
                return Err(VerifyError::PreconditionViolated("alpha is not a vector of GF(q)^3".into()));
            }
            if s.contains(a) {
                return Err(VerifyError::PreconditionViolated("alpha lies in S".into()));
            }
            a.clone()
        }
        None => {
            let mut found = None;
            'outer: for x in f.elements() {
                for y in f.elements() {
                    for z in f.elements() {
                        if !s.contains(&[x, y, z]) {
                            found = Some(vec![x, y, z]);
                            break 'outer;
                        }
                    }
                }
            }
            found.expect("S is a proper subspace")
        }
    };
    let at: Point = alpha.iter().zip(&g).map(|(&x, &gi)| f.mul(gi, x)).collect();
    let sigma = f.add(f.add(at[0], at[1]), at[2]);
    debug_assert_ne!(sigma, 0);
    let a = f
        .elements()
        .find(|&v| v != at[0] && v != f.add(at[0], sigma))
        .expect("q > 2");
    let avoid = [at[0], f.add(at[0], sigma), a, f.add(a, sigma)];
    let b = f.elements().find(|v| !avoid.contains(v)).expect("q > 4");
    let sum = |xs: &[FieldElement]| xs.iter().fold(0, |acc, &x| f.add(acc, x));
    // normalised values of the kept elements
    let b11 = a;
    let b21s = sum(&[a, at[0], at[1], sigma]);
    let b31 = sum(&[a, at[0], at[2]]);
    let b11s = sum(&[a, sigma]);
    let b33s = sum(&[a, b, at[2], sigma]);
    let b22 = sum(&[b, at[0], at[1]]);
    let b22s = sum(&[b, at[0], at[1], sigma]);
    let to_s = |part: usize, v: FieldElement| Label::cell(part, f.div(v, g[part]));
    let columns = vec![
        to_s(0, b11),
        to_s(1, b21s),
        to_s(2, b31),
        to_s(0, b11s),
        to_s(2, b33s),
        to_s(1, b22),
        to_s(1, b22s),
    ];
    let contract_alpha: Vec<Label> = (0..3).map(|i| Label::cell(i, alpha[i])).collect();
    let delete: Vec<Label> = (0..3)
        .flat_map(|i| f.elements().map(move |v| Label::cell(i, v)))
        .filter(|l| !columns.contains(l) && !contract_alpha.contains(l))
        .collect();
    let chain = vec![
        MinorSpec::contract_only(contract_alpha),
        MinorSpec::delete_only(delete),
        MinorSpec::contract_only(vec![columns[5], columns[6]]),
    ];
    let whole = mult(s)?;
    let before = whole.minor_chain(&chain[..2])?;
    let expected_rows: [[u8; 7]; 5] = [
        [1, 1, 0, 0, 0, 0, 0],
        [0, 1, 1, 0, 0, 0, 0],
        [0, 0, 1, 1, 0, 0, 0],
        [0, 0, 0, 1, 1, 0, 1],
        [1, 0, 0, 0, 1, 1, 0],
    ];
    let display: Vec<Vec<u8>> = before
        .members()
        .iter()
        .map(|&m| {
            columns
                .iter()
                .map(|l| before.index_of(l).map_or(0, |i| ((m >> i) & 1) as u8))
                .collect()
        })
        .collect();
    let mut got = display.clone();
    got.sort();
    let mut want: Vec<Vec<u8>> = expected_rows.iter().map(|r| r.to_vec()).collect();
    want.sort();
    if before.ground_size() != 7 || got != want {
        return Err(VerifyError::Verification(format!(
            "intermediate clutter does not match the 5x7 display: {display:?}"
        )));
    }
    let witness = MinorWitness { target: Builtin::C5sq, chain: chain.clone() };
    if !witness.replay(&whole)? {
        return Err(VerifyError::Verification("replayed chain does not give C5sq".into()));
    }
    Ok(C5sqWitness {
        scale: g,
        alpha,
        sigma,
        a,
        b,
        columns,
        display,
        chain,
    })
}

/// A `C5²` chain for any space over GF(2^k), `k >= 3`, with two intersecting
/// circuits: an `A_3` matroid minor, the matching subspace minor, then the
/// `C5²` construction on it. `None` when all circuits are disjoint.
pub fn c5sq_route(s: &Subspace, meter: &mut Meter) -> Result<Option<MinorWitness>, VerifyError> {
    let m = matroid_of(s)?;
    if m.intersecting_circuits().is_none() {
        return Ok(None);
    }
    let found = m
        .has_minor(MatroidTarget::A3, meter)?
        .ok_or_else(|| VerifyError::Verification("intersecting circuits but no A3 matroid minor".into()))?;
    let small = s.minor_space(&found.delete, &found.contract)?;
    let kept: Vec<usize> = (0..s.n())
        .filter(|i| !found.delete.contains(i) && !found.contract.contains(i))
        .collect();
    let inner = c5sq_witness(&small)?;
    let mut chain = vec![subspace_minor_spec(s.q(), &found.delete, &found.contract)];
    chain.extend(relabel_parts(&inner.chain, &kept));
    checked(s, MinorWitness { target: Builtin::C5sq, chain }).map(Some)
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
    fn probe_on_r11() {
        let s = sp(2, 3, &[&[0, 1, 1], &[1, 0, 1]]);
        let (a, b, c) = (vec![0, 0, 0], vec![0, 1, 1], vec![1, 0, 1]);
        let d = triple_condition_probe(&s, &a, &b, &c, (0, 2, 1)).unwrap();
        assert_eq!(d, Some(vec![1, 1, 0]));
        assert!(matches!(
            triple_condition_probe(&s, &a, &b, &c, (0, 1, 2)),
            Err(VerifyError::PreconditionViolated(_))
        ));
    }

    #[test]
    fn minor_spec_matches_minor_space() {
        let s = sp(3, 4, &[&[1, 0, 1, 2], &[0, 1, 1, 1]]);
        let spec = subspace_minor_spec(3, &[1], &[3]);
        let via_clutter = mult(&s).unwrap().minor(&spec).unwrap();
        let via_space = mult(&s.minor_space(&[1], &[3]).unwrap()).unwrap();
        let relabelled = relabel_parts(&[MinorSpec::default()], &[0, 2]);
        assert_eq!(relabelled[0], MinorSpec::default());
        let mut a = via_clutter.member_labels();
        let mut b: Vec<Vec<Label>> = via_space
            .member_labels()
            .into_iter()
            .map(|m| {
                m.into_iter()
                    .map(|l| match l {
                        Label::Cell { part, value } => Label::cell([0, 2][part as usize], value),
                        o => o,
                    })
                    .collect()
            })
            .collect();
        a.iter_mut().for_each(|m| m.sort());
        b.iter_mut().for_each(|m| m.sort());
        a.sort();
        b.sort();
        assert_eq!(a, b);
    }

    #[test]
    fn u24_witness() {
        // GF(4): a = 2
        let s = sp(4, 4, &[&[1, 0, 1, 1], &[0, 1, 1, 2]]);
        let w = delta3_witness_u24(&s).unwrap();
        assert_eq!(w.chain.len(), 2);
        let a3 = Subspace::zero_sum(&build_field(4).unwrap(), 3);
        assert!(matches!(delta3_witness_u24(&a3), Err(VerifyError::WrongShape(_))));
    }

    #[test]
    fn k4e_witness() {
        // circuits {1,4,5}, {2,4}, {3,5} (1-based)
        let s = sp(4, 5, &[&[1, 0, 0, 1, 1], &[0, 1, 0, 1, 0], &[0, 0, 1, 0, 1]]);
        let w = delta3_witness_k4e(&s).unwrap();
        assert!(w.replay(&mult(&s).unwrap()).unwrap());
        let t = sp(2, 5, &[&[1, 0, 0, 1, 1], &[0, 1, 0, 1, 0], &[0, 0, 1, 0, 1]]);
        assert!(matches!(delta3_witness_k4e(&t), Err(VerifyError::WrongField { .. })));
    }

    #[test]
    fn c5sq_on_zero_sum() {
        let f8 = build_field(8).unwrap();
        let s = Subspace::zero_sum(&f8, 3);
        let w = c5sq_witness_with(&s, Some(&vec![1, 0, 0])).unwrap();
        assert_eq!(w.sigma, 1);
        assert_eq!(w.display.len(), 5);
        let f16 = build_field(16).unwrap();
        c5sq_witness(&Subspace::zero_sum(&f16, 3)).unwrap();
        let f4 = build_field(4).unwrap();
        assert!(matches!(
            c5sq_witness(&Subspace::zero_sum(&f4, 3)),
            Err(VerifyError::WrongField { .. })
        ));
    }

    #[test]
    fn c5sq_on_scaled_space() {
        // pairs are circuits but the space is not {Σx = 0} itself
        let s = sp(8, 3, &[&[1, 3, 0], &[1, 0, 5]]);
        let w = c5sq_witness(&s).unwrap();
        assert!(!s.contains(&w.alpha));
    }

    #[test]
    fn c5sq_route_through_matroid_minor() {
        let s = sp(8, 4, &[&[1, 1, 0, 0], &[1, 0, 1, 1]]);
        let mut m = Meter::unlimited();
        let w = c5sq_route(&s, &mut m).unwrap().unwrap();
        assert!(w.replay(&mult(&s).unwrap()).unwrap());
        let disjoint = sp(8, 4, &[&[1, 1, 0, 0], &[0, 0, 1, 1]]);
        assert!(c5sq_route(&disjoint, &mut m).unwrap().is_none());
    }
}
