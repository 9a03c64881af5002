//! Self-contained certificates for verdicts, and an independent checker that
//! re-validates them from the embedded space.

use serde::{Deserialize, Serialize};

use super::VerifyError;
use crate::bits::{self, Mask};
use crate::budget::Budget;
use crate::clutter::{mult, Builtin, Clutter, Label, MinorEmbedding, MinorSpec};
use crate::matroid::matroid_of;
use crate::polyhedral::{
    check_fractional_point, format_rational, has_packing_property, is_ideal, max_packing, mfmc_check, min_cover,
    parse_rational, IdealnessCertificate, Rational, Weight,
};
use crate::vspace::{Point, Subspace, SubspaceSpec, SunflowerWitness};

/// Largest ground set on which cover weights are checked by listing subsets.
const BRUTE_COVER_LIMIT: usize = 22;

/// One factor of a product decomposition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorCertificate {
    pub coords: Vec<usize>,
    /// Basis of the factor on `coords`, in that order.
    pub basis: Vec<Point>,
    /// Required when the factor has dimension at least 2.
    pub sunflower: Option<SunflowerWitness>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum Claim {
    /// `Q(mult(S))` has only integral extreme points (this many).
    Integral { extreme_points: usize },
    /// A fractional extreme point of `Q(mult(S))` with its tight rows and bounds.
    FractionalPoint {
        point: Vec<(Label, String)>,
        tight_members: Vec<Vec<Label>>,
        tight_bounds: Vec<Label>,
    },
    DisjointSupportBasis { basis: Vec<Point> },
    /// Two distinct circuits of the matroid that share an element.
    IntersectingCircuits { circuits: Vec<Vec<usize>> },
    /// `S` is the product of these factors, each of dimension at most 1 or
    /// with a sunflower basis.
    SunflowerProduct { factors: Vec<FactorCertificate> },
    /// The factor of `S` on `coords` has dimension at least 2 and no sunflower basis.
    NoSunflowerFactor { coords: Vec<usize> },
    MinorEmbedding { target: Builtin, embedding: MinorEmbedding },
    MinorChain { target: Builtin, chain: Vec<MinorSpec> },
    /// `mult(S)` has none of these minors.
    NoMinor { targets: Vec<Builtin> },
    /// At these weights `τ > ν`.
    MfmcViolation { weights: Vec<u64>, tau: u64, nu: u64 },
    /// Every minor packs and no weight vector in `{0..=refuter_bound}^V` is a
    /// violation.
    PackingProperty { refuter_bound: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub space: SubspaceSpec,
    #[serde(flatten)]
    pub claim: Claim,
}

impl Certificate {
    pub fn new(s: &Subspace, claim: Claim) -> Certificate {
        Certificate { space: s.spec(), claim }
    }

    pub fn from_idealness(s: &Subspace, c: &Clutter, cert: &IdealnessCertificate) -> Certificate {
        let claim = match cert {
            IdealnessCertificate::Integral { extreme_points } => Claim::Integral {
                extreme_points: *extreme_points,
            },
            IdealnessCertificate::FractionalPoint {
                point,
                tight_members,
                tight_bounds,
            } => Claim::FractionalPoint {
                point: c.ground().iter().copied().zip(point.iter().map(format_rational)).collect(),
                tight_members: tight_members.iter().map(|&i| c.labels_of(c.members()[i])).collect(),
                tight_bounds: tight_bounds.iter().map(|&v| c.ground()[v]).collect(),
            },
        };
        Certificate::new(s, claim)
    }

    pub fn kind(&self) -> &'static str {
        match &self.claim {
            Claim::Integral { .. } => "Integral",
            Claim::FractionalPoint { .. } => "FractionalPoint",
            Claim::DisjointSupportBasis { .. } => "DisjointSupportBasis",
            Claim::IntersectingCircuits { .. } => "IntersectingCircuits",
            Claim::SunflowerProduct { .. } => "SunflowerProduct",
            Claim::NoSunflowerFactor { .. } => "NoSunflowerFactor",
            Claim::MinorEmbedding { .. } => "MinorEmbedding",
            Claim::MinorChain { .. } => "MinorChain",
            Claim::NoMinor { .. } => "NoMinor",
            Claim::MfmcViolation { .. } => "MfmcViolation",
            Claim::PackingProperty { .. } => "PackingProperty",
        }
    }

    /// One-line description for tables and terminal output.
    pub fn summary(&self) -> String {
        match &self.claim {
            Claim::Integral { extreme_points } => format!("{extreme_points} extreme points, all integral"),
            Claim::FractionalPoint { point, .. } => {
                let vals: Vec<&str> = point.iter().map(|(_, v)| v.as_str()).collect();
                format!("fractional extreme point ({})", vals.join(","))
            }
            Claim::DisjointSupportBasis { basis } => format!("disjoint-support basis of {} vectors", basis.len()),
            Claim::IntersectingCircuits { circuits } => format!("circuits {:?} and {:?} intersect", circuits[0], circuits[1]),
            Claim::SunflowerProduct { factors } => format!("product of {} factors", factors.len()),
            Claim::NoSunflowerFactor { coords } => format!("factor on {coords:?} has no sunflower basis"),
            Claim::MinorEmbedding { target, embedding } => format!("{} minor: {}", target.name(), embedding.spec),
            Claim::MinorChain { target, chain } => format!("{} minor by a {}-step chain", target.name(), chain.len()),
            Claim::NoMinor { targets } => {
                let names: Vec<&str> = targets.iter().map(|t| t.name()).collect();
                format!("no {} minor", names.join("/"))
            }
            Claim::MfmcViolation { weights, tau, nu } => format!("tau={tau} > nu={nu} at w={weights:?}"),
            Claim::PackingProperty { refuter_bound } => {
                format!("every minor packs; no violation with weights <= {refuter_bound}")
            }
        }
    }
}

fn labels_to_mask(c: &Clutter, labels: &[Label]) -> Option<Mask> {
    c.mask_of(labels).ok()
}

fn brute_tau(c: &Clutter, w: &[u64]) -> u64 {
    let n = c.ground_size();
    (0..1u64 << n)
        .filter(|&x| c.members().iter().all(|&m| m & x != 0))
        .map(|x| bits::elements(x).iter().map(|&v| w[v]).sum::<u64>())
        .min()
        .unwrap_or(u64::MAX)
}

fn find_minor_checked(c: &Clutter, target: Builtin, budget: &Budget) -> Result<bool, VerifyError> {
    Ok(c.find_minor(&Clutter::builtin(target), &mut budget.meter())?.is_some())
}

/// Re-validates a certificate from its embedded space, without trusting the
/// search that produced it. Negative claims (no minor, no sunflower basis,
/// packing property, integrality) are recomputed.
pub fn check_certificate(cert: &Certificate, budget: &Budget) -> Result<bool, VerifyError> {
    let s = cert.space.build()?;
    Ok(match &cert.claim {
        Claim::Integral { extreme_points } => match is_ideal(&mult(&s)?, budget)? {
            IdealnessCertificate::Integral { extreme_points: k } => k == *extreme_points,
            IdealnessCertificate::FractionalPoint { .. } => false,
        },
        Claim::FractionalPoint {
            point,
            tight_members,
            tight_bounds,
        } => {
            let c = mult(&s)?;
            let mut x: Vec<Rational> = vec![Rational::from_integer(0.into()); c.ground_size()];
            let mut seen = vec![false; c.ground_size()];
            for (l, v) in point {
                let (Some(i), Some(r)) = (c.index_of(l), parse_rational(v)) else {
                    return Ok(false);
                };
                x[i] = r;
                seen[i] = true;
            }
            if seen.contains(&false) {
                return Ok(false);
            }
            let mut rows = Vec::new();
            for m in tight_members {
                let Some(mask) = labels_to_mask(&c, m) else {
                    return Ok(false);
                };
                let Some(i) = c.members().iter().position(|&x| x == mask) else {
                    return Ok(false);
                };
                rows.push(i);
            }
            let mut bounds = Vec::new();
            for l in tight_bounds {
                let Some(i) = c.index_of(l) else {
                    return Ok(false);
                };
                bounds.push(i);
            }
            check_fractional_point(&c, &x, &rows, &bounds)
        }
        Claim::DisjointSupportBasis { basis } => {
            let supports: Vec<Mask> = basis
                .iter()
                .map(|v| v.iter().enumerate().fold(0, |m, (i, &x)| if x != 0 { m | bits::bit(i) } else { m }))
                .collect();
            let disjoint = supports
                .iter()
                .enumerate()
                .all(|(i, &a)| a != 0 && supports[i + 1..].iter().all(|&b| a & b == 0));
            disjoint
                && basis.len() == s.dim()
                && basis.iter().all(|v| s.contains(v))
                && Subspace::span(s.field(), s.n(), basis)? == s
        }
        Claim::IntersectingCircuits { circuits } => {
            let is_circuit = |c: &Vec<usize>| !c.is_empty() && c.iter().all(|&i| i < s.n()) && s.circuit_vector(c).is_some();
            circuits.len() == 2
                && circuits[0] != circuits[1]
                && circuits.iter().all(is_circuit)
                && circuits[0].iter().any(|e| circuits[1].contains(e))
        }
        Claim::SunflowerProduct { factors } => {
            let mut all: Vec<usize> = factors.iter().flat_map(|f| f.coords.iter().copied()).collect();
            all.sort_unstable();
            if all != (0..s.n()).collect::<Vec<_>>() {
                return Ok(false);
            }
            let mut parts = Vec::new();
            for fc in factors {
                let sub = Subspace::span(s.field(), fc.coords.len(), &fc.basis)?;
                if sub.dim() != fc.basis.len() {
                    return Ok(false);
                }
                if sub.dim() >= 2 && !fc.sunflower.as_ref().is_some_and(|w| w.is_valid_for(&sub)) {
                    return Ok(false);
                }
                parts.push((fc.coords.clone(), sub));
            }
            Subspace::from_factors(s.field(), s.n(), &parts)? == s
        }
        Claim::NoSunflowerFactor { coords } => {
            let comps = matroid_of(&s)?.components();
            let mut sorted = coords.clone();
            sorted.sort_unstable();
            if !comps.contains(&sorted) {
                return Ok(false);
            }
            let sub = s.project_onto(&sorted)?;
            sub.dim() >= 2 && sub.sunflower_basis()?.is_none()
        }
        Claim::MinorEmbedding { target, embedding } => {
            mult(&s)?.check_embedding(&Clutter::builtin(*target), embedding)?
        }
        Claim::MinorChain { target, chain } => {
            let m = mult(&s)?.minor_chain(chain)?;
            m.is_isomorphic(&Clutter::builtin(*target))?.is_some()
        }
        Claim::NoMinor { targets } => {
            let c = mult(&s)?;
            for &t in targets {
                if find_minor_checked(&c, t, budget)? {
                    return Ok(false);
                }
            }
            true
        }
        Claim::MfmcViolation { weights, tau, nu } => {
            let c = mult(&s)?;
            if weights.len() != c.ground_size() || tau <= nu {
                return Ok(false);
            }
            let t = if c.ground_size() <= BRUTE_COVER_LIMIT {
                brute_tau(&c, weights)
            } else {
                let w: Vec<Weight> = weights.iter().map(|&x| Weight::Finite(x)).collect();
                match min_cover(&c, &w, &mut budget.meter())? {
                    Some((t, _)) => t,
                    None => return Ok(false),
                }
            };
            let w: Vec<Weight> = weights.iter().map(|&x| Weight::Finite(x)).collect();
            let Some(p) = max_packing(&c, &w, &mut budget.meter())? else {
                return Ok(false);
            };
            // the packing must respect the weights
            let load_ok = (0..c.ground_size()).all(|v| {
                c.members()
                    .iter()
                    .zip(&p.multiplicities)
                    .filter(|(&m, _)| m & bits::bit(v) != 0)
                    .map(|(_, &k)| k)
                    .sum::<u64>()
                    <= weights[v]
            });
            t == *tau && p.value == *nu && load_ok
        }
        Claim::PackingProperty { refuter_bound } => {
            let c = mult(&s)?;
            has_packing_property(&c, budget)?.is_none() && mfmc_check(&c, *refuter_bound, &mut budget.meter())?.is_none()
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sp(q: u32, n: usize, rows: &[&[u8]]) -> Subspace {
        let rows: Vec<Point> = rows.iter().map(|r| r.to_vec()).collect();
        Subspace::from_rows(q, n, &rows).unwrap()
    }

    fn round_trip(c: &Certificate) -> Certificate {
        let text = serde_json::to_string(c).unwrap();
        serde_json::from_str(&text).unwrap()
    }

    #[test]
    fn fractional_point_round_trip() {
        let s = sp(3, 3, &[&[1, 1, 0], &[1, 0, 1]]);
        let c = mult(&s).unwrap();
        let ideal = is_ideal(&c, &Budget::default()).unwrap();
        let cert = Certificate::from_idealness(&s, &c, &ideal);
        assert_eq!(cert.kind(), "FractionalPoint");
        let back = round_trip(&cert);
        assert!(check_certificate(&back, &Budget::default()).unwrap());
        let mut forged = back.clone();
        if let Claim::FractionalPoint { point, .. } = &mut forged.claim {
            point[0].1 = "1".into();
        }
        assert!(!check_certificate(&forged, &Budget::default()).unwrap());
    }

    #[test]
    fn structural_claims() {
        let s = sp(3, 4, &[&[1, 1, 0, 0], &[0, 0, 1, 2]]);
        let b = s.disjoint_support_basis().unwrap().unwrap();
        let good = Certificate::new(&s, Claim::DisjointSupportBasis { basis: b });
        assert!(check_certificate(&round_trip(&good), &Budget::default()).unwrap());
        let bad = Certificate::new(&s, Claim::IntersectingCircuits { circuits: vec![vec![0, 1], vec![1, 2]] });
        assert!(!check_certificate(&bad, &Budget::default()).unwrap());
        let a3 = sp(3, 3, &[&[1, 1, 0], &[1, 0, 1]]);
        let ok = Certificate::new(&a3, Claim::IntersectingCircuits { circuits: vec![vec![0, 1], vec![1, 2]] });
        assert!(check_certificate(&ok, &Budget::default()).unwrap());
    }

    #[test]
    fn violation_claim() {
        let r11 = sp(2, 3, &[&[0, 1, 1], &[1, 0, 1]]);
        let cert = Certificate::new(
            &r11,
            Claim::MfmcViolation {
                weights: vec![1; 6],
                tau: 2,
                nu: 1,
            },
        );
        assert!(check_certificate(&round_trip(&cert), &Budget::default()).unwrap());
        let wrong = Certificate::new(
            &r11,
            Claim::MfmcViolation {
                weights: vec![1; 6],
                tau: 3,
                nu: 1,
            },
        );
        assert!(!check_certificate(&wrong, &Budget::default()).unwrap());
    }
}
