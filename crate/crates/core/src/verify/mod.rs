//! Theorem checks over subspaces and constructive minor witnesses. Every
//! witness chain is replayed through the clutter module before it is returned.

mod cert;
mod local;
mod theorems;
mod witness;

use thiserror::Error;

use crate::budget::BudgetExceeded;
use crate::clutter::ClutterError;
use crate::gf::{build_field, FieldError, FieldElement};
use crate::matroid::MatroidError;
use crate::polyhedral::PolyError;
use crate::vspace::{Point, Subspace, VSpaceError};

pub use cert::{check_certificate, Certificate, Claim, FactorCertificate};
pub use local::{
    localization_profile, replication_tau2_report, series_extension_pair, ComponentProfile,
    LocalizationProfile, ReplicationReport, SeriesPairReport,
};
pub use theorems::{verify_theorem, Agreement, ConditionReport, TheoremId, TheoremReport, Verdict};
pub use witness::{
    c5sq_route, c5sq_witness, c5sq_witness_with, delta3_witness_k4e, normalize_parallel, delta3_witness_u24, relabel_parts,
    subspace_minor_spec, triple_chain, triple_condition_holds, triple_condition_probe, C5sqWitness, MinorWitness,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("theorem {theorem} does not apply to GF({q})")]
    WrongFieldClass { theorem: TheoremId, q: u32 },
    #[error("construction needs {needed}, got GF({q})")]
    WrongField { q: u32, needed: &'static str },
    #[error("wrong shape: {0}")]
    WrongShape(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("the matroid has no pair of elements in series")]
    NoSeriesPair,
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("{what} of size {size} exceeds the limit {cap}")]
    TooLarge {
        what: &'static str,
        size: u128,
        cap: u128,
    },
    #[error(transparent)]
    Budget(#[from] BudgetExceeded),
    #[error(transparent)]
    Space(#[from] VSpaceError),
    #[error(transparent)]
    Clutter(#[from] ClutterError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Matroid(#[from] MatroidError),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Default cap on the number of subspaces listed by [`enumerate_subspaces`].
pub const SUBSPACE_CAP: u128 = 1 << 20;

/// Number of subspaces of GF(q)^n (sum of Gaussian binomials).
pub fn subspace_count(q: u32, n: usize) -> u128 {
    let q = q as u128;
    let mut total = 0u128;
    for r in 0..=n {
        let (mut num, mut den) = (1u128, 1u128);
        for i in 0..r {
            num = num.saturating_mul(q.saturating_pow((n - i) as u32).saturating_sub(1));
            den = den.saturating_mul(q.saturating_pow((i + 1) as u32).saturating_sub(1));
        }
        total = total.saturating_add(num / den);
    }
    total
}

/// Every subspace of GF(q)^n exactly once, ordered by dimension and then by
/// canonical basis.
pub fn enumerate_subspaces(q: u32, n: usize, cap: u128) -> Result<Vec<Subspace>, VerifyError> {
    let field = build_field(q)?;
    let count = subspace_count(q, n);
    if count > cap {
        return Err(VerifyError::TooLarge {
            what: "subspace count",
            size: count,
            cap,
        });
    }
    let mut out = Vec::with_capacity(count as usize);
    for r in 0..=n {
        for pmask in crate::bits::k_subsets(n, r) {
            let pivots = crate::bits::elements(pmask);
            // free cells: right of a row's pivot, outside pivot columns
            let free: Vec<(usize, usize)> = pivots
                .iter()
                .enumerate()
                .flat_map(|(row, &p)| {
                    (p + 1..n)
                        .filter(|c| !pivots.contains(c))
                        .map(move |c| (row, c))
                })
                .collect();
            let mut vals = vec![0 as FieldElement; free.len()];
            loop {
                let mut rows: Vec<Point> = vec![vec![0; n]; r];
                for (row, &p) in pivots.iter().enumerate() {
                    rows[row][p] = 1;
                }
                for (&(row, c), &v) in free.iter().zip(&vals) {
                    rows[row][c] = v;
                }
                out.push(Subspace::from_rref(&field, n, rows));
                let Some(i) = vals.iter().position(|&v| (v as u32) + 1 < q) else {
                    break;
                };
                vals[i] += 1;
                for v in &mut vals[..i] {
                    *v = 0;
                }
            }
        }
    }
    out.sort_by(|a, b| (a.dim(), a.basis()).cmp(&(b.dim(), b.basis())));
    debug_assert_eq!(out.len() as u128, count);
    Ok(out)
}
