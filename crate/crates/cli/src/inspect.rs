use std::path::PathBuf;

use clap::{Args, ValueEnum};
use serde_json::json;

use clutterforge::clutter::{localization, mult};
use clutterforge::matroid::{matroid_of, MatroidTarget};
use clutterforge::polyhedral::{is_ideal, PolyError};
use clutterforge::verify::{localization_profile, VerifyError};
use clutterforge::vspace::{format_point, Point};

use crate::{load_space, parse_point, Ctx, Outcome, PointArg};

#[derive(Args)]
pub struct LocalizeArgs {
    file: PathBuf,
    /// The point whose coordinates are contracted, e.g. `1,0,0`.
    #[arg(long, value_parser = parse_point, required_unless_present = "all")]
    alpha: Option<PointArg>,
    /// Compare idealness of mult(S) with idealness of all q^n localizations.
    #[arg(long, conflicts_with = "alpha")]
    all: bool,
}

#[derive(Args)]
pub struct MatroidArgs {
    file: PathBuf,
    /// Search for a minor isomorphic to this matroid.
    #[arg(long, value_enum)]
    minor: Option<Target>,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum Target {
    U24,
    Mk4e,
    A3,
    Mk4,
}

impl From<Target> for MatroidTarget {
    fn from(t: Target) -> Self {
        match t {
            Target::U24 => MatroidTarget::U24,
            Target::Mk4e => MatroidTarget::MK4e,
            Target::A3 => MatroidTarget::A3,
            Target::Mk4 => MatroidTarget::MK4,
        }
    }
}

fn every_point(q: u32, n: usize) -> Vec<Point> {
    let mut out: Vec<Point> = vec![Vec::new()];
    for _ in 0..n {
        out = out.into_iter().flat_map(|p| (0..q as u8).map(move |x| [p.clone(), vec![x]].concat())).collect();
    }
    out
}

pub fn localize(ctx: &Ctx, args: &LocalizeArgs) -> Result<Outcome, String> {
    let s = load_space(&args.file)?;
    if args.all {
        return localize_all(ctx, &s);
    }
    let alpha = args.alpha.clone().expect("required unless --all").0;
    let c = localization(&s, &alpha).map_err(|e| e.to_string())?;
    let mut text = format!("{s}\nlocal(S, {}): {} members on {} elements\n", format_point(&alpha), c.len(), c.ground_size());
    for m in c.member_labels() {
        let labels: Vec<String> = m.iter().map(|l| l.to_string()).collect();
        text.push_str(&format!("  {}\n", labels.join(" ")));
    }
    let profile = match localization_profile(&s, &alpha) {
        Ok(p) => {
            text.push_str(&format!(
                "sigma = {}, singletons: {}, components of size-2 members: {}, larger members: {}\n",
                p.sigma,
                p.singletons.len(),
                p.components.len(),
                p.residual.len()
            ));
            Some(p)
        }
        Err(VerifyError::PreconditionViolated(_)) | Err(VerifyError::WrongShape(_)) => None,
        Err(e) => return Err(e.to_string()),
    };
    ctx.emit(
        &text,
        json!({ "space": s.spec(), "alpha": alpha, "members": c.member_labels(), "profile": profile }),
    );
    Ok(Outcome::Done)
}

fn localize_all(ctx: &Ctx, s: &clutterforge::vspace::Subspace) -> Result<Outcome, String> {
    let decide = |c: &clutterforge::clutter::Clutter| match is_ideal(c, &ctx.budget) {
        Ok(cert) => Ok(Some(cert.is_integral())),
        Err(PolyError::TooLarge { .. } | PolyError::Budget(_)) => Ok(None),
        Err(e) => Err(e.to_string()),
    };
    let whole = decide(&mult(s).map_err(|e| e.to_string())?)?;
    let (mut ideal, mut non_ideal, mut unknown) = (0, 0, 0);
    for v in every_point(s.q(), s.n()) {
        match decide(&localization(s, &v).map_err(|e| e.to_string())?)? {
            Some(true) => ideal += 1,
            Some(false) => non_ideal += 1,
            None => unknown += 1,
        }
    }
    let verdict = |v: Option<bool>| match v {
        Some(true) => "ideal",
        Some(false) => "not ideal",
        None => "UNKNOWN",
    };
    let local_all = if unknown > 0 { None } else { Some(non_ideal == 0) };
    let outcome = match (whole, local_all) {
        (Some(a), Some(b)) if a != b => Outcome::Disagree,
        (Some(_), Some(_)) => Outcome::Done,
        _ => Outcome::Unknown,
    };
    let text = format!(
        "{s}\nmult(S): {}\nlocalizations: {ideal} ideal, {non_ideal} not ideal, {unknown} unknown\n",
        verdict(whole)
    );
    ctx.emit(
        &text,
        json!({ "space": s.spec(), "ideal": whole, "local_ideal": ideal, "local_non_ideal": non_ideal, "local_unknown": unknown }),
    );
    Ok(outcome)
}

pub fn matroid(ctx: &Ctx, args: &MatroidArgs) -> Result<Outcome, String> {
    let s = load_space(&args.file)?;
    let m = matroid_of(&s).map_err(|e| e.to_string())?;
    let report = m.classify();
    let mut text = format!("{s}\nrank {} on {} elements (coordinates numbered from 0)\ncircuits:\n", m.rank(), m.size());
    for c in m.circuit_lists() {
        text.push_str(&format!("  {c:?}\n"));
    }
    text.push_str(&format!("series classes: {:?}\n", m.series_classes()));
    for comp in &report.components {
        text.push_str(&format!("component {:?}: {:?}\n", comp.elements, comp.kind));
    }
    let mut outcome = Outcome::Done;
    let mut found = None;
    if let Some(t) = args.minor {
        let target = MatroidTarget::from(t);
        match m.has_minor(target, &mut ctx.budget.meter()) {
            Ok(Some(minor)) => {
                text.push_str(&format!(
                    "{} minor: delete {:?}, contract {:?}, element i plays {:?}[i]\n",
                    target.name(),
                    minor.delete,
                    minor.contract,
                    minor.map
                ));
                found = Some(json!(minor));
            }
            Ok(None) => {
                text.push_str(&format!("{} minor: none\n", target.name()));
                found = Some(serde_json::Value::Null);
            }
            Err(e) => {
                text.push_str(&format!("{} minor: UNKNOWN ({e})\n", target.name()));
                outcome = Outcome::Unknown;
            }
        }
    }
    ctx.emit(
        &text,
        json!({
            "space": s.spec(), "rank": m.rank(), "circuits": m.circuit_lists(),
            "series_classes": m.series_classes(), "structure": report, "minor": found,
        }),
    );
    Ok(outcome)
}
