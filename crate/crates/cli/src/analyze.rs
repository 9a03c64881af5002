use std::path::PathBuf;

use clap::Args;
use serde_json::{json, Value};

use clutterforge::budget::Budget;
use clutterforge::clutter::{mult, Builtin, Clutter, ClutterError};
use clutterforge::matroid::{matroid_of, ComponentKind};
use clutterforge::polyhedral::{guided_weights, has_packing_property, is_ideal, mfmc_check, violation_at, PolyError};
use clutterforge::verify::{verify_theorem, Agreement, Certificate, Claim, TheoremId, TheoremReport, Verdict};
use clutterforge::vspace::{format_point, Subspace};

use crate::{load_space, parse_theorem, write_certificates, Ctx, Outcome};

#[derive(Args)]
pub struct AnalyzeArgs {
    /// Subspace file: JSON `{"q","n","generators"}` or a `q n` header followed by generator rows.
    file: PathBuf,
    /// Decide idealness by vertex enumeration.
    #[arg(long)]
    ideal: bool,
    /// Look for a max-flow min-cut violation.
    #[arg(long)]
    mfmc: bool,
    /// Search for Δ3, Q6 and C5² minors.
    #[arg(long)]
    minors: bool,
    /// Matroid structure: components, disjoint supports.
    #[arg(long)]
    structure: bool,
    /// Check the conditions of a theorem (1.1, 1.2, 1.3 or 1.4).
    #[arg(long, value_parser = parse_theorem)]
    theorem: Option<TheoremId>,
    /// Write every certificate produced as a JSON array.
    #[arg(long, value_name = "FILE")]
    cert_out: Option<PathBuf>,
}

/// Text, JSON and certificates of one analysis section.
struct Section {
    text: String,
    value: Value,
    certs: Vec<Certificate>,
    outcome: Outcome,
}

pub fn run(ctx: &Ctx, args: &AnalyzeArgs) -> Result<Outcome, String> {
    let s = load_space(&args.file)?;
    let c = mult(&s).map_err(|e| e.to_string())?;
    let none = !(args.ideal || args.mfmc || args.minors || args.structure || args.theorem.is_some());
    let mut sections = Vec::new();
    if args.ideal || none {
        sections.push(("ideal", ideal(&s, &c, &ctx.budget)?));
    }
    if args.mfmc {
        sections.push(("mfmc", mfmc(&s, &c, &ctx.budget)?));
    }
    if args.minors || none {
        sections.push(("minors", minors(&s, &c, &ctx.budget)?));
    }
    if args.structure || none {
        sections.push(("structure", structure(&s)?));
    }
    if let Some(t) = args.theorem {
        let r = verify_theorem(&s, t, &ctx.budget).map_err(|e| e.to_string())?;
        sections.push(("theorem", theorem(r)));
    }

    let mut text = format!("{s}\nmult(S): {} members on {} elements\n", c.len(), c.ground_size());
    let mut value = json!({ "space": s.spec(), "members": c.len(), "elements": c.ground_size() });
    let mut certs = Vec::new();
    let mut outcome = Outcome::Done;
    for (name, sec) in sections {
        text.push_str(&sec.text);
        value[name] = sec.value;
        certs.extend(sec.certs);
        outcome = outcome.max(sec.outcome);
    }
    if let Some(path) = &args.cert_out {
        write_certificates(path, &certs)?;
    }
    value["certificates"] = json!(certs);
    ctx.emit(&text, value);
    Ok(outcome)
}

fn unknown(what: &str, reason: String) -> Section {
    Section {
        text: format!("{what}: UNKNOWN ({reason})\n"),
        value: json!({ "verdict": "UNKNOWN", "reason": reason }),
        certs: Vec::new(),
        outcome: Outcome::Unknown,
    }
}

fn ideal(s: &Subspace, c: &Clutter, budget: &Budget) -> Result<Section, String> {
    let cert = match is_ideal(c, budget) {
        Ok(cert) => cert,
        Err(e @ (PolyError::TooLarge { .. } | PolyError::Budget(_))) => return Ok(unknown("idealness", e.to_string())),
        Err(e) => return Err(e.to_string()),
    };
    let cert = Certificate::from_idealness(s, c, &cert);
    let verdict = if matches!(cert.claim, Claim::Integral { .. }) { "IDEAL" } else { "NOT IDEAL" };
    Ok(Section {
        text: format!("{verdict} ({})\n", cert.summary()),
        value: json!({ "verdict": verdict, "summary": cert.summary() }),
        certs: vec![cert],
        outcome: Outcome::Done,
    })
}

fn mfmc(s: &Subspace, c: &Clutter, budget: &Budget) -> Result<Section, String> {
    let bound = if c.ground_size() <= 8 { 2 } else { 1 };
    let mut meter = budget.meter();
    let found = match mfmc_check(c, bound, &mut meter) {
        Ok(v) => v,
        Err(e) => return Ok(unknown("MFMC", e.to_string())),
    };
    let found = match found {
        Some(v) => Some(v),
        None => match has_packing_property(c, budget) {
            Ok(None) => None,
            Ok(Some(spec)) => {
                let del = c.mask_of(&spec.delete).map_err(|e| e.to_string())?;
                let con = c.mask_of(&spec.contract).map_err(|e| e.to_string())?;
                let w = guided_weights(c.ground_size(), del, con);
                match violation_at(c, &w, &mut budget.meter()) {
                    Ok(Some(v)) => Some(v),
                    Ok(None) => return Err(format!("non-packing minor {spec} gave no violation")),
                    Err(e) => return Ok(unknown("MFMC", e.to_string())),
                }
            }
            Err(e @ (PolyError::TooLarge { .. } | PolyError::Budget(_))) => return Ok(unknown("MFMC", e.to_string())),
            Err(e) => return Err(e.to_string()),
        },
    };
    Ok(match found {
        Some(v) => {
            let weights: Vec<String> = v.weights.iter().map(|w| w.to_string()).collect();
            let cert = Certificate::new(s, Claim::MfmcViolation { weights: v.weights.clone(), tau: v.tau, nu: v.nu });
            Section {
                text: format!("MFMC VIOLATED (tau = {} > nu = {} at weights {})\n", v.tau, v.nu, weights.join(" ")),
                value: json!({ "verdict": "VIOLATED", "weights": v.weights, "tau": v.tau, "nu": v.nu }),
                certs: vec![cert],
                outcome: Outcome::Done,
            }
        }
        None => Section {
            text: format!(
                "no MFMC violation found (weights up to {bound}; packing property holds; not a proof of MFMC)\n"
            ),
            value: json!({ "verdict": "NO VIOLATION FOUND", "refuter_bound": bound, "packing_property": true }),
            certs: vec![Certificate::new(s, Claim::PackingProperty { refuter_bound: bound })],
            outcome: Outcome::Done,
        },
    })
}

fn minors(s: &Subspace, c: &Clutter, budget: &Budget) -> Result<Section, String> {
    let mut text = String::new();
    let mut value = serde_json::Map::new();
    let mut certs = Vec::new();
    let mut absent = Vec::new();
    let mut outcome = Outcome::Done;
    for target in [Builtin::Delta3, Builtin::Q6, Builtin::C5sq] {
        let t = Clutter::builtin(target);
        match c.find_minor(&t, &mut budget.meter()) {
            Ok(Some(emb)) => {
                text.push_str(&format!("{} minor: {emb}\n", target.name()));
                value.insert(target.name().into(), json!(emb));
                certs.push(Certificate::new(s, Claim::MinorEmbedding { target, embedding: emb }));
            }
            Ok(None) => {
                text.push_str(&format!("{} minor: none\n", target.name()));
                value.insert(target.name().into(), Value::Null);
                absent.push(target);
            }
            Err(e @ (ClutterError::TooLarge { .. } | ClutterError::Budget(_))) => {
                text.push_str(&format!("{} minor: UNKNOWN ({e})\n", target.name()));
                value.insert(target.name().into(), json!("UNKNOWN"));
                outcome = Outcome::Unknown;
            }
            Err(e) => return Err(e.to_string()),
        }
    }
    if !absent.is_empty() {
        certs.push(Certificate::new(s, Claim::NoMinor { targets: absent }));
    }
    Ok(Section { text, value: Value::Object(value), certs, outcome })
}

fn structure(s: &Subspace) -> Result<Section, String> {
    let m = matroid_of(s).map_err(|e| e.to_string())?;
    let report = m.classify();
    let mut text = format!("matroid: rank {}, {} circuits\n", m.rank(), m.circuits().len());
    for comp in &report.components {
        let kind = match comp.kind {
            ComponentKind::Coloop => "coloop".to_string(),
            ComponentKind::Circuit => "circuit".to_string(),
            ComponentKind::SubdivisionOfA { t } => format!("subdivision of A{t}"),
            ComponentKind::Unclassified => "unclassified".to_string(),
        };
        text.push_str(&format!("  component {:?}: {kind}\n", comp.elements));
    }
    let mut certs = Vec::new();
    let basis = s.disjoint_support_basis().map_err(|e| e.to_string())?;
    match &basis {
        Some(rows) => {
            let rows: Vec<String> = rows.iter().map(|r| format_point(r)).collect();
            text.push_str(&format!("disjoint-support basis: {}\n", rows.join(" ")));
            certs.push(Certificate::new(s, Claim::DisjointSupportBasis { basis: basis.clone().unwrap() }));
        }
        None => {
            let (a, b) = m.intersecting_circuits().expect("no disjoint basis means two circuits meet");
            let circuits = vec![clutterforge::bits::elements(a), clutterforge::bits::elements(b)];
            text.push_str(&format!("no disjoint-support basis: circuits {:?} and {:?} meet\n", circuits[0], circuits[1]));
            certs.push(Certificate::new(s, Claim::IntersectingCircuits { circuits }));
        }
    }
    Ok(Section {
        text,
        value: json!({ "rank": m.rank(), "circuits": m.circuit_lists(), "classes": report, "disjoint_support_basis": basis }),
        certs,
        outcome: Outcome::Done,
    })
}

fn theorem(r: TheoremReport) -> Section {
    let mut text = format!("theorem {}:\n", r.theorem);
    for c in &r.conditions {
        text.push_str(&format!("  {} {}: {} [{}]\n", c.condition, c.statement, c.verdict, c.method));
        if let Some(note) = &c.note {
            text.push_str(&format!("      {note}\n"));
        }
    }
    text.push_str(&format!("  agreement: {}\n", r.agreement));
    let outcome = match r.agreement {
        Agreement::Agree => Outcome::Done,
        Agreement::Incomplete => Outcome::Unknown,
        Agreement::Disagree => Outcome::Disagree,
    };
    debug_assert!(outcome != Outcome::Done || r.verdicts().iter().all(|&v| v != Verdict::Unknown));
    let certs = r.conditions.iter().filter_map(|c| c.certificate.clone()).collect();
    Section { text, value: json!(r), certs, outcome }
}
