use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::Args;
use rayon::prelude::*;
use serde_json::json;

use clutterforge::gf::build_field;
use clutterforge::verify::{enumerate_subspaces, verify_theorem, Agreement, TheoremId, TheoremReport, SUBSPACE_CAP};

use crate::{parse_theorem, Ctx, Outcome};

#[derive(Args)]
pub struct SweepArgs {
    #[arg(long)]
    q: u32,
    #[arg(long)]
    n: usize,
    /// Theorem to check: 1.1, 1.2, 1.3 or 1.4.
    #[arg(long, value_parser = parse_theorem)]
    theorem: TheoremId,
    /// Write one CSV row per subspace here instead of standard output.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
    /// Worker threads; defaults to the number of cores.
    #[arg(long)]
    jobs: Option<usize>,
}

pub fn run(ctx: &Ctx, args: &SweepArgs) -> Result<Outcome, String> {
    build_field(args.q).map_err(|e| e.to_string())?;
    if !args.theorem.applies_to(args.q) {
        return Err(format!("theorem {} does not apply to GF({})", args.theorem, args.q));
    }
    let spaces = enumerate_subspaces(args.q, args.n, SUBSPACE_CAP).map_err(|e| e.to_string())?;
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(j) = args.jobs {
        pool = pool.num_threads(j.max(1));
    }
    let pool = pool.build().map_err(|e| e.to_string())?;
    let reports: Vec<TheoremReport> = pool.install(|| {
        spaces
            .par_iter()
            .map(|s| verify_theorem(s, args.theorem, &ctx.budget).map_err(|e| format!("{s}: {e}")))
            .collect::<Result<_, _>>()
    })?;

    let count = |a: Agreement| reports.iter().filter(|r| r.agreement == a).count();
    let (agree, incomplete, disagree) = (count(Agreement::Agree), count(Agreement::Incomplete), count(Agreement::Disagree));
    let unknown: usize = reports.iter().map(|r| r.unknowns()).sum();
    let summary = format!(
        "GF({})^{} theorem {}: {} subspaces, {agree} agree, {incomplete} incomplete ({unknown} unknown verdicts), {disagree} disagree",
        args.q,
        args.n,
        args.theorem,
        reports.len()
    );

    if ctx.json {
        let rows: Vec<_> = reports.iter().map(row_json).collect();
        if let Some(path) = &args.out {
            write_csv(File::create(path).map_err(|e| format!("{}: {e}", path.display()))?, args, &reports)?;
        }
        ctx.emit(
            "",
            json!({
                "q": args.q, "n": args.n, "theorem": args.theorem,
                "subspaces": reports.len(), "agree": agree, "incomplete": incomplete,
                "unknown_verdicts": unknown, "disagree": disagree, "rows": rows,
            }),
        );
    } else {
        match &args.out {
            Some(path) => write_csv(File::create(path).map_err(|e| format!("{}: {e}", path.display()))?, args, &reports)?,
            None => write_csv(io::stdout().lock(), args, &reports)?,
        }
        let _ = writeln!(io::stdout(), "{summary}");
    }
    Ok(if disagree == 0 { Outcome::Done } else { Outcome::Disagree })
}

fn row_json(r: &TheoremReport) -> serde_json::Value {
    json!({
        "space": r.instance,
        "dim": r.space.generators.len(),
        "verdicts": r.verdicts(),
        "methods": r.conditions.iter().map(|c| c.method.clone()).collect::<Vec<_>>(),
        "agreement": r.agreement,
    })
}

fn write_csv<W: Write>(mut w: W, args: &SweepArgs, reports: &[TheoremReport]) -> Result<(), String> {
    let io_err = |e: io::Error| e.to_string();
    writeln!(w, "# clutterforge sweep q={} n={} theorem={}", args.q, args.n, args.theorem).map_err(io_err)?;
    let mut csv = csv::Writer::from_writer(w);
    let mut header = vec!["index".to_string(), "space".into(), "dim".into()];
    if let Some(r) = reports.first() {
        header.extend(r.conditions.iter().map(|c| c.condition.clone()));
    }
    header.push("agreement".into());
    header.push("idealness_method".into());
    csv.write_record(&header).map_err(|e| e.to_string())?;
    for (i, r) in reports.iter().enumerate() {
        let mut rec = vec![i.to_string(), r.instance.clone(), r.space.generators.len().to_string()];
        rec.extend(r.conditions.iter().map(|c| c.verdict.to_string()));
        rec.push(r.agreement.to_string());
        rec.push(r.conditions.first().map(|c| c.method.clone()).unwrap_or_default());
        csv.write_record(&rec).map_err(|e| e.to_string())?;
    }
    csv.flush().map_err(io_err)
}
