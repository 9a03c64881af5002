mod analyze;
mod inspect;
mod sweep;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use clutterforge::budget::Budget;
use clutterforge::gf::build_field;
use clutterforge::verify::{check_certificate, Certificate, TheoremId};
use clutterforge::vspace::{parse_subspace, Subspace};

/// Input errors and failed runs.
const EXIT_ERROR: u8 = 1;
/// Some verdict could not be decided within the budget.
const EXIT_UNKNOWN: u8 = 2;
/// Conditions disagree, or a certificate failed its check.
const EXIT_DISAGREE: u8 = 3;

#[derive(Parser)]
#[command(name = "clutterforge", version, about = "Idealness and max-flow min-cut checks for clutters of subspaces over GF(q)")]
struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Work units allowed per search; overrides CLUTTERFORGE_BUDGET.
    #[arg(long, global = true, value_name = "N")]
    budget: Option<u64>,
    /// Re-validate the certificates in FILE (one object or an array) and exit.
    #[arg(long, value_name = "FILE")]
    check_cert: Option<PathBuf>,
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand)]
enum Command {
    /// Print the addition and multiplication tables of GF(q).
    Field {
        #[arg(long)]
        q: u32,
    },
    /// Analyze mult(S) for the subspace in FILE.
    Analyze(analyze::AnalyzeArgs),
    /// Build and replay a constructive minor witness.
    Witness(WitnessArgs),
    /// Check a theorem on every subspace of GF(q)^n.
    Sweep(sweep::SweepArgs),
    /// Localizations of mult(S).
    Localize(inspect::LocalizeArgs),
    /// Circuits, components and minors of the matroid of S.
    Matroid(inspect::MatroidArgs),
}

#[derive(Args)]
struct WitnessArgs {
    #[arg(value_enum)]
    kind: WitnessKind,
    file: PathBuf,
    /// Point outside S to contract (c5sq only), e.g. `1,0,0`.
    #[arg(long, value_parser = parse_point)]
    alpha: Option<PointArg>,
    /// Write the chain certificate as JSON.
    #[arg(long, value_name = "FILE")]
    cert_out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum WitnessKind {
    /// Δ3 from a U(2,4) minor of the matroid.
    U24,
    /// Δ3 from an M(K4/e) minor over GF(3).
    K4e,
    /// C5² over GF(2^k), k >= 3, when the matroid is all parallel.
    C5sq,
}

/// How a run ended, before mapping to an exit code.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Outcome {
    Done,
    Unknown,
    Disagree,
}

impl Outcome {
    fn code(self) -> ExitCode {
        match self {
            Outcome::Done => ExitCode::SUCCESS,
            Outcome::Unknown => ExitCode::from(EXIT_UNKNOWN),
            Outcome::Disagree => ExitCode::from(EXIT_DISAGREE),
        }
    }
}

pub struct Ctx {
    pub json: bool,
    pub budget: Budget,
}

impl Ctx {
    /// Prints the text or JSON form. A closed stdout (e.g. `| head`) is not an error.
    pub fn emit(&self, text: &str, value: Value) {
        let mut out = std::io::stdout().lock();
        let _ = if self.json {
            writeln!(out, "{}", serde_json::to_string_pretty(&value).expect("serializable report"))
        } else {
            out.write_all(text.as_bytes())
        };
    }
}

/// A point given on the command line as comma-separated field elements.
#[derive(Debug, Clone)]
pub struct PointArg(pub Vec<u8>);

pub fn parse_point(s: &str) -> Result<PointArg, String> {
    s.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<u8>().map_err(|_| format!("`{t}` is not a field element")))
        .collect::<Result<_, _>>()
        .map(PointArg)
}

pub fn parse_theorem(s: &str) -> Result<TheoremId, String> {
    s.parse::<TheoremId>().map_err(|e| e.to_string())
}

pub fn load_space(path: &Path) -> Result<Subspace, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    parse_subspace(&text).map_err(|e| format!("{}: {e}", path.display()))
}

pub fn write_certificates(path: &Path, certs: &[Certificate]) -> Result<(), String> {
    let text = serde_json::to_string_pretty(certs).map_err(|e| e.to_string())?;
    fs::write(path, text + "\n").map_err(|e| format!("{}: {e}", path.display()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut budget = Budget::from_env();
    if let Some(steps) = cli.budget {
        budget = budget.with_steps(steps);
    }
    let ctx = Ctx { json: cli.json, budget };
    let result = match (&cli.check_cert, cli.command) {
        (Some(path), None) => check_certs(&ctx, path),
        (None, Some(cmd)) => run(&ctx, cmd),
        (Some(_), Some(_)) => Err("--check-cert takes no subcommand".into()),
        (None, None) => Err("expected a subcommand or --check-cert (see --help)".into()),
    };
    match result {
        Ok(outcome) => outcome.code(),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}

fn run(ctx: &Ctx, cmd: Command) -> Result<Outcome, String> {
    match cmd {
        Command::Field { q } => field(ctx, q),
        Command::Analyze(args) => analyze::run(ctx, &args),
        Command::Witness(args) => witness(ctx, &args),
        Command::Sweep(args) => sweep::run(ctx, &args),
        Command::Localize(args) => inspect::localize(ctx, &args),
        Command::Matroid(args) => inspect::matroid(ctx, &args),
    }
}

fn field(ctx: &Ctx, q: u32) -> Result<Outcome, String> {
    let f = build_field(q).map_err(|e| e.to_string())?;
    let modulus = f.modulus();
    let poly = if f.k() == 1 {
        format!("prime field, p = {}", f.p())
    } else {
        let terms: Vec<String> = modulus
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &c)| c != 0)
            .map(|(d, &c)| {
                let coef = if c == 1 || d == 0 { String::new() } else { c.to_string() };
                match d {
                    0 => c.to_string(),
                    1 => format!("{coef}x"),
                    _ => format!("{coef}x^{d}"),
                }
            })
            .collect();
        format!("modulus {}", terms.join(" + "))
    };
    let table = |op: fn(&clutterforge::gf::FieldSpec, u8, u8) -> u8| -> Vec<Vec<u8>> {
        f.elements().map(|x| f.elements().map(|y| op(&f, x, y)).collect()).collect()
    };
    let add = table(|f, x, y| f.add(x, y));
    let mul = table(|f, x, y| f.mul(x, y));
    let text = format!("GF({q}), {poly}\n\n{}", f.format_tables());
    ctx.emit(
        &text,
        json!({
            "q": q,
            "p": f.p(),
            "k": f.k(),
            "modulus": modulus,
            "names": f.elements().map(|x| f.element_name(x)).collect::<Vec<_>>(),
            "add": add,
            "mul": mul,
        }),
    );
    Ok(Outcome::Done)
}

fn witness(ctx: &Ctx, args: &WitnessArgs) -> Result<Outcome, String> {
    use clutterforge::clutter::{mult, Builtin};
    use clutterforge::verify::{c5sq_witness_with, delta3_witness_k4e, delta3_witness_u24, Claim};

    let s = load_space(&args.file)?;
    if args.alpha.is_some() && !matches!(args.kind, WitnessKind::C5sq) {
        return Err("--alpha applies to the c5sq witness only".into());
    }
    let (target, chain, extra) = match args.kind {
        WitnessKind::U24 => {
            let w = delta3_witness_u24(&s).map_err(|e| e.to_string())?;
            (w.target, w.chain, None)
        }
        WitnessKind::K4e => {
            let w = delta3_witness_k4e(&s).map_err(|e| e.to_string())?;
            (w.target, w.chain, None)
        }
        WitnessKind::C5sq => {
            let w = c5sq_witness_with(&s, args.alpha.as_ref().map(|a| &a.0)).map_err(|e| e.to_string())?;
            (Builtin::C5sq, w.chain.clone(), Some(w))
        }
    };
    let minor = mult(&s)
        .and_then(|c| c.minor_chain(&chain))
        .map_err(|e| e.to_string())?;
    let mut text = format!("{s}\n{} minor of mult(S), replayed:\n", target.name());
    for (i, spec) in chain.iter().enumerate() {
        text.push_str(&format!("  step {}: {spec}\n", i + 1));
    }
    text.push_str(&format!("result: {} members on {} elements\n", minor.len(), minor.ground_size()));
    if let Some(w) = &extra {
        let cols: Vec<String> = w.columns.iter().map(|l| l.to_string()).collect();
        text.push_str(&format!(
            "alpha = {:?}, sigma = {}, a = {}, b = {}\nbefore the last contraction:\n  {}\n",
            w.alpha,
            w.sigma,
            w.a,
            w.b,
            cols.join(" ")
        ));
        for row in &w.display {
            let cells: Vec<String> = row.iter().zip(&cols).map(|(x, c)| format!("{x:>w$}", w = c.len())).collect();
            text.push_str(&format!("  {}\n", cells.join(" ")));
        }
    }
    let cert = Certificate::new(&s, Claim::MinorChain { target, chain: chain.clone() });
    if let Some(path) = &args.cert_out {
        write_certificates(path, std::slice::from_ref(&cert))?;
    }
    ctx.emit(
        &text,
        json!({
            "space": s.spec(),
            "target": target,
            "chain": chain,
            "c5sq": extra,
            "certificate": cert,
        }),
    );
    Ok(Outcome::Done)
}

fn check_certs(ctx: &Ctx, path: &Path) -> Result<Outcome, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let value: Value = serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    let items = match value {
        Value::Array(items) => items,
        other => vec![other],
    };
    let mut lines = String::new();
    let mut results = Vec::new();
    let mut outcome = Outcome::Done;
    for (i, item) in items.into_iter().enumerate() {
        let cert: Certificate =
            serde_json::from_value(item).map_err(|e| format!("{}: certificate {}: {e}", path.display(), i + 1))?;
        let (status, detail) = match check_certificate(&cert, &ctx.budget) {
            Ok(true) => ("valid", None),
            Ok(false) => {
                outcome = outcome.max(Outcome::Disagree);
                ("INVALID", None)
            }
            Err(e) => {
                outcome = outcome.max(Outcome::Unknown);
                ("UNCHECKED", Some(e.to_string()))
            }
        };
        lines.push_str(&format!("{}: {} {}", i + 1, cert.kind(), status));
        if let Some(d) = &detail {
            lines.push_str(&format!(" ({d})"));
        }
        lines.push('\n');
        results.push(json!({"kind": cert.kind(), "status": status, "detail": detail}));
    }
    ctx.emit(&lines, json!({ "certificates": results }));
    Ok(outcome)
}
