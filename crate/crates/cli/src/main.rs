//! `cering`: validate, report on and emit rings, and run the acceptance suite.
//!
//! Exit codes: 0 success (an undecided verdict is a result), 1 property
//! mismatch, 2 parse or usage error, 3 enumeration bound exceeded.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use cering::algebra::{AnyRing, DEFAULT_ENUMERATION_BOUND};
use cering::ce::{decide, CEReport, Decision};
use cering::exactlin::FieldSpec;
use cering::gallery::{FiniteAbelianGroup, GallerySpec, Rank3Kind};
use cering::suite::{run_suite, RowStatus, SuiteConfig};
use cering::Error;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(
    name = "cering",
    version,
    about = "Decide central essentiality of finite-dimensional algebras and finite rings"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[command(flatten)]
    global: Global,
}

#[derive(Args, Debug, Clone)]
struct Global {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    /// Largest ring order that may be enumerated element by element.
    #[arg(long, default_value_t = DEFAULT_ENUMERATION_BOUND, value_parser = positive_u128, global = true)]
    bound: u128,

    /// Seed for the sampled checks.
    #[arg(long, default_value_t = 2024, global = true)]
    seed: u64,

    /// Number of sampled trials.
    #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..), global = true)]
    trials: u64,

    /// Worker threads for parallel scans (default: all cores).
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..), global = true)]
    jobs: Option<u64>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the ring axioms on the structure constants.
    Validate(Input),
    /// Invariants, local-ring criterion flags and the CE decision.
    Report(Input),
    /// CE and commutativity of End(⊕ Z/p^k), group given as "p:k,p:k,…".
    Endring {
        /// Group spec, e.g. "2:1,2:2".
        group: String,
    },
    /// Run every acceptance criterion and print a pass/fail table.
    #[command(visible_alias = "paper-suite")]
    Suite,
    /// Print the ring in the JSON interchange format.
    Emit(Input),
}

#[derive(Args, Debug, Clone)]
#[group(required = true, multiple = false, id = "source")]
struct Source {
    /// Ring file in the JSON interchange format.
    #[arg(long)]
    input: Option<PathBuf>,

    /// Gallery constructor: grassmann, group-algebra, rank3, matrix,
    /// upper-triangular, endring.
    #[arg(long)]
    gallery: Option<String>,
}

#[derive(Args, Debug, Clone)]
struct Input {
    #[command(flatten)]
    source: Source,

    /// Size parameter (grassmann, matrix, upper-triangular).
    #[arg(long)]
    n: Option<usize>,

    /// Coefficient field: Q or Fp.
    #[arg(long)]
    field: Option<String>,

    /// Rank-3 algebra kind: K, R, S or T.
    #[arg(long)]
    kind: Option<String>,

    /// Parameter k of the rank-3 algebra S.
    #[arg(long, allow_hyphen_values = true)]
    k: Option<String>,

    /// Group: q8, s<n>, c<n>, d<n> for group algebras; "p:k,…" for endring.
    #[arg(long)]
    group: Option<String>,
}

fn positive_u128(s: &str) -> Result<u128, String> {
    match s.parse::<u128>() {
        Ok(0) => Err("bound must be positive".into()),
        Ok(n) => Ok(n),
        Err(e) => Err(e.to_string()),
    }
}

/// Failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse(_) | Error::InvalidArgument(_) | Error::NotPrime(_) => 2,
            Error::BoundExceeded { .. } => 3,
            _ => 1,
        };
        let message = match &e {
            Error::BoundExceeded { order, .. } => format!("{e} (required bound: --bound {order})"),
            _ => e.to_string(),
        };
        Failure { code, message }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: 2, message: message.into() }
}

/// Output text plus exit code.
struct Outcome {
    text: String,
    code: u8,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.global.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs as usize).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok(out) => {
            print!("{}", out.text);
            ExitCode::from(out.code)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: &Cli) -> Result<Outcome, Failure> {
    let g = &cli.global;
    match &cli.command {
        Command::Validate(input) => {
            let (name, ring) = load(input, g.bound)?;
            Ok(validate(&name, &ring, g.format))
        }
        Command::Report(input) => {
            let (name, ring) = load(input, g.bound)?;
            let report = decide(&ring, g.bound)?;
            Ok(render_report(&name, &ring, &report, g.format))
        }
        Command::Endring { group } => endring(group, g),
        Command::Suite => Ok(suite(g)),
        Command::Emit(input) => {
            let (_, ring) = load(input, g.bound)?;
            Ok(Outcome { text: format!("{}\n", ring.to_json()), code: 0 })
        }
    }
}

fn load(input: &Input, bound: u128) -> Result<(String, AnyRing), Failure> {
    if let Some(path) = &input.source.input {
        let text = std::fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
        let ring = AnyRing::from_json(&text).map_err(|e| usage(format!("{}: {e}", path.display())))?;
        return Ok((path.display().to_string(), ring));
    }
    let spec = gallery_spec(input)?;
    let ring = spec.build(bound)?;
    Ok((spec.name(), ring))
}

fn gallery_spec(input: &Input) -> Result<GallerySpec, Failure> {
    let name = input.source.gallery.as_deref().unwrap_or_default();
    let field = |default: &str| -> Result<FieldSpec, Failure> {
        Ok(input.field.as_deref().unwrap_or(default).parse::<FieldSpec>()?)
    };
    let n = |what: &str| input.n.ok_or_else(|| usage(format!("--gallery {what} needs --n")));
    Ok(match name.to_ascii_lowercase().as_str() {
        "grassmann" => GallerySpec::Grassmann { n: n("grassmann")?, field: field("Q")? },
        "group-algebra" => {
            let group = input.group.clone().ok_or_else(|| usage("--gallery group-algebra needs --group"))?;
            GallerySpec::GroupAlgebra { group, field: field("F2")? }
        }
        "rank3" => {
            let field = field("Q")?;
            let kind = match input.kind.as_deref().map(str::to_ascii_uppercase).as_deref() {
                Some("K") => Rank3Kind::K,
                Some("R") => Rank3Kind::R,
                Some("T") => Rank3Kind::T,
                Some("S") => {
                    let k = input.k.as_deref().ok_or_else(|| usage("--kind S needs --k"))?;
                    Rank3Kind::S(field.parse(k)?)
                }
                other => return Err(usage(format!("--kind must be K, R, S or T, got {other:?}"))),
            };
            GallerySpec::Rank3 { kind, field }
        }
        "matrix" => GallerySpec::Matrix { n: n("matrix")?, field: field("Q")? },
        "upper-triangular" => GallerySpec::UpperTriangular { n: n("upper-triangular")?, field: field("Q")? },
        "endring" => {
            let group = input.group.as_deref().ok_or_else(|| usage("--gallery endring needs --group p:k,…"))?;
            GallerySpec::EndRing { group: group.parse::<FiniteAbelianGroup>()? }
        }
        other => return Err(usage(format!("unknown gallery ring {other:?}"))),
    })
}

fn validate(name: &str, ring: &AnyRing, format: Format) -> Outcome {
    let violations = ring.validate();
    let code = u8::from(!violations.is_empty());
    let text = match format {
        Format::Json => {
            let v = json!({ "ring": name, "valid": violations.is_empty(), "violations": violations });
            format!("{}\n", serde_json::to_string_pretty(&v).expect("serializable"))
        }
        Format::Text => {
            let mut s = String::new();
            if violations.is_empty() {
                writeln!(s, "{name}: valid").unwrap();
            } else {
                writeln!(s, "{name}: {} violation(s)", violations.len()).unwrap();
                for v in &violations {
                    let v = serde_json::to_value(v).expect("serializable");
                    writeln!(s, "  {}", violation_line(&v)).unwrap();
                }
            }
            s
        }
    };
    Outcome { text, code }
}

fn violation_line(v: &Value) -> String {
    let kind = v["kind"].as_str().unwrap_or("?");
    let idx: Vec<String> = ["i", "j", "k"].iter().filter_map(|k| v.get(*k).map(|x| format!("{k}={x}"))).collect();
    let diff: Vec<&str> =
        v["discrepancy"].as_array().map(|a| a.iter().filter_map(Value::as_str).collect()).unwrap_or_default();
    format!("{kind} ({}) discrepancy [{}]", idx.join(", "), diff.join(", "))
}

fn ring_summary(ring: &AnyRing) -> Value {
    match ring {
        AnyRing::Algebra(a) => {
            json!({ "kind": "algebra", "field": a.field().to_string(), "dim": a.dim(), "basis": a.basis_names() })
        }
        AnyRing::Finite(r) => json!({
            "kind": "finite_ring",
            "moduli": r.moduli(),
            "order": r.order().to_string(),
            "generators": r.generator_names(),
        }),
    }
}

fn render_report(name: &str, ring: &AnyRing, report: &CEReport, format: Format) -> Outcome {
    let code = u8::from(!report.consistency.is_empty());
    let text = match format {
        Format::Json => {
            let v = json!({ "ring": name, "structure": ring_summary(ring), "report": report });
            format!("{}\n", serde_json::to_string_pretty(&v).expect("serializable"))
        }
        Format::Text => report_text(name, ring, report),
    };
    Outcome { text, code }
}

fn label(v: impl serde::Serialize) -> String {
    match serde_json::to_value(v).expect("serializable") {
        Value::String(s) => s,
        other => other.to_string(),
    }
}

fn report_text(name: &str, ring: &AnyRing, r: &CEReport) -> String {
    let mut s = String::new();
    let w = &mut s;
    writeln!(w, "ring: {name}").unwrap();
    match ring {
        AnyRing::Algebra(a) => writeln!(w, "structure: algebra over {} of dimension {}", a.field(), a.dim()).unwrap(),
        AnyRing::Finite(f) => {
            writeln!(w, "structure: finite ring of order {} (moduli {:?})", f.order(), f.moduli()).unwrap()
        }
    }
    writeln!(w, "commutative: {}", r.commutative).unwrap();
    writeln!(w, "decision: {}", label(r.decision)).unwrap();
    writeln!(w, "method: {}", label(r.method)).unwrap();
    if let Some(reason) = &r.reason {
        writeln!(w, "reason: {reason}").unwrap();
    }
    if let Some(wit) = &r.witness_failure {
        writeln!(w, "witness (aC ∩ C = 0): [{}]", wit.join(", ")).unwrap();
    }
    if let Some(inv) = &r.invariants {
        writeln!(w, "center: {}", inv.center.summary()).unwrap();
        writeln!(w, "radical: {}", inv.radical.summary()).unwrap();
        writeln!(w, "center radical: {}", inv.center_radical.summary()).unwrap();
        writeln!(w, "socle (right): {}", inv.socle_right.summary()).unwrap();
        writeln!(w, "socle (central): {}", inv.socle_central.summary()).unwrap();
        writeln!(w, "quotient commutative: {}", inv.quotient_commutative).unwrap();
        writeln!(w, "semiprime: {}", inv.semiprime).unwrap();
        writeln!(w, "local: {} ({})", label(inv.local.status), inv.local.reason).unwrap();
    }
    let p = &r.prop34;
    writeln!(w, "flag (i) R/J commutative: {}", label(p.quotient_commutative)).unwrap();
    writeln!(w, "flag (ii) socles equal: {}", label(p.socles_equal)).unwrap();
    writeln!(w, "flag socle in center: {}", label(p.socle_in_center)).unwrap();
    writeln!(w, "flag (iii) minimal right ideals meet C: {}", label(p.every_min_ideal_meets_center)).unwrap();
    if let Some(note) = &p.note {
        writeln!(w, "note: {note}").unwrap();
    }
    for c in &r.consistency {
        writeln!(w, "INCONSISTENT: {c}").unwrap();
    }
    s
}

fn endring(group: &str, g: &Global) -> Result<Outcome, Failure> {
    let parsed: FiniteAbelianGroup = group.parse()?;
    let spec = GallerySpec::EndRing { group: parsed.clone() };
    let ring = spec.build(g.bound)?;
    let report = decide(&ring, g.bound)?;
    let cyclic = parsed.components_cyclic();
    let mut mismatches = report.consistency.clone();
    match report.decision {
        Decision::Undecided => {}
        d if (d == Decision::True) != report.commutative => {
            mismatches.push(format!("CE {} but commutative {}", label(d), report.commutative));
        }
        _ => {}
    }
    if report.commutative != cyclic {
        mismatches.push(format!("commutative {} but cyclic p-components {cyclic}", report.commutative));
    }
    let code = u8::from(!mismatches.is_empty());
    let order = match &ring {
        AnyRing::Finite(f) => f.order(),
        AnyRing::Algebra(_) => unreachable!("endomorphism rings are finite"),
    };
    let text = match g.format {
        Format::Json => {
            let v = json!({
                "group": parsed.to_string(),
                "group_order": parsed.order().to_string(),
                "ring_order": order.to_string(),
                "cyclic_components": cyclic,
                "ce": report.decision,
                "commutative": report.commutative,
                "agree": mismatches.is_empty(),
                "mismatches": mismatches,
                "report": report,
            });
            format!("{}\n", serde_json::to_string_pretty(&v).expect("serializable"))
        }
        Format::Text => {
            let mut s = report_text(&spec.name(), &ring, &report);
            writeln!(s, "cyclic p-components: {cyclic}").unwrap();
            for m in &mismatches {
                writeln!(s, "MISMATCH: {m}").unwrap();
            }
            s
        }
    };
    Ok(Outcome { text, code })
}

fn suite(g: &Global) -> Outcome {
    let cfg = SuiteConfig { bound: g.bound, seed: g.seed, trials: g.trials as usize, ..SuiteConfig::default() };
    let rows = run_suite(&cfg);
    let all = rows.iter().all(|r| r.passed());
    let text = match g.format {
        Format::Json => {
            let v = json!({ "passed": all, "rows": rows });
            format!("{}\n", serde_json::to_string_pretty(&v).expect("serializable"))
        }
        Format::Text => {
            let mut s = String::new();
            for r in &rows {
                let status = match r.status {
                    RowStatus::Pass => "PASS",
                    RowStatus::Fail => "FAIL",
                    RowStatus::Undecided => "UNDECIDED",
                };
                writeln!(s, "{status:<9} [{:>2}] {}", r.id, r.name).unwrap();
                writeln!(s, "          expected: {}", r.expected).unwrap();
                writeln!(s, "          computed: {}", r.computed).unwrap();
            }
            let passed = rows.iter().filter(|r| r.passed()).count();
            writeln!(s, "{passed} of {} rows passed", rows.len()).unwrap();
            if !all {
                let failing: Vec<String> = rows.iter().filter(|r| !r.passed()).map(|r| r.id.to_string()).collect();
                writeln!(s, "failing rows: {}", failing.join(", ")).unwrap();
            }
            s
        }
    };
    Outcome { text, code: u8::from(!all) }
}
