//! Command-line driver.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::cli::classify::{classify, orbit_scan_bound};
use crate::cli::report::{emit_report, to_stable_json, HfOutcome, ReportFormat};
use crate::cli::spec_file::{parse_spec, SpecError, SpecFile};
use crate::floer::{hf_pair, hf_self, Side, TorusPairConfig};
use crate::linalg::IntMatrix;
use crate::maslov::{maslov_index, ParityCertificate};
use crate::monodromy::{orbit_relations, order, OrbitRelation, Order};
use crate::novikov::{parse_rational, FiltrationParam};

pub const EXIT_OK: u8 = 0;
pub const EXIT_INPUT: u8 = 1;
pub const EXIT_INTERNAL: u8 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "torus-floer",
    version,
    about = "Floer cohomology and isotopy classification of product tori"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Monodromy matrix, order and orbit relations between the curves.
    Monodromy(CommonArgs),
    /// Floer cohomology of every ordered pair of tori.
    Hf(CommonArgs),
    /// Maslov indices of the disc basis and the parity certificate.
    Maslov(CommonArgs),
    /// Full isotopy classification report.
    Classify(CommonArgs),
    /// Parse and validate a spec file.
    Validate(CommonArgs),
}

#[derive(Args, Debug)]
pub struct CommonArgs {
    #[arg(long, value_name = "PATH")]
    pub spec: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Overrides `options.bound`.
    #[arg(long, value_name = "N")]
    pub bound: Option<u64>,
    /// Overrides `options.lambda_star`; accepts `p`, `p/q` or a decimal.
    #[arg(long, value_name = "Q")]
    pub lambda_star: Option<String>,
    /// Write output here instead of stdout.
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

impl From<Format> for ReportFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Json => ReportFormat::Json,
            Format::Text => ReportFormat::Text,
        }
    }
}

/// A failed run: message for stderr and the exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }

    fn internal(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_INTERNAL,
            message: message.into(),
        }
    }
}

impl From<SpecError> for Failure {
    fn from(e: SpecError) -> Self {
        Failure::input(e.to_string())
    }
}

type Runner = fn(&SpecFile, Format) -> Result<Vec<u8>, Failure>;

/// Runs one command. On success returns the bytes to emit.
pub fn execute(cmd: &Command) -> Result<Vec<u8>, Failure> {
    let (args, run): (&CommonArgs, Runner) = match cmd {
        Command::Monodromy(a) => (a, run_monodromy),
        Command::Hf(a) => (a, run_hf),
        Command::Maslov(a) => (a, run_maslov),
        Command::Classify(a) => (a, run_classify),
        Command::Validate(a) => (a, run_validate),
    };
    let spec = load(args)?;
    run(&spec, args.format)
}

/// Executes and writes the output; returns the process exit code.
pub fn run(cli: &Cli) -> u8 {
    let args = match &cli.command {
        Command::Monodromy(a)
        | Command::Hf(a)
        | Command::Maslov(a)
        | Command::Classify(a)
        | Command::Validate(a) => a,
    };
    let result = execute(&cli.command).and_then(|bytes| write_output(args.out.as_ref(), &bytes));
    match result {
        Ok(()) => EXIT_OK,
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}

fn write_output(out: Option<&PathBuf>, bytes: &[u8]) -> Result<(), Failure> {
    use std::io::Write;
    match out {
        Some(path) => std::fs::write(path, bytes)
            .map_err(|e| Failure::internal(format!("cannot write {}: {e}", path.display()))),
        None => std::io::stdout()
            .write_all(bytes)
            .map_err(|e| Failure::internal(format!("cannot write output: {e}"))),
    }
}

fn load(args: &CommonArgs) -> Result<SpecFile, Failure> {
    let text = std::fs::read_to_string(&args.spec)
        .map_err(|e| Failure::input(format!("cannot read {}: {e}", args.spec.display())))?;
    let mut spec = parse_spec(&text)?;
    if let Some(b) = args.bound {
        spec.options.bound = b;
    }
    if let Some(q) = &args.lambda_star {
        let value = parse_rational(q)
            .ok_or_else(|| Failure::input(format!("--lambda-star: not a rational: {q}")))?;
        spec.options.lambda_star = FiltrationParam::new(value)
            .map_err(|e| Failure::input(format!("--lambda-star: {e}")))?;
    }
    Ok(spec)
}

fn json<T: Serialize>(value: &T) -> Vec<u8> {
    to_stable_json(value).into_bytes()
}

fn run_classify(spec: &SpecFile, format: Format) -> Result<Vec<u8>, Failure> {
    let report = classify(spec).map_err(|e| Failure::internal(e.to_string()))?;
    Ok(emit_report(&report, format.into()))
}

#[derive(Serialize)]
struct ValidateOutput<'a> {
    valid: bool,
    fiber_genus: usize,
    curves: Vec<&'a str>,
    warnings: &'a [String],
}

fn run_validate(spec: &SpecFile, format: Format) -> Result<Vec<u8>, Failure> {
    let out = ValidateOutput {
        valid: true,
        fiber_genus: spec.link.fiber_genus(),
        curves: spec.curves.iter().map(|c| c.name.as_str()).collect(),
        warnings: &spec.warnings,
    };
    Ok(match format {
        Format::Json => json(&out),
        Format::Text => {
            let mut s = format!(
                "ok: fiber genus {}, curves {}\n",
                out.fiber_genus,
                out.curves.join(", ")
            );
            for w in out.warnings {
                let _ = writeln!(s, "warning: {w}");
            }
            s.into_bytes()
        }
    })
}

#[derive(Serialize)]
struct OrbitEntry {
    from: String,
    to: String,
    relations: Vec<OrbitRelation>,
}

#[derive(Serialize)]
struct MonodromyOutput {
    fiber_genus: usize,
    matrix: IntMatrix,
    determinant: i64,
    characteristic_polynomial: Vec<i64>,
    order: Order,
    bound: u64,
    orbits: Vec<OrbitEntry>,
}

fn run_monodromy(spec: &SpecFile, format: Format) -> Result<Vec<u8>, Failure> {
    let internal = |e: crate::error::Error| Failure::internal(e.to_string());
    let m = spec.link.monodromy().map_err(internal)?;
    let ord = order(&m, spec.options.bound);
    let scan = orbit_scan_bound(ord, spec.options.bound);
    let mut orbits = Vec::new();
    for a in &spec.curves {
        for b in &spec.curves {
            let relations = orbit_relations(&m, &a.class, &b.class, scan).map_err(internal)?;
            orbits.push(OrbitEntry {
                from: a.name.clone(),
                to: b.name.clone(),
                relations: relations.into_iter().collect(),
            });
        }
    }
    let out = MonodromyOutput {
        fiber_genus: spec.link.fiber_genus(),
        matrix: m.matrix().clone(),
        determinant: m.determinant().map_err(internal)?,
        characteristic_polynomial: m.characteristic_polynomial().map_err(internal)?,
        order: ord,
        bound: spec.options.bound,
        orbits,
    };
    Ok(match format {
        Format::Json => json(&out),
        Format::Text => {
            let mut s = format!("monodromy (fiber genus {}):\n", out.fiber_genus);
            for line in out.matrix.to_string().lines() {
                let _ = writeln!(s, "  {line}");
            }
            let _ = writeln!(s, "determinant: {}", out.determinant);
            let _ = writeln!(
                s,
                "characteristic polynomial (constant term first): {:?}",
                out.characteristic_polynomial
            );
            let _ = writeln!(
                s,
                "order: {}",
                match out.order {
                    Order::Finite(k) => k.to_string(),
                    Order::ExceedsBound => format!("> {}", out.bound),
                }
            );
            for o in &out.orbits {
                let rs: Vec<String> = o.relations.iter().map(ToString::to_string).collect();
                let _ = writeln!(
                    s,
                    "  {} -> {}: {}",
                    o.from,
                    o.to,
                    if rs.is_empty() {
                        "none".to_string()
                    } else {
                        rs.join(" ")
                    }
                );
            }
            s.into_bytes()
        }
    })
}

#[derive(Serialize)]
struct HfEntry {
    first: String,
    second: String,
    ambient: &'static str,
    hf_self_first: HfOutcome,
    hf_pair: HfOutcome,
}

fn run_hf(spec: &SpecFile, format: Format) -> Result<Vec<u8>, Failure> {
    let parity = spec.maslov.as_ref().map(|m| m.certificate());
    let mut entries = Vec::new();
    for a in &spec.curves {
        for b in &spec.curves {
            let mut config = TorusPairConfig::new(
                spec.link.clone(),
                a.class.clone(),
                b.class.clone(),
                spec.ambient.clone(),
            )
            .map_err(|e| Failure::internal(e.to_string()))?
            .with_filtration(spec.options.lambda_star.clone())
            .with_window(spec.options.window);
            if let Some(p) = &parity {
                config = config.with_parity(p.clone());
            }
            let mut views = vec![("interior", config.interior_view())];
            if spec.ambient.is_fiber_sum() {
                views.push(("fiber_sum", config));
            }
            for (ambient, view) in views {
                entries.push(HfEntry {
                    first: a.name.clone(),
                    second: b.name.clone(),
                    ambient,
                    hf_self_first: hf_self(&view, Side::First).into(),
                    hf_pair: hf_pair(&view).into(),
                });
            }
        }
    }
    Ok(match format {
        Format::Json => json(&entries),
        Format::Text => {
            let mut s = String::new();
            for e in &entries {
                let _ = writeln!(
                    s,
                    "[{}] HF({}, {}) = {}",
                    e.ambient,
                    e.first,
                    e.second,
                    describe(&e.hf_pair)
                );
            }
            s.into_bytes()
        }
    })
}

fn describe(h: &HfOutcome) -> String {
    match h {
        HfOutcome::Computed { ranks, .. } => ranks.to_string(),
        HfOutcome::Undetermined { reason } => format!("undetermined ({reason})"),
    }
}

#[derive(Serialize)]
struct MaslovOutput {
    fiber_disc_index: i64,
    circle_disc_index: i64,
    c1_justification: Option<String>,
    certificate: ParityCertificate,
}

fn run_maslov(spec: &SpecFile, format: Format) -> Result<Vec<u8>, Failure> {
    let m = spec
        .maslov
        .as_ref()
        .ok_or_else(|| Failure::input("spec has no [maslov] section"))?;
    let out = MaslovOutput {
        fiber_disc_index: maslov_index(&m.fiber_disc),
        circle_disc_index: maslov_index(&m.circle_disc),
        c1_justification: m.c1_justification.clone(),
        certificate: m.certificate(),
    };
    Ok(match format {
        Format::Json => json(&out),
        Format::Text => format!(
            "fiber disc index: {}\ncircle disc index: {}\nc1 even: {}\nverdict: {:?}\n",
            out.fiber_disc_index,
            out.circle_disc_index,
            out.certificate.c1_even,
            out.certificate.verdict
        )
        .into_bytes(),
    })
}
