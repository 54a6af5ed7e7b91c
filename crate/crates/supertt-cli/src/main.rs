mod expr;

/// Writes to stdout, ignoring a closed pipe.
macro_rules! out {
    ($($arg:tt)*) => {{
        use std::io::Write;
        let _ = writeln!(std::io::stdout(), $($arg)*);
    }};
}

macro_rules! out_raw {
    ($($arg:tt)*) => {{
        use std::io::Write;
        let _ = write!(std::io::stdout(), $($arg)*);
    }};
}

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;
use std::process::ExitCode;
use std::time::Instant;
use supertt::budget::set_work_budget;
use supertt::bwb::{h0_character, H0Mode, Parabolic};
use supertt::cliffmod::{rank_variety, ModuleJson, WeightModule};
use supertt::glmn::{atypicality, kac_module_f, simple_module_f, simple_support, GLWeight};
use supertt::spectrum::{
    bijection_check, coordinate_assignment, qplus_chain, spc_compute, FiniteZariski, Spectrum, SupportAssignment,
};
use supertt::variety::Variety;
use supertt::verify::{run_suite, CriterionReport, Suite, SuiteConfig};
use supertt::Error;

/// Support varieties and finite tensor-triangular spectra for gl(m|n).
#[derive(Parser, Debug)]
#[command(name = "supertt", version, about)]
struct Cli {
    /// Rank m of the detecting subalgebra, or the first index of gl(m|n).
    #[arg(long, global = true)]
    m: Option<usize>,
    /// Second index of gl(m|n).
    #[arg(long, global = true)]
    n: Option<usize>,
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Work budget for Gröbner and minor computations; overrides SUPERTT_BUDGET.
    #[arg(long, global = true)]
    budget: Option<usize>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate a variety expression such as `sat(V(1,1,0)) <= sat(V(1,0,0))`.
    Variety { expr: String },
    /// Run an acceptance suite.
    Verify {
        #[arg(value_enum)]
        suite: SuiteArg,
    },
    /// The support of the simple module L(λ), e.g. `simple-support 2 2 "(0,0|0,0)"`.
    SimpleSupport { m: usize, n: usize, weight: String },
    /// The rank variety of a module stored as JSON.
    RankVariety { file: std::path::PathBuf },
    /// A finite spectrum with its classification checks.
    Spectrum {
        #[arg(value_enum)]
        kind: SpectrumKind,
    },
    /// H⁰(G/P, L_p(λ)*)* for the parabolic with n - k odd columns kept.
    H0 {
        weight: String,
        k: usize,
        /// Report the Euler characteristic without certifying H⁰.
        #[arg(long)]
        euler: bool,
    },
    /// Write the restriction to f of a Kac or simple module as JSON.
    Module {
        #[arg(value_enum)]
        kind: ModuleKind,
        weight: String,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SuiteArg {
    Calculus,
    Modules,
    Bwb,
    Spectrum,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SpectrumKind {
    /// The chain of Kac-module supports for gl(m|n).
    Qplus,
    /// The realized coordinate family over f, m ≤ 2.
    Coord,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ModuleKind {
    Kac,
    Simple,
}

/// How a command ended.
enum Failure {
    /// A mathematical check failed; the report has been printed.
    Math,
    /// An error, with the input it refers to for caret diagnostics.
    Error(Error, Option<String>),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Error(e, None)
    }
}

type Outcome = std::result::Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(b) = cli.budget {
        set_work_budget(b);
    }
    let Err(failure) = run(&cli) else {
        return ExitCode::SUCCESS;
    };
    match &failure {
        Failure::Math => {}
        Failure::Usage(msg) => eprintln!("error: {}", msg),
        Failure::Error(e, input) => {
            eprintln!("error: {}", e);
            if let (Error::Parse { pos, .. }, Some(src)) = (e, input) {
                eprintln!("  {}", src);
                eprintln!("  {}^", " ".repeat(caret_column(src, *pos)));
            }
        }
    }
    ExitCode::from(exit_code(&failure))
}

/// 1 for a failed check, 3 for an exhausted budget, 2 for anything else.
fn exit_code(failure: &Failure) -> u8 {
    match failure {
        Failure::Math | Failure::Error(Error::OracleDisagreement(_), _) => 1,
        Failure::Error(Error::Budget(_), _) => 3,
        Failure::Error(..) | Failure::Usage(_) => 2,
    }
}

/// The character column of byte offset `pos`.
fn caret_column(src: &str, pos: usize) -> usize {
    src.get(..pos).map_or(src.chars().count(), |s| s.chars().count())
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Variety { expr } => variety(cli, expr),
        Command::Verify { suite } => verify(cli, *suite),
        Command::SimpleSupport { m, n, weight } => simple(cli, *m, *n, weight),
        Command::RankVariety { file } => rank(cli, file),
        Command::Spectrum { kind } => spectrum(cli, *kind),
        Command::H0 { weight, k, euler } => h0(cli, weight, *k, *euler),
        Command::Module { kind, weight } => module(cli, *kind, weight),
    }
}

fn format(cli: &Cli, default: Format, allowed: &[Format]) -> std::result::Result<Format, Failure> {
    let f = cli.format.unwrap_or(default);
    if allowed.contains(&f) {
        Ok(f)
    } else {
        Err(Failure::Usage(format!("--format {:?} is not available here", f).to_lowercase()))
    }
}

fn print_json(value: &impl Serialize) -> Outcome {
    let text = serde_json::to_string_pretty(value).map_err(Error::from)?;
    out!("{}", text);
    Ok(())
}

fn weight(src: &str) -> std::result::Result<GLWeight, Failure> {
    src.parse().map_err(|e| Failure::Error(e, Some(src.to_string())))
}

fn variety_dot(v: &Variety, title: &str) -> String {
    let mut s = String::from("digraph variety {\n");
    s.push_str(&format!("  root [label=\"{}\", shape=box];\n", title.replace('"', "\\\"")));
    for (i, c) in v.components().iter().enumerate() {
        s.push_str(&format!("  c{} [label=\"{}\"];\n  root -> c{};\n", i, c, i));
    }
    s.push_str("}\n");
    s
}

fn print_variety(f: Format, v: &Variety, title: &str) -> Outcome {
    match f {
        Format::Json => print_json(&v.to_json()),
        Format::Dot => {
            out_raw!("{}", variety_dot(v, title));
            Ok(())
        }
        Format::Text => {
            out!("{}", v);
            Ok(())
        }
    }
}

fn variety(cli: &Cli, src: &str) -> Outcome {
    let f = format(cli, Format::Text, &[Format::Text, Format::Json, Format::Dot])?;
    let m = cli.m.ok_or_else(|| Failure::Usage("variety needs --m".into()))?;
    match expr::evaluate(src, m).map_err(|e| Failure::Error(e, Some(src.to_string())))? {
        expr::Answer::Set(v) => print_variety(f, &v, src),
        expr::Answer::Holds(b) => match f {
            Format::Json => print_json(&json!({ "query": src, "holds": b })),
            Format::Text => {
                out!("{}", b);
                Ok(())
            }
            Format::Dot => Err(Failure::Usage("a query has no DOT form".into())),
        },
    }
}

#[derive(Serialize)]
struct SuiteRun {
    suite: Suite,
    passed: bool,
    criteria: Vec<CriterionReport>,
}

fn verify(cli: &Cli, which: SuiteArg) -> Outcome {
    let f = format(cli, Format::Text, &[Format::Text, Format::Json])?;
    let cfg = SuiteConfig { seed: cli.seed, max_m: cli.m.unwrap_or(4), ..SuiteConfig::default() };
    cfg.validate()?;
    let suites: Vec<Suite> = match which {
        SuiteArg::Calculus => vec![Suite::Calculus],
        SuiteArg::Modules => vec![Suite::Modules],
        SuiteArg::Bwb => vec![Suite::Bwb],
        SuiteArg::Spectrum => vec![Suite::Spectrum],
        SuiteArg::All => Suite::ALL.to_vec(),
    };
    let mut runs = Vec::new();
    let mut times = Vec::new();
    for suite in suites {
        let start = Instant::now();
        let criteria = run_suite(suite, &cfg)?;
        times.push(start.elapsed());
        runs.push(SuiteRun { suite, passed: criteria.iter().all(|c| c.passed), criteria });
    }
    let passed = runs.iter().all(|r| r.passed);
    match f {
        Format::Json => print_json(&json!({ "config": cfg, "passed": passed, "suites": runs }))?,
        _ => {
            for (run, time) in runs.iter().zip(&times) {
                for c in &run.criteria {
                    out!("{}", c.summary_line());
                    for note in &c.recorded {
                        out!("    {}", note);
                    }
                }
                if which == SuiteArg::All {
                    out!("suite {}: {} in {:.1} s", run.suite, if run.passed { "passed" } else { "FAILED" }, time.as_secs_f64());
                }
            }
            out!("{}", if passed { "all criteria passed" } else { "some criteria failed" });
        }
    }
    if passed {
        Ok(())
    } else {
        Err(Failure::Math)
    }
}

fn simple(cli: &Cli, m: usize, n: usize, src: &str) -> Outcome {
    let f = format(cli, Format::Text, &[Format::Text, Format::Json, Format::Dot])?;
    let lambda = weight(src)?;
    if (lambda.m(), lambda.n()) != (m, n) {
        return Err(Failure::Usage(format!("{} is not a weight of gl({}|{})", lambda, m, n)));
    }
    let l = atypicality(&lambda)?;
    let v = simple_support(&lambda)?;
    let r = m.min(n);
    let class = format!("Σ_{} V({},{},{})", r, r - l, r - l, r - l);
    match f {
        Format::Json => print_json(&json!({
            "weight": lambda.to_string(),
            "atypicality": l,
            "class": [r - l, r - l, r - l],
            "variety": v.to_json(),
        })),
        Format::Dot => print_variety(f, &v, &class),
        Format::Text => {
            out!("atypicality {}", l);
            out!("{} = {}", class, v);
            Ok(())
        }
    }
}

fn rank(cli: &Cli, path: &std::path::Path) -> Outcome {
    let f = format(cli, Format::Text, &[Format::Text, Format::Json, Format::Dot])?;
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {}: {}", path.display(), e)))?;
    let j: ModuleJson = serde_json::from_str(&text).map_err(Error::from)?;
    let module = WeightModule::from_json(&j)?;
    let v = rank_variety(&module)?;
    print_variety(f, &v, &path.display().to_string())
}

fn spectrum(cli: &Cli, kind: SpectrumKind) -> Outcome {
    let f = format(cli, Format::Dot, &[Format::Text, Format::Json, Format::Dot])?;
    let (name, assignment): (String, SupportAssignment) = match kind {
        SpectrumKind::Qplus => {
            let (m, n) = (cli.m.unwrap_or(1), cli.n.unwrap_or(1));
            (format!("qplus_{}_{}", m, n), qplus_chain(m, n)?)
        }
        SpectrumKind::Coord => {
            let m = cli.m.unwrap_or(1);
            (format!("coord_{}", m), coordinate_assignment(m)?.assignment)
        }
    };
    let bijection = bijection_check(&assignment)?;
    let spc = spc_compute(&assignment)?;
    let holds = bijection.holds() && spc.witness.holds();
    match f {
        Format::Dot => out_raw!("{}", spc_by_points(&assignment, &spc)?.to_dot(&name)),
        Format::Json => print_json(&json!({
            "space": assignment.space,
            "objects": assignment.objects,
            "bijection": bijection,
            "spectrum": spc,
        }))?,
        Format::Text => {
            out!("X: {} points, {} closed sets", assignment.space.len(), bijection.closed_sets);
            out!("thick tensor ideals: {}", bijection.ideals);
            out!("Γ and Θ inverse: {}", bijection.holds());
            out!("primes: {}", spc.primes.len());
            for (x, image) in assignment.space.labels().iter().zip(&spc.witness.map) {
                match image {
                    Some(i) => out!("  {} ↦ P{} ({} objects)", x, i, spc.primes[*i].count_ones()),
                    None => out!("  {} ↦ not a prime", x),
                }
            }
            out!("every proper ideal prime: {}", spc.every_ideal_prime);
            out!("X → Spc homeomorphism: {}", spc.witness.holds());
        }
    }
    if holds {
        Ok(())
    } else {
        Err(Failure::Math)
    }
}

/// The primes labelled `P(x)` by the point of `X` mapping to them.
fn spc_by_points(assignment: &SupportAssignment, spc: &Spectrum) -> std::result::Result<FiniteZariski, Failure> {
    let n = spc.space.len();
    let mut labels: Vec<String> = (0..n).map(|i| format!("P{}", i)).collect();
    for (x, image) in assignment.space.labels().iter().zip(&spc.witness.map) {
        if let Some(i) = image {
            labels[*i] = format!("P({})", x);
        }
    }
    let le = (0..n).map(|x| (0..n).map(|y| spc.space.le(x, y)).collect()).collect();
    Ok(FiniteZariski::new(labels, le, Vec::new())?)
}

fn h0(cli: &Cli, src: &str, k: usize, euler: bool) -> Outcome {
    let f = format(cli, Format::Text, &[Format::Text, Format::Json])?;
    let lambda = weight(src)?;
    let p = Parabolic::new(lambda.m(), lambda.n(), k)?;
    let r = h0_character(&lambda, &p, euler)?;
    match f {
        Format::Json => print_json(&r.to_json()),
        _ => {
            let mode = match r.mode {
                H0Mode::Certified => "certified",
                H0Mode::EulerOnly => "Euler characteristic only",
            };
            out!("λ = {}, Levi shape {:?}, {}", lambda, p.levi_shape(), mode);
            out!("gaps exceed mn: {}", r.gap_hypothesis);
            let show = |label: &str, c: &supertt::bwb::CharacterElement| {
                out!("{} (dimension {}):", label, c.dim().map_or("?".into(), |d| d.to_string()));
                for (w, mult) in c.terms() {
                    out!("  {:>3} × L{:?}", mult, w);
                }
            };
            match &r.h0 {
                Some(h) => show("H⁰", h),
                None => show("Euler characteristic", &r.euler),
            }
            Ok(())
        }
    }
}

fn module(cli: &Cli, kind: ModuleKind, src: &str) -> Outcome {
    format(cli, Format::Json, &[Format::Json])?;
    let lambda = weight(src)?;
    let module = match kind {
        ModuleKind::Kac => kac_module_f(&lambda)?,
        ModuleKind::Simple => simple_module_f(&lambda)?,
    };
    print_json(&module.to_json())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        assert_eq!(exit_code(&Failure::Math), 1);
        assert_eq!(exit_code(&Failure::Error(Error::OracleDisagreement("x".into()), None)), 1);
        assert_eq!(exit_code(&Failure::Error(Error::Budget(7), None)), 3);
        assert_eq!(exit_code(&Failure::Error(Error::Parse { pos: 0, msg: "x".into() }, None)), 2);
        assert_eq!(exit_code(&Failure::Usage("x".into())), 2);
    }

    #[test]
    fn caret_counts_characters() {
        assert_eq!(caret_column("Z(X1)", 2), 2);
        assert_eq!(caret_column("Σ Z(X1)", 3), 2);
        assert_eq!(caret_column("ab", 10), 2);
    }
}
