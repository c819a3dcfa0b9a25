//! The `whalab` command line.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::action::{
    build_action, induce_bimodule, verify_action, verify_bimodule, verify_monoidal_structure,
    verify_pointed_coefficients, HActionOnPaths, DEFAULT_SEED,
};
use crate::error::{Error, Result};
use crate::fusion::{verify_cocycle, verify_pentagon_with, verify_perron_frobenius};
use crate::io::{load_bundle, to_json_string, wha_to_file, write_text, CategoryBundle, RunReport};
use crate::module_cat::verify_module_pentagon_with;
use crate::quiver::{path_algebra, quiver_from_endofunctor, EndofunctorSpec};
use crate::report::Report;
use crate::wha::{build_wha, verify_target_subalgebra, verify_wha_axioms_with, WeakHopfAlgebraData};
use crate::{Exec, Tolerance};

#[derive(Debug, Parser)]
#[command(name = "whalab", version, about = "Weak Hopf algebras from fusion category data")]
pub struct Cli {
    /// Absolute tolerance for floating-point checks.
    #[arg(long, global = true, env = "WHALAB_TOL", default_value_t = 1e-9)]
    pub tol: f64,
    /// Highest path degree to build.
    #[arg(long, global = true, default_value_t = 4)]
    pub max_degree: usize,
    /// Output file for built artifacts.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// JSON run report destination.
    #[arg(long, global = true)]
    pub report: Option<PathBuf>,
    /// Seed for sampled checks.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Run the verifiers on one thread.
    #[arg(long, global = true)]
    pub sequential: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run a verification suite.
    #[command(subcommand)]
    Verify(VerifyCommand),
    /// Build an artifact.
    #[command(subcommand)]
    Build(BuildCommand),
    /// Print the quiver of an endofunctor of the module category.
    Quiver {
        #[command(flatten)]
        target: FunctorArgs,
        #[arg(long, value_enum, default_value_t = QuiverFormat::Dot)]
        format: QuiverFormat,
    },
    /// Build the path action and run the action suite, bimodules included.
    Action(FunctorArgs),
    /// Write the canonical JSON form of a bundle.
    Export(BundleArg),
}

#[derive(Debug, Subcommand)]
pub enum VerifyCommand {
    Ring(BundleArg),
    Pentagon(BundleArg),
    ModulePentagon(BundleArg),
    Cocycle(BundleArg),
    Wha(BundleArg),
    Action(FunctorArgs),
}

#[derive(Debug, Subcommand)]
pub enum BuildCommand {
    Wha(BundleArg),
}

#[derive(Debug, Args)]
pub struct BundleArg {
    /// Bundle file or built-in name such as builtin:fib, builtin:psu2:7, builtin:vec:Z3:q1.
    pub bundle: String,
}

#[derive(Debug, Args)]
pub struct FunctorArgs {
    #[command(flatten)]
    pub bundle: BundleArg,
    /// Endofunctor as simple labels or indices with optional multiplicities, e.g. `tau` or `tau:2,1`.
    #[arg(long)]
    pub functor: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum QuiverFormat {
    Dot,
    Json,
}

/// Parses `tau`, `tau:2,1`, `X_2` or `2`; first non-unit simple when absent.
pub fn parse_functor(bundle: &CategoryBundle, spec: Option<&str>) -> Result<EndofunctorSpec> {
    let ring = &bundle.ring;
    let Some(spec) = spec else {
        let x = if ring.rank() > 1 {
            (ring.unit + 1) % ring.rank()
        } else {
            ring.unit
        };
        return Ok(EndofunctorSpec::single(x));
    };
    let mut mult = BTreeMap::new();
    for part in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (name, k) = match part.rsplit_once(':') {
            Some((n, k)) => (n, k.parse::<u32>().map_err(|_| bad_functor(part))?),
            None => (part, 1),
        };
        let x = ring
            .index_of(name)
            .or_else(|| name.parse().ok())
            .or_else(|| name.strip_prefix("X_").and_then(|s| s.parse().ok()))
            .filter(|&x| x < ring.rank())
            .ok_or_else(|| bad_functor(part))?;
        *mult.entry(x).or_insert(0) += k;
    }
    EndofunctorSpec::new(mult).map_err(|_| bad_functor(spec))
}

fn bad_functor(part: &str) -> Error {
    Error::Validation {
        location: "--functor".into(),
        message: format!("cannot read `{part}` as a simple with optional multiplicity"),
    }
}

/// 0 when every check passes, 1 for a failed check, 2 for bad input.
pub fn exit_code(outcome: &Result<Report>) -> i32 {
    match outcome {
        Ok(r) if r.passed() => 0,
        Ok(_) => 1,
        Err(Error::Verification(_) | Error::Precondition(_) | Error::Singular(_)) => 1,
        Err(_) => 2,
    }
}

struct Ctx {
    tol: Tolerance,
    exec: Exec,
    cli: Cli,
}

/// Parses arguments, runs the command, writes the report, and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let tol = match Tolerance::new(cli.tol) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    let exec = if cli.sequential {
        Exec::Sequential
    } else {
        Exec::Parallel
    };
    let ctx = Ctx { tol, exec, cli };
    let start = Instant::now();
    let mut inputs = Vec::new();
    let mut digest = String::new();
    let (name, outcome) = dispatch(&ctx, &mut inputs, &mut digest);
    let code = exit_code(&outcome);
    match &outcome {
        Ok(rep) if artifact_on_stdout(&ctx.cli) => print_report(rep, &mut std::io::stderr()),
        Ok(rep) => print_report(rep, &mut std::io::stdout()),
        Err(e) => eprintln!("error: {e}"),
    }
    if let Some(path) = &ctx.cli.report {
        let rep = match outcome {
            Ok(r) => r,
            Err(e) => {
                let mut r = Report::new();
                r.notes.push(format!("error: {e}"));
                r.push(crate::report::Check::exact("run", 1, vec![e.to_string()]));
                r
            }
        };
        let run = RunReport::new(name, inputs, digest, rep, start.elapsed().as_secs_f64());
        if let Err(e) = run.write(path) {
            eprintln!("error: {e}");
            return 2;
        }
    }
    code
}

fn print_report(rep: &Report, out: &mut dyn Write) {
    for c in &rep.checks {
        let verdict = match (c.pass, c.informational) {
            (true, _) => "PASS",
            (false, true) => "NOTE",
            (false, false) => "FAIL",
        };
        let _ = write!(
            out,
            "{verdict} {:<36} dev={:.2e} n={}",
            c.name, c.max_deviation, c.instances
        );
        let _ = match &c.counterexample {
            Some(ce) if !c.pass => writeln!(out, " first failure: {ce}"),
            _ => writeln!(out),
        };
    }
    for n in &rep.notes {
        let _ = writeln!(out, "note: {n}");
    }
    let _ = writeln!(
        out,
        "{}",
        if rep.passed() {
            "all checks passed"
        } else {
            "some checks failed"
        }
    );
}

fn dispatch(ctx: &Ctx, inputs: &mut Vec<String>, digest: &mut String) -> (String, Result<Report>) {
    let mut load = |spec: &str| -> Result<CategoryBundle> {
        inputs.push(spec.to_string());
        let b = load_bundle(spec)?;
        *digest = b.digest.clone();
        Ok(b)
    };
    match &ctx.cli.command {
        Command::Verify(v) => match v {
            VerifyCommand::Ring(a) => ("verify ring".into(), load(&a.bundle).map(|b| verify_ring(ctx, &b))),
            VerifyCommand::Pentagon(a) => (
                "verify pentagon".into(),
                load(&a.bundle).and_then(|b| pentagon(ctx, &b)),
            ),
            VerifyCommand::ModulePentagon(a) => (
                "verify module-pentagon".into(),
                load(&a.bundle).and_then(|b| module_pentagon(ctx, &b)),
            ),
            VerifyCommand::Cocycle(a) => ("verify cocycle".into(), load(&a.bundle).and_then(|b| cocycle(&b))),
            VerifyCommand::Wha(a) => (
                "verify wha".into(),
                load(&a.bundle).and_then(|b| verify_wha(ctx, &b).map(|r| r.1)),
            ),
            VerifyCommand::Action(a) => (
                "verify action".into(),
                load(&a.bundle.bundle).and_then(|b| action_suite(ctx, &b, a.functor.as_deref(), false)),
            ),
        },
        Command::Build(BuildCommand::Wha(a)) => ("build wha".into(), load(&a.bundle).and_then(|b| build(ctx, &b))),
        Command::Quiver { target, format } => (
            "quiver".into(),
            load(&target.bundle.bundle).and_then(|b| quiver(ctx, &b, target.functor.as_deref(), *format)),
        ),
        Command::Action(a) => (
            "action".into(),
            load(&a.bundle.bundle).and_then(|b| action_suite(ctx, &b, a.functor.as_deref(), true)),
        ),
        Command::Export(a) => ("export".into(), load(&a.bundle).and_then(|b| export(ctx, &b))),
    }
}

fn artifact_on_stdout(cli: &Cli) -> bool {
    cli.out.is_none()
        && matches!(
            cli.command,
            Command::Build(_) | Command::Quiver { .. } | Command::Export(_)
        )
}

fn emit(ctx: &Ctx, text: &str) -> Result<()> {
    match &ctx.cli.out {
        Some(p) => write_text(p, text),
        None => {
            let _ = std::io::stdout().write_all(text.as_bytes());
            Ok(())
        }
    }
}

fn verify_ring(ctx: &Ctx, b: &CategoryBundle) -> Report {
    let mut rep = b.ring.verify(ctx.tol);
    rep.push(verify_perron_frobenius(
        &b.ring,
        Tolerance::new(1e-6).expect("positive"),
    ));
    rep
}

fn pentagon(ctx: &Ctx, b: &CategoryBundle) -> Result<Report> {
    let mut rep = Report::new();
    rep.push(verify_pentagon_with(&b.ring, &b.f, ctx.tol, ctx.exec)?);
    Ok(rep)
}

fn module_pentagon(ctx: &Ctx, b: &CategoryBundle) -> Result<Report> {
    let mut rep = Report::new();
    rep.push(verify_module_pentagon_with(
        &b.ring, &b.f, &b.module, ctx.tol, ctx.exec,
    )?);
    Ok(rep)
}

fn cocycle(b: &CategoryBundle) -> Result<Report> {
    match &b.cocycle {
        Some(c) => Ok(verify_cocycle(c)),
        None => Err(Error::Validation {
            location: "cocycle".into(),
            message: format!("bundle `{}` has no cocycle section", b.name),
        }),
    }
}

fn verify_wha(ctx: &Ctx, b: &CategoryBundle) -> Result<(WeakHopfAlgebraData, Report)> {
    let mut rep = pentagon(ctx, b)?;
    rep.extend(module_pentagon(ctx, b)?);
    let h = build_wha(&b.ring, &b.f, &b.module, ctx.tol)?;
    rep.notes.push(format!("dim H = {}", h.dim()));
    rep.extend(verify_wha_axioms_with(&h, ctx.tol, ctx.exec));
    rep.extend(verify_target_subalgebra(&h, b.module.rank(), ctx.tol)?);
    Ok((h, rep))
}

fn build(ctx: &Ctx, b: &CategoryBundle) -> Result<Report> {
    let (h, rep) = verify_wha(ctx, b)?;
    emit(ctx, &to_json_string(&wha_to_file(&h, &rep)))?;
    Ok(rep)
}

fn quiver(ctx: &Ctx, b: &CategoryBundle, functor: Option<&str>, format: QuiverFormat) -> Result<Report> {
    let q = quiver_from_endofunctor(&b.module, &parse_functor(b, functor)?)?;
    let text = match format {
        QuiverFormat::Dot => q.to_dot(),
        QuiverFormat::Json => {
            let mut v = q.to_json();
            v["graded_dims"] =
                serde_json::to_value(path_algebra(&q, ctx.cli.max_degree).graded_dims()).expect("integers serialize");
            to_json_string(&v)
        }
    };
    emit(ctx, &text)?;
    let mut rep = Report::new();
    rep.notes
        .push(format!("{} vertices, {} edges", q.vertices.len(), q.edges.len()));
    Ok(rep)
}

fn build_path_action(ctx: &Ctx, b: &CategoryBundle, functor: Option<&str>) -> Result<HActionOnPaths> {
    let spec = parse_functor(b, functor)?;
    let h = build_wha(&b.ring, &b.f, &b.module, ctx.tol)?;
    build_action(&b.ring, &b.f, &b.module, &h, &spec, ctx.cli.max_degree)
}

fn action_suite(ctx: &Ctx, b: &CategoryBundle, functor: Option<&str>, full: bool) -> Result<Report> {
    let a = build_path_action(ctx, b, functor)?;
    let mut rep = verify_action(&a, ctx.tol, ctx.cli.max_degree, ctx.cli.seed, ctx.exec);
    if !full {
        return Ok(rep);
    }
    if let Some(omega) = &b.cocycle {
        for mut c in verify_pointed_coefficients(&a, omega, ctx.tol)?.checks {
            // The literal ω(g, d⁻¹, g⁻¹a) reading is reported, not enforced.
            if c.name == "cocycle_coefficients" {
                c = c.informational();
            }
            rep.push(c);
        }
    }
    let r = b.ring.rank();
    for x in 0..r {
        let bim = induce_bimodule(&a, x)?;
        for mut c in verify_bimodule(&bim, ctx.tol).checks {
            c.name = format!("{}[{}]", c.name, b.ring.simples[x]);
            rep.push(c);
        }
        for y in 0..r {
            let (_, jr) = verify_monoidal_structure(&a, x, y, ctx.tol)?;
            for mut c in jr.checks {
                c.name = format!("{}[{},{}]", c.name, b.ring.simples[x], b.ring.simples[y]);
                rep.push(c);
            }
        }
    }
    Ok(rep)
}

fn export(ctx: &Ctx, b: &CategoryBundle) -> Result<Report> {
    emit(ctx, &to_json_string(&b.to_file()))?;
    let mut rep = Report::new();
    rep.notes.push(format!("digest {}", b.digest));
    Ok(rep)
}

/// Convenience for tests: run with a report path and parse it back.
pub fn run_with_report(args: &[&str], report: &Path) -> (i32, Option<RunReport>) {
    let mut full: Vec<String> = vec!["whalab".into()];
    full.extend(args.iter().map(|s| s.to_string()));
    full.push("--report".into());
    full.push(report.display().to_string());
    let code = run(full);
    let parsed = std::fs::read_to_string(report)
        .ok()
        .and_then(|s| serde_json::from_str(&s).ok());
    (code, parsed)
}
