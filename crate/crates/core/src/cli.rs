//! `qjunta` command-line harness.
//!
//! Exit codes: 0 success, 1 bad invocation or function spec, 2 validation
//! failure. Relative `--out` paths resolve against `$QJUNTA_OUTPUT_DIR` when
//! it is set.

use crate::boolfn::{parse_anf, TruthTable, VarIndex};
use crate::generators::{GeneratorRegistry, GeneratorSpec};
use crate::golden;
use crate::junta::{test_all_variables, test_variable, TestConfig, TestReport, Verdict};
use crate::rng::{derive_seed, trial_rng, trial_seed};
use crate::search::DEFAULT_BUDGET_MULTIPLIER;
use crate::statevec::check_width;
use crate::sweep::{self, SweepSpec};
use crate::validate::{run_validation, ValidateOptions};
use crate::Error;
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

pub const OUTPUT_DIR_ENV: &str = "QJUNTA_OUTPUT_DIR";

/// Stream from which `test --gen` draws its function.
pub const FIXTURE_STREAM: u64 = u64::MAX;

pub const REPORT_CSV_HEADER: &str =
    "variable,verdict,witness_hex,shortcut_hit,g_queries,f_queries,rounds,seed";
pub const TRACE_CSV_HEADER: &str = "variable,trial,round,m,s,outcome_hex,g,cumulative_iterations";

#[derive(Debug, Parser)]
#[command(
    name = "qjunta",
    version,
    about = "Quantum junta-variable tester, simulated exactly"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Test one or all variables of a function.
    Test(TestArgs),
    /// Check the closed-form model against the simulator and other invariants.
    Validate(ValidateArgs),
    /// Query-count and verdict-rate sweep over register widths.
    Sweep(SweepArgs),
    /// List the named function generators.
    Generators,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
#[command(group = clap::ArgGroup::new("source").required(true).args(["function", "table", "generator"]))]
#[command(group = clap::ArgGroup::new("target").required(true).args(["var", "all"]))]
pub struct TestArgs {
    /// Function in ANF, e.g. "x0x1 ^ x2 ^ 1".
    #[arg(long = "fn", value_name = "ANF")]
    pub function: Option<String>,

    /// Hex truth table with explicit arity: `--table n=3 0x96`.
    #[arg(long, num_args = 2, value_names = ["n=N", "HEX"])]
    pub table: Option<Vec<String>>,

    /// Named generator, `name[:param]`.
    #[arg(long = "gen", value_name = "NAME[:PARAM]")]
    pub generator: Option<String>,

    /// Number of variables (required with --gen, optional with --fn).
    #[arg(long)]
    pub n: Option<usize>,

    /// Variable index to test.
    #[arg(long)]
    pub var: Option<usize>,

    /// Test every variable.
    #[arg(long)]
    pub all: bool,

    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    pub trials: u64,

    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    #[command(flatten)]
    pub budget: BudgetArgs,

    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,

    /// Report file (default: stdout).
    #[arg(long)]
    pub out: Option<PathBuf>,

    /// Per-round trace CSV.
    #[arg(long)]
    pub trace_out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BudgetArgs {
    /// Post-warm-up iteration allowance, in units of sqrt(N).
    #[arg(long, default_value_t = DEFAULT_BUDGET_MULTIPLIER)]
    pub budget_multiplier: f64,

    /// Override the number of warm-up rounds.
    #[arg(long)]
    pub warmup_rounds: Option<u64>,
}

impl BudgetArgs {
    fn config(&self, seed: u64, trials: u64) -> TestConfig {
        TestConfig {
            budget_multiplier: self.budget_multiplier,
            warmup_rounds: self.warmup_rounds,
            seed,
            trials,
        }
    }
}

#[derive(Debug, Args)]
pub struct ValidateArgs {
    /// Largest register width on the grid.
    #[arg(long, default_value_t = 8)]
    pub max_n: usize,

    /// Compare the simulator against a golden grid file.
    #[arg(long)]
    pub golden: Option<PathBuf>,

    /// Write the golden grid for --max-n to this path.
    #[arg(long)]
    pub write_golden: Option<PathBuf>,

    /// Only print the (n, M, q*, P_s) table.
    #[arg(long = "success-table", alias = "eq6-only")]
    pub success_only: bool,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long, default_value_t = 4)]
    pub n_min: usize,

    #[arg(long, default_value_t = 10)]
    pub n_max: usize,

    /// Fixture generators, comma separated.
    #[arg(
        long,
        value_delimiter = ',',
        default_value = "random-junta,single-term-m"
    )]
    pub fixtures: Vec<String>,

    #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..))]
    pub trials: u64,

    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    #[command(flatten)]
    pub budget: BudgetArgs,

    /// CSV file (default: stdout).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Spec(String),
    #[error("{0}")]
    Validation(String),
    #[error("I/O error: {0}")]
    Io(#[from] io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Spec(_) | CliError::Io(_) => 1,
            CliError::Validation(_) => 2,
        }
    }
}

fn spec_err(context: &str, source: &str, err: Error) -> CliError {
    match err {
        Error::Parse { column, .. } if !source.is_empty() => CliError::Spec(format!(
            "{context}: {err}\n  {source}\n  {caret:>column$}",
            caret = "^"
        )),
        _ => CliError::Spec(format!("{context}: {err}")),
    }
}

/// Parses `args` and runs; returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    let stdout = io::stdout();
    let stderr = io::stderr();
    match run(cli, &mut stdout.lock(), &mut stderr.lock()) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    match cli.command {
        Command::Test(args) => cmd_test(&args, out, err),
        Command::Validate(args) => cmd_validate(&args, out, err),
        Command::Sweep(args) => cmd_sweep(&args, out, err),
        Command::Generators => {
            let reg = GeneratorRegistry::with_builtins();
            for name in reg.names() {
                writeln!(out, "{name:<14} {}", reg.get(name).unwrap().description())?;
            }
            Ok(())
        }
    }
}

fn resolve_output(path: &Path) -> PathBuf {
    match std::env::var_os(OUTPUT_DIR_ENV) {
        Some(dir) if path.is_relative() => Path::new(&dir).join(path),
        _ => path.to_path_buf(),
    }
}

fn with_output<F>(path: Option<&Path>, out: &mut dyn Write, body: F) -> Result<(), CliError>
where
    F: FnOnce(&mut dyn Write) -> io::Result<()>,
{
    match path {
        Some(p) => {
            let p = resolve_output(p);
            if let Some(parent) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
                std::fs::create_dir_all(parent)?;
            }
            let mut w = BufWriter::new(File::create(&p)?);
            body(&mut w)?;
            w.flush()?;
        }
        None => body(out)?,
    }
    Ok(())
}

/// Builds the black box named by the test arguments.
pub fn load_function(args: &TestArgs) -> Result<TruthTable, CliError> {
    let table = if let Some(src) = &args.function {
        parse_anf(src, args.n)
            .map_err(|e| spec_err("--fn", src, e))?
            .to_truth_table()
            .map_err(|e| spec_err("--fn", "", e))?
    } else if let Some(parts) = &args.table {
        let arity = parts[0]
            .strip_prefix("n=")
            .and_then(|v| v.parse::<usize>().ok())
            .ok_or_else(|| {
                CliError::Spec(format!("--table: expected `n=<arity>`, got `{}`", parts[0]))
            })?;
        TruthTable::from_hex(arity, &parts[1]).map_err(|e| spec_err("--table", &parts[1], e))?
    } else if let Some(g) = &args.generator {
        let spec: GeneratorSpec = g.parse().map_err(|e| spec_err("--gen", g, e))?;
        let n = args
            .n
            .ok_or_else(|| CliError::Spec("--gen requires --n".into()))?;
        let target = args.var.map(VarIndex::new);
        let mut rng = trial_rng(derive_seed(args.seed, FIXTURE_STREAM));
        GeneratorRegistry::with_builtins()
            .generate(&spec, n, target, &mut rng)
            .and_then(|f| f.to_truth_table())
            .map_err(|e| spec_err("--gen", "", e))?
    } else {
        return Err(CliError::Spec("no function source given".into()));
    };
    check_width(table.arity()).map_err(|e| spec_err("function", "", e))?;
    Ok(table)
}

fn report_csv_line(r: &TestReport) -> String {
    let rec = r.record();
    format!(
        "{},{},{},{},{},{},{},{}",
        rec.variable,
        rec.verdict,
        rec.witness_hex.unwrap_or_default(),
        rec.shortcut_hit,
        rec.g_queries,
        rec.f_queries,
        rec.rounds,
        rec.seed
    )
}

/// Runs every trial; reports are ordered by `(variable, trial)`.
pub fn run_trials(f: &TruthTable, args: &TestArgs) -> Result<Vec<(u64, TestReport)>, CliError> {
    if let Some(v) = args.var {
        VarIndex::new(v)
            .check(f.arity())
            .map_err(|e| spec_err("--var", "", e))?;
    }
    let per_trial: Vec<Vec<TestReport>> = (0..args.trials)
        .into_par_iter()
        .map(|t| {
            let cfg = args.budget.config(trial_seed(args.seed, t), args.trials);
            match args.var {
                Some(v) => test_variable(f, VarIndex::new(v), &cfg).map(|r| vec![r]),
                None => test_all_variables(f, &cfg),
            }
        })
        .collect::<Result<_, _>>()
        .map_err(|e| spec_err("test", "", e))?;
    let mut flat: Vec<(u64, TestReport)> = per_trial
        .into_iter()
        .enumerate()
        .flat_map(|(t, rs)| rs.into_iter().map(move |r| (t as u64, r)))
        .collect();
    flat.sort_by_key(|(t, r)| (r.variable, *t));
    Ok(flat)
}

fn cmd_test(args: &TestArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    args.budget
        .config(args.seed, args.trials)
        .budget(1)
        .map_err(|e| spec_err("--budget-multiplier", "", e))?;
    let f = load_function(args)?;
    let reports = run_trials(&f, args)?;

    with_output(args.out.as_deref(), out, |w| {
        match args.format {
            Format::Csv => {
                writeln!(w, "{REPORT_CSV_HEADER}")?;
                for (_, r) in &reports {
                    writeln!(w, "{}", report_csv_line(r))?;
                }
            }
            Format::Json => {
                for (_, r) in &reports {
                    serde_json::to_writer(&mut *w, &r.record())?;
                    writeln!(w)?;
                }
            }
        }
        Ok(())
    })?;

    if let Some(path) = &args.trace_out {
        with_output(Some(path), out, |w| {
            writeln!(w, "{TRACE_CSV_HEADER}")?;
            for (t, r) in &reports {
                for rec in &r.trace {
                    writeln!(
                        w,
                        "{},{},{},{},{},{:#x},{},{}",
                        r.variable.get(),
                        t,
                        rec.round,
                        rec.m,
                        rec.s,
                        rec.outcome,
                        rec.hit as u8,
                        rec.cumulative_iterations
                    )?;
                }
            }
            Ok(())
        })?;
    }

    for v in 0..f.arity() {
        let rs: Vec<&TestReport> = reports
            .iter()
            .map(|(_, r)| r)
            .filter(|r| r.variable.get() == v)
            .collect();
        if rs.is_empty() {
            continue;
        }
        let flagged = rs.iter().filter(|r| r.verdict == Verdict::NotJunta).count();
        let mean_g = rs.iter().map(|r| r.g_queries()).sum::<u64>() as f64 / rs.len() as f64;
        writeln!(
            err,
            "x{v}: NotJunta {flagged}/{} ({:.4}), Junta {} (budget exhausted), mean g-queries {mean_g:.2}",
            rs.len(),
            flagged as f64 / rs.len() as f64,
            rs.len() - flagged,
        )?;
    }
    Ok(())
}

fn cmd_validate(
    args: &ValidateArgs,
    out: &mut dyn Write,
    _err: &mut dyn Write,
) -> Result<(), CliError> {
    if args.max_n < 2 || args.max_n > crate::statevec::MAX_SIM_QUBITS {
        return Err(CliError::Spec(format!(
            "--max-n must be in 2..={}",
            crate::statevec::MAX_SIM_QUBITS
        )));
    }
    if let Some(path) = &args.write_golden {
        let rows = golden::generate_rows(args.max_n).map_err(|e| spec_err("golden", "", e))?;
        with_output(Some(path), out, |w| {
            golden::write_csv(&rows, w).map_err(io::Error::other)
        })?;
    }
    let golden = match &args.golden {
        Some(path) => {
            let file = File::open(path)?;
            Some(golden::read_csv(file).map_err(|e| spec_err(&path.display().to_string(), "", e))?)
        }
        None => None,
    };
    let opts = ValidateOptions {
        max_n: args.max_n,
        golden,
        success_only: args.success_only,
    };
    let report = run_validation(&opts).map_err(|e| spec_err("validate", "", e))?;

    if args.success_only {
        writeln!(out, "n,M,q*,P_s")?;
        for r in &report.success_table {
            writeln!(
                out,
                "{},{},{},{:.14e}",
                r.n, r.matches, r.q_star, r.p_success
            )?;
        }
        return Ok(());
    }

    writeln!(
        out,
        "{:<34} {:>12} {:>10}  status  detail",
        "check", "worst", "tolerance"
    )?;
    for c in &report.checks {
        let status = match (c.passed, c.informational) {
            (true, _) => "ok",
            (false, true) => "note",
            (false, false) => "FAIL",
        };
        writeln!(
            out,
            "{:<34} {:>12.3e} {:>10.1e}  {:<6}  {}",
            c.name, c.worst, c.tolerance, status, c.detail
        )?;
    }
    for v in &report.golden_violations {
        writeln!(out, "violation: {v}")?;
    }
    if report.passed() {
        Ok(())
    } else {
        let failed: Vec<&str> = report
            .checks
            .iter()
            .filter(|c| !c.passed && !c.informational)
            .map(|c| c.name)
            .collect();
        let mut msg = format!("validation failed: {}", failed.join(", "));
        if let Some(v) = report.golden_violations.first() {
            msg.push_str(&format!("; first violation {v}"));
        }
        Err(CliError::Validation(msg))
    }
}

fn cmd_sweep(args: &SweepArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    if args.n_min < 1 || args.n_min > args.n_max || args.n_max > crate::statevec::MAX_SIM_QUBITS {
        return Err(CliError::Spec(format!(
            "need 1 <= --n-min <= --n-max <= {}",
            crate::statevec::MAX_SIM_QUBITS
        )));
    }
    let registry = GeneratorRegistry::with_builtins();
    let fixtures = args
        .fixtures
        .iter()
        .map(|s| {
            let spec: GeneratorSpec = s.parse().map_err(|e| spec_err("--fixtures", s, e))?;
            registry
                .get(&spec.name)
                .map_err(|e| spec_err("--fixtures", "", e))?;
            Ok(spec)
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    let config = args.budget.config(args.seed, args.trials);
    config
        .budget(1)
        .map_err(|e| spec_err("--budget-multiplier", "", e))?;
    let spec = SweepSpec {
        n_min: args.n_min,
        n_max: args.n_max,
        fixtures,
        trials: args.trials,
        seed: args.seed,
        config,
    };
    let rows = sweep::run_sweep(&registry, &spec).map_err(|e| spec_err("sweep", "", e))?;
    with_output(args.out.as_deref(), out, |w| sweep::write_csv(&rows, w))?;

    for fx in &spec.fixtures {
        let name = fx.to_string();
        let pts: Vec<(f64, f64)> = rows
            .iter()
            .filter(|r| r.fixture == name && r.mean_g_queries > 0.0)
            .map(|r| ((1u64 << r.n) as f64, r.mean_g_queries))
            .collect();
        if pts.len() >= 2 {
            writeln!(
                err,
                "{name}: log-log exponent of mean g-queries vs N = {:.3}",
                sweep::fit_loglog_exponent(&pts)
            )?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (Result<(), CliError>, String, String) {
        let cli =
            Cli::try_parse_from(std::iter::once("qjunta").chain(args.iter().copied())).unwrap();
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let res = run(cli, &mut out, &mut err);
        (
            res,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn linear_variable_always_flagged() {
        let (res, out, _) = run_args(&[
            "test",
            "--fn",
            "x0x1 ^ x2",
            "--var",
            "2",
            "--trials",
            "100",
            "--seed",
            "7",
        ]);
        res.unwrap();
        let lines: Vec<_> = out.lines().collect();
        assert_eq!(lines[0], REPORT_CSV_HEADER);
        assert_eq!(lines.len(), 101);
        assert!(lines[1..]
            .iter()
            .all(|l| l.starts_with("2,NotJunta,0x0,true,1,2,0,")));
        assert!(lines[1].ends_with(",7"));
        assert!(lines[100].ends_with(",106"));
    }

    #[test]
    fn json_lines_parse() {
        let (res, out, _) = run_args(&[
            "test", "--table", "n=2", "0x8", "--all", "--trials", "3", "--format", "json",
        ]);
        res.unwrap();
        let recs: Vec<crate::junta::ReportRecord> = out
            .lines()
            .map(|l| serde_json::from_str(l).unwrap())
            .collect();
        assert_eq!(recs.len(), 6);
        assert_eq!(
            recs.iter().map(|r| r.variable).collect::<Vec<_>>(),
            [0, 0, 0, 1, 1, 1]
        );
    }

    #[test]
    fn parse_error_points_at_column() {
        let (res, _, _) = run_args(&["test", "--fn", "x0 ^ ^ x1", "--var", "0"]);
        let e = res.unwrap_err();
        assert_eq!(e.exit_code(), 1);
        let msg = e.to_string();
        assert!(msg.contains("line 1, column 6"), "{msg}");
        assert!(msg.ends_with("\n  x0 ^ ^ x1\n       ^"), "{msg:?}");
    }

    #[test]
    fn arity_over_cap_reports_cap() {
        let (res, _, _) = run_args(&["test", "--fn", "x15", "--var", "0"]);
        let msg = res.unwrap_err().to_string();
        assert!(msg.contains("cap of 14"), "{msg}");
    }

    #[test]
    fn variable_out_of_range() {
        let (res, _, _) = run_args(&["test", "--fn", "x0x1", "--var", "2"]);
        assert_eq!(res.unwrap_err().exit_code(), 1);
    }

    #[test]
    fn generator_source() {
        let (res, out, _) = run_args(&[
            "test",
            "--gen",
            "single-term-m:3",
            "--n",
            "5",
            "--var",
            "1",
            "--seed",
            "2",
        ]);
        res.unwrap();
        assert_eq!(out.lines().count(), 2);
        let (res, _, _) = run_args(&["test", "--gen", "bogus", "--n", "5", "--var", "1"]);
        assert!(res.unwrap_err().to_string().contains("unknown generator"));
        let (res, _, _) = run_args(&["test", "--gen", "majority", "--var", "1"]);
        assert!(res.unwrap_err().to_string().contains("--n"));
    }

    #[test]
    fn success_only_table() {
        let (res, out, _) = run_args(&["validate", "--max-n", "3", "--success-table"]);
        res.unwrap();
        assert!(out.starts_with("n,M,q*,P_s\n"));
        assert!(out.contains("\n3,8,1,1.00000000000000e0\n"), "{out}");
    }

    #[test]
    fn usage_errors_exit_one() {
        assert_eq!(main_with_args(["qjunta", "test", "--fn", "x0"]), 1);
        assert_eq!(main_with_args(["qjunta", "frobnicate"]), 1);
    }
}
