//! Command-line driver: run the verification suites against a seeded
//! configuration, print the closed-form half-space solution tables, and
//! dump representation matrices and Clifford triples.
//!
//! Exit codes: `0` when every check passes, `1` when the suites ran but
//! some check failed, `2` for configuration or usage errors.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde_json::json;

use spinlab::killing::{half_space_table, HalfSpaceTable};
use spinlab::report::{render_csv, render_json, render_markdown};
use spinlab::su2::{Basis, Irrep, SpinLabel};
use spinlab::suite::{run_suites, PartialConfig, SuiteConfig, SuiteName};
use spinlab::{CliffordTriple, CMat};

#[derive(Parser)]
#[command(name = "spinlab", version, about = "Killing spinor and tensor verification on the three-dimensional model spaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the verification suites and emit a report.
    Verify(VerifyArgs),
    /// Print the closed-form solution table on the upper half-space.
    #[command(name = "solve-h3")]
    SolveH3(SolveH3Args),
    /// Dump the representation matrices at one level.
    Reps(RepsArgs),
    /// Dump the three Clifford map families at one level.
    Clifford(CliffordArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum BasisArg {
    Unitary,
    #[value(alias = "paper")]
    Triangular,
}

impl From<BasisArg> for Basis {
    fn from(b: BasisArg) -> Basis {
        match b {
            BasisArg::Unitary => Basis::Unitary,
            BasisArg::Triangular => Basis::Triangular,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Json,
    Csv,
    Markdown,
}

#[derive(Clone, Copy, ValueEnum)]
enum DumpFormat {
    Text,
    Json,
}

#[derive(Args)]
struct VerifyArgs {
    /// TOML file with any of: jmax, tolerance, samples, seed, basis, suites.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Sweep levels up to the doubled weight 2·jmax + 1.
    #[arg(long)]
    jmax: Option<u32>,
    /// Tolerance for sampled field equations.
    #[arg(long)]
    tol: Option<f64>,
    /// Sample points per sampled check.
    #[arg(long)]
    samples: Option<usize>,
    /// Seed for every generator (SPINLAB_SEED overrides the config file).
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_enum)]
    basis: Option<BasisArg>,
    /// Restrict to one suite; repeatable.
    #[arg(long = "suite")]
    suites: Vec<String>,
    #[arg(long, value_enum, default_value_t = ReportFormat::Json)]
    format: ReportFormat,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SolveH3Args {
    /// Tensor rank j; the solved level has doubled weight 2j + 1.
    #[arg(long)]
    j: u32,
    /// Killing number, one of +i/2, i/2, -i/2.
    #[arg(long, allow_hyphen_values = true)]
    mu: String,
    #[arg(long, value_enum, default_value_t = BasisArg::Unitary)]
    basis: BasisArg,
    #[arg(long, value_enum, default_value_t = DumpFormat::Text)]
    format: DumpFormat,
}

#[derive(Args)]
struct RepsArgs {
    /// Doubled highest weight of the level.
    #[arg(long = "two-s")]
    two_s: u32,
    #[arg(long, value_enum, default_value_t = BasisArg::Unitary)]
    basis: BasisArg,
    #[arg(long, value_enum, default_value_t = DumpFormat::Text)]
    format: DumpFormat,
}

#[derive(Args)]
struct CliffordArgs {
    /// Doubled highest weight of the base level.
    #[arg(long = "two-s")]
    two_s: u32,
    #[arg(long, value_enum, default_value_t = DumpFormat::Text)]
    format: DumpFormat,
}

/// Write to stdout, treating a closed pipe as a normal end of output.
fn emit(text: &str) {
    use std::io::Write;
    let _ = std::io::stdout().write_all(text.as_bytes());
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.exit_code() == 0 { 0 } else { 2 };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    let run = match cli.command {
        Command::Verify(args) => verify(args),
        Command::SolveH3(args) => solve_h3(args),
        Command::Reps(args) => reps(args),
        Command::Clifford(args) => clifford_dump(args),
    };
    match run {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn verify(args: VerifyArgs) -> Result<ExitCode, String> {
    let mut config = SuiteConfig::default();

    if let Some(path) = &args.config {
        let text = std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
        let partial: PartialConfig =
            toml::from_str(&text).map_err(|e| format!("bad config {}: {e}", path.display()))?;
        partial.apply_to(&mut config);
    }

    if let Ok(seed) = std::env::var("SPINLAB_SEED") {
        config.seed = seed
            .parse()
            .map_err(|_| format!("SPINLAB_SEED must be an unsigned integer, got {seed:?}"))?;
    }

    if let Some(v) = args.jmax {
        config.jmax = v;
    }
    if let Some(v) = args.tol {
        config.tolerance = v;
    }
    if let Some(v) = args.samples {
        config.samples = v;
    }
    if let Some(v) = args.seed {
        config.seed = v;
    }
    if let Some(v) = args.basis {
        config.basis = v.into();
    }
    if !args.suites.is_empty() {
        config.suites = args
            .suites
            .iter()
            .map(|s| SuiteName::from_str(s).map_err(|e| e.to_string()))
            .collect::<Result<BTreeSet<_>, _>>()?;
    }
    config.validate().map_err(|e| e.to_string())?;

    let reports = run_suites(&config).map_err(|e| e.to_string())?;
    let rendered = match args.format {
        ReportFormat::Json => render_json(&reports, &config),
        ReportFormat::Csv => render_csv(&reports),
        ReportFormat::Markdown => render_markdown(&reports, &config),
    };
    match &args.out {
        Some(path) => std::fs::write(path, &rendered)
            .map_err(|e| format!("cannot write {}: {e}", path.display()))?,
        None => emit(&rendered),
    }

    let all_passed = reports.iter().all(|r| r.all_passed());
    Ok(ExitCode::from(if all_passed { 0 } else { 1 }))
}

fn parse_mu(text: &str) -> Result<Complex64, String> {
    match text {
        "+i/2" | "i/2" => Ok(Complex64::new(0.0, 0.5)),
        "-i/2" => Ok(Complex64::new(0.0, -0.5)),
        other => Err(format!("unsupported killing number {other:?}; use +i/2 or -i/2")),
    }
}

/// `a + bi` with near-integer real and imaginary parts printed exactly.
fn coefficient_string(c: Complex64) -> String {
    let fmt = |x: f64| {
        if (x - x.round()).abs() < 1e-9 {
            format!("{}", x.round() as i64)
        } else {
            format!("{x:.6}")
        }
    };
    if c.im.abs() < 1e-12 {
        fmt(c.re)
    } else if c.re.abs() < 1e-12 {
        match fmt(c.im).as_str() {
            "1" => "i".into(),
            "-1" => "-i".into(),
            s => format!("{s}i"),
        }
    } else {
        format!("({}{}{}i)", fmt(c.re), if c.im >= 0.0 { "+" } else { "" }, fmt(c.im))
    }
}

fn half_power_string(q: i64) -> String {
    match q {
        0 => String::new(),
        q if q % 2 == 0 => format!("x^{}", q / 2),
        q => format!("x^({q}/2)"),
    }
}

fn table_term(table: &HalfSpaceTable, component: usize, entry: (Complex64, u32)) -> String {
    let (coefficient, z_power) = entry;
    let variable = if table.sign == 1 { "z" } else { "z̄" };
    let mut parts = Vec::new();
    let c = coefficient_string(coefficient);
    if c != "1" || z_power == 0 {
        parts.push(c);
    }
    match z_power {
        0 => {}
        1 => parts.push(variable.into()),
        p => parts.push(format!("{variable}^{p}")),
    }
    let x = half_power_string(table.x_half_powers[component]);
    if !x.is_empty() {
        parts.push(x);
    }
    if parts.is_empty() {
        parts.push("1".into());
    }
    parts.join("·")
}

fn solve_h3(args: SolveH3Args) -> Result<ExitCode, String> {
    let mu = parse_mu(&args.mu)?;
    let label = SpinLabel::new(2 * args.j + 1);
    let basis: Basis = args.basis.into();
    let table = half_space_table(label, mu, basis).map_err(|e| e.to_string())?;

    match args.format {
        DumpFormat::Text => {
            let mut buf = String::new();
            let _ = writeln!(
                buf,
                "half-space killing solutions: twoS = {} (j = {}), mu = {}, basis = {}",
                table.two_s,
                args.j,
                args.mu,
                basis_name(basis),
            );
            for (k, row) in table.entries.iter().enumerate() {
                let terms: Vec<String> = row
                    .iter()
                    .enumerate()
                    .map(|(i, entry)| match entry {
                        Some(e) => table_term(&table, i, *e),
                        None => "0".into(),
                    })
                    .collect();
                let _ = writeln!(buf, "C{k}: [ {} ]", terms.join(", "));
            }
            emit(&buf);
        }
        DumpFormat::Json => {
            let solutions: Vec<_> = table
                .entries
                .iter()
                .enumerate()
                .map(|(k, row)| {
                    let components: Vec<_> = row
                        .iter()
                        .map(|entry| match entry {
                            Some((c, p)) => json!({ "re": c.re, "im": c.im, "zPower": p }),
                            None => serde_json::Value::Null,
                        })
                        .collect();
                    json!({ "index": k, "components": components })
                })
                .collect();
            let doc = json!({
                "twoS": table.two_s,
                "j": args.j,
                "mu": args.mu,
                "basis": basis_name(basis),
                "variable": if table.sign == 1 { "z" } else { "zbar" },
                "xHalfPowers": table.x_half_powers,
                "solutions": solutions,
            });
            emit(&serde_json::to_string_pretty(&doc).expect("serializable"));
            emit("\n");
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn basis_name(b: Basis) -> &'static str {
    match b {
        Basis::Unitary => "unitary",
        Basis::Triangular => "triangular",
    }
}

fn matrix_json(m: &CMat) -> serde_json::Value {
    let rows: Vec<Vec<[f64; 2]>> = (0..m.nrows())
        .map(|r| (0..m.ncols()).map(|c| [m[(r, c)].re, m[(r, c)].im]).collect())
        .collect();
    json!(rows)
}

fn print_matrix(buf: &mut String, name: &str, m: &CMat) {
    let _ = writeln!(buf, "{name}:");
    for r in 0..m.nrows() {
        let row: Vec<String> = (0..m.ncols()).map(|c| coefficient_string(m[(r, c)])).collect();
        let _ = writeln!(buf, "  [ {} ]", row.join(", "));
    }
}

fn reps(args: RepsArgs) -> Result<ExitCode, String> {
    let basis: Basis = args.basis.into();
    let rep = Irrep::build(SpinLabel::new(args.two_s), basis);
    match args.format {
        DumpFormat::Text => {
            let mut buf = String::new();
            let _ = writeln!(
                buf,
                "level twoS = {}, dim = {}, basis = {}",
                args.two_s,
                rep.dim(),
                basis_name(basis)
            );
            print_matrix(&mut buf, "h", &rep.h);
            print_matrix(&mut buf, "e", &rep.e);
            print_matrix(&mut buf, "f", &rep.f);
            for (i, s) in rep.sigma.iter().enumerate() {
                print_matrix(&mut buf, &format!("sigma{}", i + 1), s);
            }
            emit(&buf);
        }
        DumpFormat::Json => {
            let doc = json!({
                "twoS": args.two_s,
                "dim": rep.dim(),
                "basis": basis_name(basis),
                "h": matrix_json(&rep.h),
                "e": matrix_json(&rep.e),
                "f": matrix_json(&rep.f),
                "sigma": rep.sigma.iter().map(matrix_json).collect::<Vec<_>>(),
            });
            emit(&serde_json::to_string_pretty(&doc).expect("serializable"));
            emit("\n");
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn clifford_dump(args: CliffordArgs) -> Result<ExitCode, String> {
    let triple = CliffordTriple::build(SpinLabel::new(args.two_s)).map_err(|e| e.to_string())?;
    match args.format {
        DumpFormat::Text => {
            let mut buf = String::new();
            let _ = writeln!(buf, "clifford maps at twoS = {} (unitary basis)", args.two_s);
            for i in 0..3 {
                print_matrix(&mut buf, &format!("raise{}", i + 1), &triple.raise[i]);
            }
            for (i, s) in triple.same_level.iter().enumerate() {
                print_matrix(&mut buf, &format!("same{}", i + 1), s);
            }
            match &triple.lower {
                Some(lower) => {
                    for (i, l) in lower.iter().enumerate() {
                        print_matrix(&mut buf, &format!("lower{}", i + 1), l);
                    }
                }
                None => {
                    let _ = writeln!(buf, "lower: absent below the second level");
                }
            }
            emit(&buf);
        }
        DumpFormat::Json => {
            let doc = json!({
                "twoS": args.two_s,
                "raise": triple.raise.iter().map(matrix_json).collect::<Vec<_>>(),
                "same": triple.same_level.iter().map(matrix_json).collect::<Vec<_>>(),
                "lower": triple
                    .lower
                    .as_ref()
                    .map(|l| l.iter().map(matrix_json).collect::<Vec<_>>()),
            });
            emit(&serde_json::to_string_pretty(&doc).expect("serializable"));
            emit("\n");
        }
    }
    Ok(ExitCode::SUCCESS)
}
