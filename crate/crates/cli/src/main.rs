use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use hspec::bounds::{check_all, BoundOptions, BoundReport};
use hspec::clique::{max_clique_with_cap, DEFAULT_NODE_CAP};
use hspec::lagrangian::{maximize_lagrangian, LagrangianOptions};
use hspec::spectral::{
    principal_entry_sum, signless_spectral_radius, spectral_radius, spectral_radius_dense,
    IterationOptions,
};
use hspec::tensor::{DenseTensor, ImplicitTensor, TensorKind};
use hspec::{
    complete_r_graph, parse_hypergraph, random_r_graph, serialize_hypergraph, Error, Hypergraph,
};

const EXIT_INPUT: u8 = 1;
const EXIT_NONCONVERGENCE: u8 = 2;
const EXIT_VIOLATION: u8 = 3;

/// Oracle comparisons pass when both deviations are within this.
const ORACLE_TOLERANCE: f64 = 1e-9;
const ORACLE_VECTORS: usize = 20;
/// The dense tensor is a test oracle; keep the CLI default small.
const CLI_ORACLE_CAP: u128 = 100_000;

#[derive(Parser, Debug)]
#[command(
    name = "hspec",
    version,
    about = "Spectral radii, clique numbers and Lagrangians of hypergraphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute selected quantities of a hypergraph.
    Compute(ComputeArgs),
    /// Evaluate every clique-number bound on a hypergraph.
    CheckBounds(CheckArgs),
    /// Write a generated hypergraph in .hg format.
    Gen(GenArgs),
    /// Compare the implicit tensor against the dense reference tensor.
    Oracle(OracleArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
enum Quantity {
    Rho,
    Q,
    Omega,
    Lagrangian,
    #[value(name = "U", alias = "u")]
    U,
    All,
}

#[derive(Args, Debug)]
struct Common {
    /// Spectral tolerance (absolute bracket width).
    #[arg(long, default_value_t = 1e-10, allow_negative_numbers = true)]
    tol: f64,
    #[arg(long, default_value_t = 100_000)]
    max_iter: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Random starts for the Lagrangian optimizer.
    #[arg(long, default_value_t = 8)]
    restarts: usize,
    /// Node cap for the exact clique search.
    #[arg(long, default_value_t = DEFAULT_NODE_CAP)]
    node_cap: u64,
}

impl Common {
    fn validate(&self) -> Result<(), Failure> {
        if self.tol.is_nan() || self.tol <= 0.0 {
            return Err(Failure::Usage(format!(
                "--tol must be positive, got {}",
                self.tol
            )));
        }
        if self.max_iter == 0 {
            return Err(Failure::Usage("--max-iter must be at least 1".into()));
        }
        Ok(())
    }

    fn spectral(&self) -> IterationOptions {
        IterationOptions {
            tolerance: self.tol,
            max_iterations: self.max_iter,
            seed: self.seed,
            ..IterationOptions::default()
        }
    }

    fn lagrangian(&self) -> LagrangianOptions {
        LagrangianOptions {
            random_starts: self.restarts,
            seed: self.seed,
            ..LagrangianOptions::default()
        }
    }
}

#[derive(Args, Debug)]
struct ComputeArgs {
    input: PathBuf,
    /// Quantities to compute (comma separated).
    #[arg(long, value_enum, value_delimiter = ',', default_value = "all")]
    what: Vec<Quantity>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct CheckArgs {
    input: PathBuf,
    #[command(flatten)]
    common: Common,
    /// Also evaluate the eigenvector-sum upper bound outside its hypotheses
    /// (reported as informational).
    #[arg(long)]
    ungated_thm34: bool,
}

#[derive(Args, Debug)]
struct GenArgs {
    #[arg(value_enum)]
    kind: GenKind,
    #[arg(long)]
    n: usize,
    /// Edge sizes, comma separated.
    #[arg(long = "r", value_delimiter = ',', required = true)]
    types: Vec<usize>,
    /// Inclusion probability per candidate edge (random only).
    #[arg(long, allow_negative_numbers = true)]
    p: Option<f64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum GenKind {
    Complete,
    Random,
}

#[derive(Args, Debug)]
struct OracleArgs {
    input: PathBuf,
    #[command(flatten)]
    common: Common,
    /// Maximum number of dense tensor entries n^k.
    #[arg(long, default_value_t = CLI_ORACLE_CAP)]
    oracle_cap: u128,
}

enum Failure {
    Usage(String),
    Input(String),
    /// Non-convergence, with whatever was computed before it.
    NonConvergence {
        message: String,
        partial: Option<Rendered>,
    },
    /// Computation succeeded but a counted check failed.
    Violation(Rendered),
}

struct Rendered {
    text: String,
    out: Option<PathBuf>,
}

impl Rendered {
    fn emit(&self) -> Result<(), Failure> {
        match &self.out {
            Some(path) => std::fs::write(path, &self.text)
                .map_err(|e| Failure::Input(format!("{}: {e}", path.display()))),
            None => {
                print!("{}", self.text);
                Ok(())
            }
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NonConvergence { .. } | Error::Unconverged => Failure::NonConvergence {
                message: e.to_string(),
                partial: None,
            },
            Error::InvalidOptions(m) => Failure::Usage(m),
            other => Failure::Input(other.to_string()),
        }
    }
}

fn read_graph(path: &Path) -> Result<Hypergraph, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    parse_hypergraph(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data serializes");
    s.push('\n');
    s
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map_or_else(|| "-".into(), |v| format!("{v:.12}"))
}

#[derive(Serialize, Default)]
struct ComputeReport {
    n: usize,
    m: usize,
    quantities: QuantityValues,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
}

#[derive(Serialize, Default)]
struct QuantityValues {
    #[serde(skip_serializing_if = "Option::is_none")]
    rho: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    q: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    omega: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    omega_exact: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    lagrangian: Option<f64>,
    #[serde(rename = "U", skip_serializing_if = "Option::is_none")]
    entry_sum: Option<f64>,
}

fn compute_quantities(
    g: &Hypergraph,
    what: &[Quantity],
    common: &Common,
    report: &mut ComputeReport,
) -> Result<(), Error> {
    let want = |q: Quantity| what.contains(&q) || what.contains(&Quantity::All);
    let spectral = common.spectral();
    let values = &mut report.quantities;
    if want(Quantity::Rho) || want(Quantity::U) {
        let rho = spectral_radius(g, &spectral)?;
        if want(Quantity::Rho) {
            values.rho = Some(rho.value);
        }
        if want(Quantity::U) {
            values.entry_sum = Some(principal_entry_sum(&rho)?);
        }
    }
    if want(Quantity::Q) {
        values.q = Some(signless_spectral_radius(g, &spectral)?.value);
    }
    let mut clique = None;
    if want(Quantity::Omega) || want(Quantity::Lagrangian) {
        let c = max_clique_with_cap(g, common.node_cap);
        if want(Quantity::Omega) {
            values.omega = Some(c.omega);
            values.omega_exact = Some(c.optimal);
        }
        clique = Some(c);
    }
    if want(Quantity::Lagrangian) {
        let mut opts = common.lagrangian();
        if let Some(c) = clique.filter(|_| !g.is_edgeless()) {
            opts.seed_sets.push(c.vertices);
        }
        values.lagrangian = Some(maximize_lagrangian(g, &opts)?.value);
    }
    Ok(())
}

fn render_compute(report: &ComputeReport, format: Format) -> String {
    if format == Format::Json {
        return to_json(report);
    }
    let q = &report.quantities;
    let mut s = String::new();
    let _ = writeln!(s, "n           {}", report.n);
    let _ = writeln!(s, "m           {}", report.m);
    for (name, v) in [("rho", q.rho), ("q", q.q)] {
        if let Some(v) = v {
            let _ = writeln!(s, "{name:<12}{v:.12}");
        }
    }
    if let Some(w) = q.omega {
        let note = if q.omega_exact == Some(false) {
            " (node cap hit; lower bound)"
        } else {
            ""
        };
        let _ = writeln!(s, "omega       {w}{note}");
    }
    for (name, v) in [("lagrangian", q.lagrangian), ("U", q.entry_sum)] {
        if let Some(v) = v {
            let _ = writeln!(s, "{name:<12}{v:.12}");
        }
    }
    if let Some(e) = &report.error {
        let _ = writeln!(s, "error       {e}");
    }
    s
}

fn cmd_compute(args: &ComputeArgs) -> Result<Rendered, Failure> {
    args.common.validate()?;
    let g = read_graph(&args.input)?;
    let mut report = ComputeReport {
        n: g.n(),
        m: g.num_edges(),
        ..ComputeReport::default()
    };
    let result = compute_quantities(&g, &args.what, &args.common, &mut report);
    match result {
        Ok(()) => Ok(Rendered {
            text: render_compute(&report, args.common.format),
            out: args.common.out.clone(),
        }),
        Err(e) => match Failure::from(e) {
            Failure::NonConvergence { message, .. } => {
                report.error = Some(message.clone());
                Err(Failure::NonConvergence {
                    message,
                    partial: Some(Rendered {
                        text: render_compute(&report, args.common.format),
                        out: args.common.out.clone(),
                    }),
                })
            }
            other => Err(other),
        },
    }
}

fn render_bounds(report: &BoundReport, format: Format) -> String {
    if format == Format::Json {
        return to_json(report);
    }
    let q = &report.quantities;
    let mut s = String::new();
    let _ = writeln!(
        s,
        "n = {}, m = {}, R = {:?}, k = {}, c = {}",
        report.input.n,
        report.input.m,
        report.input.edge_types,
        report.input.k.map_or("-".into(), |k| k.to_string()),
        report.input.c.map_or("-".into(), |c| c.to_string()),
    );
    let _ = writeln!(
        s,
        "rho = {:.12}  q = {:.12}  omega = {}  L = {:.12}  U = {:.12}",
        q.rho, q.q, q.omega, q.lagrangian, q.entry_sum
    );
    let _ = writeln!(
        s,
        "{:<12} {:>20} {:>20} {:>16} {:>6} {:>9}  status",
        "bound", "value", "measured", "slack", "holds", "equality"
    );
    for r in &report.bounds {
        let flag = |b: Option<bool>| b.map_or("-", |b| if b { "yes" } else { "no" });
        let _ = writeln!(
            s,
            "{:<12} {:>20} {:>20.12} {:>16} {:>6} {:>9}  {}",
            r.name,
            fmt_opt(r.bound),
            r.measured,
            r.slack.map_or_else(|| "-".into(), |v| format!("{v:.3e}")),
            flag(r.holds),
            flag(r.equality),
            serde_json::to_value(r.status)
                .expect("enum")
                .as_str()
                .unwrap_or_default(),
        );
    }
    s
}

fn cmd_check_bounds(args: &CheckArgs) -> Result<Rendered, Failure> {
    args.common.validate()?;
    let g = read_graph(&args.input)?;
    let opts = BoundOptions {
        spectral: args.common.spectral(),
        lagrangian: args.common.lagrangian(),
        node_cap: args.common.node_cap,
        ungated_upper: args.ungated_thm34,
        ..BoundOptions::default()
    };
    let report = match check_all(&g, &opts) {
        Ok(r) => r,
        Err(e) => {
            return Err(match Failure::from(e) {
                Failure::NonConvergence { message, .. } => {
                    let partial = ComputeReport {
                        n: g.n(),
                        m: g.num_edges(),
                        error: Some(message.clone()),
                        ..ComputeReport::default()
                    };
                    Failure::NonConvergence {
                        message,
                        partial: Some(Rendered {
                            text: render_compute(&partial, args.common.format),
                            out: args.common.out.clone(),
                        }),
                    }
                }
                other => other,
            })
        }
    };
    let rendered = Rendered {
        text: render_bounds(&report, args.common.format),
        out: args.common.out.clone(),
    };
    if report.all_hold() {
        Ok(rendered)
    } else {
        Err(Failure::Violation(rendered))
    }
}

fn cmd_gen(args: &GenArgs) -> Result<Rendered, Failure> {
    let g = match args.kind {
        GenKind::Complete => {
            if args.p.is_some() {
                return Err(Failure::Usage("--p only applies to random graphs".into()));
            }
            complete_r_graph(args.n, &args.types)?
        }
        GenKind::Random => {
            let p = args
                .p
                .ok_or_else(|| Failure::Usage("random graphs need --p".into()))?;
            random_r_graph(args.n, &args.types, p, args.seed)?
        }
    };
    Ok(Rendered {
        text: serialize_hypergraph(&g),
        out: args.out.clone(),
    })
}

#[derive(Serialize)]
struct OracleReport {
    n: usize,
    k: usize,
    entries: u128,
    vectors: usize,
    adjacency_apply_deviation: f64,
    signless_apply_deviation: f64,
    rho_implicit: f64,
    rho_dense: f64,
    rho_difference: f64,
    q_implicit: f64,
    q_dense: f64,
    q_difference: f64,
    tolerance: f64,
    within_tolerance: bool,
}

fn max_deviation(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

fn cmd_oracle(args: &OracleArgs) -> Result<Rendered, Failure> {
    args.common.validate()?;
    let g = read_graph(&args.input)?;
    let dense_a = DenseTensor::adjacency(&g, args.oracle_cap)?;
    let dense_q = DenseTensor::signless(&g, args.oracle_cap)?;
    let implicit_a = ImplicitTensor::adjacency(&g)?;
    let implicit_q = ImplicitTensor::signless(&g)?;

    let mut rng = ChaCha8Rng::seed_from_u64(args.common.seed);
    let (mut dev_a, mut dev_q) = (0.0f64, 0.0f64);
    for _ in 0..ORACLE_VECTORS {
        let x: Vec<f64> = (0..g.n()).map(|_| rng.gen_range(0.1..1.0)).collect();
        dev_a = dev_a.max(max_deviation(&implicit_a.apply(&x)?, &dense_a.apply(&x)?));
        dev_q = dev_q.max(max_deviation(&implicit_q.apply(&x)?, &dense_q.apply(&x)?));
    }

    let spectral = args.common.spectral();
    let rho = spectral_radius(&g, &spectral)?.value;
    let rho_dense =
        spectral_radius_dense(&g, TensorKind::Adjacency, &spectral, args.oracle_cap)?.value;
    let q = signless_spectral_radius(&g, &spectral)?.value;
    let q_dense = spectral_radius_dense(
        &g,
        TensorKind::SignlessLaplacian,
        &spectral,
        args.oracle_cap,
    )?
    .value;

    let report = OracleReport {
        n: g.n(),
        k: dense_a.order(),
        entries: dense_a.entries().len() as u128,
        vectors: ORACLE_VECTORS,
        adjacency_apply_deviation: dev_a,
        signless_apply_deviation: dev_q,
        rho_implicit: rho,
        rho_dense,
        rho_difference: (rho - rho_dense).abs(),
        q_implicit: q,
        q_dense,
        q_difference: (q - q_dense).abs(),
        tolerance: ORACLE_TOLERANCE,
        within_tolerance: [dev_a, dev_q, (rho - rho_dense).abs(), (q - q_dense).abs()]
            .iter()
            .all(|&d| d <= ORACLE_TOLERANCE),
    };
    let text = match args.common.format {
        Format::Json => to_json(&report),
        Format::Table => format!(
            "n = {}, k = {}, dense entries = {}\n\
             apply deviation   A: {:.3e}  Q: {:.3e}  ({} vectors)\n\
             rho   implicit {:.12}  dense {:.12}  diff {:.3e}\n\
             q     implicit {:.12}  dense {:.12}  diff {:.3e}\n\
             within {:e}: {}\n",
            report.n,
            report.k,
            report.entries,
            dev_a,
            dev_q,
            report.vectors,
            rho,
            rho_dense,
            report.rho_difference,
            q,
            q_dense,
            report.q_difference,
            ORACLE_TOLERANCE,
            report.within_tolerance,
        ),
    };
    let rendered = Rendered {
        text,
        out: args.common.out.clone(),
    };
    if report.within_tolerance {
        Ok(rendered)
    } else {
        Err(Failure::Violation(rendered))
    }
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(raw) = std::env::var("HSPEC_THREADS") else {
        return Ok(());
    };
    let threads: usize = raw.trim().parse().ok().filter(|&t| t > 0).ok_or_else(|| {
        Failure::Usage(format!(
            "HSPEC_THREADS must be a positive integer, got {raw:?}"
        ))
    })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| Failure::Usage(e.to_string()))
}

fn run(cli: &Cli) -> Result<Rendered, Failure> {
    configure_threads()?;
    match &cli.command {
        Command::Compute(a) => cmd_compute(a),
        Command::CheckBounds(a) => cmd_check_bounds(a),
        Command::Gen(a) => cmd_gen(a),
        Command::Oracle(a) => cmd_oracle(a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_INPUT)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let outcome = run(&cli).and_then(|r| r.emit());
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(EXIT_INPUT)
        }
        Err(Failure::Input(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(EXIT_INPUT)
        }
        Err(Failure::NonConvergence { message, partial }) => {
            if let Some(p) = partial {
                let _ = p.emit();
            }
            eprintln!("error: {message}");
            ExitCode::from(EXIT_NONCONVERGENCE)
        }
        Err(Failure::Violation(r)) => {
            if r.emit().is_err() {
                return ExitCode::from(EXIT_INPUT);
            }
            eprintln!("error: a checked bound or comparison failed");
            ExitCode::from(EXIT_VIOLATION)
        }
    }
}
