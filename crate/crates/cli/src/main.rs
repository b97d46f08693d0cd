use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use lattice_qre::circuitlab::verify::{run_suite, Check};
use lattice_qre::config::{couplings_with, RunFile};
use lattice_qre::qubitization::NonBinaryBranch;
use lattice_qre::reference::Table;
use lattice_qre::report::{self, max_rel_dev, Method, Row, Settings};
use lattice_qre::trotter_bounds::FhNormTable;
use lattice_qre::trotter_cost::{PnictideLayers, Strategy};
use lattice_qre::{Error, ModelKind, ModelSpec};

#[derive(Parser)]
#[command(name = "lattice-qre", version, about = "Toffoli and qubit estimates for lattice-model phase estimation")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// One estimate at a single L.
    Estimate {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long = "L")]
        l: Option<u32>,
        #[command(flatten)]
        run: RunArgs,
    },
    /// One row per L over a range.
    Sweep {
        #[command(flatten)]
        model: ModelArgs,
        /// START:END[:STEP], inclusive.
        #[arg(long = "L-range")]
        l_range: String,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Recompute a supplementary table (supp-table-1 .. supp-table-6).
    Reproduce {
        table: String,
        /// Trotter tables only; all four when omitted.
        #[arg(long)]
        strategy: Option<String>,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Run the circuit verification suite.
    Verify {
        #[arg(long, value_enum, default_value_t = VerifyFormat::Json)]
        format: VerifyFormat,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Args)]
struct ModelArgs {
    #[arg(long)]
    model: Option<String>,
    #[arg(long, default_value = "qubitization")]
    method: String,
    #[arg(long, default_value = "catalyzed")]
    strategy: String,
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    t: Option<f64>,
    #[arg(long = "t-prime")]
    t_prime: Option<f64>,
    #[arg(long = "t-dprime")]
    t_dprime: Option<f64>,
    #[arg(long)]
    t1: Option<f64>,
    #[arg(long)]
    t2: Option<f64>,
    #[arg(long)]
    t3: Option<f64>,
    #[arg(long)]
    t4: Option<f64>,
    #[arg(long)]
    u: Option<f64>,
    #[arg(long)]
    v: Option<f64>,
    #[arg(long = "delta-e")]
    delta_e: Option<f64>,
}

#[derive(Args)]
struct RunArgs {
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Charge catalyst synthesis once per run instead of once per query.
    #[arg(long)]
    amortize_catalyst: bool,
    /// FH commutator norm table (L norm_hh norm_comm per line).
    #[arg(long)]
    norms: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Layers::Symmetric)]
    pnictide_layers: Layers,
    #[arg(long, value_enum, default_value_t = Branch::Tabulated)]
    non_binary: Branch,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
    Table,
}

#[derive(Clone, Copy, ValueEnum)]
enum VerifyFormat {
    Json,
    Table,
}

#[derive(Clone, Copy, ValueEnum)]
enum Layers {
    Symmetric,
    AsPrinted,
}

#[derive(Clone, Copy, ValueEnum)]
enum Branch {
    Tabulated,
    AsPrinted,
}

enum Failure {
    Usage(String),
    Infeasible(String),
    Runtime(String),
    Verify,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Infeasible(_) => Failure::Infeasible(e.to_string()),
            Error::Io(_) => Failure::Runtime(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Runtime(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Infeasible(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(3)
        }
        Err(Failure::Runtime(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Verify) => ExitCode::from(1),
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Estimate { model, l, run } => {
            let (file, settings) = resolve(&model, &run)?;
            let l = l.or(file.l).ok_or_else(|| Failure::Usage("--L is required".into()))?;
            let spec = spec_for(&file, l)?;
            let row = report::estimate(&spec, &settings)?;
            emit(&[row], &run)
        }
        Command::Sweep { model, l_range, run } => {
            let (file, settings) = resolve(&model, &run)?;
            let specs = parse_range(&l_range)?.into_iter().map(|l| spec_for(&file, l)).collect::<Result<Vec<_>, _>>()?;
            let rows = report::sweep(&specs, &settings)?;
            emit(&rows, &run)
        }
        Command::Reproduce { table, strategy, run } => {
            let n: u32 = table
                .strip_prefix("supp-table-")
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| Failure::Usage(format!("expected supp-table-N, got '{table}'")))?;
            let table = Table::from_number(n).ok_or_else(|| Failure::Usage(format!("no supplementary table {n}")))?;
            let strategies = match strategy {
                Some(s) => vec![s.parse::<Strategy>()?],
                None => Strategy::ALL.to_vec(),
            };
            let settings = base_settings(&run)?;
            let rows = report::reproduce(table, &strategies, &settings)?;
            emit(&rows, &run)?;
            if let Some(d) = max_rel_dev(&rows) {
                eprintln!("max relative Toffoli deviation: {:.2}%", 100.0 * d);
            }
            Ok(())
        }
        Command::Verify { format, output } => {
            let checks = run_suite()?;
            let mut out = open(output.as_ref())?;
            match format {
                VerifyFormat::Json => {
                    serde_json::to_writer_pretty(&mut out, &checks).map_err(|e| Failure::Runtime(e.to_string()))?;
                    writeln!(out)?;
                }
                VerifyFormat::Table => write_checks(&checks, &mut out)?,
            }
            out.flush()?;
            if checks.iter().all(|c| c.pass) {
                Ok(())
            } else {
                Err(Failure::Verify)
            }
        }
    }
}

fn write_checks(checks: &[Check], out: &mut dyn Write) -> io::Result<()> {
    let w = checks.iter().map(|c| c.check.chars().count()).max().unwrap_or(5);
    for c in checks {
        let pad = w - c.check.chars().count();
        writeln!(out, "{}{}  {:>10.3e}  {}", c.check, " ".repeat(pad), c.max_deviation, if c.pass { "PASS" } else { "FAIL" })?;
    }
    Ok(())
}

fn base_settings(run: &RunArgs) -> Result<Settings, Failure> {
    let mut s = Settings::default().with_seed(run.seed);
    s.trotter.amortize_catalyst = run.amortize_catalyst;
    s.trotter.pnictide_layers = match run.pnictide_layers {
        Layers::Symmetric => PnictideLayers::Symmetric,
        Layers::AsPrinted => PnictideLayers::AsPrinted,
    };
    s.branch = match run.non_binary {
        Branch::Tabulated => NonBinaryBranch::Tabulated,
        Branch::AsPrinted => NonBinaryBranch::AsPrinted,
    };
    if let Some(p) = &run.norms {
        s.norms = FhNormTable::load(p)?;
    }
    Ok(s)
}

/// Config file first, flags on top.
fn resolve(m: &ModelArgs, run: &RunArgs) -> Result<(RunFile, Settings), Failure> {
    let mut file = match &m.config {
        Some(p) => RunFile::load(p)?,
        None => RunFile::default(),
    };
    let mut flags = RunFile::default();
    if let Some(name) = &m.model {
        flags.model = Some(name.parse()?);
    }
    flags.delta_e_override = m.delta_e;
    for (k, v) in [
        ("t", m.t),
        ("t_prime", m.t_prime),
        ("t_dprime", m.t_dprime),
        ("t1", m.t1),
        ("t2", m.t2),
        ("t3", m.t3),
        ("t4", m.t4),
        ("u", m.u),
        ("v", m.v),
    ] {
        if let Some(v) = v {
            flags.couplings.insert(k.to_string(), v);
        }
    }
    file = file.merged(&flags);
    if file.model.is_none() {
        return Err(Failure::Usage("--model is required (fh, cuprate, pnictide)".into()));
    }
    let mut s = base_settings(run)?;
    s.method = m.method.parse::<Method>()?;
    s.strategy = m.strategy.parse()?;
    s.trotter.delta_e = file.delta_e_override;
    Ok((file, s))
}

fn spec_for(file: &RunFile, l: u32) -> Result<ModelSpec, Failure> {
    let kind: ModelKind = file.model.ok_or_else(|| Failure::Usage("no model given".into()))?;
    Ok(ModelSpec::new(l, couplings_with(kind, &file.couplings)?)?)
}

fn parse_range(s: &str) -> Result<Vec<u32>, Failure> {
    let parts: Vec<&str> = s.split(':').collect();
    let num = |p: &str| p.trim().parse::<u32>().map_err(|_| Failure::Usage(format!("bad L-range '{s}'")));
    let (a, b, step) = match parts.as_slice() {
        [a, b] => (num(a)?, num(b)?, 2),
        [a, b, c] => (num(a)?, num(b)?, num(c)?),
        _ => return Err(Failure::Usage(format!("L-range must be START:END[:STEP], got '{s}'"))),
    };
    if step == 0 || a > b {
        return Err(Failure::Usage(format!("empty L-range '{s}'")));
    }
    Ok((a..=b).step_by(step as usize).collect())
}

fn open(path: Option<&PathBuf>) -> io::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn emit(rows: &[Row], run: &RunArgs) -> Result<(), Failure> {
    let mut out = open(run.output.as_ref())?;
    match run.format {
        Format::Csv => report::write_csv(rows, &mut out)?,
        Format::Json => {
            report::write_json(rows, &mut out)?;
            writeln!(out)?;
        }
        Format::Table => report::write_table(rows, &mut out)?,
    }
    out.flush()?;
    Ok(())
}
