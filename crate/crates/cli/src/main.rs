use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use irreality::linalg::partial_trace;
use irreality::measures::{
    concurrence, discord_like, entanglement_entropy, entropy, irreality, irreality_decomposition,
    mutual_information, nonlocality_forms, Measurement, CROSS_CHECK_TOL,
};
use irreality::optimize::OptimizerConfig;
use irreality::parse::{parse_measurement, parse_state};
use irreality::report::{MeasureReport, REPORT_CSV_HEADER};
use irreality::sweep::{plot_script, run_sweep, slit_curve, write_slit_csv, write_sweep_csv, Family, SweepSpec};
use irreality::verify::{run_all, run_suite, VerifySuiteResult};
use irreality::{DensityMatrix, Error};

#[derive(Parser)]
#[command(name = "irreality", version, about = "Irreality, discord-like and nonlocality measures for quantum states")]
struct Cli {
    /// Seed for every random draw
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Write the main output here instead of stdout
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    /// Output format for `measure` and `verify`
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    format: Format,

    /// Grid points in theta per qubit
    #[arg(long, global = true, default_value_t = 25)]
    grid_theta: usize,

    /// Grid points in phi per qubit
    #[arg(long, global = true, default_value_t = 24)]
    grid_phi: usize,

    /// Best grid cells to refine
    #[arg(long, global = true, default_value_t = 5)]
    refine_starts: usize,

    /// Simplex spread at which refinement stops
    #[arg(long, global = true, default_value_t = 1e-7)]
    refine_tol: f64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Records,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Report the measures of one state, e.g. `measure singlet zbasis@0 zbasis@1`
    Measure {
        /// singlet | werner:f=F | alpha:a=A | slit:x=X | file:PATH
        state: String,
        /// zbasis | xbasis | ybasis | bloch:theta=T,phi=P | fourier:d=D, with optional @SUBSYSTEM
        bases: Vec<String>,
    },
    /// Sweep a state family and write N_min, D_12, concurrence and n_zz as CSV
    Sweep {
        #[arg(value_parser = ["werner", "alpha", "slit"])]
        family: String,
        #[arg(long, default_value_t = 0.0)]
        start: f64,
        #[arg(long, default_value_t = 1.0)]
        stop: f64,
        #[arg(long, default_value_t = 51)]
        points: usize,
        /// Also write a gnuplot script for the sweep CSV
        #[arg(long)]
        plot_script: Option<PathBuf>,
    },
    /// Floating-slit curve as CSV
    Slit {
        #[arg(long, default_value_t = 21)]
        points: usize,
    },
    /// Run a property suite, or `all`
    Verify {
        suite: String,
        /// Seeded cases per suite (suite default when omitted)
        #[arg(long)]
        count: Option<usize>,
    },
}

#[derive(Debug)]
enum Failure {
    Core(Error),
    Io(String),
    Verify(usize),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

fn exit_code(f: &Failure) -> u8 {
    match f {
        Failure::Verify(_) => 1,
        Failure::Io(_) | Failure::Core(Error::Io(_)) => 4,
        Failure::Core(e) if e.is_invalid_state() => 3,
        Failure::Core(Error::Inconsistent { .. }) => 1,
        Failure::Core(_) => 2,
    }
}

fn open_output(path: Option<&Path>) -> Result<Box<dyn Write>, Failure> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).map_err(|e| Failure::Io(format!("{}: {e}", p.display())))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn optimizer(cli: &Cli) -> Result<OptimizerConfig, Failure> {
    let cfg = OptimizerConfig {
        grid_points_theta: cli.grid_theta,
        grid_points_phi: cli.grid_phi,
        refine_starts: cli.refine_starts,
        refine_tolerance: cli.refine_tol,
        ..OptimizerConfig::default()
    };
    cfg.validate()?;
    Ok(cfg)
}

fn measure_reports(state_spec: &str, rho: &DensityMatrix, basis_specs: &[String]) -> Result<Vec<MeasureReport>, Error> {
    let measurements: Vec<Measurement> = basis_specs
        .iter()
        .enumerate()
        .map(|(i, s)| parse_measurement(s, i))
        .collect::<Result<_, _>>()?;
    let count = rho.layout().len();
    for m in &measurements {
        let dim = rho.layout().dim(m.subsystem)?;
        if dim != m.basis.dim() {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: m.basis.dim(),
            });
        }
    }
    let state_input = format!("state={state_spec}");
    let labels: Vec<String> = measurements
        .iter()
        .zip(basis_specs)
        .map(|(m, spec)| format!("{}@{}", spec.rsplit_once('@').map_or(spec.as_str(), |(b, _)| b), m.subsystem))
        .collect();

    let mut out = vec![MeasureReport::new("entropy", entropy(rho), state_input.clone())];
    for (m, label) in measurements.iter().zip(&labels) {
        let inputs = format!("{state_input};basis={label}");
        if count == 2 {
            let d = irreality_decomposition(&m.basis, m.subsystem, rho)?;
            out.push(MeasureReport::new("irreality", d.total, inputs.clone()));
            out.push(MeasureReport::new("irreality_local", d.local, inputs.clone()));
            out.push(
                MeasureReport::new("discord_like", d.correlated, inputs.clone())
                    .with_residual("decomposition", d.residual()),
            );
        } else {
            out.push(MeasureReport::new("irreality", irreality(&m.basis, m.subsystem, rho)?, inputs));
        }
    }
    if count == 2 {
        out.push(MeasureReport::new("mutual_information", mutual_information(rho)?, state_input.clone()));
    }
    if let [a, b] = measurements.as_slice() {
        if a.subsystem != b.subsystem && count == 2 {
            let inputs = format!("{state_input};bases={}+{}", labels[0], labels[1]);
            out.push(MeasureReport::new(
                "discord_like_pair",
                discord_like(rho, &[a.clone(), b.clone()])?,
                inputs.clone(),
            ));
            let forms = nonlocality_forms(a, b, rho)?;
            let gap = (forms.symmetric - forms.directed).abs();
            if gap > CROSS_CHECK_TOL {
                return Err(Error::Inconsistent {
                    what: "nonlocality (symmetric vs directed form)",
                    a: forms.symmetric,
                    b: forms.directed,
                    diff: gap,
                });
            }
            out.push(MeasureReport::new("nonlocality", forms.symmetric, inputs).with_residual("form_gap", gap));
        }
    }
    if rho.layout().dims() == [2, 2] {
        out.push(MeasureReport::new("concurrence", concurrence(rho)?, state_input.clone()));
    }
    if count == 2 && rho.purity() > 1.0 - 1e-9 {
        out.push(MeasureReport::new(
            "entanglement_entropy",
            entanglement_entropy(rho)?,
            state_input.clone(),
        ));
    }
    if count == 2 {
        for k in 0..2 {
            let reduced = partial_trace(rho, &[k])?;
            out.push(MeasureReport::new(format!("entropy_{k}"), entropy(&reduced), state_input.clone()));
        }
    }
    Ok(out)
}

fn write_reports(reports: &[MeasureReport], format: Format, out: &mut dyn Write) -> io::Result<()> {
    match format {
        Format::Human => {
            for r in reports {
                writeln!(out, "{}", r.to_human())?;
            }
        }
        Format::Records => {
            for r in reports {
                writeln!(out, "{}", r.to_record())?;
            }
        }
        Format::Csv => {
            writeln!(out, "{REPORT_CSV_HEADER}")?;
            for r in reports {
                writeln!(out, "{}", r.to_csv_row())?;
            }
        }
    }
    Ok(())
}

fn write_verify(results: &[VerifySuiteResult], format: Format, out: &mut dyn Write) -> io::Result<()> {
    if format == Format::Csv {
        writeln!(out, "suite,cases,failures,status")?;
    }
    for r in results {
        let status = if r.passed() { "pass" } else { "fail" };
        match format {
            Format::Human => {
                writeln!(out, "{}", r.summary())?;
                for f in &r.failures {
                    writeln!(out, "    {}: residual {:e} > tolerance {:e}", f.case, f.residual, f.tolerance)?;
                }
            }
            Format::Records => {
                writeln!(
                    out,
                    "suite={}\tcases={}\tfailures={}\tstatus={status}",
                    r.suite,
                    r.cases,
                    r.failures.len()
                )?;
                for f in &r.failures {
                    writeln!(
                        out,
                        "suite={}\tfailure={}\tresidual={:e}\ttolerance={:e}",
                        r.suite, f.case, f.residual, f.tolerance
                    )?;
                }
            }
            Format::Csv => writeln!(out, "{},{},{},{status}", r.suite, r.cases, r.failures.len())?,
        }
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<(), Failure> {
    let cfg = optimizer(cli)?;
    match &cli.command {
        Command::Measure { state, bases } => {
            let rho = parse_state(state)?;
            let reports = measure_reports(state, &rho, bases)?;
            let mut out = open_output(cli.output.as_deref())?;
            write_reports(&reports, cli.format, &mut out)?;
            out.flush()?;
        }
        Command::Sweep {
            family,
            start,
            stop,
            points,
            plot_script: script,
        } => {
            let spec = SweepSpec {
                family: Family::parse(family)?,
                start: *start,
                stop: *stop,
                points: *points,
                optimizer: cfg,
                seed: cli.seed,
            };
            let rows = run_sweep(&spec)?;
            let mut out = open_output(cli.output.as_deref())?;
            write_sweep_csv(&rows, &mut out)?;
            out.flush()?;
            if let Some(path) = script {
                let csv = cli
                    .output
                    .as_ref()
                    .map_or_else(|| format!("{}.csv", spec.family.name()), |p| p.display().to_string());
                std::fs::write(path, plot_script(spec.family, &csv))
                    .map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
            }
        }
        Command::Slit { points } => {
            let rows = slit_curve(*points)?;
            let mut out = open_output(cli.output.as_deref())?;
            write_slit_csv(&rows, &mut out)?;
            out.flush()?;
        }
        Command::Verify { suite, count } => {
            let results = if suite == "all" {
                run_all(cli.seed, *count, &cfg)
            } else {
                vec![run_suite(suite, cli.seed, *count, &cfg)?]
            };
            let mut out = open_output(cli.output.as_deref())?;
            write_verify(&results, cli.format, &mut out)?;
            out.flush()?;
            let failed = results.iter().filter(|r| !r.passed()).count();
            if failed > 0 {
                return Err(Failure::Verify(failed));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            let code = exit_code(&f);
            match &f {
                Failure::Core(e) if e.is_invalid_state() => eprintln!("irreality: invalid input state: {e}"),
                Failure::Core(e) => eprintln!("irreality: {e}"),
                Failure::Io(msg) => eprintln!("irreality: i/o error: {msg}"),
                Failure::Verify(n) => eprintln!("irreality: {n} suite(s) failed"),
            }
            ExitCode::from(code)
        }
    }
}
