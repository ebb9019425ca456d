//! Command-line front end for the EPR-Bohm simulation toolkit.
//!
//! The CLI only parses arguments and formats results; every number it prints
//! comes from a library call. Identical commands with identical seeds
//! produce byte-identical output.

use std::fs;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use eprsim_core::chsh::{
    chsh_statistic, coplanar_sweep, maximize_chsh, sweep_to_csv, verify_bound, ChshReport,
    ChshSettings, SearchConfig,
};
use eprsim_core::hvm::simulate_trials;
use eprsim_core::projection::{projected_product_expectation, reduce_to_hvm};
use eprsim_core::quantum::{self, JointDistribution};
use eprsim_core::{
    BivectorModel, CorrelationEstimate, Error, Side, Sign, SignModel, TrialRecord, UnitVector3,
    Vector3,
};

const SCHEMA_VERSION: u32 = 1;

/// Simulate and analyze the EPR-Bohm experiment: quantum predictions,
/// hidden-variable models, bivector observables, and CHSH statistics.
#[derive(Parser)]
#[command(name = "eprsim", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Quantum expectation values for one settings pair.
    ///
    /// Prints the two single-side expectations (0) and the product
    /// expectation (-a.b), all computed from the explicit matrix oracle.
    Qm {
        /// Alice's setting: an angle in degrees in the x-y plane, or "x,y,z".
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        /// Bob's setting, same syntax as --a.
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        #[arg(long, value_enum, default_value_t = Format::Plain)]
        format: Format,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The bivector model before and after projection, against the quantum
    /// target: its apparent success and where it collapses.
    BivectorDemo {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        #[arg(long, value_enum, default_value_t = Format::Plain)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// CHSH statistic of a correlation source at given settings, at
    /// optimizer-found settings (--optimize), or over a sweep (--sweep).
    Chsh {
        #[arg(long, value_enum)]
        source: Source,
        /// Alice's first setting (angle in degrees or "x,y,z").
        #[arg(long, allow_hyphen_values = true)]
        a: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        a_prime: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        b: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        b_prime: Option<String>,
        /// Search for the settings maximizing the statistic.
        #[arg(long, conflicts_with_all = ["a", "a_prime", "b", "b_prime", "sweep"])]
        optimize: bool,
        /// Optimizer parameterization.
        #[arg(long, value_enum, default_value_t = Mode::Coplanar)]
        mode: Mode,
        /// Sweep the coplanar angle grid at this step (degrees) and report
        /// the maximal statistic found; CSV rows go to --out or stdout.
        #[arg(long)]
        sweep: Option<f64>,
        /// Trials per correlation for the qm-sampled source.
        #[arg(long, default_value_t = 100_000)]
        n: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Plain)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write a seeded +-1 trial record (CSV or JSON) with summary statistics.
    Trials {
        #[arg(long, value_enum)]
        source: Source,
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        #[arg(long, default_value_t = 10_000)]
        n: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Record format: csv or json (plain is treated as csv).
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        /// Write the record here; the summary then goes to stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Plain,
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Source {
    /// Exact quantum correlations from the matrix oracle.
    Qm,
    /// Trial-level sampling of the quantum joint distribution.
    QmSampled,
    /// The hemisphere-sign hidden-variable model.
    SignModel,
    /// The bivector model with outcomes projected to +-1.
    BivectorProjected,
}

impl Source {
    fn label(self) -> &'static str {
        match self {
            Source::Qm => "qm",
            Source::QmSampled => "qm-sampled",
            Source::SignModel => "sign-model",
            Source::BivectorProjected => "bivector-projected",
        }
    }
}

enum CliError {
    Usage(String),
    Failure(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Failure(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Failure(e.to_string())
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
        Err(CliError::Failure(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(3)
        }
    }
}

/// Parse a setting given as a plane angle in degrees or as an explicit
/// 3-vector "x,y,z" (normalized, with a guard against degenerate input).
fn parse_setting(text: &str) -> Result<UnitVector3<f64>, CliError> {
    let bad = |what: &str| CliError::Usage(format!("setting '{text}': {what}"));
    if text.contains(',') {
        let parts: Vec<&str> = text.split(',').collect();
        if parts.len() != 3 {
            return Err(bad("expected three comma-separated components"));
        }
        let mut comps = [0.0f64; 3];
        for (slot, part) in comps.iter_mut().zip(&parts) {
            *slot = part
                .trim()
                .parse::<f64>()
                .map_err(|_| bad("components must be numbers"))?;
        }
        let v = Vector3::new(comps[0], comps[1], comps[2]);
        if !v.is_finite() {
            return Err(bad("components must be finite"));
        }
        UnitVector3::normalized(v).map_err(|_| bad("vector must have nonzero length"))
    } else {
        let deg = text
            .trim()
            .parse::<f64>()
            .map_err(|_| bad("expected an angle in degrees or 'x,y,z'"))?;
        if !deg.is_finite() {
            return Err(bad("angle must be finite"));
        }
        Ok(UnitVector3::in_plane_deg(deg))
    }
}

/// Compact rendering of a unit vector for plain-text reports.
fn fmt_unit(u: UnitVector3<f64>) -> String {
    let v = u.vector();
    format!("({:+.4}, {:+.4}, {:+.4})", v.x, v.y, v.z)
}

fn emit(text: &str, out: Option<&PathBuf>) -> Result<(), CliError> {
    match out {
        Some(path) => {
            fs::write(path, text).map_err(|e| {
                CliError::Failure(format!("cannot write {}: {e}", path.display()))
            })?;
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
        }
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Qm { a, b, format, out } => cmd_qm(&a, &b, format, out.as_ref()),
        Command::BivectorDemo { a, b, format, out } => {
            cmd_bivector_demo(&a, &b, format, out.as_ref())
        }
        Command::Chsh {
            source,
            a,
            a_prime,
            b,
            b_prime,
            optimize,
            mode,
            sweep,
            n,
            seed,
            format,
            out,
        } => cmd_chsh(ChshArgs {
            source,
            a,
            a_prime,
            b,
            b_prime,
            optimize,
            mode,
            sweep,
            n,
            seed,
            format,
            out,
        }),
        Command::Trials {
            source,
            a,
            b,
            n,
            seed,
            format,
            out,
        } => cmd_trials(source, &a, &b, n, seed, format, out.as_ref()),
    }
}

#[derive(Serialize)]
struct QmReport {
    schema_version: u32,
    a: UnitVector3<f64>,
    b: UnitVector3<f64>,
    mean_a: f64,
    mean_b: f64,
    mean_ab: f64,
}

fn cmd_qm(a: &str, b: &str, format: Format, out: Option<&PathBuf>) -> Result<(), CliError> {
    let a = parse_setting(a)?;
    let b = parse_setting(b)?;
    let report = QmReport {
        schema_version: SCHEMA_VERSION,
        a,
        b,
        mean_a: quantum::single_expectation(Side::Alice, a),
        mean_b: quantum::single_expectation(Side::Bob, b),
        mean_ab: quantum::product_expectation(a, b),
    };
    let text = match format {
        Format::Json => serde_json::to_string_pretty(&report).expect("report serializes") + "\n",
        Format::Csv => format!(
            "mean_a,mean_b,mean_ab\n{},{},{}\n",
            report.mean_a, report.mean_b, report.mean_ab
        ),
        Format::Plain => format!(
            "settings          a = {}, b = {}\n\
             E(A)              {:+.7}\n\
             E(B)              {:+.7}\n\
             E(AB)             {:+.7}\n",
            fmt_unit(report.a),
            fmt_unit(report.b),
            report.mean_a,
            report.mean_b,
            report.mean_ab
        ),
    };
    emit(&text, out)
}

#[derive(Serialize)]
struct DemoReport {
    schema_version: u32,
    a: UnitVector3<f64>,
    b: UnitVector3<f64>,
    /// Tensor inner-product expectation before projection.
    pre_projection: f64,
    /// Projected per-state outcome pairs, keyed by the hidden sign.
    projected_outcomes: Vec<(i8, (i8, i8))>,
    /// Expectation of the product of projected outcomes.
    projected_product: f64,
    /// The quantum prediction for the same settings.
    quantum: f64,
}

fn cmd_bivector_demo(
    a: &str,
    b: &str,
    format: Format,
    out: Option<&PathBuf>,
) -> Result<(), CliError> {
    let a = parse_setting(a)?;
    let b = parse_setting(b)?;
    let model = BivectorModel::<f64>::new();
    let mut projected_outcomes = Vec::new();
    for lambda in Sign::BOTH {
        let pa = eprsim_core::projection::project(a, model.observable_a(a, lambda))?;
        let pb = eprsim_core::projection::project(b, model.observable_b(b, lambda))?;
        projected_outcomes.push((lambda.value(), (pa.value(), pb.value())));
    }
    let report = DemoReport {
        schema_version: SCHEMA_VERSION,
        a,
        b,
        pre_projection: model.product_expectation(a, b),
        projected_outcomes,
        projected_product: projected_product_expectation(&model, a, b)?,
        quantum: quantum::product_expectation(a, b),
    };
    let text = match format {
        Format::Json => serde_json::to_string_pretty(&report).expect("report serializes") + "\n",
        Format::Csv => format!(
            "pre_projection,projected_product,quantum\n{},{},{}\n",
            report.pre_projection, report.projected_product, report.quantum
        ),
        Format::Plain => {
            let mut text = format!(
                "settings                 a = {}, b = {}\n\
                 tensor E(A.B)  (pre)     {:+.7}\n",
                fmt_unit(report.a),
                fmt_unit(report.b),
                report.pre_projection
            );
            for (lambda, (pa, pb)) in &report.projected_outcomes {
                text += &format!(
                    "projected at lambda={lambda:+}   P_a(A) = {pa:+}, P_b(B) = {pb:+}, product = {:+}\n",
                    pa * pb
                );
            }
            text += &format!(
                "projected E(AB) (post)   {:+.7}\n\
                 quantum E(AB)   (target) {:+.7}\n",
                report.projected_product, report.quantum
            );
            text
        }
    };
    emit(&text, out)
}

struct ChshArgs {
    source: Source,
    a: Option<String>,
    a_prime: Option<String>,
    b: Option<String>,
    b_prime: Option<String>,
    optimize: bool,
    mode: Mode,
    sweep: Option<f64>,
    n: u64,
    seed: u64,
    format: Format,
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Coplanar,
    FullSphere,
}

type Correlator = Box<dyn FnMut(UnitVector3<f64>, UnitVector3<f64>) -> Result<f64, Error>>;

/// Build the correlator for a source. The sampled source derives one seed
/// per correlation evaluation from a running counter.
fn correlator_for(source: Source, n: u64, seed: u64) -> Correlator {
    match source {
        Source::Qm => Box::new(|a, b| Ok(quantum::product_expectation(a, b))),
        Source::SignModel => Box::new(|a, b| Ok(SignModel::correlation(a, b))),
        Source::BivectorProjected => {
            let model = BivectorModel::<f64>::new();
            Box::new(move |a, b| projected_product_expectation(&model, a, b))
        }
        Source::QmSampled => {
            let mut evaluation = 0u64;
            Box::new(move |a, b| {
                evaluation += 1;
                let sub_seed = seed.wrapping_add(evaluation.wrapping_mul(0x9E37_79B9_7F4A_7C15));
                let d = JointDistribution::from_settings(a, b);
                Ok(d.sample_record(a, b, n, sub_seed)?.summary().mean_ab)
            })
        }
    }
}

#[derive(Serialize)]
struct ChshCliReport {
    schema_version: u32,
    source: &'static str,
    optimized: bool,
    report: ChshReport<f64>,
}

fn cmd_chsh(args: ChshArgs) -> Result<(), CliError> {
    if args.n == 0 {
        return Err(CliError::Usage("--n must be at least 1".into()));
    }

    if let Some(step) = args.sweep {
        return cmd_chsh_sweep(&args, step);
    }

    let settings = if args.optimize {
        if args.source == Source::QmSampled {
            return Err(CliError::Usage(
                "--optimize needs an analytic source; qm-sampled estimates one settings \
                 quadruple at a time"
                    .into(),
            ));
        }
        let config = match args.mode {
            Mode::Coplanar => SearchConfig::coplanar(),
            Mode::FullSphere => SearchConfig::full_sphere(),
        };
        let (settings, _) = maximize_chsh(correlator_for(args.source, args.n, args.seed), &config)?;
        settings
    } else {
        match (&args.a, &args.a_prime, &args.b, &args.b_prime) {
            (Some(a), Some(ap), Some(b), Some(bp)) => ChshSettings::new(
                parse_setting(a)?,
                parse_setting(ap)?,
                parse_setting(b)?,
                parse_setting(bp)?,
            ),
            _ => {
                return Err(CliError::Usage(
                    "provide --a, --a-prime, --b, --b-prime, or use --optimize".into(),
                ))
            }
        }
    };

    let report = chsh_statistic(
        correlator_for(args.source, args.n, args.seed),
        &settings,
        args.source.label(),
    )?;
    let wrapped = ChshCliReport {
        schema_version: SCHEMA_VERSION,
        source: args.source.label(),
        optimized: args.optimize,
        report,
    };
    let text = match args.format {
        Format::Json => serde_json::to_string_pretty(&wrapped).expect("report serializes") + "\n",
        Format::Csv => {
            let r = &wrapped.report;
            format!(
                "e_ab,e_ab_prime,e_a_prime_b,e_a_prime_b_prime,s,bound_satisfied\n\
                 {},{},{},{},{},{}\n",
                r.e_ab, r.e_ab_prime, r.e_a_prime_b, r.e_a_prime_b_prime, r.statistic,
                r.bound_satisfied
            )
        }
        Format::Plain => {
            let r = &wrapped.report;
            format!(
                "source            {}\n\
                 settings          a = {}, a' = {}\n\
                 \x20                 b = {}, b' = {}\n\
                 E(a,b)            {:+.7}\n\
                 E(a,b')           {:+.7}\n\
                 E(a',b)           {:+.7}\n\
                 E(a',b')          {:+.7}\n\
                 S                 {:.7}\n\
                 bound S <= 2      {}\n",
                wrapped.source,
                fmt_unit(r.settings.a),
                fmt_unit(r.settings.a_prime),
                fmt_unit(r.settings.b),
                fmt_unit(r.settings.b_prime),
                r.e_ab,
                r.e_ab_prime,
                r.e_a_prime_b,
                r.e_a_prime_b_prime,
                r.statistic,
                if r.bound_satisfied { "satisfied" } else { "violated" }
            )
        }
    };
    emit(&text, args.out.as_ref())
}

#[derive(Serialize)]
struct SweepCliReport {
    schema_version: u32,
    source: &'static str,
    step_deg: f64,
    quadruples: usize,
    max_statistic: f64,
    bound_satisfied: bool,
}

fn cmd_chsh_sweep(args: &ChshArgs, step: f64) -> Result<(), CliError> {
    if args.source == Source::QmSampled {
        return Err(CliError::Usage(
            "--sweep needs an analytic source; use qm, sign-model, or bivector-projected".into(),
        ));
    }
    let points = coplanar_sweep(correlator_for(args.source, args.n, args.seed), step)?;
    let quadruples = eprsim_core::chsh::coplanar_quadruple_sweep::<f64>(step)?;
    let check = verify_bound(
        correlator_for(args.source, args.n, args.seed),
        &quadruples,
        1e-12,
    )?;
    let summary = SweepCliReport {
        schema_version: SCHEMA_VERSION,
        source: args.source.label(),
        step_deg: step,
        quadruples: check.quadruples,
        max_statistic: check.max_statistic,
        bound_satisfied: check.passed,
    };
    match args.format {
        Format::Json => {
            #[derive(Serialize)]
            struct Full {
                #[serde(flatten)]
                summary: SweepCliReport,
                points: Vec<eprsim_core::chsh::SweepPoint<f64>>,
            }
            let text =
                serde_json::to_string(&Full { summary, points }).expect("report serializes") + "\n";
            emit(&text, args.out.as_ref())
        }
        _ => {
            // CSV rows to the chosen destination; summary to stdout when the
            // rows went to a file.
            let csv = sweep_to_csv(&points);
            emit(&csv, args.out.as_ref())?;
            if args.out.is_some() {
                println!(
                    "{} quadruples at {} deg: max S = {:.7} ({})",
                    summary.quadruples,
                    summary.step_deg,
                    summary.max_statistic,
                    if summary.bound_satisfied {
                        "bound satisfied"
                    } else {
                        "bound violated"
                    }
                );
            }
            Ok(())
        }
    }
}

#[derive(Serialize)]
struct TrialsCliReport {
    schema_version: u32,
    source: &'static str,
    record: TrialRecord<f64>,
    summary: CorrelationEstimate<f64>,
}

fn cmd_trials(
    source: Source,
    a: &str,
    b: &str,
    n: u64,
    seed: u64,
    format: Format,
    out: Option<&PathBuf>,
) -> Result<(), CliError> {
    let a = parse_setting(a)?;
    let b = parse_setting(b)?;
    let record = match source {
        Source::Qm => {
            return Err(CliError::Usage(
                "the qm source is an expectation oracle; use qm-sampled for trial records".into(),
            ))
        }
        Source::QmSampled => JointDistribution::from_settings(a, b).sample_record(a, b, n, seed)?,
        Source::SignModel => simulate_trials(&SignModel::<f64>::new(), a, b, n, seed)?,
        Source::BivectorProjected => {
            simulate_trials(&reduce_to_hvm(BivectorModel::<f64>::new()), a, b, n, seed)?
        }
    };
    let summary = record.summary();

    match format {
        Format::Json => {
            let wrapped = TrialsCliReport {
                schema_version: SCHEMA_VERSION,
                source: source.label(),
                record,
                summary,
            };
            let text = serde_json::to_string(&wrapped).expect("record serializes") + "\n";
            emit(&text, out)
        }
        _ => {
            emit(&record.to_csv(), out)?;
            let summary_line = format!(
                "n = {}, mean_a = {:+.6}, mean_b = {:+.6}, mean_ab = {:+.6}, std_error_ab = {:.6}\n",
                summary.n_trials, summary.mean_a, summary.mean_b, summary.mean_ab,
                summary.std_error_ab
            );
            if out.is_some() {
                print!("{summary_line}");
            } else {
                eprint!("{summary_line}");
            }
            Ok(())
        }
    }
}
