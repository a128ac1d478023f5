//! `duality`: analyze, sample and verify two-qubit states on the command line.
//!
//! Exit status: 0 on success, 1 when `verify` finds a failing check, 2 on bad
//! usage or input.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use duality_core::dataset::{emit_dataset, Format, Record, CSV_HEADER};
use duality_core::sampling::{generate, generate_serial, sample_at, Ensemble, SampleSpec};
use duality_core::state::{embed_correlated, make_state, triad};
use duality_core::verify::verify_suite;
use duality_core::{
    ball_point, classify, coords_from_state, quaternify, schmidt_decompose, stereo_project, ComplexScalar,
    CorrelatedState, ExtendedQuaternion, TwoQubitState, DEFAULT_CLASSIFY_TOL,
};
use num_complex::Complex64;
use serde_json::json;

#[derive(Parser)]
#[command(name = "duality", version, about = "Wave/particle/entanglement geometry of two-qubit pure states")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutFormat {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DataFormat {
    Csv,
    Json,
}

impl From<DataFormat> for Format {
    fn from(f: DataFormat) -> Self {
        match f {
            DataFormat::Csv => Format::Csv,
            DataFormat::Json => Format::Json,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EnsembleArg {
    Haar,
    Separable,
    Fixedc,
    Bloch,
}

#[derive(Subcommand)]
enum Command {
    /// Triad, S⁴ coordinates, projection and strata of one state.
    Analyze {
        /// Amplitudes as `re0,im0,re1,im1,re2,im2,re3,im3`.
        #[arg(long, allow_hyphen_values = true)]
        state: String,
        /// Rescale to unit norm instead of rejecting unnormalized input.
        #[arg(long)]
        normalize: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: OutFormat,
    },
    /// Reduce `μ|0⟩|χ₁⟩ + ν|1⟩|χ₂⟩` to four amplitudes and analyze it.
    Embed {
        /// `re,im`
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
        /// `re,im`
        #[arg(long, allow_hyphen_values = true)]
        nu: String,
        /// File with one `re,im` component per line.
        #[arg(long)]
        chi1: PathBuf,
        #[arg(long)]
        chi2: PathBuf,
        #[arg(long)]
        normalize: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: OutFormat,
    },
    /// Seeded ensemble of states written as a dataset.
    Sample {
        #[arg(long, value_enum, default_value = "haar")]
        ensemble: EnsembleArg,
        /// Concurrence for the fixed-concurrence ensemble.
        #[arg(long)]
        c: Option<f64>,
        #[arg(long, default_value_t = 1000)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output file; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "csv")]
        format: DataFormat,
        /// Generate on one thread (output is identical).
        #[arg(long)]
        serial: bool,
    },
    /// Numerical checks of the triad identity and its geometric readings.
    Verify {
        #[arg(long, default_value_t = 10_000)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1e-10)]
        tolerance: f64,
        #[arg(long, value_enum, default_value = "text")]
        format: OutFormat,
    },
    /// Fixed-concurrence batches, one per level.
    Shells {
        /// Comma-separated concurrence levels.
        #[arg(long, default_value = "0,0.3,0.6,0.9,1")]
        levels: String,
        #[arg(long, default_value_t = 1000)]
        count_per_level: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "csv")]
        format: DataFormat,
    },
}

type AnyResult<T> = Result<T, Box<dyn std::error::Error>>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) if broken_pipe(e.as_ref()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

// A closed downstream pipe (`duality sample | head`) is not an error.
fn broken_pipe(e: &(dyn std::error::Error + 'static)) -> bool {
    let io = e
        .downcast_ref::<io::Error>()
        .or_else(|| match e.downcast_ref::<duality_core::Error>() {
            Some(duality_core::Error::Io(io)) => Some(io),
            _ => None,
        });
    io.is_some_and(|io| io.kind() == io::ErrorKind::BrokenPipe)
}

fn run(cmd: Command) -> AnyResult<bool> {
    match cmd {
        Command::Analyze { state, normalize, format } => {
            let amps = parse_amplitudes(&state)?;
            let s = make_state(amps, normalize)?;
            print_analysis(&s, format, None)?;
        }
        Command::Embed { mu, nu, chi1, chi2, normalize, format } => {
            let (mu, nu) = (parse_complex(&mu)?, parse_complex(&nu)?);
            let (chi1, chi2) = (read_vector(&chi1)?, read_vector(&chi2)?);
            let c = if normalize {
                CorrelatedState::normalized(mu, nu, chi1, chi2)?
            } else {
                CorrelatedState::new(mu, nu, chi1, chi2)?
            };
            let emb = embed_correlated(&c);
            print_analysis(&emb.state, format, Some(emb.coefficients))?;
        }
        Command::Sample { ensemble, c, count, seed, out, format, serial } => {
            let ensemble = match (ensemble, c) {
                (EnsembleArg::Fixedc, Some(c)) => Ensemble::FixedConcurrence(c),
                (EnsembleArg::Fixedc, None) => return Err("--c is required for the fixedc ensemble".into()),
                (_, Some(_)) => return Err("--c only applies to the fixedc ensemble".into()),
                (EnsembleArg::Haar, None) => Ensemble::Haar,
                (EnsembleArg::Separable, None) => Ensemble::Separable,
                (EnsembleArg::Bloch, None) => Ensemble::Bloch,
            };
            let spec = SampleSpec::new(count, seed, ensemble)?;
            let states = if serial { generate_serial(&spec)? } else { generate(&spec)? };
            with_output(out.as_deref(), |w| Ok(emit_dataset(&states, format.into(), w)?))?;
        }
        Command::Verify { count, seed, tolerance, format } => {
            if count == 0 {
                return Err("--count must be at least 1".into());
            }
            if tolerance.is_nan() || tolerance <= 0.0 {
                return Err("--tolerance must be positive".into());
            }
            let report = verify_suite(count, seed, tolerance)?;
            match format {
                OutFormat::Json => println!("{}", serde_json::to_string_pretty(&report)?),
                _ => println!("{report}"),
            }
            return Ok(report.pass);
        }
        Command::Shells { levels, count_per_level, seed, out, format } => {
            let levels = parse_floats(&levels)?;
            if levels.is_empty() {
                return Err("--levels is empty".into());
            }
            let mut states = Vec::with_capacity(levels.len() * count_per_level);
            for (k, &c) in levels.iter().enumerate() {
                let spec = SampleSpec::new(count_per_level, seed, Ensemble::FixedConcurrence(c))?;
                // disjoint stream ranges per level keep batches independent
                states.extend((0..count_per_level).map(|j| sample_at(&spec, k * count_per_level + j)));
            }
            with_output(out.as_deref(), |w| Ok(emit_dataset(&states, format.into(), w)?))?;
        }
    }
    Ok(true)
}

fn with_output(path: Option<&Path>, f: impl FnOnce(&mut dyn Write) -> AnyResult<()>) -> AnyResult<()> {
    match path {
        Some(p) => {
            let file = File::create(p).map_err(|e| format!("{}: {e}", p.display()))?;
            let mut w = BufWriter::new(file);
            f(&mut w)?;
            w.flush()?;
        }
        None => {
            let stdout = io::stdout();
            let mut w = BufWriter::new(stdout.lock());
            f(&mut w)?;
            w.flush()?;
        }
    }
    Ok(())
}

fn parse_floats(s: &str) -> AnyResult<Vec<f64>> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<f64>().map_err(|e| format!("bad number {t:?}: {e}").into()))
        .collect()
}

fn parse_complex(s: &str) -> AnyResult<ComplexScalar> {
    match parse_floats(s)?[..] {
        [re] => Ok(Complex64::new(re, 0.0)),
        [re, im] => Ok(Complex64::new(re, im)),
        _ => Err(format!("expected `re,im`, got {s:?}").into()),
    }
}

fn parse_amplitudes(s: &str) -> AnyResult<[ComplexScalar; 4]> {
    let v = parse_floats(s)?;
    if v.len() != 8 {
        return Err(format!("--state needs 8 numbers (re,im for each amplitude), got {}", v.len()).into());
    }
    Ok(std::array::from_fn(|i| Complex64::new(v[2 * i], v[2 * i + 1])))
}

fn read_vector(path: &Path) -> AnyResult<Vec<ComplexScalar>> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| parse_complex(l).map_err(|e| format!("{}: {e}", path.display()).into()))
        .collect()
}

fn quaternion_json(q: ExtendedQuaternion) -> serde_json::Value {
    match q.finite() {
        Some(q) => json!(q.to_reals()),
        None => json!("inf"),
    }
}

fn print_analysis(s: &TwoQubitState, format: OutFormat, coefficients: Option<[ComplexScalar; 4]>) -> AnyResult<()> {
    let mut out = io::stdout().lock();
    match format {
        OutFormat::Csv => {
            writeln!(out, "{CSV_HEADER}")?;
            writeln!(out, "{}", Record::from_state(s).csv_line())?;
        }
        OutFormat::Json => {
            let a = s.amplitudes();
            let t = triad(s);
            let p = coords_from_state(s);
            let b = ball_point(s);
            let sp = quaternify(s);
            let sch = schmidt_decompose(s);
            let labels: Vec<&str> = classify(s, DEFAULT_CLASSIFY_TOL).iter().map(|l| l.name()).collect();
            let mut v = json!({
                "amplitudes": a.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>(),
                "V": t.visibility,
                "D": t.distinguishability,
                "C": t.concurrence,
                "sum_of_squares": t.sum_of_squares(),
                "coords": p.to_array(),
                "q1": sp.q1.to_reals(),
                "q2": sp.q2.to_reals(),
                "Q": quaternion_json(stereo_project(&sp)),
                "ball": [b.x0, b.x1, b.x2],
                "radius": b.radius,
                "schmidt": [sch.lambda1, sch.lambda2],
                "labels": labels,
            });
            if let Some(c) = coefficients {
                v["coefficients"] = json!(c.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>());
            }
            writeln!(out, "{}", serde_json::to_string_pretty(&v)?)?;
        }
        OutFormat::Text => {
            let t = triad(s);
            let p = coords_from_state(s);
            let b = ball_point(s);
            let sch = schmidt_decompose(s);
            if let Some(c) = coefficients {
                writeln!(out, "coefficients  a={} b={} c={} d={}", c[0], c[1], c[2], c[3])?;
            }
            let a = s.amplitudes();
            writeln!(out, "amplitudes    {} {} {} {}", a[0], a[1], a[2], a[3])?;
            writeln!(out, "V             {:.12}", t.visibility)?;
            writeln!(out, "D             {:.12}", t.distinguishability)?;
            writeln!(out, "C             {:.12}", t.concurrence)?;
            writeln!(out, "V²+D²+C²      {:.15}", t.sum_of_squares())?;
            let x = p.to_array();
            writeln!(out, "S4            ({:.12}, {:.12}, {:.12}, {:.12}, {:.12})", x[0], x[1], x[2], x[3], x[4])?;
            writeln!(out, "Q             {}", stereo_project(&quaternify(s)))?;
            writeln!(out, "ball          ({:.12}, {:.12}, {:.12}) r={:.12}", b.x0, b.x1, b.x2, b.radius)?;
            writeln!(out, "schmidt       {:.12} {:.12}", sch.lambda1, sch.lambda2)?;
            writeln!(out, "strata        {}", classify(s, DEFAULT_CLASSIFY_TOL))?;
        }
    }
    Ok(())
}
