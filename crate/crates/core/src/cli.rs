//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 on an operational failure (with a JSON error
//! object on stderr), 2 on a usage error. All randomness comes from `--seed`.

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::entropy::r43_curve_grid;
use crate::error::{Error, Result};
use crate::extract::{output_budget, BitString, BlockExtractor};
use crate::fmt::{serialize_opt_sig17, serialize_sig17, sig17};
use crate::protocol::{certify, simulate_rounds, CertificationResult, ProtocolSpec, RoundLog};
use crate::verify;
use crate::witness::{classical_bound, quantum_bound_grid, quantum_bound_seesaw, WitnessSpec, MAX_GRID_MEASUREMENTS};

#[derive(Debug, Parser)]
#[command(name = "sdiqrng", version, about = "Semi-device-independent randomness certification for qubits")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classical and qubit bounds of a witness, as JSON.
    Bounds(BoundsArgs),
    /// R43 witness-to-entropy curve as CSV.
    Curve(CurveArgs),
    /// Simulate protocol rounds and write a round log CSV.
    Simulate(SimulateArgs),
    /// Estimate the witness from a round log and certify entropy, as JSON.
    Certify(CertifyArgs),
    /// Toeplitz-hash the generation bits of a certified log into raw bytes.
    Extract(ExtractArgs),
    /// Run the numerical self-checks and print one line per check.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false, id = "source")]
pub struct WitnessSource {
    /// Witness JSON file: {"name": str, "coeffs": [[...], ...]}.
    #[arg(long, group = "source")]
    pub witness: Option<PathBuf>,
    /// Built-in witness: r43, r33 or i4.
    #[arg(long, group = "source")]
    pub builtin: Option<String>,
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    #[command(flatten)]
    pub source: WitnessSource,
    #[arg(long, default_value_t = 20)]
    pub restarts: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Fibonacci-grid points per axis (only used with at most 3 measurements).
    #[arg(long, default_value_t = 100)]
    pub grid_resolution: usize,
    /// Write the see-saw maximizer as a strategy JSON file.
    #[arg(long)]
    pub strategy_out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CurveArgs {
    #[arg(long, default_value_t = 101)]
    pub points: usize,
    /// Output file; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    /// Built-in protocol: r43 or r33.
    #[arg(long, default_value = "r43")]
    pub protocol: String,
    #[arg(long, default_value_t = 1_000_000)]
    pub rounds: usize,
    #[arg(long, default_value_t = 0.1)]
    pub test_fraction: f64,
    #[arg(long, default_value_t = 0.0)]
    pub noise: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Preparation index used in generation rounds (0-based).
    #[arg(long, default_value_t = 0)]
    pub generation_x: usize,
    /// Measurement index used in generation rounds (0-based).
    #[arg(long, default_value_t = 0)]
    pub generation_y: usize,
    /// Output CSV; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CertifyArgs {
    #[arg(long)]
    pub log: PathBuf,
    #[arg(long, default_value_t = 0.99)]
    pub confidence: f64,
    #[arg(long, default_value = "r43")]
    pub protocol: String,
    /// Also write the JSON result to this file.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ExtractArgs {
    #[arg(long)]
    pub log: PathBuf,
    /// Certification JSON produced by `certify`.
    #[arg(long)]
    pub cert: PathBuf,
    /// Raw output bytes.
    #[arg(long)]
    pub out: PathBuf,
    /// Toeplitz seed, MSB-first hex; needs at least block + output − 1 bits.
    #[arg(long)]
    pub seed_hex: String,
    /// Raw bits per Toeplitz block.
    #[arg(long, default_value_t = 4096)]
    pub block_bits: usize,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Serialize)]
struct BoundsReport<'a> {
    witness: &'a str,
    #[serde(serialize_with = "serialize_sig17")]
    classical: f64,
    #[serde(serialize_with = "serialize_sig17")]
    quantum_seesaw: f64,
    #[serde(serialize_with = "serialize_opt_sig17")]
    quantum_grid: Option<f64>,
    seesaw_converged: bool,
    seesaw_iterations: usize,
}

#[derive(Serialize)]
struct ExtractReport {
    raw_bits: u64,
    budget_bits: u64,
    block_bits: usize,
    block_output_bits: usize,
    output_bits: u64,
    output_bytes: u64,
}

#[derive(Serialize)]
struct ErrorReport<'a> {
    error: &'a str,
    message: String,
}

/// Runs the CLI against the process streams.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    0
                }
                _ => {
                    let _ = write!(err, "{text}");
                    2
                }
            };
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let report = ErrorReport { error: e.kind(), message: e.to_string() };
            let _ = writeln!(err, "{}", serde_json::to_string(&report).unwrap_or_default());
            1
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Bounds(a) => bounds(a, out),
        Command::Curve(a) => curve(a, out),
        Command::Simulate(a) => simulate(a, out),
        Command::Certify(a) => certify_cmd(a, out),
        Command::Extract(a) => extract(a, out),
        Command::Verify(a) => verify_cmd(a, out),
    }
}

fn protocol(name: &str) -> Result<ProtocolSpec> {
    ProtocolSpec::builtin(name).ok_or_else(|| Error::InvalidArgument(format!("unknown protocol {name:?}")))
}

fn open(path: &Path) -> Result<BufReader<File>> {
    Ok(BufReader::new(File::open(path)?))
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    Ok(BufWriter::new(File::create(path)?))
}

fn bounds(a: BoundsArgs, out: &mut dyn Write) -> Result<i32> {
    let witness = match (&a.source.witness, &a.source.builtin) {
        (Some(path), _) => serde_json::from_reader::<_, WitnessSpec>(open(path)?)?,
        (None, Some(name)) => WitnessSpec::builtin(name)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown builtin witness {name:?}")))?,
        (None, None) => unreachable!("clap enforces a witness source"),
    };
    let classical = classical_bound(&witness)?;
    let seesaw = quantum_bound_seesaw(&witness, a.restarts, a.seed)?;
    let grid = if witness.num_measurements() <= MAX_GRID_MEASUREMENTS {
        Some(quantum_bound_grid(&witness, a.grid_resolution)?)
    } else {
        None
    };
    if let Some(path) = &a.strategy_out {
        let mut f = create(path)?;
        serde_json::to_writer_pretty(&mut f, seesaw.quantum_strategy().expect("qubit maximizer"))?;
        writeln!(f)?;
        f.flush()?;
    }
    let report = BoundsReport {
        witness: witness.name(),
        classical: classical.value,
        quantum_seesaw: seesaw.value,
        quantum_grid: grid,
        seesaw_converged: seesaw.converged,
        seesaw_iterations: seesaw.iterations,
    };
    writeln!(out, "{}", serde_json::to_string(&report)?)?;
    Ok(0)
}

/// Writes the curve CSV with header `witness_value,p_lb_bound,min_entropy_bits`.
pub fn write_curve_csv(points: usize, out: &mut dyn Write) -> Result<()> {
    writeln!(out, "witness_value,p_lb_bound,min_entropy_bits")?;
    for p in r43_curve_grid(points)? {
        writeln!(out, "{},{},{}", sig17(p.witness_value), sig17(p.p_lb_bound), sig17(p.min_entropy_bound))?;
    }
    Ok(())
}

fn curve(a: CurveArgs, out: &mut dyn Write) -> Result<i32> {
    match &a.out {
        Some(path) => {
            let mut f = create(path)?;
            write_curve_csv(a.points, &mut f)?;
            f.flush()?;
        }
        None => write_curve_csv(a.points, out)?,
    }
    Ok(0)
}

fn simulate(a: SimulateArgs, out: &mut dyn Write) -> Result<i32> {
    let spec = protocol(&a.protocol)?;
    let log = simulate_rounds(&spec, a.rounds, a.test_fraction, (a.generation_x, a.generation_y), a.noise, a.seed)?;
    match &a.out {
        Some(path) => {
            let mut f = create(path)?;
            log.write_csv(&mut f)?;
            f.flush()?;
        }
        None => log.write_csv(out)?,
    }
    Ok(0)
}

fn certify_cmd(a: CertifyArgs, out: &mut dyn Write) -> Result<i32> {
    let spec = protocol(&a.protocol)?;
    let log = RoundLog::read_csv(open(&a.log)?)?;
    let result = certify(&log, &spec, a.confidence)?;
    let json = serde_json::to_string_pretty(&result)?;
    if let Some(path) = &a.out {
        std::fs::write(path, format!("{json}\n"))?;
    }
    writeln!(out, "{json}")?;
    Ok(0)
}

fn extract(a: ExtractArgs, out: &mut dyn Write) -> Result<i32> {
    let cert: CertificationResult = serde_json::from_reader(open(&a.cert)?)?;
    let log = RoundLog::read_csv(open(&a.log)?)?;
    let raw = BitString::from_bools(log.generation_bits());
    if raw.len() as u64 != cert.generation_rounds {
        return Err(Error::Shape(format!(
            "log has {} generation rounds, certificate covers {}",
            raw.len(),
            cert.generation_rounds
        )));
    }
    let budget = output_budget(&cert);
    if budget == 0 {
        return Err(Error::InsufficientData("certificate leaves no extractable bits".into()));
    }
    let seed = BitString::from_hex(&a.seed_hex)?;
    let extractor = BlockExtractor::new(a.block_bits, cert.certified_entropy_per_round, &seed)?;
    let bits = extractor.extract(&raw, budget)?;
    // whole bytes only
    let bytes = bits.prefix(bits.len() / 8 * 8)?.to_bytes_msb();
    std::fs::write(&a.out, &bytes)?;
    let report = ExtractReport {
        raw_bits: raw.len() as u64,
        budget_bits: budget,
        block_bits: a.block_bits,
        block_output_bits: extractor.config().output_length(),
        output_bits: bytes.len() as u64 * 8,
        output_bytes: bytes.len() as u64,
    };
    writeln!(out, "{}", serde_json::to_string(&report)?)?;
    Ok(0)
}

fn verify_cmd(a: VerifyArgs, out: &mut dyn Write) -> Result<i32> {
    let checks = verify::run_all(a.seed)?;
    let mut all = true;
    for c in &checks {
        all &= c.passed;
        writeln!(out, "{} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail)?;
    }
    Ok(if all { 0 } else { 1 })
}
