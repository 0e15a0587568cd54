//! Command-line front end: single runs, parameter sweeps and verification
//! reports. JSON configuration in, CSV/JSON results out.
//!
//! Every number in a result record or CSV cell is serialized with twelve
//! fixed decimals and a `.` separator, independent of locale, so repeated
//! invocations diff cleanly. CSV rows use LF line endings.
//!
//! Exit codes: 0 success, 2 invalid parameters or configuration, 3 internal
//! invariant violation, 4 unwritable output, 5 verification failure
//! (oracle-vs-simulator deviation above threshold).

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng as _, SeedableRng as _};
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;

use crate::error::Error;
use crate::fidelity::{
    average_fidelity_exact, average_fidelity_mc_with_stream, closed_form_average_fidelity,
    fidelity_pure, AgreementClass, DiscrepancyRow, FidelityMethod,
};
use crate::noise::{NoiseParams, QubitChannel};
use crate::oracle;
use crate::protocol::{
    closed_form_output_state, effective_channel, run_protocol, ProtocolSchedule,
};
use crate::states::{haar_random_qubit, PureQubit};

/// Header shared by the sweep and verify CSV outputs.
pub const CSV_HEADER: &str = "p1,p2,eta,F,f_eq9,f_sim_exact,delta,agreement_class";

const ORACLE_AGREEMENT_THRESHOLD: f64 = 1e-12;

const EXIT_OK: i32 = 0;
const EXIT_USAGE: i32 = 2;
const EXIT_INTERNAL: i32 = 3;
const EXIT_IO: i32 = 4;
const EXIT_VERIFY_FAILED: i32 = 5;

#[derive(Parser)]
#[command(
    name = "teleportsim",
    version,
    about = "Density-matrix teleportation simulator with noisy resources",
    subcommand_required = true,
    arg_required_else_help = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one parameter point (average fidelity, or one message state).
    Run(RunArgs),
    /// Execute a parameter sweep described by a JSON config, writing CSV.
    Sweep(SweepArgs),
    /// Compare the closed-form model against the simulator and the
    /// branch-enumeration oracle; write the report CSV and a summary.
    Verify(VerifyArgs),
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    /// Closed-form average-fidelity expression (the model under test).
    Eq9,
    /// Exact six-state average over the simulated channel (default).
    SimExact,
    /// Monte Carlo Haar average over the simulated channel.
    SimMc,
    /// Branch-enumeration oracle.
    Oracle,
}

#[derive(Args)]
struct RunArgs {
    /// Single-qubit gate reliability.
    #[arg(long)]
    p1: f64,
    /// Two-qubit gate reliability.
    #[arg(long)]
    p2: f64,
    /// Measurement efficiency.
    #[arg(long)]
    eta: f64,
    /// Resource singlet fraction F.
    #[arg(long = "werner-f")]
    werner_f: f64,
    /// Fixed message state as "THETA,PHI" Bloch angles.
    #[arg(long, value_name = "THETA,PHI", conflicts_with = "haar_seed")]
    state: Option<String>,
    /// Haar-random message state drawn from this seed.
    #[arg(long)]
    haar_seed: Option<u64>,
    #[arg(long, value_enum, default_value = "sim-exact")]
    method: MethodArg,
    /// Sample count for --method sim-mc.
    #[arg(long, default_value_t = 200_000)]
    mc_samples: usize,
    /// RNG seed for --method sim-mc.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Emit the record as JSON instead of key=value lines.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct SweepArgs {
    /// Path to the sweep configuration (JSON).
    config: PathBuf,
    /// Override the configured output path.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Grid points per parameter axis.
    #[arg(long, default_value_t = 5)]
    grid: usize,
    /// Seed for the random oracle cross-check points.
    #[arg(long, default_value_t = 7)]
    seed: u64,
    /// Report CSV path.
    #[arg(long, default_value = "verify_report.csv")]
    out: PathBuf,
    /// Emit the summary as JSON.
    #[arg(long)]
    json: bool,
}

/// Parses arguments from the process environment and dispatches; returns the
/// process exit code.
pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // Help and version requests land here with exit code 0.
            let code = if err.use_stderr() {
                EXIT_USAGE
            } else {
                EXIT_OK
            };
            let _ = err.print();
            return code;
        }
    };
    let outcome = match cli.command {
        Command::Run(args) => cmd_run(&args),
        Command::Sweep(args) => cmd_sweep(&args),
        Command::Verify(args) => cmd_verify(&args),
    };
    match outcome {
        Ok(code) => code,
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            failure.code
        }
    }
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    fn internal(err: Error) -> Self {
        Self {
            code: EXIT_INTERNAL,
            message: format!("internal invariant violation: {err}"),
        }
    }

    fn io(path: &Path, err: std::io::Error) -> Self {
        Self {
            code: EXIT_IO,
            message: format!("cannot write {}: {err}", path.display()),
        }
    }
}

type CmdResult = Result<i32, Failure>;

/// Fixed 12-decimal formatting; negative zero is normalized away.
fn fmt_num(x: f64) -> String {
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{x:.12}")
}

fn parse_params(p1: f64, p2: f64, eta: f64, werner_f: f64) -> Result<NoiseParams, Failure> {
    NoiseParams::new(p1, p2, eta, werner_f).map_err(|err| Failure::usage(err.to_string()))
}

fn parse_state(spec: &str) -> Result<PureQubit, Failure> {
    let parts: Vec<&str> = spec.split(',').collect();
    if parts.len() != 2 {
        return Err(Failure::usage(format!(
            "--state expects \"THETA,PHI\", got {spec:?}"
        )));
    }
    let theta: f64 = parts[0]
        .trim()
        .parse()
        .map_err(|_| Failure::usage(format!("cannot parse THETA from {spec:?}")))?;
    let phi: f64 = parts[1]
        .trim()
        .parse()
        .map_err(|_| Failure::usage(format!("cannot parse PHI from {spec:?}")))?;
    PureQubit::from_bloch_angles(theta, phi).map_err(|err| Failure::usage(err.to_string()))
}

struct RunRecord {
    method: &'static str,
    params: NoiseParams,
    fidelity: f64,
    std_error: f64,
    n_samples: usize,
    state: Option<[f64; 3]>,
    branch_probabilities: Option<[f64; 4]>,
}

impl RunRecord {
    fn print_plain(&self) {
        println!("method={}", self.method);
        println!("p1={}", fmt_num(self.params.p1()));
        println!("p2={}", fmt_num(self.params.p2()));
        println!("eta={}", fmt_num(self.params.eta()));
        println!("F={}", fmt_num(self.params.werner_f()));
        if let Some(bloch) = self.state {
            println!("state_nx={}", fmt_num(bloch[0]));
            println!("state_ny={}", fmt_num(bloch[1]));
            println!("state_nz={}", fmt_num(bloch[2]));
        }
        println!("fidelity={}", fmt_num(self.fidelity));
        println!("std_error={}", fmt_num(self.std_error));
        println!("n_samples={}", self.n_samples);
        if let Some(probs) = self.branch_probabilities {
            println!("branch_00={}", fmt_num(probs[0]));
            println!("branch_01={}", fmt_num(probs[1]));
            println!("branch_10={}", fmt_num(probs[2]));
            println!("branch_11={}", fmt_num(probs[3]));
        }
    }

    fn print_json(&self) {
        let mut obj = serde_json::json!({
            "method": self.method,
            "p1": self.params.p1(),
            "p2": self.params.p2(),
            "eta": self.params.eta(),
            "F": self.params.werner_f(),
            "fidelity": self.fidelity,
            "std_error": self.std_error,
            "n_samples": self.n_samples,
        });
        if let Some(bloch) = self.state {
            obj["state_bloch"] = serde_json::json!(bloch);
        }
        if let Some(probs) = self.branch_probabilities {
            obj["branch_probabilities"] = serde_json::json!(probs);
        }
        println!("{obj}");
    }
}

fn oracle_channel(
    params: &NoiseParams,
    schedule: &ProtocolSchedule,
) -> Result<QubitChannel, Error> {
    QubitChannel::from_unit_images(oracle::enumerate(params, schedule).unit_images())
}

fn cmd_run(args: &RunArgs) -> CmdResult {
    let params = parse_params(args.p1, args.p2, args.eta, args.werner_f)?;
    let schedule = ProtocolSchedule::default();

    let message = if let Some(spec) = &args.state {
        Some(parse_state(spec)?)
    } else {
        args.haar_seed
            .map(|seed| haar_random_qubit(&mut ChaCha8Rng::seed_from_u64(seed)))
    };

    let record = match message {
        Some(psi) => run_single_state(&psi, &params, &schedule, args)?,
        None => run_average(&params, &schedule, args)?,
    };

    if args.json {
        record.print_json();
    } else {
        record.print_plain();
    }
    Ok(EXIT_OK)
}

/// Average-fidelity mode: no message state fixed, Haar-average per method.
fn run_average(
    params: &NoiseParams,
    schedule: &ProtocolSchedule,
    args: &RunArgs,
) -> Result<RunRecord, Failure> {
    let (method, fidelity, std_error, n_samples) = match args.method {
        MethodArg::Eq9 => (
            FidelityMethod::ClosedForm.as_str(),
            closed_form_average_fidelity(params),
            0.0,
            0,
        ),
        MethodArg::SimExact => {
            let channel = effective_channel(params, schedule).map_err(Failure::internal)?;
            let est = average_fidelity_exact(&channel).map_err(Failure::internal)?;
            (est.method.as_str(), est.value, 0.0, est.n_samples)
        }
        MethodArg::SimMc => {
            if args.mc_samples < 100 {
                return Err(Failure::usage(format!(
                    "--mc-samples {} is below the minimum of 100",
                    args.mc_samples
                )));
            }
            let channel = effective_channel(params, schedule).map_err(Failure::internal)?;
            let est = average_fidelity_mc_with_stream(&channel, args.mc_samples, args.seed, 0)
                .map_err(Failure::internal)?;
            (est.method.as_str(), est.value, est.std_error, est.n_samples)
        }
        MethodArg::Oracle => {
            let channel = oracle_channel(params, schedule).map_err(Failure::internal)?;
            let est = average_fidelity_exact(&channel).map_err(Failure::internal)?;
            (
                FidelityMethod::Oracle.as_str(),
                est.value,
                0.0,
                est.n_samples,
            )
        }
    };
    Ok(RunRecord {
        method,
        params: *params,
        fidelity,
        std_error,
        n_samples,
        state: None,
        branch_probabilities: None,
    })
}

/// Fixed-message mode: the record carries the Bloch vector and, when the
/// simulator ran, the four reported-outcome probabilities. For `eq9` the
/// fidelity comes from the closed-form output state; every method is exact
/// here, so `sim-mc` falls back to the deterministic simulator evaluation.
fn run_single_state(
    psi: &PureQubit,
    params: &NoiseParams,
    schedule: &ProtocolSchedule,
    args: &RunArgs,
) -> Result<RunRecord, Failure> {
    let bloch = psi.bloch_vector();
    let (method, fidelity, branch_probabilities) = match args.method {
        MethodArg::Eq9 => {
            let out = closed_form_output_state(psi, params).map_err(Failure::internal)?;
            let fid = fidelity_pure(psi, &out).map_err(Failure::internal)?;
            (FidelityMethod::ClosedForm.as_str(), fid, None)
        }
        MethodArg::SimExact | MethodArg::SimMc => {
            let result = run_protocol(psi, params, schedule).map_err(Failure::internal)?;
            let fid = fidelity_pure(psi, result.averaged()).map_err(Failure::internal)?;
            (
                FidelityMethod::TwoDesign.as_str(),
                fid,
                Some(result.branch_probabilities()),
            )
        }
        MethodArg::Oracle => {
            let channel = oracle_channel(params, schedule).map_err(Failure::internal)?;
            let out = channel
                .apply_density(&psi.density())
                .map_err(Failure::internal)?;
            let fid = fidelity_pure(psi, &out).map_err(Failure::internal)?;
            (FidelityMethod::Oracle.as_str(), fid, None)
        }
    };
    Ok(RunRecord {
        method,
        params: *params,
        fidelity,
        std_error: 0.0,
        n_samples: 0,
        state: Some(bloch),
        branch_probabilities,
    })
}

// -------------------------------------------------------------------------
// Sweep
// -------------------------------------------------------------------------

/// One parameter axis of a sweep: `count` evenly spaced points from `start`
/// to `stop` (inclusive of `stop` unless `inclusive` is false).
#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AxisSpec {
    pub start: f64,
    pub stop: f64,
    pub count: usize,
    #[serde(default = "default_true")]
    pub inclusive: bool,
}

fn default_true() -> bool {
    true
}

impl AxisSpec {
    fn validate(&self, name: &str) -> Result<(), Failure> {
        if self.count < 1 {
            return Err(Failure::usage(format!("axis {name}: count must be >= 1")));
        }
        if self.start > self.stop || self.start.is_nan() || self.stop.is_nan() {
            return Err(Failure::usage(format!(
                "axis {name}: start {} exceeds stop {}",
                self.start, self.stop
            )));
        }
        if !(0.0..=1.0).contains(&self.start) || !(0.0..=1.0).contains(&self.stop) {
            return Err(Failure::usage(format!(
                "axis {name}: bounds must lie in [0, 1]"
            )));
        }
        Ok(())
    }

    /// The axis points, in ascending order.
    pub fn points(&self) -> Vec<f64> {
        if self.count == 1 {
            return vec![self.start];
        }
        let span = self.stop - self.start;
        let denom = if self.inclusive {
            (self.count - 1) as f64
        } else {
            self.count as f64
        };
        (0..self.count)
            .map(|i| self.start + span * i as f64 / denom)
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
pub enum SweepMethod {
    #[serde(rename = "sim-exact")]
    SimExact,
    #[serde(rename = "sim-mc")]
    SimMc,
}

/// Sweep configuration: per-parameter axes, simulator method for the
/// `f_sim_exact` column, Monte Carlo controls and the output path.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    pub p1: AxisSpec,
    pub p2: AxisSpec,
    pub eta: AxisSpec,
    #[serde(rename = "F")]
    pub werner_f: AxisSpec,
    #[serde(default = "default_method")]
    pub method: SweepMethod,
    #[serde(default = "default_mc_samples")]
    pub mc_samples: usize,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub output: Option<PathBuf>,
}

fn default_method() -> SweepMethod {
    SweepMethod::SimExact
}

fn default_mc_samples() -> usize {
    200_000
}

fn csv_row(params: &NoiseParams, f_model: f64, f_sim: f64) -> String {
    let delta = f_sim - f_model;
    let mut row = String::new();
    let _ = write!(
        row,
        "{},{},{},{},{},{},{},{}",
        fmt_num(params.p1()),
        fmt_num(params.p2()),
        fmt_num(params.eta()),
        fmt_num(params.werner_f()),
        fmt_num(f_model),
        fmt_num(f_sim),
        fmt_num(delta),
        AgreementClass::classify(delta).as_str()
    );
    row
}

fn write_csv(path: &Path, rows: &[String]) -> Result<(), Failure> {
    let mut contents = String::with_capacity((rows.len() + 1) * 64);
    contents.push_str(CSV_HEADER);
    contents.push('\n');
    for row in rows {
        contents.push_str(row);
        contents.push('\n');
    }
    std::fs::write(path, contents).map_err(|err| Failure::io(path, err))
}

fn cmd_sweep(args: &SweepArgs) -> CmdResult {
    let raw = std::fs::read_to_string(&args.config)
        .map_err(|err| Failure::usage(format!("cannot read {}: {err}", args.config.display())))?;
    let spec: SweepSpec = serde_json::from_str(&raw).map_err(|err| {
        Failure::usage(format!(
            "malformed sweep config {}: {err}",
            args.config.display()
        ))
    })?;

    spec.p1.validate("p1")?;
    spec.p2.validate("p2")?;
    spec.eta.validate("eta")?;
    spec.werner_f.validate("F")?;

    let out_path = args
        .out
        .clone()
        .or_else(|| spec.output.clone())
        .ok_or_else(|| {
            Failure::usage("no output path: set \"output\" in the config or pass --out")
        })?;

    let schedule = ProtocolSchedule::default();
    let mut rows = Vec::new();
    let mut row_index: u64 = 0;
    for &p1 in &spec.p1.points() {
        for &p2 in &spec.p2.points() {
            for &eta in &spec.eta.points() {
                for &f in &spec.werner_f.points() {
                    let params = parse_params(p1, p2, eta, f)?;
                    let f_model = closed_form_average_fidelity(&params);
                    let channel =
                        effective_channel(&params, &schedule).map_err(Failure::internal)?;
                    let f_sim = match spec.method {
                        SweepMethod::SimExact => {
                            average_fidelity_exact(&channel)
                                .map_err(Failure::internal)?
                                .value
                        }
                        SweepMethod::SimMc => {
                            // One ChaCha stream per row keeps rows independent
                            // and the whole file reproducible.
                            average_fidelity_mc_with_stream(
                                &channel,
                                spec.mc_samples,
                                spec.seed,
                                row_index,
                            )
                            .map_err(|err| match err {
                                Error::TooFewSamples(_) => Failure::usage(err.to_string()),
                                other => Failure::internal(other),
                            })?
                            .value
                        }
                    };
                    rows.push(csv_row(&params, f_model, f_sim));
                    row_index += 1;
                }
            }
        }
    }

    write_csv(&out_path, &rows)?;
    println!("rows={} output={}", rows.len(), out_path.display());
    Ok(EXIT_OK)
}

// -------------------------------------------------------------------------
// Verify
// -------------------------------------------------------------------------

/// The fixed point set for the oracle-vs-simulator cross-check: all sixteen
/// {0,1}⁴ corners plus 25 seeded uniform points.
fn cross_check_points(seed: u64) -> Vec<NoiseParams> {
    let mut points = Vec::with_capacity(41);
    for corner in 0..16u32 {
        let bit = |k: u32| f64::from(corner >> k & 1);
        points.push(
            NoiseParams::new(bit(3), bit(2), bit(1), bit(0)).expect("corners are valid parameters"),
        );
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..25 {
        points.push(
            NoiseParams::new(
                rng.gen_range(0.0..=1.0),
                rng.gen_range(0.0..=1.0),
                rng.gen_range(0.0..=1.0),
                rng.gen_range(0.0..=1.0),
            )
            .expect("uniform draws are valid parameters"),
        );
    }
    points
}

fn grid_points(per_axis: usize) -> Vec<NoiseParams> {
    let axis = AxisSpec {
        start: 0.0,
        stop: 1.0,
        count: per_axis,
        inclusive: true,
    };
    let pts = axis.points();
    let mut grid = Vec::with_capacity(pts.len().pow(4));
    for &p1 in &pts {
        for &p2 in &pts {
            for &eta in &pts {
                for &f in &pts {
                    grid.push(NoiseParams::new(p1, p2, eta, f).expect("grid in range"));
                }
            }
        }
    }
    grid
}

fn cmd_verify(args: &VerifyArgs) -> CmdResult {
    if args.grid < 1 {
        return Err(Failure::usage("--grid must be >= 1"));
    }
    let schedule = ProtocolSchedule::default();

    let grid = grid_points(args.grid);
    let report =
        crate::fidelity::discrepancy_report(&grid, &schedule).map_err(Failure::internal)?;

    let rows: Vec<String> = report
        .iter()
        .map(|row: &DiscrepancyRow| csv_row(&row.params, row.f_model, row.f_sim))
        .collect();
    write_csv(&args.out, &rows)?;

    let count = |class: AgreementClass| report.iter().filter(|r| r.agreement == class).count();
    let exact = count(AgreementClass::Exact);
    let approximate = count(AgreementClass::Approximate);
    let divergent = count(AgreementClass::Divergent);
    let max_abs_delta = report.first().map_or(0.0, |r| r.delta.abs());

    let oracle_dev = oracle::cross_check(&cross_check_points(args.seed), &schedule)
        .map_err(Failure::internal)?;
    let passed = oracle_dev < ORACLE_AGREEMENT_THRESHOLD;

    if args.json {
        println!(
            "{}",
            serde_json::json!({
                "rows": report.len(),
                "exact": exact,
                "approximate": approximate,
                "divergent": divergent,
                "max_abs_delta": max_abs_delta,
                "oracle_max_deviation": oracle_dev,
                "oracle_threshold": ORACLE_AGREEMENT_THRESHOLD,
                "passed": passed,
                "report": args.out.display().to_string(),
            })
        );
    } else {
        println!(
            "rows={} exact={} approximate={} divergent={}",
            report.len(),
            exact,
            approximate,
            divergent
        );
        println!("max_abs_delta={}", fmt_num(max_abs_delta));
        println!("oracle_max_deviation={oracle_dev:.3e}");
        println!("report={}", args.out.display());
        println!("verdict={}", if passed { "ok" } else { "FAILED" });
    }

    Ok(if passed { EXIT_OK } else { EXIT_VERIFY_FAILED })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn axis_points_inclusive_and_exclusive() {
        let axis = AxisSpec {
            start: 0.0,
            stop: 1.0,
            count: 5,
            inclusive: true,
        };
        assert_eq!(axis.points(), vec![0.0, 0.25, 0.5, 0.75, 1.0]);

        let axis = AxisSpec {
            start: 0.0,
            stop: 1.0,
            count: 4,
            inclusive: false,
        };
        assert_eq!(axis.points(), vec![0.0, 0.25, 0.5, 0.75]);

        let single = AxisSpec {
            start: 0.3,
            stop: 0.9,
            count: 1,
            inclusive: true,
        };
        assert_eq!(single.points(), vec![0.3]);
    }

    #[test]
    fn number_formatting_is_fixed_width() {
        assert_eq!(fmt_num(1.0), "1.000000000000");
        assert_eq!(fmt_num(0.5), "0.500000000000");
        assert_eq!(fmt_num(-0.0), "0.000000000000");
        assert_eq!(fmt_num(-0.053333333333333), "-0.053333333333");
    }

    #[test]
    fn csv_row_shape() {
        let params = NoiseParams::new(1.0, 1.0, 0.8, 1.0).unwrap();
        let row = csv_row(&params, 0.813333333333, 0.76);
        let fields: Vec<&str> = row.split(',').collect();
        assert_eq!(fields.len(), 8);
        assert_eq!(fields[0], "1.000000000000");
        assert_eq!(fields[2], "0.800000000000");
        assert_eq!(fields[7], "divergent");
    }

    #[test]
    fn cross_check_point_set_is_deterministic() {
        let a = cross_check_points(7);
        let b = cross_check_points(7);
        assert_eq!(a.len(), 41);
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x, y);
        }
    }

    #[test]
    fn sweep_spec_parses_with_defaults() {
        let json = r#"{
            "p1": {"start": 1.0, "stop": 1.0, "count": 1},
            "p2": {"start": 0.0, "stop": 1.0, "count": 3},
            "eta": {"start": 1.0, "stop": 1.0, "count": 1},
            "F": {"start": 1.0, "stop": 1.0, "count": 1},
            "output": "out.csv"
        }"#;
        let spec: SweepSpec = serde_json::from_str(json).unwrap();
        assert_eq!(spec.method, SweepMethod::SimExact);
        assert_eq!(spec.mc_samples, 200_000);
        assert_eq!(spec.seed, 0);
        assert_eq!(spec.p2.points(), vec![0.0, 0.5, 1.0]);
    }

    #[test]
    fn sweep_spec_rejects_unknown_fields() {
        let json = r#"{
            "p1": {"start": 1.0, "stop": 1.0, "count": 1},
            "p2": {"start": 1.0, "stop": 1.0, "count": 1},
            "eta": {"start": 1.0, "stop": 1.0, "count": 1},
            "F": {"start": 1.0, "stop": 1.0, "count": 1},
            "typo_field": 3
        }"#;
        assert!(serde_json::from_str::<SweepSpec>(json).is_err());
    }
}
