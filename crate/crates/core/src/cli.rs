//! Command-line front end for the `jones3` binary.
//!
//! [`Cli`] is the clap surface, [`RunConfig`] the validated request and
//! [`run`] the dispatcher. `run` never prints: it returns the exact bytes
//! destined for stdout and stderr plus the exit status, so reports can be
//! compared byte for byte in tests.

use std::f64::consts::PI;
use std::fmt::Write as _;

use clap::{Parser, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;
use serde_json::json;
use thiserror::Error;

use crate::braid::{BraidParseError, BraidWord};
use crate::hadamard::{quantum_3sb, BoundMode, HadamardError, TraceEstimate};
use crate::laurent::LaurentPoly;
use crate::rep2::{classical_3sb, make_params, RepError, RepParams, UNITARITY_LIMIT};
use crate::tl3::{bracket_state_sum_with_cap, jones_exact, jones_rep, markov_trace, state_sum::DEFAULT_ORACLE_CAP};

/// Largest deviation `verify` tolerates between evaluators.
pub const VERIFY_TOLERANCE: f64 = 1e-9;

/// Angles checked by `verify` when no `φ` is given.
pub const VERIFY_GRID: usize = 25;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;
pub const EXIT_VERIFY_FAILED: i32 = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Exact Laurent polynomial in A
    Exact,
    /// V(e^{i phi}) from the 2x2 unitary representation
    Classical,
    /// Simulated Hadamard-test estimate of V(e^{i phi})
    Quantum,
    /// Cross-check the evaluators against each other
    Verify,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum OutputFormat {
    #[default]
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum BoundModeArg {
    #[default]
    Paper,
    Rigorous,
}

impl From<BoundModeArg> for BoundMode {
    fn from(b: BoundModeArg) -> Self {
        match b {
            BoundModeArg::Paper => BoundMode::Paper,
            BoundModeArg::Rigorous => BoundMode::Rigorous,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "jones3", version, about = "Jones polynomial of closed 3-braids")]
pub struct Cli {
    /// Braid word, e.g. "s1 s2^-1 s1" or "1 -2 1"
    #[arg(long, allow_hyphen_values = true)]
    pub braid: String,

    #[arg(long, value_enum)]
    pub mode: Mode,

    /// Evaluation angle in radians (t = e^{i phi})
    #[arg(long, allow_hyphen_values = true, conflicts_with = "phi_frac")]
    pub phi: Option<f64>,

    /// Evaluation angle as a multiple of pi, "p/q" meaning (p/q)*pi
    #[arg(long, allow_hyphen_values = true)]
    pub phi_frac: Option<String>,

    /// Target precision of the quantum estimate
    #[arg(long)]
    pub eps1: Option<f64>,

    /// Allowed failure probability of the quantum estimate
    #[arg(long)]
    pub eps2: Option<f64>,

    #[arg(long, env = "JONES3_SEED", default_value_t = 0)]
    pub seed: u64,

    #[arg(long, value_enum, default_value_t = BoundModeArg::Paper)]
    pub bound_mode: BoundModeArg,

    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    pub output: OutputFormat,

    /// Longest word the brute-force state sum will enumerate in verify mode
    #[arg(long, default_value_t = DEFAULT_ORACLE_CAP)]
    pub oracle_cap: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub braid_text: String,
    pub mode: Mode,
    pub phi: Option<f64>,
    pub epsilon1: Option<f64>,
    pub epsilon2: Option<f64>,
    pub seed: u64,
    pub bound_mode: BoundMode,
    pub output: OutputFormat,
    pub oracle_cap: usize,
}

impl RunConfig {
    pub fn new(braid_text: impl Into<String>, mode: Mode) -> Self {
        Self {
            braid_text: braid_text.into(),
            mode,
            phi: None,
            epsilon1: None,
            epsilon2: None,
            seed: 0,
            bound_mode: BoundMode::Paper,
            output: OutputFormat::Json,
            oracle_cap: DEFAULT_ORACLE_CAP,
        }
    }
}

impl TryFrom<Cli> for RunConfig {
    type Error = CliError;

    fn try_from(cli: Cli) -> Result<Self, CliError> {
        let phi = match (cli.phi, cli.phi_frac.as_deref()) {
            (Some(phi), _) => Some(phi),
            (None, Some(frac)) => Some(parse_phi_frac(frac)?),
            (None, None) => None,
        };
        Ok(Self {
            braid_text: cli.braid,
            mode: cli.mode,
            phi,
            epsilon1: cli.eps1,
            epsilon2: cli.eps2,
            seed: cli.seed,
            bound_mode: cli.bound_mode.into(),
            output: cli.output,
            oracle_cap: cli.oracle_cap,
        })
    }
}

/// `"p/q"` (or a bare integer `"p"`) as `(p/q)·π`.
pub fn parse_phi_frac(text: &str) -> Result<f64, CliError> {
    let bad = || CliError::Usage(format!("--phi-frac expects p/q with integers p and q != 0, got `{text}`"));
    let (p, q) = match text.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (text.trim(), "1"),
    };
    let p: i64 = p.parse().map_err(|_| bad())?;
    let q: i64 = q.parse().map_err(|_| bad())?;
    if q == 0 {
        return Err(bad());
    }
    Ok(p as f64 * PI / q as f64)
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("invalid braid word: {0}")]
    Braid(#[from] BraidParseError),
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error(transparent)]
    Hadamard(#[from] HadamardError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Braid(_) => EXIT_USAGE,
            CliError::Rep(_) | CliError::Hadamard(_) => EXIT_DOMAIN,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Braid(e) => match e {
                BraidParseError::UnknownGenerator { .. } => "unknown_generator",
                BraidParseError::ZeroExponent { .. } => "zero_exponent",
                BraidParseError::ExponentOutOfRange { .. } => "exponent_out_of_range",
                BraidParseError::MalformedToken { .. } => "malformed_token",
                BraidParseError::MixedNotation { .. } => "mixed_notation",
            },
            CliError::Rep(RepError::OutsideUnitarityRegion { .. })
            | CliError::Hadamard(HadamardError::Rep(RepError::OutsideUnitarityRegion { .. })) => {
                "outside_unitarity_region"
            }
            CliError::Rep(RepError::NonFinitePhi { .. })
            | CliError::Hadamard(HadamardError::Rep(RepError::NonFinitePhi { .. })) => "non_finite_phi",
            CliError::Hadamard(HadamardError::InvalidPrecision { .. }) => "invalid_precision",
            CliError::Hadamard(HadamardError::NonUnitaryGate { .. }) => "non_unitary_gate",
        }
    }

    /// `{"error": {"kind", "message", "exit_code", ["token", "position"]}}`
    pub fn to_json(&self) -> serde_json::Value {
        let mut body = json!({
            "kind": self.kind(),
            "message": self.to_string(),
            "exit_code": self.exit_code(),
        });
        if let CliError::Braid(e) = self {
            let (token, position) = e.location();
            body["token"] = json!(token);
            body["position"] = json!(position);
        }
        json!({ "error": body })
    }
}

/// What a run writes and how it exits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub status: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    pub fn from_error(err: &CliError) -> Self {
        Self {
            status: err.exit_code(),
            stdout: format!("{}\n", err.to_json()),
            stderr: format!("error: {err}\n"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ComplexValue {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for ComplexValue {
    fn from(z: Complex64) -> Self {
        Self { re: z.re, im: z.im }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleDeviation {
    /// Max `|classical − eval(exact)|` over the checked angles.
    pub classical_vs_exact: f64,
    /// Max coefficient distance between the state sum and `Tr_M(J(b))`;
    /// `null` when the word is longer than the oracle cap.
    pub state_sum_vs_exact: Option<f64>,
    pub phis_checked: usize,
    pub max: f64,
    pub tolerance: f64,
    pub passed: bool,
}

/// The JSON report. Keys are stable; optional ones are omitted when unused.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub mode: Mode,
    pub braid: String,
    #[serde(rename = "L")]
    pub length: usize,
    pub writhe: i64,
    pub phi: Option<f64>,
    pub theta: Option<f64>,
    pub delta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound_mode: Option<BoundMode>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub result: Option<ComplexValue>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub polynomial: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace_estimate: Option<TraceEstimate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle_deviation: Option<OracleDeviation>,
}

impl Report {
    fn new(mode: Mode, b: &BraidWord) -> Self {
        Self {
            mode,
            braid: b.to_string(),
            length: b.len(),
            writhe: b.writhe(),
            phi: None,
            theta: None,
            delta: None,
            n: None,
            seed: None,
            bound_mode: None,
            result: None,
            polynomial: None,
            trace_estimate: None,
            oracle_deviation: None,
        }
    }

    fn with_angle(mut self, phi: f64) -> Self {
        let theta = -phi / 4.0;
        self.phi = Some(phi);
        self.theta = Some(theta);
        self.delta = Some(-2.0 * (2.0 * theta).cos());
        self
    }

    fn to_text(&self) -> String {
        let mut out = String::new();
        if let Some(poly) = &self.polynomial {
            let _ = writeln!(out, "{poly}");
        }
        if let Some(v) = self.result {
            let _ = writeln!(out, "{} {}", v.re, v.im);
        }
        if let (Some(n), Some(seed)) = (self.n, self.seed) {
            let _ = writeln!(out, "n = {n}, seed = {seed}");
        }
        if let Some(dev) = &self.oracle_deviation {
            let verdict = if dev.passed { "pass" } else { "fail" };
            let _ = writeln!(out, "max deviation {:e} ({verdict})", dev.max);
        }
        out
    }
}

fn require(value: Option<f64>, flag: &str, mode: &str) -> Result<f64, CliError> {
    value.ok_or_else(|| CliError::Usage(format!("{mode} mode requires {flag}")))
}

fn boundary_warning(p: &RepParams, stderr: &mut String) {
    if p.on_boundary() {
        let _ = writeln!(
            stderr,
            "warning: phi = {} is on the unitarity boundary (delta = -1, E1 = E2)",
            p.phi
        );
    }
}

/// Runs one request and returns what the binary should emit.
pub fn run(config: &RunConfig) -> Outcome {
    let mut stderr = String::new();
    match build_report(config, &mut stderr) {
        Ok(report) => {
            let stdout = match config.output {
                OutputFormat::Json => {
                    let mut s = serde_json::to_string(&report).expect("report serializes");
                    s.push('\n');
                    s
                }
                OutputFormat::Text => report.to_text(),
            };
            let status = match &report.oracle_deviation {
                Some(dev) if !dev.passed => EXIT_VERIFY_FAILED,
                _ => EXIT_OK,
            };
            Outcome { status, stdout, stderr }
        }
        Err(err) => {
            let mut outcome = Outcome::from_error(&err);
            outcome.stderr.insert_str(0, &stderr);
            outcome
        }
    }
}

pub fn build_report(config: &RunConfig, stderr: &mut String) -> Result<Report, CliError> {
    let b: BraidWord = config.braid_text.parse()?;
    if let Some(phi) = config.phi {
        if !phi.is_finite() {
            return Err(RepError::NonFinitePhi { phi }.into());
        }
    }
    match config.mode {
        Mode::Exact => exact_report(&b, config.phi),
        Mode::Classical => {
            let phi = require(config.phi, "--phi or --phi-frac", "classical")?;
            let p = make_params(phi)?;
            boundary_warning(&p, stderr);
            let mut report = Report::new(Mode::Classical, &b).with_angle(phi);
            report.result = Some(classical_3sb(&b, &p).into());
            Ok(report)
        }
        Mode::Quantum => {
            let phi = require(config.phi, "--phi or --phi-frac", "quantum")?;
            let eps1 = require(config.epsilon1, "--eps1", "quantum")?;
            let eps2 = require(config.epsilon2, "--eps2", "quantum")?;
            let run = quantum_3sb(&b, phi, eps1, eps2, config.seed, config.bound_mode)?;
            boundary_warning(&run.params, stderr);
            let mut report = Report::new(Mode::Quantum, &b).with_angle(phi);
            report.n = Some(run.plan.n);
            report.seed = Some(config.seed);
            report.bound_mode = Some(config.bound_mode);
            report.result = Some(run.value.into());
            report.trace_estimate = Some(run.estimate);
            Ok(report)
        }
        Mode::Verify => verify_report(&b, config.phi, config.oracle_cap),
    }
}

fn exact_report(b: &BraidWord, phi: Option<f64>) -> Result<Report, CliError> {
    let poly = jones_exact(b);
    let mut report = Report::new(Mode::Exact, b);
    if let Some(phi) = phi {
        report = report.with_angle(phi);
        let alpha = Complex64::from_polar(1.0, -phi / 4.0);
        let value = poly.eval_at(alpha).expect("alpha is on the unit circle");
        report.result = Some(value.into());
    }
    report.polynomial = Some(poly.to_string());
    Ok(report)
}

/// The angles `verify` sweeps: the given one, or an even grid over the
/// closed unitarity region.
pub fn verify_angles(phi: Option<f64>) -> Vec<f64> {
    match phi {
        Some(phi) => vec![phi],
        None => (0..VERIFY_GRID)
            .map(|i| -UNITARITY_LIMIT + 2.0 * UNITARITY_LIMIT * i as f64 / (VERIFY_GRID - 1) as f64)
            .collect(),
    }
}

fn verify_report(b: &BraidWord, phi: Option<f64>, cap: usize) -> Result<Report, CliError> {
    let exact = jones_exact(b);
    let angles = verify_angles(phi);

    let mut classical_vs_exact: f64 = 0.0;
    for &angle in &angles {
        let p = make_params(angle)?;
        let expected = exact.eval_at(p.alpha).expect("alpha is on the unit circle");
        classical_vs_exact = classical_vs_exact.max((classical_3sb(b, &p) - expected).norm());
    }

    let state_sum_vs_exact = bracket_state_sum_with_cap(b, cap)
        .ok()
        .map(|bracket: LaurentPoly| bracket.max_coefficient_distance(&markov_trace(&jones_rep(b))));

    let max = classical_vs_exact.max(state_sum_vs_exact.unwrap_or(0.0));
    let mut report = Report::new(Mode::Verify, b);
    if let Some(phi) = phi {
        report = report.with_angle(phi);
    }
    report.polynomial = Some(exact.to_string());
    report.oracle_deviation = Some(OracleDeviation {
        classical_vs_exact,
        state_sum_vs_exact,
        phis_checked: angles.len(),
        max,
        tolerance: VERIFY_TOLERANCE,
        passed: max <= VERIFY_TOLERANCE,
    });
    Ok(report)
}
