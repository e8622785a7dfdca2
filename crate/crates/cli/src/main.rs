mod audit;
mod commands;
mod grid;
mod output;

use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use grid::Grid;
use output::Format;

pub const DEFAULT_TOL: f64 = 1e-12;

/// Evaluate and cross-check Kapteyn series of Bessel functions.
#[derive(Debug, Parser)]
#[command(name = "kapteyn", version)]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,

    /// Relative tolerance for sums and quadratures.
    #[arg(long, global = true, env = "KAPTEYN_TOL", default_value_t = DEFAULT_TOL)]
    pub tol: f64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sum a series term by term.
    Sum(SumArgs),
    /// Closed-form registry.
    #[command(subcommand)]
    Closed(ClosedCmd),
    /// Integral representations.
    Integral(IntegralArgs),
    /// Stored small-x coefficient tables.
    #[command(subcommand)]
    Coeffs(CoeffsCmd),
    /// Leading behaviour as x → 1.
    Asym(AsymArgs),
    /// Run every cross-check and summarize the deviations.
    Audit,
    /// Radiation of an electron on a circular orbit.
    #[command(subcommand)]
    Radiation(RadiationCmd),
}

/// A single `--x` or a `--grid START:STOP:COUNT`.
#[derive(Debug, Clone, Args, Serialize)]
#[group(required = true, multiple = false)]
pub struct Points {
    #[arg(long, visible_aliases = ["beta", "chi"], allow_negative_numbers = true)]
    pub x: Option<f64>,
    #[arg(long)]
    pub grid: Option<Grid>,
}

impl Points {
    pub fn values(&self) -> Vec<f64> {
        match (self.x, &self.grid) {
            (Some(x), _) => vec![x],
            (None, Some(g)) => g.points(),
            (None, None) => Vec::new(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FamilyArg {
    Linear,
    Bilinear,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ParityArg {
    All,
    Even,
    Odd,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SumArgs {
    #[arg(long, value_enum, default_value_t = FamilyArg::Linear)]
    pub family: FamilyArg,
    /// Power of the order in each coefficient.
    #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
    pub nu: i32,
    #[arg(long, value_enum, default_value_t = ParityArg::All)]
    pub parity: ParityArg,
    /// Alternate the sign with the order.
    #[arg(long)]
    pub alternating: bool,
    /// Geometric factor a^m in each coefficient.
    #[arg(long, default_value_t = 1.0)]
    pub a: f64,
    /// Derivative order of the (first) Bessel factor.
    #[arg(long, default_value_t = 0)]
    pub deriv: u8,
    /// Derivative order of the second factor of a bilinear series.
    #[arg(long, default_value_t = 0)]
    pub deriv2: u8,
    /// Integrate the sum over [0, x] instead.
    #[arg(long)]
    pub integral: bool,
    #[command(flatten)]
    #[serde(flatten)]
    pub points: Points,
}

#[derive(Debug, Subcommand)]
pub enum ClosedCmd {
    /// List the registry.
    List,
    /// Evaluate one entry.
    Eval(ClosedEvalArgs),
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ClosedEvalArgs {
    #[arg(long)]
    pub id: String,
    /// Also sum the left-hand side and report the relative deviation.
    #[arg(long)]
    pub check: bool,
    #[command(flatten)]
    #[serde(flatten)]
    pub points: Points,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum IntegralKind {
    /// Σ J_m(mx)/m
    Log,
    /// Σ J'_m(mx)
    Cot,
    /// Σ m J''_m(mx)
    Csc2,
    /// Σ J'_m(mx), singularity subtracted
    Regularized,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum VariantArg {
    All,
    Even,
    ParamA,
    Bilinear,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct IntegralArgs {
    #[arg(long, value_enum)]
    pub kind: IntegralKind,
    #[arg(long, value_enum, default_value_t = VariantArg::All)]
    pub variant: VariantArg,
    /// Geometric factor for the param-a variant.
    #[arg(long, default_value_t = 1.0)]
    pub a: f64,
    #[command(flatten)]
    #[serde(flatten)]
    pub points: Points,
}

#[derive(Debug, Subcommand)]
pub enum CoeffsCmd {
    /// Print the stored coefficients of one table, or list the tables.
    Show(CoeffsIdArgs),
    /// Compare stored coefficients with the exact expansion.
    Verify(CoeffsIdArgs),
    /// Machine-readable dump of the tables.
    Export(CoeffsIdArgs),
    /// Evaluate a truncated table.
    Eval(CoeffsEvalArgs),
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct CoeffsIdArgs {
    /// Table id; all tables when omitted.
    #[arg(long)]
    pub id: Option<String>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct CoeffsEvalArgs {
    #[arg(long)]
    pub id: String,
    /// Highest power of x kept; all stored terms by default.
    #[arg(long)]
    pub order: Option<u32>,
    /// Also sum the expanded function and report the deviation.
    #[arg(long)]
    pub check: bool,
    #[command(flatten)]
    #[serde(flatten)]
    pub points: Points,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct AsymArgs {
    #[arg(long)]
    pub id: String,
    /// Evaluate the exact sum instead of the leading term.
    #[arg(long)]
    pub reference: bool,
    #[command(flatten)]
    #[serde(flatten)]
    pub points: Points,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MethodArg {
    Series,
    Numeric,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ModeArg {
    Classical,
    Quantum,
}

#[derive(Debug, Subcommand)]
pub enum RadiationCmd {
    /// Normalized total probability P̂(β).
    Probability(ProbabilityArgs),
    /// Normalized intensity of one harmonic.
    Harmonic(HarmonicArgs),
    /// (2α/β)√(1−β²) P̂, the rate in units of eH/m.
    Coefficient(ProbabilityArgs),
    /// Rate and survival probability for one electron.
    Rate(RateArgs),
    /// W/(αm) in the quantum regimes.
    Quantum(QuantumArgs),
    /// Laboratory radiation-free lifetime γ/W.
    Lifetime(LifetimeArgs),
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ProbabilityArgs {
    #[arg(long, value_enum, default_value_t = MethodArg::Numeric)]
    pub method: MethodArg,
    #[command(flatten)]
    #[serde(flatten)]
    pub points: Points,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct HarmonicArgs {
    #[arg(long)]
    pub n: u32,
    #[command(flatten)]
    #[serde(flatten)]
    pub points: Points,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct RateArgs {
    #[arg(long)]
    pub beta: f64,
    /// First-harmonic frequency.
    #[arg(long = "omega-h")]
    pub omega_h: f64,
    #[arg(long, default_value_t = 0.0)]
    pub chi: f64,
    #[arg(long, default_value_t = 1.0)]
    pub time: f64,
    #[arg(long, value_enum, default_value_t = ModeArg::Classical)]
    pub mode: ModeArg,
    #[arg(long, value_enum, default_value_t = MethodArg::Numeric)]
    pub method: MethodArg,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct QuantumArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub points: Points,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct LifetimeArgs {
    /// Lorentz factor.
    #[arg(long)]
    pub gamma: f64,
    #[arg(long)]
    pub chi: f64,
    /// Also report t(kE)/t(E) at fixed field.
    #[arg(long)]
    pub ratio: Option<f64>,
}

/// Rendered output and whether every check passed.
pub struct Outcome {
    pub output: output::Output,
    pub valid: bool,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    if !(cli.tol > 0.0 && cli.tol < 1.0) {
        eprintln!("error: --tol must lie in (0, 1), got {}", cli.tol);
        return ExitCode::from(1);
    }
    let outcome = match commands::run(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(1);
        }
    };
    let stdout = io::stdout();
    let mut lock = stdout.lock();
    if let Err(e) = outcome.output.render(cli.format, &mut lock).and_then(|_| lock.flush()) {
        if e.kind() != io::ErrorKind::BrokenPipe {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    if outcome.valid {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(2)
    }
}
