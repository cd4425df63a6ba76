use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use salpeter_core::figures::Normalization;
use salpeter_core::states::MIN_PAD_FACTOR;
use salpeter_core::KernelKind;

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    Figure1,
    Figure2,
    Covariance,
    Continuity,
    DiracCheck,
    SeriesCheck,
}

/// Densities, covariance and continuity checks for square-root
/// Klein-Gordon wave functions.
#[derive(Debug, Parser)]
#[command(name = "salpeter", version, allow_negative_numbers = true)]
pub struct Args {
    #[arg(value_enum)]
    pub command: Command,

    /// Box width in Compton wavelengths [default: 1 for figure1, 0.5 for figure2]
    #[arg(long)]
    pub box_width: Option<f64>,

    /// Box quantum number
    #[arg(long, default_value_t = 2)]
    pub state_n: u32,

    /// Grid points (power of two)
    #[arg(long, default_value_t = 4096)]
    pub grid_points: usize,

    /// Grid width as a multiple of the box width (>= 4)
    #[arg(long, default_value_t = 4.0)]
    pub pad_factor: f64,

    /// Boost velocity in (-1, 1); covariance samples a fixed set when omitted
    #[arg(long)]
    pub velocity: Option<f64>,

    /// born | scalar | spinhalf | literal:<n>; continuity checks all three
    /// regular kernels when omitted
    #[arg(long, value_parser = parse_kernel)]
    pub kernel: Option<KernelKind>,

    /// Output CSV path [default: stdout]
    #[arg(long)]
    pub out: Option<PathBuf>,

    /// Also write an SVG overlay next to --out (figure commands only)
    #[arg(long)]
    pub svg: bool,

    #[arg(long, value_enum, default_value_t = NormalizationArg::Raw)]
    pub normalization: NormalizationArg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum NormalizationArg {
    Raw,
    UnitArea,
    Peak,
}

impl From<NormalizationArg> for Normalization {
    fn from(n: NormalizationArg) -> Self {
        match n {
            NormalizationArg::Raw => Normalization::Raw,
            NormalizationArg::UnitArea => Normalization::UnitArea,
            NormalizationArg::Peak => Normalization::Peak,
        }
    }
}

fn parse_kernel(s: &str) -> Result<KernelKind, String> {
    s.parse().map_err(|e: salpeter_core::Error| e.to_string())
}

/// Validated run configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub box_width: f64,
    pub state_n: u32,
    pub grid_points: usize,
    pub pad_factor: f64,
    pub velocity: Option<f64>,
    pub kernel: Option<KernelKind>,
    pub output_path: Option<PathBuf>,
    pub emit_svg: bool,
    pub normalization: Normalization,
}

fn invalid(flag: &str, msg: impl std::fmt::Display) -> CliError {
    CliError::Config(format!("{flag}: {msg}"))
}

impl RunConfig {
    pub fn from_args(a: Args) -> Result<Self, CliError> {
        let box_width = a.box_width.unwrap_or(match a.command {
            Command::Figure2 => 0.5,
            _ => 1.0,
        });
        if !(box_width > 0.0 && box_width.is_finite()) {
            return Err(invalid("--box-width", format!("must be positive and finite, got {box_width}")));
        }
        if a.state_n == 0 {
            return Err(invalid("--state-n", "must be at least 1"));
        }
        if a.grid_points < 4 || !a.grid_points.is_power_of_two() {
            return Err(invalid("--grid-points", format!("must be a power of two >= 4, got {}", a.grid_points)));
        }
        if !(a.pad_factor >= MIN_PAD_FACTOR && a.pad_factor.is_finite()) {
            return Err(invalid(
                "--pad-factor",
                format!("must be finite and >= {MIN_PAD_FACTOR}, got {}", a.pad_factor),
            ));
        }
        if let Some(v) = a.velocity {
            if v.is_nan() || v.abs() >= 1.0 {
                return Err(invalid("--velocity", format!("must lie in (-1, 1), got {v}")));
            }
        }
        let figure = matches!(a.command, Command::Figure1 | Command::Figure2);
        if a.svg && !figure {
            return Err(invalid("--svg", "only figure1 and figure2 produce plots"));
        }
        if a.svg && a.out.is_none() {
            return Err(invalid("--svg", "requires --out"));
        }
        Ok(Self {
            command: a.command,
            box_width,
            state_n: a.state_n,
            grid_points: a.grid_points,
            pad_factor: a.pad_factor,
            velocity: a.velocity,
            kernel: a.kernel,
            output_path: a.out,
            emit_svg: a.svg,
            normalization: a.normalization.into(),
        })
    }
}
