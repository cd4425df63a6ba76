//! Density curves for box states and the summary metrics used to compare
//! the relativistic and Born densities.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::grid::{Grid1D, WaveFunction};
use crate::kernels::{density, KernelKind};
use crate::states::{box_state, superposed_box_state};

/// Rows extend this many box widths beyond each wall.
pub const WALL_MARGIN: f64 = 0.5;

/// Fraction of the box, centred, used for the flatness measure.
pub const CENTRAL_FRACTION: f64 = 0.8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Normalization {
    #[default]
    Raw,
    UnitArea,
    Peak,
}

impl fmt::Display for Normalization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Normalization::Raw => "raw",
            Normalization::UnitArea => "unit-area",
            Normalization::Peak => "peak",
        })
    }
}

impl FromStr for Normalization {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "raw" => Ok(Normalization::Raw),
            "unit-area" => Ok(Normalization::UnitArea),
            "peak" => Ok(Normalization::Peak),
            other => Err(format!("unknown normalization `{other}` (expected raw, unit-area or peak)")),
        }
    }
}

/// Named density columns sampled on the rows `x ∈ [−0.5L, 1.5L]`.
#[derive(Debug, Clone, PartialEq)]
pub struct FigureTable {
    pub box_width: f64,
    pub dx: f64,
    pub x: Vec<f64>,
    pub columns: Vec<(String, Vec<f64>)>,
}

impl FigureTable {
    pub fn column(&self, name: &str) -> Option<&[f64]> {
        self.columns.iter().find(|(n, _)| n == name).map(|(_, v)| v.as_slice())
    }

    pub fn header(&self) -> Vec<&str> {
        std::iter::once("x").chain(self.columns.iter().map(|(n, _)| n.as_str())).collect()
    }

    /// Rescales every column independently.
    pub fn normalized(&self, mode: Normalization) -> Self {
        let columns = self
            .columns
            .iter()
            .map(|(name, values)| {
                let scale = match mode {
                    Normalization::Raw => 1.0,
                    Normalization::UnitArea => 1.0 / (values.iter().sum::<f64>() * self.dx),
                    Normalization::Peak => 1.0 / values.iter().copied().fold(f64::NEG_INFINITY, f64::max),
                };
                (name.clone(), values.iter().map(|v| v * scale).collect())
            })
            .collect();
        Self { columns, ..self.clone() }
    }
}

fn build_table(psi: &WaveFunction, box_width: f64, kinds: &[(&str, KernelKind)]) -> Result<FigureTable> {
    let g = *psi.grid();
    let lo = -WALL_MARGIN * box_width;
    let hi = (1.0 + WALL_MARGIN) * box_width;
    let slack = 1e-9 * g.dx();
    let rows: Vec<usize> = (0..g.n_points()).filter(|&j| g.x(j) >= lo - slack && g.x(j) <= hi + slack).collect();
    let mut columns = Vec::with_capacity(kinds.len());
    for (name, kind) in kinds {
        let rho = density(psi, *kind)?;
        columns.push((name.to_string(), rows.iter().map(|&j| rho.values()[j]).collect()));
    }
    Ok(FigureTable { box_width, dx: g.dx(), x: rows.iter().map(|&j| g.x(j)).collect(), columns })
}

/// Born and scalar densities of the `n`-th box state of width `box_width`.
pub fn figure1(box_width: f64, n: u32, n_points: usize, pad_factor: f64) -> Result<FigureTable> {
    let grid = Grid1D::around_box(box_width, pad_factor, n_points)?;
    let psi = box_state(box_width, n, grid)?;
    build_table(&psi, box_width, &[("rho_born", KernelKind::Born), ("rho_scalar", KernelKind::Scalar)])
}

/// Born, scalar and spin-1/2 densities of `N(sin πx/L + sin 2πx/L)`.
pub fn figure2(box_width: f64, n_points: usize, pad_factor: f64) -> Result<FigureTable> {
    let grid = Grid1D::around_box(box_width, pad_factor, n_points)?;
    let psi = superposed_box_state(box_width, grid)?;
    build_table(
        &psi,
        box_width,
        &[("rho_born", KernelKind::Born), ("rho_scalar", KernelKind::Scalar), ("rho_half", KernelKind::SpinHalf)],
    )
}

/// `sup|other − born| / sup born`.
pub fn coincidence_metric(born: &[f64], other: &[f64]) -> f64 {
    let peak = born.iter().copied().fold(0.0, f64::max);
    let gap = born.iter().zip(other).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    gap / peak
}

/// Relative standard deviation of `values` over the central 80% of the box.
pub fn central_flatness(x: &[f64], values: &[f64], box_width: f64) -> Result<f64> {
    let margin = 0.5 * (1.0 - CENTRAL_FRACTION) * box_width;
    let inside: Vec<f64> =
        x.iter().zip(values).filter(|(x, _)| **x >= margin && **x <= box_width - margin).map(|(_, v)| *v).collect();
    if inside.is_empty() {
        return Err(Error::InvalidBoxWidth(box_width));
    }
    let n = inside.len() as f64;
    let mean = inside.iter().sum::<f64>() / n;
    let var = inside.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n;
    Ok(var.sqrt() / mean)
}

/// Smallest pairwise sup-difference between the columns, relative to the
/// largest value in the table.
pub fn min_pairwise_separation(table: &FigureTable) -> f64 {
    let peak = table.columns.iter().flat_map(|(_, v)| v.iter().copied()).fold(0.0, f64::max);
    let mut least = f64::INFINITY;
    for (i, (_, a)) in table.columns.iter().enumerate() {
        for (_, b) in &table.columns[i + 1..] {
            let gap = a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
            least = least.min(gap / peak);
        }
    }
    least
}
