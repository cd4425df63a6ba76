use std::f64::consts::PI;

use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use salpeter_core::covariance::{constraint_report, covariance_residual, default_events, two_wave};
use salpeter_core::dirac::{equivalence_residuals, lift, negative_energy_fraction};
use salpeter_core::figures::{self, central_flatness, coincidence_metric, min_pairwise_separation, FigureTable};
use salpeter_core::kernels::continuity_residual;
use salpeter_core::salpeter::{
    apply_hamiltonian, apply_hamiltonian_series, spectral_mass_outside_unit_band, SeriesTruncation,
};
use salpeter_core::states::box_state;
use salpeter_core::thresholds as th;
use salpeter_core::{Boost, Error, Grid1D, KernelKind, PlaneWaveSuperposition, WaveFunction};

use crate::config::{Command, RunConfig};
use crate::output::{svg_overlay, Cell, Table};
use crate::CliError;

/// Outcome of one command: the table to emit, an optional plot and every
/// threshold that was violated.
#[derive(Debug, Default)]
pub struct Report {
    pub table: Table,
    pub svg: Option<String>,
    pub summary: Vec<String>,
    pub violations: Vec<String>,
}

/// Seed for the random superpositions used by the harness commands.
const SEED: u64 = 0x5a17_e7e2;

/// Plane-wave harness states live on the periodic domain `[−10π, 10π]`
/// (lattice momenta are multiples of 0.1) with a fixed point count. Larger
/// grids only add round-off at momenta the states do not populate.
const HARNESS_HALF_WIDTH: f64 = 10.0 * PI;
const HARNESS_POINTS: usize = 256;

const CONTINUITY_STEPS: [f64; 2] = [1e-4, 5e-5];
const DIRAC_TIME: f64 = 1.7;
const COVARIANCE_MOMENTA: [f64; 6] = [-1.5, -0.5, 0.0, 0.5, 1.2, 2.0];
const COVARIANCE_VELOCITIES: [f64; 4] = [-0.6, 0.0, 0.3, 0.6];

pub fn run(cfg: &RunConfig) -> Result<Report, CliError> {
    match cfg.command {
        Command::Figure1 => figure1(cfg),
        Command::Figure2 => figure2(cfg),
        Command::Covariance => covariance(cfg),
        Command::Continuity => continuity(cfg),
        Command::DiracCheck => dirac_check(cfg),
        Command::SeriesCheck => series_check(cfg),
    }
}

fn table_of(fig: &FigureTable) -> Table {
    let mut t = Table::new(fig.header());
    for (j, x) in fig.x.iter().enumerate() {
        let mut row = vec![Cell::Num(*x)];
        row.extend(fig.columns.iter().map(|(_, v)| Cell::Num(v[j])));
        t.push(row);
    }
    t
}

fn figure_report(cfg: &RunConfig, raw: &FigureTable) -> Report {
    let shown = raw.normalized(cfg.normalization);
    Report {
        table: table_of(&shown),
        svg: cfg.emit_svg.then(|| svg_overlay(&shown.x, &shown.columns)),
        ..Report::default()
    }
}

fn column<'a>(fig: &'a FigureTable, name: &str) -> &'a [f64] {
    fig.column(name).expect("figure builders emit this column")
}

fn figure1(cfg: &RunConfig) -> Result<Report, CliError> {
    let raw = figures::figure1(cfg.box_width, cfg.state_n, cfg.grid_points, cfg.pad_factor)?;
    let mut report = figure_report(cfg, &raw);
    let (born, scalar) = (column(&raw, "rho_born"), column(&raw, "rho_scalar"));
    report.summary.push(format!("coincidence {:.6e}", coincidence_metric(born, scalar)));
    report.summary.push(format!("central flatness {:.6e}", central_flatness(&raw.x, scalar, cfg.box_width)?));
    Ok(report)
}

fn figure2(cfg: &RunConfig) -> Result<Report, CliError> {
    let raw = figures::figure2(cfg.box_width, cfg.grid_points, cfg.pad_factor)?;
    let mut report = figure_report(cfg, &raw);
    let separation = min_pairwise_separation(&raw);
    report.summary.push(format!("min pairwise separation {separation:.6e}"));
    // NaN counts as a violation
    let distinct = separation > th::FIGURE2_SEPARATION_MIN;
    if !distinct {
        report
            .violations
            .push(format!("curves not distinct: separation {separation:e} <= {:e}", th::FIGURE2_SEPARATION_MIN));
    }
    for name in ["rho_scalar", "rho_half"] {
        let min = column(&raw, name).iter().copied().fold(f64::INFINITY, f64::min);
        if min < th::POSITIVITY_FLOOR {
            report.violations.push(format!("{name} negative: min {min:e}"));
        }
    }
    Ok(report)
}

fn covariance(cfg: &RunConfig) -> Result<Report, CliError> {
    let velocities = match cfg.velocity {
        Some(v) => vec![v],
        None => COVARIANCE_VELOCITIES.to_vec(),
    };
    let mut tuples = Vec::new();
    for &v in &velocities {
        for (i, &p_i) in COVARIANCE_MOMENTA.iter().enumerate() {
            for &p_j in &COVARIANCE_MOMENTA[i + 1..] {
                tuples.push((p_i, p_j, v));
            }
        }
    }
    let witness = (th::BORN_WITNESS_MOMENTUM, -th::BORN_WITNESS_MOMENTUM, th::BORN_WITNESS_VELOCITY);
    tuples.push(witness);

    let events = default_events();
    let mut report = Report {
        table: Table::new(["kernel", "p_i", "p_j", "v", "eq13_residual", "fourvector_residual"]),
        ..Report::default()
    };
    let mut worst_regular: f64 = 0.0;
    for &(p_i, p_j, v) in &tuples {
        let boost = Boost::new(v)?;
        let state = two_wave(p_i, p_j)?;
        for kind in [KernelKind::Born, KernelKind::Scalar, KernelKind::SpinHalf] {
            let eq13 = constraint_report(kind, p_i, p_j, boost)?.residual;
            let four = covariance_residual(&state, kind, boost, &events)?;
            report.table.push(vec![
                kind.to_string().into(),
                p_i.into(),
                p_j.into(),
                v.into(),
                eq13.into(),
                four.into(),
            ]);
            if kind != KernelKind::Born {
                worst_regular = worst_regular.max(eq13).max(four);
                if !(eq13 < th::COVARIANCE_RESIDUAL_MAX && four < th::COVARIANCE_RESIDUAL_MAX) {
                    report.violations.push(format!(
                        "{kind} at ({p_i}, {p_j}, v={v}): residuals {eq13:e}, {four:e} exceed {:e}",
                        th::COVARIANCE_RESIDUAL_MAX
                    ));
                }
            } else if (p_i, p_j, v) == witness {
                report.summary.push(format!("born witness residuals {eq13:.6e}, {four:.6e}"));
                if !(eq13 > th::BORN_WITNESS_CLI_MIN && four > th::BORN_WITNESS_CLI_MIN) {
                    report.violations.push(format!(
                        "born witness residuals {eq13:e}, {four:e} do not exceed {:e}",
                        th::BORN_WITNESS_CLI_MIN
                    ));
                }
            }
        }
    }
    report.summary.push(format!("worst scalar/spinhalf residual {worst_regular:.6e}"));
    Ok(report)
}

fn harness_grid() -> Grid1D {
    Grid1D::new(-HARNESS_HALF_WIDTH, HARNESS_HALF_WIDTH, HARNESS_POINTS).expect("valid harness grid")
}

/// Superposition of lattice momenta `k·dp` on the harness grid.
fn lattice_state(modes: &[(Complex64, i64)]) -> Result<WaveFunction, CliError> {
    let grid = harness_grid();
    let pairs: Vec<(Complex64, f64)> = modes.iter().map(|&(a, k)| (a, k as f64 * grid.dp())).collect();
    Ok(PlaneWaveSuperposition::from_pairs(&pairs)?.on_grid(grid, 0.0))
}

fn random_modes(rng: &mut StdRng, count: usize, k_max: i64) -> Vec<(Complex64, i64)> {
    let mut ks: Vec<i64> = Vec::with_capacity(count);
    while ks.len() < count {
        let k = rng.gen_range(-k_max..=k_max);
        if !ks.contains(&k) {
            ks.push(k);
        }
    }
    ks.into_iter().map(|k| (Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)), k)).collect()
}

fn continuity(cfg: &RunConfig) -> Result<Report, CliError> {
    let kinds = match cfg.kernel {
        Some(k) => vec![k],
        None => vec![KernelKind::Born, KernelKind::Scalar, KernelKind::SpinHalf],
    };
    // p = 2.0 and p = −0.5
    let waves = lattice_state(&[(Complex64::new(1.0, 0.0), 20), (Complex64::new(0.7, 0.3), -5)])?;
    let box_grid = Grid1D::around_box(cfg.box_width, cfg.pad_factor, cfg.grid_points)?;
    let boxed = box_state(cfg.box_width, cfg.state_n, box_grid)?;

    let mut report = Report { table: Table::new(["kernel", "state", "dt", "residual", "ratio"]), ..Report::default() };
    for kind in kinds {
        let coarse = continuity_residual(&waves, kind, CONTINUITY_STEPS[0])?;
        let fine = continuity_residual(&waves, kind, CONTINUITY_STEPS[1])?;
        let ratio = coarse / fine;
        let name = kind.to_string();
        report.table.push(vec![
            name.clone().into(),
            "two-wave".into(),
            CONTINUITY_STEPS[0].into(),
            coarse.into(),
            f64::NAN.into(),
        ]);
        report.table.push(vec![
            name.clone().into(),
            "two-wave".into(),
            CONTINUITY_STEPS[1].into(),
            fine.into(),
            ratio.into(),
        ]);
        if !(th::CONTINUITY_RATIO_MIN..=th::CONTINUITY_RATIO_MAX).contains(&ratio) {
            report.violations.push(format!(
                "{name}: residual ratio {ratio:.4} outside [{}, {}]",
                th::CONTINUITY_RATIO_MIN,
                th::CONTINUITY_RATIO_MAX
            ));
        }
        let on_box = continuity_residual(&boxed, kind, CONTINUITY_STEPS[0])?;
        report.table.push(vec![
            name.clone().into(),
            "box".into(),
            CONTINUITY_STEPS[0].into(),
            on_box.into(),
            f64::NAN.into(),
        ]);
        let box_ok = on_box < th::CONTINUITY_BOX_MAX;
        if !box_ok {
            report.violations.push(format!("{name}: box residual {on_box:e} >= {:e}", th::CONTINUITY_BOX_MAX));
        }
    }
    Ok(report)
}

fn dirac_check(cfg: &RunConfig) -> Result<Report, CliError> {
    let mut rng = StdRng::seed_from_u64(SEED);
    // eight distinct lattice momenta with |p| <= 2
    let waves = lattice_state(&random_modes(&mut rng, 8, 20))?;
    let box_grid = Grid1D::around_box(cfg.box_width, cfg.pad_factor, cfg.grid_points)?;
    let boxed = box_state(cfg.box_width, cfg.state_n, box_grid)?;

    let mut report = Report {
        table: Table::new(["state", "current_residual", "evolution_residual", "negative_energy_fraction"]),
        ..Report::default()
    };
    for (name, psi, limit) in [("plane-waves", &waves, th::DIRAC_PLANE_WAVE_MAX), ("box", &boxed, th::DIRAC_BOX_MAX)] {
        let r = equivalence_residuals(psi, DIRAC_TIME)?;
        let negative = negative_energy_fraction(&lift(psi));
        report.table.push(vec![name.into(), r.current_residual.into(), r.evolution_residual.into(), negative.into()]);
        if !(r.current_residual < limit && r.evolution_residual < limit) {
            report.violations.push(format!(
                "{name}: residuals {:e}, {:e} exceed {limit:e}",
                r.current_residual, r.evolution_residual
            ));
        }
    }
    Ok(report)
}

fn series_check(_cfg: &RunConfig) -> Result<Report, CliError> {
    let dp = harness_grid().dp();
    let band = (th::SERIES_BAND / dp).round() as i64;
    let mut rng = StdRng::seed_from_u64(SEED);
    let modes: Vec<(Complex64, i64)> =
        (-band..=band).map(|k| (Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)), k)).collect();
    let inside = lattice_state(&modes)?;
    let inside = inside.scaled(Complex64::new(1.0 / inside.norm(), 0.0));
    let trunc = SeriesTruncation::new(th::SERIES_K_MAX);
    let gap = apply_hamiltonian_series(&inside, trunc)?.sup_distance(&apply_hamiltonian(&inside))?;

    // same state plus one mode at |p| = 1.2
    let mut crossing_modes = modes.clone();
    crossing_modes.push((Complex64::new(0.5, 0.0), (1.2 / dp).round() as i64));
    let crossing = lattice_state(&crossing_modes)?;
    let fraction = spectral_mass_outside_unit_band(&crossing);
    let fired = match apply_hamiltonian_series(&crossing, trunc) {
        Err(Error::SeriesDivergence { .. }) => true,
        Ok(_) => false,
        Err(e) => return Err(e.into()),
    };

    let mut report = Report { table: Table::new(["check", "value", "threshold", "pass"]), ..Report::default() };
    let gap_ok = gap < th::SERIES_GAP_MAX;
    let pass = |ok: bool| Cell::from(if ok { "true" } else { "false" });
    report.table.push(vec!["series_gap".into(), gap.into(), th::SERIES_GAP_MAX.into(), pass(gap_ok)]);
    report.table.push(vec![
        "divergence_detector".into(),
        fraction.into(),
        salpeter_core::salpeter::SERIES_DIVERGENCE_FRACTION.into(),
        pass(fired),
    ]);
    if !gap_ok {
        report.violations.push(format!("series gap {gap:e} >= {:e}", th::SERIES_GAP_MAX));
    }
    if !fired {
        report.violations.push(format!("divergence detector silent at outside fraction {fraction:e}"));
    }
    Ok(report)
}
