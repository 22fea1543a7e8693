//! Independent numerical checks of the closed forms.
//!
//! Eigenvalues come from the second-order finite-difference Hamiltonian on
//! a uniform grid of `N` interior points of `(-L, L)` (walls excluded, so
//! the wavefunction vanishes there), extrapolated over the grids
//! `N, 2N + 1, 4N + 3`, which halve the spacing each time. Pressures come
//! from central differences of `E_n(L)`.
//!
//! Near a wall the eigenfunctions behave like `d^{λ+1}`, and the scheme's
//! eigenvalue error picks up a term `h^{1+λ}` next to the regular `h²`,
//! `h⁴`, … series. For `0 < λ < 1` it is the leading term, so the
//! extrapolation eliminates it explicitly (see [`error_exponents`]).

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{invalid, PtError, Result};
use crate::numerics::richardson::{extrapolate, extrapolate_exponents, log_log_slope};
use crate::numerics::tridiagonal::LaplacianPlusDiagonal;
use crate::parameters::{derive_scales, PtParameters};
use crate::spectra::energy_level;

pub const MIN_INTERIOR_POINTS: usize = 64;
/// Largest grid a single solve may allocate.
pub const DEFAULT_MAX_POINTS: usize = 1 << 24;

pub const DEFAULT_RELATIVE_STEP: f64 = 1e-4;
pub const MIN_RELATIVE_STEP: f64 = 1e-7;
pub const MAX_RELATIVE_STEP: f64 = 1e-2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GridSpec {
    pub interior_points: usize,
    pub richardson_levels: u8,
    pub level_count: usize,
}

impl GridSpec {
    pub fn new(interior_points: usize, richardson_levels: u8, level_count: usize) -> Result<Self> {
        if interior_points < MIN_INTERIOR_POINTS {
            return Err(invalid(format!(
                "grid needs at least {MIN_INTERIOR_POINTS} interior points, got {interior_points}"
            )));
        }
        if !(1..=3).contains(&richardson_levels) {
            return Err(invalid(format!(
                "Richardson levels must be 1, 2 or 3, got {richardson_levels}"
            )));
        }
        if level_count < 1 || level_count > interior_points {
            return Err(invalid(format!(
                "level count must be in 1..={interior_points}, got {level_count}"
            )));
        }
        Ok(Self {
            interior_points,
            richardson_levels,
            level_count,
        })
    }

    /// Spacing `2L/(N + 1)` of the base grid.
    pub fn spacing(&self, half_width: f64) -> f64 {
        2.0 * half_width / (self.interior_points + 1) as f64
    }

    /// Interior point counts of the successively halved grids.
    pub fn refinements(&self) -> Vec<usize> {
        (0..self.richardson_levels)
            .map(|j| (self.interior_points + 1) * (1 << j) - 1)
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NumericalSpectrum {
    pub eigenvalues: Vec<f64>,
    /// Size of the last Richardson correction; absent for a single grid.
    pub error_estimates: Vec<Option<f64>>,
    pub grid_used: GridSpec,
}

/// Exponents of the grid-spacing error expansion, smallest first: the
/// regular `2, 4` plus the wall term `1 + λ` when it lies below 4 and is
/// distinct from them.
/// Exponents closer than 0.1 are treated as one, since eliminating both
/// would divide by a near-zero factor difference.
pub fn error_exponents(lambda: f64) -> Vec<f64> {
    let mut exponents = vec![2.0, 4.0];
    let wall = 1.0 + lambda;
    if lambda > 0.0 && wall < 4.0 && exponents.iter().all(|p| (p - wall).abs() >= 0.1) {
        exponents.push(wall);
        exponents.sort_by(f64::total_cmp);
    }
    exponents
}

/// Finite-difference Hamiltonian on `points` interior nodes, kept as kinetic
/// coupling plus potential so the O(1) levels are not swamped by the
/// O(1/h²) diagonal.
pub fn hamiltonian(params: &PtParameters, points: usize) -> Result<LaplacianPlusDiagonal> {
    let l = params.half_width();
    let h = 2.0 * l / (points + 1) as f64;
    let kinetic = params.action_quantum().powi(2) / (params.mass() * h * h);
    let half_h = 0.5 * h;
    let np1 = (points + 1) as f64;
    let potential: Vec<f64> = (0..points)
        .map(|i| {
            // symmetric node placement: x_i = (2(i + 1) - (N + 1)) h/2
            let x = (2.0 * (i + 1) as f64 - np1) * half_h;
            params.potential(x)
        })
        .collect();
    LaplacianPlusDiagonal::new(0.5 * kinetic, potential)
}

fn raw_levels(params: &PtParameters, points: usize, k: usize) -> Result<Vec<f64>> {
    let values = hamiltonian(params, points)?.lowest_eigenvalues(k)?;
    if values.windows(2).any(|w| w[1] <= w[0]) {
        return Err(PtError::Convergence(
            "eigenvalues are not strictly increasing".to_string(),
        ));
    }
    Ok(values)
}

pub fn solve_eigenvalues(params: &PtParameters, grid: &GridSpec) -> Result<NumericalSpectrum> {
    solve_eigenvalues_bounded(params, grid, DEFAULT_MAX_POINTS)
}

pub fn solve_eigenvalues_bounded(
    params: &PtParameters,
    grid: &GridSpec,
    max_points: usize,
) -> Result<NumericalSpectrum> {
    let sizes = grid.refinements();
    let finest = *sizes.last().expect("at least one level");
    if finest > max_points {
        return Err(PtError::Resource {
            requested: finest,
            max: max_points,
        });
    }
    let k = grid.level_count;
    let exponents = error_exponents(derive_scales(params).lambda_exact);
    let per_grid: Vec<Vec<f64>> = sizes
        .par_iter()
        .map(|&n| raw_levels(params, n, k))
        .collect::<Result<_>>()?;

    let mut eigenvalues = Vec::with_capacity(k);
    let mut error_estimates = Vec::with_capacity(k);
    for level in 0..k {
        let seq: Vec<f64> = per_grid.iter().map(|v| v[level]).collect();
        let (value, correction) = extrapolate_exponents(&seq, &exponents);
        eigenvalues.push(value);
        error_estimates.push((seq.len() > 1).then_some(correction));
    }
    if eigenvalues.windows(2).any(|w| w[1] <= w[0]) || eigenvalues.iter().any(|&e| e <= 0.0) {
        return Err(PtError::Convergence(
            "extrapolated eigenvalues are not positive and strictly increasing".to_string(),
        ));
    }
    Ok(NumericalSpectrum {
        eigenvalues,
        error_estimates,
        grid_used: *grid,
    })
}

/// Where `E_n(L)` comes from when differentiating numerically.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EnergySource {
    ClosedForm,
    Eigenvalues(GridSpec),
}

fn check_step(relative_step: f64) -> Result<()> {
    if !(MIN_RELATIVE_STEP..=MAX_RELATIVE_STEP).contains(&relative_step) {
        return Err(invalid(format!(
            "relative step must lie in [{MIN_RELATIVE_STEP}, {MAX_RELATIVE_STEP}], got {relative_step}"
        )));
    }
    Ok(())
}

/// `E_1 … E_levels` at half-width `l`.
fn energies_at(
    params: &PtParameters,
    l: f64,
    levels: usize,
    source: &EnergySource,
) -> Result<Vec<f64>> {
    let p = params.with_half_width(l)?;
    match source {
        EnergySource::ClosedForm => (1..=levels as u64)
            .map(|n| energy_level(&p, n).map(|e| e.total))
            .collect(),
        EnergySource::Eigenvalues(grid) => {
            let g = GridSpec::new(
                grid.interior_points,
                grid.richardson_levels,
                levels.max(grid.level_count),
            )?;
            let mut values = solve_eigenvalues(&p, &g)?.eigenvalues;
            values.truncate(levels);
            Ok(values)
        }
    }
}

/// `-∂E_n/∂L` for `n = 1..=levels` by central differences at steps `δ` and
/// `δ/2` followed by one Richardson pass.
pub fn numerical_pressures(
    params: &PtParameters,
    levels: usize,
    relative_step: f64,
    source: EnergySource,
) -> Result<Vec<f64>> {
    if levels < 1 {
        return Err(invalid("need at least one level"));
    }
    check_step(relative_step)?;
    let l = params.half_width();
    let steps = [relative_step, 0.5 * relative_step];
    let offsets: Vec<f64> = steps
        .iter()
        .flat_map(|d| [l * (1.0 + d), l * (1.0 - d)])
        .collect();
    let energies: Vec<Vec<f64>> = offsets
        .par_iter()
        .map(|&li| energies_at(params, li, levels, &source))
        .collect::<Result<_>>()?;

    let pressures = (0..levels)
        .map(|n| {
            let diffs: Vec<f64> = steps
                .iter()
                .enumerate()
                .map(|(j, &d)| {
                    let (plus, minus) = (energies[2 * j][n], energies[2 * j + 1][n]);
                    // actual spacing of the two evaluation points
                    let span = offsets[2 * j] - offsets[2 * j + 1];
                    debug_assert!((span - 2.0 * l * d).abs() <= 4.0 * f64::EPSILON * l);
                    -(plus - minus) / span
                })
                .collect();
            extrapolate(&diffs, 2.0).0
        })
        .collect();
    Ok(pressures)
}

pub fn numerical_pressure(
    params: &PtParameters,
    n: u64,
    relative_step: f64,
    source: EnergySource,
) -> Result<f64> {
    if n < 1 {
        return Err(invalid("quantum number n must be at least 1"));
    }
    let all = numerical_pressures(params, n as usize, relative_step, source)?;
    Ok(all[n as usize - 1])
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceReport {
    pub grid_sizes: Vec<usize>,
    pub spacings: Vec<f64>,
    /// `errors[level][grid]` = `|E_numeric - E_closed|` without extrapolation.
    pub errors: Vec<Vec<f64>>,
    /// Per-level log-log slope of error against spacing.
    pub slopes: Vec<f64>,
}

pub fn convergence_study(
    params: &PtParameters,
    grid_sizes: &[usize],
    k: usize,
) -> Result<ConvergenceReport> {
    if grid_sizes.len() < 2 {
        return Err(invalid("convergence study needs at least two grid sizes"));
    }
    if let Some(&bad) = grid_sizes.iter().find(|&&n| n < MIN_INTERIOR_POINTS) {
        return Err(invalid(format!(
            "grid of {bad} points is below the minimum of {MIN_INTERIOR_POINTS}"
        )));
    }
    if k < 1 {
        return Err(invalid("need at least one level"));
    }
    let closed: Vec<f64> = (1..=k as u64)
        .map(|n| energy_level(params, n).map(|e| e.total))
        .collect::<Result<_>>()?;
    let numeric: Vec<Vec<f64>> = grid_sizes
        .par_iter()
        .map(|&n| raw_levels(params, n, k))
        .collect::<Result<_>>()?;
    let spacings: Vec<f64> = grid_sizes
        .iter()
        .map(|&n| 2.0 * params.half_width() / (n + 1) as f64)
        .collect();
    let errors: Vec<Vec<f64>> = (0..k)
        .map(|level| {
            numeric
                .iter()
                .map(|v| (v[level] - closed[level]).abs())
                .collect()
        })
        .collect();
    let slopes = errors.iter().map(|e| log_log_slope(&spacings, e)).collect();
    Ok(ConvergenceReport {
        grid_sizes: grid_sizes.to_vec(),
        spacings,
        errors,
        slopes,
    })
}
