//! Small-`αx` expansion of the well and first-order quartic perturbation
//! theory about the harmonic part.
//!
//! `tan²y = y² + (2/3)y⁴ + (17/45)y⁶ + …`; the harmonic term gives
//! `ħω̃ = 2 sqrt(V0 T)` and the quartic term `b x⁴`, `b = (2/3) V0 α⁴`,
//! shifts level `k = 0, 1, …` by `(3b/2)(ħ/(mω̃))²(k² + k + 1/2) = T(k² + k + 1/2)`.
//! With `n = k + 1` the shift is `T(n² - n + 1/2)`.

use serde::Serialize;

use crate::error::{invalid, PtError, Result};
use crate::limits::harmonic_quantum;
use crate::parameters::PtParameters;

/// Taylor coefficients of `tan²y` in powers of `y²`.
pub const TAN2_COEFFICIENTS: [f64; 3] = [1.0, 2.0 / 3.0, 17.0 / 45.0];

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PotentialSeries {
    pub coefficients: Vec<f64>,
    pub truncation_order: usize,
}

impl PotentialSeries {
    pub fn new(truncation_order: usize) -> Result<Self> {
        if !(1..=TAN2_COEFFICIENTS.len()).contains(&truncation_order) {
            return Err(invalid(format!(
                "series order must be in 1..={}, got {truncation_order}",
                TAN2_COEFFICIENTS.len()
            )));
        }
        Ok(Self {
            coefficients: TAN2_COEFFICIENTS[..truncation_order].to_vec(),
            truncation_order,
        })
    }

    /// Truncated `tan²y`.
    pub fn eval(&self, y: f64) -> f64 {
        let y2 = y * y;
        self.coefficients
            .iter()
            .rev()
            .fold(0.0, |acc, c| (acc + c) * y2)
    }
}

pub fn potential_series_eval(params: &PtParameters, x: f64, k_max: usize) -> Result<f64> {
    let y = params.alpha() * x;
    if y.abs() >= std::f64::consts::FRAC_PI_2 {
        return Err(PtError::Domain(format!(
            "|αx| = {} is outside the convergence disc",
            y.abs()
        )));
    }
    Ok(params.well_depth() * PotentialSeries::new(k_max)?.eval(y))
}

/// Which quartic bracket to apply at quantum number `n ≥ 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Indexing {
    /// `T(n² - n + 1/2)`, the bracket carried through `k = n - 1`.
    #[default]
    Shifted,
    /// `T(n² + n + 1/2)` with `n ≥ 1` substituted directly.
    Literal,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PerturbedLevel {
    pub harmonic_part: f64,
    pub quartic_correction: f64,
    pub total: f64,
}

pub fn perturbed_energy(params: &PtParameters, n: u64) -> Result<PerturbedLevel> {
    perturbed_energy_with(params, n, Indexing::Shifted)
}

pub fn perturbed_energy_with(
    params: &PtParameters,
    n: u64,
    indexing: Indexing,
) -> Result<PerturbedLevel> {
    if n < 1 {
        return Err(invalid("quantum number n must be at least 1"));
    }
    let nf = n as f64;
    let t = params.kinetic_scale();
    let harmonic_part = harmonic_quantum(params) * (nf - 0.5);
    let bracket = match indexing {
        Indexing::Shifted => nf * nf - nf + 0.5,
        Indexing::Literal => nf * nf + nf + 0.5,
    };
    let quartic_correction = t * bracket;
    Ok(PerturbedLevel {
        harmonic_part,
        quartic_correction,
        total: harmonic_part + quartic_correction,
    })
}

/// `(3b/2)(ħ/(mω̃))²` for `b = c₂ V0 α⁴`, evaluated from the oscillator
/// matrix element rather than from `T`.
pub fn quartic_matrix_element_coefficient(params: &PtParameters) -> f64 {
    let a = params.alpha();
    let b = TAN2_COEFFICIENTS[1] * params.well_depth() * a.powi(4);
    let omega = (2.0 * params.well_depth() * a * a / params.mass()).sqrt();
    let length2 = params.action_quantum() / (params.mass() * omega);
    1.5 * b * length2 * length2
}
