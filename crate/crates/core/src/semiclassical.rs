//! Bohr-Sommerfeld quantization of the Pöschl-Teller well.
//!
//! Levels satisfy `∮ p dx = 2πħ(n - 1/2)` with
//! `p(x, E) = sqrt(2m (E - V0 tan²(αx)))`. The action integral is evaluated
//! by quadrature after the substitution `x = x₀ sin θ`, which turns the
//! square-root zeros of `p` at the turning points into a smooth integrand.
//! The closed form of the same integral is
//!
//! ```text
//! J(E) = (2π/α) sqrt(2m) [sqrt(E + V0) - sqrt(V0)]
//! ```
//!
//! which inverts to `E_n = T(n - 1/2)² + 2 sqrt(V0 T)(n - 1/2)`.

use std::f64::consts::{FRAC_PI_2, PI};

use serde::Serialize;

use crate::error::{invalid, PtError, Result};
use crate::numerics::{quadrature, roots};
use crate::parameters::PtParameters;

const ACTION_REL_TOL: f64 = 1e-12;
const MAX_SEGMENTS: usize = 400;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ActionEvaluation {
    pub energy: f64,
    pub turning_point: f64,
    pub action: f64,
    pub quadrature_error: f64,
}

pub fn classical_momentum(params: &PtParameters, x: f64, energy: f64) -> Result<f64> {
    if x.abs() >= params.half_width() {
        return Err(PtError::Domain(format!(
            "|x| = {} is not inside the walls at ±{}",
            x.abs(),
            params.half_width()
        )));
    }
    if energy <= 0.0 {
        return Err(invalid(format!("energy must be positive, got {energy}")));
    }
    let kinetic = energy - params.potential(x);
    if kinetic < 0.0 {
        // rounding at the turning point itself
        if kinetic >= -8.0 * f64::EPSILON * energy {
            return Ok(0.0);
        }
        return Err(PtError::Domain(format!(
            "classically forbidden: E = {energy} < V({x}) = {}",
            params.potential(x)
        )));
    }
    Ok((2.0 * params.mass() * kinetic).sqrt())
}

/// `x₀ = arctan(sqrt(E/V0))/α`; the wall `L` for an empty well.
pub fn turning_point(params: &PtParameters, energy: f64) -> Result<f64> {
    if energy <= 0.0 {
        return Err(invalid(format!("energy must be positive, got {energy}")));
    }
    if params.well_depth() == 0.0 {
        return Ok(params.half_width());
    }
    Ok((energy / params.well_depth()).sqrt().atan() / params.alpha())
}

/// Closed-form action `J(E)`.
pub fn action_closed(params: &PtParameters, energy: f64) -> f64 {
    let v0 = params.well_depth();
    2.0 * PI / params.alpha() * (2.0 * params.mass()).sqrt() * ((energy + v0).sqrt() - v0.sqrt())
}

/// Quadrature of `2 ∫_{-x₀}^{x₀} p dx`.
pub fn action(params: &PtParameters, energy: f64) -> Result<ActionEvaluation> {
    let x0 = turning_point(params, energy)?;
    let v0 = params.well_depth();
    let root_2m = (2.0 * params.mass()).sqrt();
    let y0 = params.alpha() * x0;
    let (tan0, cos0) = (y0.tan(), y0.cos());

    // E - V(x₀ sin θ) without cancellation:
    // V0 (tan y₀ - tan y)(tan y₀ + tan y), tan y₀ - tan y = sin(y₀ - y)/(cos y₀ cos y)
    let kinetic = |theta: f64| -> f64 {
        if v0 == 0.0 {
            return energy;
        }
        let s = theta.sin();
        let y = y0 * s;
        let gap = y0 * theta.cos().powi(2) / (1.0 + s);
        v0 * gap.sin() * (tan0 + y.tan()) / (cos0 * y.cos())
    };
    // integrand is even in θ; integrate over [0, π/2] and double
    let integrand = |theta: f64| root_2m * kinetic(theta).max(0.0).sqrt() * x0 * theta.cos();
    let r = quadrature::integrate(integrand, 0.0, FRAC_PI_2, 0.0, ACTION_REL_TOL, MAX_SEGMENTS)?;
    Ok(ActionEvaluation {
        energy,
        turning_point: x0,
        action: 4.0 * r.value,
        quadrature_error: 4.0 * r.abs_error,
    })
}

fn check_level(n: u64) -> Result<()> {
    if n < 1 {
        return Err(invalid("quantum number n must be at least 1"));
    }
    Ok(())
}

/// `E_n^QC = T(n - 1/2)² + 2 sqrt(V0 T)(n - 1/2)`.
pub fn qc_energy_closed(params: &PtParameters, n: u64) -> Result<f64> {
    check_level(n)?;
    let t = params.kinetic_scale();
    let u = n as f64 - 0.5;
    Ok(t * u * u + 2.0 * (params.well_depth() * t).sqrt() * u)
}

/// Solves `J(E) = 2πħ(n - 1/2)` with the quadrature action.
pub fn qc_energy_numeric(params: &PtParameters, n: u64) -> Result<f64> {
    let guess = qc_energy_closed(params, n)?;
    let target = 2.0 * PI * params.action_quantum() * (n as f64 - 0.5);
    roots::brent(
        |e| Ok(action(params, e)?.action - target),
        0.5 * guess,
        1.5 * guess,
        1e-14,
        200,
    )
}
