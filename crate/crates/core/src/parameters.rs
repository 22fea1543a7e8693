//! Physical inputs of the trigonometric Pöschl-Teller oscillator and the
//! scale quantities derived from them.
//!
//! The potential is `V(x) = V0 tan²(αx)` on `(-L, L)` with `α = π/(2L)`.
//! Everything downstream is expressed through
//!
//! ```text
//! T   = ħ²α²/(2m)                  kinetic scale (box ground state)
//! x   = 4 V0 / T                   coupling ratio
//! λ   = sqrt(1 + x) - 1            shape parameter
//! ħω  = T λ
//! ψ   = λ(λ + 2)/(λ + 1)
//! n_cr = 1/λ
//! ```

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{invalid, Result};

/// Mass, well intensity `V0`, half-width `L` and `ħ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PtParameters {
    mass: f64,
    well_depth: f64,
    half_width: f64,
    action_quantum: f64,
}

impl PtParameters {
    pub fn new(mass: f64, well_depth: f64, half_width: f64, action_quantum: f64) -> Result<Self> {
        let all_finite = [mass, well_depth, half_width, action_quantum]
            .iter()
            .all(|v| v.is_finite());
        if !all_finite {
            return Err(invalid("all parameters must be finite"));
        }
        if mass <= 0.0 {
            return Err(invalid(format!("mass must be positive, got {mass}")));
        }
        if well_depth < 0.0 {
            return Err(invalid(format!(
                "well depth must be nonnegative, got {well_depth}"
            )));
        }
        if half_width <= 0.0 {
            return Err(invalid(format!(
                "half-width must be positive, got {half_width}"
            )));
        }
        if action_quantum <= 0.0 {
            return Err(invalid(format!(
                "action quantum must be positive, got {action_quantum}"
            )));
        }
        Ok(Self {
            mass,
            well_depth,
            half_width,
            action_quantum,
        })
    }

    /// Reduced units, `ħ = m = 1`.
    pub fn reduced(well_depth: f64, half_width: f64) -> Result<Self> {
        Self::new(1.0, well_depth, half_width, 1.0)
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn well_depth(&self) -> f64 {
        self.well_depth
    }

    pub fn half_width(&self) -> f64 {
        self.half_width
    }

    pub fn action_quantum(&self) -> f64 {
        self.action_quantum
    }

    /// Same particle and well intensity, different confinement.
    pub fn with_half_width(&self, half_width: f64) -> Result<Self> {
        Self::new(self.mass, self.well_depth, half_width, self.action_quantum)
    }

    pub fn with_well_depth(&self, well_depth: f64) -> Result<Self> {
        Self::new(self.mass, well_depth, self.half_width, self.action_quantum)
    }

    /// `α(L) = π/(2L)`.
    pub fn alpha(&self) -> f64 {
        PI / (2.0 * self.half_width)
    }

    /// `T(L) = ħ²α²/(2m)`.
    pub fn kinetic_scale(&self) -> f64 {
        let a = self.alpha();
        self.action_quantum * self.action_quantum * a * a / (2.0 * self.mass)
    }

    /// `4 V0 / T`, the square of `2/(πζ)`.
    pub fn coupling_ratio(&self) -> f64 {
        4.0 * self.well_depth / self.kinetic_scale()
    }

    /// `V0 tan²(αx)`; infinite at and beyond the walls.
    pub fn potential(&self, x: f64) -> f64 {
        if x.abs() >= self.half_width {
            return f64::INFINITY;
        }
        if self.well_depth == 0.0 {
            return 0.0;
        }
        let t = (self.alpha() * x).tan();
        self.well_depth * t * t
    }
}

/// Every scale quantity consumed by the spectrum and pressure formulas.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DerivedScales {
    pub alpha: f64,
    pub kinetic_scale: f64,
    /// `ζ² = T/(π² V0)`; `+∞` for an empty well.
    pub zeta_squared: f64,
    pub lambda_exact: f64,
    /// `ħω = T λ`.
    pub oscillator_quantum: f64,
    pub psi_factor: f64,
    /// `n_cr = 1/λ`; `+∞` for an empty well.
    pub n_critical: f64,
}

/// `λ = sqrt(1 + x) - 1` in the rationalized form `x / (1 + sqrt(1 + x))`,
/// which keeps full relative precision for `x → 0`.
pub fn lambda_from_coupling(coupling: f64) -> f64 {
    coupling / (1.0 + (1.0 + coupling).sqrt())
}

/// Direct evaluation of `sqrt((2/πζ)² + 1) - 1`. Loses digits for small
/// coupling; kept for comparison with [`lambda_from_coupling`].
pub fn lambda_literal(coupling: f64) -> f64 {
    (coupling + 1.0).sqrt() - 1.0
}

/// `ψ = λ(λ + 2)/(λ + 1)`.
pub fn psi_from_lambda(lambda: f64) -> f64 {
    lambda * (lambda + 2.0) / (lambda + 1.0)
}

/// `ψ = (λ + 1)[1 - (λ + 1)⁻²]`, the unsimplified form.
pub fn psi_literal(lambda: f64) -> f64 {
    let q = lambda + 1.0;
    q * (1.0 - 1.0 / (q * q))
}

pub fn derive_scales(params: &PtParameters) -> DerivedScales {
    let alpha = params.alpha();
    let kinetic_scale = params.kinetic_scale();
    let lambda = lambda_from_coupling(params.coupling_ratio());
    let zeta_squared = if params.well_depth() > 0.0 {
        kinetic_scale / (PI * PI * params.well_depth())
    } else {
        f64::INFINITY
    };
    let n_critical = if lambda > 0.0 {
        1.0 / lambda
    } else {
        f64::INFINITY
    };
    DerivedScales {
        alpha,
        kinetic_scale,
        zeta_squared,
        lambda_exact: lambda,
        oscillator_quantum: kinetic_scale * lambda,
        psi_factor: psi_from_lambda(lambda),
        n_critical,
    }
}

impl DerivedScales {
    /// `V0` recovered from `T λ(λ + 2)/4`.
    pub fn reconstructed_well_depth(&self) -> f64 {
        self.kinetic_scale * self.lambda_exact * (self.lambda_exact + 2.0) / 4.0
    }
}
