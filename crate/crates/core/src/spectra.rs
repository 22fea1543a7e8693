//! Exact energy levels, level pressures `P_n = -∂E_n/∂L`, and the
//! box/oscillator decomposition of both.
//!
//! For `n = 1, 2, 3, ...`
//!
//! ```text
//! E_n^FP = T n²                 P_n^FP = (2/L) E_n^FP
//! E_n^HO = T λ (n - 1/2)        P_n^HO = (2/L) E_n^HO - (1/L) T ψ (n - 1/2)
//! ```

use std::fmt;

use serde::Serialize;

use crate::error::{invalid, Result};
use crate::parameters::{derive_scales, DerivedScales, PtParameters};

pub const MAX_TABLE_LEVELS: u64 = 1_000_000;

/// Regime ratio below which a level is labeled oscillator-dominated.
pub const HO_DOMINATED_BELOW: f64 = 0.5;
/// Regime ratio above which a level is labeled box-dominated.
pub const FP_DOMINATED_ABOVE: f64 = 2.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Regime {
    #[serde(rename = "FP-dominated")]
    FpDominated,
    #[serde(rename = "HO-dominated")]
    HoDominated,
    #[serde(rename = "crossover")]
    Crossover,
}

impl Regime {
    pub fn as_str(&self) -> &'static str {
        match self {
            Regime::FpDominated => "FP-dominated",
            Regime::HoDominated => "HO-dominated",
            Regime::Crossover => "crossover",
        }
    }

    /// Thresholds are inclusive on the dominated side: `η = 2` is FP-dominated.
    pub fn classify(eta: f64) -> Self {
        if eta >= FP_DOMINATED_ABOVE {
            Regime::FpDominated
        } else if eta < HO_DOMINATED_BELOW {
            Regime::HoDominated
        } else {
            Regime::Crossover
        }
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EnergyLevel {
    pub fp: f64,
    pub ho: f64,
    pub total: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PressureLevel {
    pub fp: f64,
    pub ho: f64,
    pub total: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpectrumRow {
    pub n: u64,
    pub energy_fp: f64,
    pub energy_ho: f64,
    pub energy_total: f64,
    pub pressure_fp: f64,
    pub pressure_ho: f64,
    pub pressure_total: f64,
    /// Literal component ratio `E^FP / E^HO`.
    pub regime_ratio: f64,
    /// Large-`n` form of the ratio, `n / λ`.
    pub approximate_ratio: f64,
    pub regime_label: Regime,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumTable {
    pub params: PtParameters,
    pub scales: DerivedScales,
    pub rows: Vec<SpectrumRow>,
}

fn check_level(n: u64) -> Result<()> {
    if n < 1 {
        return Err(invalid("quantum number n must be at least 1"));
    }
    Ok(())
}

fn energy_from_scales(scales: &DerivedScales, n: u64) -> EnergyLevel {
    let nf = n as f64;
    let fp = scales.kinetic_scale * nf * nf;
    let ho = scales.oscillator_quantum * (nf - 0.5);
    EnergyLevel {
        fp,
        ho,
        total: fp + ho,
    }
}

fn pressure_from_scales(scales: &DerivedScales, half_width: f64, n: u64) -> PressureLevel {
    let e = energy_from_scales(scales, n);
    let nf = n as f64;
    let fp = 2.0 * e.fp / half_width;
    let ho = 2.0 * e.ho / half_width
        - scales.kinetic_scale * scales.psi_factor * (nf - 0.5) / half_width;
    PressureLevel {
        fp,
        ho,
        total: fp + ho,
    }
}

fn ratio_from_scales(scales: &DerivedScales, n: u64) -> (f64, Regime) {
    let nf = n as f64;
    if scales.lambda_exact == 0.0 {
        return (f64::INFINITY, Regime::FpDominated);
    }
    let eta = nf * nf / (scales.lambda_exact * (nf - 0.5));
    (eta, Regime::classify(eta))
}

pub fn energy_level(params: &PtParameters, n: u64) -> Result<EnergyLevel> {
    check_level(n)?;
    Ok(energy_from_scales(&derive_scales(params), n))
}

/// Closed-form `-∂E_n/∂L`.
pub fn pressure_level(params: &PtParameters, n: u64) -> Result<PressureLevel> {
    check_level(n)?;
    Ok(pressure_from_scales(
        &derive_scales(params),
        params.half_width(),
        n,
    ))
}

/// `η_n = n² / (λ (n - 1/2))`; `+∞` for an empty well.
pub fn regime_ratio(params: &PtParameters, n: u64) -> Result<(f64, Regime)> {
    check_level(n)?;
    Ok(ratio_from_scales(&derive_scales(params), n))
}

/// `P_n L / E_n`, the local equation-of-state exponent.
pub fn effective_exponent(params: &PtParameters, n: u64) -> Result<f64> {
    let e = energy_level(params, n)?;
    let p = pressure_level(params, n)?;
    Ok(p.total * params.half_width() / e.total)
}

pub fn spectrum_row(params: &PtParameters, scales: &DerivedScales, n: u64) -> SpectrumRow {
    let e = energy_from_scales(scales, n);
    let p = pressure_from_scales(scales, params.half_width(), n);
    let (eta, label) = ratio_from_scales(scales, n);
    SpectrumRow {
        n,
        energy_fp: e.fp,
        energy_ho: e.ho,
        energy_total: e.total,
        pressure_fp: p.fp,
        pressure_ho: p.ho,
        pressure_total: p.total,
        regime_ratio: eta,
        approximate_ratio: if scales.lambda_exact > 0.0 {
            n as f64 / scales.lambda_exact
        } else {
            f64::INFINITY
        },
        regime_label: label,
    }
}

pub fn spectrum_table(params: &PtParameters, n_max: u64) -> Result<SpectrumTable> {
    if !(1..=MAX_TABLE_LEVELS).contains(&n_max) {
        return Err(invalid(format!(
            "n-max must lie in 1..={MAX_TABLE_LEVELS}, got {n_max}"
        )));
    }
    let scales = derive_scales(params);
    let rows = (1..=n_max)
        .map(|n| spectrum_row(params, &scales, n))
        .collect();
    Ok(SpectrumTable {
        params: *params,
        scales,
        rows,
    })
}
