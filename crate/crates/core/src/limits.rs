//! Box (FP) and oscillator (HO) limiting expansions of `λ = sqrt(1 + x) - 1`,
//! `x = 4 V0/T`, and the limiting equations of state `P = s E / L`.
//!
//! FP side, `x ≪ 1`:
//!
//! ```text
//! order 1:  λ ≈ x/2            ħω ≈ 2 V0
//! order 2:  λ ≈ (x/2)(1 - x/4)  ħω ≈ 2 V0 (1 - V0/T)
//! ```
//!
//! HO side, `λ̃ = 2 sqrt(V0/T) ≫ 1`, `ħω̃ = T λ̃ = 2 sqrt(V0 T)`:
//!
//! ```text
//! order 1:  λ ≈ λ̃                      ħω ≈ ħω̃
//! order 2:  λ ≈ λ̃ - 1                  ħω ≈ ħω̃ - T
//! order 3:  λ ≈ λ̃ - 1 + 1/(2λ̃)         ħω ≈ ħω̃ - T + T²/(2ħω̃)
//! ```
//!
//! The `α⁴` term of the HO series vanishes, so the order-3 error is `O(α⁵)`.

use serde::Serialize;

use crate::error::{PtError, Result};
use crate::parameters::PtParameters;
use crate::spectra::{effective_exponent, energy_level};

/// FP expansion requires `V0/T` below this.
pub const FP_DOMAIN_MAX: f64 = 0.25;
/// HO expansion requires `V0/T` above this.
pub const HO_DOMAIN_MIN: f64 = 4.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum LimitRegime {
    #[serde(rename = "FP")]
    Box,
    #[serde(rename = "HO")]
    Oscillator,
}

impl LimitRegime {
    /// Exponent `s` of the limiting equation of state `P = s E / L`.
    pub fn exponent(&self) -> f64 {
        match self {
            LimitRegime::Box => 2.0,
            LimitRegime::Oscillator => 1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LimitExpansion {
    pub regime: LimitRegime,
    pub lambda_approx: f64,
    pub oscillator_quantum_approx: f64,
    pub order_kept: u8,
    kinetic_scale: f64,
}

impl LimitExpansion {
    /// Approximate `E_n`.
    ///
    /// On the HO side the box term `T n²` is of the same order as the `-T`
    /// frequency shift, so the order-1 energy is the bare oscillator
    /// `ħω̃ (n - 1/2)` and higher orders add `T n²`.
    pub fn energy(&self, n: u64) -> f64 {
        let nf = n as f64;
        let ho = self.oscillator_quantum_approx * (nf - 0.5);
        match (self.regime, self.order_kept) {
            (LimitRegime::Oscillator, 1) => ho,
            _ => self.kinetic_scale * nf * nf + ho,
        }
    }
}

/// One exact-versus-approximate comparison.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ApproximationReport {
    pub exact: f64,
    pub approx: f64,
    pub absolute_error: f64,
    pub relative_error: f64,
    /// Leading neglected term.
    pub expected_order: String,
}

impl ApproximationReport {
    pub fn new(exact: f64, approx: f64, expected_order: impl Into<String>) -> Self {
        let absolute_error = (exact - approx).abs();
        let relative_error = if exact != 0.0 {
            absolute_error / exact.abs()
        } else {
            absolute_error
        };
        Self {
            exact,
            approx,
            absolute_error,
            relative_error,
            expected_order: expected_order.into(),
        }
    }
}

fn reduced_depth(params: &PtParameters) -> f64 {
    params.well_depth() / params.kinetic_scale()
}

fn check_fp_domain(params: &PtParameters) -> Result<()> {
    let r = reduced_depth(params);
    if r >= FP_DOMAIN_MAX {
        return Err(PtError::Domain(format!(
            "box expansion needs V0/T < {FP_DOMAIN_MAX}, got {r}"
        )));
    }
    Ok(())
}

fn check_ho_domain(params: &PtParameters) -> Result<()> {
    let r = reduced_depth(params);
    if r <= HO_DOMAIN_MIN {
        return Err(PtError::Domain(format!(
            "oscillator expansion needs V0/T > {HO_DOMAIN_MIN}, got {r}"
        )));
    }
    Ok(())
}

pub fn fp_limit_expansion(params: &PtParameters, order: u8) -> Result<LimitExpansion> {
    if !(1..=2).contains(&order) {
        return Err(PtError::InvalidParameter(format!(
            "box expansion order must be 1 or 2, got {order}"
        )));
    }
    check_fp_domain(params)?;
    let t = params.kinetic_scale();
    let x = params.coupling_ratio();
    let lambda = match order {
        1 => x / 2.0,
        _ => x / 2.0 * (1.0 - x / 4.0),
    };
    Ok(LimitExpansion {
        regime: LimitRegime::Box,
        lambda_approx: lambda,
        oscillator_quantum_approx: t * lambda,
        order_kept: order,
        kinetic_scale: t,
    })
}

/// `λ̃ = 2 sqrt(V0/T)`, which equals `2/(πζ)`.
pub fn harmonic_lambda(params: &PtParameters) -> f64 {
    2.0 * reduced_depth(params).sqrt()
}

/// `ħω̃ = 2 sqrt(V0 T)`.
pub fn harmonic_quantum(params: &PtParameters) -> f64 {
    2.0 * (params.well_depth() * params.kinetic_scale()).sqrt()
}

pub fn ho_limit_expansion(params: &PtParameters, order: u8) -> Result<LimitExpansion> {
    if !(1..=3).contains(&order) {
        return Err(PtError::InvalidParameter(format!(
            "oscillator expansion order must be 1, 2 or 3, got {order}"
        )));
    }
    check_ho_domain(params)?;
    let t = params.kinetic_scale();
    let lt = harmonic_lambda(params);
    let lambda = match order {
        1 => lt,
        2 => lt - 1.0,
        _ => lt - 1.0 + 0.5 / lt,
    };
    Ok(LimitExpansion {
        regime: LimitRegime::Oscillator,
        lambda_approx: lambda,
        oscillator_quantum_approx: t * lambda,
        order_kept: order,
        kinetic_scale: t,
    })
}

/// Compares `P_n L / E_n` with the limiting exponent of `regime`.
pub fn limit_equation_of_state(
    params: &PtParameters,
    n: u64,
    regime: LimitRegime,
) -> Result<ApproximationReport> {
    let tag = match regime {
        LimitRegime::Box => {
            check_fp_domain(params)?;
            "O(V0/T)"
        }
        LimitRegime::Oscillator => {
            check_ho_domain(params)?;
            "O(T/ħω̃)"
        }
    };
    let s_eff = effective_exponent(params, n)?;
    Ok(ApproximationReport::new(s_eff, regime.exponent(), tag))
}

/// Exact `E_n` against the approximate energy of an expansion.
pub fn compare_energy(
    params: &PtParameters,
    expansion: &LimitExpansion,
    n: u64,
) -> Result<ApproximationReport> {
    let exact = energy_level(params, n)?.total;
    let tag = match (expansion.regime, expansion.order_kept) {
        (LimitRegime::Box, 1) => "O(x²)",
        (LimitRegime::Box, _) => "O(x³)",
        (LimitRegime::Oscillator, 1) => "O(α²)",
        (LimitRegime::Oscillator, 2) => "O(α³)",
        (LimitRegime::Oscillator, _) => "O(α⁵)",
    };
    Ok(ApproximationReport::new(exact, expansion.energy(n), tag))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parameters::derive_scales;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    fn fp_case() -> PtParameters {
        // T = 0.5, x = 0.04
        PtParameters::reduced(0.005, PI / 2.0).unwrap()
    }

    fn ho_case() -> PtParameters {
        PtParameters::reduced(0.5, 50.0 * PI).unwrap()
    }

    #[test]
    fn fp_expansion_at_limit_point() {
        let p = PtParameters::reduced(0.0, 1.0).unwrap();
        for order in 1..=2 {
            let e = fp_limit_expansion(&p, order).unwrap();
            assert_eq!(e.lambda_approx, 0.0);
            assert_eq!(e.oscillator_quantum_approx, 0.0);
        }
    }

    #[test]
    fn fp_expansion_values() {
        // sqrt(1.04) - 1 = 0.0198039027185569660...
        let exact = 0.019_803_902_718_556_966;
        let o2 = fp_limit_expansion(&fp_case(), 2).unwrap();
        assert_relative_eq!(o2.lambda_approx, 0.0198, max_relative = 1e-13);
        assert_relative_eq!(
            o2.oscillator_quantum_approx,
            2.0 * 0.005 * (1.0 - 0.01),
            max_relative = 1e-13
        );
        let o1 = fp_limit_expansion(&fp_case(), 1).unwrap();
        assert_relative_eq!(o1.lambda_approx, 0.02, max_relative = 1e-14);
        // leading neglected term x²/8 = 2e-4
        let err = o1.lambda_approx - exact;
        assert_relative_eq!(err, 2e-4, max_relative = 0.02);
        assert!((o2.lambda_approx - exact).abs() < 5e-6);
    }

    #[test]
    fn fp_domain_and_order_guards() {
        let deep = PtParameters::reduced(0.125, PI / 2.0).unwrap(); // V0/T = 0.25
        assert!(matches!(
            fp_limit_expansion(&deep, 1),
            Err(PtError::Domain(_))
        ));
        assert!(fp_limit_expansion(&fp_case(), 0).is_err());
        assert!(fp_limit_expansion(&fp_case(), 3).is_err());
    }

    #[test]
    fn ho_expansion_values() {
        let p = ho_case();
        assert_relative_eq!(harmonic_lambda(&p), 200.0, max_relative = 1e-13);
        assert_relative_eq!(harmonic_quantum(&p), 0.01, max_relative = 1e-13);
        let o3 = ho_limit_expansion(&p, 3).unwrap();
        let exact = derive_scales(&p).oscillator_quantum;
        assert_relative_eq!(
            o3.oscillator_quantum_approx,
            9.950_125e-3,
            max_relative = 1e-12
        );
        assert_relative_eq!(o3.oscillator_quantum_approx, exact, max_relative = 1e-10);

        let o1 = ho_limit_expansion(&p, 1).unwrap();
        assert_relative_eq!(o1.energy(1), 0.005, max_relative = 1e-13);
        let rep = compare_energy(&p, &o1, 1).unwrap();
        assert_relative_eq!(rep.exact, 5.025_062_499_609_38e-3, max_relative = 1e-12);
        // relative deviation ≈ T/ħω̃ = 5e-3
        assert_relative_eq!(rep.relative_error, 5e-3, max_relative = 0.01);
    }

    #[test]
    fn ho_ratio_tends_to_one() {
        let mut prev = f64::INFINITY;
        for k in 1..8 {
            let p = PtParameters::reduced(1.0, 10f64.powi(k)).unwrap();
            let dev = (derive_scales(&p).oscillator_quantum / harmonic_quantum(&p) - 1.0).abs();
            assert!(dev < prev);
            prev = dev;
        }
        assert!(prev < 1e-6);
    }

    #[test]
    fn ho_domain_guard() {
        assert!(matches!(
            ho_limit_expansion(&fp_case(), 1),
            Err(PtError::Domain(_))
        ));
        assert!(ho_limit_expansion(&ho_case(), 4).is_err());
    }

    #[test]
    fn equation_of_state_limits() {
        let pure_box = PtParameters::reduced(0.0, 1.0).unwrap();
        let r = limit_equation_of_state(&pure_box, 5, LimitRegime::Box).unwrap();
        assert_eq!(r.exact, 2.0);
        assert_eq!(r.absolute_error, 0.0);

        let r1 = limit_equation_of_state(&ho_case(), 1, LimitRegime::Oscillator).unwrap();
        assert_relative_eq!(r1.exact, 1.005, max_relative = 1e-3);
        let wide = PtParameters::reduced(0.5, 500.0 * PI).unwrap();
        let r2 = limit_equation_of_state(&wide, 1, LimitRegime::Oscillator).unwrap();
        let shrink = r1.absolute_error / r2.absolute_error;
        assert!((shrink - 10.0).abs() < 0.5, "shrink factor {shrink}");

        assert!(limit_equation_of_state(&ho_case(), 1, LimitRegime::Box).is_err());
    }

    #[test]
    fn ho_order_three_error_is_fifth_order() {
        // error ratio under L → 2L at fixed V0 is 2⁵ for order 3
        let err = |l: f64| {
            let p = PtParameters::reduced(1.0, l).unwrap();
            let e = ho_limit_expansion(&p, 3).unwrap();
            (derive_scales(&p).oscillator_quantum - e.oscillator_quantum_approx).abs()
        };
        let ratio = err(20.0) / err(40.0);
        assert!((ratio - 32.0).abs() < 1.0, "ratio {ratio}");
    }
}
