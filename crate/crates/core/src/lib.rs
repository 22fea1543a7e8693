//! Energy and pressure spectra of the confined trigonometric Pöschl-Teller
//! oscillator `V(x) = V0 tan²(πx/2L)` on `(-L, L)`.
//!
//! * [`parameters`]: physical inputs and derived scales (`T`, `λ`, `ħω`, `ψ`, `n_cr`).
//! * [`spectra`]: exact levels `E_n`, level pressures `P_n = -∂E_n/∂L`, regime labels.
//! * [`limits`]: box and oscillator expansions, limiting equations of state.
//! * [`semiclassical`]: Bohr-Sommerfeld levels by closed form and by quadrature.
//! * [`perturbation`]: Taylor series of the well and quartic perturbation theory.
//! * [`oracle`]: finite-difference eigenvalues and numerical pressures.

pub mod error;
pub mod limits;
pub mod numerics;
pub mod oracle;
pub mod parameters;
pub mod perturbation;
pub mod semiclassical;
pub mod spectra;

pub use error::{PtError, Result};
pub use parameters::{derive_scales, DerivedScales, PtParameters};
