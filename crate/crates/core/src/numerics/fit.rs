//! Polynomial least squares via Householder QR.

use crate::error::{PtError, Result};

/// Fitted coefficients `c[0] + c[1] x + … + c[d] x^d`.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyFit {
    pub coefficients: Vec<f64>,
    /// Largest absolute residual over the data.
    pub max_residual: f64,
}

impl PolyFit {
    pub fn eval(&self, x: f64) -> f64 {
        self.coefficients
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + c)
    }
}

pub fn polyfit(xs: &[f64], ys: &[f64], degree: usize) -> Result<PolyFit> {
    let rows = xs.len();
    let cols = degree + 1;
    if ys.len() != rows || rows < cols {
        return Err(PtError::InvalidParameter(format!(
            "need at least {cols} matching samples for a degree-{degree} fit"
        )));
    }
    // column-major Vandermonde matrix
    let mut a: Vec<Vec<f64>> = (0..cols)
        .map(|j| xs.iter().map(|x| x.powi(j as i32)).collect())
        .collect();
    let mut b = ys.to_vec();

    for k in 0..cols {
        let norm = a[k][k..].iter().map(|v| v * v).sum::<f64>().sqrt();
        if norm == 0.0 {
            return Err(PtError::InvalidParameter(
                "rank-deficient polynomial fit".to_string(),
            ));
        }
        let alpha = if a[k][k] > 0.0 { -norm } else { norm };
        let mut v: Vec<f64> = a[k][k..].to_vec();
        v[0] -= alpha;
        let vnorm2: f64 = v.iter().map(|x| x * x).sum();
        for col in a.iter_mut().skip(k) {
            let dot: f64 = v.iter().zip(&col[k..]).map(|(p, q)| p * q).sum();
            let s = 2.0 * dot / vnorm2;
            for (c, vi) in col[k..].iter_mut().zip(&v) {
                *c -= s * vi;
            }
        }
        let dot: f64 = v.iter().zip(&b[k..]).map(|(p, q)| p * q).sum();
        let s = 2.0 * dot / vnorm2;
        for (c, vi) in b[k..].iter_mut().zip(&v) {
            *c -= s * vi;
        }
    }

    let mut coefficients = vec![0.0; cols];
    for k in (0..cols).rev() {
        let tail: f64 = ((k + 1)..cols).map(|j| a[j][k] * coefficients[j]).sum();
        coefficients[k] = (b[k] - tail) / a[k][k];
    }
    let mut fit = PolyFit {
        coefficients,
        max_residual: 0.0,
    };
    fit.max_residual = xs
        .iter()
        .zip(ys)
        .map(|(x, y)| (fit.eval(*x) - y).abs())
        .fold(0.0, f64::max);
    Ok(fit)
}
