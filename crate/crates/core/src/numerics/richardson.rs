//! Richardson extrapolation for sequences with an even error expansion
//! `f(h) = f₀ + c₁h^p + c₂h^{2p} + …` under step halving.

/// Extrapolates values computed at `h, h/2, h/4, …` (coarsest first),
/// eliminating the leading `levels - 1` error terms of orders `p, 2p, …`.
/// Returns the extrapolated value and the size of the last correction.
pub fn extrapolate(values: &[f64], order: f64) -> (f64, f64) {
    let exponents: Vec<f64> = (1..values.len()).map(|j| order * j as f64).collect();
    extrapolate_exponents(values, &exponents)
}

/// As [`extrapolate`], but for an error expansion `Σ c_j h^{p_j}` with
/// arbitrary distinct exponents; pass `p_1 < p_2 < …`. Uses the first
/// `values.len() - 1` exponents.
pub fn extrapolate_exponents(values: &[f64], exponents: &[f64]) -> (f64, f64) {
    assert!(!values.is_empty(), "need at least one value");
    assert!(
        exponents.len() + 1 >= values.len(),
        "need one exponent per extrapolation pass"
    );
    let mut table = values.to_vec();
    let mut correction = 0.0;
    for &p in exponents.iter().take(values.len() - 1) {
        let factor = 2f64.powf(p);
        let next: Vec<f64> = table
            .windows(2)
            .map(|w| (factor * w[1] - w[0]) / (factor - 1.0))
            .collect();
        correction = (next[next.len() - 1] - table[table.len() - 1]).abs();
        table = next;
    }
    (table[0], correction)
}

/// Slope of the least-squares line through `(ln h, ln err)`.
pub fn log_log_slope(steps: &[f64], errors: &[f64]) -> f64 {
    assert_eq!(steps.len(), errors.len());
    let xs: Vec<f64> = steps.iter().map(|h| h.ln()).collect();
    let ys: Vec<f64> = errors.iter().map(|e| e.ln()).collect();
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}
