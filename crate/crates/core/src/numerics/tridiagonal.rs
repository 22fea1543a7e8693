//! Lowest eigenvalues of a real symmetric tridiagonal matrix by bisection
//! on Sturm sequence counts.

use crate::error::{PtError, Result};

/// Symmetric tridiagonal matrix stored as its diagonal and the squares of
/// its off-diagonal.
#[derive(Debug, Clone)]
pub struct SymTridiagonal {
    diag: Vec<f64>,
    off_sq: Vec<f64>,
    pivmin: f64,
}

impl SymTridiagonal {
    pub fn new(diag: Vec<f64>, off: &[f64]) -> Result<Self> {
        if diag.is_empty() || off.len() + 1 != diag.len() {
            return Err(PtError::InvalidParameter(format!(
                "tridiagonal shape mismatch: {} diagonal, {} off-diagonal",
                diag.len(),
                off.len()
            )));
        }
        if diag.iter().chain(off).any(|v| !v.is_finite()) {
            return Err(PtError::Convergence(
                "matrix has non-finite entries".to_string(),
            ));
        }
        let off_sq: Vec<f64> = off.iter().map(|e| e * e).collect();
        let max_sq = off_sq.iter().cloned().fold(1.0, f64::max);
        Ok(Self {
            diag,
            off_sq,
            pivmin: f64::MIN_POSITIVE * max_sq,
        })
    }

    pub fn len(&self) -> usize {
        self.diag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diag.is_empty()
    }

    /// Number of eigenvalues strictly below `x` (negative pivots of the
    /// `LDLᵀ` factorization of `A - xI`).
    pub fn count_below(&self, x: f64) -> usize {
        let mut count = 0;
        let mut q = self.diag[0] - x;
        if q.abs() < self.pivmin {
            q = -self.pivmin;
        }
        if q < 0.0 {
            count += 1;
        }
        for (d, e2) in self.diag[1..].iter().zip(&self.off_sq) {
            q = d - x - e2 / q;
            if q.abs() < self.pivmin {
                q = -self.pivmin;
            }
            if q < 0.0 {
                count += 1;
            }
        }
        count
    }

    /// Gershgorin interval containing the whole spectrum.
    pub fn gershgorin(&self) -> (f64, f64) {
        let n = self.diag.len();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let mut r = 0.0;
            if i > 0 {
                r += self.off_sq[i - 1].sqrt();
            }
            if i + 1 < n {
                r += self.off_sq[i].sqrt();
            }
            lo = lo.min(self.diag[i] - r);
            hi = hi.max(self.diag[i] + r);
        }
        (lo, hi)
    }

    /// The `k` smallest eigenvalues in ascending order, each converged to
    /// adjacent floating-point numbers.
    pub fn lowest_eigenvalues(&self, k: usize) -> Result<Vec<f64>> {
        let (glo, ghi) = self.gershgorin();
        bisect_lowest(
            |x| self.count_below(x),
            self.len(),
            glo,
            ghi,
            self.pivmin,
            k,
        )
    }
}

/// `c·DᵀD + diag(w)` with `DᵀD = tridiag(-1, 2, -1)`, the form taken by a
/// second-order finite-difference Hamiltonian with kinetic coupling `c`.
///
/// Storing `c` and `w` separately keeps the potential at full precision even
/// when `w_i ≪ c`; the Sturm count runs on the scaled pivots
/// `p_i = c (1 + r_i)`, `r_i = r_{i-1}/(1 + r_{i-1}) + (w_i - x)/c`, which
/// never forms the sum `2c + w_i`.
#[derive(Debug, Clone)]
pub struct LaplacianPlusDiagonal {
    coupling: f64,
    diagonal: Vec<f64>,
}

impl LaplacianPlusDiagonal {
    pub fn new(coupling: f64, diagonal: Vec<f64>) -> Result<Self> {
        if diagonal.is_empty() {
            return Err(PtError::InvalidParameter("empty matrix".to_string()));
        }
        if !(coupling.is_finite() && coupling > 0.0) {
            return Err(PtError::InvalidParameter(format!(
                "coupling must be positive and finite, got {coupling}"
            )));
        }
        if diagonal.iter().any(|v| !v.is_finite()) {
            return Err(PtError::Convergence(
                "matrix has non-finite entries".to_string(),
            ));
        }
        Ok(Self { coupling, diagonal })
    }

    pub fn len(&self) -> usize {
        self.diagonal.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diagonal.is_empty()
    }

    /// The same matrix in plain tridiagonal storage.
    pub fn to_tridiagonal(&self) -> Result<SymTridiagonal> {
        let c = self.coupling;
        let diag = self.diagonal.iter().map(|w| 2.0 * c + w).collect();
        SymTridiagonal::new(diag, &vec![-c; self.len() - 1])
    }

    pub fn count_below(&self, x: f64) -> usize {
        let c = self.coupling;
        let tiny = f64::EPSILON * f64::EPSILON;
        let mut count = 0;
        // r_{-1}/(1 + r_{-1}) = 1 for the first row
        let mut carry = 1.0;
        for w in &self.diagonal {
            let r = carry + (w - x) / c;
            let mut q = 1.0 + r;
            if q.abs() < tiny {
                q = -tiny;
            }
            if q < 0.0 {
                count += 1;
            }
            carry = (q - 1.0) / q;
        }
        count
    }

    pub fn lowest_eigenvalues(&self, k: usize) -> Result<Vec<f64>> {
        let lo = self.diagonal.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = self
            .diagonal
            .iter()
            .cloned()
            .fold(f64::NEG_INFINITY, f64::max)
            + 4.0 * self.coupling;
        bisect_lowest(|x| self.count_below(x), self.len(), lo, hi, 0.0, k)
    }
}

fn bisect_lowest<F: Fn(f64) -> usize>(
    count_below: F,
    size: usize,
    glo: f64,
    ghi: f64,
    pivmin: f64,
    k: usize,
) -> Result<Vec<f64>> {
    if k == 0 || k > size {
        return Err(PtError::InvalidParameter(format!(
            "requested {k} eigenvalues of a {size}x{size} matrix"
        )));
    }
    let span = (ghi - glo).max(f64::MIN_POSITIVE);
    let lower = glo - 2.0 * f64::EPSILON * span - pivmin;
    let upper = ghi + 2.0 * f64::EPSILON * span + pivmin;

    // tightest known upper bound for each requested index
    let mut uppers = vec![upper; k];
    let mut result = Vec::with_capacity(k);
    let mut lo_start = lower;
    for i in 0..k {
        let mut lo = lo_start;
        let mut hi = uppers[i];
        let mut iterations = 0;
        loop {
            let mid = 0.5 * (lo + hi);
            let tol = 2.0 * f64::EPSILON * lo.abs().max(hi.abs()) + pivmin;
            if hi - lo <= tol || mid <= lo || mid >= hi {
                break;
            }
            let c = count_below(mid);
            if c > i {
                hi = mid;
                // mid also bounds every eigenvalue with index < c
                for u in uppers.iter_mut().take(c.min(k)).skip(i + 1) {
                    if mid < *u {
                        *u = mid;
                    }
                }
            } else {
                lo = mid;
            }
            iterations += 1;
            if iterations > 2000 {
                return Err(PtError::Convergence(format!(
                    "bisection for eigenvalue {i} did not converge"
                )));
            }
        }
        result.push(0.5 * (lo + hi));
        lo_start = lo;
    }
    Ok(result)
}
