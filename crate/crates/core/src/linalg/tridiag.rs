//! Sturm-sequence bisection for symmetric tridiagonal matrices.

use alloc::vec::Vec;

/// Gershgorin enclosure `[lo, hi]` of the spectrum.
pub fn gershgorin(diag: &[f64], off: &[f64]) -> (f64, f64) {
    let n = diag.len();
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..n {
        let left = if i > 0 { off[i - 1].abs() } else { 0.0 };
        let right = if i + 1 < n { off[i].abs() } else { 0.0 };
        lo = lo.min(diag[i] - left - right);
        hi = hi.max(diag[i] + left + right);
    }
    (lo, hi)
}

fn pivot_floor(off: &[f64]) -> f64 {
    let max_e2 = off.iter().fold(1.0_f64, |m, e| m.max(e * e));
    f64::MIN_POSITIVE * max_e2
}

/// Number of eigenvalues strictly below `x`.
pub fn sturm_count(diag: &[f64], off: &[f64], x: f64) -> usize {
    sturm_count_with_floor(diag, off, x, pivot_floor(off))
}

fn sturm_count_with_floor(diag: &[f64], off: &[f64], x: f64, floor: f64) -> usize {
    let mut count = 0;
    let mut q = 1.0;
    for i in 0..diag.len() {
        let coupling = if i == 0 { 0.0 } else { off[i - 1] * off[i - 1] / q };
        q = diag[i] - x - coupling;
        if q.abs() < floor {
            q = -floor;
        }
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

/// The `count` lowest eigenvalues in ascending order, each bracketed to
/// within a few ulps of the matrix norm.
pub fn lowest_eigenvalues(diag: &[f64], off: &[f64], count: usize) -> Vec<f64> {
    let n = diag.len();
    let count = count.min(n);
    let (gl, gu) = gershgorin(diag, off);
    let norm = gl.abs().max(gu.abs()).max(f64::MIN_POSITIVE);
    let tol = 4.0 * f64::EPSILON * norm;
    let floor = pivot_floor(off);
    let gl = gl - tol - 2.0 * f64::EPSILON * norm;
    let gu = gu + tol + 2.0 * f64::EPSILON * norm;

    let mut values = Vec::with_capacity(count);
    let mut lower = gl;
    for j in 0..count {
        let mut lo = lower;
        let mut hi = gu;
        // Invariant: count(lo) <= j < count(hi).
        for _ in 0..200 {
            if hi - lo <= tol {
                break;
            }
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if sturm_count_with_floor(diag, off, mid, floor) > j {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        let value = 0.5 * (lo + hi);
        values.push(value);
        lower = lo;
    }
    values
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn counts_diagonal_matrix() {
        let d = [3.0, 1.0, 2.0];
        let e = [0.0, 0.0];
        assert_eq!(sturm_count(&d, &e, 0.5), 0);
        assert_eq!(sturm_count(&d, &e, 1.5), 1);
        assert_eq!(sturm_count(&d, &e, 10.0), 3);
        let vals = lowest_eigenvalues(&d, &e, 3);
        for (v, exact) in vals.iter().zip([1.0, 2.0, 3.0]) {
            assert!((v - exact).abs() < 1e-14);
        }
    }

    #[test]
    fn free_chain_spectrum() {
        // -2 cos(pi k / (n + 1)) for the open chain with unit hopping.
        let n = 40;
        let d = vec![0.0; n];
        let e = vec![-1.0; n - 1];
        let vals = lowest_eigenvalues(&d, &e, n);
        for (k, v) in vals.iter().enumerate() {
            let exact = -2.0 * libm::cos(core::f64::consts::PI * (k + 1) as f64 / (n + 1) as f64);
            assert!((v - exact).abs() < 1e-13, "{k}: {v} vs {exact}");
        }
    }

    #[test]
    fn degenerate_values_repeat() {
        let d = [1.0, 1.0, 1.0, 4.0];
        let e = [0.0, 0.0, 0.0];
        let vals = lowest_eigenvalues(&d, &e, 4);
        assert!(vals[..3].iter().all(|v| (v - 1.0).abs() < 1e-14));
        assert!((vals[3] - 4.0).abs() < 1e-14);
    }
}
