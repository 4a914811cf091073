//! Real symmetric tridiagonal Hamiltonians with an optional periodic corner,
//! and their eigensolver.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{invalid, Error, Result};
use crate::linalg::band::{inverse_iteration, SymBand};
use crate::linalg::dense::symmetric_eigen;
use crate::linalg::tridiag::lowest_eigenvalues;
use crate::sq;
use crate::state::{Basis, StateVector};

/// Dimension above which [`EigenMethod::Auto`] switches to the band solver.
pub const DENSE_LIMIT: usize = 500;

const RESIDUAL_FACTOR: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct HamiltonianMatrix {
    diagonal: Vec<f64>,
    off_diagonal: Vec<f64>,
    corner: f64,
    basis: Basis,
}

impl HamiltonianMatrix {
    pub fn new(diagonal: Vec<f64>, off_diagonal: Vec<f64>, corner: f64, basis: Basis) -> Result<Self> {
        let n = diagonal.len();
        if n == 0 {
            return Err(invalid("dimension", "must be positive"));
        }
        if basis.dim() != n {
            return Err(Error::DimensionMismatch {
                expected: basis.dim(),
                found: n,
            });
        }
        if off_diagonal.len() != n - 1 {
            return Err(Error::DimensionMismatch {
                expected: n - 1,
                found: off_diagonal.len(),
            });
        }
        if diagonal.iter().chain(&off_diagonal).any(|x| !x.is_finite()) || !corner.is_finite() {
            return Err(Error::NonFinite("hamiltonian entries"));
        }
        if corner != 0.0 && n < 3 {
            return Err(invalid(
                "corner",
                format!("a periodic corner needs dimension >= 3, got {n}"),
            ));
        }
        Ok(HamiltonianMatrix {
            diagonal,
            off_diagonal,
            corner,
            basis,
        })
    }

    pub fn dim(&self) -> usize {
        self.diagonal.len()
    }

    pub fn diagonal(&self) -> &[f64] {
        &self.diagonal
    }

    pub fn off_diagonal(&self) -> &[f64] {
        &self.off_diagonal
    }

    pub fn corner(&self) -> f64 {
        self.corner
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        let n = self.dim();
        if i == j {
            self.diagonal[i]
        } else if i + 1 == j {
            self.off_diagonal[i]
        } else if j + 1 == i {
            self.off_diagonal[j]
        } else if (i == 0 && j == n - 1) || (j == 0 && i == n - 1) {
            self.corner
        } else {
            0.0
        }
    }

    /// Row-major dense copy.
    pub fn to_dense(&self) -> Vec<f64> {
        let n = self.dim();
        let mut a = vec![0.0; n * n];
        for i in 0..n {
            a[i * n + i] = self.diagonal[i];
        }
        for (i, &e) in self.off_diagonal.iter().enumerate() {
            a[i * n + i + 1] = e;
            a[(i + 1) * n + i] = e;
        }
        if self.corner != 0.0 {
            a[n - 1] = self.corner;
            a[(n - 1) * n] = self.corner;
        }
        a
    }

    pub fn matvec(&self, x: &[f64], y: &mut [f64]) {
        let n = self.dim();
        for i in 0..n {
            y[i] = self.diagonal[i] * x[i];
        }
        for (i, &e) in self.off_diagonal.iter().enumerate() {
            y[i] += e * x[i + 1];
            y[i + 1] += e * x[i];
        }
        if self.corner != 0.0 {
            y[0] += self.corner * x[n - 1];
            y[n - 1] += self.corner * x[0];
        }
    }

    /// Largest absolute row sum.
    pub fn norm(&self) -> f64 {
        let n = self.dim();
        (0..n)
            .map(|i| {
                let mut s = self.diagonal[i].abs();
                if i > 0 {
                    s += self.off_diagonal[i - 1].abs();
                }
                if i + 1 < n {
                    s += self.off_diagonal[i].abs();
                }
                if i == 0 || i == n - 1 {
                    s += self.corner.abs();
                }
                s
            })
            .fold(0.0, f64::max)
    }

    /// Open block of rows/columns `start..end` (the corner is dropped).
    pub fn principal_block(&self, start: usize, end: usize) -> Result<HamiltonianMatrix> {
        if start >= end || end > self.dim() {
            return Err(invalid(
                "block",
                format!("range {start}..{end} invalid for dimension {}", self.dim()),
            ));
        }
        HamiltonianMatrix::new(
            self.diagonal[start..end].to_vec(),
            self.off_diagonal[start..end - 1].to_vec(),
            0.0,
            Basis::Plain { dim: end - start },
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EigenMethod {
    /// Dense up to [`DENSE_LIMIT`], banded above.
    #[default]
    Auto,
    Dense,
    Banded,
}

/// Lowest eigenpairs, ascending.
#[derive(Debug, Clone)]
pub struct Spectrum {
    pub values: Vec<f64>,
    pub vectors: Vec<StateVector>,
}

impl Spectrum {
    /// Eigenvalues relative to the lowest one.
    pub fn excitations(&self) -> Vec<f64> {
        let e0 = self.values.first().copied().unwrap_or(0.0);
        self.values.iter().map(|e| e - e0).collect()
    }
}

/// The `count` lowest eigenpairs of `h`.
pub fn eigensolve(h: &HamiltonianMatrix, count: usize) -> Result<Spectrum> {
    eigensolve_with(h, count, EigenMethod::Auto)
}

pub fn eigensolve_with(h: &HamiltonianMatrix, count: usize, method: EigenMethod) -> Result<Spectrum> {
    let n = h.dim();
    if count == 0 || count > n {
        return Err(invalid("count", format!("must lie in 1..={n}, got {count}")));
    }
    if h.corner == 0.0 && h.off_diagonal.iter().all(|&x| x == 0.0) {
        return solve_diagonal(h, count);
    }
    let dense = match method {
        EigenMethod::Auto => n <= DENSE_LIMIT,
        EigenMethod::Dense => true,
        EigenMethod::Banded => false,
    };
    let (values, raw) = if dense {
        solve_dense(h, count)?
    } else {
        solve_banded(h, count)?
    };

    let norm = h.norm().max(f64::MIN_POSITIVE);
    let limit = RESIDUAL_FACTOR * norm;
    let mut y = vec![0.0; n];
    for (index, (lambda, v)) in values.iter().zip(&raw).enumerate() {
        h.matvec(v, &mut y);
        let residual = libm::sqrt(y.iter().zip(v).map(|(a, b)| sq(a - lambda * b)).sum::<f64>());
        if !(residual <= limit) {
            return Err(Error::Residual { index, residual, limit });
        }
    }
    let vectors = raw
        .iter()
        .map(|v| StateVector::from_real(v, h.basis()))
        .collect::<Result<Vec<_>>>()?;
    Ok(Spectrum { values, vectors })
}

// Exact for a diagonal matrix: sorted entries and unit vectors.
fn solve_diagonal(h: &HamiltonianMatrix, count: usize) -> Result<Spectrum> {
    let mut order: Vec<usize> = (0..h.dim()).collect();
    order.sort_by(|&i, &j| h.diagonal[i].total_cmp(&h.diagonal[j]));
    order.truncate(count);
    let values = order.iter().map(|&i| h.diagonal[i]).collect();
    let vectors = order
        .iter()
        .map(|&i| StateVector::basis_state(i, h.basis()))
        .collect::<Result<Vec<_>>>()?;
    Ok(Spectrum { values, vectors })
}

fn solve_dense(h: &HamiltonianMatrix, count: usize) -> Result<(Vec<f64>, Vec<Vec<f64>>)> {
    let eig = symmetric_eigen(&h.to_dense(), h.dim())?;
    let vectors = (0..count).map(|j| eig.vector(j)).collect();
    Ok((eig.values[..count].to_vec(), vectors))
}

fn solve_banded(h: &HamiltonianMatrix, count: usize) -> Result<(Vec<f64>, Vec<Vec<f64>>)> {
    let (band, order) = SymBand::from_ring(&h.diagonal, &h.off_diagonal, h.corner);
    let (d, e) = band.clone().into_tridiagonal();
    let values = lowest_eigenvalues(&d, &e, count);
    let permuted = inverse_iteration(&band, &values)?;
    let vectors = permuted
        .into_iter()
        .map(|v| {
            let mut out = vec![0.0; v.len()];
            for (pos, &orig) in order.iter().enumerate() {
                out[orig] = v[pos];
            }
            out
        })
        .collect();
    Ok((values, vectors))
}
