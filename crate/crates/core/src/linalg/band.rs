//! Symmetric band matrices: reduction to tridiagonal form and inverse
//! iteration.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Symmetric band matrix in lower storage, `bands[d][i] = A[i + d][i]`.
///
/// The storage keeps one diagonal more than the nominal bandwidth so that the
/// bulge created during band reduction has somewhere to live.
#[derive(Debug, Clone)]
pub struct SymBand {
    n: usize,
    bandwidth: usize,
    bands: Vec<Vec<f64>>,
}

impl SymBand {
    pub fn zeros(n: usize, bandwidth: usize) -> Self {
        let bands = (0..=bandwidth + 1).map(|d| vec![0.0; n.saturating_sub(d)]).collect();
        SymBand { n, bandwidth, bands }
    }

    /// Tridiagonal matrix, optionally closed into a ring by `corner`
    /// (coupling the first and last element). A ring is folded with the
    /// ordering `0, n-1, 1, n-2, ...`, which turns it into a pentadiagonal
    /// band; the permutation (`position -> original index`) is returned.
    pub fn from_ring(diag: &[f64], off: &[f64], corner: f64) -> (Self, Vec<usize>) {
        let n = diag.len();
        if corner == 0.0 || n < 3 {
            let mut band = SymBand::zeros(n, 1);
            band.bands[0].copy_from_slice(diag);
            band.bands[1].copy_from_slice(off);
            return (band, (0..n).collect());
        }
        let order = fold_order(n);
        let mut position = vec![0; n];
        for (pos, &orig) in order.iter().enumerate() {
            position[orig] = pos;
        }
        let mut band = SymBand::zeros(n, 2);
        for (i, &d) in diag.iter().enumerate() {
            band.set(position[i], position[i], d);
        }
        for (i, &e) in off.iter().enumerate() {
            band.set(position[i], position[i + 1], e);
        }
        band.set(position[0], position[n - 1], corner);
        (band, order)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn bandwidth(&self) -> usize {
        self.bandwidth
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        let (r, c) = if i >= j { (i, j) } else { (j, i) };
        let d = r - c;
        if d > self.bandwidth + 1 {
            0.0
        } else {
            self.bands[d][c]
        }
    }

    pub fn set(&mut self, i: usize, j: usize, value: f64) {
        let (r, c) = if i >= j { (i, j) } else { (j, i) };
        let d = r - c;
        debug_assert!(d <= self.bandwidth + 1, "write outside band storage");
        self.bands[d][c] = value;
    }

    /// Largest absolute row sum.
    pub fn norm_inf(&self) -> f64 {
        let w = self.bandwidth;
        (0..self.n)
            .map(|i| {
                let lo = i.saturating_sub(w);
                let hi = (i + w).min(self.n - 1);
                (lo..=hi).map(|j| self.get(i, j).abs()).sum::<f64>()
            })
            .fold(0.0, f64::max)
    }

    pub fn matvec(&self, x: &[f64], y: &mut [f64]) {
        let w = self.bandwidth;
        for i in 0..self.n {
            let lo = i.saturating_sub(w);
            let hi = (i + w).min(self.n - 1);
            y[i] = (lo..=hi).map(|j| self.get(i, j) * x[j]).sum();
        }
    }

    // Similarity transform by a Givens rotation in the (p, p + 1) plane:
    // row_p <- c row_p + s row_q, row_q <- -s row_p + c row_q, and likewise
    // for the columns.
    fn rotate(&mut self, p: usize, c: f64, s: f64) {
        let q = p + 1;
        let w = self.bandwidth + 1;
        let lo = q.saturating_sub(w);
        let hi = (p + w).min(self.n - 1);
        for k in lo..=hi {
            if k == p || k == q {
                continue;
            }
            let apk = self.get(p, k);
            let aqk = self.get(q, k);
            self.set(p, k, c * apk + s * aqk);
            self.set(q, k, -s * apk + c * aqk);
        }
        let app = self.get(p, p);
        let aqq = self.get(q, q);
        let apq = self.get(p, q);
        let cs = c * s;
        self.set(p, p, c * c * app + 2.0 * cs * apq + s * s * aqq);
        self.set(q, q, s * s * app - 2.0 * cs * apq + c * c * aqq);
        self.set(p, q, cs * (aqq - app) + (c * c - s * s) * apq);
    }

    // Zero A[row][col] by rotating rows row - 1 and row.
    fn annihilate(&mut self, row: usize, col: usize) {
        let a = self.get(row - 1, col);
        let b = self.get(row, col);
        if b == 0.0 {
            return;
        }
        let r = libm::hypot(a, b);
        self.rotate(row - 1, a / r, b / r);
        self.set(row, col, 0.0);
    }

    /// Reduce to tridiagonal form by bulge chasing, discarding the
    /// transformation. Returns `(diagonal, subdiagonal)`.
    pub fn into_tridiagonal(mut self) -> (Vec<f64>, Vec<f64>) {
        let n = self.n;
        let mut b = self.bandwidth;
        while b > 1 {
            for j in 0..n {
                if j + b >= n {
                    break;
                }
                self.annihilate(j + b, j);
                // Chase the bulge at (row, col) = (j + 2b, j + b - 1).
                let mut col = j + b - 1;
                let mut row = j + 2 * b;
                while row < n {
                    self.annihilate(row, col);
                    col = row - 1;
                    row += b;
                }
            }
            b -= 1;
        }
        let diag = self.bands[0].clone();
        let off = if n > 1 { self.bands[1].clone() } else { Vec::new() };
        (diag, off)
    }
}

fn fold_order(n: usize) -> Vec<usize> {
    let mut order = Vec::with_capacity(n);
    let (mut lo, mut hi) = (0, n - 1);
    while lo <= hi {
        order.push(lo);
        if lo != hi {
            order.push(hi);
        }
        lo += 1;
        if hi == 0 {
            break;
        }
        hi -= 1;
    }
    order
}

/// LU factorisation with partial pivoting of `A - shift I` for a symmetric
/// band matrix `A`, kept in band form.
struct ShiftedBandLu {
    n: usize,
    p: usize,
    width: usize,
    // Row i stores columns [i - p, i + 2p].
    u: Vec<f64>,
    multipliers: Vec<f64>,
    pivots: Vec<usize>,
}

impl ShiftedBandLu {
    fn factor(a: &SymBand, shift: f64, pivot_floor: f64) -> Self {
        let n = a.dim();
        let p = a.bandwidth();
        let width = 3 * p + 1;
        let mut lu = ShiftedBandLu {
            n,
            p,
            width,
            u: vec![0.0; n * width],
            multipliers: vec![0.0; n * p],
            pivots: vec![0; n],
        };
        for i in 0..n {
            let lo = i.saturating_sub(p);
            let hi = (i + p).min(n - 1);
            for c in lo..=hi {
                let shifted = if c == i { a.get(i, c) - shift } else { a.get(i, c) };
                lu.set(i, c, shifted);
            }
        }
        for k in 0..n {
            let last = (k + p).min(n - 1);
            let right = (k + 2 * p).min(n - 1);
            let mut r = k;
            let mut best = lu.get(k, k).abs();
            for i in (k + 1)..=last {
                let v = lu.get(i, k).abs();
                if v > best {
                    best = v;
                    r = i;
                }
            }
            lu.pivots[k] = r;
            if r != k {
                for c in k..=right {
                    let tmp = lu.get(k, c);
                    lu.set(k, c, lu.get(r, c));
                    lu.set(r, c, tmp);
                }
            }
            let mut pivot = lu.get(k, k);
            if pivot.abs() < pivot_floor {
                pivot = if pivot < 0.0 { -pivot_floor } else { pivot_floor };
                lu.set(k, k, pivot);
            }
            for i in (k + 1)..=last {
                let m = lu.get(i, k) / pivot;
                lu.multipliers[k * p + (i - k - 1)] = m;
                lu.set(i, k, 0.0);
                if m != 0.0 {
                    for c in (k + 1)..=right {
                        let v = lu.get(i, c) - m * lu.get(k, c);
                        lu.set(i, c, v);
                    }
                }
            }
        }
        lu
    }

    fn idx(&self, i: usize, c: usize) -> usize {
        debug_assert!(c + self.p >= i && c + self.p - i < self.width);
        i * self.width + (c + self.p - i)
    }

    fn get(&self, i: usize, c: usize) -> f64 {
        self.u[self.idx(i, c)]
    }

    fn set(&mut self, i: usize, c: usize, v: f64) {
        let k = self.idx(i, c);
        self.u[k] = v;
    }

    fn solve_in_place(&self, b: &mut [f64]) {
        let (n, p) = (self.n, self.p);
        for k in 0..n {
            let r = self.pivots[k];
            if r != k {
                b.swap(k, r);
            }
            let last = (k + p).min(n - 1);
            for i in (k + 1)..=last {
                b[i] -= self.multipliers[k * p + (i - k - 1)] * b[k];
            }
        }
        for i in (0..n).rev() {
            let right = (i + 2 * p).min(n - 1);
            let mut s = b[i];
            for c in (i + 1)..=right {
                s -= self.get(i, c) * b[c];
            }
            b[i] = s / self.get(i, i);
        }
    }
}

const MAX_INVERSE_ITERATIONS: usize = 12;

// SplitMix64, used for reproducible starting vectors.
fn start_vector(seed: u64, n: usize) -> Vec<f64> {
    let mut state = seed
        .wrapping_mul(0x9E37_79B9_7F4A_7C15)
        .wrapping_add(0x6A09_E667_F3BC_C909);
    (0..n)
        .map(|_| {
            state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
            let mut z = state;
            z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
            z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
            z ^= z >> 31;
            (z >> 11) as f64 / (1u64 << 53) as f64 * 2.0 - 1.0
        })
        .collect()
}

fn norm2(x: &[f64]) -> f64 {
    libm::sqrt(x.iter().map(|v| v * v).sum::<f64>())
}

/// Eigenvectors of `a` for the given ascending eigenvalues by inverse
/// iteration. Vectors belonging to close eigenvalues are kept orthogonal by
/// Gram-Schmidt against the other members of their cluster.
pub fn inverse_iteration(a: &SymBand, eigenvalues: &[f64]) -> Result<Vec<Vec<f64>>> {
    let n = a.dim();
    let norm = a.norm_inf().max(f64::MIN_POSITIVE);
    let eps = f64::EPSILON;
    let cluster_gap = 1e-6 * norm;
    let pivot_floor = eps * norm;
    let target = 1e-11 * norm;

    let mut vectors: Vec<Vec<f64>> = Vec::with_capacity(eigenvalues.len());
    let mut cluster_start = 0;
    let mut previous_shift = f64::NEG_INFINITY;
    for (j, &lambda) in eigenvalues.iter().enumerate() {
        if j > 0 && lambda - eigenvalues[j - 1] > cluster_gap {
            cluster_start = j;
        }
        let mut shift = lambda;
        if j > cluster_start && shift <= previous_shift + 10.0 * eps * norm {
            shift = previous_shift + 10.0 * eps * norm;
        }
        previous_shift = shift;

        let lu = ShiftedBandLu::factor(a, shift, pivot_floor);
        let mut x = start_vector(j as u64 + 1, n);
        let nx = norm2(&x);
        x.iter_mut().for_each(|v| *v /= nx);

        let mut converged_at = None;
        for iter in 0..MAX_INVERSE_ITERATIONS {
            lu.solve_in_place(&mut x);
            for v in &vectors[cluster_start..j] {
                let dot: f64 = v.iter().zip(&x).map(|(a, b)| a * b).sum();
                x.iter_mut().zip(v).for_each(|(xi, vi)| *xi -= dot * vi);
            }
            let growth = norm2(&x);
            if !growth.is_finite() || growth == 0.0 {
                x = start_vector(j as u64 + 1000 + iter as u64, n);
                let nx = norm2(&x);
                x.iter_mut().for_each(|v| *v /= nx);
                continue;
            }
            x.iter_mut().for_each(|v| *v /= growth);
            match converged_at {
                Some(k) if iter > k => {
                    converged_at = Some(k);
                    break;
                }
                None if 1.0 / growth <= target => converged_at = Some(iter),
                _ => {}
            }
        }
        if converged_at.is_none() {
            return Err(Error::NonConvergence {
                iterations: MAX_INVERSE_ITERATIONS,
            });
        }
        // Sign convention: largest component positive.
        let (imax, _) = x.iter().enumerate().fold(
            (0, 0.0),
            |(bi, bv), (i, v)| if v.abs() > bv { (i, v.abs()) } else { (bi, bv) },
        );
        if x[imax] < 0.0 {
            x.iter_mut().for_each(|v| *v = -*v);
        }
        vectors.push(x);
    }
    Ok(vectors)
}
