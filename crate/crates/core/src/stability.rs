//! Dissipative dynamics of the oscillator model: Lindblad dissipator,
//! master-equation evolution, fidelity decay rates and Gibbs statistics.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{invalid, Error, Result};
use crate::hamiltonian::HamiltonianMatrix;
use crate::linalg::CMatrix;
use crate::sq;
use crate::state::{Basis, StateVector};

/// Population of the two highest Fock levels above which a warning is
/// raised.
pub const LEAKAGE_WARN: f64 = 1e-8;
/// Population of the two highest Fock levels above which evolution stops.
pub const LEAKAGE_ABORT: f64 = 1e-6;
/// Most negative eigenvalue tolerated during evolution.
pub const POSITIVITY_ABORT: f64 = -1e-6;

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };

/// Rates of loss (`γ`) and gain (`δ`) of condensate particles.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LindbladParams {
    gamma: f64,
    delta: f64,
}

impl LindbladParams {
    pub fn new(gamma: f64, delta: f64) -> Result<Self> {
        for (name, v) in [("gamma", gamma), ("delta", delta)] {
            if !(v >= 0.0) || !v.is_finite() {
                return Err(invalid(name, format!("must be finite and >= 0, got {v}")));
            }
        }
        Ok(LindbladParams { gamma, delta })
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }
}

/// Density matrix on Fock levels `0..=cutoff`.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    cutoff: usize,
    matrix: CMatrix,
}

impl DensityMatrix {
    /// Wrap `matrix` without checks.
    pub fn from_matrix(matrix: CMatrix) -> Self {
        DensityMatrix {
            cutoff: matrix.dim() - 1,
            matrix,
        }
    }

    /// `|φ><φ|` for a normalised Fock-basis vector.
    pub fn pure(phi: &StateVector) -> Result<Self> {
        let Basis::Fock { cutoff } = phi.basis() else {
            return Err(Error::BasisMismatch {
                left: phi.basis(),
                right: Basis::Fock { cutoff: phi.dim() - 1 },
            });
        };
        let a = phi.amplitudes();
        let n = a.len();
        let mut m = CMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = a[i] * a[j].conj();
            }
        }
        Ok(DensityMatrix { cutoff, matrix: m })
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn dim(&self) -> usize {
        self.cutoff + 1
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn trace(&self) -> f64 {
        self.matrix.trace().re
    }

    /// `Tr ρ²`.
    pub fn purity(&self) -> f64 {
        self.matrix.as_slice().iter().map(|z| z.norm_sqr()).sum()
    }

    /// `Tr(b†b ρ)`.
    pub fn mean_number(&self) -> f64 {
        (0..self.dim()).map(|k| k as f64 * self.matrix[(k, k)].re).sum()
    }

    /// `<φ|ρ|φ>`.
    pub fn fidelity(&self, phi: &StateVector) -> Result<f64> {
        if phi.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: phi.dim(),
            });
        }
        Ok(self.matrix.expectation(phi.amplitudes()).re)
    }

    /// Population of the two highest levels.
    pub fn top_population(&self) -> f64 {
        let n = self.dim();
        (n.saturating_sub(2)..n).map(|k| self.matrix[(k, k)].re).sum()
    }

    pub fn min_eigenvalue(&self) -> Result<f64> {
        self.matrix.min_eigenvalue()
    }

    /// Check Hermiticity (`1e-10`), unit trace (`1e-10`) and positivity
    /// (`-1e-8`).
    pub fn validate(&self) -> Result<()> {
        let herm = self.matrix.hermiticity_error();
        if herm > 1e-10 {
            return Err(Error::Precondition(format!(
                "density matrix not Hermitian: deviation {herm:e}"
            )));
        }
        let tr = self.trace();
        if (tr - 1.0).abs() > 1e-10 {
            return Err(Error::Precondition(format!("density matrix trace {tr} differs from 1")));
        }
        let min = self.min_eigenvalue()?;
        if min < -1e-8 {
            return Err(Error::Precondition(format!("density matrix has eigenvalue {min:e}")));
        }
        Ok(())
    }
}

/// Output of [`dissipator`].
#[derive(Debug, Clone, PartialEq)]
pub struct Dissipation {
    pub derivative: CMatrix,
    /// Population of the two highest levels of the input.
    pub leakage: f64,
    pub leakage_warning: bool,
}

/// `(γ/2)([bρ, b†] + [b, ρb†]) + (δ/2)([b†ρ, b] + [b†, ρb])` with the
/// truncated `b`, for which the trace of the result vanishes exactly.
pub fn dissipator(rho: &DensityMatrix, l: &LindbladParams) -> Dissipation {
    let n = rho.dim();
    let mut out = CMatrix::zeros(n);
    dissipator_into(rho.matrix.as_slice(), n, l, out.as_mut_slice());
    let leakage = rho.top_population();
    Dissipation {
        derivative: out,
        leakage,
        leakage_warning: leakage > LEAKAGE_WARN,
    }
}

// Elementwise form: with m_j = j + 1 below the cutoff and 0 at it,
// L_ij = γ(sqrt((i+1)(j+1)) ρ_{i+1,j+1} - (i+j)/2 ρ_ij)
//      + δ(sqrt(ij) ρ_{i-1,j-1} - (m_i+m_j)/2 ρ_ij).
fn dissipator_into(rho: &[Complex64], n: usize, l: &LindbladParams, out: &mut [Complex64]) {
    let (g, d) = (l.gamma, l.delta);
    let sq: Vec<f64> = (0..=n).map(|k| libm::sqrt(k as f64)).collect();
    let m = |j: usize| if j + 1 < n { (j + 1) as f64 } else { 0.0 };
    for i in 0..n {
        for j in 0..n {
            let r = rho[i * n + j];
            let mut v = r * (-0.5 * (g * (i + j) as f64 + d * (m(i) + m(j))));
            if i + 1 < n && j + 1 < n {
                v += rho[(i + 1) * n + j + 1] * (g * sq[i + 1] * sq[j + 1]);
            }
            if i > 0 && j > 0 {
                v += rho[(i - 1) * n + j - 1] * (d * sq[i] * sq[j]);
            }
            out[i * n + j] = v;
        }
    }
}

// -i[H, ρ] for a tridiagonal (possibly cornered) H.
fn commutator_into(h: &HamiltonianMatrix, rho: &[Complex64], n: usize, out: &mut [Complex64]) {
    let d = h.diagonal();
    let e = h.off_diagonal();
    let c = h.corner();
    let hrow = |i: usize, k: usize| -> Complex64 {
        // (Hρ)_ik
        let mut s = rho[i * n + k] * d[i];
        if i > 0 {
            s += rho[(i - 1) * n + k] * e[i - 1];
        }
        if i + 1 < n {
            s += rho[(i + 1) * n + k] * e[i];
        }
        if c != 0.0 {
            if i == 0 {
                s += rho[(n - 1) * n + k] * c;
            } else if i == n - 1 {
                s += rho[k] * c;
            }
        }
        s
    };
    let hcol = |i: usize, k: usize| -> Complex64 {
        // (ρH)_ik
        let mut s = rho[i * n + k] * d[k];
        if k > 0 {
            s += rho[i * n + k - 1] * e[k - 1];
        }
        if k + 1 < n {
            s += rho[i * n + k + 1] * e[k];
        }
        if c != 0.0 {
            if k == 0 {
                s += rho[i * n + n - 1] * c;
            } else if k == n - 1 {
                s += rho[i * n] * c;
            }
        }
        s
    };
    let minus_i = Complex64::new(0.0, -1.0);
    for i in 0..n {
        for k in 0..n {
            out[i * n + k] += minus_i * (hrow(i, k) - hcol(i, k));
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MasterOptions {
    /// Keep every `record_every`-th step (the initial state is always kept).
    pub record_every: usize,
}

impl Default for MasterOptions {
    fn default() -> Self {
        MasterOptions { record_every: 1 }
    }
}

#[derive(Debug, Clone, Default)]
pub struct MasterTrajectory {
    pub t: Vec<f64>,
    pub states: Vec<DensityMatrix>,
    /// Output times at which the top-level population exceeded
    /// [`LEAKAGE_WARN`].
    pub leakage_warnings: Vec<f64>,
}

/// Integrate `dρ/dt = -i[H, ρ] + L(ρ)` with classical RK4, symmetrising
/// `ρ ← (ρ + ρ†)/2` after every step. Positivity and leakage are checked at
/// every recorded time.
pub fn evolve_master(
    rho0: &DensityMatrix,
    h: Option<&HamiltonianMatrix>,
    l: &LindbladParams,
    t_end: f64,
    dt: f64,
    options: MasterOptions,
) -> Result<MasterTrajectory> {
    let n = rho0.dim();
    if let Some(h) = h {
        if h.dim() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: h.dim(),
            });
        }
        if let Basis::Fock { cutoff } = h.basis() {
            if cutoff != rho0.cutoff {
                return Err(Error::BasisMismatch {
                    left: h.basis(),
                    right: Basis::Fock { cutoff: rho0.cutoff },
                });
            }
        }
    }
    if !(dt > 0.0) || !dt.is_finite() {
        return Err(invalid("dt", format!("must be finite and > 0, got {dt}")));
    }
    if !(t_end >= 0.0) || !t_end.is_finite() {
        return Err(invalid("t_end", format!("must be finite and >= 0, got {t_end}")));
    }
    let steps = libm::round(t_end / dt) as usize;
    let every = options.record_every.max(1);

    let rhs = |rho: &[Complex64], out: &mut [Complex64]| {
        dissipator_into(rho, n, l, out);
        if let Some(h) = h {
            commutator_into(h, rho, n, out);
        }
    };

    let mut traj = MasterTrajectory::default();
    let mut rho = rho0.matrix.clone();
    check_output(&mut traj, 0.0, &rho)?;
    let size = n * n;
    let (mut k1, mut k2, mut k3, mut k4) = (vec![ZERO; size], vec![ZERO; size], vec![ZERO; size], vec![ZERO; size]);
    let mut tmp = vec![ZERO; size];
    for step in 0..steps {
        let r = rho.as_slice();
        rhs(r, &mut k1);
        for i in 0..size {
            tmp[i] = r[i] + k1[i] * (0.5 * dt);
        }
        rhs(&tmp, &mut k2);
        for i in 0..size {
            tmp[i] = r[i] + k2[i] * (0.5 * dt);
        }
        rhs(&tmp, &mut k3);
        for i in 0..size {
            tmp[i] = r[i] + k3[i] * dt;
        }
        rhs(&tmp, &mut k4);
        let w = rho.as_mut_slice();
        for i in 0..size {
            w[i] += (k1[i] + (k2[i] + k3[i]) * 2.0 + k4[i]) * (dt / 6.0);
        }
        rho = rho.hermitian_part();
        if (step + 1) % every == 0 || step + 1 == steps {
            check_output(&mut traj, (step + 1) as f64 * dt, &rho)?;
        }
    }
    Ok(traj)
}

fn check_output(traj: &mut MasterTrajectory, t: f64, rho: &CMatrix) -> Result<()> {
    let state = DensityMatrix::from_matrix(rho.clone());
    if state
        .matrix
        .as_slice()
        .iter()
        .any(|z| !z.re.is_finite() || !z.im.is_finite())
    {
        return Err(Error::NonFinite("density matrix"));
    }
    let leaked = state.top_population();
    if leaked > LEAKAGE_ABORT {
        return Err(Error::TruncationLeakage { t, leaked });
    }
    if leaked > LEAKAGE_WARN {
        traj.leakage_warnings.push(t);
    }
    let min = state.min_eigenvalue()?;
    if min < POSITIVITY_ABORT {
        return Err(Error::PositivityViolation { t, min_eigenvalue: min });
    }
    traj.t.push(t);
    traj.states.push(state);
    Ok(())
}

/// `Γ(φ) = (γ + δ)(<b†b> - |<b>|²) + δ`, the initial decay rate of
/// `<φ|ρ(t)|φ>` under the dissipator alone.
pub fn fidelity_decay_rate(phi: &StateVector, l: &LindbladParams) -> f64 {
    let mean_n: f64 = phi.probabilities().iter().enumerate().map(|(k, p)| k as f64 * p).sum();
    let b = phi.annihilation_expectation();
    (l.gamma + l.delta) * (mean_n - b.norm_sqr()) + l.delta
}

/// `Γ(|k = n̄₁>) / Γ(coherent) = ((γ + δ) n̄₁ + δ) / δ`. Infinite when
/// `δ = 0` and the Fock rate is positive; `1` when both rates vanish.
pub fn lifetime_ratio(n_bar: f64, l: &LindbladParams) -> Result<f64> {
    if !(n_bar >= 0.0) || !n_bar.is_finite() {
        return Err(invalid("n_bar", format!("must be finite and >= 0, got {n_bar}")));
    }
    let fock = (l.gamma + l.delta) * n_bar + l.delta;
    Ok(if l.delta > 0.0 {
        fock / l.delta
    } else if fock > 0.0 {
        f64::INFINITY
    } else {
        1.0
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GibbsStats {
    pub mean: f64,
    pub variance: f64,
    /// Relative weight of the last retained level.
    pub tail_weight: f64,
    pub truncation_warning: bool,
}

/// Number statistics of `ρ ∝ exp(-(E_C/kT)(n - n̄₁)²)` by direct summation
/// over `n = 0..=cutoff`.
pub fn gibbs_number_stats(e_c: f64, n_bar: f64, kt: f64, cutoff: usize) -> Result<GibbsStats> {
    if !(e_c > 0.0) || !e_c.is_finite() {
        return Err(invalid("e_c", format!("must be finite and > 0, got {e_c}")));
    }
    if !(kt > 0.0) || !kt.is_finite() {
        return Err(invalid("kt", format!("must be finite and > 0, got {kt}")));
    }
    if !(n_bar >= 0.0) || !n_bar.is_finite() {
        return Err(invalid("n_bar", format!("must be finite and >= 0, got {n_bar}")));
    }
    let required = libm::floor(n_bar + 10.0 * libm::sqrt(kt / e_c).max(1.0)) as usize + 1;
    if cutoff < required {
        return Err(Error::CutoffTooSmall { cutoff, required });
    }
    let beta = e_c / kt;
    let exponent = |k: usize| -beta * sq(k as f64 - n_bar);
    let shift = (0..=cutoff).map(exponent).fold(f64::NEG_INFINITY, f64::max);
    let weights: Vec<f64> = (0..=cutoff).map(|k| libm::exp(exponent(k) - shift)).collect();
    let z: f64 = weights.iter().sum();
    let mean = weights.iter().enumerate().map(|(k, w)| k as f64 * w).sum::<f64>() / z;
    let variance = weights
        .iter()
        .enumerate()
        .map(|(k, w)| sq(k as f64 - mean) * w)
        .sum::<f64>()
        / z;
    let tail_weight = weights[cutoff] / z;
    Ok(GibbsStats {
        mean,
        variance,
        tail_weight,
        truncation_warning: tail_weight > LEAKAGE_WARN,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fock(k: usize, cutoff: usize) -> StateVector {
        StateVector::basis_state(k, Basis::Fock { cutoff }).unwrap()
    }

    #[test]
    fn vacuum_is_dark_for_loss() {
        let rho = DensityMatrix::pure(&fock(0, 5)).unwrap();
        let d = dissipator(&rho, &LindbladParams::new(1.3, 0.0).unwrap());
        assert_eq!(d.derivative.max_abs(), 0.0);
    }

    #[test]
    fn single_excitation_decays_to_vacuum() {
        let rho = DensityMatrix::pure(&fock(1, 5)).unwrap();
        let d = dissipator(&rho, &LindbladParams::new(0.7, 0.0).unwrap()).derivative;
        let mut expected = CMatrix::zeros(6);
        expected[(0, 0)] = Complex64::new(0.7, 0.0);
        expected[(1, 1)] = Complex64::new(-0.7, 0.0);
        assert!((&d - &expected).max_abs() < 1e-15);
    }

    #[test]
    fn fock_rates() {
        let l = LindbladParams::new(0.3, 0.2).unwrap();
        for k in 0..6 {
            let r = fidelity_decay_rate(&fock(k, 10), &l);
            assert!((r - (0.5 * k as f64 + 0.2)).abs() < 1e-12);
        }
    }

    #[test]
    fn lifetime_ratio_cases() {
        let l = LindbladParams::new(1.0, 1.0).unwrap();
        assert_eq!(lifetime_ratio(0.0, &l).unwrap(), 1.0);
        let pure_gain = LindbladParams::new(0.0, 0.5).unwrap();
        assert!((lifetime_ratio(40.0, &pure_gain).unwrap() - 41.0).abs() < 1e-12);
        let pure_loss = LindbladParams::new(1.0, 0.0).unwrap();
        assert_eq!(lifetime_ratio(3.0, &pure_loss).unwrap(), f64::INFINITY);
        assert!(LindbladParams::new(-1.0, 0.0).is_err());
    }

    #[test]
    fn unitary_evolution_keeps_purity() {
        let h = HamiltonianMatrix::new(
            (0..25).map(|k| sq(k as f64 - 3.0)).collect(),
            (0..24).map(|k| -0.5 * libm::sqrt(k as f64 + 1.0)).collect(),
            0.0,
            Basis::Fock { cutoff: 24 },
        )
        .unwrap();
        let mut amps = vec![Complex64::new(0.0, 0.0); 25];
        amps[2] = Complex64::new(0.6, 0.0);
        amps[3] = Complex64::new(0.0, 0.8);
        let phi = StateVector::new(amps, Basis::Fock { cutoff: 24 }).unwrap();
        let rho = DensityMatrix::pure(&phi).unwrap();
        let l = LindbladParams::new(0.0, 0.0).unwrap();
        let tr = evolve_master(&rho, Some(&h), &l, 1.0, 1e-3, MasterOptions { record_every: 100 }).unwrap();
        for s in &tr.states {
            assert!((s.purity() - 1.0).abs() < 1e-9);
            assert!((s.trace() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn gibbs_low_temperature() {
        let s = gibbs_number_stats(1.0, 20.0, 0.01, 40).unwrap();
        assert!((s.mean - 20.0).abs() < 1e-12);
        assert!(s.variance < 1e-40);
        let half = gibbs_number_stats(1.0, 20.5, 0.01, 40).unwrap();
        assert!((half.variance - 0.25).abs() < 1e-12);
    }
}
