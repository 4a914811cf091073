//! Restricted two-mode Hamiltonian, its Bose-Hubbard approximation, the
//! large-N oscillator Hamiltonian, and the product/coherent states that live
//! in these spaces.

use alloc::format;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{invalid, Error, Result};
use crate::hamiltonian::{eigensolve, HamiltonianMatrix};
use crate::params::CpbParams;
use crate::sq;
use crate::state::{Basis, StateVector};

/// Amplitude allowed at the last retained Fock level.
pub const TAIL_LIMIT: f64 = 1e-8;

/// Off-diagonal form used by [`build_two_mode_restricted`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum HoppingForm {
    /// Matrix element of `-K (a1 a2† + a1† a2)`: `-K sqrt((k+1)(N-k))`.
    #[default]
    Exact,
    /// `-K sqrt(k(N-k))` applied to both neighbours of `|k>`. That matrix is
    /// not symmetric; it is returned in the diagonally similar symmetric
    /// form `-K (k(N-k)(k+1)(N-k-1))^(1/4)`, which has the same spectrum.
    PaperLiteral,
}

/// `ceil(n̄ + 12 sqrt(n̄))`.
pub fn default_cutoff(n_bar: f64) -> usize {
    libm::ceil(n_bar + 12.0 * libm::sqrt(n_bar)) as usize
}

/// Smallest admissible Fock cutoff for mean occupation `n`, i.e. the
/// smallest integer strictly above `n + 10 sqrt(n)`.
pub fn min_cutoff(n: f64) -> usize {
    libm::floor(n + 10.0 * libm::sqrt(n)) as usize + 1
}

fn check_cutoff(cutoff: usize, n: f64) -> Result<()> {
    let required = min_cutoff(n);
    if cutoff < required {
        return Err(Error::CutoffTooSmall { cutoff, required });
    }
    Ok(())
}

/// Two-mode Hamiltonian on the `N + 1` states with `N` pairs in total.
///
/// `E_C`, `K` and `N` are taken from `params`; the reference occupation is
/// `(u2 - u1) / (4 E_C)` and may lie anywhere in `[0, N]`. Constant terms are
/// dropped.
pub fn build_two_mode_restricted(params: &CpbParams, u1: f64, u2: f64, form: HoppingForm) -> Result<HamiltonianMatrix> {
    let n = params.total_pairs();
    let e_c = params.e_c();
    let k_hop = params.tunneling();
    if !u1.is_finite() || !u2.is_finite() {
        return Err(Error::NonFinite("potentials"));
    }
    let n_bar = (u2 - u1) / (4.0 * e_c);
    let nf = n as f64;
    if !(0.0..=nf).contains(&n_bar) {
        return Err(invalid(
            "n_bar",
            format!("(u2 - u1) / 4 E_C = {n_bar} outside [0, {n}]"),
        ));
    }
    let diagonal = (0..=n).map(|k| e_c * sq(k as f64 - n_bar)).collect();
    let off_diagonal = (0..n)
        .map(|k| {
            let k = k as f64;
            match form {
                HoppingForm::Exact => -k_hop * libm::sqrt((k + 1.0) * (nf - k)),
                HoppingForm::PaperLiteral => -k_hop * libm::sqrt(libm::sqrt(k * (nf - k) * (k + 1.0) * (nf - k - 1.0))),
            }
        })
        .collect();
    HamiltonianMatrix::new(diagonal, off_diagonal, 0.0, Basis::Number { total: n })
}

/// `E_C (k - n̄₁)^2` on the diagonal, `-E_J` between neighbours and between
/// `|0>` and `|N>`.
pub fn build_bose_hubbard(params: &CpbParams) -> Result<HamiltonianMatrix> {
    let n = params.total_pairs();
    let (e_c, e_j, n_bar) = (params.e_c(), params.e_j(), params.n_bar());
    let diagonal = (0..=n).map(|k| e_c * sq(k as f64 - n_bar)).collect();
    let off_diagonal = alloc::vec![-e_j; n as usize];
    HamiltonianMatrix::new(diagonal, off_diagonal, -e_j, Basis::Number { total: n })
}

/// `E_C (b†b - n̄₁)^2 - (E_J / sqrt(n̄₁)) (b + b†)` on Fock levels
/// `0..=cutoff`.
///
/// The ground state is computed to check the truncation; an amplitude above
/// [`TAIL_LIMIT`] on the last level is an error.
pub fn build_oscillator_hamiltonian(params: &CpbParams, cutoff: usize) -> Result<HamiltonianMatrix> {
    let h = oscillator_matrix(params, cutoff)?;
    let ground = eigensolve(&h, 1)?;
    let tail = ground.vectors[0].amplitudes()[cutoff].norm();
    if tail > TAIL_LIMIT {
        return Err(Error::TruncationInsufficient {
            tail,
            limit: TAIL_LIMIT,
        });
    }
    Ok(h)
}

/// [`build_oscillator_hamiltonian`] without the ground-state tail check.
pub fn oscillator_matrix(params: &CpbParams, cutoff: usize) -> Result<HamiltonianMatrix> {
    let n_bar = params.n_bar();
    check_cutoff(cutoff, n_bar)?;
    let (e_c, e_j) = (params.e_c(), params.e_j());
    let hop = e_j / libm::sqrt(n_bar);
    let diagonal = (0..=cutoff).map(|k| e_c * sq(k as f64 - n_bar)).collect();
    let off_diagonal = (0..cutoff).map(|k| -hop * libm::sqrt(k as f64 + 1.0)).collect();
    HamiltonianMatrix::new(diagonal, off_diagonal, 0.0, Basis::Fock { cutoff })
}

/// Product state with `n1` of `N` pairs on average in mode 1 and phase
/// difference `theta`, written in the number basis:
/// `sqrt(C(N,k) p^k (1-p)^(N-k)) exp(-i k theta)` with `p = n1 / N`.
pub fn binomial_product_state(total_pairs: u64, n1: f64, theta: f64) -> Result<StateVector> {
    let nf = total_pairs as f64;
    if !(n1 > 0.0 && n1 < nf) {
        return Err(invalid("n1", format!("must lie in (0, {total_pairs}), got {n1}")));
    }
    if !theta.is_finite() {
        return Err(Error::NonFinite("theta"));
    }
    let (lp, lq) = (libm::log(n1 / nf), libm::log1p(-n1 / nf));
    let log_n_fact = libm::lgamma(nf + 1.0);
    let amps = (0..=total_pairs)
        .map(|k| {
            let k = k as f64;
            let log_p = log_n_fact - libm::lgamma(k + 1.0) - libm::lgamma(nf - k + 1.0) + k * lp + (nf - k) * lq;
            Complex64::from_polar(libm::exp(0.5 * log_p), -k * theta)
        })
        .collect();
    StateVector::new(amps, Basis::Number { total: total_pairs })?.normalized()
}

/// Coherent vector `|sqrt(n1) e^{-i theta}>` truncated to levels
/// `0..=cutoff` and renormalised.
pub fn coherent_vector(n1: f64, theta: f64, cutoff: usize) -> Result<StateVector> {
    if !(n1 > 0.0) || !n1.is_finite() {
        return Err(invalid("n1", format!("must be finite and > 0, got {n1}")));
    }
    if !theta.is_finite() {
        return Err(Error::NonFinite("theta"));
    }
    check_cutoff(cutoff, n1)?;
    let log_n = libm::log(n1);
    let amps: Vec<Complex64> = (0..=cutoff)
        .map(|k| {
            let k = k as f64;
            let log_a = 0.5 * k * log_n - 0.5 * libm::lgamma(k + 1.0) - 0.5 * n1;
            Complex64::from_polar(libm::exp(log_a), -k * theta)
        })
        .collect();
    let v = StateVector::new(amps, Basis::Fock { cutoff })?.normalized()?;
    let tail = v.amplitudes()[cutoff].norm();
    if tail > TAIL_LIMIT {
        return Err(Error::TruncationInsufficient {
            tail,
            limit: TAIL_LIMIT,
        });
    }
    Ok(v)
}

/// `<a|b>`; both vectors must carry the same basis.
pub fn overlap(a: &StateVector, b: &StateVector) -> Result<Complex64> {
    a.overlap(b)
}

/// Overlap between the product state and the coherent vector with the same
/// `n1` and `theta`, identifying `|k>` of the number basis with the Fock
/// level `k`.
pub fn binomial_coherent_overlap(total_pairs: u64, n1: f64, theta: f64) -> Result<Complex64> {
    let coherent = coherent_vector(n1, theta, default_cutoff(n1))?;
    let binomial = binomial_product_state(total_pairs, n1, theta)?;
    let cutoff = coherent.dim() - 1;
    binomial.to_fock(cutoff).overlap(&coherent)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hamiltonian::eigensolve;

    fn params(e_c: f64, e_j: f64, n: u64, n_bar: f64) -> CpbParams {
        CpbParams::from_josephson(e_c, e_j, n, n_bar).unwrap()
    }

    #[test]
    fn two_mode_matrix_elements() {
        let p = CpbParams::from_tunneling(1.0, 1.0, 2, 1.0).unwrap();
        let h = build_two_mode_restricted(&p, 0.0, 0.0, HoppingForm::Exact).unwrap();
        assert_eq!(h.diagonal(), &[0.0, 1.0, 4.0]);
        let r2 = libm::sqrt(2.0);
        assert!(h.off_diagonal().iter().all(|e| (e + r2).abs() < 1e-15));
        assert_eq!(h.corner(), 0.0);
    }

    #[test]
    fn two_mode_without_hopping_is_diagonal() {
        let p = CpbParams::from_tunneling(0.7, 0.0, 9, 3.0).unwrap();
        let h = build_two_mode_restricted(&p, 1.0, 1.0 + 4.0 * 0.7 * 3.3, HoppingForm::Exact).unwrap();
        let s = eigensolve(&h, 10).unwrap();
        let mut expected: Vec<f64> = (0..10).map(|k| 0.7 * sq(k as f64 - 3.3)).collect();
        expected.sort_by(f64::total_cmp);
        for (a, b) in s.values.iter().zip(&expected) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn two_mode_rejects_out_of_range_reference() {
        let p = CpbParams::from_tunneling(1.0, 1.0, 4, 2.0).unwrap();
        assert!(build_two_mode_restricted(&p, 0.0, 17.0, HoppingForm::Exact).is_err());
        assert!(build_two_mode_restricted(&p, 1.0, 0.0, HoppingForm::Exact).is_err());
    }

    #[test]
    fn bose_hubbard_without_coupling() {
        let p = params(1.0, 0.0, 6, 2.5);
        let h = build_bose_hubbard(&p).unwrap();
        let s = eigensolve(&h, 7).unwrap();
        let mut expected: Vec<f64> = (0..7).map(|k| sq(k as f64 - 2.5)).collect();
        expected.sort_by(f64::total_cmp);
        for (a, b) in s.values.iter().zip(&expected) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn bose_hubbard_is_periodic() {
        let h = build_bose_hubbard(&params(1.0, 1.0, 4, 2.0)).unwrap();
        assert_eq!(h.corner(), -1.0);
        assert_eq!(h.get(0, 4), -1.0);
        assert!(h.off_diagonal().iter().all(|&e| e == -1.0));
    }

    #[test]
    fn oscillator_rejects_small_cutoff() {
        let p = params(1.0, 2.0, 1000, 100.0);
        assert!(matches!(
            oscillator_matrix(&p, 150),
            Err(Error::CutoffTooSmall { required: 201, .. })
        ));
        assert!(build_oscillator_hamiltonian(&p, 201).is_ok());
    }

    #[test]
    fn oscillator_without_coupling() {
        let p = params(1.0, 0.0, 1000, 4.0);
        let h = build_oscillator_hamiltonian(&p, 60).unwrap();
        assert!(h.off_diagonal().iter().all(|&e| e == 0.0));
        assert_eq!(h.diagonal()[4], 0.0);
    }

    #[test]
    fn binomial_small_case() {
        let v = binomial_product_state(2, 1.0, 0.0).unwrap();
        let expected = [0.5, libm::sqrt(0.5), 0.5];
        for (a, b) in v.amplitudes().iter().zip(expected) {
            assert!((a - b).norm() < 1e-15);
        }
    }

    #[test]
    fn binomial_concentrates_at_zero() {
        let v = binomial_product_state(50, 1e-9, 0.4).unwrap();
        assert!(v.amplitudes()[0].norm() > 1.0 - 1e-6);
        assert!((v.norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn coherent_vacuum_limit() {
        let v = coherent_vector(1e-12, 0.0, 3).unwrap();
        assert!((v.amplitudes()[0] - 1.0).norm() < 1e-12);
    }

    #[test]
    fn coherent_moments() {
        let v = coherent_vector(4.0, 0.0, 40).unwrap();
        let m = v.number_moments();
        assert!((m.mean - 4.0).abs() < 1e-8);
        assert!((m.variance - 4.0).abs() < 1e-6);
        let w = coherent_vector(4.0, core::f64::consts::FRAC_PI_2, 40).unwrap();
        assert!((w.annihilation_expectation() - Complex64::new(0.0, -2.0)).norm() < 1e-8);
    }

    #[test]
    fn coherent_is_annihilation_eigenvector() {
        let theta = 0.7;
        let v = coherent_vector(9.0, theta, 60).unwrap();
        let alpha = Complex64::from_polar(3.0, -theta);
        let bv = v.annihilate();
        let r: f64 = bv
            .iter()
            .zip(v.amplitudes())
            .map(|(a, b)| (a - alpha * b).norm_sqr())
            .sum::<f64>()
            .sqrt();
        assert!(r < 1e-6, "residual {r}");
    }

    #[test]
    fn coherent_tail_check() {
        assert!(matches!(
            coherent_vector(100.0, 0.0, 150),
            Err(Error::CutoffTooSmall { .. })
        ));
    }
}
