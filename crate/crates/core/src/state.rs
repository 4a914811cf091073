//! State vectors over a finite ordered basis.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{invalid, Error, Result};
use crate::sq;

/// Label of the basis a vector or matrix is written in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Basis {
    /// Number basis `|k>`, `k = 0..=total`, of the restricted two-mode space.
    Number { total: u64 },
    /// Truncated Fock basis `|k>`, `k = 0..=cutoff`.
    Fock { cutoff: usize },
    /// Charge basis `|m>`, `m = -cutoff..=cutoff`.
    Charge { cutoff: usize },
    /// Unlabelled basis of a given dimension.
    Plain { dim: usize },
}

impl Basis {
    pub fn dim(&self) -> usize {
        match *self {
            Basis::Number { total } => total as usize + 1,
            Basis::Fock { cutoff } => cutoff + 1,
            Basis::Charge { cutoff } => 2 * cutoff + 1,
            Basis::Plain { dim } => dim,
        }
    }

    /// Occupation label of index `k` (charge `m` for the charge basis).
    pub fn label(&self, k: usize) -> f64 {
        match *self {
            Basis::Charge { cutoff } => k as f64 - cutoff as f64,
            _ => k as f64,
        }
    }
}

/// Mean and variance of the basis label.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NumberMoments {
    pub mean: f64,
    pub variance: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    amplitudes: Vec<Complex64>,
    basis: Basis,
}

impl StateVector {
    pub fn new(amplitudes: Vec<Complex64>, basis: Basis) -> Result<Self> {
        if amplitudes.len() != basis.dim() {
            return Err(Error::DimensionMismatch {
                expected: basis.dim(),
                found: amplitudes.len(),
            });
        }
        if amplitudes.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite("state amplitudes"));
        }
        Ok(StateVector { amplitudes, basis })
    }

    pub fn from_real(values: &[f64], basis: Basis) -> Result<Self> {
        Self::new(values.iter().map(|&x| Complex64::new(x, 0.0)).collect(), basis)
    }

    /// Basis vector `|k>`.
    pub fn basis_state(k: usize, basis: Basis) -> Result<Self> {
        let dim = basis.dim();
        if k >= dim {
            return Err(invalid(
                "k",
                alloc::format!("index {k} outside basis of dimension {dim}"),
            ));
        }
        let mut amps = alloc::vec![Complex64::new(0.0, 0.0); dim];
        amps[k] = Complex64::new(1.0, 0.0);
        Ok(StateVector {
            amplitudes: amps,
            basis,
        })
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.amplitudes
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn norm(&self) -> f64 {
        libm::sqrt(self.amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>())
    }

    pub fn normalized(mut self) -> Result<Self> {
        let n = self.norm();
        if n == 0.0 {
            return Err(invalid("state", "cannot normalise the zero vector"));
        }
        self.amplitudes.iter_mut().for_each(|z| *z /= n);
        Ok(self)
    }

    /// `<self|other>`.
    pub fn overlap(&self, other: &StateVector) -> Result<Complex64> {
        if self.basis != other.basis {
            return Err(Error::BasisMismatch {
                left: self.basis,
                right: other.basis,
            });
        }
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.amplitudes.iter().map(|z| z.norm_sqr()).collect()
    }

    /// Moments of the basis label, using `|a_k|^2` as weights normalised by
    /// the squared norm.
    pub fn number_moments(&self) -> NumberMoments {
        let mut w = 0.0;
        let mut m1 = 0.0;
        for (k, z) in self.amplitudes.iter().enumerate() {
            let p = z.norm_sqr();
            w += p;
            m1 += p * self.basis.label(k);
        }
        let mean = m1 / w;
        let variance = self
            .amplitudes
            .iter()
            .enumerate()
            .map(|(k, z)| z.norm_sqr() * sq(self.basis.label(k) - mean))
            .sum::<f64>()
            / w;
        NumberMoments { mean, variance }
    }

    /// `<b>` for the truncated annihilation operator, `b|k> = sqrt(k)|k-1>`.
    pub fn annihilation_expectation(&self) -> Complex64 {
        let a = &self.amplitudes;
        (1..a.len())
            .map(|k| a[k - 1].conj() * a[k] * libm::sqrt(k as f64))
            .sum()
    }

    /// `b|self>` on the truncated space.
    pub fn annihilate(&self) -> Vec<Complex64> {
        let a = &self.amplitudes;
        let mut out = alloc::vec![Complex64::new(0.0, 0.0); a.len()];
        for k in 1..a.len() {
            out[k - 1] = a[k] * libm::sqrt(k as f64);
        }
        out
    }

    /// Reinterpret the amplitudes as a Fock-basis vector, padding with zeros
    /// or dropping the tail beyond `cutoff`.
    pub fn to_fock(&self, cutoff: usize) -> StateVector {
        let mut amps = alloc::vec![Complex64::new(0.0, 0.0); cutoff + 1];
        for (dst, src) in amps.iter_mut().zip(&self.amplitudes) {
            *dst = *src;
        }
        StateVector {
            amplitudes: amps,
            basis: Basis::Fock { cutoff },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overlap_with_self_is_one() {
        let v = StateVector::from_real(&[0.6, 0.8, 0.0], Basis::Fock { cutoff: 2 }).unwrap();
        assert!((v.overlap(&v).unwrap() - 1.0).norm() < 1e-15);
    }

    #[test]
    fn basis_vectors_are_orthogonal() {
        let b = Basis::Number { total: 4 };
        let e1 = StateVector::basis_state(1, b).unwrap();
        let e3 = StateVector::basis_state(3, b).unwrap();
        assert_eq!(e1.overlap(&e3).unwrap(), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn overlap_rejects_basis_mismatch() {
        let a = StateVector::basis_state(0, Basis::Fock { cutoff: 2 }).unwrap();
        let b = StateVector::basis_state(0, Basis::Number { total: 2 }).unwrap();
        assert!(matches!(a.overlap(&b), Err(Error::BasisMismatch { .. })));
    }

    #[test]
    fn charge_labels_are_centred() {
        let b = Basis::Charge { cutoff: 3 };
        assert_eq!(b.dim(), 7);
        assert_eq!(b.label(0), -3.0);
        assert_eq!(b.label(6), 3.0);
    }

    #[test]
    fn moments_of_fock_state() {
        let v = StateVector::basis_state(5, Basis::Fock { cutoff: 9 }).unwrap();
        let m = v.number_moments();
        assert_eq!(m.mean, 5.0);
        assert_eq!(m.variance, 0.0);
    }
}
