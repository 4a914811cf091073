//! Phase-model Hamiltonian `-E_C (d/dθ - i a)^2 - E_J cos θ` in the charge
//! basis `m = -M..=M`.

use alloc::format;
use alloc::vec::Vec;

use crate::error::{invalid, Error, Result};
use crate::hamiltonian::{eigensolve, HamiltonianMatrix};
use crate::params::CpbParams;
use crate::sq;
use crate::state::Basis;

/// How the cosine potential is normalised in the charge basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Convention {
    /// Off-diagonal `-E_J`, the same hopping as the Bose-Hubbard matrix.
    #[default]
    HoppingMatch,
    /// Off-diagonal `-E_J / 2`, the literal `-E_J cos θ`.
    Literal,
}

impl Convention {
    pub fn hopping(&self, e_j: f64) -> f64 {
        match self {
            Convention::HoppingMatch => -e_j,
            Convention::Literal => -0.5 * e_j,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseModelParams {
    e_c: f64,
    e_j: f64,
    offset: f64,
    cutoff: usize,
}

impl PhaseModelParams {
    /// `offset` is reduced to its fractional part.
    pub fn new(e_c: f64, e_j: f64, offset: f64, cutoff: usize) -> Result<Self> {
        if !(e_c > 0.0) || !e_c.is_finite() {
            return Err(invalid("e_c", format!("must be finite and > 0, got {e_c}")));
        }
        if !(e_j >= 0.0) || !e_j.is_finite() {
            return Err(invalid("e_j", format!("must be finite and >= 0, got {e_j}")));
        }
        if !offset.is_finite() {
            return Err(Error::NonFinite("offset"));
        }
        if cutoff == 0 {
            return Err(invalid("cutoff", "must be positive"));
        }
        Ok(PhaseModelParams {
            e_c,
            e_j,
            offset: fractional(offset),
            cutoff,
        })
    }

    /// Offset taken from the fractional part of `n̄₁`.
    pub fn from_cpb(params: &CpbParams, cutoff: usize) -> Result<Self> {
        Self::new(params.e_c(), params.e_j(), params.offset(), cutoff)
    }

    pub fn e_c(&self) -> f64 {
        self.e_c
    }

    pub fn e_j(&self) -> f64 {
        self.e_j
    }

    pub fn offset(&self) -> f64 {
        self.offset
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    /// Smallest cutoff accepted by [`build_phase_operator`].
    pub fn required_cutoff(&self) -> usize {
        libm::ceil(4.0 * libm::sqrt(self.e_j / self.e_c) + 10.0) as usize
    }

    pub fn with_offset(&self, offset: f64) -> Result<Self> {
        Self::new(self.e_c, self.e_j, offset, self.cutoff)
    }

    pub fn with_cutoff(&self, cutoff: usize) -> Result<Self> {
        Self::new(self.e_c, self.e_j, self.offset, cutoff)
    }
}

fn fractional(x: f64) -> f64 {
    let f = x - libm::floor(x);
    if f >= 1.0 {
        0.0
    } else {
        f
    }
}

pub fn build_phase_operator(p: &PhaseModelParams, convention: Convention) -> Result<HamiltonianMatrix> {
    let required = p.required_cutoff();
    if p.cutoff < required {
        return Err(Error::CutoffTooSmall {
            cutoff: p.cutoff,
            required,
        });
    }
    let m_max = p.cutoff as i64;
    let diagonal = (-m_max..=m_max).map(|m| p.e_c * sq(m as f64 - p.offset)).collect();
    let off_diagonal = alloc::vec![convention.hopping(p.e_j); 2 * p.cutoff];
    HamiltonianMatrix::new(diagonal, off_diagonal, 0.0, Basis::Charge { cutoff: p.cutoff })
}

/// Lowest levels at one offset.
#[derive(Debug, Clone, PartialEq)]
pub struct BandPoint {
    pub offset: f64,
    pub values: Vec<f64>,
}

/// The `count` lowest levels for every offset in `offsets` (reduced to their
/// fractional parts).
pub fn band_sweep(
    p: &PhaseModelParams,
    convention: Convention,
    offsets: &[f64],
    count: usize,
) -> Result<Vec<BandPoint>> {
    offsets.iter().map(|&a| band_point(p, convention, a, count)).collect()
}

/// One point of [`band_sweep`].
pub fn band_point(p: &PhaseModelParams, convention: Convention, offset: f64, count: usize) -> Result<BandPoint> {
    let q = p.with_offset(offset)?;
    let h = build_phase_operator(&q, convention)?;
    let s = eigensolve(&h, count)?;
    Ok(BandPoint {
        offset: q.offset,
        values: s.values,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_rotor_degeneracy() {
        let p = PhaseModelParams::new(1.0, 0.0, 0.0, 12).unwrap();
        let s = eigensolve(&build_phase_operator(&p, Convention::HoppingMatch).unwrap(), 5).unwrap();
        let expected = [0.0, 1.0, 1.0, 4.0, 4.0];
        for (a, b) in s.values.iter().zip(expected) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn half_offset_is_doubly_degenerate() {
        let p = PhaseModelParams::new(1.0, 0.0, 0.5, 12).unwrap();
        let s = eigensolve(&build_phase_operator(&p, Convention::Literal).unwrap(), 6).unwrap();
        let expected = [0.25, 0.25, 2.25, 2.25, 6.25, 6.25];
        for (a, b) in s.values.iter().zip(expected) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn conventions_differ_by_factor_two_in_hopping() {
        let p = PhaseModelParams::new(1.0, 4.0, 0.0, 20).unwrap();
        let matched = build_phase_operator(&p, Convention::HoppingMatch).unwrap();
        let literal = build_phase_operator(&p, Convention::Literal).unwrap();
        assert_eq!(matched.off_diagonal()[0], -4.0);
        assert_eq!(literal.off_diagonal()[0], -2.0);
        assert_eq!(matched.dim(), 41);
    }

    #[test]
    fn cutoff_precondition_suggests_value() {
        let p = PhaseModelParams::new(1.0, 50.0, 0.0, 20).unwrap();
        match build_phase_operator(&p, Convention::HoppingMatch) {
            Err(Error::CutoffTooSmall { required, .. }) => assert_eq!(required, 39),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn offset_is_reduced() {
        let p = PhaseModelParams::new(1.0, 1.0, 2.25, 12).unwrap();
        assert_eq!(p.offset(), 0.25);
        let q = p.with_offset(-0.25).unwrap();
        assert_eq!(q.offset(), 0.75);
    }

    #[test]
    fn free_bands_are_parabolas() {
        let p = PhaseModelParams::new(1.0, 0.0, 0.0, 10).unwrap();
        let grid = [0.0, 0.1, 0.3, 0.5];
        let bands = band_sweep(&p, Convention::HoppingMatch, &grid, 2).unwrap();
        for b in &bands {
            let a = b.offset;
            assert!((b.values[0] - a * a).abs() < 1e-12);
            assert!((b.values[1] - (1.0 - a) * (1.0 - a)).abs() < 1e-12);
        }
    }
}
