//! Single-system quantumness witness: `0 ⪯ A ⪯ B` together with
//! `<φ|B² - A²|φ> < 0` for some state `φ` rules out any commutative model of
//! the observables.

use alloc::format;
use alloc::vec::Vec;
use core::ops::RangeInclusive;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{invalid, Error, Result};
use crate::linalg::CMatrix;

/// Default tolerance on the minimum eigenvalues in [`check_dominance`].
pub const DEFAULT_TOLERANCE: f64 = 5e-3;

const HERMITICITY_TOL: f64 = 1e-12;

/// Pair of Hermitian observables of equal dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct ObservablePair {
    a: CMatrix,
    b: CMatrix,
}

impl ObservablePair {
    pub fn new(a: CMatrix, b: CMatrix) -> Result<Self> {
        if a.dim() != b.dim() {
            return Err(Error::DimensionMismatch {
                expected: a.dim(),
                found: b.dim(),
            });
        }
        if a.dim() < 2 {
            return Err(invalid("dimension", format!("must be at least 2, got {}", a.dim())));
        }
        for (name, m) in [("a", &a), ("b", &b)] {
            if m.as_slice().iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
                return Err(Error::NonFinite("observable"));
            }
            let err = m.hermiticity_error();
            if err > HERMITICITY_TOL {
                return Err(invalid(name, format!("not Hermitian: deviation {err:e}")));
            }
        }
        Ok(ObservablePair { a, b })
    }

    pub fn a(&self) -> &CMatrix {
        &self.a
    }

    pub fn b(&self) -> &CMatrix {
        &self.b
    }

    pub fn dim(&self) -> usize {
        self.a.dim()
    }

    /// `B² - A²`.
    pub fn witness_operator(&self) -> CMatrix {
        &(&self.b * &self.b) - &(&self.a * &self.a)
    }

    /// Conjugate both observables by a unitary: `U A U†`, `U B U†`.
    pub fn conjugated(&self, u: &CMatrix) -> Result<Self> {
        let ud = u.adjoint();
        Self::new(
            (&(u * &self.a) * &ud).hermitian_part(),
            (&(u * &self.b) * &ud).hermitian_part(),
        )
    }
}

/// `A = [[0.724, 0.249], [0.249, 0.0854]]`, `B = diag(1, 0.309)`.
pub fn paper_instance() -> ObservablePair {
    let a = CMatrix::from_real(2, &[0.724, 0.249, 0.249, 0.0854]).expect("2x2");
    let b = CMatrix::diagonal(&[1.0, 0.309]);
    ObservablePair::new(a, b).expect("valid pair")
}

/// The state paired with [`paper_instance`].
pub fn paper_state() -> [Complex64; 2] {
    [Complex64::new(0.391, 0.0), Complex64::new(0.920, 0.0)]
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dominance {
    pub certified: bool,
    /// Minimum eigenvalue of `A`.
    pub margin_a: f64,
    /// Minimum eigenvalue of `B - A`.
    pub margin_ba: f64,
    pub tolerance: f64,
}

/// `0 ⪯ A ⪯ B` holds for all states iff both minimum eigenvalues are
/// nonnegative; certified when both are at least `-tol`.
pub fn check_dominance(p: &ObservablePair, tol: f64) -> Result<Dominance> {
    if !(tol >= 0.0) || !tol.is_finite() {
        return Err(invalid("tol", format!("must be finite and >= 0, got {tol}")));
    }
    let margin_a = p.a.min_eigenvalue()?;
    let margin_ba = (&p.b - &p.a).min_eigenvalue()?;
    Ok(Dominance {
        certified: margin_a >= -tol && margin_ba >= -tol,
        margin_a,
        margin_ba,
        tolerance: tol,
    })
}

/// `<φ|B² - A²|φ> / <φ|φ>`.
pub fn witness_value(p: &ObservablePair, phi: &[Complex64]) -> Result<f64> {
    if phi.len() != p.dim() {
        return Err(Error::DimensionMismatch {
            expected: p.dim(),
            found: phi.len(),
        });
    }
    let norm: f64 = phi.iter().map(|z| z.norm_sqr()).sum();
    if !(norm > 0.0) {
        return Err(invalid("phi", "zero vector"));
    }
    Ok(p.witness_operator().expectation(phi).re / norm)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    pub state: Vec<Complex64>,
    pub value: f64,
    /// Whether the pair passes [`check_dominance`] at [`DEFAULT_TOLERANCE`].
    pub dominance_certified: bool,
}

/// Lowest eigenpair of `B² - A²` when its eigenvalue is negative.
pub fn find_violation(p: &ObservablePair) -> Result<Option<Violation>> {
    let eig = p.witness_operator().hermitian_eigen()?;
    let value = eig.values[0];
    if value >= 0.0 {
        return Ok(None);
    }
    let mut state = eig.vectors[0].clone();
    // Fix the global phase so that the largest component is real positive.
    if let Some(big) = state.iter().copied().max_by(|x, y| x.norm().total_cmp(&y.norm())) {
        let phase = big.conj() / big.norm();
        state.iter_mut().for_each(|z| *z *= phase);
    }
    let dominance_certified = check_dominance(p, DEFAULT_TOLERANCE)?.certified;
    Ok(Some(Violation {
        state,
        value,
        dominance_certified,
    }))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoGoReport {
    pub samples: usize,
    pub violations: usize,
    /// Smallest `min eig(B² - A²)` seen.
    pub worst: f64,
}

impl NoGoReport {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

/// Threshold below which a commuting sample counts as a violation.
pub const NO_GO_THRESHOLD: f64 = -1e-10;

/// Draw commuting pairs `0 ⪯ A ⪯ B` (diagonal, optionally rotated by a
/// common random unitary) with dimensions cycling through `dimensions`, and
/// count samples with `min eig(B² - A²) < -1e-10`.
pub fn classical_no_go_property(
    samples: usize,
    dimensions: RangeInclusive<usize>,
    seed: u64,
    rotate: bool,
) -> Result<NoGoReport> {
    let (lo, hi) = (*dimensions.start(), *dimensions.end());
    if lo < 2 || hi < lo {
        return Err(invalid(
            "dimensions",
            format!("need 2 <= start <= end, got {lo}..={hi}"),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = NoGoReport {
        samples,
        violations: 0,
        worst: f64::INFINITY,
    };
    for i in 0..samples {
        let d = lo + i % (hi - lo + 1);
        let pair = commuting_pair(&mut rng, d, rotate)?;
        let min = pair.witness_operator().min_eigenvalue()?;
        report.worst = report.worst.min(min);
        if min < NO_GO_THRESHOLD {
            report.violations += 1;
        }
    }
    Ok(report)
}

/// Random commuting pair with `0 ⪯ A ⪯ B`.
pub fn commuting_pair(rng: &mut impl Rng, d: usize, rotate: bool) -> Result<ObservablePair> {
    let mut a = Vec::with_capacity(d);
    let mut b = Vec::with_capacity(d);
    for _ in 0..d {
        let x: f64 = rng.random::<f64>();
        a.push(x);
        b.push(x + rng.random::<f64>());
    }
    let pair = ObservablePair::new(CMatrix::diagonal(&a), CMatrix::diagonal(&b))?;
    if rotate {
        pair.conjugated(&random_unitary(rng, d))
    } else {
        Ok(pair)
    }
}

/// Unitary from Gram-Schmidt orthonormalisation of a random complex matrix.
pub fn random_unitary(rng: &mut impl Rng, d: usize) -> CMatrix {
    let mut cols: Vec<Vec<Complex64>> = Vec::with_capacity(d);
    while cols.len() < d {
        let mut v: Vec<Complex64> = (0..d)
            .map(|_| Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5))
            .collect();
        for u in &cols {
            let dot: Complex64 = u.iter().zip(&v).map(|(x, y)| x.conj() * y).sum();
            v.iter_mut().zip(u).for_each(|(vi, ui)| *vi -= dot * ui);
        }
        let norm = libm::sqrt(v.iter().map(|z| z.norm_sqr()).sum::<f64>());
        if norm > 1e-3 {
            v.iter_mut().for_each(|z| *z /= norm);
            cols.push(v);
        }
    }
    let mut u = CMatrix::zeros(d);
    for (j, col) in cols.iter().enumerate() {
        for i in 0..d {
            u[(i, j)] = col[i];
        }
    }
    u
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_matrices() {
        let p = paper_instance();
        assert_eq!(p.a()[(0, 1)], p.a()[(1, 0)]);
        assert_eq!(p.b()[(0, 1)], Complex64::new(0.0, 0.0));
        let det_a = 0.724 * 0.0854 - 0.249 * 0.249;
        let det_ba = (1.0 - 0.724) * (0.309 - 0.0854) - 0.249 * 0.249;
        assert!(det_a < 0.0 && det_a > -5e-4);
        assert!(det_ba < 0.0 && det_ba > -5e-4);
    }

    #[test]
    fn trivial_dominance() {
        let p = ObservablePair::new(CMatrix::zeros(3), CMatrix::identity(3)).unwrap();
        let d = check_dominance(&p, 0.0).unwrap();
        assert!(d.certified);
        assert!(d.margin_a.abs() < 1e-15 && (d.margin_ba - 1.0).abs() < 1e-15);
    }

    #[test]
    fn builtin_dominance_depends_on_tolerance() {
        let p = paper_instance();
        assert!(check_dominance(&p, DEFAULT_TOLERANCE).unwrap().certified);
        assert!(!check_dominance(&p, 0.0).unwrap().certified);
    }

    #[test]
    fn equal_observables_give_zero() {
        let a = CMatrix::from_real(2, &[0.5, 0.1, 0.1, 0.2]).unwrap();
        let p = ObservablePair::new(a.clone(), a).unwrap();
        let phi = [Complex64::new(0.3, 0.1), Complex64::new(-0.2, 0.9)];
        assert!(witness_value(&p, &phi).unwrap().abs() < 1e-15);
    }

    #[test]
    fn no_violation_for_commuting_or_scaled() {
        let p = ObservablePair::new(CMatrix::diagonal(&[0.2, 0.5]), CMatrix::diagonal(&[0.3, 0.9])).unwrap();
        assert!(find_violation(&p).unwrap().is_none());
        let b = CMatrix::from_real(2, &[1.0, 0.3, 0.3, 0.5]).unwrap();
        let q = ObservablePair::new(b.scale(0.5), b).unwrap();
        assert!(find_violation(&q).unwrap().is_none());
    }

    #[test]
    fn rejects_non_hermitian() {
        let a = CMatrix::from_real(2, &[0.0, 1.0, 0.0, 0.0]).unwrap();
        assert!(ObservablePair::new(a, CMatrix::identity(2)).is_err());
        assert!(witness_value(&paper_instance(), &[Complex64::new(1.0, 0.0)]).is_err());
    }

    #[test]
    fn random_unitary_is_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let u = random_unitary(&mut rng, 4);
        let e = &(&u * &u.adjoint()) - &CMatrix::identity(4);
        assert!(e.max_abs() < 1e-12);
    }
}
