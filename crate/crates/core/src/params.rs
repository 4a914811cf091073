//! Physical parameters of a single box.

use alloc::format;

use crate::error::{invalid, Result};

const CONSISTENCY_TOL: f64 = 1e-12;

/// Parameters of one Cooper pair box.
///
/// The fields are tied together by `g = 4 E_C`, `n̄₁ = U / g` and
/// `E_J = K sqrt(n̄₁ (N - n̄₁))`; the constructors fill in whichever fields
/// are derived.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CpbParams {
    e_c: f64,
    tunneling: f64,
    e_j: f64,
    total_pairs: u64,
    n_bar: f64,
    interaction: f64,
    potential: f64,
}

impl CpbParams {
    /// From `E_C`, `E_J`, `N` and `n̄₁`.
    pub fn from_josephson(e_c: f64, e_j: f64, total_pairs: u64, n_bar: f64) -> Result<Self> {
        check_base(e_c, total_pairs, n_bar)?;
        if !(e_j >= 0.0) || !e_j.is_finite() {
            return Err(invalid("e_j", format!("must be finite and >= 0, got {e_j}")));
        }
        let tunneling = e_j / libm::sqrt(n_bar * (total_pairs as f64 - n_bar));
        Ok(Self::assemble(e_c, tunneling, e_j, total_pairs, n_bar))
    }

    /// From `E_C`, the tunnelling amplitude `K`, `N` and `n̄₁`.
    pub fn from_tunneling(e_c: f64, tunneling: f64, total_pairs: u64, n_bar: f64) -> Result<Self> {
        check_base(e_c, total_pairs, n_bar)?;
        check_tunneling(tunneling)?;
        let e_j = tunneling * libm::sqrt(n_bar * (total_pairs as f64 - n_bar));
        Ok(Self::assemble(e_c, tunneling, e_j, total_pairs, n_bar))
    }

    /// From `E_C`, `K`, `N` and the potential difference `U`.
    pub fn from_potential(e_c: f64, tunneling: f64, total_pairs: u64, potential: f64) -> Result<Self> {
        if !(e_c > 0.0) || !e_c.is_finite() {
            return Err(invalid("e_c", format!("must be finite and > 0, got {e_c}")));
        }
        Self::from_tunneling(e_c, tunneling, total_pairs, potential / (4.0 * e_c))
    }

    /// All fields given explicitly; they must satisfy the consistency
    /// relations to relative `1e-12`.
    pub fn new(
        e_c: f64,
        tunneling: f64,
        e_j: f64,
        total_pairs: u64,
        n_bar: f64,
        interaction: f64,
        potential: f64,
    ) -> Result<Self> {
        let p = Self::from_tunneling(e_c, tunneling, total_pairs, n_bar)?;
        let checks = [
            ("interaction", interaction, p.interaction),
            ("potential", potential, p.potential),
            ("e_j", e_j, p.e_j),
        ];
        for (name, given, derived) in checks {
            if !close(given, derived) {
                return Err(invalid(
                    name,
                    format!("{given} inconsistent with derived value {derived}"),
                ));
            }
        }
        Ok(p)
    }

    fn assemble(e_c: f64, tunneling: f64, e_j: f64, total_pairs: u64, n_bar: f64) -> Self {
        let interaction = 4.0 * e_c;
        CpbParams {
            e_c,
            tunneling,
            e_j,
            total_pairs,
            n_bar,
            interaction,
            potential: interaction * n_bar,
        }
    }

    pub fn e_c(&self) -> f64 {
        self.e_c
    }

    pub fn tunneling(&self) -> f64 {
        self.tunneling
    }

    pub fn e_j(&self) -> f64 {
        self.e_j
    }

    pub fn total_pairs(&self) -> u64 {
        self.total_pairs
    }

    pub fn n_bar(&self) -> f64 {
        self.n_bar
    }

    pub fn interaction(&self) -> f64 {
        self.interaction
    }

    pub fn potential(&self) -> f64 {
        self.potential
    }

    /// `sqrt(2 E_C E_J)`.
    pub fn plasma_frequency(&self) -> f64 {
        libm::sqrt(2.0 * self.e_c * self.e_j)
    }

    /// Fractional part of `n̄₁`.
    pub fn offset(&self) -> f64 {
        self.n_bar - libm::floor(self.n_bar)
    }
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= CONSISTENCY_TOL * a.abs().max(b.abs()).max(f64::MIN_POSITIVE)
}

fn check_base(e_c: f64, total_pairs: u64, n_bar: f64) -> Result<()> {
    if !(e_c > 0.0) || !e_c.is_finite() {
        return Err(invalid("e_c", format!("must be finite and > 0, got {e_c}")));
    }
    if total_pairs < 2 {
        return Err(invalid("total_pairs", format!("must be >= 2, got {total_pairs}")));
    }
    if !(n_bar > 0.0 && n_bar < total_pairs as f64) {
        return Err(invalid("n_bar", format!("must lie in (0, {total_pairs}), got {n_bar}")));
    }
    Ok(())
}

fn check_tunneling(k: f64) -> Result<()> {
    if !(k >= 0.0) || !k.is_finite() {
        return Err(invalid("tunneling", format!("must be finite and >= 0, got {k}")));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derived_fields_are_consistent() {
        let p = CpbParams::from_josephson(1.0, 50.0, 2000, 1000.0).unwrap();
        assert_eq!(p.interaction(), 4.0);
        assert_eq!(p.potential(), 4000.0);
        assert!((p.tunneling() * 1000.0 - 50.0).abs() < 1e-12);
        let q = CpbParams::from_tunneling(1.0, p.tunneling(), 2000, 1000.0).unwrap();
        assert!((q.e_j() - 50.0).abs() < 1e-12);
        let r = CpbParams::from_potential(1.0, p.tunneling(), 2000, 4000.0).unwrap();
        assert_eq!(r.n_bar(), 1000.0);
    }

    #[test]
    fn explicit_fields_are_checked() {
        let p = CpbParams::from_josephson(0.5, 3.0, 100, 30.0).unwrap();
        let ok = CpbParams::new(0.5, p.tunneling(), 3.0, 100, 30.0, 2.0, 60.0);
        assert!(ok.is_ok());
        assert!(CpbParams::new(0.5, p.tunneling(), 3.0, 100, 30.0, 2.5, 60.0).is_err());
    }

    #[test]
    fn rejects_invalid() {
        assert!(CpbParams::from_josephson(0.0, 1.0, 10, 5.0).is_err());
        assert!(CpbParams::from_josephson(1.0, 1.0, 1, 0.5).is_err());
        assert!(CpbParams::from_josephson(1.0, 1.0, 10, 10.0).is_err());
        assert!(CpbParams::from_josephson(1.0, -1.0, 10, 5.0).is_err());
        assert!(CpbParams::from_tunneling(1.0, f64::NAN, 10, 5.0).is_err());
    }

    #[test]
    fn plasma_frequency_and_offset() {
        let p = CpbParams::from_josephson(1.0, 50.0, 20000, 100.25).unwrap();
        assert!((p.plasma_frequency() - 10.0).abs() < 1e-12);
        assert!((p.offset() - 0.25).abs() < 1e-15);
    }
}
