//! Frequencies, spectra, time-averaged distributions and Lyapunov exponents
//! of classical trajectories.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::error::{invalid, Error, Result};
use crate::meanfield::control::ControlPulse;
use crate::meanfield::pendulum::{check_step, Pendulum, Scheme};
use crate::meanfield::PhasePoint;
use crate::params::CpbParams;

/// Minimum number of samples accepted by [`arcsine_histogram`].
pub const MIN_HISTOGRAM_SAMPLES: usize = 10_000;

/// Angular frequency from upward mean crossings, located by linear
/// interpolation.
pub fn zero_crossing_frequency(t: &[f64], x: &[f64]) -> Result<f64> {
    if t.len() != x.len() {
        return Err(Error::DimensionMismatch {
            expected: t.len(),
            found: x.len(),
        });
    }
    let mean = x.iter().sum::<f64>() / x.len().max(1) as f64;
    let mut crossings = Vec::new();
    for i in 1..x.len() {
        let (a, b) = (x[i - 1] - mean, x[i] - mean);
        if a < 0.0 && b >= 0.0 {
            let s = a / (a - b);
            crossings.push(t[i - 1] + s * (t[i] - t[i - 1]));
        }
    }
    if crossings.len() < 2 {
        return Err(Error::InsufficientSamples {
            found: crossings.len(),
            required: 2,
        });
    }
    let span = crossings[crossings.len() - 1] - crossings[0];
    Ok(2.0 * PI * (crossings.len() - 1) as f64 / span)
}

/// Local maxima of the Hann-windowed amplitude spectrum of a uniformly
/// sampled signal, strongest first, refined by parabolic interpolation.
/// Returns `(angular frequency, amplitude)` pairs.
pub fn spectral_peaks(x: &[f64], dt: f64, omega_max: f64, count: usize) -> Result<Vec<(f64, f64)>> {
    let n = x.len();
    if n < 16 {
        return Err(Error::InsufficientSamples { found: n, required: 16 });
    }
    if !(dt > 0.0) || !(omega_max > 0.0) {
        return Err(invalid("spectrum", "dt and omega_max must be positive"));
    }
    let mean = x.iter().sum::<f64>() / n as f64;
    let weights: Vec<f64> = (0..n)
        .map(|i| 0.5 - 0.5 * libm::cos(2.0 * PI * i as f64 / (n - 1) as f64))
        .collect();
    let signal: Vec<f64> = x.iter().zip(&weights).map(|(v, w)| (v - mean) * w).collect();
    let resolution = 2.0 * PI / (n as f64 * dt);
    let d_omega = resolution / 8.0;
    let grid = libm::ceil(omega_max / d_omega) as usize;
    let amplitude = |omega: f64| {
        // Rotate a unit phasor instead of calling sin/cos per sample.
        let (s, c) = (libm::sin(omega * dt), libm::cos(omega * dt));
        let (mut re, mut im) = (0.0, 0.0);
        let (mut pr, mut pi) = (1.0, 0.0);
        for &v in &signal {
            re += v * pr;
            im -= v * pi;
            let nr = pr * c - pi * s;
            pi = pr * s + pi * c;
            pr = nr;
        }
        libm::sqrt(re * re + im * im)
    };
    let spectrum: Vec<f64> = (0..=grid).map(|j| amplitude(j as f64 * d_omega)).collect();
    let mut peaks = Vec::new();
    for j in 1..grid {
        let (a, b, c) = (spectrum[j - 1], spectrum[j], spectrum[j + 1]);
        if b > a && b >= c {
            let denom = a - 2.0 * b + c;
            let shift = if denom != 0.0 { 0.5 * (a - c) / denom } else { 0.0 };
            peaks.push(((j as f64 + shift) * d_omega, b));
        }
    }
    peaks.sort_by(|p, q| q.1.total_cmp(&p.1));
    peaks.truncate(count);
    Ok(peaks)
}

/// Histogram normalised as a probability density on `[lower, upper]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Histogram {
    pub lower: f64,
    pub upper: f64,
    pub density: Vec<f64>,
}

impl Histogram {
    pub fn bins(&self) -> usize {
        self.density.len()
    }

    pub fn bin_width(&self) -> f64 {
        (self.upper - self.lower) / self.bins() as f64
    }

    pub fn bin_center(&self, i: usize) -> f64 {
        self.lower + (i as f64 + 0.5) * self.bin_width()
    }

    /// `Σ |h_i - p_i| Δ`, with `p_i` the bin average of the density
    /// `1 / (π sqrt(1 - x²))` on `[-1, 1]`.
    pub fn l1_to_arcsine(&self) -> f64 {
        let w = self.bin_width();
        (0..self.bins())
            .map(|i| {
                let a = (self.lower + i as f64 * w).clamp(-1.0, 1.0);
                let b = (self.lower + (i + 1) as f64 * w).clamp(-1.0, 1.0);
                let mass = (libm::asin(b) - libm::asin(a)) / PI;
                (self.density[i] * w - mass).abs()
            })
            .sum()
    }
}

/// Time-averaged distribution of `samples`, shifted and scaled so that the
/// oscillation spans `[-1, 1]`. A constant signal lands in a single bin.
pub fn arcsine_histogram(samples: &[f64], bins: usize) -> Result<Histogram> {
    if samples.len() < MIN_HISTOGRAM_SAMPLES {
        return Err(Error::InsufficientSamples {
            found: samples.len(),
            required: MIN_HISTOGRAM_SAMPLES,
        });
    }
    if bins == 0 {
        return Err(invalid("bins", "must be positive"));
    }
    if samples.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite("samples"));
    }
    let lo = samples.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = samples.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let center = 0.5 * (hi + lo);
    let half = 0.5 * (hi - lo);
    let mut counts = vec![0usize; bins];
    let width = 2.0 / bins as f64;
    for &v in samples {
        let x = if half > 0.0 { (v - center) / half } else { 0.0 };
        let idx = libm::floor((x + 1.0) / width) as isize;
        counts[idx.clamp(0, bins as isize - 1) as usize] += 1;
    }
    let total = samples.len() as f64;
    Ok(Histogram {
        lower: -1.0,
        upper: 1.0,
        density: counts.iter().map(|&c| c as f64 / (total * width)).collect(),
    })
}

/// Largest Lyapunov exponent of the controlled pendulum by following a
/// companion trajectory at distance `d0`, renormalised every
/// `renormalise_every` steps.
pub fn lyapunov_exponent(
    x0: PhasePoint,
    params: &CpbParams,
    control: &ControlPulse,
    t_end: f64,
    dt: f64,
    renormalise_every: usize,
) -> Result<f64> {
    control.validate()?;
    if renormalise_every == 0 {
        return Err(invalid("renormalise_every", "must be positive"));
    }
    let sys = Pendulum::new(params, *control, Scheme::Yoshida4);
    let steps = check_step(dt, t_end, sys.plasma_frequency())?;
    if steps < renormalise_every {
        return Err(invalid(
            "t_end",
            format!("shorter than one renormalisation interval ({renormalise_every} steps)"),
        ));
    }
    let d0 = 1e-8;
    let mut a = x0;
    let mut b = PhasePoint::new(x0.theta + d0, x0.xi);
    let mut log_sum = 0.0;
    let mut elapsed = 0.0;
    for n in 0..steps {
        let t = n as f64 * dt;
        sys.step(&mut a, t, dt);
        sys.step(&mut b, t, dt);
        if (n + 1) % renormalise_every == 0 {
            let (dth, dxi) = (b.theta - a.theta, b.xi - a.xi);
            let d = libm::sqrt(dth * dth + dxi * dxi);
            if !(d > 0.0) || !d.is_finite() {
                return Err(Error::NonFinite("lyapunov separation"));
            }
            log_sum += libm::log(d / d0);
            elapsed = (n + 1) as f64 * dt;
            b = PhasePoint::new(a.theta + dth * d0 / d, a.xi + dxi * d0 / d);
        }
    }
    Ok(log_sum / elapsed)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn crossing_frequency_of_sine() {
        let dt = 1e-3;
        let t: Vec<f64> = (0..20_000).map(|i| i as f64 * dt).collect();
        let x: Vec<f64> = t.iter().map(|&t| libm::sin(7.0 * t + 0.3)).collect();
        let w = zero_crossing_frequency(&t, &x).unwrap();
        assert!((w - 7.0).abs() < 1e-4);
    }

    #[test]
    fn two_tone_peaks() {
        let dt = 0.01;
        let x: Vec<f64> = (0..8000)
            .map(|i| {
                let t = i as f64 * dt;
                libm::cos(9.0 * t) + 0.5 * libm::cos(11.5 * t)
            })
            .collect();
        let peaks = spectral_peaks(&x, dt, 20.0, 2).unwrap();
        assert!((peaks[0].0 - 9.0).abs() < 0.01);
        assert!((peaks[1].0 - 11.5).abs() < 0.01);
    }

    #[test]
    fn constant_signal_single_bin() {
        let h = arcsine_histogram(&vec![0.3; 10_000], 50).unwrap();
        assert_eq!(h.density.iter().filter(|&&d| d > 0.0).count(), 1);
    }

    #[test]
    fn sinusoid_follows_arcsine() {
        let n = 1_000_000;
        let samples: Vec<f64> = (0..n)
            .map(|i| libm::sin(2.0 * PI * 37.0 * i as f64 / n as f64))
            .collect();
        let h = arcsine_histogram(&samples, 50).unwrap();
        assert!(h.l1_to_arcsine() < 0.05, "{}", h.l1_to_arcsine());
    }

    #[test]
    fn too_few_samples() {
        assert!(matches!(
            arcsine_histogram(&[0.0; 10], 5),
            Err(Error::InsufficientSamples { .. })
        ));
    }
}
