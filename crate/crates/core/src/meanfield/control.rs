//! External control `u(t)` added to the potential difference.

use crate::error::{invalid, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ControlPulse {
    Constant {
        amplitude: f64,
    },
    /// `amplitude * exp(-(t - center)^2 / (2 width^2))`.
    Gaussian {
        amplitude: f64,
        center: f64,
        width: f64,
    },
    /// `amplitude * sin(frequency * t + phase)`.
    Harmonic {
        amplitude: f64,
        frequency: f64,
        phase: f64,
    },
}

impl Default for ControlPulse {
    fn default() -> Self {
        ControlPulse::Constant { amplitude: 0.0 }
    }
}

impl ControlPulse {
    pub fn none() -> Self {
        Self::default()
    }

    pub fn validate(&self) -> Result<()> {
        let finite = |name: &'static str, v: f64| {
            if v.is_finite() {
                Ok(())
            } else {
                Err(invalid(name, "must be finite"))
            }
        };
        match *self {
            ControlPulse::Constant { amplitude } => finite("amplitude", amplitude),
            ControlPulse::Gaussian {
                amplitude,
                center,
                width,
            } => {
                finite("amplitude", amplitude)?;
                finite("center", center)?;
                if !(width > 0.0) || !width.is_finite() {
                    return Err(invalid("width", "must be finite and > 0"));
                }
                Ok(())
            }
            ControlPulse::Harmonic {
                amplitude,
                frequency,
                phase,
            } => {
                finite("amplitude", amplitude)?;
                finite("frequency", frequency)?;
                finite("phase", phase)
            }
        }
    }

    pub fn at(&self, t: f64) -> f64 {
        match *self {
            ControlPulse::Constant { amplitude } => amplitude,
            ControlPulse::Gaussian {
                amplitude,
                center,
                width,
            } => {
                let s = (t - center) / width;
                amplitude * libm::exp(-0.5 * s * s)
            }
            ControlPulse::Harmonic {
                amplitude,
                frequency,
                phase,
            } => amplitude * libm::sin(frequency * t + phase),
        }
    }

    pub fn is_constant(&self) -> bool {
        matches!(self, ControlPulse::Constant { .. })
    }

    /// Upper bound on `|u(t)|`.
    pub fn bound(&self) -> f64 {
        match *self {
            ControlPulse::Constant { amplitude }
            | ControlPulse::Gaussian { amplitude, .. }
            | ControlPulse::Harmonic { amplitude, .. } => amplitude.abs(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shapes() {
        let g = ControlPulse::Gaussian {
            amplitude: 2.0,
            center: 1.0,
            width: 0.5,
        };
        assert_eq!(g.at(1.0), 2.0);
        assert!((g.at(1.5) - 2.0 * libm::exp(-0.5)).abs() < 1e-15);
        let h = ControlPulse::Harmonic {
            amplitude: 1.0,
            frequency: 2.0,
            phase: 0.0,
        };
        assert!(h.at(0.0).abs() < 1e-15);
        assert_eq!(ControlPulse::none().at(5.0), 0.0);
        assert!(ControlPulse::Gaussian {
            amplitude: 1.0,
            center: 0.0,
            width: 0.0
        }
        .validate()
        .is_err());
    }
}
