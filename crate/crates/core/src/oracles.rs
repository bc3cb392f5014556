//! Brute-force evaluators used to cross-check the closed forms.
//!
//! * [`integrate_phase_numeric`] integrates `-Omega cos^2(theta_tau/2)` built
//!   from the Bloch eigensystem, never touching the antiderivative.
//! * [`fourier_numeric`] transforms a stationary Wightman kernel on a finite
//!   window at small regulators and extrapolates the regulator away.
//!
//! With the lag shifted to `dtau - i eps`, the regulated transform obeys
//! `G_eps(omega) = G(omega) e^{-omega eps}`, so two-point Richardson
//! extrapolation in `eps` leaves an `O((omega eps)^2)` error.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::correlations::StationaryKernel;
use crate::dynamics::phase_integrand;
use crate::model::AtomParams;
use crate::phase::{PhaseMethod, PhaseReport};
use crate::quadrature::{integrate, QuadratureSpec};
use crate::response::{EffectiveGap, KossakowskiPair};
use crate::{Error, Result};

/// Phase over `[0, time]` by adaptive quadrature of the eigensystem integrand.
pub fn integrate_phase_numeric(
    atom: &AtomParams,
    pair: &KossakowskiPair,
    omega: EffectiveGap,
    time: f64,
    spec: &QuadratureSpec,
) -> Result<PhaseReport> {
    atom.validate()?;
    if !(time.is_finite() && time >= 0.0) {
        return Err(Error::InvalidParameter {
            name: "T",
            value: time,
            reason: "evolution time must be finite and non-negative",
        });
    }
    let big_omega = omega.value();
    let mut failure = None;
    let mut breaks = Vec::new();
    if pair.a > 0.0 && atom.theta.sin().abs() < 1e-6 {
        // Near-diagonal start: the integrand steps where rho3 changes sign.
        let r = pair.b / pair.a;
        let q = r + atom.theta.cos();
        if r / q > 0.0 && r / q < 1.0 {
            breaks.push((q / r).ln() / (4.0 * pair.a));
        }
    }
    let quad = integrate(
        |tau| match phase_integrand(atom.theta, pair, big_omega, tau) {
            Ok(v) => v,
            Err(Error::DegenerateState { .. }) => -big_omega / 2.0,
            Err(e) => {
                failure.get_or_insert(e);
                0.0
            }
        },
        0.0,
        time,
        &breaks,
        spec,
    )?;
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(PhaseReport {
        phi: quad.value,
        method: PhaseMethod::Quadrature,
        regime: None,
        time,
        groups: None,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Extrapolation {
    /// Report the transform at the smallest regulator.
    None,
    /// Linear extrapolation to `eps = 0` through the two smallest regulators.
    Richardson2,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FourierSpec {
    /// Strictly decreasing regulators.
    pub epsilon_schedule: Vec<f64>,
    /// Half-width of the lag window. `None` picks `max(200/|omega|, 40/rate)`.
    pub window: Option<f64>,
    pub extrapolation: Extrapolation,
    pub quadrature: QuadratureSpec,
}

impl Default for FourierSpec {
    fn default() -> Self {
        Self {
            epsilon_schedule: vec![1e-3, 5e-4],
            window: None,
            extrapolation: Extrapolation::Richardson2,
            quadrature: QuadratureSpec {
                abs_tol: 1e-10,
                rel_tol: 1e-10,
                max_subdivisions: 20_000,
            },
        }
    }
}

impl FourierSpec {
    pub fn validate(&self) -> Result<()> {
        self.quadrature.validate()?;
        let need = match self.extrapolation {
            Extrapolation::None => 1,
            Extrapolation::Richardson2 => 2,
        };
        if self.epsilon_schedule.len() < need {
            return Err(Error::InvalidParameter {
                name: "epsilon_schedule",
                value: self.epsilon_schedule.len() as f64,
                reason: "too few regulators for the chosen extrapolation",
            });
        }
        for &e in &self.epsilon_schedule {
            if !(e.is_finite() && e > 0.0) {
                return Err(Error::InvalidParameter {
                    name: "epsilon",
                    value: e,
                    reason: "regulator must be positive",
                });
            }
        }
        if self.epsilon_schedule.windows(2).any(|w| w[1] >= w[0]) {
            return Err(Error::InvalidParameter {
                name: "epsilon_schedule",
                value: f64::NAN,
                reason: "must be strictly decreasing",
            });
        }
        if let Some(w) = self.window {
            if !(w.is_finite() && w > 0.0) {
                return Err(Error::InvalidParameter {
                    name: "window",
                    value: w,
                    reason: "must be positive",
                });
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FourierEstimate {
    /// Real part of the extrapolated transform.
    pub value: f64,
    /// Imaginary part; zero up to quadrature error.
    pub imag: f64,
    pub quadrature_error: f64,
    pub window: f64,
    /// Real part of the transform at each regulator of the schedule.
    pub raw: Vec<f64>,
    pub extrapolation: Extrapolation,
}

/// Largest lag at which `sinh^2` of a decaying kernel still fits in an `f64`.
const DECAY_CAP: f64 = 500.0;
/// The kernel at the window edge must be below this fraction of its peak.
const EDGE_FRACTION: f64 = 1e-3;

fn default_window(omega: f64, rate: Option<f64>) -> f64 {
    let base = 200.0 / omega.abs();
    match rate {
        Some(k) => base.max(40.0 / k).min(DECAY_CAP / k),
        None => base,
    }
}

/// `int e^{i omega s} W(s - i eps) ds` over the window.
fn transform_at<K: StationaryKernel + ?Sized>(
    kernel: &K,
    omega: f64,
    eps: f64,
    half: f64,
    spec: &QuadratureSpec,
) -> Result<(Complex64, f64)> {
    let mut breaks = Vec::new();
    for p in kernel.singular_lags() {
        for k in [0.0, 1.0, 10.0, 100.0] {
            breaks.push(p - k * eps);
            breaks.push(p + k * eps);
        }
    }
    breaks.sort_by(f64::total_cmp);
    breaks.dedup();
    let quad = integrate(
        |s| Complex64::from_polar(1.0, omega * s) * kernel.eval(Complex64::new(s, -eps)),
        -half,
        half,
        &breaks,
        spec,
    )?;
    Ok((quad.value, quad.error))
}

/// Numerical transform of a stationary kernel at `omega`.
pub fn fourier_numeric<K: StationaryKernel + ?Sized>(
    kernel: &K,
    omega: f64,
    spec: &FourierSpec,
) -> Result<FourierEstimate> {
    if kernel.is_periodic() {
        return Err(Error::Unsupported(
            "periodic kernels have a distributional transform; no numerical oracle",
        ));
    }
    if !(omega.is_finite() && omega != 0.0) {
        return Err(Error::InvalidParameter {
            name: "omega",
            value: omega,
            reason: "frequency must be finite and non-zero",
        });
    }
    spec.validate()?;
    let raw_window = spec
        .window
        .unwrap_or_else(|| default_window(omega, kernel.decay_rate()));
    // Snap to a multiple of pi/|omega| so the leading 1/s^2 tail term cancels.
    let step = std::f64::consts::PI / omega.abs();
    let half = (raw_window / step).ceil() * step;

    let eps0 = spec.epsilon_schedule[0];
    let peak = kernel
        .singular_lags()
        .iter()
        .map(|&p| kernel.eval(Complex64::new(p, -eps0)).norm())
        .fold(0.0, f64::max);
    let edge = kernel.eval(Complex64::new(half, -eps0)).norm();
    if !(edge <= EDGE_FRACTION * peak) {
        return Err(Error::Window { edge, peak });
    }

    let mut values = Vec::with_capacity(spec.epsilon_schedule.len());
    let mut errors = Vec::with_capacity(spec.epsilon_schedule.len());
    for &eps in &spec.epsilon_schedule {
        let (v, e) = transform_at(kernel, omega, eps, half, &spec.quadrature)?;
        values.push(v);
        errors.push(e);
    }
    let n = values.len();
    let (value, error) = match spec.extrapolation {
        Extrapolation::None => (values[n - 1], errors[n - 1]),
        Extrapolation::Richardson2 => {
            let (e1, e2) = (spec.epsilon_schedule[n - 2], spec.epsilon_schedule[n - 1]);
            let (g1, g2) = (values[n - 2], values[n - 1]);
            let w = e2 / (e1 - e2);
            (g2 + (g2 - g1) * w, errors[n - 1] * (1.0 + w) + errors[n - 2] * w)
        }
    };
    Ok(FourierEstimate {
        value: value.re,
        imag: value.im,
        quadrature_error: error,
        window: half,
        raw: values.iter().map(|v| v.re).collect(),
        extrapolation: spec.extrapolation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::correlations::{MinkowskiKernel, SubcriticalKernel};
    use crate::model::Boundary;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    #[test]
    fn minkowski_transform() {
        let spec = FourierSpec::default();
        let g = fourier_numeric(&MinkowskiKernel, 1.0, &spec).unwrap();
        assert_relative_eq!(g.value, 1.0 / (2.0 * PI), max_relative = 1e-5);
        assert!(g.imag.abs() < 1e-6);
        let g = fourier_numeric(&MinkowskiKernel, -1.0, &spec).unwrap();
        assert!(g.value.abs() < 1e-6);
    }

    #[test]
    fn regulator_shift_is_exponential() {
        let spec = FourierSpec {
            extrapolation: Extrapolation::None,
            epsilon_schedule: vec![0.05],
            ..FourierSpec::default()
        };
        let g = fourier_numeric(&MinkowskiKernel, 2.0, &spec).unwrap();
        assert_relative_eq!(g.value, 2.0 / (2.0 * PI) * (-0.1f64).exp(), max_relative = 1e-6);
    }

    #[test]
    fn schedule_must_decrease() {
        let spec = FourierSpec {
            epsilon_schedule: vec![1e-3, 1e-3],
            ..FourierSpec::default()
        };
        assert!(fourier_numeric(&MinkowskiKernel, 1.0, &spec).is_err());
        let spec = FourierSpec {
            epsilon_schedule: vec![1e-3],
            ..FourierSpec::default()
        };
        assert!(fourier_numeric(&MinkowskiKernel, 1.0, &spec).is_err());
    }

    #[test]
    fn periodic_kernel_refused() {
        let k = SubcriticalKernel::new(0.5, 1.0, Boundary::Dirichlet).unwrap();
        assert!(matches!(
            fourier_numeric(&k, 1.0, &FourierSpec::default()),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn short_window_flagged() {
        let spec = FourierSpec {
            window: Some(1e-3),
            ..FourierSpec::default()
        };
        assert!(matches!(
            fourier_numeric(&MinkowskiKernel, 1e4, &spec),
            Err(Error::Window { .. })
        ));
    }

    #[test]
    fn phase_oracle_closed_atom() {
        let atom = AtomParams::new(1.0, 0.1, 1.2).unwrap();
        let p = integrate_phase_numeric(
            &atom,
            &KossakowskiPair::ZERO,
            EffectiveGap::new(1.0).unwrap(),
            2.0 * PI,
            &QuadratureSpec::default(),
        )
        .unwrap();
        assert_relative_eq!(p.phi, -PI * (1.0 - 1.2f64.cos()), max_relative = 1e-12);
    }
}
