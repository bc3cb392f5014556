//! Closed-form evolution of the reduced atomic state.
//!
//! The master equation with rates `(A, B)` and gap `Omega` is solved exactly:
//! the transverse Bloch components decay at `2A` while precessing at `Omega`,
//! and the longitudinal one relaxes at `4A` towards `-B/A`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::response::KossakowskiPair;
use crate::{Error, Result};

/// Below this value of `A tau` the longitudinal drift uses its linear limit.
const SMALL_DECAY: f64 = 1e-14;

/// Bloch vector at proper time `tau`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BlochState {
    pub rho1: f64,
    pub rho2: f64,
    pub rho3: f64,
    pub tau: f64,
}

impl BlochState {
    pub fn norm(&self) -> f64 {
        (self.rho1 * self.rho1 + self.rho2 * self.rho2 + self.rho3 * self.rho3).sqrt()
    }
}

/// 2x2 density matrix in the `{|+>, |->}` basis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AtomDensity {
    pub entries: [[Complex64; 2]; 2],
}

impl AtomDensity {
    pub fn trace(&self) -> Complex64 {
        self.entries[0][0] + self.entries[1][1]
    }

    /// `Tr(rho^2)`.
    pub fn purity(&self) -> f64 {
        let m = &self.entries;
        let mut sum = Complex64::new(0.0, 0.0);
        for i in 0..2 {
            for k in 0..2 {
                sum += m[i][k] * m[k][i];
            }
        }
        sum.re
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        let m = &self.entries;
        (m[0][1] - m[1][0].conj()).norm() <= tol
            && m[0][0].im.abs() <= tol
            && m[1][1].im.abs() <= tol
    }

    pub fn determinant(&self) -> Complex64 {
        let m = &self.entries;
        m[0][0] * m[1][1] - m[0][1] * m[1][0]
    }
}

/// Eigenvalues `(1 +- eta)/2` and the mixing angle of the dominant eigenvector
/// `|psi+> = sin(theta_tau/2)|+> + cos(theta_tau/2) e^{i Omega tau}|->` (up to phase).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EigenSystem {
    pub lambda_plus: f64,
    pub lambda_minus: f64,
    /// Length of the Bloch vector.
    pub eta: f64,
    pub theta_tau: f64,
    /// `cos^2(theta_tau / 2)`, the weight entering the phase integrand.
    pub cos2_half: f64,
}

fn check_inputs(theta: f64, pair: &KossakowskiPair, tau: f64) -> Result<()> {
    if !(0.0..=std::f64::consts::PI).contains(&theta) {
        return Err(Error::InvalidParameter {
            name: "theta",
            value: theta,
            reason: "must lie in [0, pi]",
        });
    }
    if !(tau.is_finite() && tau >= 0.0) {
        return Err(Error::InvalidParameter {
            name: "tau",
            value: tau,
            reason: "must be finite and non-negative",
        });
    }
    if !pair.is_positive() {
        return Err(Error::InvalidParameter {
            name: "A",
            value: pair.a,
            reason: "rates must satisfy A >= |B|",
        });
    }
    Ok(())
}

/// `(rho3, e^{-4 A tau})`.
fn longitudinal(theta: f64, pair: &KossakowskiPair, tau: f64) -> (f64, f64) {
    let x = 4.0 * pair.a * tau;
    let m = (-x).exp_m1();
    let drift = if pair.a * tau < SMALL_DECAY {
        -4.0 * pair.b * tau
    } else {
        pair.b / pair.a * m
    };
    let decay = 1.0 + m;
    (decay * theta.cos() + drift, decay)
}

pub fn bloch_evolve(theta: f64, pair: &KossakowskiPair, omega: f64, tau: f64) -> Result<BlochState> {
    check_inputs(theta, pair, tau)?;
    let (rho3, decay4) = longitudinal(theta, pair, tau);
    let transverse = decay4.sqrt() * theta.sin();
    let (s, c) = (omega * tau).sin_cos();
    Ok(BlochState {
        rho1: transverse * c,
        rho2: transverse * s,
        rho3,
        tau,
    })
}

pub fn density_matrix(state: &BlochState) -> AtomDensity {
    let off = Complex64::new(state.rho1, -state.rho2) * 0.5;
    AtomDensity {
        entries: [
            [Complex64::new((1.0 + state.rho3) / 2.0, 0.0), off],
            [off.conj(), Complex64::new((1.0 - state.rho3) / 2.0, 0.0)],
        ],
    }
}

pub fn eigen_system(theta: f64, pair: &KossakowskiPair, tau: f64) -> Result<EigenSystem> {
    check_inputs(theta, pair, tau)?;
    let (rho3, decay4) = longitudinal(theta, pair, tau);
    let perp2 = decay4 * theta.sin().powi(2);
    let eta = (rho3 * rho3 + perp2).sqrt();
    if !(eta > f64::EPSILON) {
        return Err(Error::DegenerateState { tau });
    }
    // (eta - rho3) cancels when rho3 ~ eta; rationalise on that side.
    let cos2_half = if rho3 > 0.0 {
        perp2 / (eta + rho3) / (2.0 * eta)
    } else {
        (eta - rho3) / (2.0 * eta)
    };
    let cos2_half = cos2_half.clamp(0.0, 1.0);
    Ok(EigenSystem {
        lambda_plus: (1.0 + eta) / 2.0,
        lambda_minus: (1.0 - eta) / 2.0,
        eta,
        theta_tau: 2.0 * cos2_half.sqrt().acos(),
        cos2_half,
    })
}

/// Integrand of the geometric phase, `-Omega cos^2(theta_tau / 2)`.
pub fn phase_integrand(theta: f64, pair: &KossakowskiPair, omega: f64, tau: f64) -> Result<f64> {
    Ok(-omega * eigen_system(theta, pair, tau)?.cos2_half)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    fn pair(a: f64, b: f64) -> KossakowskiPair {
        KossakowskiPair { a, b }
    }

    /// Eigenvalues of a Hermitian 2x2 from trace and determinant.
    fn eig2(d: &AtomDensity) -> (f64, f64) {
        let t = d.trace().re;
        let det = d.determinant().re;
        let disc = (t * t / 4.0 - det).max(0.0).sqrt();
        (t / 2.0 + disc, t / 2.0 - disc)
    }

    #[test]
    fn initial_state_is_pure() {
        let theta = PI / 3.0;
        let s = bloch_evolve(theta, &pair(0.01, 0.005), 1.0, 0.0).unwrap();
        assert_relative_eq!(s.rho1, theta.sin());
        assert_eq!(s.rho2, 0.0);
        assert_relative_eq!(s.rho3, theta.cos());
        let e = eigen_system(theta, &pair(0.01, 0.005), 0.0).unwrap();
        assert_relative_eq!(e.eta, 1.0, max_relative = 1e-15);
        assert_relative_eq!(e.theta_tau, PI - theta, max_relative = 1e-12);
    }

    #[test]
    fn eigenvalues_match_matrix() {
        for &(theta, a, b, tau) in &[
            (PI / 4.0, 0.01, 0.008, 3.0),
            (2.0, 0.3, -0.1, 1.7),
            (0.1, 1e-3, 1e-3, 100.0),
            (PI, 0.2, 0.2, 0.5),
        ] {
            let p = pair(a, b);
            let s = bloch_evolve(theta, &p, 1.3, tau).unwrap();
            let d = density_matrix(&s);
            assert!(d.is_hermitian(0.0));
            assert_relative_eq!(d.trace().re, 1.0, max_relative = 1e-15);
            let (lp, lm) = eig2(&d);
            let e = eigen_system(theta, &p, tau).unwrap();
            assert_relative_eq!(e.lambda_plus, lp, epsilon = 1e-12);
            assert_relative_eq!(e.lambda_minus, lm, epsilon = 1e-12);
            assert_relative_eq!(d.purity(), (1.0 + e.eta * e.eta) / 2.0, epsilon = 1e-13);
            assert_relative_eq!(e.eta, s.norm(), epsilon = 1e-13);
        }
    }

    #[test]
    fn eigenvector_angle_solves_eigenproblem() {
        let (theta, p, omega, tau) = (1.1, pair(0.05, 0.03), 0.7, 2.4);
        let s = bloch_evolve(theta, &p, omega, tau).unwrap();
        let d = density_matrix(&s);
        let e = eigen_system(theta, &p, tau).unwrap();
        let half = e.theta_tau / 2.0;
        let v = [
            Complex64::new(half.sin(), 0.0),
            Complex64::from_polar(half.cos(), omega * tau),
        ];
        for row in 0..2 {
            let mv = d.entries[row][0] * v[0] + d.entries[row][1] * v[1];
            assert!((mv - v[row] * e.lambda_plus).norm() < 1e-13);
        }
    }

    #[test]
    fn eta_relaxes_to_equilibrium() {
        let p = pair(0.02, 0.01);
        let e = eigen_system(0.9, &p, 2000.0).unwrap();
        assert_relative_eq!(e.eta, 0.5, max_relative = 1e-12);
        assert_relative_eq!(e.cos2_half, 1.0);
        for i in 0..50 {
            let e = eigen_system(0.9, &p, i as f64).unwrap();
            assert!(e.eta <= 1.0 && e.eta > 0.0);
        }
    }

    #[test]
    fn small_rate_limit_is_continuous() {
        let tau = 2.0;
        let a = SMALL_DECAY / tau;
        let below = bloch_evolve(0.7, &pair(a * 0.999, a * 0.5), 1.0, tau).unwrap();
        let above = bloch_evolve(0.7, &pair(a * 1.001, a * 0.5), 1.0, tau).unwrap();
        assert_relative_eq!(below.rho3, above.rho3, epsilon = 1e-15);
        let zero = bloch_evolve(0.7, &KossakowskiPair::ZERO, 1.0, tau).unwrap();
        assert_relative_eq!(zero.rho3, 0.7f64.cos());
        assert_relative_eq!(zero.norm(), 1.0, max_relative = 1e-15);
    }

    #[test]
    fn maximally_mixed_point_is_reported() {
        // theta = 0, R = 1: rho3 = 2 e^{-4 A tau} - 1 vanishes at tau = ln 2 / 4A.
        let p = pair(0.25, 0.25);
        let tau = std::f64::consts::LN_2;
        assert!(matches!(eigen_system(0.0, &p, tau), Err(Error::DegenerateState { .. })));
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(bloch_evolve(-0.1, &pair(0.1, 0.0), 1.0, 1.0).is_err());
        assert!(bloch_evolve(0.1, &pair(0.1, 0.2), 1.0, 1.0).is_err());
        assert!(eigen_system(0.1, &pair(0.1, 0.0), -1.0).is_err());
    }
}
