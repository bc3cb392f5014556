//! Wightman functions of the massless conformal scalar in AdS.
//!
//! The global form takes two Poincare-patch points; the stationary forms are
//! its restriction to the elliptic, parabolic and hyperbolic worldlines and
//! depend on the proper-time lag only.
//!
//! The regulator is always an explicit argument. For the stationary forms it
//! shifts the lag, `dtau -> dtau - i*eps`, so `eps` carries units of proper
//! time. For [`wightman_global`] it shifts the coordinate time difference.
//! Evaluating exactly on a pole with `eps = 0` is a [`Error::Singular`].

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::model::{classify_regime, Boundary, Regime};
use crate::{Error, Result};

/// Regulator used for plotting-grade evaluation, in units of `1/omega0`.
pub const DEFAULT_EPSILON: f64 = 1e-6;

const POLE_FLOOR: f64 = 64.0 * f64::EPSILON;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpacetimePoint {
    pub t: f64,
    pub x1: f64,
    pub x2: f64,
    /// Poincare depth, strictly positive inside the patch.
    pub z: f64,
}

impl SpacetimePoint {
    pub fn new(t: f64, x1: f64, x2: f64, z: f64) -> Result<Self> {
        if !(z.is_finite() && z > 0.0) {
            return Err(Error::InvalidParameter {
                name: "z",
                value: z,
                reason: "Poincare depth must be positive",
            });
        }
        Ok(Self { t, x1, x2, z })
    }

    /// Point on the `x1 = x2 = 0` plane.
    pub fn on_axis(t: f64, z: f64) -> Result<Self> {
        Self::new(t, 0.0, 0.0, z)
    }
}

/// A regularized Wightman value together with the regulator that produced it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WightmanSample {
    pub value: Complex64,
    pub epsilon: f64,
}

fn check_eps(eps: f64) -> Result<()> {
    if eps.is_finite() && eps >= 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name: "eps",
            value: eps,
            reason: "regulator must be finite and non-negative",
        })
    }
}

fn near_zero(x: Complex64, scale: f64) -> bool {
    x.norm() <= POLE_FLOOR * scale.max(1.0)
}

/// AdS invariant `v` between two points, with `t - t' -> t - t' - i*eps`.
pub fn invariant_v(x: &SpacetimePoint, xp: &SpacetimePoint, eps: f64) -> Complex64 {
    let dt = Complex64::new(x.t - xp.t, -eps);
    let dx2 = (x.x1 - xp.x1).powi(2) + (x.x2 - xp.x2).powi(2);
    (Complex64::from(x.z * x.z + xp.z * xp.z + dx2) - dt * dt) / (2.0 * x.z * xp.z)
}

/// `W(x, x') = (1/8 pi^2 ell^2) [1/(v-1) - zeta/(v+1)]`.
pub fn wightman_global(
    x: &SpacetimePoint,
    xp: &SpacetimePoint,
    ell: f64,
    boundary: Boundary,
    eps: f64,
) -> Result<WightmanSample> {
    check_eps(eps)?;
    for p in [x, xp] {
        SpacetimePoint::new(p.t, p.x1, p.x2, p.z)?;
    }
    let v = invariant_v(x, xp, eps);
    let scale = v.norm();
    let bulk_den = v - 1.0;
    if near_zero(bulk_den, scale) {
        return Err(Error::Singular {
            location: "v = 1 (light cone)".into(),
        });
    }
    let mut w = bulk_den.inv();
    let zeta = boundary.zeta();
    if zeta != 0.0 {
        let image_den = v + 1.0;
        if near_zero(image_den, scale) {
            return Err(Error::Singular {
                location: "v = -1 (image light cone)".into(),
            });
        }
        w -= zeta * image_den.inv();
    }
    Ok(WightmanSample {
        value: w / (8.0 * PI * PI * ell * ell),
        epsilon: eps,
    })
}

fn require(regime: Regime, accel: f64, ell: f64) -> Result<()> {
    let class = classify_regime(accel, ell)?;
    if class.regime == regime {
        Ok(())
    } else {
        Err(Error::WrongRegime {
            expected: regime.name(),
            a_ell: class.a_ell,
        })
    }
}

/// Angular frequency `sqrt(1/ell^2 - a^2)` of the elliptic orbit.
pub fn elliptic_frequency(accel: f64, ell: f64) -> f64 {
    ((1.0 - accel * ell) * (1.0 + accel * ell)).sqrt() / ell
}

/// `sqrt(a^2 - 1/ell^2)` for the hyperbolic orbit.
pub fn hyperbolic_frequency(accel: f64, ell: f64) -> f64 {
    ((accel * ell - 1.0) * (accel * ell + 1.0)).sqrt() / ell
}

/// Elliptic worldline with `cosh(gamma) = (a ell cos(k tau) - 1)/(a ell - cos(k tau))`.
///
/// The orbit is periodic in global time but crosses the Poincare horizon
/// whenever `cos(k tau) <= a ell`; those proper times have no Poincare
/// coordinates and return [`Error::OutsidePatch`]. `a0` is the free
/// constant of the family (conventionally `ell`).
pub fn trajectory_subcritical(tau: f64, accel: f64, ell: f64, a0: f64) -> Result<SpacetimePoint> {
    require(Regime::Subcritical, accel, ell)?;
    if !(a0.is_finite() && a0 > 0.0) {
        return Err(Error::InvalidParameter {
            name: "a0",
            value: a0,
            reason: "must be positive",
        });
    }
    let a_ell = accel * ell;
    let k = elliptic_frequency(accel, ell);
    let (s, c) = (k * tau).sin_cos();
    let gap = c - a_ell;
    if gap <= 0.0 {
        return Err(Error::OutsidePatch { tau });
    }
    let root = ((1.0 - a_ell) * (1.0 + a_ell)).sqrt();
    let cosh_gamma = (a_ell * c - 1.0) / (a_ell - c);
    let sinh_gamma = s * root / gap;
    SpacetimePoint::on_axis(
        a0 / ell * sinh_gamma,
        a0 / ell * cosh_gamma + a0 * accel,
    )
}

/// Parabolic worldline `t = z0 tau / ell`, `z = z0`.
pub fn trajectory_critical(tau: f64, ell: f64, z0: f64) -> Result<SpacetimePoint> {
    SpacetimePoint::on_axis(z0 * tau / ell, z0)
}

/// Hyperbolic worldline `t = (a z0 / w) e^{w tau}`, `z = z0 e^{w tau}`,
/// `w = sqrt(a^2 - 1/ell^2)`.
pub fn trajectory_supercritical(tau: f64, accel: f64, ell: f64, z0: f64) -> Result<SpacetimePoint> {
    require(Regime::Supercritical, accel, ell)?;
    let w = hyperbolic_frequency(accel, ell);
    let growth = (w * tau).exp();
    SpacetimePoint::on_axis(accel * z0 / w * growth, z0 * growth)
}

/// Lag-dependent Wightman function along a stationary worldline.
pub trait StationaryKernel: Sync {
    /// Value at a complex lag; the real axis is approached from below.
    fn eval(&self, lag: Complex64) -> Complex64;

    /// Real parts of the poles on (or just above) the real axis.
    fn singular_lags(&self) -> Vec<f64>;

    /// Kernels that never decay have only a distributional transform.
    fn is_periodic(&self) -> bool {
        false
    }

    /// Exponential decay rate of the tail, if any.
    fn decay_rate(&self) -> Option<f64> {
        None
    }

    fn sample(&self, dtau: f64, eps: f64) -> Result<WightmanSample> {
        check_eps(eps)?;
        if eps == 0.0 {
            let scale = self
                .singular_lags()
                .iter()
                .fold(1.0f64, |m, p| m.max(p.abs()));
            if let Some(p) = self
                .singular_lags()
                .into_iter()
                .find(|p| (dtau - p).abs() <= POLE_FLOOR * scale)
            {
                return Err(Error::Singular {
                    location: format!("lag {p}"),
                });
            }
        }
        let value = self.eval(Complex64::new(dtau, -eps));
        if !(value.re.is_finite() && value.im.is_finite()) {
            return Err(Error::Singular {
                location: format!("lag {dtau}"),
            });
        }
        Ok(WightmanSample {
            value,
            epsilon: eps,
        })
    }
}

/// Inertial detector in flat space, `-1/(4 pi^2 (dtau - i eps)^2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MinkowskiKernel;

impl StationaryKernel for MinkowskiKernel {
    fn eval(&self, lag: Complex64) -> Complex64 {
        -(lag * lag).inv() / (4.0 * PI * PI)
    }

    fn singular_lags(&self) -> Vec<f64> {
        vec![0.0]
    }
}

/// Elliptic (`a ell < 1`) kernel. Periodic with period `2 pi / sqrt(1/ell^2 - a^2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SubcriticalKernel {
    pub accel: f64,
    pub ell: f64,
    pub zeta: f64,
}

impl SubcriticalKernel {
    pub fn new(accel: f64, ell: f64, boundary: Boundary) -> Result<Self> {
        require(Regime::Subcritical, accel, ell)?;
        Ok(Self {
            accel,
            ell,
            zeta: boundary.zeta(),
        })
    }

    pub fn period(&self) -> f64 {
        2.0 * PI / elliptic_frequency(self.accel, self.ell)
    }
}

impl StationaryKernel for SubcriticalKernel {
    fn eval(&self, lag: Complex64) -> Complex64 {
        let a_ell = self.accel * self.ell;
        let one_minus = (1.0 - a_ell) * (1.0 + a_ell);
        let cos = (lag * elliptic_frequency(self.accel, self.ell)).cos();
        let mut w = (cos - 1.0).inv();
        if self.zeta != 0.0 {
            w -= self.zeta * (cos - 2.0 * a_ell * a_ell + 1.0).inv();
        }
        w * one_minus / (8.0 * PI * PI * self.ell * self.ell)
    }

    /// Poles within one period centred on zero.
    fn singular_lags(&self) -> Vec<f64> {
        let mut lags = vec![0.0];
        if self.zeta != 0.0 {
            let a_ell = self.accel * self.ell;
            let arg = 2.0 * a_ell * a_ell - 1.0;
            if arg.abs() <= 1.0 {
                let x = arg.acos() / elliptic_frequency(self.accel, self.ell);
                lags.push(x);
                lags.push(-x);
            }
        }
        lags
    }

    fn is_periodic(&self) -> bool {
        true
    }
}

/// Parabolic (`a ell = 1`) kernel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CriticalKernel {
    pub ell: f64,
    pub zeta: f64,
}

impl CriticalKernel {
    pub fn new(ell: f64, boundary: Boundary) -> Self {
        Self {
            ell,
            zeta: boundary.zeta(),
        }
    }
}

impl StationaryKernel for CriticalKernel {
    fn eval(&self, lag: Complex64) -> Complex64 {
        let sq = lag * lag;
        let mut w = sq.inv();
        if self.zeta != 0.0 {
            w -= self.zeta * (sq - 4.0 * self.ell * self.ell).inv();
        }
        -w / (4.0 * PI * PI)
    }

    fn singular_lags(&self) -> Vec<f64> {
        if self.zeta != 0.0 {
            vec![-2.0 * self.ell, 0.0, 2.0 * self.ell]
        } else {
            vec![0.0]
        }
    }
}

/// Hyperbolic (`a ell > 1`) kernel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SupercriticalKernel {
    pub accel: f64,
    pub ell: f64,
    pub zeta: f64,
}

impl SupercriticalKernel {
    pub fn new(accel: f64, ell: f64, boundary: Boundary) -> Result<Self> {
        require(Regime::Supercritical, accel, ell)?;
        Ok(Self {
            accel,
            ell,
            zeta: boundary.zeta(),
        })
    }

    pub fn frequency(&self) -> f64 {
        hyperbolic_frequency(self.accel, self.ell)
    }

    /// `A_ell = asinh(sqrt(a^2 ell^2 - 1))`.
    pub fn image_rapidity(&self) -> f64 {
        (self.frequency() * self.ell).asinh()
    }
}

impl StationaryKernel for SupercriticalKernel {
    fn eval(&self, lag: Complex64) -> Complex64 {
        let w = self.frequency();
        let half = lag * (0.5 * w);
        let sh = half.sinh();
        let mut out = (sh * sh).inv();
        if self.zeta != 0.0 {
            let rap = self.image_rapidity();
            out -= self.zeta * ((half + rap).sinh() * (half - rap).sinh()).inv();
        }
        -out * (w * w / (16.0 * PI * PI))
    }

    fn singular_lags(&self) -> Vec<f64> {
        if self.zeta != 0.0 {
            let x = 2.0 * self.image_rapidity() / self.frequency();
            vec![-x, 0.0, x]
        } else {
            vec![0.0]
        }
    }

    fn decay_rate(&self) -> Option<f64> {
        Some(self.frequency())
    }
}

pub fn wightman_minkowski(dtau: f64, eps: f64) -> Result<WightmanSample> {
    MinkowskiKernel.sample(dtau, eps)
}

pub fn wightman_subcritical(
    dtau: f64,
    accel: f64,
    ell: f64,
    boundary: Boundary,
    eps: f64,
) -> Result<WightmanSample> {
    let kernel = SubcriticalKernel::new(accel, ell, boundary)?;
    // Reduce onto one period so the pole check sees the nearest pole.
    let period = kernel.period();
    let reduced = dtau - period * (dtau / period).round();
    if eps == 0.0 {
        kernel.sample(reduced, 0.0)?;
    }
    kernel.sample(dtau, eps)
}

pub fn wightman_critical(dtau: f64, ell: f64, boundary: Boundary, eps: f64) -> Result<WightmanSample> {
    CriticalKernel::new(ell, boundary).sample(dtau, eps)
}

pub fn wightman_supercritical(
    dtau: f64,
    accel: f64,
    ell: f64,
    boundary: Boundary,
    eps: f64,
) -> Result<WightmanSample> {
    SupercriticalKernel::new(accel, ell, boundary)?.sample(dtau, eps)
}
