//! Field response: spectral densities `G(+-omega0)`, the Kossakowski rates
//! `(A, B)` and the effective temperatures seen by the atom.
//!
//! The rates carry the `mu^2 omega0 / 8 pi` prefactor; `A >= |B|` holds in
//! every scenario. The Lamb shift is not modelled, so the effective gap is
//! the bare gap.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::correlations::hyperbolic_frequency;
use crate::model::{classify_regime, AtomParams, Boundary, Regime, ScenarioConfig, Spacetime};
use crate::numerics::{asinh_over, coth, sinc, tanh};
use crate::{Error, Result};

/// Dissipator rates of the two-level master equation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KossakowskiPair {
    pub a: f64,
    pub b: f64,
}

impl KossakowskiPair {
    pub const ZERO: KossakowskiPair = KossakowskiPair { a: 0.0, b: 0.0 };

    /// `R = B/A`, undefined when `A = 0`.
    pub fn ratio(&self) -> Option<f64> {
        (self.a > 0.0).then(|| self.b / self.a)
    }

    /// `A >= |B| >= 0`, i.e. `G(+-omega0) >= 0`.
    pub fn is_positive(&self) -> bool {
        self.a >= 0.0 && self.a >= self.b.abs()
    }

    /// Invert `A = mu^2/4 (G+ + G-)`, `B = mu^2/4 (G+ - G-)`.
    pub fn spectral(&self, mu: f64) -> SpectralPair {
        let scale = 2.0 / (mu * mu);
        SpectralPair {
            g_plus: scale * (self.a + self.b),
            g_minus: scale * (self.a - self.b),
        }
    }

    pub fn from_spectral(g: SpectralPair, mu: f64) -> Self {
        let scale = mu * mu / 4.0;
        Self {
            a: scale * (g.g_plus + g.g_minus),
            b: scale * (g.g_plus - g.g_minus),
        }
    }
}

/// Fourier transform of the Wightman function at `+omega0` and `-omega0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectralPair {
    pub g_plus: f64,
    pub g_minus: f64,
}

/// Renormalized atomic gap `Omega`; equal to `omega0` with the Lamb shift dropped.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EffectiveGap(f64);

impl EffectiveGap {
    pub fn new(omega: f64) -> Result<Self> {
        if omega.is_finite() && omega > 0.0 {
            Ok(Self(omega))
        } else {
            Err(Error::InvalidParameter {
                name: "Omega",
                value: omega,
                reason: "effective gap must be positive",
            })
        }
    }

    pub fn bare(atom: &AtomParams) -> Self {
        Self(atom.omega0)
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

fn rate_prefactor(atom: &AtomParams) -> f64 {
    atom.mu * atom.mu * atom.omega0 / (8.0 * PI)
}

/// Closed-form transform of the parabolic-orbit Wightman function.
pub fn fourier_critical(omega0: f64, ell: f64, boundary: Boundary) -> SpectralPair {
    SpectralPair {
        g_plus: omega0 / (2.0 * PI) - boundary.zeta() * (2.0 * omega0 * ell).sin() / (4.0 * PI * ell),
        g_minus: 0.0,
    }
}

/// Closed-form transform of the hyperbolic-orbit Wightman function at `omega`
/// (either sign).
pub fn fourier_supercritical(omega: f64, accel: f64, ell: f64, boundary: Boundary) -> Result<SpectralPair> {
    let class = classify_regime(accel, ell)?;
    if class.regime != Regime::Supercritical {
        return Err(Error::WrongRegime {
            expected: "supercritical",
            a_ell: class.a_ell,
        });
    }
    let w = omega.abs();
    let bracket = 1.0 + ns_factor(w, accel, ell, boundary)?;
    let x = PI * w / hyperbolic_frequency(accel, ell);
    let c = coth(x);
    Ok(SpectralPair {
        g_plus: w / (4.0 * PI) * bracket * (c + 1.0),
        g_minus: w / (4.0 * PI) * bracket * (c - 1.0),
    })
}

/// Boundary-dependent factor of the hyperbolic-orbit response,
/// `N_s = -(zeta / 2 a omega0 ell^2) sin[2 omega0 ell asinh(r)/r]`, `r = sqrt(a^2 ell^2 - 1)`.
pub fn ns_factor(omega0: f64, accel: f64, ell: f64, boundary: Boundary) -> Result<f64> {
    let class = classify_regime(accel, ell)?;
    if class.regime != Regime::Supercritical {
        return Err(Error::WrongRegime {
            expected: "supercritical",
            a_ell: class.a_ell,
        });
    }
    Ok(ns_unchecked(omega0, accel, ell, boundary.zeta()))
}

fn ns_unchecked(omega0: f64, accel: f64, ell: f64, zeta: f64) -> f64 {
    if zeta == 0.0 {
        return 0.0;
    }
    let a_ell = accel * ell;
    let r = ((a_ell - 1.0) * (a_ell + 1.0)).sqrt();
    -zeta / (2.0 * accel * omega0 * ell * ell) * (2.0 * omega0 * ell * asinh_over(r)).sin()
}

/// Argument of the hyperbolic-orbit coth, `pi omega0 ell / sqrt(a^2 ell^2 - 1)`.
pub fn supercritical_thermal_argument(omega0: f64, accel: f64, ell: f64) -> f64 {
    PI * omega0 / hyperbolic_frequency(accel, ell)
}

/// `omega0 / (2 T_DU) = pi omega0 ell / sqrt(a^2 ell^2 + 1)`.
pub fn de_sitter_thermal_argument(omega0: f64, accel: f64, ell: f64) -> f64 {
    PI * omega0 * ell / (accel * ell).hypot(1.0)
}

/// Kossakowski rates for any scenario.
pub fn kossakowski(atom: &AtomParams, cfg: &ScenarioConfig) -> Result<KossakowskiPair> {
    atom.validate()?;
    cfg.validate()?;
    let c = rate_prefactor(atom);
    let pair = match cfg.spacetime {
        Spacetime::Minkowski => KossakowskiPair { a: c, b: c },
        Spacetime::DeSitter => KossakowskiPair {
            a: c * coth(de_sitter_thermal_argument(atom.omega0, cfg.accel, cfg.ell)),
            b: c,
        },
        Spacetime::AntiDeSitter => {
            let zeta = cfg.zeta();
            match classify_regime(cfg.accel, cfg.ell)?.regime {
                // Elliptic orbits see no thermal response.
                Regime::Subcritical => return Ok(KossakowskiPair::ZERO),
                Regime::Critical => {
                    let x = 2.0 * atom.omega0 * cfg.ell;
                    let ab = c * (1.0 - zeta * sinc(x));
                    KossakowskiPair { a: ab, b: ab }
                }
                Regime::Supercritical => {
                    let b = c * (1.0 + ns_unchecked(atom.omega0, cfg.accel, cfg.ell, zeta));
                    let x = supercritical_thermal_argument(atom.omega0, cfg.accel, cfg.ell);
                    KossakowskiPair { a: b * coth(x), b }
                }
            }
        }
    };
    if !(pair.a > 0.0) {
        return Err(Error::NonPositiveRate { a: pair.a });
    }
    Ok(pair)
}

/// `B/A` straight from the detailed-balance form, without forming `A` and `B`.
pub fn detailed_balance_ratio(atom: &AtomParams, cfg: &ScenarioConfig) -> Result<Option<f64>> {
    cfg.validate()?;
    Ok(match cfg.spacetime {
        Spacetime::Minkowski => Some(1.0),
        Spacetime::DeSitter => Some(tanh(de_sitter_thermal_argument(atom.omega0, cfg.accel, cfg.ell))),
        Spacetime::AntiDeSitter => match classify_regime(cfg.accel, cfg.ell)?.regime {
            Regime::Subcritical => None,
            Regime::Critical => Some(1.0),
            Regime::Supercritical => Some(tanh(supercritical_thermal_argument(
                atom.omega0,
                cfg.accel,
                cfg.ell,
            ))),
        },
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TemperatureKind {
    /// `sqrt(a^2 - 1/ell^2) / 2 pi`, AdS with `a ell >= 1`.
    AdsUnruh,
    /// `1 / 2 pi ell`, comoving de Sitter atom.
    GibbonsHawking,
    /// `sqrt(1/ell^2 + a^2) / 2 pi`, accelerated de Sitter atom.
    DeSitterUnruh,
    /// No thermal response (subcritical AdS, inertial Minkowski).
    None,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Temperature {
    pub value: f64,
    pub kind: TemperatureKind,
}

impl Temperature {
    pub fn is_thermal(&self) -> bool {
        self.kind != TemperatureKind::None
    }
}

pub fn temperature(cfg: &ScenarioConfig) -> Result<Temperature> {
    cfg.validate()?;
    let t = match cfg.spacetime {
        Spacetime::Minkowski => Temperature {
            value: 0.0,
            kind: TemperatureKind::None,
        },
        Spacetime::DeSitter if cfg.accel == 0.0 => Temperature {
            value: 1.0 / (2.0 * PI * cfg.ell),
            kind: TemperatureKind::GibbonsHawking,
        },
        Spacetime::DeSitter => Temperature {
            value: (1.0 / cfg.ell).hypot(cfg.accel) / (2.0 * PI),
            kind: TemperatureKind::DeSitterUnruh,
        },
        Spacetime::AntiDeSitter => match classify_regime(cfg.accel, cfg.ell)?.regime {
            Regime::Subcritical => Temperature {
                value: 0.0,
                kind: TemperatureKind::None,
            },
            Regime::Critical => Temperature {
                value: 0.0,
                kind: TemperatureKind::AdsUnruh,
            },
            Regime::Supercritical => Temperature {
                value: hyperbolic_frequency(cfg.accel, cfg.ell) / (2.0 * PI),
                kind: TemperatureKind::AdsUnruh,
            },
        },
    };
    Ok(t)
}
