//! Parameters, validation and regime classification.
//!
//! Every phase-level result depends only on the dimensionless groups
//! `a*ell`, `omega0*ell`, `theta`, `mu` and the boundary parameter `zeta`.
//! Lengths and times are otherwise expressed in units of `1/omega0`.

use std::f64::consts::PI;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Half-width of the critical band around `a*ell = 1`.
pub const CRITICAL_TOLERANCE: f64 = 1e-12;

fn check_finite(name: &'static str, value: f64) -> Result<()> {
    if value.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name,
            value,
            reason: "must be finite",
        })
    }
}

fn check_positive(name: &'static str, value: f64) -> Result<()> {
    check_finite(name, value)?;
    if value > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name,
            value,
            reason: "must be positive",
        })
    }
}

fn check_non_negative(name: &'static str, value: f64) -> Result<()> {
    check_finite(name, value)?;
    if value >= 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name,
            value,
            reason: "must be non-negative",
        })
    }
}

/// The two-level atom: energy gap, coupling and initial-state weight angle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AtomParams {
    pub omega0: f64,
    pub mu: f64,
    /// Initial state `cos(theta/2)|+> + sin(theta/2)|->`.
    pub theta: f64,
}

impl AtomParams {
    pub fn new(omega0: f64, mu: f64, theta: f64) -> Result<Self> {
        let atom = Self { omega0, mu, theta };
        atom.validate()?;
        Ok(atom)
    }

    /// `theta` outside `[0, pi]` is rejected, never clamped.
    pub fn validate(&self) -> Result<()> {
        check_positive("omega0", self.omega0)?;
        check_positive("mu", self.mu)?;
        check_finite("theta", self.theta)?;
        if !(0.0..=PI).contains(&self.theta) {
            return Err(Error::InvalidParameter {
                name: "theta",
                value: self.theta,
                reason: "must lie in [0, pi]",
            });
        }
        Ok(())
    }

    /// Same atom with a different weight angle.
    pub fn with_theta(self, theta: f64) -> Result<Self> {
        Self::new(self.omega0, self.mu, theta)
    }

    /// Same atom with a different coupling.
    pub fn with_mu(self, mu: f64) -> Result<Self> {
        Self::new(self.omega0, mu, self.theta)
    }
}

/// Field boundary condition at the AdS boundary `z = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Boundary {
    Dirichlet,
    Transparent,
    Neumann,
}

impl Boundary {
    pub const ALL: [Boundary; 3] = [Boundary::Dirichlet, Boundary::Transparent, Boundary::Neumann];

    /// `+1` Dirichlet, `0` transparent, `-1` Neumann.
    pub fn zeta(self) -> f64 {
        self.zeta_int() as f64
    }

    pub fn zeta_int(self) -> i8 {
        match self {
            Boundary::Dirichlet => 1,
            Boundary::Transparent => 0,
            Boundary::Neumann => -1,
        }
    }

    pub fn from_zeta(zeta: i8) -> Result<Self> {
        match zeta {
            1 => Ok(Boundary::Dirichlet),
            0 => Ok(Boundary::Transparent),
            -1 => Ok(Boundary::Neumann),
            other => Err(Error::InvalidParameter {
                name: "zeta",
                value: other as f64,
                reason: "must be -1, 0 or +1",
            }),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Boundary::Dirichlet => "dirichlet",
            Boundary::Transparent => "transparent",
            Boundary::Neumann => "neumann",
        }
    }
}

impl fmt::Display for Boundary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Spacetime {
    #[serde(rename = "ads")]
    AntiDeSitter,
    #[serde(rename = "ds")]
    DeSitter,
    Minkowski,
}

impl Spacetime {
    pub fn name(self) -> &'static str {
        match self {
            Spacetime::AntiDeSitter => "ads",
            Spacetime::DeSitter => "ds",
            Spacetime::Minkowski => "minkowski",
        }
    }
}

impl fmt::Display for Spacetime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Background spacetime and the atom's trajectory.
///
/// `ell` is the curvature radius (ignored for Minkowski), `accel` the proper
/// acceleration. `boundary` is required for AdS and ignored elsewhere.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScenarioConfig {
    pub spacetime: Spacetime,
    pub ell: f64,
    pub accel: f64,
    pub boundary: Option<Boundary>,
}

impl ScenarioConfig {
    pub fn anti_de_sitter(ell: f64, accel: f64, boundary: Boundary) -> Result<Self> {
        let cfg = Self {
            spacetime: Spacetime::AntiDeSitter,
            ell,
            accel,
            boundary: Some(boundary),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    /// Static atom in de Sitter space with proper acceleration `accel`
    /// (`accel = 0` is the comoving atom).
    pub fn de_sitter(ell: f64, accel: f64) -> Result<Self> {
        let cfg = Self {
            spacetime: Spacetime::DeSitter,
            ell,
            accel,
            boundary: None,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    /// Inertial atom in flat space.
    pub fn minkowski() -> Self {
        Self {
            spacetime: Spacetime::Minkowski,
            ell: f64::INFINITY,
            accel: 0.0,
            boundary: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        check_non_negative("accel", self.accel)?;
        match self.spacetime {
            Spacetime::Minkowski => {
                if self.accel != 0.0 {
                    return Err(Error::Unsupported(
                        "only the inertial atom is modelled in Minkowski space",
                    ));
                }
            }
            Spacetime::DeSitter => check_positive("ell", self.ell)?,
            Spacetime::AntiDeSitter => {
                check_positive("ell", self.ell)?;
                if self.boundary.is_none() {
                    return Err(Error::Unsupported("AdS scenarios need a boundary condition"));
                }
            }
        }
        Ok(())
    }

    /// Boundary parameter, zero outside AdS.
    pub fn zeta(&self) -> f64 {
        match self.spacetime {
            Spacetime::AntiDeSitter => self.boundary.map_or(0.0, Boundary::zeta),
            _ => 0.0,
        }
    }

    pub fn regime(&self) -> Result<Option<RegimeClass>> {
        match self.spacetime {
            Spacetime::AntiDeSitter => classify_regime(self.accel, self.ell).map(Some),
            _ => Ok(None),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Regime {
    Subcritical,
    Critical,
    Supercritical,
}

impl Regime {
    pub fn name(self) -> &'static str {
        match self {
            Regime::Subcritical => "subcritical",
            Regime::Critical => "critical",
            Regime::Supercritical => "supercritical",
        }
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Result of [`classify_regime`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RegimeClass {
    pub regime: Regime,
    pub a_ell: f64,
    pub tolerance: f64,
}

/// Elliptic (`a*ell < 1`), parabolic (`a*ell = 1`) or hyperbolic (`a*ell > 1`)
/// AdS worldline.
pub fn classify_regime(accel: f64, ell: f64) -> Result<RegimeClass> {
    check_non_negative("accel", accel)?;
    check_positive("ell", ell)?;
    let a_ell = accel * ell;
    check_finite("a*ell", a_ell)?;
    let regime = if (a_ell - 1.0).abs() <= CRITICAL_TOLERANCE {
        Regime::Critical
    } else if a_ell < 1.0 {
        Regime::Subcritical
    } else {
        Regime::Supercritical
    };
    Ok(RegimeClass {
        regime,
        a_ell,
        tolerance: CRITICAL_TOLERANCE,
    })
}

/// The dimensionless inputs every downstream formula consumes.
///
/// `a_ell` and `omega0_ell` are `None` for Minkowski, `zeta` is `None`
/// outside AdS.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DimensionlessGroups {
    pub a_ell: Option<f64>,
    pub omega0_ell: Option<f64>,
    pub theta: f64,
    pub mu: f64,
    pub zeta: Option<i8>,
}

pub fn nondimensionalize(atom: &AtomParams, cfg: &ScenarioConfig) -> Result<DimensionlessGroups> {
    atom.validate()?;
    cfg.validate()?;
    let (a_ell, omega0_ell) = match cfg.spacetime {
        Spacetime::Minkowski => (None, None),
        _ => (Some(cfg.accel * cfg.ell), Some(atom.omega0 * cfg.ell)),
    };
    let zeta = match cfg.spacetime {
        Spacetime::AntiDeSitter => cfg.boundary.map(Boundary::zeta_int),
        _ => None,
    };
    Ok(DimensionlessGroups {
        a_ell,
        omega0_ell,
        theta: atom.theta,
        mu: atom.mu,
        zeta,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn regime_examples() {
        assert_eq!(classify_regime(0.5, 1.0).unwrap().regime, Regime::Subcritical);
        assert_eq!(classify_regime(1.0, 1.0).unwrap().regime, Regime::Critical);
        assert_eq!(classify_regime(2.0, 1.0).unwrap().regime, Regime::Supercritical);
        let c = classify_regime(2.0, 0.5).unwrap();
        assert_eq!(c.regime, Regime::Critical);
        assert_eq!(c.a_ell, 1.0);
        assert_eq!(c.tolerance, CRITICAL_TOLERANCE);
        assert_eq!(classify_regime(0.0, 3.0).unwrap().regime, Regime::Subcritical);
        assert_eq!(
            classify_regime(1.0 + 1e-9, 1.0).unwrap().regime,
            Regime::Supercritical
        );
    }

    #[test]
    fn regime_rejects_bad_input() {
        assert!(classify_regime(-1.0, 1.0).is_err());
        assert!(classify_regime(1.0, 0.0).is_err());
        assert!(classify_regime(f64::NAN, 1.0).is_err());
        assert!(classify_regime(1.0, f64::INFINITY).is_err());
    }

    #[test]
    fn atom_validation() {
        assert!(AtomParams::new(1.0, 0.1, 0.0).is_ok());
        assert!(AtomParams::new(1.0, 0.1, PI).is_ok());
        assert!(AtomParams::new(1.0, 0.1, PI + 1e-9).is_err());
        assert!(AtomParams::new(1.0, 0.1, -1e-9).is_err());
        assert!(AtomParams::new(0.0, 0.1, 1.0).is_err());
        assert!(AtomParams::new(1.0, 0.0, 1.0).is_err());
    }

    #[test]
    fn scenario_validation() {
        assert!(ScenarioConfig::anti_de_sitter(0.0, 1.0, Boundary::Neumann).is_err());
        assert!(ScenarioConfig::de_sitter(-1.0, 1.0).is_err());
        assert!(ScenarioConfig::de_sitter(1.0, -1.0).is_err());
        let mut m = ScenarioConfig::minkowski();
        assert!(m.validate().is_ok());
        m.accel = 1.0;
        assert!(m.validate().is_err());
    }

    #[test]
    fn zeta_round_trip() {
        for b in Boundary::ALL {
            assert_eq!(Boundary::from_zeta(b.zeta_int()).unwrap(), b);
        }
        assert!(Boundary::from_zeta(2).is_err());
    }

    #[test]
    fn groups_examples() {
        let atom = AtomParams::new(2.0, 0.1, 0.3).unwrap();
        let cfg = ScenarioConfig::anti_de_sitter(0.5, 3.0, Boundary::Dirichlet).unwrap();
        let g = nondimensionalize(&atom, &cfg).unwrap();
        assert_eq!(g.a_ell, Some(1.5));
        assert_eq!(g.omega0_ell, Some(1.0));
        assert_eq!(g.zeta, Some(1));

        let atom = AtomParams::new(1.0, 0.1, 0.3).unwrap();
        let g = nondimensionalize(&atom, &ScenarioConfig::de_sitter(1.0, 0.0).unwrap()).unwrap();
        assert_eq!(g.a_ell, Some(0.0));
        assert_eq!(g.omega0_ell, Some(1.0));
        assert_eq!(g.zeta, None);

        let g = nondimensionalize(&atom, &ScenarioConfig::minkowski()).unwrap();
        assert_eq!(g.a_ell, None);
        assert_eq!(g.omega0_ell, None);
    }

    proptest! {
        #[test]
        fn classification_is_monotone(x in 0.0f64..3.0, y in 0.0f64..3.0, ell in 0.1f64..10.0) {
            let (lo, hi) = if x <= y { (x, y) } else { (y, x) };
            let r_lo = classify_regime(lo / ell, ell).unwrap().regime;
            let r_hi = classify_regime(hi / ell, ell).unwrap().regime;
            prop_assert!(r_lo <= r_hi);
        }
    }
}
