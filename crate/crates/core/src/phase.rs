//! Geometric phase acquired by the open atom over a proper-time interval.
//!
//! The exact route evaluates the closed-form antiderivative `F(phi)` of the
//! phase integrand, with `phi = omega0 tau`. Near-degenerate parameters fall
//! back to adaptive quadrature of the same integrand, and the `theta = 0`,
//! `theta = pi` and `A = 0` cases are integrated by hand.
//!
//! The perturbative route keeps terms through `O(mu^2)` over one period
//! `T = 2 pi / omega0`, and the correction `delta` is measured against the
//! inertial Minkowski phase at the same order.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::model::{
    classify_regime, nondimensionalize, AtomParams, DimensionlessGroups, Regime, ScenarioConfig,
    Spacetime,
};
use crate::numerics::{coth, coth_minus_one, planck, sinc};
use crate::oracles::integrate_phase_numeric;
use crate::quadrature::QuadratureSpec;
use crate::response::{
    de_sitter_thermal_argument, kossakowski, ns_factor, supercritical_thermal_argument,
    EffectiveGap, KossakowskiPair,
};
use crate::{Error, Result};

/// `|Q|` below `Q_GUARD * (1 + |R|)` is treated as zero.
pub const Q_GUARD: f64 = 1e-12;

/// Ratio used for the strong inequalities selecting an asymptotic branch:
/// `x << y` means `x / y <= 1 / ASYMPTOTIC_MARGIN`.
pub const ASYMPTOTIC_MARGIN: f64 = 10.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PhaseMethod {
    ExactF,
    Quadrature,
    PerturbativeMu2,
    AnalyticLimit,
}

impl PhaseMethod {
    pub fn name(self) -> &'static str {
        match self {
            PhaseMethod::ExactF => "exact_f",
            PhaseMethod::Quadrature => "quadrature",
            PhaseMethod::PerturbativeMu2 => "perturbative_mu2",
            PhaseMethod::AnalyticLimit => "analytic_limit",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhaseReport {
    pub phi: f64,
    pub method: PhaseMethod,
    /// AdS regime, `None` elsewhere or when no scenario was supplied.
    pub regime: Option<Regime>,
    pub time: f64,
    pub groups: Option<DimensionlessGroups>,
}

/// Shift of the phase relative to the inertial Minkowski atom.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CorrectionReport {
    pub delta: f64,
    pub delta_over_mu2: f64,
    /// The Minkowski phase the correction is measured against.
    pub baseline: f64,
    /// `baseline + delta`.
    pub phi: f64,
    pub spacetime: Spacetime,
    pub regime: Option<Regime>,
}

impl CorrectionReport {
    fn new(atom: &AtomParams, cfg: &ScenarioConfig, delta_over_mu2: f64, baseline: f64) -> Result<Self> {
        let delta = atom.mu * atom.mu * delta_over_mu2;
        Ok(Self {
            delta,
            delta_over_mu2,
            baseline,
            phi: baseline + delta,
            spacetime: cfg.spacetime,
            regime: cfg.regime()?.map(|c| c.regime),
        })
    }
}

/// One oscillation period of the bare atom.
pub fn one_period(atom: &AtomParams) -> f64 {
    2.0 * PI / atom.omega0
}

/// `S(phi) = sqrt(R^2 e^{8 A phi/omega0} + (1 - Q^2 - R^2) e^{4 A phi/omega0} + Q^2)`.
pub fn s_aux(phi: f64, a: f64, r: f64, q: f64, omega0: f64) -> f64 {
    let e = (4.0 * a * phi / omega0).exp();
    (r * r * e * e + (1.0 - q * q - r * r) * e + q * q).sqrt()
}

fn positive_log(which: &'static str, value: f64) -> Result<f64> {
    if value > 0.0 && value.is_finite() {
        Ok(value.ln())
    } else {
        Err(Error::InternalInconsistency { which, value })
    }
}

/// Antiderivative of the phase integrand in `phi = omega0 tau`, evaluated
/// literally. Prefer [`f_aux_increment`] for differences.
pub fn f_aux(phi: f64, a: f64, r: f64, q: f64, omega0: f64) -> Result<f64> {
    check_antiderivative_inputs(a, r, q)?;
    let e = (4.0 * a * phi / omega0).exp();
    let s = s_aux(phi, a, r, q, omega0);
    let base = 1.0 - q * q - r * r;
    let first = positive_log("first log", (base + 2.0 * r * r * e) / (2.0 * r) + s)?;
    let second = positive_log(
        "second log",
        base + 2.0 * q * q / e + 2.0 * q.abs() * s / e,
    )?;
    Ok(-phi / 2.0 - omega0 / (8.0 * a) * (first + q.signum() * second))
}

/// `F(phi) - F(0)` without the cancellation of the literal form at small `A phi`.
pub fn f_aux_increment(phi: f64, a: f64, r: f64, q: f64, omega0: f64) -> Result<f64> {
    check_antiderivative_inputs(a, r, q)?;
    let x = 4.0 * a * phi / omega0;
    let m = x.exp_m1();
    let e = 1.0 + m;
    let s = s_aux(phi, a, r, q, omega0);
    let c = q - r;
    let qa = q.abs();

    let x1_0 = (1.0 - c) * (1.0 + 2.0 * r + c) / (2.0 * r);
    let dx1 = m * (r + (r * r * e + 1.0 - q * q) / (s + 1.0));
    let x2_0 = (1.0 + qa - r) * (1.0 + qa + r);
    let dx2 = 2.0 * qa * m / e * (-qa + ((r * r - 1.0) * e - q * q) / (s + e));

    let ratio1 = dx1 / x1_0;
    let ratio2 = dx2 / x2_0;
    if !(ratio1 > -1.0 && ratio1.is_finite()) {
        return Err(Error::InternalInconsistency {
            which: "first log",
            value: 1.0 + ratio1,
        });
    }
    if !(ratio2 > -1.0 && ratio2.is_finite()) {
        return Err(Error::InternalInconsistency {
            which: "second log",
            value: 1.0 + ratio2,
        });
    }
    Ok(-phi / 2.0 - omega0 / (8.0 * a) * (ratio1.ln_1p() + q.signum() * ratio2.ln_1p()))
}

fn check_antiderivative_inputs(a: f64, r: f64, q: f64) -> Result<()> {
    if !(a > 0.0) {
        return Err(Error::NonPositiveRate { a });
    }
    if r.abs() < Q_GUARD {
        return Err(Error::InvalidParameter {
            name: "R",
            value: r,
            reason: "B/A must be non-zero for the antiderivative",
        });
    }
    if q.abs() < Q_GUARD * (1.0 + r.abs()) {
        return Err(Error::NearDegenerateQ { q });
    }
    Ok(())
}

fn check_time(time: f64) -> Result<()> {
    if time.is_finite() && time >= 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name: "T",
            value: time,
            reason: "evolution time must be finite and non-negative",
        })
    }
}

/// Exact geometric phase accumulated over `[0, time]` for given rates.
pub fn geometric_phase_exact(
    atom: &AtomParams,
    pair: &KossakowskiPair,
    omega: EffectiveGap,
    time: f64,
) -> Result<PhaseReport> {
    atom.validate()?;
    check_time(time)?;
    if !pair.is_positive() {
        return Err(Error::InvalidParameter {
            name: "A",
            value: pair.a,
            reason: "rates must satisfy A >= |B|",
        });
    }
    let big_omega = omega.value();
    let theta = atom.theta;
    let report = |phi, method| PhaseReport {
        phi,
        method,
        regime: None,
        time,
        groups: None,
    };

    if pair.a == 0.0 {
        let phi = -big_omega * time * (1.0 - theta.cos()) / 2.0;
        return Ok(report(phi, PhaseMethod::AnalyticLimit));
    }

    let r = pair.b / pair.a;
    let q = r + theta.cos();
    if theta == 0.0 || theta == PI {
        // rho3 = Q e^{-4 A tau} - R: the state stays diagonal and the
        // integrand is a step at the sign change of rho3.
        let start_lower = theta == PI;
        let flip = r / q;
        let crossing = (flip > 0.0 && flip < 1.0).then(|| (q / r).ln() / (4.0 * pair.a));
        let lower_time = match (start_lower, crossing) {
            (true, None) => time,
            (true, Some(t)) => time.min(t),
            (false, None) => 0.0,
            (false, Some(t)) => (time - t).max(0.0),
        };
        return Ok(report(-big_omega * lower_time, PhaseMethod::AnalyticLimit));
    }

    if q.abs() < Q_GUARD * (1.0 + r.abs()) || r.abs() < Q_GUARD {
        let phi = integrate_phase_numeric(atom, pair, omega, time, &QuadratureSpec::default())?;
        return Ok(report(phi.phi, PhaseMethod::Quadrature));
    }

    let increment = f_aux_increment(atom.omega0 * time, pair.a, r, q, atom.omega0)?;
    Ok(report(big_omega / atom.omega0 * increment, PhaseMethod::ExactF))
}

/// Exact phase for a scenario; `time` defaults to one period.
pub fn geometric_phase(atom: &AtomParams, cfg: &ScenarioConfig, time: Option<f64>) -> Result<PhaseReport> {
    let groups = nondimensionalize(atom, cfg)?;
    let pair = kossakowski(atom, cfg).or_else(|e| match (e, cfg.regime()?) {
        (_, Some(c)) if c.regime == Regime::Subcritical => Ok(KossakowskiPair::ZERO),
        (e, _) => Err(e),
    })?;
    let time = time.unwrap_or_else(|| one_period(atom));
    let mut report = geometric_phase_exact(atom, &pair, EffectiveGap::bare(atom), time)?;
    report.regime = cfg.regime()?.map(|c| c.regime);
    report.groups = Some(groups);
    Ok(report)
}

/// Unitary phase `-pi (1 - cos theta)` of the closed atom over one period.
pub fn closed_phase(theta: f64) -> f64 {
    -PI * (1.0 - theta.cos())
}

/// Inertial Minkowski phase through `O(mu^2)`.
pub fn minkowski_phase(atom: &AtomParams) -> f64 {
    let (s, c) = atom.theta.sin_cos();
    closed_phase(atom.theta) - atom.mu * atom.mu * PI / 4.0 * (2.0 + c) * s * s
}

/// `delta / mu^2` from the `O(mu^2)` closed forms.
pub fn correction_over_mu2(atom: &AtomParams, cfg: &ScenarioConfig) -> Result<f64> {
    atom.validate()?;
    cfg.validate()?;
    let (s, c) = atom.theta.sin_cos();
    let s2 = s * s;
    Ok(match cfg.spacetime {
        Spacetime::Minkowski => 0.0,
        Spacetime::DeSitter => {
            let x = de_sitter_thermal_argument(atom.omega0, cfg.accel, cfg.ell);
            -PI / 2.0 * s2 * c * planck(2.0 * x)
        }
        Spacetime::AntiDeSitter => {
            let zeta = cfg.zeta();
            match classify_regime(cfg.accel, cfg.ell)?.regime {
                Regime::Subcritical => PI / 4.0 * (2.0 + c) * s2,
                Regime::Critical => zeta * PI / 4.0 * sinc(2.0 * atom.omega0 * cfg.ell) * (2.0 + c) * s2,
                Regime::Supercritical => {
                    let boundary = cfg.boundary.expect("validated AdS config has a boundary");
                    let ns = ns_factor(atom.omega0, cfg.accel, cfg.ell, boundary)?;
                    if !(1.0 + ns > 0.0) {
                        return Err(Error::NonPositiveRate { a: 1.0 + ns });
                    }
                    let x = supercritical_thermal_argument(atom.omega0, cfg.accel, cfg.ell);
                    -PI / 4.0 * s2 * ((2.0 + c * coth(x)) * ns + c * coth_minus_one(x))
                }
            }
        }
    })
}

/// Phase over one period through `O(mu^2)`.
pub fn phase_perturbative(atom: &AtomParams, cfg: &ScenarioConfig) -> Result<PhaseReport> {
    let groups = nondimensionalize(atom, cfg)?;
    let delta = atom.mu * atom.mu * correction_over_mu2(atom, cfg)?;
    Ok(PhaseReport {
        phi: minkowski_phase(atom) + delta,
        method: PhaseMethod::PerturbativeMu2,
        regime: cfg.regime()?.map(|c| c.regime),
        time: one_period(atom),
        groups: Some(groups),
    })
}

/// `delta = Phi - Phi_M` through `O(mu^2)`.
pub fn correction(atom: &AtomParams, cfg: &ScenarioConfig) -> Result<CorrectionReport> {
    let d = correction_over_mu2(atom, cfg)?;
    CorrectionReport::new(atom, cfg, d, minkowski_phase(atom))
}

/// `delta` from exact phases of the scenario and of the inertial atom.
pub fn correction_exact(atom: &AtomParams, cfg: &ScenarioConfig) -> Result<CorrectionReport> {
    let phi = geometric_phase(atom, cfg, None)?.phi;
    let baseline = geometric_phase(atom, &ScenarioConfig::minkowski(), None)?.phi;
    CorrectionReport::new(atom, cfg, (phi - baseline) / (atom.mu * atom.mu), baseline)
}

/// Limiting forms of the AdS correction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AsymptoticBranch {
    /// Parabolic orbit with `omega0 ell << 1`.
    CriticalSmallRadius,
    /// `ell omega0 << r < 1`.
    SmallRadiusModerate,
    /// `r >> 1 >> ell omega0`.
    SmallRadiusLarge,
    /// `r < 1 << ell omega0`.
    LargeRadiusModerate,
    /// `r >> ell omega0 >> 1`, the flat-space thermal limit.
    LargeRadiusThermal,
}

impl AsymptoticBranch {
    pub const ALL: [AsymptoticBranch; 5] = [
        AsymptoticBranch::CriticalSmallRadius,
        AsymptoticBranch::SmallRadiusModerate,
        AsymptoticBranch::SmallRadiusLarge,
        AsymptoticBranch::LargeRadiusModerate,
        AsymptoticBranch::LargeRadiusThermal,
    ];

    pub fn name(self) -> &'static str {
        match self {
            AsymptoticBranch::CriticalSmallRadius => "critical_small_radius",
            AsymptoticBranch::SmallRadiusModerate => "small_radius_moderate",
            AsymptoticBranch::SmallRadiusLarge => "small_radius_large",
            AsymptoticBranch::LargeRadiusModerate => "large_radius_moderate",
            AsymptoticBranch::LargeRadiusThermal => "large_radius_thermal",
        }
    }

    fn regime(self) -> Regime {
        match self {
            AsymptoticBranch::CriticalSmallRadius => Regime::Critical,
            _ => Regime::Supercritical,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AsymptoticCorrection {
    pub branch: AsymptoticBranch,
    pub report: CorrectionReport,
}

fn much_less(x: f64, y: f64) -> bool {
    x * ASYMPTOTIC_MARGIN <= y
}

/// Branch whose validity conditions hold, if any.
pub fn select_branch(atom: &AtomParams, cfg: &ScenarioConfig) -> Result<Option<AsymptoticBranch>> {
    atom.validate()?;
    if cfg.spacetime != Spacetime::AntiDeSitter {
        return Err(Error::Unsupported("asymptotic corrections are defined for AdS only"));
    }
    cfg.validate()?;
    let class = classify_regime(cfg.accel, cfg.ell)?;
    let w = atom.omega0 * cfg.ell;
    Ok(match class.regime {
        Regime::Subcritical => None,
        Regime::Critical => much_less(w, 1.0).then_some(AsymptoticBranch::CriticalSmallRadius),
        Regime::Supercritical => {
            let r = ((class.a_ell - 1.0) * (class.a_ell + 1.0)).sqrt();
            if much_less(w, r) && r < 1.0 {
                Some(AsymptoticBranch::SmallRadiusModerate)
            } else if much_less(1.0, r) && much_less(w, 1.0) {
                Some(AsymptoticBranch::SmallRadiusLarge)
            } else if r < 1.0 && much_less(1.0, w) {
                Some(AsymptoticBranch::LargeRadiusModerate)
            } else if much_less(w, r) && much_less(1.0, w) {
                Some(AsymptoticBranch::LargeRadiusThermal)
            } else {
                None
            }
        }
    })
}

/// Evaluate the limiting form of `branch` without checking its validity
/// conditions; only the regime must match.
pub fn asymptotic_branch_delta(
    branch: AsymptoticBranch,
    atom: &AtomParams,
    cfg: &ScenarioConfig,
) -> Result<CorrectionReport> {
    atom.validate()?;
    if cfg.spacetime != Spacetime::AntiDeSitter {
        return Err(Error::Unsupported("asymptotic corrections are defined for AdS only"));
    }
    cfg.validate()?;
    let class = classify_regime(cfg.accel, cfg.ell)?;
    if class.regime != branch.regime() {
        return Err(Error::WrongRegime {
            expected: branch.regime().name(),
            a_ell: class.a_ell,
        });
    }
    let (s, c) = atom.theta.sin_cos();
    let s2 = s * s;
    let zeta = cfg.zeta();
    let (w0, ell, a) = (atom.omega0, cfg.ell, cfg.accel);
    let w = w0 * ell;
    let r = ((class.a_ell - 1.0) * (class.a_ell + 1.0)).max(0.0).sqrt();
    let d = match branch {
        AsymptoticBranch::CriticalSmallRadius => {
            zeta * PI * (2.0 + c) * s2 * (0.25 - w * w / 6.0)
        }
        AsymptoticBranch::SmallRadiusModerate => {
            -PI * s2 / 4.0 * (r * (1.0 - zeta) * c / (w * PI) - 2.0 * zeta - c)
        }
        AsymptoticBranch::SmallRadiusLarge => {
            -PI * s2 * c / 4.0
                * (a / (PI * w0) - 1.0 - zeta * class.a_ell.ln() / (a * PI * w0 * ell * ell))
        }
        AsymptoticBranch::LargeRadiusModerate => {
            let osc = zeta * (2.0 + c) / (2.0 * w) * (w * (7.0 - class.a_ell * class.a_ell) / 3.0).sin();
            PI * s2 / 4.0 * (osc - 2.0 * c * (-2.0 * PI * w / r).exp())
        }
        AsymptoticBranch::LargeRadiusThermal => -PI / 2.0 * s2 * c * planck(2.0 * PI * w0 / a),
    };
    CorrectionReport::new(atom, cfg, d, minkowski_phase(atom))
}

/// Limiting form of the correction for whichever branch applies.
pub fn correction_asymptotic(atom: &AtomParams, cfg: &ScenarioConfig) -> Result<AsymptoticCorrection> {
    let branch = select_branch(atom, cfg)?.ok_or_else(|| {
        let a_ell = cfg.accel * cfg.ell;
        Error::NoAsymptote {
            omega0_ell: atom.omega0 * cfg.ell,
            root: ((a_ell - 1.0) * (a_ell + 1.0)).max(0.0).sqrt(),
        }
    })?;
    Ok(AsymptoticCorrection {
        branch,
        report: asymptotic_branch_delta(branch, atom, cfg)?,
    })
}
