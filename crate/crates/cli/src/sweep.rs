//! Parameter sweeps over `a ell`, `omega0 ell` or `theta`.
//!
//! Every grid point is evaluated in units where `ell = 1`, so `accel = a ell`
//! and `omega0 = omega0 ell`. Rows come back grid-major, then spacetime,
//! then boundary, whatever the thread count.

use std::fmt;

use clap::ValueEnum;
use geophase::phase::{correction, geometric_phase, phase_perturbative};
use geophase::{AtomParams, Boundary, Regime, ScenarioConfig, Spacetime};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{CliError, CliResult};
use crate::output::{Cell, Table};

/// Environment variable overriding the worker count.
pub const THREADS_ENV: &str = "GEOPHASE_THREADS";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepParam {
    #[value(name = "a_ell")]
    AEll,
    #[value(name = "omega0_ell")]
    Omega0Ell,
    Theta,
}

impl SweepParam {
    pub fn name(self) -> &'static str {
        match self {
            SweepParam::AEll => "a_ell",
            SweepParam::Omega0Ell => "omega0_ell",
            SweepParam::Theta => "theta",
        }
    }
}

impl fmt::Display for SweepParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Scale {
    Linear,
    Log,
}

/// Values of the parameters that are not swept.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Fixed {
    pub theta: f64,
    pub a_ell: f64,
    pub omega0_ell: f64,
    pub mu: f64,
}

/// One curve of a sweep: a spacetime and, for AdS, a boundary condition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Curve {
    pub spacetime: Spacetime,
    pub boundary: Option<Boundary>,
}

impl Curve {
    pub fn label(&self) -> String {
        match self.boundary {
            Some(b) => format!("{}_{}", self.spacetime.name(), b.name()),
            None => self.spacetime.name().to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepPlan {
    pub param: SweepParam,
    pub lo: f64,
    pub hi: f64,
    pub points: usize,
    pub scale: Scale,
    pub fixed: Fixed,
    pub boundaries: Vec<Boundary>,
    pub spacetimes: Vec<Spacetime>,
}

impl SweepPlan {
    pub fn validate(&self) -> CliResult<()> {
        let usage = |m: String| Err(CliError::Usage(m));
        if !(self.lo.is_finite() && self.hi.is_finite() && self.lo < self.hi) {
            return usage(format!("sweep range needs lo < hi, got [{}, {}]", self.lo, self.hi));
        }
        if self.points < 2 {
            return usage(format!("a sweep needs at least 2 points, got {}", self.points));
        }
        if self.scale == Scale::Log {
            if self.lo <= 0.0 {
                return usage("log scale needs a positive lower bound".into());
            }
            if self.param == SweepParam::AEll && self.lo <= 1.0 {
                return usage(
                    "log scale over a_ell is for supercritical sweeps and needs lo > 1".into(),
                );
            }
        }
        match self.param {
            SweepParam::Theta if self.lo < 0.0 || self.hi > std::f64::consts::PI => {
                return usage("theta must stay within [0, pi]".into());
            }
            SweepParam::AEll if self.lo < 0.0 => {
                return usage("a_ell must be non-negative".into());
            }
            SweepParam::Omega0Ell if self.lo <= 0.0 => {
                return usage("omega0_ell must be positive".into());
            }
            _ => {}
        }
        if self.spacetimes.is_empty() {
            return usage("no spacetime selected".into());
        }
        if self.spacetimes.contains(&Spacetime::AntiDeSitter) && self.boundaries.is_empty() {
            return usage("AdS sweeps need at least one boundary condition".into());
        }
        Ok(())
    }

    pub fn grid(&self) -> Vec<f64> {
        let n = self.points;
        (0..n)
            .map(|i| {
                let t = i as f64 / (n - 1) as f64;
                match self.scale {
                    Scale::Linear => {
                        if i == n - 1 {
                            self.hi
                        } else {
                            self.lo + t * (self.hi - self.lo)
                        }
                    }
                    Scale::Log => {
                        if i == n - 1 {
                            self.hi
                        } else {
                            self.lo * (self.hi / self.lo).powf(t)
                        }
                    }
                }
            })
            .collect()
    }

    pub fn curves(&self) -> Vec<Curve> {
        let mut out = Vec::new();
        for &s in &self.spacetimes {
            match s {
                Spacetime::AntiDeSitter => out.extend(self.boundaries.iter().map(|&b| Curve {
                    spacetime: s,
                    boundary: Some(b),
                })),
                _ => out.push(Curve {
                    spacetime: s,
                    boundary: None,
                }),
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Row {
    pub x: f64,
    pub spacetime: Spacetime,
    pub boundary: Option<Boundary>,
    pub zeta: Option<i8>,
    pub regime: Option<Regime>,
    pub a_ell: f64,
    pub omega0_ell: f64,
    pub theta: f64,
    pub mu: f64,
    /// `O(mu^2)` phase over one period.
    pub phi_perturbative: f64,
    /// Exact phase over one period.
    pub phi_exact: f64,
    pub delta_over_mu2: f64,
    pub abs_delta_over_mu2: f64,
}

impl Row {
    pub const HEADER: [&'static str; 13] = [
        "x",
        "spacetime",
        "boundary",
        "zeta",
        "regime",
        "a_ell",
        "omega0_ell",
        "theta",
        "mu",
        "phi_perturbative",
        "phi_exact",
        "delta_over_mu2",
        "abs_delta_over_mu2",
    ];

    pub fn cells(&self) -> Vec<Cell> {
        vec![
            Cell::Num(self.x),
            Cell::text(self.spacetime.name()),
            Cell::opt_text(self.boundary),
            self.zeta.map_or(Cell::Empty, |z| Cell::Int(z.into())),
            Cell::opt_text(self.regime),
            Cell::Num(self.a_ell),
            Cell::Num(self.omega0_ell),
            Cell::Num(self.theta),
            Cell::Num(self.mu),
            Cell::Num(self.phi_perturbative),
            Cell::Num(self.phi_exact),
            Cell::Num(self.delta_over_mu2),
            Cell::Num(self.abs_delta_over_mu2),
        ]
    }
}

impl SweepPlan {
    /// Metadata lines describing the plan.
    pub fn describe(&self, table: &mut Table) {
        let list = |v: Vec<&str>| Cell::text(v.join(";"));
        table
            .meta("param", Cell::text(self.param.name()))
            .meta("from", Cell::Num(self.lo))
            .meta("to", Cell::Num(self.hi))
            .meta("points", Cell::Int(self.points as i64))
            .meta("scale", Cell::text(format!("{:?}", self.scale).to_lowercase()))
            .meta("ell", Cell::Num(1.0))
            .meta("mu", Cell::Num(self.fixed.mu));
        for (name, value) in [
            (SweepParam::Theta, self.fixed.theta),
            (SweepParam::AEll, self.fixed.a_ell),
            (SweepParam::Omega0Ell, self.fixed.omega0_ell),
        ] {
            if name != self.param {
                table.meta(name.name(), Cell::Num(value));
            }
        }
        table
            .meta("spacetimes", list(self.spacetimes.iter().map(|s| s.name()).collect()))
            .meta("boundaries", list(self.boundaries.iter().map(|b| b.name()).collect()));
    }

    pub fn table(&self, rows: &[Row]) -> Table {
        let mut t = Table::new(Row::HEADER);
        self.describe(&mut t);
        for r in rows {
            t.push(r.cells());
        }
        t
    }
}

/// Evaluate one grid point on one curve.
pub fn evaluate_point(param: SweepParam, x: f64, fixed: &Fixed, curve: Curve) -> CliResult<Row> {
    let mut p = *fixed;
    match param {
        SweepParam::AEll => p.a_ell = x,
        SweepParam::Omega0Ell => p.omega0_ell = x,
        SweepParam::Theta => p.theta = x,
    }
    let atom = AtomParams::new(p.omega0_ell, p.mu, p.theta)?;
    let cfg = match curve.spacetime {
        Spacetime::AntiDeSitter => ScenarioConfig::anti_de_sitter(
            1.0,
            p.a_ell,
            curve.boundary.expect("AdS curves carry a boundary"),
        )?,
        Spacetime::DeSitter => ScenarioConfig::de_sitter(1.0, p.a_ell)?,
        Spacetime::Minkowski => ScenarioConfig::minkowski(),
    };
    let pert = phase_perturbative(&atom, &cfg)?;
    let exact = geometric_phase(&atom, &cfg, None)?;
    let corr = correction(&atom, &cfg)?;
    Ok(Row {
        x,
        spacetime: curve.spacetime,
        boundary: curve.boundary,
        zeta: curve.boundary.map(Boundary::zeta_int),
        regime: pert.regime,
        a_ell: if curve.spacetime == Spacetime::Minkowski { 0.0 } else { p.a_ell },
        omega0_ell: p.omega0_ell,
        theta: p.theta,
        mu: p.mu,
        phi_perturbative: pert.phi,
        phi_exact: exact.phi,
        delta_over_mu2: corr.delta_over_mu2,
        abs_delta_over_mu2: corr.delta_over_mu2.abs(),
    })
}

/// Worker count from the environment, if set.
pub fn threads_from_env() -> CliResult<Option<usize>> {
    match std::env::var(THREADS_ENV) {
        Err(_) => Ok(None),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(CliError::Usage(format!(
                "{THREADS_ENV} must be a positive integer, got {v:?}"
            ))),
        },
    }
}

/// Evaluate the whole plan in parallel.
pub fn evaluate(plan: &SweepPlan, threads: Option<usize>) -> CliResult<Vec<Row>> {
    plan.validate()?;
    let grid = plan.grid();
    let curves = plan.curves();
    let jobs: Vec<(f64, Curve)> = grid
        .iter()
        .flat_map(|&x| curves.iter().map(move |&c| (x, c)))
        .collect();
    let run = || -> CliResult<Vec<Row>> {
        jobs.par_iter()
            .map(|&(x, c)| evaluate_point(plan.param, x, &plan.fixed, c))
            .collect()
    };
    match threads {
        None => run(),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| CliError::Usage(format!("cannot start {n} worker threads: {e}")))?
            .install(run),
    }
}
