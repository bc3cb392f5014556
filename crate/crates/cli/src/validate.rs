//! Self-checks: closed forms against the brute-force oracles.

use std::f64::consts::{PI, SQRT_2};
use std::fmt;
use std::io::Write;

use clap::ValueEnum;
use geophase::correlations::{CriticalKernel, SupercriticalKernel};
use geophase::dynamics::{bloch_evolve, density_matrix, eigen_system};
use geophase::oracles::{fourier_numeric, integrate_phase_numeric, FourierSpec};
use geophase::phase::{correction, geometric_phase, phase_perturbative};
use geophase::quadrature::QuadratureSpec;
use geophase::response::{fourier_critical, fourier_supercritical, kossakowski, EffectiveGap};
use geophase::{AtomParams, Boundary, KossakowskiPair, ScenarioConfig};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
pub enum Group {
    Phase,
    Fourier,
    Continuity,
    Scaling,
    Properties,
}

impl Group {
    pub const ALL: [Group; 5] = [
        Group::Phase,
        Group::Fourier,
        Group::Continuity,
        Group::Scaling,
        Group::Properties,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Group::Phase => "phase",
            Group::Fourier => "fourier",
            Group::Continuity => "continuity",
            Group::Scaling => "scaling",
            Group::Properties => "properties",
        }
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub group: Group,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

type Outcome = Result<String, String>;

fn ads(ell: f64, accel: f64, b: Boundary) -> Result<ScenarioConfig, String> {
    ScenarioConfig::anti_de_sitter(ell, accel, b).map_err(|e| e.to_string())
}

fn atom(omega0: f64, mu: f64, theta: f64) -> Result<AtomParams, String> {
    AtomParams::new(omega0, mu, theta).map_err(|e| e.to_string())
}

fn phase_vs_quadrature(rng: &mut ChaCha8Rng) -> Outcome {
    let spec = QuadratureSpec {
        abs_tol: 1e-14,
        rel_tol: 1e-12,
        max_subdivisions: 10_000,
    };
    let mut worst = 0.0f64;
    for i in 0..60 {
        let ell = rng.gen_range(0.2..5.0);
        let b = Boundary::ALL[i % 3];
        let cfg = match i % 5 {
            0 => ads(ell, rng.gen_range(0.0..0.99) / ell, b)?,
            1 => ads(ell, 1.0 / ell, b)?,
            2 => ads(ell, rng.gen_range(1.01..30.0) / ell, b)?,
            3 => ScenarioConfig::de_sitter(ell, rng.gen_range(0.0..5.0)).map_err(|e| e.to_string())?,
            _ => ScenarioConfig::minkowski(),
        };
        let a = atom(rng.gen_range(0.3..3.0), rng.gen_range(0.01..0.2), rng.gen_range(0.05..PI - 0.05))?;
        let exact = geometric_phase(&a, &cfg, None).map_err(|e| e.to_string())?;
        let pair = kossakowski(&a, &cfg).unwrap_or(KossakowskiPair::ZERO);
        let quad = integrate_phase_numeric(&a, &pair, EffectiveGap::bare(&a), exact.time, &spec)
            .map_err(|e| e.to_string())?;
        let rel = (exact.phi - quad.phi).abs() / quad.phi.abs();
        worst = worst.max(rel);
        if rel > 1e-8 {
            return Err(format!("{cfg:?}, {a:?}: relative gap {rel:.2e}"));
        }
    }
    Ok(format!("60 random scenarios, worst relative gap {worst:.1e}"))
}

fn fourier_critical_check() -> Outcome {
    let spec = FourierSpec::default();
    let mut worst = 0.0f64;
    for w in [0.5, 1.0, 3.0] {
        for b in Boundary::ALL {
            let closed = fourier_critical(w, 1.0, b).g_plus;
            let num = fourier_numeric(&CriticalKernel::new(1.0, b), w, &spec)
                .map_err(|e| e.to_string())?
                .value;
            let rel = (num - closed).abs() / closed;
            worst = worst.max(rel);
            if rel > 1e-3 {
                return Err(format!("{b}, omega0 ell = {w}: {num} vs {closed}"));
            }
        }
    }
    Ok(format!("9 transforms, worst relative gap {worst:.1e}"))
}

fn fourier_supercritical_check(rng: &mut ChaCha8Rng) -> Outcome {
    let spec = FourierSpec::default();
    let mut worst = 0.0f64;
    let mut grid = vec![1.5, SQRT_2, 5.0];
    grid.push(rng.gen_range(1.2..6.0));
    for &al in &grid {
        for b in Boundary::ALL {
            let kernel = SupercriticalKernel::new(al, 1.0, b).map_err(|e| e.to_string())?;
            let closed = fourier_supercritical(1.0, al, 1.0, b).map_err(|e| e.to_string())?;
            for (omega, want) in [(1.0, closed.g_plus), (-1.0, closed.g_minus)] {
                let num = fourier_numeric(&kernel, omega, &spec)
                    .map_err(|e| e.to_string())?
                    .value;
                let rel = (num - want).abs() / want;
                worst = worst.max(rel);
                if rel > 1e-3 {
                    return Err(format!("{b}, a ell = {al}, omega = {omega}: {num} vs {want}"));
                }
            }
        }
    }
    Ok(format!("{} transforms, worst relative gap {worst:.1e}", grid.len() * 6))
}

fn critical_continuity() -> Outcome {
    let mu = 0.1;
    let mut worst = 0.0f64;
    for b in Boundary::ALL {
        for w in [0.1, 1.0, 10.0] {
            let a = atom(w, mu, PI / 4.0)?;
            let at = |al: f64| -> Result<f64, String> {
                Ok(correction(&a, &ads(1.0, al, b)?).map_err(|e| e.to_string())?.delta)
            };
            let gap = (at(1.0 + 1e-6)? - at(1.0)?).abs() / (mu * mu);
            worst = worst.max(gap);
            if gap > 1e-5 {
                return Err(format!("{b}, omega0 ell = {w}: gap {gap:.2e} mu^2"));
            }
        }
    }
    Ok(format!("supercritical to critical gap at most {worst:.1e} mu^2"))
}

fn subcritical_constant() -> Outcome {
    let a = atom(1.0, 0.1, PI / 4.0)?;
    for b in Boundary::ALL {
        for al in [0.0, 0.5, 0.9] {
            let v = correction(&a, &ads(1.0, al, b)?).map_err(|e| e.to_string())?.delta_over_mu2;
            let want = (PI / 4.0) * (2.0 + (PI / 4.0).cos()) * 0.5;
            if (v - want).abs() > 1e-12 {
                return Err(format!("{b}, a ell = {al}: {v} vs {want}"));
            }
        }
    }
    Ok("delta/mu^2 constant below a ell = 1 for every boundary".into())
}

fn mu4_scaling(rng: &mut ChaCha8Rng) -> Outcome {
    let mut ratios = Vec::new();
    for b in Boundary::ALL {
        let cfgs = [ads(1.0, 1.0, b)?, ads(1.0, rng.gen_range(1.5..10.0), b)?];
        for cfg in &cfgs {
            let theta = rng.gen_range(0.3..PI - 0.3);
            let defect = |mu: f64| -> Result<f64, String> {
                let a = atom(1.0, mu, theta)?;
                let exact = geometric_phase(&a, cfg, None).map_err(|e| e.to_string())?;
                let pert = phase_perturbative(&a, cfg).map_err(|e| e.to_string())?;
                Ok(exact.phi - pert.phi)
            };
            let r = defect(0.1)? / defect(0.05)?;
            if !(14.0..=18.0).contains(&r) {
                return Err(format!("{cfg:?}, theta {theta:.3}: ratio {r:.3}"));
            }
            ratios.push(r);
        }
    }
    let lo = ratios.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = ratios.iter().cloned().fold(0.0, f64::max);
    Ok(format!("halving mu shrinks the defect by {lo:.2} to {hi:.2}"))
}

fn state_validity(rng: &mut ChaCha8Rng) -> Outcome {
    let draws = 2000;
    for i in 0..draws {
        let ell = rng.gen_range(0.1..10.0);
        let cfg = match i % 3 {
            0 => ads(ell, rng.gen_range(1.0..100.0) / ell, Boundary::ALL[i % 3])?,
            1 => ScenarioConfig::de_sitter(ell, rng.gen_range(0.0..10.0)).map_err(|e| e.to_string())?,
            _ => ScenarioConfig::minkowski(),
        };
        let theta = rng.gen_range(0.0..PI);
        let a = atom(rng.gen_range(0.1..10.0), rng.gen_range(0.01..0.5), theta)?;
        let pair = match kossakowski(&a, &cfg) {
            Ok(p) => p,
            Err(geophase::Error::NonPositiveRate { .. }) => continue,
            Err(e) => return Err(format!("{cfg:?}: {e}")),
        };
        if pair.a < pair.b.abs() {
            return Err(format!("A < |B|: {pair:?}"));
        }
        let tau = rng.gen_range(0.0..50.0) / a.omega0;
        let rho = density_matrix(&bloch_evolve(theta, &pair, a.omega0, tau).map_err(|e| e.to_string())?);
        if (rho.trace().re - 1.0).abs() > 1e-14 || !rho.is_hermitian(1e-15) {
            return Err(format!("unphysical density matrix at {cfg:?}"));
        }
        if let Ok(e) = eigen_system(theta, &pair, tau) {
            if e.lambda_minus < -1e-15 || e.lambda_plus > 1.0 + 1e-15 {
                return Err(format!("eigenvalues {e:?}"));
            }
        }
    }
    Ok(format!("{draws} random states stay physical"))
}

/// Run the selected groups with randomised grids drawn from `seed`.
pub fn run_checks(groups: &[Group], seed: u64) -> Vec<CheckResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    let mut record = |group, name, outcome: Outcome| {
        let (passed, detail) = match outcome {
            Ok(d) => (true, d),
            Err(d) => (false, d),
        };
        out.push(CheckResult {
            group,
            name,
            passed,
            detail,
        });
    };
    for &g in &Group::ALL {
        if !groups.contains(&g) {
            continue;
        }
        match g {
            Group::Phase => record(g, "exact phase vs quadrature", phase_vs_quadrature(&mut rng)),
            Group::Fourier => {
                record(g, "critical transform", fourier_critical_check());
                record(g, "supercritical transform", fourier_supercritical_check(&mut rng));
            }
            Group::Continuity => {
                record(g, "critical point", critical_continuity());
                record(g, "subcritical plateau", subcritical_constant());
            }
            Group::Scaling => record(g, "mu^4 defect", mu4_scaling(&mut rng)),
            Group::Properties => record(g, "state validity", state_validity(&mut rng)),
        }
    }
    out
}

/// Print the table and fail if any check did.
pub fn run_validate(groups: &[Group], seed: u64, out: &mut dyn Write) -> CliResult<()> {
    let results = run_checks(groups, seed);
    let io = |e| CliError::io("<stdout>", e);
    writeln!(out, "seed {seed}").map_err(io)?;
    writeln!(out, "{:<11} {:<26} {:<6} detail", "group", "check", "status").map_err(io)?;
    for r in &results {
        let status = if r.passed { "PASS" } else { "FAIL" };
        writeln!(out, "{:<11} {:<26} {:<6} {}", r.group.name(), r.name, status, r.detail).map_err(io)?;
    }
    let failed = results.iter().filter(|r| !r.passed).count();
    writeln!(out, "{} passed, {failed} failed", results.len() - failed).map_err(io)?;
    if failed > 0 {
        Err(CliError::ValidationFailed(failed))
    } else {
        Ok(())
    }
}
