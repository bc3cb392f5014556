//! Figure presets: fixed parameters and grids for each published panel.

use std::f64::consts::PI;
use std::path::{Path, PathBuf};

use clap::ValueEnum;
use geophase::{Boundary, Spacetime};

use crate::error::{CliError, CliResult};
use crate::output::{Cell, Table, TableFormat};
use crate::sweep::{evaluate, Curve, Fixed, Row, Scale, SweepParam, SweepPlan};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FigurePreset {
    Fig1a,
    Fig1b,
    Fig2a,
    Fig2b,
    Fig2c,
    Fig2d,
    Fig3,
    Fig4,
}

impl FigurePreset {
    pub fn id(self) -> &'static str {
        match self {
            FigurePreset::Fig1a => "fig1a",
            FigurePreset::Fig1b => "fig1b",
            FigurePreset::Fig2a => "fig2a",
            FigurePreset::Fig2b => "fig2b",
            FigurePreset::Fig2c => "fig2c",
            FigurePreset::Fig2d => "fig2d",
            FigurePreset::Fig3 => "fig3",
            FigurePreset::Fig4 => "fig4",
        }
    }

    /// Panels of the preset, each a sweep plus the tag inserted into its file names.
    pub fn panels(self, mu: f64) -> Vec<Panel> {
        let ads = vec![Spacetime::AntiDeSitter];
        let ads_ds = vec![Spacetime::AntiDeSitter, Spacetime::DeSitter];
        let a_ell_sweep = |lo: f64, omega0_ell: f64, spacetimes: Vec<Spacetime>| SweepPlan {
            param: SweepParam::AEll,
            lo,
            hi: 20.0,
            points: 400,
            scale: Scale::Linear,
            fixed: Fixed {
                theta: PI / 4.0,
                a_ell: f64::NAN,
                omega0_ell,
                mu,
            },
            boundaries: Boundary::ALL.to_vec(),
            spacetimes,
        };
        // 721 interior points theta_i = pi i / 722.
        let theta_sweep = |omega0_ell: f64, a_ell: f64, spacetimes: Vec<Spacetime>| SweepPlan {
            param: SweepParam::Theta,
            lo: PI / 722.0,
            hi: 721.0 * PI / 722.0,
            points: 721,
            scale: Scale::Linear,
            fixed: Fixed {
                theta: f64::NAN,
                a_ell,
                omega0_ell,
                mu,
            },
            boundaries: Boundary::ALL.to_vec(),
            spacetimes,
        };
        let single = |plan| vec![Panel { tag: String::new(), plan }];
        match self {
            FigurePreset::Fig1a => single(a_ell_sweep(1.0, 0.1, ads)),
            FigurePreset::Fig1b => single(a_ell_sweep(1.0, 10.0, ads)),
            FigurePreset::Fig2a => single(theta_sweep(0.5, 5.0, ads)),
            FigurePreset::Fig2b => single(theta_sweep(0.5, 10.0, ads)),
            FigurePreset::Fig2c => single(theta_sweep(5.0, 5.0, ads)),
            FigurePreset::Fig2d => single(theta_sweep(5.0, 10.0, ads)),
            FigurePreset::Fig3 => [0.2, 5.0]
                .into_iter()
                .map(|w| Panel {
                    tag: format!("_w{w}"),
                    plan: a_ell_sweep(0.0, w, ads_ds.clone()),
                })
                .collect(),
            FigurePreset::Fig4 => [1.5, 10.0]
                .into_iter()
                .map(|al| Panel {
                    tag: format!("_al{al}"),
                    plan: theta_sweep(1.0, al, ads_ds.clone()),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Panel {
    pub tag: String,
    pub plan: SweepPlan,
}

/// Command-line overrides of a preset's grid.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct GridOverride {
    pub from: Option<f64>,
    pub to: Option<f64>,
    pub points: Option<usize>,
}

impl GridOverride {
    fn apply(&self, plan: &mut SweepPlan) {
        if let Some(v) = self.from {
            plan.lo = v;
        }
        if let Some(v) = self.to {
            plan.hi = v;
        }
        if let Some(n) = self.points {
            plan.points = n;
        }
    }
}

/// One emitted data file.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveFile {
    pub path: PathBuf,
    pub curve: Curve,
    pub rows: Vec<(f64, f64)>,
}

fn curve_table(preset: FigurePreset, plan: &SweepPlan, curve: Curve, rows: &[&Row]) -> Table {
    let mut t = Table::new([plan.param.name(), "delta_over_mu2", "abs_delta_over_mu2"]);
    t.meta("preset", Cell::text(preset.id()))
        .meta("spacetime", Cell::text(curve.spacetime.name()))
        .meta("boundary", Cell::opt_text(curve.boundary))
        .meta(
            "zeta",
            curve.boundary.map_or(Cell::Empty, |b| Cell::Int(b.zeta_int().into())),
        );
    let mut plan = plan.clone();
    plan.boundaries = curve.boundary.into_iter().collect();
    plan.spacetimes = vec![curve.spacetime];
    plan.describe(&mut t);
    for r in rows {
        t.push(vec![
            Cell::Num(r.x),
            Cell::Num(r.delta_over_mu2),
            Cell::Num(r.abs_delta_over_mu2),
        ]);
    }
    t
}

/// Evaluate a preset and write one file per curve into `outdir`.
pub fn run_figure(
    preset: FigurePreset,
    outdir: &Path,
    mu: f64,
    grid: GridOverride,
    format: TableFormat,
    threads: Option<usize>,
) -> CliResult<Vec<CurveFile>> {
    std::fs::create_dir_all(outdir).map_err(|e| CliError::io(outdir.display().to_string(), e))?;
    let mut files = Vec::new();
    for mut panel in preset.panels(mu) {
        grid.apply(&mut panel.plan);
        let rows = evaluate(&panel.plan, threads)?;
        for curve in panel.plan.curves() {
            let mine: Vec<&Row> = rows
                .iter()
                .filter(|r| r.spacetime == curve.spacetime && r.boundary == curve.boundary)
                .collect();
            let name = format!(
                "{}{}_{}.{}",
                preset.id(),
                panel.tag,
                curve.label(),
                format.extension()
            );
            let path = outdir.join(name);
            curve_table(preset, &panel.plan, curve, &mine).save(&path, format, &mut std::io::sink())?;
            files.push(CurveFile {
                path,
                curve,
                rows: mine.iter().map(|r| (r.x, r.abs_delta_over_mu2)).collect(),
            });
        }
    }
    Ok(files)
}
