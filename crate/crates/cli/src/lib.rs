//! Command-line front end for `geophase`.
//!
//! ```text
//! geophase phase    --spacetime ads --boundary transparent --ell 1 --accel 0.5 \
//!                   --omega0 1 --mu 0.1 --theta 0.785
//! geophase sweep    --param a_ell --from 1 --to 20 --points 400 --theta 0.785 \
//!                   --omega0-ell 0.1 --output fig.csv
//! geophase figure   fig2c --outdir data/
//! geophase validate --only fourier --seed 42
//! ```
//!
//! Usage errors exit with status 2, domain, I/O and validation failures with 1.

pub mod error;
pub mod figure;
pub mod output;
pub mod sweep;
pub mod validate;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use geophase::phase::{correction, geometric_phase, phase_perturbative};
use geophase::{AtomParams, Boundary, PhaseReport, ScenarioConfig, Spacetime};
use serde_json::json;

pub use error::{CliError, CliResult};
use figure::{run_figure, FigurePreset, GridOverride};
use output::TableFormat;
use sweep::{evaluate, threads_from_env, Fixed, Scale, SweepParam, SweepPlan};
use validate::{run_validate, Group};

#[derive(Debug, Parser)]
#[command(name = "geophase", version, about = "Geometric phase of an accelerated two-level atom")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate the phase for one parameter set.
    Phase(PhaseArgs),
    /// Sweep one dimensionless parameter and write a table.
    Sweep(SweepArgs),
    /// Regenerate the data behind a figure panel, one file per curve.
    Figure(FigureArgs),
    /// Run the oracle and property checks.
    Validate(ValidateArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SpacetimeArg {
    Ads,
    Ds,
    Minkowski,
}

impl From<SpacetimeArg> for Spacetime {
    fn from(s: SpacetimeArg) -> Self {
        match s {
            SpacetimeArg::Ads => Spacetime::AntiDeSitter,
            SpacetimeArg::Ds => Spacetime::DeSitter,
            SpacetimeArg::Minkowski => Spacetime::Minkowski,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BoundaryArg {
    Dirichlet,
    Transparent,
    Neumann,
}

impl From<BoundaryArg> for Boundary {
    fn from(b: BoundaryArg) -> Self {
        match b {
            BoundaryArg::Dirichlet => Boundary::Dirichlet,
            BoundaryArg::Transparent => Boundary::Transparent,
            BoundaryArg::Neumann => Boundary::Neumann,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Exact,
    Perturbative,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RecordFormat {
    Text,
    Json,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct PhaseArgs {
    #[arg(long, value_enum)]
    pub spacetime: SpacetimeArg,
    /// Required for AdS.
    #[arg(long, value_enum)]
    pub boundary: Option<BoundaryArg>,
    /// Curvature radius, required for AdS and dS.
    #[arg(long)]
    pub ell: Option<f64>,
    /// Proper acceleration, required for AdS and dS.
    #[arg(long)]
    pub accel: Option<f64>,
    #[arg(long)]
    pub omega0: f64,
    #[arg(long)]
    pub mu: f64,
    #[arg(long)]
    pub theta: f64,
    /// Evolution time; defaults to one period 2 pi / omega0.
    #[arg(long)]
    pub time: Option<f64>,
    #[arg(long, value_enum, default_value_t = MethodArg::Exact)]
    pub method: MethodArg,
    #[arg(long, value_enum, default_value_t = RecordFormat::Text)]
    pub format: RecordFormat,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct SweepArgs {
    #[arg(long, value_enum)]
    pub param: SweepParam,
    #[arg(long)]
    pub from: f64,
    #[arg(long)]
    pub to: f64,
    #[arg(long)]
    pub points: usize,
    #[arg(long, value_enum, default_value_t = Scale::Linear)]
    pub scale: Scale,
    #[arg(long)]
    pub theta: Option<f64>,
    #[arg(long = "a-ell")]
    pub a_ell: Option<f64>,
    #[arg(long = "omega0-ell")]
    pub omega0_ell: Option<f64>,
    #[arg(long, default_value_t = 0.1)]
    pub mu: f64,
    #[arg(long, value_enum, value_delimiter = ',', default_value = "dirichlet,transparent,neumann")]
    pub boundaries: Vec<BoundaryArg>,
    #[arg(long, value_enum, value_delimiter = ',', default_value = "ads")]
    pub spacetimes: Vec<SpacetimeArg>,
    /// Output path, `-` for stdout.
    #[arg(long, default_value = "-")]
    pub output: PathBuf,
    #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
    pub format: TableFormat,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct FigureArgs {
    #[arg(value_enum)]
    pub preset: FigurePreset,
    #[arg(long, default_value = ".")]
    pub outdir: PathBuf,
    #[arg(long)]
    pub points: Option<usize>,
    #[arg(long)]
    pub from: Option<f64>,
    #[arg(long)]
    pub to: Option<f64>,
    #[arg(long, default_value_t = 0.1)]
    pub mu: f64,
    #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
    pub format: TableFormat,
}

#[derive(Debug, Args)]
pub struct ValidateArgs {
    /// Restrict to these groups.
    #[arg(long, value_enum, value_delimiter = ',')]
    pub only: Vec<Group>,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
}

fn require(v: Option<f64>, flag: &str, why: &str) -> CliResult<f64> {
    v.ok_or_else(|| CliError::Usage(format!("--{flag} is required {why}")))
}

fn scenario(args: &PhaseArgs) -> CliResult<ScenarioConfig> {
    Ok(match args.spacetime {
        SpacetimeArg::Ads => {
            let why = "for --spacetime ads";
            let b = args
                .boundary
                .ok_or_else(|| CliError::Usage(format!("--boundary is required {why}")))?;
            ScenarioConfig::anti_de_sitter(
                require(args.ell, "ell", why)?,
                require(args.accel, "accel", why)?,
                b.into(),
            )?
        }
        SpacetimeArg::Ds => {
            let why = "for --spacetime ds";
            ScenarioConfig::de_sitter(require(args.ell, "ell", why)?, require(args.accel, "accel", why)?)?
        }
        SpacetimeArg::Minkowski => {
            let mut cfg = ScenarioConfig::minkowski();
            cfg.accel = args.accel.unwrap_or(0.0);
            cfg.validate()?;
            cfg
        }
    })
}

fn cmd_phase(args: &PhaseArgs, out: &mut dyn Write) -> CliResult<()> {
    let atom = AtomParams::new(args.omega0, args.mu, args.theta)?;
    let cfg = scenario(args)?;
    let report: PhaseReport = match args.method {
        MethodArg::Exact => geometric_phase(&atom, &cfg, args.time)?,
        MethodArg::Perturbative => {
            if args.time.is_some() {
                return Err(CliError::Usage(
                    "--time is only available with --method exact".into(),
                ));
            }
            phase_perturbative(&atom, &cfg)?
        }
    };
    let one_period = args.time.is_none();
    let corr = if one_period { Some(correction(&atom, &cfg)?) } else { None };
    let regime = report.regime.map(|r| r.name());
    let io = |e| CliError::io("<stdout>", e);
    match args.format {
        RecordFormat::Json => {
            let record = json!({
                "phi": report.phi,
                "method": report.method.name(),
                "spacetime": cfg.spacetime.name(),
                "boundary": cfg.boundary.filter(|_| cfg.spacetime == Spacetime::AntiDeSitter).map(Boundary::name),
                "regime": regime,
                "time": report.time,
                "delta_over_mu2": corr.map(|c| c.delta_over_mu2),
                "abs_delta_over_mu2": corr.map(|c| c.delta_over_mu2.abs()),
            });
            writeln!(out, "{record}").map_err(io)?;
        }
        RecordFormat::Text => {
            writeln!(out, "phi = {}", report.phi).map_err(io)?;
            writeln!(out, "method = {}", report.method.name()).map_err(io)?;
            writeln!(out, "spacetime = {}", cfg.spacetime.name()).map_err(io)?;
            writeln!(out, "regime = {}", regime.unwrap_or("n/a")).map_err(io)?;
            writeln!(out, "time = {}", report.time).map_err(io)?;
            if let Some(c) = corr {
                writeln!(out, "delta_over_mu2 = {}", c.delta_over_mu2).map_err(io)?;
                writeln!(out, "abs_delta_over_mu2 = {}", c.delta_over_mu2.abs()).map_err(io)?;
            }
        }
    }
    Ok(())
}

fn sweep_plan(args: &SweepArgs) -> CliResult<SweepPlan> {
    let fixed_value = |p: SweepParam, v: Option<f64>| -> CliResult<f64> {
        if args.param == p {
            if v.is_some() {
                return Err(CliError::Usage(format!("--{} is the swept parameter", p.name().replace('_', "-"))));
            }
            Ok(f64::NAN)
        } else {
            v.ok_or_else(|| {
                CliError::Usage(format!("--{} is required unless it is swept", p.name().replace('_', "-")))
            })
        }
    };
    let mut spacetimes: Vec<Spacetime> = Vec::new();
    for s in &args.spacetimes {
        let s = Spacetime::from(*s);
        if !spacetimes.contains(&s) {
            spacetimes.push(s);
        }
    }
    let mut boundaries: Vec<Boundary> = Vec::new();
    for b in &args.boundaries {
        let b = Boundary::from(*b);
        if !boundaries.contains(&b) {
            boundaries.push(b);
        }
    }
    let plan = SweepPlan {
        param: args.param,
        lo: args.from,
        hi: args.to,
        points: args.points,
        scale: args.scale,
        fixed: Fixed {
            theta: fixed_value(SweepParam::Theta, args.theta)?,
            a_ell: fixed_value(SweepParam::AEll, args.a_ell)?,
            omega0_ell: fixed_value(SweepParam::Omega0Ell, args.omega0_ell)?,
            mu: args.mu,
        },
        boundaries,
        spacetimes,
    };
    plan.validate()?;
    Ok(plan)
}

fn cmd_sweep(args: &SweepArgs, out: &mut dyn Write) -> CliResult<()> {
    let plan = sweep_plan(args)?;
    let rows = evaluate(&plan, threads_from_env()?)?;
    plan.table(&rows).save(&args.output, args.format, out)
}

fn cmd_figure(args: &FigureArgs, out: &mut dyn Write) -> CliResult<()> {
    let grid = GridOverride {
        from: args.from,
        to: args.to,
        points: args.points,
    };
    let files = run_figure(args.preset, &args.outdir, args.mu, grid, args.format, threads_from_env()?)?;
    for f in &files {
        writeln!(out, "{} ({} rows)", f.path.display(), f.rows.len())
            .map_err(|e| CliError::io("<stdout>", e))?;
    }
    Ok(())
}

fn cmd_validate(args: &ValidateArgs, out: &mut dyn Write) -> CliResult<()> {
    let groups = if args.only.is_empty() {
        Group::ALL.to_vec()
    } else {
        args.only.clone()
    };
    run_validate(&groups, args.seed, out)
}

pub fn execute(cli: &Cli, out: &mut dyn Write) -> CliResult<()> {
    match &cli.command {
        Command::Phase(a) => cmd_phase(a, out),
        Command::Sweep(a) => cmd_sweep(a, out),
        Command::Figure(a) => cmd_figure(a, out),
        Command::Validate(a) => cmd_validate(a, out),
    }
}

/// Parse `args`, run the command and return the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(rendered.as_bytes())
            } else {
                out.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
