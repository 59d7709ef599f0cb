use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use galimech::commands::{self, SimulateArgs};
use galimech::config::ModelConfig;
use galimech::fields::SampleBox;
use galimech::geometry::Model;
use galimech::report::Outcome;
use galimech::symmetry::check::{CheckOptions, Tolerances};
use galimech::PhasePoint;

const INPUT_ERROR: u8 = 3;

/// Covariant Galilean mechanics on coordinate charts.
#[derive(Parser, Debug)]
#[command(name = "galimech", version)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Common {
    /// Catalog model: free3d, free2d, cyclotron, rigidbody, oscillator.
    #[arg(long, global = true, conflicts_with = "config")]
    model: Option<String>,
    /// JSON model config.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol_pass: f64,
    #[arg(long, global = true, default_value_t = 1e-3)]
    tol_fail: f64,
    /// Sampling seed; GALIMECH_SEED takes precedence.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Sampling box as `lo,hi`, applied to every coordinate.
    #[arg(long = "box", global = true, default_value = "-1,1", allow_hyphen_values = true)]
    bx: String,
    #[arg(long, global = true, default_value_t = 32)]
    points: usize,
    /// Directory for the JSON report (and trajectory CSV); stdout otherwise.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print derived coefficients at a phase point.
    Derive {
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        t: f64,
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        x: Vec<f64>,
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        v: Vec<f64>,
    },
    /// Integrate the law of motion and track charges.
    Simulate {
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        t0: f64,
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        x0: Vec<f64>,
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        v0: Vec<f64>,
        /// Integration time.
        #[arg(long = "T", alias = "duration")]
        duration: f64,
        #[arg(long, default_value_t = 1e-3)]
        h: f64,
        /// Actions or vector fields whose charges are tracked, separated by `;`.
        #[arg(long, value_delimiter = ';')]
        charges: Vec<String>,
    },
    /// Test whether a vector field is an infinitesimal symmetry.
    CheckSymmetry {
        #[arg(long)]
        field: String,
    },
    /// Noether charges of an action or a single vector field.
    Noether {
        #[arg(long)]
        field: String,
    },
    /// Momentum map of an action.
    MomentumMap {
        #[arg(long)]
        action: String,
    },
    /// Brackets of the momentum-map components of an action.
    Brackets {
        #[arg(long)]
        action: String,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Derive { .. } => "derive",
            Command::Simulate { .. } => "simulate",
            Command::CheckSymmetry { .. } => "check-symmetry",
            Command::Noether { .. } => "noether",
            Command::MomentumMap { .. } => "momentum-map",
            Command::Brackets { .. } => "brackets",
        }
    }
}

fn parse_box(s: &str) -> anyhow::Result<SampleBox> {
    let parts: Vec<f64> = s.split(',').map(|p| p.trim().parse::<f64>()).collect::<Result<_, _>>().context("--box")?;
    match parts[..] {
        [lo, hi] if lo < hi => Ok(SampleBox::new(lo, hi)),
        _ => bail!("--box expects `lo,hi` with lo < hi, got `{s}`"),
    }
}

fn options(c: &Common) -> anyhow::Result<CheckOptions> {
    let seed = match std::env::var("GALIMECH_SEED") {
        Ok(v) => v.trim().parse().with_context(|| format!("GALIMECH_SEED=`{v}` is not an unsigned integer"))?,
        Err(_) => c.seed,
    };
    if !(c.tol_pass > 0.0 && c.tol_pass <= c.tol_fail) {
        bail!("need 0 < --tol-pass <= --tol-fail");
    }
    if c.points == 0 {
        bail!("--points must be positive");
    }
    Ok(CheckOptions {
        tol: Tolerances { pass: c.tol_pass, fail: c.tol_fail },
        points: c.points,
        seed,
        bx: parse_box(&c.bx)?,
    })
}

fn load_model(c: &Common) -> anyhow::Result<Model> {
    let config = match (&c.model, &c.config) {
        (Some(name), None) => ModelConfig::catalog(name),
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            ModelConfig::from_json(&text)?
        }
        _ => bail!("give exactly one of --model or --config"),
    };
    Ok(config.build()?)
}

fn point(n: usize, t: f64, x: &[f64], v: &[f64]) -> anyhow::Result<PhasePoint> {
    let fill = |c: &[f64], what: &str| -> anyhow::Result<Vec<f64>> {
        match c.len() {
            0 => Ok(vec![0.0; n]),
            k if k == n => Ok(c.to_vec()),
            k => bail!("--{what} needs {n} components, got {k}"),
        }
    };
    Ok(PhasePoint::new(t, fill(x, "x")?, fill(v, "v")?))
}

fn run(cli: &Cli) -> anyhow::Result<Outcome> {
    let opts = options(&cli.common)?;
    let model = load_model(&cli.common)?;
    let n = model.n();
    let outcome = match &cli.command {
        Command::Derive { t, x, v } => commands::derive(&model, &point(n, *t, x, v)?, &opts)?,
        Command::Simulate { t0, x0, v0, duration, h, charges } => {
            let args =
                SimulateArgs { point: point(n, *t0, x0, v0)?, duration: *duration, h: *h, charges: charges.clone() };
            commands::simulate(&model, &args, &opts)?
        }
        Command::CheckSymmetry { field } => commands::check_symmetry(&model, field, &opts)?,
        Command::Noether { field } => commands::noether(&model, field, &opts)?,
        Command::MomentumMap { action } => commands::momentum_map_cmd(&model, action, &opts)?,
        Command::Brackets { action } => commands::brackets(&model, action, &opts)?,
    };
    Ok(outcome)
}

fn emit(cli: &Cli, outcome: &Outcome) -> anyhow::Result<()> {
    match &cli.common.out {
        Some(dir) => {
            std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
            let json = dir.join(format!("{}.json", cli.command.name()));
            write(&json, &outcome.to_json_string())?;
            if let Some(csv) = &outcome.csv {
                write(&dir.join("trajectory.csv"), csv)?;
            }
            println!("{}: {:?}, report written to {}", cli.command.name(), outcome.status, json.display());
        }
        None => match &outcome.csv {
            Some(csv) => print!("{csv}"),
            None => print!("{}", outcome.to_json_string()),
        },
    }
    Ok(())
}

fn write(path: &Path, text: &str) -> anyhow::Result<()> {
    std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { INPUT_ERROR } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let outcome = match run(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(INPUT_ERROR);
        }
    };
    if let Err(e) = emit(&cli, &outcome) {
        eprintln!("error: {e:#}");
        return ExitCode::from(INPUT_ERROR);
    }
    ExitCode::from(outcome.status.exit_code() as u8)
}
