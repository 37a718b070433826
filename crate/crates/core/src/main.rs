use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use spinlock_qa::experiments::{
    emit_outputs, format_sig, preset, run_fidelity_curve, run_obstruction_scan,
    run_rwa_convergence, ExperimentConfig, Frame, Outputs,
};
use spinlock_qa::hamiltonians::{ScheduleDirection, UnitConvention};
use spinlock_qa::Result;

/// Spin-lock quantum annealing simulator.
#[derive(Parser)]
#[command(version = spinlock_qa::experiments::version_string(), about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    overrides: Overrides,
}

#[derive(Subcommand)]
enum Command {
    /// Fidelity curves for every drive frequency of a config.
    Run { config: PathBuf },
    /// A built-in reproduction: fig3 (uniform driver) or fig4 (random driver).
    Preset { name: PresetName },
    /// Obstruction report for every swap symmetry of the lattice.
    ScanSymmetry { config: PathBuf },
    /// Trace distance between lab-frame and RWA final states per frequency.
    RwaConvergence { config: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum PresetName {
    Fig3,
    Fig4,
}

#[derive(Clone, Copy, ValueEnum)]
enum FrameArg {
    Lab,
    RotatingRwa,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum UnitArg {
    Angular,
    Cyclic,
    CyclicDrive,
}

#[derive(Clone, Copy, ValueEnum)]
enum DirectionArg {
    DriveOff,
    DriveOn,
}

#[derive(Args)]
struct Overrides {
    /// Output directory (overrides `output.dir`).
    #[arg(long, global = true)]
    out_dir: Option<PathBuf>,
    /// Concurrent sweep points (overrides `output.workers`).
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Fixed time step in ns for every frame (overrides `solver.dt`).
    #[arg(long, global = true)]
    dt: Option<f64>,
    #[arg(long, global = true, value_enum)]
    frame: Option<FrameArg>,
    #[arg(long, global = true, value_enum)]
    unit_convention: Option<UnitArg>,
    #[arg(long, global = true, value_enum)]
    schedule_direction: Option<DirectionArg>,
}

impl Overrides {
    fn apply(&self, cfg: &mut ExperimentConfig) -> Result<()> {
        if let Some(dir) = &self.out_dir {
            cfg.output.dir = dir.clone();
        }
        if let Some(w) = self.workers {
            cfg.output.workers = w;
        }
        if let Some(dt) = self.dt {
            cfg.solver.dt = Some(dt);
        }
        if let Some(f) = self.frame {
            cfg.anneal.frame = match f {
                FrameArg::Lab => Frame::Lab,
                FrameArg::RotatingRwa => Frame::RotatingRwa,
                FrameArg::Both => Frame::Both,
            };
        }
        if let Some(u) = self.unit_convention {
            cfg.device.unit_convention = match u {
                UnitArg::Angular => UnitConvention::Angular,
                UnitArg::Cyclic => UnitConvention::Cyclic,
                UnitArg::CyclicDrive => UnitConvention::CyclicDrive,
            };
        }
        if let Some(d) = self.schedule_direction {
            cfg.anneal.schedule_direction = match d {
                DirectionArg::DriveOff => ScheduleDirection::DriveOff,
                DirectionArg::DriveOn => ScheduleDirection::DriveOn,
            };
        }
        cfg.validate()
    }
}

fn load(path: &PathBuf, overrides: &Overrides) -> Result<ExperimentConfig> {
    let mut cfg = ExperimentConfig::load(path)?;
    overrides.apply(&mut cfg)?;
    Ok(cfg)
}

fn curves(configs: Vec<ExperimentConfig>) -> Result<Outputs> {
    let mut out = Outputs::default();
    for cfg in &configs {
        out.records.extend(run_fidelity_curve(cfg)?);
        out.symmetry
            .push((cfg.name.clone(), run_obstruction_scan(cfg)?));
    }
    for r in &out.records {
        println!(
            "{:<18} {:<13} ω = {:>5} GHz  F(T) = {}",
            r.case,
            r.frame.name(),
            format_sig(r.omega),
            format_sig(r.final_fidelity)
        );
    }
    out.configs = configs;
    Ok(out)
}

fn print_reports(out: &Outputs) {
    for (case, reports) in &out.symmetry {
        for r in reports.iter().filter(|r| r.commutes_with_problem) {
            println!(
                "{case:<18} {:<18} driver residual {:.1e}  sectors {:+.6} -> {:+.6}{}",
                r.label,
                r.driver_residual,
                r.initial_sector,
                r.target_sector,
                if r.obstructed { "  OBSTRUCTED" } else { "" }
            );
        }
    }
}

fn execute(cli: Cli) -> Result<()> {
    let out = match &cli.command {
        Command::Run { config } => curves(vec![load(config, &cli.overrides)?])?,
        Command::Preset { name } => {
            let mut configs = preset(match name {
                PresetName::Fig3 => "fig3",
                PresetName::Fig4 => "fig4",
            })?;
            for cfg in &mut configs {
                cli.overrides.apply(cfg)?;
            }
            curves(configs)?
        }
        Command::ScanSymmetry { config } => {
            let cfg = load(config, &cli.overrides)?;
            let out = Outputs {
                symmetry: vec![(cfg.name.clone(), run_obstruction_scan(&cfg)?)],
                configs: vec![cfg],
                ..Default::default()
            };
            print_reports(&out);
            out
        }
        Command::RwaConvergence { config } => {
            let mut cfg = load(config, &cli.overrides)?;
            if cfg.anneal.frame == Frame::Lab {
                cfg.anneal.frame = Frame::Both;
            }
            let rwa = run_rwa_convergence(&cfg)?;
            for p in &rwa {
                println!(
                    "ω = {:>5} GHz  trace distance {}  F_lab {}  F_rwa {}",
                    format_sig(p.omega),
                    format_sig(p.trace_distance),
                    format_sig(p.lab_fidelity),
                    format_sig(p.rwa_fidelity)
                );
            }
            Outputs {
                rwa,
                configs: vec![cfg],
                ..Default::default()
            }
        }
    };
    let first = out.configs.first().expect("every command has a config");
    let written = emit_outputs(&out, &first.output.dir, first.output.svg)?;
    println!(
        "wrote {} files to {}",
        written.len(),
        first.output.dir.display()
    );
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info")).init();
    match execute(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
