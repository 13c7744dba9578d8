//! Command-line front end: toy reproduction, generated experiments, timing
//! and a priori bounds, all written as CSV.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};
use wrapeffect::genbench::{
    bench, bound_general, bound_toy_eigen, format_float, run_experiment, timing_csv, BoundReport,
    ExperimentConfig, MatrixClass, Quality, TimingRow,
};
use wrapeffect::linalg::{inverse, qr, svd};
use wrapeffect::strategies::{Rigor, StrategyKind};
use wrapeffect::{mat_vec, Error, Matrix};

#[derive(Parser, Debug)]
#[command(
    name = "wrapeffect",
    version,
    about = "Interval enclosures of x <- A x + b and the wrapping effect"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run the two-dimensional filter example.
    Toy {
        #[command(flatten)]
        common: Common,
    },
    /// Run a generated problem.
    Run {
        #[command(flatten)]
        gen: Generated,
        #[command(flatten)]
        common: Common,
        /// Radius of every component of x0.
        #[arg(long, default_value_t = ExperimentConfig::DEFAULT_X0_RADIUS)]
        x0_radius: f64,
        /// Radius of every component of b.
        #[arg(long, default_value_t = ExperimentConfig::DEFAULT_B_RADIUS)]
        b_radius: f64,
    },
    /// Mean wall time per strategy (timing CSV).
    Bench {
        #[arg(long, default_value_t = 10)]
        reps: usize,
        /// Time the toy problem instead of a generated one.
        #[arg(long, conflicts_with_all = ["dim", "cond", "scale", "all_classes"])]
        toy: bool,
        /// Time all four matrix classes (ignores --cond/--scale).
        #[arg(long)]
        all_classes: bool,
        #[arg(long, required_unless_present = "toy")]
        dim: Option<usize>,
        #[arg(long, value_enum, default_value_t = Level::Well)]
        cond: Level,
        #[arg(long, value_enum, default_value_t = Level::Well)]
        scale: Level,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[command(flatten)]
        common: Common,
    },
    /// A priori width bounds (BoundReport CSV).
    Bound {
        #[arg(long, value_enum, default_value_t = Target::Toy)]
        target: Target,
        /// Basis B of the iteration y = B⁻¹x; `eigen` is the toy's
        /// eigenvector bound.
        #[arg(long, value_enum, default_value_t = Basis::Identity)]
        basis: Basis,
        #[arg(long, required_if_eq("target", "run"))]
        dim: Option<usize>,
        #[arg(long, value_enum, default_value_t = Level::Well)]
        cond: Level,
        #[arg(long, value_enum, default_value_t = Level::Well)]
        scale: Level,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        iters: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
struct Common {
    #[arg(long, default_value_t = 100)]
    iters: usize,
    /// Comma-separated subset of naive,qr,svd_u,svd_v,lohner,kstep,affine.
    #[arg(long, default_value = "naive,qr,svd_u,svd_v,lohner,kstep,affine")]
    strategies: String,
    #[arg(long, value_enum, default_value_t = RigorArg::Fast)]
    rigor: RigorArg,
    /// Keep at most K noise symbols per affine form.
    #[arg(long, value_name = "K")]
    condense: Option<usize>,
    /// Write the CSV here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct Generated {
    #[arg(long)]
    dim: usize,
    #[arg(long, value_enum)]
    cond: Level,
    #[arg(long, value_enum)]
    scale: Level,
    #[arg(long)]
    seed: u64,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Level {
    Well,
    Ill,
}

impl From<Level> for Quality {
    fn from(l: Level) -> Quality {
        match l {
            Level::Well => Quality::Well,
            Level::Ill => Quality::Ill,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum RigorArg {
    Fast,
    Verified,
}

impl From<RigorArg> for Rigor {
    fn from(r: RigorArg) -> Rigor {
        match r {
            RigorArg::Fast => Rigor::Fast,
            RigorArg::Verified => Rigor::Verified,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, ValueEnum)]
enum Target {
    Toy,
    Run,
}

#[derive(Clone, Copy, Debug, PartialEq, ValueEnum)]
enum Basis {
    Identity,
    Qr,
    #[value(name = "svd_u")]
    SvdU,
    #[value(name = "svd_v")]
    SvdV,
    Eigen,
}

enum Failure {
    Usage(String),
    Numerical(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        match e {
            Error::InvalidArgument(_)
            | Error::InvalidInterval { .. }
            | Error::DimensionMismatch { .. }
            | Error::Empty
            | Error::NotSquare { .. } => Failure::Usage(e.to_string()),
            _ => Failure::Numerical(e.to_string()),
        }
    }
}

struct Output {
    csv: String,
    out: Option<PathBuf>,
    /// Strategy failures already reported as CSV comment lines.
    partial: Vec<String>,
}

fn common_config(mut cfg: ExperimentConfig, common: &Common) -> Result<ExperimentConfig, Failure> {
    cfg.strategies = StrategyKind::parse_list(&common.strategies)?;
    cfg.rigor = common.rigor.into();
    cfg.condense = common.condense;
    cfg.validate()?;
    Ok(cfg)
}

fn experiment(cfg: ExperimentConfig, out: Option<PathBuf>) -> Result<Output, Failure> {
    let exp = run_experiment(&cfg)?;
    let partial = exp
        .failures()
        .map(|(k, e)| format!("strategy {k} failed: {e}"))
        .collect();
    Ok(Output {
        csv: exp.to_csv(),
        out,
        partial,
    })
}

fn bench_rows(cfgs: &[ExperimentConfig], reps: usize) -> Result<Vec<TimingRow>, Failure> {
    let mut rows = Vec::new();
    for cfg in cfgs {
        rows.extend(bench(cfg, reps)?);
    }
    Ok(rows)
}

fn bound_csv(report: &BoundReport, basis: Basis, target: Target) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "# target={}",
        if target == Target::Toy { "toy" } else { "run" }
    );
    let basis_name = match basis {
        Basis::Identity => "identity",
        Basis::Qr => "qr",
        Basis::SvdU => "svd_u",
        Basis::SvdV => "svd_v",
        Basis::Eigen => "eigen",
    };
    let _ = writeln!(s, "# basis={basis_name}");
    let _ = writeln!(s, "# kappa={}", format_float(report.kappa));
    let _ = writeln!(s, "# growth={}", format_float(report.growth));
    let _ = writeln!(s, "# a_norm={}", format_float(report.a_norm));
    let _ = writeln!(s, "# wid_y0_norm={}", format_float(report.wid_y0_norm));
    let _ = writeln!(s, "# wid_b_norm={}", format_float(report.wid_b_norm));
    let _ = writeln!(s, "# grows={}", report.grows());
    s.push_str("iter");
    for series in &report.series {
        s.push(',');
        s.push_str(series.name);
    }
    s.push('\n');
    let n = report.series.first().map_or(0, |x| x.values.len());
    for i in 0..n {
        s.push_str(&i.to_string());
        for series in &report.series {
            s.push(',');
            s.push_str(&format_float(series.values[i]));
        }
        s.push('\n');
    }
    s
}

fn bound(
    target: Target,
    basis: Basis,
    gen: Option<(usize, MatrixClass, u64)>,
    iters: usize,
) -> Result<String, Failure> {
    if basis == Basis::Eigen {
        if target != Target::Toy {
            return Err(Failure::Usage(
                "--basis eigen is only available with --target toy".into(),
            ));
        }
        return Ok(bound_csv(&bound_toy_eigen(iters), basis, target));
    }
    let cfg = match gen {
        None => ExperimentConfig::toy(iters.max(1)),
        Some((dim, class, seed)) => ExperimentConfig::generated(dim, class, seed, iters.max(1)),
    };
    let p = cfg.problem()?;
    let a = p.a();
    let b: Matrix = match basis {
        Basis::Identity => Matrix::identity(p.dim()),
        Basis::Qr => qr(a)?.q,
        Basis::SvdU => svd(a)?.u,
        Basis::SvdV => svd(a)?.v.transpose(),
        Basis::Eigen => unreachable!("handled above"),
    };
    let b_inv = if basis == Basis::Identity {
        b.clone()
    } else {
        inverse(&b)?
    };
    let wid_y0 = mat_vec(&b_inv, p.x0())?.wid();
    let wid_b = p.b().wid();
    let report = bound_general(a, &b, &wid_y0, &wid_b, iters)?;
    Ok(bound_csv(&report, basis, target))
}

fn execute(cli: Cli) -> Result<Output, Failure> {
    match cli.command {
        Command::Toy { common } => {
            let cfg = common_config(ExperimentConfig::toy(common.iters), &common)?;
            experiment(cfg, common.out)
        }
        Command::Run {
            gen,
            common,
            x0_radius,
            b_radius,
        } => {
            let class = MatrixClass::new(gen.cond.into(), gen.scale.into());
            let mut cfg = ExperimentConfig::generated(gen.dim, class, gen.seed, common.iters);
            cfg.x0_radius = x0_radius;
            cfg.b_radius = b_radius;
            let cfg = common_config(cfg, &common)?;
            experiment(cfg, common.out)
        }
        Command::Bench {
            reps,
            toy: is_toy,
            all_classes,
            dim,
            cond,
            scale,
            seed,
            common,
        } => {
            if reps == 0 {
                return Err(Failure::Usage("--reps must be at least 1".into()));
            }
            let cfgs = if is_toy {
                vec![ExperimentConfig::toy(common.iters)]
            } else {
                let dim = dim.expect("required unless --toy");
                let classes = if all_classes {
                    MatrixClass::ALL.to_vec()
                } else {
                    vec![MatrixClass::new(cond.into(), scale.into())]
                };
                classes
                    .into_iter()
                    .map(|c| ExperimentConfig::generated(dim, c, seed, common.iters))
                    .collect()
            };
            let cfgs = cfgs
                .into_iter()
                .map(|c| common_config(c, &common))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(Output {
                csv: timing_csv(&bench_rows(&cfgs, reps)?),
                out: common.out,
                partial: Vec::new(),
            })
        }
        Command::Bound {
            target,
            basis,
            dim,
            cond,
            scale,
            seed,
            iters,
            out,
        } => {
            let gen = match target {
                Target::Toy => None,
                Target::Run => Some((
                    dim.expect("required for --target run"),
                    MatrixClass::new(cond.into(), scale.into()),
                    seed,
                )),
            };
            Ok(Output {
                csv: bound(target, basis, gen, iters)?,
                out,
                partial: Vec::new(),
            })
        }
    }
}

fn usage_error(msg: &str) -> ExitCode {
    let usage = Cli::command().render_usage();
    eprintln!("error: {msg}\n\n{usage}");
    ExitCode::from(1)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            if !e.use_stderr() {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            let msg = e.render().to_string();
            eprint!("{msg}");
            if !msg.contains("Usage:") {
                eprintln!("\n{}", Cli::command().render_usage());
            }
            return ExitCode::from(1);
        }
    };
    match execute(cli) {
        Ok(output) => {
            match &output.out {
                Some(path) => {
                    if let Err(e) = std::fs::write(path, &output.csv) {
                        eprintln!("error: cannot write {}: {e}", path.display());
                        return ExitCode::from(1);
                    }
                }
                None => print!("{}", output.csv),
            }
            if output.partial.is_empty() {
                ExitCode::SUCCESS
            } else {
                for msg in &output.partial {
                    eprintln!("error: {msg}");
                }
                ExitCode::from(2)
            }
        }
        Err(Failure::Usage(msg)) => usage_error(&msg),
        Err(Failure::Numerical(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
