//! Command-line front end.
//!
//! Exit codes: 0 on success or a feasible section, 1 when a section is
//! infeasible or a target is missed, 2 on usage and configuration errors.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use crate::beam_model::{CatalogVariant, Section};
use crate::checks::check_all;
use crate::config::{CaseChoice, RunConfig};
use crate::error::Error;
use crate::optimizers::{OptimizerSpec, Variant};
use crate::oracle::{grid_map, grid_search, write_heatmap, GridSpec};
use crate::pso::write_trace_csv;
use crate::published::{self, PublishedRow};
use crate::report::{check_text, design_row, structured, ROW_HEADER};

pub const EXIT_OK: u8 = 0;
pub const EXIT_MISS: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

#[derive(Debug, Parser)]
#[command(name = "frpbeam", version, about = "Minimum-cost design of FRP-reinforced concrete beams")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate one section and print every intermediate quantity.
    Check(CheckArgs),
    /// Run an optimizer over one or more seeds.
    Optimize(OptimizeArgs),
    /// Exhaustive grid search with derived reinforcement.
    Oracle(OracleArgs),
    /// Re-run the reference scenarios and compare with the printed designs.
    Reproduce(ReproduceArgs),
}

#[derive(Debug, Clone, Args)]
pub struct ProblemArgs {
    /// TOML run configuration; flags override its values.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Cost case: A, B, C or custom.
    #[arg(long)]
    pub case: Option<CaseChoice>,
    /// Bar-cost table: reconciled or as-printed.
    #[arg(long)]
    pub catalog: Option<CatalogVariant>,
    /// Bar table CSV replacing the built-in one.
    #[arg(long)]
    pub catalog_csv: Option<PathBuf>,
    /// Maximum section height, m.
    #[arg(long)]
    pub hmax: Option<f64>,
}

impl ProblemArgs {
    fn resolve(&self) -> Result<RunConfig, Error> {
        let mut cfg = match &self.config {
            Some(path) => RunConfig::from_path(path)?,
            None => RunConfig::default(),
        };
        if let Some(c) = self.case {
            cfg.run.case = c;
        }
        if let Some(c) = self.catalog {
            cfg.run.catalog = c;
        }
        if let Some(p) = &self.catalog_csv {
            cfg.run.catalog_csv = Some(p.clone());
        }
        if let Some(h) = self.hmax {
            cfg.limits.h_max = h;
        }
        Ok(cfg)
    }
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    #[command(flatten)]
    pub problem: ProblemArgs,
    /// Width, m.
    #[arg(long)]
    pub b: f64,
    /// Height, m.
    #[arg(long)]
    pub h: f64,
    /// Number of bars.
    #[arg(long)]
    pub n: u32,
    /// Bar designation, e.g. '#6'.
    #[arg(long)]
    pub bar: String,
}

#[derive(Debug, Args)]
pub struct OptimizeArgs {
    #[command(flatten)]
    pub problem: ProblemArgs,
    /// 1 (feasibility preserving) or 2 (penalized).
    #[arg(long)]
    pub optimizer: Option<Variant>,
    /// A run count (seeds 1..=N) or a comma-separated seed list.
    #[arg(long)]
    pub seeds: Option<String>,
    /// Penalty schedule, `linear:K0:K1` or `constant:K`.
    #[arg(long)]
    pub penalty: Option<String>,
    /// Iteration limit.
    #[arg(long)]
    pub tmax: Option<usize>,
    /// Inertia schedule, `constant:W` or `sigmoid[:START:END:STEEPNESS]`.
    #[arg(long)]
    pub inertia: Option<String>,
    /// Plain-text report file.
    #[arg(long)]
    pub report: Option<PathBuf>,
    /// `key = value` report file.
    #[arg(long)]
    pub summary: Option<PathBuf>,
    /// Trace CSV of the best run.
    #[arg(long)]
    pub trace: Option<PathBuf>,
    /// Write the resolved configuration as TOML.
    #[arg(long)]
    pub save_config: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    #[command(flatten)]
    pub problem: ProblemArgs,
    /// Grid step in both directions, mm.
    #[arg(long, default_value_t = 1.0)]
    pub step_mm: f64,
    /// Heatmap CSV (b, h, feasible, cost).
    #[arg(long)]
    pub heatmap: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ReproduceArgs {
    /// Restrict to one height limit: table2 (2 m) or table3 (0.35 m).
    #[arg(long, value_parser = ["table2", "table3"])]
    pub only: Option<String>,
    /// Seeded runs per scenario.
    #[arg(long, default_value_t = 5)]
    pub seeds: u64,
    /// Iteration limit override.
    #[arg(long)]
    pub tmax: Option<usize>,
    /// Also run the 1 mm grid search per scenario.
    #[arg(long)]
    pub oracle: bool,
}

/// Parses `"5"` as seeds 1..=5 and `"3,7"` as that list.
pub fn parse_seeds(text: &str) -> Result<Vec<u64>, Error> {
    let bad = || Error::Config(format!("bad seed list `{text}`"));
    if text.contains(',') {
        return text
            .split(',')
            .map(|s| s.trim().parse::<u64>().map_err(|_| bad()))
            .collect();
    }
    let count: u64 = text.trim().parse().map_err(|_| bad())?;
    if count == 0 {
        return Err(Error::Config("at least one seed is required".into()));
    }
    Ok((1..=count).collect())
}

fn create(path: &Path) -> Result<BufWriter<File>, Error> {
    Ok(BufWriter::new(File::create(path)?))
}

fn usage(err: &Error) -> bool {
    matches!(
        err,
        Error::Config(_) | Error::Catalog(_) | Error::InvalidSection(_) | Error::Geometry(_)
    )
}

fn cmd_check(args: &CheckArgs, out: &mut dyn Write) -> Result<u8, Error> {
    let cfg = args.problem.resolve()?;
    let problem = cfg.problem()?;
    let bar = problem
        .catalog
        .find(&args.bar)
        .ok_or_else(|| Error::Catalog(format!("no bar `{}` in the catalog", args.bar)))?
        .clone();
    let section = Section::new(args.b, args.h, args.n, bar)?;
    let report = check_all(&problem, &section);
    let c = crate::cost::cost(&section, &problem.rates);
    write!(out, "{}", check_text(&section, &report))?;
    writeln!(
        out,
        "cost: concrete {:.4}, shuttering {:.4}, reinforcement {:.4}, total {:.4}",
        c.concrete, c.shuttering, c.reinforcement, c.total
    )?;
    Ok(if report.is_feasible() { EXIT_OK } else { EXIT_MISS })
}

fn cmd_optimize(args: &OptimizeArgs, out: &mut dyn Write) -> Result<u8, Error> {
    let mut cfg = args.problem.resolve()?;
    if let Some(v) = args.optimizer {
        cfg.run.optimizer = v.number();
    }
    if let Some(s) = &args.seeds {
        cfg.run.seeds = parse_seeds(s)?;
    }
    if let Some(p) = &args.penalty {
        cfg.penalty.schedule = p.clone();
    }
    if let Some(t) = args.tmax {
        cfg.swarm.t_max = t;
    }
    if let Some(i) = &args.inertia {
        cfg.swarm.inertia = Some(i.clone());
    }
    for (slot, arg) in [
        (&mut cfg.run.report, &args.report),
        (&mut cfg.run.summary, &args.summary),
        (&mut cfg.run.trace, &args.trace),
    ] {
        if arg.is_some() {
            *slot = arg.clone();
        }
    }
    if cfg.run.trace.is_some() {
        cfg.swarm.record_trace = true;
    }
    cfg.validate()?;
    if let Some(path) = &args.save_config {
        std::fs::write(path, cfg.to_toml()?)?;
    }
    let spec = cfg.optimizer()?;
    let reps = spec.replicate(&cfg.run.seeds)?;

    let mut text = String::new();
    text.push_str(&format!(
        "{} on case {}, h_max = {} m, seeds {:?}\n{ROW_HEADER}\n",
        spec.variant, cfg.run.case, spec.problem.limits.h_max, cfg.run.seeds
    ));
    for r in &reps.runs {
        text.push_str(&format!(
            "{}  seed={} feasible={} steps={} time={:.2}s\n",
            design_row(&cfg.run.case.to_string(), &r.section, &r.cost),
            r.seed,
            r.feasible,
            r.steps_used,
            r.wall_time.as_secs_f64()
        ));
    }
    let best = reps.best().expect("at least one seed");
    text.push_str(&format!(
        "best: {}  seed={}\n",
        design_row(&cfg.run.case.to_string(), &best.section, &best.cost),
        best.seed
    ));
    if let Some(m) = reps.median_total() {
        text.push_str(&format!("median total: {m:.4}\n"));
    }
    out.write_all(text.as_bytes())?;

    if let Some(path) = &cfg.run.report {
        std::fs::write(path, &text)?;
    }
    if let Some(path) = &cfg.run.summary {
        let mut s = format!("case = {}\nseeds = {:?}\n", cfg.run.case, cfg.run.seeds);
        s.push_str(&structured("best.", best));
        for r in &reps.runs {
            s.push_str(&structured(&format!("run.{}.", r.seed), r));
        }
        std::fs::write(path, s)?;
    }
    if let Some(path) = &cfg.run.trace {
        write_trace_csv(&best.trace, best.position.len(), create(path)?)?;
    }
    Ok(if best.feasible { EXIT_OK } else { EXIT_MISS })
}

fn cmd_oracle(args: &OracleArgs, out: &mut dyn Write) -> Result<u8, Error> {
    let cfg = args.problem.resolve()?;
    let problem = cfg.problem()?;
    let step = args.step_mm / 1000.0;
    let grid = GridSpec::new(step, step)?;
    let result = match grid_search(&problem, &grid) {
        Ok(r) => r,
        Err(Error::NoFeasiblePoint { evaluated }) => {
            writeln!(out, "no feasible point among {evaluated} grid points")?;
            return Ok(EXIT_MISS);
        }
        Err(e) => return Err(e),
    };
    writeln!(out, "grid {} mm, {} of {} points feasible", args.step_mm, result.feasible_count, result.evaluated_count)?;
    writeln!(out, "{ROW_HEADER}")?;
    writeln!(out, "{}", design_row(&cfg.run.case.to_string(), &result.section, &result.cost))?;
    if let Some(path) = &args.heatmap {
        write_heatmap(&grid_map(&problem, &grid)?, create(path)?)?;
    }
    Ok(EXIT_OK)
}

/// Relative-error threshold and comparison rule of a reference scenario.
pub fn target(row: &PublishedRow) -> (f64, bool) {
    // (tolerance, one-sided): one-sided rows only need to match or beat the printed total.
    match (row.table, row.variant) {
        (2, Variant::Optimizer1) => (0.005, false),
        (2, Variant::Optimizer2) => (0.01, false),
        (_, Variant::Optimizer1) => (0.01, false),
        (_, Variant::Optimizer2) => (0.005, true),
    }
}

/// Whether `total` meets the scenario's target.
pub fn meets_target(row: &PublishedRow, total: f64) -> bool {
    let (tol, one_sided) = target(row);
    let rel = (total - row.total) / row.total;
    if one_sided { rel <= tol } else { rel.abs() <= tol }
}

/// Optimizer for a reference scenario.
pub fn scenario_spec(row: &PublishedRow) -> OptimizerSpec {
    let spec = OptimizerSpec::new(row.variant, row.optimizer_problem());
    match row.variant {
        Variant::Optimizer1 => spec,
        Variant::Optimizer2 => spec.with_penalty(row.penalty()),
    }
}

fn cmd_reproduce(args: &ReproduceArgs, out: &mut dyn Write) -> Result<u8, Error> {
    if args.seeds == 0 {
        return Err(Error::Config("--seeds must be at least 1".into()));
    }
    let seeds: Vec<u64> = (1..=args.seeds).collect();
    let tables: &[u8] = match args.only.as_deref() {
        Some("table2") => &[2],
        Some("table3") => &[3],
        _ => &[2, 3],
    };
    writeln!(
        out,
        "{:<34} {:>9} {:>9} {:>8}  {:<9} {:<9} {:>9}  status",
        "scenario", "printed", "obtained", "rel.err", "printed", "obtained", "oracle"
    )?;
    let mut all_ok = true;
    for &table in tables {
        for row in published::rows_for(table) {
            let mut spec = scenario_spec(row);
            if let Some(t) = args.tmax {
                spec.swarm.t_max = t;
            }
            let reps = spec.replicate(&seeds)?;
            let best = reps.best().expect("at least one seed");
            let mut ok = best.feasible && meets_target(row, best.cost.total);
            let bars = format!("{}x{}", best.section.n, best.section.bar.designation);
            if row.table == 2 && row.variant == Variant::Optimizer1 {
                ok &= best.section.n == row.n && *best.section.bar.designation == *row.bar;
            }
            let oracle = if args.oracle {
                grid_search(&spec.problem, &GridSpec::default())
                    .map(|g| format!("{:.4}", g.cost.total))
                    .unwrap_or_else(|_| "none".into())
            } else {
                "-".into()
            };
            all_ok &= ok;
            writeln!(
                out,
                "{:<34} {:>9.4} {:>9.4} {:>+7.3}%  {:<9} {:<9} {:>9}  {}",
                row.label(),
                row.total,
                best.cost.total,
                100.0 * (best.cost.total - row.total) / row.total,
                format!("{}x{}", row.n, row.bar),
                bars,
                oracle,
                if ok { "ok" } else { "MISS" }
            )?;
        }
    }
    Ok(if all_ok { EXIT_OK } else { EXIT_MISS })
}

/// Runs the CLI on `args` (program name first) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{e}");
                return EXIT_USAGE;
            }
            let _ = write!(out, "{e}");
            return EXIT_OK;
        }
    };
    let result = match &cli.command {
        Command::Check(a) => cmd_check(a, out),
        Command::Optimize(a) => cmd_optimize(a, out),
        Command::Oracle(a) => cmd_oracle(a, out),
        Command::Reproduce(a) => cmd_reproduce(a, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if usage(&e) { EXIT_USAGE } else { EXIT_MISS }
        }
    }
}

pub fn main() -> ExitCode {
    let mut out = io::stdout().lock();
    let mut err = io::stderr().lock();
    ExitCode::from(run(std::env::args_os(), &mut out, &mut err))
}
