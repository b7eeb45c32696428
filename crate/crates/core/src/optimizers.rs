//! The two section optimizers.
//!
//! * [`optimize1`] searches `(b, h)` only. Reinforcement is derived with
//!   [`deterministic_reinforcement`], and only feasible points are memorized.
//!   Inertia decreases along a sigmoid.
//! * [`optimize2`] searches `(b, h, n, bar)` with the bar count and the bar
//!   index as integer dimensions. It compares penalized costs with a
//!   coefficient that follows a [`PenaltySchedule`], and uses a constant
//!   inertia of 0.8.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::beam_model::{max_bars, min_width, BarSpec, DesignProblem, Section};
use crate::checks::{check_all, CheckReport};
use crate::constraints::{Penalization, PenaltySchedule, PreservingFeasibility};
use crate::cost::{cost, form_cost, CostBreakdown};
use crate::error::Error;
use crate::pso::{run, Dim, Evaluation, InertiaSchedule, Memory, Objective, SearchSpace, SwarmConfig, TraceRecord};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    /// Preserving feasibility over `(b, h)` with derived reinforcement.
    Optimizer1,
    /// Penalization over `(b, h, n, bar)`.
    Optimizer2,
}

impl Variant {
    /// Swarm defaults for this optimizer: 35 particles, 10 000 steps, and the
    /// variant's inertia schedule.
    pub fn default_swarm(self) -> SwarmConfig {
        let inertia = match self {
            Variant::Optimizer1 => InertiaSchedule::SIGMOID_DEFAULT,
            Variant::Optimizer2 => InertiaSchedule::Constant(0.8),
        };
        SwarmConfig {
            inertia,
            ..SwarmConfig::default()
        }
    }

    pub fn number(self) -> u8 {
        match self {
            Variant::Optimizer1 => 1,
            Variant::Optimizer2 => 2,
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "optimizer{}", self.number())
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "1" | "optimizer1" => Ok(Variant::Optimizer1),
            "2" | "optimizer2" => Ok(Variant::Optimizer2),
            other => Err(Error::Config(format!("unknown optimizer `{other}` (use 1 or 2)"))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct OptimizerSpec {
    pub variant: Variant,
    pub swarm: SwarmConfig,
    /// Only used by [`Variant::Optimizer2`].
    pub penalty: Penalization,
    pub problem: DesignProblem,
}

impl OptimizerSpec {
    pub fn new(variant: Variant, problem: DesignProblem) -> Self {
        Self {
            variant,
            swarm: variant.default_swarm(),
            penalty: Penalization::default(),
            problem,
        }
    }

    pub fn with_penalty(mut self, schedule: PenaltySchedule) -> Self {
        self.penalty.schedule = schedule;
        self
    }

    pub fn run(&self, seed: u64) -> Result<DesignResult, Error> {
        match self.variant {
            Variant::Optimizer1 => optimize1(&self.problem, &self.swarm, seed),
            Variant::Optimizer2 => optimize2(&self.problem, &self.swarm, &self.penalty, seed),
        }
    }

    /// Independent runs, one per seed, in seed order.
    pub fn replicate(&self, seeds: &[u64]) -> Result<Replicates, Error> {
        let runs = seeds
            .par_iter()
            .map(|&s| self.run(s))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Replicates { runs })
    }
}

/// An optimized section with everything needed to audit it.
#[derive(Debug, Clone)]
pub struct DesignResult {
    pub variant: Variant,
    pub section: Section,
    pub cost: CostBreakdown,
    pub report: CheckReport,
    /// The run found a feasible point; always true for [`Variant::Optimizer1`].
    pub feasible: bool,
    pub steps_used: usize,
    pub seed: u64,
    pub wall_time: Duration,
    /// Worst feasible cost reached by the twin (maximizer) swarm.
    pub twin_cost: Option<f64>,
    /// Decoded search position of the result.
    pub position: Vec<f64>,
    pub trace: Vec<TraceRecord>,
}

#[derive(Debug, Clone)]
pub struct Replicates {
    pub runs: Vec<DesignResult>,
}

impl Replicates {
    /// Cheapest feasible run, or the cheapest run if none is feasible.
    pub fn best(&self) -> Option<&DesignResult> {
        let pick = |feasible_only: bool| {
            self.runs
                .iter()
                .filter(|r| !feasible_only || r.feasible)
                .min_by(|a, b| a.cost.total.total_cmp(&b.cost.total))
        };
        pick(true).or_else(|| pick(false))
    }

    /// Median total cost over feasible runs.
    pub fn median_total(&self) -> Option<f64> {
        let mut totals: Vec<f64> = self.runs.iter().filter(|r| r.feasible).map(|r| r.cost.total).collect();
        if totals.is_empty() {
            return None;
        }
        totals.sort_by(f64::total_cmp);
        let m = totals.len() / 2;
        Some(if totals.len() % 2 == 1 {
            totals[m]
        } else {
            (totals[m - 1] + totals[m]) / 2.0
        })
    }
}

/// Outcome of the reinforcement scan at a fixed `(b, h)`.
#[derive(Debug, Clone, PartialEq)]
pub enum Reinforcement {
    Found { n: u32, bar: BarSpec },
    Infeasible,
}

impl Reinforcement {
    pub fn section(&self, b: f64, h: f64) -> Option<Section> {
        match self {
            Reinforcement::Found { n, bar } => Some(Section {
                b,
                h,
                n: *n,
                bar: bar.clone(),
            }),
            Reinforcement::Infeasible => None,
        }
    }
}

/// Smallest diameter first, then fewest bars, up to as many as fit in `b`;
/// returns the first combination that passes every check.
pub fn deterministic_reinforcement(problem: &DesignProblem, b: f64, h: f64) -> Reinforcement {
    for bar in problem.catalog.bars() {
        let Some(n_max) = max_bars(b, bar, &problem.limits) else {
            continue;
        };
        let mut section = Section {
            b,
            h,
            n: 2,
            bar: bar.clone(),
        };
        for n in 2..=n_max {
            section.n = n;
            if check_all(problem, &section).is_feasible() {
                return Reinforcement::Found { n, bar: bar.clone() };
            }
        }
    }
    Reinforcement::Infeasible
}

/// Section and cost at `(b, h)` with derived reinforcement, if any passes.
pub fn design_at(problem: &DesignProblem, b: f64, h: f64) -> Option<(Section, CostBreakdown)> {
    let section = deterministic_reinforcement(problem, b, h).section(b, h)?;
    let c = cost(&section, &problem.rates);
    Some((section, c))
}

/// Largest bar count for the penalized search: as many of the smallest bar as fit in `b_max`.
pub fn n_cap(problem: &DesignProblem) -> u32 {
    let smallest = problem.catalog.smallest();
    max_bars(problem.limits.b_max, smallest, &problem.limits).unwrap_or(2)
}

fn width_height_dims(problem: &DesignProblem) -> Vec<Dim> {
    let l = &problem.limits;
    vec![Dim::continuous(l.b_min, l.b_max), Dim::continuous(l.h_min, l.h_max)]
}

fn seeded(swarm: &SwarmConfig, seed: u64) -> SwarmConfig {
    SwarmConfig {
        seed,
        ..swarm.clone()
    }
}

pub fn optimize1(problem: &DesignProblem, swarm: &SwarmConfig, seed: u64) -> Result<DesignResult, Error> {
    problem.validate()?;
    let start = Instant::now();
    let cfg = seeded(swarm, seed);
    let space = SearchSpace::new(width_height_dims(problem))?;
    let conflict = |x: &[f64]| match design_at(problem, x[0], x[1]) {
        Some((_, c)) => Evaluation::feasible(c.total),
        None => Evaluation::infeasible(form_cost(x[0], x[1], &problem.rates).total, 1.0),
    };
    let outcome = run(&cfg, &space, conflict, &PreservingFeasibility, Objective::Minimize)?;
    let best = outcome
        .best_feasible
        .clone()
        .or(outcome.best.clone())
        .expect("feasible initialization guarantees a memorized point");
    let (section, c) = design_at(problem, best.position[0], best.position[1])
        .expect("memorized points are feasible");
    let report = check_all(problem, &section);
    Ok(DesignResult {
        variant: Variant::Optimizer1,
        feasible: report.is_feasible(),
        section,
        cost: c,
        report,
        steps_used: outcome.steps,
        seed,
        wall_time: start.elapsed(),
        twin_cost: outcome.twin_best.map(|m| m.eval.cost),
        position: best.position,
        trace: outcome.trace,
    })
}

/// Decodes a `(b, h, n, bar index)` position into a section.
pub fn section_from_position(problem: &DesignProblem, x: &[f64]) -> Section {
    let idx = (x[3].round().max(0.0) as usize).min(problem.catalog.len() - 1);
    Section {
        b: x[0],
        h: x[1],
        n: x[2].round().max(2.0) as u32,
        bar: problem.catalog.bars()[idx].clone(),
    }
}

pub fn optimize2(
    problem: &DesignProblem,
    swarm: &SwarmConfig,
    penalty: &Penalization,
    seed: u64,
) -> Result<DesignResult, Error> {
    problem.validate()?;
    penalty.schedule.validate()?;
    let start = Instant::now();
    let cfg = seeded(swarm, seed);
    let mut dims = width_height_dims(problem);
    dims.push(Dim::integer(2, n_cap(problem).max(3) as i64));
    dims.push(Dim::integer(0, problem.catalog.len().max(2) as i64 - 1));
    let space = SearchSpace::new(dims)?;
    let conflict = |x: &[f64]| {
        let section = section_from_position(problem, x);
        let report = check_all(problem, &section);
        penalty.evaluation(cost(&section, &problem.rates).total, &report.magnitudes())
    };
    let outcome = run(&cfg, &space, conflict, penalty, Objective::Minimize)?;
    let best: Memory = outcome
        .best_feasible
        .clone()
        .or(outcome.best.clone())
        .expect("every evaluation is memorized under penalization");
    let section = section_from_position(problem, &best.position);
    let report = check_all(problem, &section);
    Ok(DesignResult {
        variant: Variant::Optimizer2,
        feasible: report.is_feasible(),
        cost: cost(&section, &problem.rates),
        section,
        report,
        steps_used: outcome.steps,
        seed,
        wall_time: start.elapsed(),
        twin_cost: outcome.twin_best.map(|m| m.eval.cost),
        position: best.position,
        trace: outcome.trace,
    })
}

/// All `(n, bar)` pairs that fit in `b`, in scan order.
pub fn candidate_reinforcements(problem: &DesignProblem, b: f64) -> Vec<(u32, BarSpec)> {
    let mut out = Vec::new();
    for bar in problem.catalog.bars() {
        let mut n = 2;
        while min_width(n, bar, &problem.limits) <= b {
            out.push((n, bar.clone()));
            n += 1;
        }
    }
    out
}
