//! Global-topology particle swarm.
//!
//! Every particle follows
//!
//! ```text
//! v ← w(t)·v + iw·U·(pbest − x) + sw·U·(gbest − x)
//! x ← x + v
//! ```
//!
//! with a fresh `U(0,1)` per term, per dimension, per particle and per step,
//! and each velocity component clamped to `vmax`. Positions stay continuous;
//! they are clamped to the bounds and integer dimensions are rounded only
//! when handed to the conflict function.
//!
//! What gets memorized as a personal best is decided by an [`AcceptRule`],
//! which is how the constraint-handling strategies plug in.

use std::fmt;
use std::io::Write;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::constraints::feasible_initializer;
use crate::error::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DimKind {
    Continuous,
    /// Rounded to the nearest integer when decoded.
    Integer,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dim {
    pub lower: f64,
    pub upper: f64,
    pub kind: DimKind,
}

impl Dim {
    pub fn continuous(lower: f64, upper: f64) -> Self {
        Self {
            lower,
            upper,
            kind: DimKind::Continuous,
        }
    }

    pub fn integer(lower: i64, upper: i64) -> Self {
        Self {
            lower: lower as f64,
            upper: upper as f64,
            kind: DimKind::Integer,
        }
    }

    pub fn range(&self) -> f64 {
        self.upper - self.lower
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchSpace {
    dims: Vec<Dim>,
}

impl SearchSpace {
    pub fn new(dims: Vec<Dim>) -> Result<Self, Error> {
        if dims.is_empty() {
            return Err(Error::Config("search space needs at least one dimension".into()));
        }
        for (j, d) in dims.iter().enumerate() {
            if !(d.lower < d.upper) || !d.lower.is_finite() || !d.upper.is_finite() {
                return Err(Error::Config(format!(
                    "dimension {j} needs finite bounds with lower < upper (got [{}, {}])",
                    d.lower, d.upper
                )));
            }
        }
        Ok(Self { dims })
    }

    pub fn dims(&self) -> &[Dim] {
        &self.dims
    }

    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    /// Clamps to bounds without rounding.
    pub fn clamp(&self, x: &[f64]) -> Vec<f64> {
        x.iter()
            .zip(&self.dims)
            .map(|(&xi, d)| xi.clamp(d.lower, d.upper))
            .collect()
    }

    /// Clamps to bounds and rounds integer dimensions: the point that is evaluated.
    pub fn decode(&self, x: &[f64]) -> Vec<f64> {
        x.iter()
            .zip(&self.dims)
            .map(|(&xi, d)| {
                let c = xi.clamp(d.lower, d.upper);
                match d.kind {
                    DimKind::Continuous => c,
                    DimKind::Integer => c.round().clamp(d.lower.ceil(), d.upper.floor()),
                }
            })
            .collect()
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<f64> {
        self.dims
            .iter()
            .map(|d| d.lower + rng.random::<f64>() * d.range())
            .collect()
    }

    pub fn vmax(&self, fraction: f64) -> Vec<f64> {
        self.dims.iter().map(|d| fraction * d.range()).collect()
    }
}

/// Inertia weight as a function of the step.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum InertiaSchedule {
    Constant(f64),
    /// Decreases from `start` to `end` along a logistic curve centred at `t_max/2`.
    Sigmoid { start: f64, end: f64, steepness: f64 },
}

impl InertiaSchedule {
    pub const SIGMOID_DEFAULT: InertiaSchedule = InertiaSchedule::Sigmoid {
        start: 0.9,
        end: 0.4,
        steepness: 10.0,
    };

    pub fn at(&self, t: usize, t_max: usize) -> f64 {
        inertia_at(self, t, t_max)
    }
}

pub fn inertia_at(schedule: &InertiaSchedule, t: usize, t_max: usize) -> f64 {
    match *schedule {
        InertiaSchedule::Constant(w) => w,
        InertiaSchedule::Sigmoid {
            start,
            end,
            steepness,
        } => {
            let progress = t as f64 / t_max.max(1) as f64;
            end + (start - end) / (1.0 + (steepness * (progress - 0.5)).exp())
        }
    }
}

impl fmt::Display for InertiaSchedule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InertiaSchedule::Constant(w) => write!(f, "constant:{w}"),
            InertiaSchedule::Sigmoid {
                start,
                end,
                steepness,
            } => write!(f, "sigmoid:{start}:{end}:{steepness}"),
        }
    }
}

impl std::str::FromStr for InertiaSchedule {
    type Err = Error;

    /// `constant:W` or `sigmoid[:START:END:STEEPNESS]`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.trim().split(':').collect();
        let num = |p: &str| {
            p.trim()
                .parse::<f64>()
                .map_err(|_| Error::Config(format!("bad number `{p}` in inertia `{s}`")))
        };
        match parts.as_slice() {
            ["constant", w] => Ok(InertiaSchedule::Constant(num(w)?)),
            ["sigmoid"] => Ok(InertiaSchedule::SIGMOID_DEFAULT),
            ["sigmoid", a, b, c] => Ok(InertiaSchedule::Sigmoid {
                start: num(a)?,
                end: num(b)?,
                steepness: num(c)?,
            }),
            _ => Err(Error::Config(format!(
                "inertia must be `constant:W` or `sigmoid:START:END:STEEPNESS`, got `{s}`"
            ))),
        }
    }
}

/// Early stop when the best value improves by less than `rel_tol` (relative)
/// over `window` consecutive steps.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Stagnation {
    pub window: usize,
    pub rel_tol: f64,
}

impl Default for Stagnation {
    fn default() -> Self {
        Self {
            window: 500,
            rel_tol: 1e-10,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SwarmConfig {
    pub swarm_size: usize,
    pub t_max: usize,
    /// Individuality weight.
    pub iw: f64,
    /// Sociality weight.
    pub sw: f64,
    pub inertia: InertiaSchedule,
    /// Velocity limit per dimension as a fraction of its range.
    pub vmax_fraction: f64,
    pub seed: u64,
    /// Run the opposite-objective twin swarm alongside.
    pub twin_swarm: bool,
    pub stagnation: Option<Stagnation>,
    /// Attempts allowed for feasible initialization, per swarm.
    pub init_budget: usize,
    pub record_trace: bool,
}

impl Default for SwarmConfig {
    fn default() -> Self {
        Self {
            swarm_size: 35,
            t_max: 10_000,
            iw: 1.5,
            sw: 1.5,
            inertia: InertiaSchedule::SIGMOID_DEFAULT,
            vmax_fraction: 0.5,
            seed: 0,
            twin_swarm: true,
            stagnation: Some(Stagnation::default()),
            init_budget: 100_000,
            record_trace: false,
        }
    }
}

impl SwarmConfig {
    pub fn validate(&self) -> Result<(), Error> {
        if self.swarm_size < 1 {
            return Err(Error::Config("swarm_size must be at least 1".into()));
        }
        if self.t_max < 1 {
            return Err(Error::Config("t_max must be at least 1".into()));
        }
        if !(self.iw >= 0.0 && self.sw >= 0.0) {
            return Err(Error::Config("iw and sw must be non-negative".into()));
        }
        if !(self.vmax_fraction > 0.0 && self.vmax_fraction <= 1.0) {
            return Err(Error::Config("vmax_fraction must lie in (0, 1]".into()));
        }
        if self.init_budget < 1 {
            return Err(Error::Config("init_budget must be at least 1".into()));
        }
        if let Some(s) = self.stagnation {
            if s.window < 1 || !(s.rel_tol >= 0.0) {
                return Err(Error::Config("stagnation window must be >= 1 and tolerance >= 0".into()));
            }
        }
        Ok(())
    }
}

/// What the conflict function reports for one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Evaluation {
    /// Raw conflict value (cost) before any penalty.
    pub cost: f64,
    /// Aggregate constraint violation; 0 when feasible.
    pub violation: f64,
    pub feasible: bool,
}

impl Evaluation {
    pub fn feasible(cost: f64) -> Self {
        Self {
            cost,
            violation: 0.0,
            feasible: true,
        }
    }

    pub fn infeasible(cost: f64, violation: f64) -> Self {
        Self {
            cost,
            violation,
            feasible: false,
        }
    }
}

/// Decides which evaluations may be memorized and how they are compared.
pub trait AcceptRule: Sync {
    /// Every particle must start at an admissible point.
    fn requires_feasible_init(&self) -> bool {
        false
    }

    /// Whether `eval` may become a personal best.
    fn admissible(&self, _eval: &Evaluation) -> bool {
        true
    }

    /// The value compared at step `t`.
    fn score(&self, eval: &Evaluation, t: usize, t_max: usize) -> f64;
}

/// Plain objective: compare raw costs, memorize everything.
#[derive(Debug, Clone, Copy, Default)]
pub struct Unconstrained;

impl AcceptRule for Unconstrained {
    fn score(&self, eval: &Evaluation, _t: usize, _t_max: usize) -> f64 {
        eval.cost
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Objective {
    Minimize,
    Maximize,
}

impl Objective {
    pub fn better(self, a: f64, b: f64) -> bool {
        match self {
            Objective::Minimize => a < b,
            Objective::Maximize => a > b,
        }
    }

    pub fn opposite(self) -> Self {
        match self {
            Objective::Minimize => Objective::Maximize,
            Objective::Maximize => Objective::Minimize,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Objective::Minimize => "min",
            Objective::Maximize => "max",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Particle {
    pub x: Vec<f64>,
    pub v: Vec<f64>,
    /// Best memorized position (clamped to bounds); meaningful when `pbest_eval` is set.
    pub pbest: Vec<f64>,
    pub pbest_eval: Option<Evaluation>,
}

/// A point together with its evaluation.
#[derive(Debug, Clone, PartialEq)]
pub struct Memory {
    /// Decoded position.
    pub position: Vec<f64>,
    pub eval: Evaluation,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TraceRecord {
    pub t: usize,
    pub swarm: Objective,
    pub particle: usize,
    pub x: Vec<f64>,
    pub value: f64,
    pub feasible: bool,
}

pub struct SwarmState {
    pub particles: Vec<Particle>,
    /// Index of the particle whose pbest is the swarm best.
    pub gbest: Option<usize>,
    pub gbest_value: f64,
    pub t: usize,
    pub objective: Objective,
    /// Best feasible point ever evaluated, by raw cost.
    pub best_feasible: Option<Memory>,
    /// gbest value after initialization and after every step.
    pub history: Vec<f64>,
    pub trace: Vec<TraceRecord>,
    vmax: Vec<f64>,
    rng: ChaCha8Rng,
    reference: f64,
    last_improvement: usize,
}

impl SwarmState {
    /// Draws the initial swarm and evaluates it.
    pub fn initialize<F, A>(
        config: &SwarmConfig,
        space: &SearchSpace,
        conflict: &F,
        accept: &A,
        objective: Objective,
        stream: u64,
    ) -> Result<Self, Error>
    where
        F: Fn(&[f64]) -> Evaluation + Sync,
        A: AcceptRule + ?Sized,
    {
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        rng.set_stream(stream);
        let vmax = space.vmax(config.vmax_fraction);

        let positions = if accept.requires_feasible_init() {
            feasible_initializer(
                space,
                config.swarm_size,
                config.init_budget,
                &mut rng,
                |x| accept.admissible(&conflict(&space.decode(x))),
            )?
        } else {
            (0..config.swarm_size).map(|_| space.sample(&mut rng)).collect()
        };

        let particles = positions
            .into_iter()
            .map(|x| {
                let v = vmax
                    .iter()
                    .map(|&vm| vm * (2.0 * rng.random::<f64>() - 1.0))
                    .collect();
                Particle {
                    pbest: x.clone(),
                    x,
                    v,
                    pbest_eval: None,
                }
            })
            .collect();

        let mut state = Self {
            particles,
            gbest: None,
            gbest_value: f64::NAN,
            t: 0,
            objective,
            best_feasible: None,
            history: Vec::new(),
            trace: Vec::new(),
            vmax,
            rng,
            reference: f64::NAN,
            last_improvement: 0,
        };
        state.evaluate_and_update(config, space, conflict, accept);
        state.reference = state.gbest_value;
        Ok(state)
    }

    /// Advances one step. Returns `true` when the stagnation rule says stop.
    pub fn step<F, A>(&mut self, config: &SwarmConfig, space: &SearchSpace, conflict: &F, accept: &A) -> bool
    where
        F: Fn(&[f64]) -> Evaluation + Sync,
        A: AcceptRule + ?Sized,
    {
        self.t += 1;
        let w = config.inertia.at(self.t, config.t_max);
        let gbest = self.gbest.map(|g| self.particles[g].pbest.clone());
        for p in &mut self.particles {
            let has_pbest = p.pbest_eval.is_some();
            for j in 0..p.x.len() {
                let r1: f64 = self.rng.random();
                let r2: f64 = self.rng.random();
                let personal = if has_pbest { p.pbest[j] - p.x[j] } else { 0.0 };
                let social = gbest.as_ref().map_or(0.0, |g| g[j] - p.x[j]);
                let v = w * p.v[j] + config.iw * r1 * personal + config.sw * r2 * social;
                p.v[j] = v.clamp(-self.vmax[j], self.vmax[j]);
                p.x[j] += p.v[j];
            }
        }
        self.evaluate_and_update(config, space, conflict, accept);
        self.stagnated(config)
    }

    fn evaluate_and_update<F, A>(&mut self, config: &SwarmConfig, space: &SearchSpace, conflict: &F, accept: &A)
    where
        F: Fn(&[f64]) -> Evaluation + Sync,
        A: AcceptRule + ?Sized,
    {
        let t = self.t.max(1);
        let t_max = config.t_max;
        let decoded: Vec<Vec<f64>> = self.particles.iter().map(|p| space.decode(&p.x)).collect();
        let evals: Vec<Evaluation> = decoded.par_iter().map(|x| conflict(x)).collect();

        let objective = self.objective;
        for (i, (p, e)) in self.particles.iter_mut().zip(&evals).enumerate() {
            if accept.admissible(e) {
                let replace = match &p.pbest_eval {
                    None => true,
                    Some(old) => objective.better(accept.score(e, t, t_max), accept.score(old, t, t_max)),
                };
                if replace {
                    p.pbest = space.clamp(&p.x);
                    p.pbest_eval = Some(*e);
                }
            }
            if e.feasible {
                let better = match &self.best_feasible {
                    None => true,
                    Some(m) => objective.better(e.cost, m.eval.cost),
                };
                if better {
                    self.best_feasible = Some(Memory {
                        position: decoded[i].clone(),
                        eval: *e,
                    });
                }
            }
            if config.record_trace {
                self.trace.push(TraceRecord {
                    t: self.t,
                    swarm: objective,
                    particle: i,
                    x: decoded[i].clone(),
                    value: accept.score(e, t, t_max),
                    feasible: e.feasible,
                });
            }
        }

        // Scores are recomputed at the current step so that time-varying
        // penalties compare old and new memories on the same footing.
        let mut best: Option<(usize, f64)> = None;
        for (i, p) in self.particles.iter().enumerate() {
            if let Some(e) = &p.pbest_eval {
                let s = accept.score(e, t, t_max);
                if best.is_none_or(|(_, b)| objective.better(s, b)) {
                    best = Some((i, s));
                }
            }
        }
        self.gbest = best.map(|(i, _)| i);
        self.gbest_value = best.map_or(f64::NAN, |(_, s)| s);
        self.history.push(self.gbest_value);
    }

    fn stagnated(&mut self, config: &SwarmConfig) -> bool {
        let Some(rule) = config.stagnation else {
            return false;
        };
        let value = self.gbest_value;
        if value.is_nan() {
            self.last_improvement = self.t;
            return false;
        }
        let threshold = self.reference - self.sign() * rule.rel_tol * self.reference.abs();
        if self.reference.is_nan() || self.objective.better(value, threshold) {
            self.reference = value;
            self.last_improvement = self.t;
            return false;
        }
        // An infeasible best is still being pushed around by the penalty.
        let settled = self.gbest_eval().is_some_and(|e| e.feasible);
        settled && self.t - self.last_improvement >= rule.window
    }

    fn sign(&self) -> f64 {
        match self.objective {
            Objective::Minimize => 1.0,
            Objective::Maximize => -1.0,
        }
    }

    pub fn gbest_eval(&self) -> Option<Evaluation> {
        self.gbest.and_then(|g| self.particles[g].pbest_eval)
    }

    /// Decoded gbest position and its evaluation.
    pub fn gbest_memory(&self, space: &SearchSpace) -> Option<Memory> {
        let g = self.gbest?;
        let p = &self.particles[g];
        Some(Memory {
            position: space.decode(&p.pbest),
            eval: p.pbest_eval?,
        })
    }
}

/// Result of a swarm run.
#[derive(Debug, Clone)]
pub struct RunOutcome {
    /// Best memorized point of the primary swarm.
    pub best: Option<Memory>,
    /// Its conflict value at the final step.
    pub best_value: f64,
    /// Best feasible point ever evaluated by the primary swarm.
    pub best_feasible: Option<Memory>,
    pub steps: usize,
    /// Best memorized point of the twin swarm, if one ran.
    pub twin_best: Option<Memory>,
    pub history: Vec<f64>,
    pub trace: Vec<TraceRecord>,
}

/// Runs the primary swarm for `objective` and, if configured, the opposite twin.
///
/// Terminates at `t_max` or when the primary swarm stagnates.
pub fn run<F, A>(
    config: &SwarmConfig,
    space: &SearchSpace,
    conflict: F,
    accept: &A,
    objective: Objective,
) -> Result<RunOutcome, Error>
where
    F: Fn(&[f64]) -> Evaluation + Sync,
    A: AcceptRule + ?Sized,
{
    config.validate()?;
    let mut primary = SwarmState::initialize(config, space, &conflict, accept, objective, 0)?;
    let mut twin = if config.twin_swarm {
        Some(SwarmState::initialize(
            config,
            space,
            &conflict,
            accept,
            objective.opposite(),
            1,
        )?)
    } else {
        None
    };

    while primary.t < config.t_max {
        let stop = primary.step(config, space, &conflict, accept);
        if let Some(tw) = twin.as_mut() {
            tw.step(config, space, &conflict, accept);
        }
        if stop {
            break;
        }
    }

    let mut trace = std::mem::take(&mut primary.trace);
    if let Some(tw) = twin.as_mut() {
        trace.append(&mut tw.trace);
        trace.sort_by_key(|r| (r.t, r.swarm == Objective::Maximize, r.particle));
    }
    Ok(RunOutcome {
        best: primary.gbest_memory(space),
        best_value: primary.gbest_value,
        best_feasible: primary.best_feasible.clone(),
        steps: primary.t,
        twin_best: twin.as_ref().and_then(|tw| tw.gbest_memory(space)),
        history: std::mem::take(&mut primary.history),
        trace,
    })
}

/// Writes `t, swarm, particle, x_1..x_D, value, feasible`.
pub fn write_trace_csv<W: Write>(records: &[TraceRecord], dims: usize, out: W) -> Result<(), Error> {
    let mut w = csv::Writer::from_writer(out);
    let mut header = vec!["t".to_string(), "swarm".into(), "particle".into()];
    header.extend((1..=dims).map(|j| format!("x_{j}")));
    header.push("value".into());
    header.push("feasible".into());
    w.write_record(&header)?;
    for r in records {
        let mut row = vec![r.t.to_string(), r.swarm.label().to_string(), r.particle.to_string()];
        row.extend(r.x.iter().map(|v| v.to_string()));
        row.push(r.value.to_string());
        row.push(r.feasible.to_string());
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn sphere(x: &[f64]) -> Evaluation {
        Evaluation::feasible(x.iter().map(|v| v * v).sum())
    }

    fn quiet(seed: u64) -> SwarmConfig {
        SwarmConfig {
            seed,
            twin_swarm: false,
            stagnation: None,
            ..SwarmConfig::default()
        }
    }

    #[test]
    fn inertia_examples() {
        let c = InertiaSchedule::Constant(0.8);
        assert_eq!(c.at(1, 10_000), 0.8);
        assert_eq!(c.at(7_777, 10_000), 0.8);
        let s = InertiaSchedule::SIGMOID_DEFAULT;
        assert_abs_diff_eq!(s.at(5_000, 10_000), 0.65, epsilon = 1e-12);
        let expected = 0.4 + 0.5 / (1.0 + (10.0f64 * (1.0 / 10_000.0 - 0.5)).exp());
        assert_abs_diff_eq!(s.at(1, 10_000), expected, epsilon = 1e-15);
        assert_abs_diff_eq!(s.at(1, 10_000), 0.8967, epsilon = 1e-4);
    }

    #[test]
    fn inertia_parses() {
        assert_eq!("constant:0.8".parse::<InertiaSchedule>().unwrap(), InertiaSchedule::Constant(0.8));
        assert_eq!("sigmoid".parse::<InertiaSchedule>().unwrap(), InertiaSchedule::SIGMOID_DEFAULT);
        let s = InertiaSchedule::Sigmoid { start: 1.0, end: 0.3, steepness: 6.0 };
        assert_eq!(s.to_string().parse::<InertiaSchedule>().unwrap(), s);
        assert!("linear:1".parse::<InertiaSchedule>().is_err());
    }

    #[test]
    fn decode_rounds_integer_dims_and_clamps() {
        let space = SearchSpace::new(vec![Dim::continuous(0.0, 1.0), Dim::integer(2, 26)]).unwrap();
        assert_eq!(space.decode(&[1.5, 7.49]), vec![1.0, 7.0]);
        assert_eq!(space.decode(&[-0.1, 7.5]), vec![0.0, 8.0]);
        assert_eq!(space.decode(&[0.3, 40.0]), vec![0.3, 26.0]);
        assert_eq!(space.decode(&[0.3, -3.0]), vec![0.3, 2.0]);
    }

    #[test]
    fn search_space_rejects_empty_and_inverted() {
        assert!(SearchSpace::new(vec![]).is_err());
        assert!(SearchSpace::new(vec![Dim::continuous(1.0, 1.0)]).is_err());
    }

    #[test]
    fn fixed_point_particle_stays_put() {
        let space = SearchSpace::new(vec![Dim::continuous(-1.0, 1.0)]).unwrap();
        let cfg = SwarmConfig { swarm_size: 1, ..quiet(3) };
        let mut state = SwarmState::initialize(&cfg, &space, &sphere, &Unconstrained, Objective::Minimize, 0).unwrap();
        state.particles[0].v = vec![0.0];
        let x0 = state.particles[0].x.clone();
        for _ in 0..10 {
            state.step(&cfg, &space, &sphere, &Unconstrained);
        }
        assert_eq!(state.particles[0].x, x0);
        assert_eq!(state.particles[0].v, vec![0.0]);
    }

    #[test]
    fn pure_inertia_moves_linearly() {
        let space = SearchSpace::new(vec![Dim::continuous(-1000.0, 1000.0)]).unwrap();
        let cfg = SwarmConfig {
            swarm_size: 1,
            iw: 0.0,
            sw: 0.0,
            inertia: InertiaSchedule::Constant(1.0),
            ..quiet(5)
        };
        let mut state = SwarmState::initialize(&cfg, &space, &sphere, &Unconstrained, Objective::Minimize, 0).unwrap();
        state.particles[0].x = vec![0.25];
        state.particles[0].v = vec![0.5];
        for k in 1..=20 {
            state.step(&cfg, &space, &sphere, &Unconstrained);
            assert_abs_diff_eq!(state.particles[0].x[0], 0.25 + 0.5 * k as f64, epsilon = 1e-12);
        }
    }

    /// Re-simulates the update equations with an independent RNG stream
    /// drawn in the documented order and compares positions.
    #[test]
    fn two_particles_three_steps_match_hand_simulation() {
        let space = SearchSpace::new(vec![Dim::continuous(-1.0, 1.0)]).unwrap();
        let cfg = SwarmConfig {
            swarm_size: 2,
            t_max: 3,
            inertia: InertiaSchedule::Constant(0.8),
            ..quiet(11)
        };
        let f = |x: &[f64]| Evaluation::feasible(x[0] * x[0]);
        let mut state = SwarmState::initialize(&cfg, &space, &f, &Unconstrained, Objective::Minimize, 0).unwrap();

        let mut rng = ChaCha8Rng::seed_from_u64(11);
        rng.set_stream(0);
        let vmax = 1.0;
        let mut x: Vec<f64> = (0..2).map(|_| -1.0 + 2.0 * rng.random::<f64>()).collect();
        let mut v: Vec<f64> = (0..2).map(|_| vmax * (2.0 * rng.random::<f64>() - 1.0)).collect();
        let mut pbest = x.clone();
        let val = |x: f64| x.clamp(-1.0, 1.0).powi(2);
        let mut gbest = if val(x[0]) <= val(x[1]) { x[0] } else { x[1] };
        let mut g_hist = vec![val(gbest)];
        for _ in 0..3 {
            for i in 0..2 {
                let r1: f64 = rng.random();
                let r2: f64 = rng.random();
                v[i] = (0.8 * v[i] + 1.5 * r1 * (pbest[i] - x[i]) + 1.5 * r2 * (gbest - x[i])).clamp(-vmax, vmax);
                x[i] += v[i];
            }
            for i in 0..2 {
                if val(x[i]) < val(pbest[i]) {
                    pbest[i] = x[i].clamp(-1.0, 1.0);
                }
            }
            gbest = if val(pbest[0]) <= val(pbest[1]) { pbest[0] } else { pbest[1] };
            g_hist.push(val(gbest));
            state.step(&cfg, &space, &f, &Unconstrained);
            for (particle, &xi) in state.particles.iter().zip(&x) {
                assert_eq!(particle.x[0], xi);
                assert!(particle.v[0].abs() <= vmax);
            }
        }
        assert_eq!(state.history, g_hist);
        assert!(g_hist.windows(2).all(|w| w[1] <= w[0]));
    }

    #[test]
    fn sphere_converges() {
        let space = SearchSpace::new(vec![Dim::continuous(-5.0, 5.0); 2]).unwrap();
        let cfg = SwarmConfig {
            t_max: 500,
            inertia: InertiaSchedule::Constant(0.8),
            ..quiet(1)
        };
        let out = run(&cfg, &space, sphere, &Unconstrained, Objective::Minimize).unwrap();
        assert!(out.best_value < 1e-6, "best {}", out.best_value);
    }

    #[test]
    fn constant_conflict_returns_constant() {
        let space = SearchSpace::new(vec![Dim::continuous(0.0, 1.0); 3]).unwrap();
        let cfg = SwarmConfig { t_max: 50, ..quiet(2) };
        let out = run(&cfg, &space, |_: &[f64]| Evaluation::feasible(4.25), &Unconstrained, Objective::Minimize).unwrap();
        assert_eq!(out.best_value, 4.25);
    }

    #[test]
    fn maximizer_finds_upper_end() {
        let space = SearchSpace::new(vec![Dim::continuous(0.0, 1.0)]).unwrap();
        let cfg = SwarmConfig { t_max: 200, ..quiet(9) };
        let out = run(&cfg, &space, |x: &[f64]| Evaluation::feasible(x[0]), &Unconstrained, Objective::Maximize).unwrap();
        assert_abs_diff_eq!(out.best.unwrap().position[0], 1.0, epsilon = 1e-6);
    }

    #[test]
    fn twin_swarm_is_recorded() {
        let space = SearchSpace::new(vec![Dim::continuous(-2.0, 2.0)]).unwrap();
        let cfg = SwarmConfig {
            t_max: 200,
            twin_swarm: true,
            record_trace: true,
            swarm_size: 5,
            ..quiet(4)
        };
        let out = run(&cfg, &space, sphere, &Unconstrained, Objective::Minimize).unwrap();
        let twin = out.twin_best.unwrap();
        assert!(twin.position[0].abs() > 1.99);
        assert_eq!(out.trace.len(), 2 * 5 * 201);
        assert!(out.trace.iter().any(|r| r.swarm == Objective::Maximize));
    }

    #[test]
    fn stagnation_stops_early() {
        let space = SearchSpace::new(vec![Dim::continuous(0.0, 1.0)]).unwrap();
        let cfg = SwarmConfig {
            t_max: 10_000,
            stagnation: Some(Stagnation { window: 50, rel_tol: 1e-10 }),
            ..quiet(8)
        };
        let out = run(&cfg, &space, |_: &[f64]| Evaluation::feasible(1.0), &Unconstrained, Objective::Minimize).unwrap();
        assert_eq!(out.steps, 50);
    }

    #[test]
    fn trace_csv_has_expected_columns() {
        let records = vec![TraceRecord {
            t: 0,
            swarm: Objective::Minimize,
            particle: 3,
            x: vec![0.5, 1.25],
            value: 2.0,
            feasible: true,
        }];
        let mut buf = Vec::new();
        write_trace_csv(&records, 2, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text, "t,swarm,particle,x_1,x_2,value,feasible\n0,min,3,0.5,1.25,2,true\n");
    }

    #[test]
    fn config_validation() {
        assert!(SwarmConfig { t_max: 0, ..SwarmConfig::default() }.validate().is_err());
        assert!(SwarmConfig { vmax_fraction: 0.0, ..SwarmConfig::default() }.validate().is_err());
        assert!(SwarmConfig::default().validate().is_ok());
    }
}
