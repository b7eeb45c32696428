//! Constraint handling: preserving feasibility and time-scheduled penalization.

use std::fmt;
use std::str::FromStr;

use rand::Rng;

use crate::error::Error;
use crate::pso::{AcceptRule, Evaluation, Memory, SearchSpace};

/// Penalty coefficient over the run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PenaltySchedule {
    /// Grows linearly from `start` at t = 1 to `end` at t = t_max.
    Linear { start: f64, end: f64 },
    Constant(f64),
}

impl PenaltySchedule {
    pub const DEFAULT: PenaltySchedule = PenaltySchedule::Linear {
        start: 1e5,
        end: 1e10,
    };

    pub fn at(&self, t: usize, t_max: usize) -> f64 {
        schedule_at(self, t, t_max)
    }

    pub fn validate(&self) -> Result<(), Error> {
        match *self {
            PenaltySchedule::Linear { start, end } if start >= 0.0 && start <= end => Ok(()),
            PenaltySchedule::Constant(k) if k >= 0.0 => Ok(()),
            _ => Err(Error::Config(format!(
                "penalty schedule `{self}` needs non-negative coefficients with start <= end"
            ))),
        }
    }
}

pub fn schedule_at(schedule: &PenaltySchedule, t: usize, t_max: usize) -> f64 {
    match *schedule {
        PenaltySchedule::Constant(k) => k,
        PenaltySchedule::Linear { start, end } => {
            if t_max <= 1 {
                return start;
            }
            let t = t.clamp(1, t_max);
            start + (end - start) * (t - 1) as f64 / (t_max - 1) as f64
        }
    }
}

impl fmt::Display for PenaltySchedule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PenaltySchedule::Linear { start, end } => write!(f, "linear:{start:e}:{end:e}"),
            PenaltySchedule::Constant(k) => write!(f, "constant:{k:e}"),
        }
    }
}

impl FromStr for PenaltySchedule {
    type Err = Error;

    /// `linear:START:END` or `constant:K`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.trim().split(':').collect();
        let num = |p: &str| {
            p.trim()
                .parse::<f64>()
                .map_err(|_| Error::Config(format!("bad number `{p}` in penalty `{s}`")))
        };
        let schedule = match parts.as_slice() {
            ["linear", a, b] => PenaltySchedule::Linear {
                start: num(a)?,
                end: num(b)?,
            },
            ["constant", k] => PenaltySchedule::Constant(num(k)?),
            _ => {
                return Err(Error::Config(format!(
                    "penalty must be `linear:START:END` or `constant:K`, got `{s}`"
                )))
            }
        };
        schedule.validate()?;
        Ok(schedule)
    }
}

/// How the violation vector is folded into one number.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PenaltyForm {
    Sum,
    #[default]
    SquaredSum,
}

impl PenaltyForm {
    pub fn aggregate(&self, violations: &[f64]) -> f64 {
        match self {
            PenaltyForm::Sum => violations.iter().sum(),
            PenaltyForm::SquaredSum => violations.iter().map(|v| v * v).sum(),
        }
    }
}

impl fmt::Display for PenaltyForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PenaltyForm::Sum => "sum",
            PenaltyForm::SquaredSum => "squared-sum",
        })
    }
}

impl FromStr for PenaltyForm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "sum" => Ok(PenaltyForm::Sum),
            "squared-sum" | "squared" => Ok(PenaltyForm::SquaredSum),
            other => Err(Error::Config(format!("unknown penalty form `{other}`"))),
        }
    }
}

/// `cost + k·aggregate(violations)` and whether every violation is zero.
pub fn penalized_conflict(cost: f64, violations: &[f64], k: f64, form: PenaltyForm) -> (f64, bool) {
    let feasible = violations.iter().all(|&v| v == 0.0);
    if feasible {
        return (cost, true);
    }
    (cost + k * form.aggregate(violations), false)
}

/// Memorizes feasible points only.
#[derive(Debug, Clone, Copy, Default)]
pub struct PreservingFeasibility;

impl AcceptRule for PreservingFeasibility {
    fn requires_feasible_init(&self) -> bool {
        true
    }

    fn admissible(&self, eval: &Evaluation) -> bool {
        eval.feasible
    }

    fn score(&self, eval: &Evaluation, _t: usize, _t_max: usize) -> f64 {
        eval.cost
    }
}

/// The personal-best update of the preserving-feasibility strategy, for a minimizer.
pub fn accept_preserving_feasibility(candidate: &Memory, record: Option<Memory>) -> Option<Memory> {
    if !candidate.eval.feasible {
        return record;
    }
    match record {
        Some(old) if candidate.eval.cost >= old.eval.cost => Some(old),
        _ => Some(candidate.clone()),
    }
}

/// Memorizes everything and compares `cost + k(t)·violation`.
///
/// [`Evaluation::violation`] must already be aggregated with [`Penalization::form`];
/// the coefficient is applied at comparison time, so memories from earlier
/// steps are re-weighted with the current coefficient.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Penalization {
    pub schedule: PenaltySchedule,
    pub form: PenaltyForm,
}

impl Default for Penalization {
    fn default() -> Self {
        Self {
            schedule: PenaltySchedule::DEFAULT,
            form: PenaltyForm::SquaredSum,
        }
    }
}

impl Penalization {
    /// The evaluation a conflict function should report for a violation vector.
    pub fn evaluation(&self, cost: f64, violations: &[f64]) -> Evaluation {
        let (_, feasible) = penalized_conflict(cost, violations, 0.0, self.form);
        if feasible {
            Evaluation::feasible(cost)
        } else {
            Evaluation::infeasible(cost, self.form.aggregate(violations))
        }
    }
}

impl AcceptRule for Penalization {
    fn score(&self, eval: &Evaluation, t: usize, t_max: usize) -> f64 {
        if eval.feasible {
            eval.cost
        } else {
            eval.cost + self.schedule.at(t, t_max) * eval.violation
        }
    }
}

/// Rejection-samples `count` uniform positions that satisfy `feasible`.
pub fn feasible_initializer<R, F>(
    space: &SearchSpace,
    count: usize,
    retry_budget: usize,
    rng: &mut R,
    mut feasible: F,
) -> Result<Vec<Vec<f64>>, Error>
where
    R: Rng + ?Sized,
    F: FnMut(&[f64]) -> bool,
{
    let mut found = Vec::with_capacity(count);
    let mut attempts = 0;
    while found.len() < count {
        if attempts >= retry_budget {
            return Err(Error::InitializationFailure {
                attempts,
                found: found.len(),
                wanted: count,
            });
        }
        attempts += 1;
        let x = space.sample(rng);
        if feasible(&x) {
            found.push(x);
        }
    }
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pso::{run, Dim, Objective, SwarmConfig};
    use approx::assert_relative_eq;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn mem(cost: f64, feasible: bool) -> Memory {
        Memory {
            position: vec![cost],
            eval: if feasible {
                Evaluation::feasible(cost)
            } else {
                Evaluation::infeasible(cost, 1.0)
            },
        }
    }

    #[test]
    fn penalized_conflict_examples() {
        let form = PenaltyForm::SquaredSum;
        assert_eq!(penalized_conflict(50.0, &[0.0; 5], 1e10, form), (50.0, true));
        let (v, feasible) = penalized_conflict(50.0, &[0.0, 0.01, 0.0], 1e5, form);
        assert_relative_eq!(v, 60.0, max_relative = 1e-12);
        assert!(!feasible);
        let (v, _) = penalized_conflict(50.0, &[0.01, 0.02], 10.0, PenaltyForm::Sum);
        assert_relative_eq!(v, 50.3, max_relative = 1e-12);
    }

    #[test]
    fn schedule_examples() {
        let lin = PenaltySchedule::DEFAULT;
        assert_eq!(lin.at(1, 10_000), 1e5);
        assert_eq!(lin.at(10_000, 10_000), 1e10);
        let c = PenaltySchedule::Constant(1e8);
        assert_eq!(c.at(1, 10_000), 1e8);
        assert_eq!(c.at(4321, 10_000), 1e8);
        assert_eq!(lin.at(1, 1), 1e5);
    }

    #[test]
    fn schedule_parses() {
        assert_eq!("constant:1e8".parse::<PenaltySchedule>().unwrap(), PenaltySchedule::Constant(1e8));
        assert_eq!("linear:1e5:1e10".parse::<PenaltySchedule>().unwrap(), PenaltySchedule::DEFAULT);
        assert!("linear:1e10:1e5".parse::<PenaltySchedule>().is_err());
        assert!("quadratic:1".parse::<PenaltySchedule>().is_err());
        let s = PenaltySchedule::Linear { start: 2.5e3, end: 7e9 };
        assert_eq!(s.to_string().parse::<PenaltySchedule>().unwrap(), s);
    }

    #[test]
    fn preserving_feasibility_update_rule() {
        let pbest = Some(mem(10.0, true));
        assert_eq!(accept_preserving_feasibility(&mem(1.0, false), pbest.clone()), pbest);
        assert_eq!(accept_preserving_feasibility(&mem(9.0, true), pbest.clone()), Some(mem(9.0, true)));
        assert_eq!(accept_preserving_feasibility(&mem(11.0, true), pbest.clone()), pbest);
        assert_eq!(accept_preserving_feasibility(&mem(12.0, true), None), Some(mem(12.0, true)));
        assert_eq!(accept_preserving_feasibility(&mem(12.0, false), None), None);
    }

    #[test]
    fn initializer_examples() {
        let space = SearchSpace::new(vec![Dim::continuous(0.0, 1.0); 2]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let pts = feasible_initializer(&space, 35, 35, &mut rng, |_| true).unwrap();
        assert_eq!(pts.len(), 35);
        let err = feasible_initializer(&space, 35, 1000, &mut rng, |_| false).unwrap_err();
        assert!(matches!(err, Error::InitializationFailure { attempts: 1000, found: 0, .. }));
    }

    /// Feasible region x + y >= 1 in the unit square; minimize x + 2y.
    #[test]
    fn preserving_feasibility_gbest_always_feasible() {
        let space = SearchSpace::new(vec![Dim::continuous(0.0, 1.0); 2]).unwrap();
        let conflict = |x: &[f64]| {
            let c = x[0] + 2.0 * x[1];
            if x[0] + x[1] >= 1.0 {
                Evaluation::feasible(c)
            } else {
                Evaluation::infeasible(c, 1.0 - x[0] - x[1])
            }
        };
        let cfg = SwarmConfig {
            t_max: 300,
            seed: 17,
            twin_swarm: false,
            stagnation: None,
            ..SwarmConfig::default()
        };
        let mut state = crate::pso::SwarmState::initialize(&cfg, &space, &conflict, &PreservingFeasibility, Objective::Minimize, 0).unwrap();
        for _ in 0..cfg.t_max {
            state.step(&cfg, &space, &conflict, &PreservingFeasibility);
            let g = state.gbest_memory(&space).unwrap();
            assert!(g.eval.feasible);
            assert!(g.position[0] + g.position[1] >= 1.0);
        }
        let out = run(&cfg, &space, conflict, &PreservingFeasibility, Objective::Minimize).unwrap();
        assert!((out.best_value - 1.0).abs() < 1e-3, "{}", out.best_value);
    }

    proptest! {
        #[test]
        fn penalization_is_exact_on_feasible_points(cost in -1e3f64..1e3, t in 1usize..10_000, k_end in 1e5f64..1e12) {
            let p = Penalization { schedule: PenaltySchedule::Linear { start: 1e5, end: k_end.max(1e5) }, form: PenaltyForm::SquaredSum };
            let e = p.evaluation(cost, &[0.0; 12]);
            prop_assert_eq!(p.score(&e, t, 10_000), cost);
        }

        #[test]
        fn linear_schedule_is_monotone(a in 0f64..1e6, span in 0f64..1e10, t in 1usize..9_999) {
            let s = PenaltySchedule::Linear { start: a, end: a + span };
            prop_assert!(s.at(t + 1, 10_000) >= s.at(t, 10_000));
        }
    }
}
