//! The swarm engine on its own: a mixed continuous/integer toy problem with
//! a constraint handled by each rule.

use frpbeam::constraints::{Penalization, PreservingFeasibility};
use frpbeam::pso::{run, Dim, Evaluation, InertiaSchedule, Objective, SearchSpace, SwarmConfig};

// Minimize (x - 1.3)² + (n - 2.6)² subject to x + n >= 5.
fn toy(x: &[f64]) -> (f64, f64) {
    let f = (x[0] - 1.3).powi(2) + (x[1] - 2.6).powi(2);
    (f, (5.0 - x[0] - x[1]).max(0.0))
}

fn main() {
    let space = SearchSpace::new(vec![Dim::continuous(-5.0, 5.0), Dim::integer(0, 6)]).unwrap();
    let cfg = SwarmConfig {
        t_max: 300,
        inertia: InertiaSchedule::Constant(0.7),
        seed: 11,
        ..SwarmConfig::default()
    };

    let feasible_only = |x: &[f64]| match toy(x) {
        (f, 0.0) => Evaluation::feasible(f),
        (f, g) => Evaluation::infeasible(f, g),
    };
    let a = run(&cfg, &space, feasible_only, &PreservingFeasibility, Objective::Minimize).unwrap();
    let m = a.best.unwrap();
    println!("preserving feasibility: x={:?} f={:.6} after {} steps", m.position, m.eval.cost, a.steps);

    let penalty = Penalization::default();
    let penalized = |x: &[f64]| {
        let (f, g) = toy(x);
        penalty.evaluation(f, &[g])
    };
    let b = run(&cfg, &space, penalized, &penalty, Objective::Minimize).unwrap();
    let m = b.best_feasible.unwrap();
    println!("penalized:              x={:?} f={:.6}", m.position, m.eval.cost);
}
