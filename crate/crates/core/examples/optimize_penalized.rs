//! Optimizer 2: penalized swarm over `(b, h, n, bar)` with the height capped
//! at 0.35 m, comparing the default linear penalty ramp with a constant one.

use frpbeam::beam_model::{CatalogVariant, CostCase, DesignProblem};
use frpbeam::constraints::PenaltySchedule;
use frpbeam::optimizers::{OptimizerSpec, Variant};
use frpbeam::report::design_row;

fn main() {
    let problem = DesignProblem::example(CostCase::B, CatalogVariant::Reconciled).with_h_max(0.35);
    for schedule in [PenaltySchedule::DEFAULT, PenaltySchedule::Constant(1e8)] {
        let spec = OptimizerSpec::new(Variant::Optimizer2, problem.clone()).with_penalty(schedule);
        println!("penalty {schedule}");
        for seed in 1..=5 {
            let r = spec.run(seed).expect("valid configuration");
            let flag = if r.feasible { "" } else { "  INFEASIBLE" };
            println!("  seed {seed}: {}{flag}", design_row("B", &r.section, &r.cost));
        }
    }
}
