//! Optimizer 1: feasibility-preserving swarm over `(b, h)` for each cost case.

use frpbeam::beam_model::{CatalogVariant, CostCase, DesignProblem};
use frpbeam::optimizers::{OptimizerSpec, Variant};
use frpbeam::report::{design_row, ROW_HEADER};

fn main() {
    let seeds = [1, 2, 3];
    println!("{ROW_HEADER}");
    for case in CostCase::ALL {
        let problem = DesignProblem::example(case, CatalogVariant::Reconciled);
        let runs = OptimizerSpec::new(Variant::Optimizer1, problem)
            .replicate(&seeds)
            .expect("feasible initialization");
        let best = runs.best().unwrap();
        println!(
            "{}  (seed {}, {} steps, twin worst {:.2})",
            design_row(&case.to_string(), &best.section, &best.cost),
            best.seed,
            best.steps_used,
            best.twin_cost.unwrap_or(f64::NAN)
        );
    }
}
