//! Record particle positions of both swarms and write them as CSV, ready
//! for plotting trajectories over the `(b, h)` plane.

use std::io;

use frpbeam::beam_model::{CatalogVariant, CostCase, DesignProblem};
use frpbeam::optimizers::{optimize1, Variant};
use frpbeam::pso::write_trace_csv;

fn main() {
    let problem = DesignProblem::example(CostCase::A, CatalogVariant::Reconciled);
    let mut swarm = Variant::Optimizer1.default_swarm();
    swarm.swarm_size = 10;
    swarm.t_max = 50;
    swarm.record_trace = true;

    let r = optimize1(&problem, &swarm, 7).expect("optimizer run");
    eprintln!("best {} at {:.4}, {} trace rows", r.section, r.cost.total, r.trace.len());
    write_trace_csv(&r.trace, 2, io::stdout().lock()).expect("stdout");
}
