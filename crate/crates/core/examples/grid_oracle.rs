//! Brute-force grid search, then verify an optimizer result against it.
//!
//! Pass a path to also write the heatmap CSV:
//! `cargo run --release --example grid_oracle -- heatmap.csv`

use std::fs::File;

use frpbeam::beam_model::{CatalogVariant, CostCase, DesignProblem};
use frpbeam::oracle::{grid_map, grid_search, verify_result, write_heatmap, GridSpec};
use frpbeam::optimizers::optimize1;
use frpbeam::optimizers::Variant;

fn main() {
    let problem = DesignProblem::example(CostCase::A, CatalogVariant::Reconciled).with_h_max(0.35);
    let grid = GridSpec::default();
    let best = grid_search(&problem, &grid).expect("feasible grid");
    println!(
        "grid optimum {} at {:.4} ({} of {} points feasible)",
        best.section, best.cost.total, best.feasible_count, best.evaluated_count
    );

    let result = optimize1(&problem, &Variant::Optimizer1.default_swarm(), 1).expect("optimizer run");
    let verdict = verify_result(&problem, &result, 1e-3);
    println!(
        "optimizer {} at {:.4}: pass={} gap={:+.4}%",
        result.section,
        result.cost.total,
        verdict.pass,
        100.0 * verdict.relative_gap.unwrap_or(0.0)
    );
    for d in &verdict.diagnostics {
        println!("  {d}");
    }

    if let Some(path) = std::env::args().nth(1) {
        let cells = grid_map(&problem, &GridSpec::new(5e-3, 5e-3).unwrap()).unwrap();
        write_heatmap(&cells, File::create(&path).expect("writable path")).unwrap();
        println!("wrote {} cells to {path}", cells.len());
    }
}
