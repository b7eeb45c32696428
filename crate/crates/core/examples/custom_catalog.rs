//! A user-supplied bar table and custom cost rates.

use frpbeam::beam_model::{BarTable, CostCase, CostRates, DesignProblem, CatalogVariant};
use frpbeam::optimizers::{optimize1, Variant};
use frpbeam::report::design_row;

const BARS: &str = "\
designation,diameter_mm,f_fu_star_MPa,cost_case_a,cost_case_b,cost_case_c
#3,9.53,760,1.10,0.51,0.77
#4,12.70,690,1.54,1.82,0.85
#5,15.88,655,2.33,2.74,1.28
#6,19.05,620,3.29,3.87,1.81
";

fn main() {
    let table = BarTable::from_csv_reader(BARS.as_bytes()).expect("valid table");
    let mut problem = DesignProblem::example(CostCase::A, CatalogVariant::Reconciled);
    problem.catalog = table.catalog(CostCase::C);
    problem.rates = CostRates {
        concrete: 120.0,
        shuttering: 15.0,
    };
    problem.loading.w_ll = 10.0;

    let r = optimize1(&problem, &Variant::Optimizer1.default_swarm(), 3).expect("optimizer run");
    println!("{}", design_row("custom", &r.section, &r.cost));
}
