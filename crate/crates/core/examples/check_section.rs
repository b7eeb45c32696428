//! Evaluate one section against every flexural check.
//!
//! ```text
//! cargo run --example check_section
//! ```

use frpbeam::beam_model::{CatalogVariant, CostCase, DesignProblem, Section};
use frpbeam::checks::check_all;
use frpbeam::cost::cost;
use frpbeam::report::check_text;

fn main() {
    let problem = DesignProblem::example(CostCase::A, CatalogVariant::Reconciled);
    let bar = problem.catalog.find("#6").expect("bar in catalog").clone();

    for h in [0.5346, 0.45] {
        let section = Section::new(0.2124, h, 3, bar.clone()).expect("valid section");
        let report = check_all(&problem, &section);
        print!("{}", check_text(&section, &report));
        println!("total cost {:.4}\n", cost(&section, &problem.rates).total);
    }
}
