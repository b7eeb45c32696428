//! Derive the reinforcement of a fixed section, then list every `(n, bar)`
//! pair that fits, with its cost and feasibility.

use frpbeam::beam_model::{CatalogVariant, CostCase, DesignProblem, Section};
use frpbeam::checks::check_all;
use frpbeam::cost::cost;
use frpbeam::optimizers::{candidate_reinforcements, deterministic_reinforcement, Reinforcement};

fn main() {
    let problem = DesignProblem::example(CostCase::B, CatalogVariant::Reconciled).with_h_max(0.35);
    let (b, h) = (0.8802, 0.3447);

    match deterministic_reinforcement(&problem, b, h) {
        Reinforcement::Found { n, bar } => println!("first passing layout at b={b}, h={h}: {n} x {}", bar.designation),
        Reinforcement::Infeasible => println!("nothing passes at b={b}, h={h}"),
    }

    println!("\n  n  bar  feasible      cost");
    let mut cheapest: Option<(f64, String)> = None;
    for (n, bar) in candidate_reinforcements(&problem, b) {
        let section = Section { b, h, n, bar };
        let ok = check_all(&problem, &section).is_feasible();
        let total = cost(&section, &problem.rates).total;
        if ok && cheapest.as_ref().is_none_or(|(c, _)| total < *c) {
            cheapest = Some((total, format!("{n} x {}", section.bar.designation)));
        }
        println!("{n:>3}  {:<4} {ok:<8} {total:>9.4}", section.bar.designation);
    }
    if let Some((c, layout)) = cheapest {
        println!("\ncheapest passing layout: {layout} at {c:.4}");
    }
}
