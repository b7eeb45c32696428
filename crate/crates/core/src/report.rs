//! Plain-text and `key = value` renderings of checks and results.

use std::fmt::Write as _;

use crate::beam_model::Section;
use crate::checks::CheckReport;
use crate::cost::CostBreakdown;
use crate::optimizers::DesignResult;

/// Step group of each quantity in [`CheckReport::quantities`], by name.
fn step_of(name: &str) -> &'static str {
    match name {
        "w_DL" | "w_u" | "M_u" | "M_service" => "loads",
        "f_fu" | "eps_fu" | "beta1" | "rho_fb" => "materials",
        "A_f" | "d" | "d_c" | "rho_f" | "rho_f_min" | "min_width" => "geometry",
        "M_n" | "phi" | "phi_M_n" | "f_f_ultimate" => "strength",
        "n_f" | "k" | "f_f" | "s" | "crack_w" => "cracking",
        "I_g" | "I_cr" | "M_cr" | "I_e" => "inertia",
        "delta_i_total" | "delta_i_DL" | "delta_i_LL" | "delta_LT" => "deflection",
        _ => "creep",
    }
}

/// Every reported quantity followed by the violation vector.
pub fn check_text(section: &Section, report: &CheckReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "section: {section}");
    for (name, value, unit) in report.quantities() {
        let _ = writeln!(out, "  [{:<10}] {name:<14} = {value:>14.6e} {unit}", step_of(name));
    }
    if let Some(fault) = &report.geometry_fault {
        let _ = writeln!(out, "  geometry: {fault}");
    }
    let _ = writeln!(out, "constraints:");
    for v in &report.violations {
        let status = if v.magnitude == 0.0 { "ok" } else { "VIOLATED" };
        let _ = writeln!(out, "  {:<22} {status:<8} {:.3e}", v.name, v.magnitude);
    }
    let _ = writeln!(out, "feasible: {}", report.is_feasible());
    out
}

pub const ROW_HEADER: &str = "case  b [m]   h [m]   n x bar    concrete  shuttering  reinf.    TOTAL";

/// One line in the design-table layout.
pub fn design_row(case: &str, section: &Section, cost: &CostBreakdown) -> String {
    format!(
        "{case:<5} {:.4}  {:.4}  {:<9}  {:>8.4}  {:>10.4}  {:>8.4}  {:>8.4}",
        section.b,
        section.h,
        format!("{} x {}", section.n, section.bar.designation),
        cost.concrete,
        cost.shuttering,
        cost.reinforcement,
        cost.total
    )
}

/// Stable `key = value` lines for one result, keys prefixed with `prefix`.
pub fn structured(prefix: &str, result: &DesignResult) -> String {
    let s = &result.section;
    let c = &result.cost;
    let mut out = String::new();
    let mut kv = |k: &str, v: String| {
        let _ = writeln!(out, "{prefix}{k} = {v}");
    };
    kv("optimizer", result.variant.to_string());
    kv("seed", result.seed.to_string());
    kv("b", format!("{:.6}", s.b));
    kv("h", format!("{:.6}", s.h));
    kv("n", s.n.to_string());
    kv("bar", s.bar.designation.to_string());
    kv("cost.concrete", format!("{:.6}", c.concrete));
    kv("cost.shuttering", format!("{:.6}", c.shuttering));
    kv("cost.reinforcement", format!("{:.6}", c.reinforcement));
    kv("cost.total", format!("{:.6}", c.total));
    kv("feasible", result.feasible.to_string());
    kv("steps", result.steps_used.to_string());
    kv("wall_time_s", format!("{:.3}", result.wall_time.as_secs_f64()));
    if let Some(t) = result.twin_cost {
        kv("twin_cost", format!("{t:.6}"));
    }
    for v in &result.report.violations {
        kv(&format!("violation.{}", v.name), format!("{:e}", v.magnitude));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::beam_model::{CatalogVariant, CostCase, DesignProblem};
    use crate::checks::{check_all, VIOLATION_NAMES};
    use crate::cost::cost;

    #[test]
    fn check_text_lists_everything() {
        let p = DesignProblem::example(CostCase::A, CatalogVariant::Reconciled);
        let s = Section::new(0.2124, 0.5346, 3, p.catalog.find("#6").unwrap().clone()).unwrap();
        let r = check_all(&p, &s);
        let text = check_text(&s, &r);
        for name in VIOLATION_NAMES {
            assert!(text.contains(name));
        }
        assert!(text.contains("delta_LT"));
        assert!(text.ends_with("feasible: true\n"));
    }

    #[test]
    fn row_layout() {
        let p = DesignProblem::example(CostCase::A, CatalogVariant::Reconciled);
        let s = Section::new(0.2124, 0.5346, 3, p.catalog.find("#6").unwrap().clone()).unwrap();
        let line = design_row("A", &s, &cost(&s, &p.rates));
        assert!(line.starts_with("A     0.2124  0.5346  3 x #6"));
        assert!(line.ends_with("53.2507"), "{line}");
    }
}
