//! Exhaustive grid search over `(b, h)` and verification of optimizer output.
//!
//! Every grid point gets its reinforcement from
//! [`deterministic_reinforcement`], so the grid optimum bounds what the
//! two-dimensional optimizer can reach at that resolution.

use std::io::Write;

use rayon::prelude::*;
use serde::Serialize;

use crate::beam_model::{DesignProblem, Section};
use crate::checks::check_all;
use crate::cost::CostBreakdown;
use crate::error::Error;
use crate::optimizers::{design_at, DesignResult};

/// Grid steps in m. The bounds come from the problem's limits.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub b_step: f64,
    pub h_step: f64,
}

impl Default for GridSpec {
    /// 1 mm in both directions.
    fn default() -> Self {
        Self {
            b_step: 1e-3,
            h_step: 1e-3,
        }
    }
}

impl GridSpec {
    pub fn new(b_step: f64, h_step: f64) -> Result<Self, Error> {
        let g = Self { b_step, h_step };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<(), Error> {
        if !(self.b_step > 0.0 && self.h_step > 0.0) || !self.b_step.is_finite() || !self.h_step.is_finite() {
            return Err(Error::Config(format!(
                "grid steps must be positive, got b_step = {}, h_step = {}",
                self.b_step, self.h_step
            )));
        }
        Ok(())
    }

    /// Grid coordinates of the problem's `b` and `h` ranges.
    pub fn axes(&self, problem: &DesignProblem) -> (Vec<f64>, Vec<f64>) {
        let l = &problem.limits;
        (axis(l.b_min, l.b_max, self.b_step), axis(l.h_min, l.h_max, self.h_step))
    }
}

/// `lo, lo + step, ...` up to `hi`, computed by index so the points do not drift.
fn axis(lo: f64, hi: f64, step: f64) -> Vec<f64> {
    let count = ((hi - lo) / step + 1e-9).floor() as usize + 1;
    (0..count).map(|i| lo + i as f64 * step).collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct GridOutcome {
    pub section: Section,
    pub cost: CostBreakdown,
    pub feasible_count: usize,
    pub evaluated_count: usize,
}

/// One grid point for the heatmap. `cost` is empty where nothing fits.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridCell {
    pub b: f64,
    pub h: f64,
    pub feasible: bool,
    pub cost: Option<f64>,
}

struct RowBest {
    best: Option<(Section, CostBreakdown)>,
    feasible: usize,
    evaluated: usize,
}

fn scan_row(problem: &DesignProblem, b: f64, hs: &[f64]) -> RowBest {
    let mut row = RowBest {
        best: None,
        feasible: 0,
        evaluated: 0,
    };
    for &h in hs {
        row.evaluated += 1;
        if let Some((s, c)) = design_at(problem, b, h) {
            row.feasible += 1;
            // Strict comparison keeps the smaller h on ties.
            if row.best.as_ref().is_none_or(|(_, bc)| c.total < bc.total) {
                row.best = Some((s, c));
            }
        }
    }
    row
}

/// Minimum-cost feasible design on the grid.
///
/// Rows of constant `b` run in parallel; the reduction walks them in order,
/// so ties go to the smaller `b` and then the smaller `h`.
pub fn grid_search(problem: &DesignProblem, grid: &GridSpec) -> Result<GridOutcome, Error> {
    grid.validate()?;
    let (bs, hs) = grid.axes(problem);
    let rows: Vec<RowBest> = bs.par_iter().map(|&b| scan_row(problem, b, &hs)).collect();

    let mut best: Option<(Section, CostBreakdown)> = None;
    let (mut feasible, mut evaluated) = (0, 0);
    for row in rows {
        feasible += row.feasible;
        evaluated += row.evaluated;
        if let Some((s, c)) = row.best {
            if best.as_ref().is_none_or(|(_, bc)| c.total < bc.total) {
                best = Some((s, c));
            }
        }
    }
    let (section, cost) = best.ok_or(Error::NoFeasiblePoint { evaluated })?;
    Ok(GridOutcome {
        section,
        cost,
        feasible_count: feasible,
        evaluated_count: evaluated,
    })
}

/// Every grid point with its derived design cost, row by row.
pub fn grid_map(problem: &DesignProblem, grid: &GridSpec) -> Result<Vec<GridCell>, Error> {
    grid.validate()?;
    let (bs, hs) = grid.axes(problem);
    let rows: Vec<Vec<GridCell>> = bs
        .par_iter()
        .map(|&b| {
            hs.iter()
                .map(|&h| {
                    let c = design_at(problem, b, h).map(|(_, c)| c.total);
                    GridCell {
                        b,
                        h,
                        feasible: c.is_some(),
                        cost: c,
                    }
                })
                .collect()
        })
        .collect();
    Ok(rows.into_iter().flatten().collect())
}

/// Heatmap CSV with columns `b,h,feasible,cost`.
pub fn write_heatmap<W: Write>(cells: &[GridCell], out: W) -> Result<(), Error> {
    let mut w = csv::Writer::from_writer(out);
    for cell in cells {
        w.serialize(cell)?;
    }
    w.flush()?;
    Ok(())
}

/// Result of [`verify_result`].
#[derive(Debug, Clone, PartialEq)]
pub struct Verdict {
    pub pass: bool,
    /// Feasibility according to a fresh evaluation.
    pub feasible: bool,
    /// Cheapest derived design on the 3×3 neighbourhood, if any is feasible.
    pub local_best: Option<(Section, CostBreakdown)>,
    /// `(cost − local best) / local best`; negative when the result is cheaper.
    pub relative_gap: Option<f64>,
    pub diagnostics: Vec<String>,
}

/// Neighbourhood step of [`verify_result`], m.
pub const LOCAL_STEP: f64 = 1e-3;

/// Re-checks a result and compares it with the derived designs on a 3×3
/// neighbourhood of `(b, h)` at [`LOCAL_STEP`], clipped to the limits.
pub fn verify_result(problem: &DesignProblem, result: &DesignResult, tolerance: f64) -> Verdict {
    let mut diagnostics = Vec::new();
    let report = check_all(problem, &result.section);
    let feasible = report.is_feasible();
    if result.feasible && !feasible {
        let broken: Vec<_> = report
            .violations
            .iter()
            .filter(|v| v.magnitude > 0.0)
            .map(|v| format!("{} ({:.3e})", v.name, v.magnitude))
            .collect();
        diagnostics.push(format!("flagged feasible but violates {}", broken.join(", ")));
    }
    if !feasible && !result.feasible {
        diagnostics.push("result is infeasible".to_string());
    }

    let l = &problem.limits;
    let (b0, h0) = (result.section.b, result.section.h);
    let mut local_best: Option<(Section, CostBreakdown)> = None;
    for db in [-1.0, 0.0, 1.0] {
        for dh in [-1.0, 0.0, 1.0] {
            let b = (b0 + db * LOCAL_STEP).clamp(l.b_min, l.b_max);
            let h = (h0 + dh * LOCAL_STEP).clamp(l.h_min, l.h_max);
            if let Some((s, c)) = design_at(problem, b, h) {
                if local_best.as_ref().is_none_or(|(_, bc)| c.total < bc.total) {
                    local_best = Some((s, c));
                }
            }
        }
    }

    let total = result.cost.total;
    let relative_gap = local_best.as_ref().map(|(_, c)| (total - c.total) / c.total);
    let near_optimal = relative_gap.is_none_or(|g| g <= tolerance);
    if let (Some(g), Some((s, _))) = (relative_gap, &local_best) {
        if g > tolerance {
            diagnostics.push(format!(
                "neighbour {s} is cheaper by {:.4}% (tolerance {:.4}%)",
                100.0 * g,
                100.0 * tolerance
            ));
        }
    }

    Verdict {
        pass: feasible && result.feasible && near_optimal,
        feasible,
        local_best,
        relative_gap,
        diagnostics,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::beam_model::{CatalogVariant, CostCase, Limits};
    use crate::cost::cost;
    use crate::optimizers::Variant;
    use std::time::Duration;

    fn problem() -> DesignProblem {
        DesignProblem::example(CostCase::A, CatalogVariant::Reconciled)
    }

    fn as_result(problem: &DesignProblem, b: f64, h: f64, n: u32, bar: &str) -> DesignResult {
        let section = Section::new(b, h, n, problem.catalog.find(bar).unwrap().clone()).unwrap();
        let report = check_all(problem, &section);
        DesignResult {
            variant: Variant::Optimizer1,
            cost: cost(&section, &problem.rates),
            feasible: report.is_feasible(),
            report,
            section,
            steps_used: 0,
            seed: 0,
            wall_time: Duration::ZERO,
            twin_cost: None,
            position: vec![b, h],
            trace: Vec::new(),
        }
    }

    #[test]
    fn axes_include_both_bounds() {
        let p = problem();
        let (bs, hs) = GridSpec::default().axes(&p);
        assert_eq!(bs.len(), 801);
        assert_eq!(hs.len(), 1801);
        assert!((bs[800] - 1.0).abs() < 1e-12);
        assert!((hs[1800] - 2.0).abs() < 1e-12);
    }

    #[test]
    fn single_point_grid() {
        let mut p = problem();
        p.limits = Limits {
            b_min: 0.25,
            b_max: 0.25,
            h_min: 0.6,
            h_max: 0.6,
            ..p.limits
        };
        let out = grid_search(&p, &GridSpec::default()).unwrap();
        assert_eq!(out.evaluated_count, 1);
        assert_eq!(out.feasible_count, 1);
        assert_eq!((out.section.b, out.section.h), (0.25, 0.6));
    }

    #[test]
    fn narrow_box_has_no_feasible_point() {
        let mut p = problem();
        p.limits.b_min = 0.1;
        p.limits.b_max = 0.15;
        let err = grid_search(&p, &GridSpec::new(0.01, 0.05).unwrap()).unwrap_err();
        assert!(matches!(err, Error::NoFeasiblePoint { .. }));
    }

    #[test]
    fn bad_steps_are_rejected() {
        assert!(GridSpec::new(0.0, 1e-3).is_err());
        assert!(GridSpec::new(1e-3, f64::NAN).is_err());
    }

    #[test]
    fn coarse_winner_is_feasible_and_refinement_helps() {
        let p = problem().with_h_max(0.8);
        let coarse = grid_search(&p, &GridSpec::new(0.02, 0.02).unwrap()).unwrap();
        let fine = grid_search(&p, &GridSpec::new(0.01, 0.01).unwrap()).unwrap();
        assert!(check_all(&p, &coarse.section).is_feasible());
        assert!(check_all(&p, &fine.section).is_feasible());
        assert!(fine.cost.total <= coarse.cost.total);
    }

    #[test]
    fn heatmap_columns() {
        let mut p = problem();
        p.limits.b_max = 0.22;
        p.limits.h_max = 0.22;
        let cells = grid_map(&p, &GridSpec::new(0.01, 0.01).unwrap()).unwrap();
        assert_eq!(cells.len(), 3 * 3);
        let mut buf = Vec::new();
        write_heatmap(&cells, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().next(), Some("b,h,feasible,cost"));
        assert!(text.lines().nth(1).unwrap().ends_with("false,"));
    }

    #[test]
    fn published_row_verifies() {
        let p = problem();
        let v = verify_result(&p, &as_result(&p, 0.2124, 0.5346, 3, "#6"), 1e-3);
        assert!(v.pass, "{:?}", v.diagnostics);
    }

    #[test]
    fn inflated_height_is_feasible_but_not_optimal() {
        let p = problem();
        let v = verify_result(&p, &as_result(&p, 0.2124, 0.5346 * 1.1, 3, "#6"), 1e-3);
        assert!(v.feasible);
        assert!(!v.pass);
        assert!(v.relative_gap.unwrap() > 1e-3);
    }

    #[test]
    fn wrong_flag_is_reported() {
        let p = problem();
        let mut r = as_result(&p, 0.2124, 0.45, 3, "#6");
        r.feasible = true;
        let v = verify_result(&p, &r, 1e-3);
        assert!(!v.pass);
        assert!(v.diagnostics[0].contains("long_term_deflection"));
    }
}
