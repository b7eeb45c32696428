//! Reference designs for the worked example, as printed (4 decimals).
//!
//! Two height limits (2 m and 0.35 m), three cost cases, and one row per
//! optimizer. Widths and heights are rounded to 0.1 mm, so feasibility of a
//! row is judged over its rounding cell; see [`PublishedRow::rounding_cell`].

use crate::beam_model::{CatalogVariant, CostCase, DesignProblem, Section};
use crate::constraints::PenaltySchedule;
use crate::error::Error;
use crate::optimizers::Variant;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PublishedRow {
    /// 2 for the 2 m height limit, 3 for the 0.35 m one.
    pub table: u8,
    pub variant: Variant,
    pub case: CostCase,
    pub b: f64,
    pub h: f64,
    pub n: u32,
    pub bar: &'static str,
    pub concrete: f64,
    pub shuttering: f64,
    pub reinforcement: f64,
    pub total: f64,
    /// Bar-cost table the printed reinforcement cost is consistent with.
    pub catalog: CatalogVariant,
}

const fn row(
    table: u8,
    variant: Variant,
    case: CostCase,
    (b, h, n, bar): (f64, f64, u32, &'static str),
    [concrete, shuttering, reinforcement, total]: [f64; 4],
    catalog: CatalogVariant,
) -> PublishedRow {
    PublishedRow {
        table,
        variant,
        case,
        b,
        h,
        n,
        bar,
        concrete,
        shuttering,
        reinforcement,
        total,
        catalog,
    }
}

use CatalogVariant::{AsPrinted, Reconciled};
use CostCase::{A, B, C};
use Variant::{Optimizer1 as O1, Optimizer2 as O2};

pub const ROWS: [PublishedRow; 12] = [
    row(2, O1, A, (0.2124, 0.5346, 3, "#6"), [11.3547, 32.0395, 9.8558, 53.2499], Reconciled),
    row(2, O1, B, (0.2124, 0.5346, 3, "#6"), [11.3547, 3.7807, 11.5950, 26.7304], Reconciled),
    row(2, O1, C, (0.2401, 0.4883, 3, "#7"), [11.7227, 42.5823, 7.2919, 61.5970], Reconciled),
    row(2, O2, A, (0.2124, 0.5346, 3, "#6"), [11.3543, 32.0387, 9.8558, 53.2488], Reconciled),
    row(2, O2, B, (0.2124, 0.5346, 3, "#6"), [11.3546, 3.7806, 11.5950, 26.7302], Reconciled),
    row(2, O2, C, (0.2401, 0.4882, 3, "#7"), [11.7217, 42.5792, 7.2919, 61.5928], Reconciled),
    row(3, O1, A, (0.5067, 0.3482, 9, "#6"), [17.6414, 30.0756, 29.5673, 77.2843], Reconciled),
    row(3, O1, B, (0.8801, 0.3447, 21, "#3"), [30.3362, 4.6300, 10.7950, 45.7612], Reconciled),
    row(3, O1, C, (0.5067, 0.3482, 9, "#6"), [17.6414, 42.1059, 16.2620, 76.0093], Reconciled),
    row(3, O2, A, (0.5067, 0.3500, 7, "#7"), [17.7354, 30.1682, 30.9354, 78.8390], Reconciled),
    row(3, O2, B, (0.5067, 0.3500, 9, "#6"), [17.7341, 3.5597, 29.5673, 50.8611], AsPrinted),
    row(3, O2, C, (0.4776, 0.3500, 6, "#8"), [16.7174, 41.2174, 18.8885, 76.8233], Reconciled),
];

/// Half the print resolution of `b` and `h`.
pub const PRINT_HALF_STEP: f64 = 0.5e-4;

impl PublishedRow {
    pub fn h_max(&self) -> f64 {
        if self.table == 2 { 2.0 } else { 0.35 }
    }

    /// The worked-example problem this row was designed for.
    pub fn problem(&self) -> DesignProblem {
        DesignProblem::example(self.case, self.catalog).with_h_max(self.h_max())
    }

    /// The same problem with the catalog the optimizers use.
    pub fn optimizer_problem(&self) -> DesignProblem {
        DesignProblem::example(self.case, CatalogVariant::Reconciled).with_h_max(self.h_max())
    }

    /// Penalty schedule for the penalized optimizer on this scenario: the
    /// stronger constant coefficient under the 0.35 m limit.
    pub fn penalty(&self) -> PenaltySchedule {
        if self.table == 3 {
            PenaltySchedule::Constant(1e8)
        } else {
            PenaltySchedule::DEFAULT
        }
    }

    pub fn section(&self) -> Result<Section, Error> {
        let p = self.problem();
        let bar = p
            .catalog
            .find(self.bar)
            .ok_or_else(|| Error::Catalog(format!("no bar {}", self.bar)))?
            .clone();
        Section::new(self.b, self.h, self.n, bar)
    }

    /// `(b, h)` values that print as this row, clipped to the problem box.
    pub fn rounding_cell(&self) -> ((f64, f64), (f64, f64)) {
        let l = self.problem().limits;
        let clip = |v: f64, lo: f64, hi: f64| v.clamp(lo, hi);
        (
            (
                clip(self.b - PRINT_HALF_STEP, l.b_min, l.b_max),
                clip(self.b + PRINT_HALF_STEP, l.b_min, l.b_max),
            ),
            (
                clip(self.h - PRINT_HALF_STEP, l.h_min, l.h_max),
                clip(self.h + PRINT_HALF_STEP, l.h_min, l.h_max),
            ),
        )
    }

    pub fn label(&self) -> String {
        format!("h_max={} case {} {}", self.h_max(), self.case, self.variant)
    }
}

pub fn rows_for(table: u8) -> impl Iterator<Item = &'static PublishedRow> {
    ROWS.iter().filter(move |r| r.table == table)
}

/// The published row for a scenario.
pub fn find(table: u8, variant: Variant, case: CostCase) -> Option<&'static PublishedRow> {
    ROWS.iter()
        .find(|r| r.table == table && r.variant == variant && r.case == case)
}
