//! Member cost: concrete volume, shuttering and bars.

use std::ops::Add;

use crate::beam_model::{CostRates, Section};

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct CostBreakdown {
    pub concrete: f64,
    pub shuttering: f64,
    pub reinforcement: f64,
    pub total: f64,
}

impl CostBreakdown {
    pub fn new(concrete: f64, shuttering: f64, reinforcement: f64) -> Self {
        Self {
            concrete,
            shuttering,
            reinforcement,
            total: concrete + shuttering + reinforcement,
        }
    }
}

impl Add for CostBreakdown {
    type Output = CostBreakdown;

    fn add(self, rhs: Self) -> Self {
        CostBreakdown::new(
            self.concrete + rhs.concrete,
            self.shuttering + rhs.shuttering,
            self.reinforcement + rhs.reinforcement,
        )
    }
}

/// `c1·b·h + c2·(b + 2h) + c3·n`, with `c3` the per-bar cost of the section's bar.
pub fn cost(section: &Section, rates: &CostRates) -> CostBreakdown {
    CostBreakdown::new(
        rates.concrete * section.b * section.h,
        rates.shuttering * (section.b + 2.0 * section.h),
        section.bar.cost * section.n as f64,
    )
}

/// Concrete and shuttering only; the part of the cost that does not depend on bars.
pub fn form_cost(b: f64, h: f64, rates: &CostRates) -> CostBreakdown {
    CostBreakdown::new(rates.concrete * b * h, rates.shuttering * (b + 2.0 * h), 0.0)
}
