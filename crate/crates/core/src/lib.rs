//! Minimum-cost flexural design of FRP-reinforced concrete beams.
//!
//! A simply supported rectangular beam with one layer of equal GFRP bars is
//! checked against the ACI 440.1R-06 flexural provisions ([`checks`]) and
//! priced per unit length ([`cost`]). Two particle swarm optimizers search
//! for the cheapest compliant section ([`optimizers`]), and an exhaustive
//! grid search ([`oracle`]) bounds what they should find.
//!
//! ```
//! use frpbeam::beam_model::{CatalogVariant, CostCase, DesignProblem, Section};
//! use frpbeam::checks::check_all;
//!
//! let problem = DesignProblem::example(CostCase::A, CatalogVariant::Reconciled);
//! let bar = problem.catalog.find("#6").unwrap().clone();
//! let section = Section::new(0.2124, 0.5346, 3, bar).unwrap();
//! assert!(check_all(&problem, &section).is_feasible());
//! ```

// Negated comparisons below are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod beam_model;
pub mod checks;
pub mod cli;
pub mod config;
pub mod constraints;
pub mod cost;
pub mod error;
pub mod optimizers;
pub mod oracle;
pub mod pso;
pub mod published;
pub mod report;
