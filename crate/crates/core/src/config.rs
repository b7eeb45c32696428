//! TOML run configuration.
//!
//! Every key is optional; a missing key takes the worked-example value, so
//! an empty file describes the reference problem.
//!
//! ```toml
//! [run]
//! case = "B"
//! optimizer = 2
//! seeds = [1, 2, 3]
//!
//! [limits]
//! h_max = 0.35
//!
//! [penalty]
//! schedule = "constant:1e8"
//! ```

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::beam_model::{
    BarTable, CatalogVariant, Concrete, CostCase, CostRates, DesignProblem, Frp, Limits, Loading,
};
use crate::constraints::{Penalization, PenaltyForm, PenaltySchedule};
use crate::error::Error;
use crate::optimizers::{OptimizerSpec, Variant};
use crate::pso::{InertiaSchedule, Stagnation, SwarmConfig};

/// Cost case, or `custom` with rates from `[problem]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CaseChoice {
    A,
    B,
    C,
    #[serde(rename = "custom")]
    Custom,
}

impl CaseChoice {
    pub fn from_case(case: CostCase) -> Self {
        match case {
            CostCase::A => CaseChoice::A,
            CostCase::B => CaseChoice::B,
            CostCase::C => CaseChoice::C,
        }
    }

    pub fn case(self) -> Option<CostCase> {
        match self {
            CaseChoice::A => Some(CostCase::A),
            CaseChoice::B => Some(CostCase::B),
            CaseChoice::C => Some(CostCase::C),
            CaseChoice::Custom => None,
        }
    }
}

impl fmt::Display for CaseChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.case() {
            Some(c) => c.fmt(f),
            None => f.write_str("custom"),
        }
    }
}

impl FromStr for CaseChoice {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.trim().eq_ignore_ascii_case("custom") {
            return Ok(CaseChoice::Custom);
        }
        s.parse::<CostCase>().map(CaseChoice::from_case)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunSection {
    pub case: CaseChoice,
    pub catalog: CatalogVariant,
    /// Bar table CSV replacing the built-in one.
    pub catalog_csv: Option<PathBuf>,
    /// Bar-cost column used when `case = "custom"`.
    pub bar_cost_column: CostCase,
    pub optimizer: u8,
    pub seeds: Vec<u64>,
    pub report: Option<PathBuf>,
    /// Machine-readable `key = value` report.
    pub summary: Option<PathBuf>,
    pub trace: Option<PathBuf>,
    pub heatmap: Option<PathBuf>,
}

impl Default for RunSection {
    fn default() -> Self {
        Self {
            case: CaseChoice::A,
            catalog: CatalogVariant::Reconciled,
            catalog_csv: None,
            bar_cost_column: CostCase::A,
            optimizer: 1,
            seeds: vec![1, 2, 3, 4, 5],
            report: None,
            summary: None,
            trace: None,
            heatmap: None,
        }
    }
}

/// Materials, loads and, for the custom case, cost rates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ProblemSection {
    pub f_c: f64,
    pub e_c: f64,
    pub eps_cu: f64,
    pub gamma_c: f64,
    pub e_f: f64,
    pub c_e: f64,
    pub k_b: f64,
    pub creep_limit_factor: f64,
    pub span: f64,
    pub w_sdl: f64,
    pub w_ll: f64,
    pub sustained_fraction: f64,
    pub xi: f64,
    pub concrete_rate: Option<f64>,
    pub shuttering_rate: Option<f64>,
}

impl Default for ProblemSection {
    fn default() -> Self {
        let p = DesignProblem::example(CostCase::A, CatalogVariant::Reconciled);
        let (c, f, l) = (p.concrete, p.frp, p.loading);
        Self {
            f_c: c.f_c,
            e_c: c.e_c,
            eps_cu: c.eps_cu,
            gamma_c: c.gamma_c,
            e_f: f.e_f,
            c_e: f.c_e,
            k_b: f.k_b,
            creep_limit_factor: f.creep_limit_factor,
            span: l.span,
            w_sdl: l.w_sdl,
            w_ll: l.w_ll,
            sustained_fraction: l.sustained_fraction,
            xi: l.xi,
            concrete_rate: None,
            shuttering_rate: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct LimitsSection {
    pub b_min: f64,
    pub b_max: f64,
    pub h_min: f64,
    pub h_max: f64,
    /// Crack width limit, mm.
    pub w_max: f64,
    /// Long-term deflection limit as a span divisor (`L / x`).
    pub deflection_divisor: f64,
}

impl Default for LimitsSection {
    fn default() -> Self {
        let l = DesignProblem::example(CostCase::A, CatalogVariant::Reconciled).limits;
        Self {
            b_min: l.b_min,
            b_max: l.b_max,
            h_min: l.h_min,
            h_max: l.h_max,
            w_max: l.w_max,
            deflection_divisor: 240.0,
        }
    }
}

/// Swarm overrides. `inertia` defaults to the optimizer's own schedule.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SwarmSection {
    pub swarm_size: usize,
    pub t_max: usize,
    pub iw: f64,
    pub sw: f64,
    pub inertia: Option<String>,
    pub vmax_fraction: f64,
    pub twin_swarm: bool,
    /// 0 disables the stagnation stop.
    pub stagnation_window: usize,
    pub stagnation_tol: f64,
    pub init_budget: usize,
    pub record_trace: bool,
}

impl Default for SwarmSection {
    fn default() -> Self {
        let s = SwarmConfig::default();
        let stag = s.stagnation.unwrap_or_default();
        Self {
            swarm_size: s.swarm_size,
            t_max: s.t_max,
            iw: s.iw,
            sw: s.sw,
            inertia: None,
            vmax_fraction: s.vmax_fraction,
            twin_swarm: s.twin_swarm,
            stagnation_window: stag.window,
            stagnation_tol: stag.rel_tol,
            init_budget: s.init_budget,
            record_trace: s.record_trace,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PenaltySection {
    /// `linear:K0:K1` or `constant:K`.
    pub schedule: String,
    /// `sum` or `squared-sum`.
    pub form: String,
}

impl Default for PenaltySection {
    fn default() -> Self {
        Self {
            schedule: PenaltySchedule::DEFAULT.to_string(),
            form: PenaltyForm::default().to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub run: RunSection,
    pub problem: ProblemSection,
    pub limits: LimitsSection,
    pub swarm: SwarmSection,
    pub penalty: PenaltySection,
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<Self, Error> {
        toml::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn from_path(path: &Path) -> Result<Self, Error> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn to_toml(&self) -> Result<String, Error> {
        toml::to_string(self).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn variant(&self) -> Result<Variant, Error> {
        self.run.optimizer.to_string().parse()
    }

    pub fn problem(&self) -> Result<DesignProblem, Error> {
        let table = match &self.run.catalog_csv {
            Some(path) => BarTable::from_csv_path(path)?,
            None => BarTable::builtin(self.run.catalog),
        };
        let p = &self.problem;
        let (catalog, rates) = match self.run.case.case() {
            Some(case) => {
                let defaults = case.rates();
                let rates = CostRates {
                    concrete: p.concrete_rate.unwrap_or(defaults.concrete),
                    shuttering: p.shuttering_rate.unwrap_or(defaults.shuttering),
                };
                (table.catalog(case), rates)
            }
            None => {
                let (Some(concrete), Some(shuttering)) = (p.concrete_rate, p.shuttering_rate) else {
                    return Err(Error::Config(
                        "case = \"custom\" needs concrete_rate and shuttering_rate in [problem]".into(),
                    ));
                };
                (table.catalog(self.run.bar_cost_column), CostRates { concrete, shuttering })
            }
        };
        let base = DesignProblem::example(CostCase::A, CatalogVariant::Reconciled);
        let l = &self.limits;
        if !(l.deflection_divisor > 0.0) {
            return Err(Error::Config("deflection_divisor must be positive".into()));
        }
        let problem = DesignProblem {
            concrete: Concrete {
                f_c: p.f_c,
                e_c: p.e_c,
                eps_cu: p.eps_cu,
                gamma_c: p.gamma_c,
            },
            frp: Frp {
                e_f: p.e_f,
                c_e: p.c_e,
                k_b: p.k_b,
                creep_limit_factor: p.creep_limit_factor,
            },
            loading: Loading {
                span: p.span,
                w_sdl: p.w_sdl,
                w_ll: p.w_ll,
                sustained_fraction: p.sustained_fraction,
                xi: p.xi,
            },
            limits: Limits {
                b_min: l.b_min,
                b_max: l.b_max,
                h_min: l.h_min,
                h_max: l.h_max,
                w_max: l.w_max,
                delta_lt_max: p.span / l.deflection_divisor,
                ..base.limits
            },
            catalog,
            rates,
        };
        problem.validate()?;
        Ok(problem)
    }

    pub fn swarm_config(&self, variant: Variant) -> Result<SwarmConfig, Error> {
        let s = &self.swarm;
        let inertia = match &s.inertia {
            Some(text) => text.parse::<InertiaSchedule>()?,
            None => variant.default_swarm().inertia,
        };
        let cfg = SwarmConfig {
            swarm_size: s.swarm_size,
            t_max: s.t_max,
            iw: s.iw,
            sw: s.sw,
            inertia,
            vmax_fraction: s.vmax_fraction,
            seed: 0,
            twin_swarm: s.twin_swarm,
            stagnation: (s.stagnation_window > 0).then_some(Stagnation {
                window: s.stagnation_window,
                rel_tol: s.stagnation_tol,
            }),
            init_budget: s.init_budget,
            record_trace: s.record_trace,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn penalization(&self) -> Result<Penalization, Error> {
        let schedule: PenaltySchedule = self.penalty.schedule.parse()?;
        schedule.validate()?;
        Ok(Penalization {
            schedule,
            form: self.penalty.form.parse()?,
        })
    }

    /// Problem, swarm and penalty resolved into an optimizer.
    pub fn optimizer(&self) -> Result<OptimizerSpec, Error> {
        let variant = self.variant()?;
        Ok(OptimizerSpec {
            variant,
            swarm: self.swarm_config(variant)?,
            penalty: self.penalization()?,
            problem: self.problem()?,
        })
    }

    /// Everything above plus the run-level invariants: seeds present and
    /// referenced input files readable.
    pub fn validate(&self) -> Result<(), Error> {
        if self.run.seeds.is_empty() {
            return Err(Error::Config("at least one seed is required".into()));
        }
        if let Some(path) = &self.run.catalog_csv {
            if !path.is_file() {
                return Err(Error::Config(format!("catalog file {} does not exist", path.display())));
            }
        }
        self.optimizer().map(|_| ())
    }
}
