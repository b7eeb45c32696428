//! Materials, bars, loads, limits and candidate sections.
//!
//! Units are fixed across the crate: lengths in m, bar diameters and crack
//! widths in mm, stresses and moduli in MPa, line loads in kN/m, moments in
//! kN·m and second moments of area in m⁴.

use std::f64::consts::PI;
use std::fmt;
use std::io::Read;
use std::path::Path;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, GeometryError};

/// One FRP bar size with the cost that applies to the active cost case.
#[derive(Debug, Clone, PartialEq)]
pub struct BarSpec {
    pub designation: Arc<str>,
    /// Nominal diameter, mm.
    pub diameter_mm: f64,
    /// Guaranteed tensile strength f*_fu, MPa.
    pub f_fu_star: f64,
    /// Cost per bar.
    pub cost: f64,
}

impl BarSpec {
    pub fn new(designation: &str, diameter_mm: f64, f_fu_star: f64, cost: f64) -> Self {
        Self {
            designation: Arc::from(designation),
            diameter_mm,
            f_fu_star,
            cost,
        }
    }

    pub fn diameter_m(&self) -> f64 {
        self.diameter_mm / 1000.0
    }

    /// Cross-sectional area of a single bar, m².
    pub fn area(&self) -> f64 {
        let phi = self.diameter_m();
        PI * phi * phi / 4.0
    }
}

/// Cost-rate case. Selects the shuttering rate and the bar-cost column.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CostCase {
    A,
    B,
    C,
}

impl CostCase {
    pub const ALL: [CostCase; 3] = [CostCase::A, CostCase::B, CostCase::C];

    fn column(self) -> usize {
        match self {
            CostCase::A => 0,
            CostCase::B => 1,
            CostCase::C => 2,
        }
    }

    /// Concrete (per m³) and shuttering (per m²) rates of the case.
    pub fn rates(self) -> CostRates {
        let shuttering = match self {
            CostCase::A => 25.0,
            CostCase::B => 2.95,
            CostCase::C => 35.0,
        };
        CostRates {
            concrete: 100.0,
            shuttering,
        }
    }
}

impl fmt::Display for CostCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CostCase::A => "A",
            CostCase::B => "B",
            CostCase::C => "C",
        };
        f.write_str(s)
    }
}

impl FromStr for CostCase {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(CostCase::A),
            "B" => Ok(CostCase::B),
            "C" => Ok(CostCase::C),
            other => Err(Error::Config(format!("unknown cost case `{other}`"))),
        }
    }
}

/// Concrete volume rate c1 and shuttering area rate c2.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CostRates {
    pub concrete: f64,
    pub shuttering: f64,
}

/// Which bar-cost table to use.
///
/// The as-printed table lists 3.285252527 for #6 under case B, but the
/// published case-B designs with 3×#6 carry a reinforcement cost of
/// 11.5950, i.e. 3.8650 per bar. The reconciled table uses the latter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CatalogVariant {
    AsPrinted,
    #[default]
    Reconciled,
}

impl FromStr for CatalogVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "as-printed" | "printed" => Ok(CatalogVariant::AsPrinted),
            "reconciled" => Ok(CatalogVariant::Reconciled),
            other => Err(Error::Config(format!("unknown catalog variant `{other}`"))),
        }
    }
}

impl fmt::Display for CatalogVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CatalogVariant::AsPrinted => "as-printed",
            CatalogVariant::Reconciled => "reconciled",
        })
    }
}

/// Case-B cost per #6 bar implied by the published 3×#6 designs (11.5950 / 3).
pub const RECONCILED_CASE_B_NO6: f64 = 11.5950 / 3.0;

/// A row of the bar table, carrying the costs of all three cases.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BarRow {
    pub designation: String,
    pub diameter_mm: f64,
    #[serde(rename = "f_fu_star_MPa")]
    pub f_fu_star: f64,
    pub cost_case_a: f64,
    pub cost_case_b: f64,
    pub cost_case_c: f64,
}

impl BarRow {
    fn cost(&self, case: CostCase) -> f64 {
        [self.cost_case_a, self.cost_case_b, self.cost_case_c][case.column()]
    }
}

/// The full bar table with all three cost columns.
#[derive(Debug, Clone, PartialEq)]
pub struct BarTable {
    rows: Vec<BarRow>,
}

const TABLE1: [(&str, f64, f64, [f64; 3]); 8] = [
    ("#2", 6.35, 825.0, [0.498361392, 0.58630752, 0.274098766]),
    ("#3", 9.53, 760.0, [1.099572057, 0.514049937, 0.76970044]),
    ("#4", 12.70, 690.0, [1.543445568, 1.815818315, 0.848895062]),
    ("#5", 15.88, 655.0, [2.328630417, 2.739565196, 1.280746729]),
    ("#6", 19.05, 620.0, [3.285252527, 3.285252527, 1.80688889]),
    ("#7", 22.23, 586.0, [4.419347369, 5.199232198, 2.430641053]),
    ("#8", 25.40, 550.0, [5.72378227, 6.733861494, 3.148080249]),
    ("#9", 28.65, 517.0, [7.241397324, 8.519290969, 3.982768528]),
];

impl BarTable {
    pub fn new(rows: Vec<BarRow>) -> Result<Self, Error> {
        if rows.is_empty() {
            return Err(Error::Catalog("bar table is empty".into()));
        }
        for row in &rows {
            if !(row.diameter_mm > 0.0) || !(row.f_fu_star > 0.0) {
                return Err(Error::Catalog(format!(
                    "bar {} must have positive diameter and strength",
                    row.designation
                )));
            }
            if [row.cost_case_a, row.cost_case_b, row.cost_case_c]
                .iter()
                .any(|c| !(*c >= 0.0))
            {
                return Err(Error::Catalog(format!(
                    "bar {} has a negative cost",
                    row.designation
                )));
            }
        }
        for pair in rows.windows(2) {
            if !(pair[1].diameter_mm > pair[0].diameter_mm) {
                return Err(Error::Catalog(format!(
                    "diameters must be strictly increasing ({} then {})",
                    pair[0].designation, pair[1].designation
                )));
            }
            if pair[1].f_fu_star > pair[0].f_fu_star {
                return Err(Error::Catalog(format!(
                    "strength must not increase with diameter ({} then {})",
                    pair[0].designation, pair[1].designation
                )));
            }
        }
        Ok(Self { rows })
    }

    /// GFRP sizes #2 to #9 with their guaranteed strengths and costs, as printed.
    pub fn as_printed() -> Self {
        let rows = TABLE1
            .iter()
            .map(|&(name, dia, f, [a, b, c])| BarRow {
                designation: name.to_string(),
                diameter_mm: dia,
                f_fu_star: f,
                cost_case_a: a,
                cost_case_b: b,
                cost_case_c: c,
            })
            .collect();
        Self { rows }
    }

    /// As printed, except the case-B #6 cost is set to [`RECONCILED_CASE_B_NO6`].
    pub fn reconciled() -> Self {
        let mut table = Self::as_printed();
        for row in &mut table.rows {
            if row.designation == "#6" {
                row.cost_case_b = RECONCILED_CASE_B_NO6;
            }
        }
        table
    }

    pub fn builtin(variant: CatalogVariant) -> Self {
        match variant {
            CatalogVariant::AsPrinted => Self::as_printed(),
            CatalogVariant::Reconciled => Self::reconciled(),
        }
    }

    /// Reads a CSV with columns `designation, diameter_mm, f_fu_star_MPa,
    /// cost_case_A, cost_case_B, cost_case_C`.
    pub fn from_csv_reader<R: Read>(reader: R) -> Result<Self, Error> {
        let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
        let headers = rdr.headers()?.clone();
        let lookup = |name: &str| {
            headers
                .iter()
                .position(|h| h.eq_ignore_ascii_case(name))
                .ok_or_else(|| Error::Catalog(format!("missing column `{name}`")))
        };
        let cols = [
            lookup("designation")?,
            lookup("diameter_mm")?,
            lookup("f_fu_star_MPa")?,
            lookup("cost_case_A")?,
            lookup("cost_case_B")?,
            lookup("cost_case_C")?,
        ];
        let mut rows = Vec::new();
        for record in rdr.records() {
            let record = record?;
            let num = |i: usize| -> Result<f64, Error> {
                let raw = record.get(cols[i]).unwrap_or("");
                raw.parse::<f64>()
                    .map_err(|_| Error::Catalog(format!("bad number `{raw}` in bar table")))
            };
            rows.push(BarRow {
                designation: record.get(cols[0]).unwrap_or("").to_string(),
                diameter_mm: num(1)?,
                f_fu_star: num(2)?,
                cost_case_a: num(3)?,
                cost_case_b: num(4)?,
                cost_case_c: num(5)?,
            });
        }
        Self::new(rows)
    }

    pub fn from_csv_path(path: &Path) -> Result<Self, Error> {
        let file = std::fs::File::open(path)
            .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Self::from_csv_reader(file)
    }

    pub fn rows(&self) -> &[BarRow] {
        &self.rows
    }

    /// The catalog with bar costs for one case.
    pub fn catalog(&self, case: CostCase) -> BarCatalog {
        BarCatalog {
            bars: self
                .rows
                .iter()
                .map(|r| BarSpec::new(&r.designation, r.diameter_mm, r.f_fu_star, r.cost(case)))
                .collect(),
        }
    }
}

/// Bar sizes available to a design, ascending by diameter.
#[derive(Debug, Clone, PartialEq)]
pub struct BarCatalog {
    bars: Vec<BarSpec>,
}

impl BarCatalog {
    pub fn new(bars: Vec<BarSpec>) -> Result<Self, Error> {
        let rows = bars
            .iter()
            .map(|b| BarRow {
                designation: b.designation.to_string(),
                diameter_mm: b.diameter_mm,
                f_fu_star: b.f_fu_star,
                cost_case_a: b.cost,
                cost_case_b: b.cost,
                cost_case_c: b.cost,
            })
            .collect();
        BarTable::new(rows)?;
        Ok(Self { bars })
    }

    pub fn bars(&self) -> &[BarSpec] {
        &self.bars
    }

    pub fn len(&self) -> usize {
        self.bars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bars.is_empty()
    }

    pub fn get(&self, index: usize) -> Option<&BarSpec> {
        self.bars.get(index)
    }

    pub fn find(&self, designation: &str) -> Option<&BarSpec> {
        let wanted = designation.trim();
        let wanted = wanted.strip_prefix('#').unwrap_or(wanted);
        self.bars.iter().find(|b| {
            let d: &str = &b.designation;
            d.strip_prefix('#').unwrap_or(d) == wanted
        })
    }

    pub fn smallest(&self) -> &BarSpec {
        &self.bars[0]
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Concrete {
    /// Specified compressive strength f'c, MPa.
    pub f_c: f64,
    /// Modulus of elasticity, MPa.
    pub e_c: f64,
    /// Ultimate compressive strain.
    pub eps_cu: f64,
    /// Density, kN/m³.
    pub gamma_c: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Frp {
    /// Guaranteed modulus of elasticity, MPa.
    pub e_f: f64,
    /// Environmental reduction factor.
    pub c_e: f64,
    /// Bond coefficient.
    pub k_b: f64,
    /// Creep-rupture stress limit as a fraction of the design strength.
    pub creep_limit_factor: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Loading {
    /// Span, m.
    pub span: f64,
    /// Superimposed dead load, kN/m.
    pub w_sdl: f64,
    /// Live load, kN/m.
    pub w_ll: f64,
    /// Fraction of the live load that is sustained.
    pub sustained_fraction: f64,
    /// Long-term time factor ξ.
    pub xi: f64,
}

/// Minimum dimension governed by a bar diameter: `max(factor·φ, floor)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiameterRule {
    pub factor: f64,
    pub floor_mm: f64,
}

impl DiameterRule {
    pub fn apply_mm(&self, diameter_mm: f64) -> f64 {
        (self.factor * diameter_mm).max(self.floor_mm)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Limits {
    pub b_min: f64,
    pub b_max: f64,
    pub h_min: f64,
    pub h_max: f64,
    /// Permissible crack width, mm.
    pub w_max: f64,
    /// Permissible long-term deflection, m.
    pub delta_lt_max: f64,
    /// Minimum clear gap between bars.
    pub gap_rule: DiameterRule,
    /// Minimum clear cover to the bar surface.
    pub cover_rule: DiameterRule,
}

/// A candidate design: a rectangular section with one layer of `n` equal bars.
#[derive(Debug, Clone, PartialEq)]
pub struct Section {
    pub b: f64,
    pub h: f64,
    pub n: u32,
    pub bar: BarSpec,
}

impl Section {
    pub fn new(b: f64, h: f64, n: u32, bar: BarSpec) -> Result<Self, Error> {
        if !(b > 0.0 && b.is_finite()) || !(h > 0.0 && h.is_finite()) {
            return Err(Error::InvalidSection(format!(
                "width and height must be positive (b={b}, h={h})"
            )));
        }
        if n < 2 {
            return Err(Error::InvalidSection(format!(
                "at least two bars are required, got {n}"
            )));
        }
        Ok(Self { b, h, n, bar })
    }

    /// Total reinforcement area A_f, m².
    pub fn bar_area(&self) -> f64 {
        self.n as f64 * self.bar.area()
    }
}

impl fmt::Display for Section {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "b={:.4} m, h={:.4} m, {} x {}",
            self.b, self.h, self.n, self.bar.designation
        )
    }
}

/// Everything needed to evaluate a section.
#[derive(Debug, Clone, PartialEq)]
pub struct DesignProblem {
    pub concrete: Concrete,
    pub frp: Frp,
    pub loading: Loading,
    pub limits: Limits,
    pub catalog: BarCatalog,
    pub rates: CostRates,
}

impl DesignProblem {
    /// The worked-example data: a 5 m simply supported GFRP-reinforced beam.
    pub fn example(case: CostCase, variant: CatalogVariant) -> Self {
        let span = 5.0;
        Self {
            concrete: Concrete {
                f_c: 30.0,
                e_c: 26016.8,
                eps_cu: 0.003,
                gamma_c: 24.0,
            },
            frp: Frp {
                e_f: 44800.0,
                c_e: 0.8,
                k_b: 1.4,
                creep_limit_factor: 0.20,
            },
            loading: Loading {
                span,
                w_sdl: 8.0,
                w_ll: 7.0,
                sustained_fraction: 0.2,
                xi: 2.0,
            },
            limits: Limits {
                b_min: 0.20,
                b_max: 1.00,
                h_min: 0.20,
                h_max: 2.00,
                w_max: 0.7,
                delta_lt_max: span / 240.0,
                gap_rule: DiameterRule {
                    factor: 1.4,
                    floor_mm: 30.0,
                },
                cover_rule: DiameterRule {
                    factor: 2.5,
                    floor_mm: 40.0,
                },
            },
            catalog: BarTable::builtin(variant).catalog(case),
            rates: case.rates(),
        }
    }

    /// Same data with the height capped.
    pub fn with_h_max(mut self, h_max: f64) -> Self {
        self.limits.h_max = h_max;
        self
    }

    pub fn validate(&self) -> Result<(), Error> {
        let c = &self.concrete;
        let f = &self.frp;
        let l = &self.loading;
        let lim = &self.limits;
        let bad = |msg: &str| Err(Error::Config(msg.to_string()));
        if !(c.f_c > 0.0 && c.e_c > 0.0 && c.gamma_c > 0.0) {
            return bad("concrete properties must be positive");
        }
        if !(c.eps_cu > 0.0 && c.eps_cu < 0.01) {
            return bad("eps_cu must lie in (0, 0.01)");
        }
        if !(f.e_f > 0.0 && f.c_e > 0.0 && f.c_e <= 1.0 && f.k_b > 0.0) {
            return bad("FRP properties out of range (E_f > 0, 0 < C_E <= 1, k_b > 0)");
        }
        if !(f.creep_limit_factor > 0.0) {
            return bad("creep_limit_factor must be positive");
        }
        if !(l.span > 0.0) || !(l.w_sdl >= 0.0) || !(l.w_ll >= 0.0) {
            return bad("span must be positive and loads non-negative");
        }
        if !(0.0..=1.0).contains(&l.sustained_fraction) {
            return bad("sustained_fraction must lie in [0, 1]");
        }
        if !(lim.b_min > 0.0 && lim.b_min <= lim.b_max) || !(lim.h_min > 0.0 && lim.h_min <= lim.h_max)
        {
            return bad("require 0 < b_min <= b_max and 0 < h_min <= h_max");
        }
        if !(lim.w_max > 0.0) || !(lim.delta_lt_max > 0.0) {
            return bad("serviceability limits must be positive");
        }
        if !(self.rates.concrete >= 0.0 && self.rates.shuttering >= 0.0) {
            return bad("cost rates must be non-negative");
        }
        if self.catalog.is_empty() {
            return bad("bar catalog is empty");
        }
        Ok(())
    }
}

/// Distance from the tension face to the bar centroid, and effective depth.
pub fn cover_and_depth(section: &Section, limits: &Limits) -> Result<(f64, f64), GeometryError> {
    let d_c = centroid_offset(&section.bar, limits);
    let d = section.h - d_c;
    if d <= 0.0 {
        return Err(GeometryError::NonPositiveEffectiveDepth { h: section.h, d_c });
    }
    Ok((d_c, d))
}

/// `d_c = cover + φ/2`, m.
pub fn centroid_offset(bar: &BarSpec, limits: &Limits) -> f64 {
    (limits.cover_rule.apply_mm(bar.diameter_mm) + bar.diameter_mm / 2.0) / 1000.0
}

/// Narrowest width that fits `n` bars with the cover and gap rules, m.
pub fn min_width(n: u32, bar: &BarSpec, limits: &Limits) -> f64 {
    let phi = bar.diameter_mm;
    let cover = limits.cover_rule.apply_mm(phi);
    let gap = limits.gap_rule.apply_mm(phi);
    let n = n as f64;
    (2.0 * cover + n * phi + (n - 1.0) * gap) / 1000.0
}

/// Largest bar count that fits in `width`, or `None` if not even two fit.
pub fn max_bars(width: f64, bar: &BarSpec, limits: &Limits) -> Option<u32> {
    let phi = bar.diameter_mm;
    let cover = limits.cover_rule.apply_mm(phi);
    let gap = limits.gap_rule.apply_mm(phi);
    let raw = ((width * 1000.0 - 2.0 * cover + gap) / (phi + gap)).floor();
    if !raw.is_finite() {
        return None;
    }
    let mut n = raw.max(1.0) as u32;
    // Floating point can put the floor one off at exact fits.
    while n > 1 && min_width(n, bar, limits) > width {
        n -= 1;
    }
    while min_width(n + 1, bar, limits) <= width {
        n += 1;
    }
    (n >= 2 && min_width(n, bar, limits) <= width).then_some(n)
}

/// Centre-to-centre spacing `(b − 2·d_c)/(n − 1)`, m.
pub fn bar_spacing(section: &Section, limits: &Limits) -> Result<f64, GeometryError> {
    let d_c = centroid_offset(&section.bar, limits);
    let s = (section.b - 2.0 * d_c) / (section.n as f64 - 1.0);
    if s < 0.0 {
        return Err(GeometryError::NegativeSpacing { b: section.b, d_c });
    }
    Ok(s)
}

/// Self weight `γ_c·b·h`, kN/m.
pub fn self_weight(b: f64, h: f64, concrete: &Concrete) -> f64 {
    concrete.gamma_c * b * h
}
