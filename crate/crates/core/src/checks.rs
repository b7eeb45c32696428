//! Flexural design checks for FRP-reinforced rectangular sections.
//!
//! Follows the ACI 440.1R-06 steps: loads and moments, design material
//! properties, balanced and minimum reinforcement ratios, flexural
//! strength, crack width, short and long term deflection, and creep
//! rupture. [`check_all`] runs every step and collects a normalized
//! violation vector; it never short-circuits.

use crate::beam_model::{
    bar_spacing, centroid_offset, cover_and_depth, min_width, self_weight, BarSpec, Concrete,
    DesignProblem, Frp, Loading, Section,
};
use crate::error::GeometryError;

/// Knobs for the less settled parts of the procedure.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CheckOptions {
    /// Cap the tension-stiffening factor `0.2·ρ_f/ρ_fb` at 1.
    pub cap_tension_stiffening: bool,
    /// Constant of the second branch of the minimum ratio, `c / f_fu`.
    pub min_ratio_floor: f64,
}

impl Default for CheckOptions {
    fn default() -> Self {
        Self {
            cap_tension_stiffening: true,
            min_ratio_floor: 2.256,
        }
    }
}

/// Dead load including self weight, and the factored load `1.2·w_DL + 1.6·w_LL`.
pub fn factored_load(problem: &DesignProblem, b: f64, h: f64) -> (f64, f64) {
    let w_dl = problem.loading.w_sdl + self_weight(b, h, &problem.concrete);
    let w_u = 1.2 * w_dl + 1.6 * problem.loading.w_ll;
    (w_dl, w_u)
}

/// Midspan moments of a simply supported span: ultimate and service (DL + LL).
pub fn bending_moments(loading: &Loading, w_dl: f64, w_u: f64) -> (f64, f64) {
    let l2 = loading.span * loading.span;
    (w_u * l2 / 8.0, (w_dl + loading.w_ll) * l2 / 8.0)
}

/// Design strength `C_E·f*_fu` and rupture strain from the linear-elastic law.
pub fn design_material(frp: &Frp, bar: &BarSpec) -> (f64, f64) {
    let f_fu = frp.c_e * bar.f_fu_star;
    (f_fu, f_fu / frp.e_f)
}

/// Stress-block factor β1.
pub fn beta1(f_c: f64) -> f64 {
    if f_c <= 27.58 {
        0.85
    } else {
        (0.85 - 0.05 * (f_c - 27.58) / 6.895).max(0.65)
    }
}

/// Balanced reinforcement ratio ρ_fb.
pub fn balanced_ratio(concrete: &Concrete, frp: &Frp, f_fu: f64) -> f64 {
    let ef_ecu = frp.e_f * concrete.eps_cu;
    0.85 * beta1(concrete.f_c) * (concrete.f_c / f_fu) * ef_ecu / (ef_ecu + f_fu)
}

/// Minimum reinforcement ratio `max(0.4070·√f'c, 2.256) / f_fu`.
pub fn min_ratio(f_c: f64, f_fu: f64) -> f64 {
    min_ratio_with_floor(f_c, f_fu, CheckOptions::default().min_ratio_floor)
}

pub fn min_ratio_with_floor(f_c: f64, f_fu: f64, floor: f64) -> f64 {
    (0.4070 * f_c.sqrt() / f_fu).max(floor / f_fu)
}

/// Nominal flexural capacity and the strength-reduction factor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Flexure {
    /// Nominal moment M_n, kN·m.
    pub m_n: f64,
    pub phi: f64,
    /// Bar stress at nominal capacity, MPa (f_fu when under-reinforced).
    pub f_f: f64,
    pub over_reinforced: bool,
}

/// Inputs of [`flexural_strength`] that do not come from the materials.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FlexureInput {
    pub b: f64,
    pub d: f64,
    pub a_f: f64,
    pub f_fu: f64,
    pub eps_fu: f64,
    pub rho_f: f64,
    pub rho_fb: f64,
}

pub fn flexural_strength(concrete: &Concrete, frp: &Frp, x: &FlexureInput) -> Flexure {
    let beta1 = beta1(concrete.f_c);
    let eps_cu = concrete.eps_cu;
    if x.rho_f <= x.rho_fb {
        let lever = 1.0 - beta1 / 2.0 * eps_cu / (eps_cu + x.eps_fu);
        Flexure {
            m_n: 1000.0 * x.a_f * x.f_fu * x.d * lever,
            phi: 0.55,
            f_f: x.f_fu,
            over_reinforced: false,
        }
    } else {
        let ef_ecu = frp.e_f * eps_cu;
        let f_f = ((ef_ecu * ef_ecu) / 4.0 + 0.85 * beta1 * concrete.f_c * ef_ecu / x.rho_f).sqrt()
            - 0.5 * ef_ecu;
        let f_f = f_f.min(x.f_fu);
        let m_n = 1000.0 * x.a_f * f_f * (x.d - x.a_f * f_f / (1.7 * concrete.f_c * x.b));
        Flexure {
            m_n,
            phi: strength_reduction(x.rho_f, x.rho_fb),
            f_f,
            over_reinforced: true,
        }
    }
}

/// φ as a function of the reinforcement ratio.
pub fn strength_reduction(rho_f: f64, rho_fb: f64) -> f64 {
    if rho_f <= rho_fb {
        0.55
    } else if rho_f > 1.4 * rho_fb {
        0.65
    } else {
        0.3 + 0.25 * rho_f / rho_fb
    }
}

/// Neutral-axis depth ratio `k` of the cracked elastic section.
pub fn neutral_axis_ratio(rho_f: f64, n_f: f64) -> f64 {
    let rn = rho_f * n_f;
    (rn * rn + 2.0 * rn).sqrt() - rn
}

/// Elastic bar stress `M / (A_f·d·(1 − k/3))`, MPa, for a moment in kN·m.
pub fn bar_stress(moment: f64, a_f: f64, d: f64, k: f64) -> f64 {
    moment / (1000.0 * a_f * d * (1.0 - k / 3.0))
}

/// Service stress state: modular ratio, `k`, and bar stress under DL + LL.
pub fn service_stress_state(
    concrete: &Concrete,
    frp: &Frp,
    rho_f: f64,
    a_f: f64,
    d: f64,
    m_service: f64,
) -> (f64, f64, f64) {
    let n_f = frp.e_f / concrete.e_c;
    let k = neutral_axis_ratio(rho_f, n_f);
    (n_f, k, bar_stress(m_service, a_f, d, k))
}

/// Geometry consumed by the crack-width estimate, all in m.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CrackGeometry {
    pub h: f64,
    pub d: f64,
    pub d_c: f64,
    pub s: f64,
}

/// Crack width, mm.
pub fn crack_width(g: &CrackGeometry, frp: &Frp, k: f64, f_f: f64) -> f64 {
    let beta = (g.h - k * g.d) / (g.d * (1.0 - k));
    let reach = (g.d_c * g.d_c + (g.s / 2.0) * (g.s / 2.0)).sqrt();
    1000.0 * 2.0 / frp.e_f * beta * frp.k_b * f_f * reach
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Inertias {
    pub i_g: f64,
    pub i_cr: f64,
    /// Cracking moment, kN·m.
    pub m_cr: f64,
    pub i_e: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InertiaInput {
    pub b: f64,
    pub h: f64,
    pub d: f64,
    pub a_f: f64,
    pub n_f: f64,
    pub k: f64,
    pub rho_f: f64,
    pub rho_fb: f64,
    pub m_service: f64,
}

/// Gross, cracked and effective second moments of area.
///
/// The effective inertia is held within `[I_cr, I_g]`; it equals `I_g` while
/// the service moment does not exceed the cracking moment.
pub fn inertias(concrete: &Concrete, x: &InertiaInput, cap_tension_stiffening: bool) -> Inertias {
    let i_g = x.b * x.h.powi(3) / 12.0;
    let i_cr = x.b * x.d.powi(3) / 3.0 * x.k.powi(3) + x.n_f * x.a_f * x.d * x.d * (1.0 - x.k).powi(2);
    let m_cr = 1240.0 * concrete.f_c.sqrt() * i_g / x.h;
    let i_e = if x.m_service <= m_cr {
        i_g
    } else {
        let ratio = (m_cr / x.m_service).powi(3);
        let mut beta_d = 0.2 * x.rho_f / x.rho_fb;
        if cap_tension_stiffening {
            beta_d = beta_d.min(1.0);
        }
        (ratio * beta_d * i_g + (1.0 - ratio) * i_cr).clamp(i_cr.min(i_g), i_g)
    };
    Inertias { i_g, i_cr, m_cr, i_e }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Deflections {
    pub total: f64,
    pub dead: f64,
    pub live: f64,
    pub long_term: f64,
}

/// Immediate deflection of a simply supported span and its long-term value, m.
pub fn deflections(concrete: &Concrete, loading: &Loading, w_dl: f64, i_e: f64) -> Deflections {
    let w = w_dl + loading.w_ll;
    // E_c is in MPa; 1000 converts to kN/m².
    let total = 5.0 * w * loading.span.powi(4) / (384.0 * concrete.e_c * 1000.0 * i_e);
    let (dead, live) = if w > 0.0 {
        (w_dl / w * total, loading.w_ll / w * total)
    } else {
        (0.0, 0.0)
    };
    let long_term = live + 0.6 * loading.xi * (dead + loading.sustained_fraction * live);
    Deflections {
        total,
        dead,
        live,
        long_term,
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CreepRupture {
    /// Sustained moment, kN·m.
    pub m_s: f64,
    /// Sustained bar stress, MPa.
    pub f_fs: f64,
    /// Creep-rupture stress limit, MPa.
    pub limit: f64,
}

impl CreepRupture {
    pub fn satisfied(&self) -> bool {
        self.f_fs <= self.limit
    }
}

#[allow(clippy::too_many_arguments)]
pub fn creep_rupture(
    frp: &Frp,
    loading: &Loading,
    w_dl: f64,
    m_service: f64,
    a_f: f64,
    d: f64,
    k: f64,
    f_fu: f64,
) -> CreepRupture {
    let w = w_dl + loading.w_ll;
    let m_s = if w > 0.0 {
        (w_dl + loading.sustained_fraction * loading.w_ll) / w * m_service
    } else {
        0.0
    };
    CreepRupture {
        m_s,
        f_fs: bar_stress(m_s, a_f, d, k),
        limit: frp.creep_limit_factor * f_fu,
    }
}

/// Names of the entries of [`CheckReport::violations`], in order.
pub const VIOLATION_NAMES: [&str; 12] = [
    "width",
    "b_min",
    "b_max",
    "h_min",
    "h_max",
    "min_ratio",
    "strength",
    "crack_width",
    "long_term_deflection",
    "creep_rupture",
    "effective_depth",
    "bar_spacing",
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Violation {
    pub name: &'static str,
    /// 0 when satisfied, otherwise the relative overshoot.
    pub magnitude: f64,
}

/// Every intermediate quantity of a section evaluation.
///
/// When the effective depth is not positive the engineering quantities are
/// `NaN` and every check that depends on them reports a magnitude of 1.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckReport {
    pub w_dl: f64,
    pub w_u: f64,
    pub m_u: f64,
    pub m_service: f64,
    pub f_fu: f64,
    pub eps_fu: f64,
    pub beta1: f64,
    pub a_f: f64,
    pub d: f64,
    pub d_c: f64,
    pub s: f64,
    pub min_width: f64,
    pub rho_f: f64,
    pub rho_fb: f64,
    pub rho_f_min: f64,
    pub m_n: f64,
    pub phi: f64,
    pub f_f_ultimate: f64,
    pub n_f: f64,
    pub k: f64,
    pub f_f: f64,
    pub crack_w: f64,
    pub i_g: f64,
    pub i_cr: f64,
    pub m_cr: f64,
    pub i_e: f64,
    pub delta_i_total: f64,
    pub delta_i_dl: f64,
    pub delta_i_ll: f64,
    pub delta_lt: f64,
    pub m_s: f64,
    pub f_fs: f64,
    pub f_fs_limit: f64,
    pub geometry_fault: Option<GeometryError>,
    pub violations: [Violation; 12],
}

impl CheckReport {
    pub fn is_feasible(&self) -> bool {
        self.violations.iter().all(|v| v.magnitude == 0.0)
    }

    pub fn violation(&self, name: &str) -> Option<f64> {
        self.violations.iter().find(|v| v.name == name).map(|v| v.magnitude)
    }

    pub fn magnitudes(&self) -> [f64; 12] {
        self.violations.map(|v| v.magnitude)
    }

    /// `Σ v` and `Σ v²` over the violation vector.
    pub fn violation_sums(&self) -> (f64, f64) {
        self.violations.iter().fold((0.0, 0.0), |(s, s2), v| {
            (s + v.magnitude, s2 + v.magnitude * v.magnitude)
        })
    }

    /// Name, value and unit of every reported quantity, in step order.
    pub fn quantities(&self) -> Vec<(&'static str, f64, &'static str)> {
        vec![
            ("w_DL", self.w_dl, "kN/m"),
            ("w_u", self.w_u, "kN/m"),
            ("M_u", self.m_u, "kN·m"),
            ("M_service", self.m_service, "kN·m"),
            ("f_fu", self.f_fu, "MPa"),
            ("eps_fu", self.eps_fu, "-"),
            ("beta1", self.beta1, "-"),
            ("rho_fb", self.rho_fb, "-"),
            ("A_f", self.a_f, "m²"),
            ("d", self.d, "m"),
            ("d_c", self.d_c, "m"),
            ("rho_f", self.rho_f, "-"),
            ("rho_f_min", self.rho_f_min, "-"),
            ("M_n", self.m_n, "kN·m"),
            ("phi", self.phi, "-"),
            ("phi_M_n", self.phi * self.m_n, "kN·m"),
            ("f_f_ultimate", self.f_f_ultimate, "MPa"),
            ("n_f", self.n_f, "-"),
            ("k", self.k, "-"),
            ("f_f", self.f_f, "MPa"),
            ("s", self.s, "m"),
            ("crack_w", self.crack_w, "mm"),
            ("I_g", self.i_g, "m⁴"),
            ("I_cr", self.i_cr, "m⁴"),
            ("M_cr", self.m_cr, "kN·m"),
            ("I_e", self.i_e, "m⁴"),
            ("delta_i_total", self.delta_i_total, "m"),
            ("delta_i_DL", self.delta_i_dl, "m"),
            ("delta_i_LL", self.delta_i_ll, "m"),
            ("delta_LT", self.delta_lt, "m"),
            ("M_s", self.m_s, "kN·m"),
            ("f_fs", self.f_fs, "MPa"),
            ("F_fs", self.f_fs_limit, "MPa"),
            ("min_width", self.min_width, "m"),
        ]
    }
}

/// `demand ≤ capacity` as a relative overshoot.
fn upper(demand: f64, capacity: f64) -> f64 {
    let scale = capacity.abs().max(f64::MIN_POSITIVE);
    let v = (demand - capacity) / scale;
    if v > 0.0 {
        v
    } else if v.is_nan() {
        1.0
    } else {
        0.0
    }
}

/// `value ≥ bound` as a relative shortfall.
fn lower(value: f64, bound: f64) -> f64 {
    let scale = bound.abs().max(f64::MIN_POSITIVE);
    let v = (bound - value) / scale;
    if v > 0.0 {
        v
    } else if v.is_nan() {
        1.0
    } else {
        0.0
    }
}

fn violate(name: &'static str, magnitude: f64) -> Violation {
    Violation { name, magnitude }
}

/// Runs every check on `section` with `problem`'s data.
pub fn check_all(problem: &DesignProblem, section: &Section) -> CheckReport {
    check_all_with(problem, section, &CheckOptions::default())
}

pub fn check_all_with(problem: &DesignProblem, section: &Section, opts: &CheckOptions) -> CheckReport {
    let concrete = &problem.concrete;
    let frp = &problem.frp;
    let loading = &problem.loading;
    let limits = &problem.limits;
    let (b, h) = (section.b, section.h);

    let (w_dl, w_u) = factored_load(problem, b, h);
    let (m_u, m_service) = bending_moments(loading, w_dl, w_u);
    let (f_fu, eps_fu) = design_material(frp, &section.bar);
    let beta1 = beta1(concrete.f_c);
    let rho_fb = balanced_ratio(concrete, frp, f_fu);
    let rho_f_min = min_ratio_with_floor(concrete.f_c, f_fu, opts.min_ratio_floor);
    let a_f = section.bar_area();
    let width_needed = min_width(section.n, &section.bar, limits);
    let d_c = centroid_offset(&section.bar, limits);
    let spacing = bar_spacing(section, limits);
    let s = (b - 2.0 * d_c) / (section.n as f64 - 1.0);

    let geometric = [
        violate("width", lower(b, width_needed)),
        violate("b_min", lower(b, limits.b_min)),
        violate("b_max", upper(b, limits.b_max)),
        violate("h_min", lower(h, limits.h_min)),
        violate("h_max", upper(h, limits.h_max)),
    ];
    let spacing_fault = match spacing {
        Ok(_) => 0.0,
        Err(_) => 1.0 + (2.0 * d_c - b) / (2.0 * d_c),
    };

    let depth = cover_and_depth(section, limits);
    let geometry_fault = depth.err().or(spacing.err());
    let d = match depth {
        Ok((_, d)) => d,
        Err(_) => {
            let nan = f64::NAN;
            let depth_fault = 1.0 + (d_c - h) / d_c;
            let [g0, g1, g2, g3, g4] = geometric;
            return CheckReport {
                w_dl,
                w_u,
                m_u,
                m_service,
                f_fu,
                eps_fu,
                beta1,
                a_f,
                d: h - d_c,
                d_c,
                s,
                min_width: width_needed,
                rho_f: nan,
                rho_fb,
                rho_f_min,
                m_n: nan,
                phi: nan,
                f_f_ultimate: nan,
                n_f: frp.e_f / concrete.e_c,
                k: nan,
                f_f: nan,
                crack_w: nan,
                i_g: b * h.powi(3) / 12.0,
                i_cr: nan,
                m_cr: 1240.0 * concrete.f_c.sqrt() * (b * h.powi(3) / 12.0) / h,
                i_e: nan,
                delta_i_total: nan,
                delta_i_dl: nan,
                delta_i_ll: nan,
                delta_lt: nan,
                m_s: nan,
                f_fs: nan,
                f_fs_limit: frp.creep_limit_factor * f_fu,
                geometry_fault,
                violations: [
                    g0,
                    g1,
                    g2,
                    g3,
                    g4,
                    violate("min_ratio", 1.0),
                    violate("strength", 1.0),
                    violate("crack_width", 1.0),
                    violate("long_term_deflection", 1.0),
                    violate("creep_rupture", 1.0),
                    violate("effective_depth", depth_fault),
                    violate("bar_spacing", spacing_fault),
                ],
            };
        }
    };

    let rho_f = a_f / (b * d);
    let flexure = flexural_strength(
        concrete,
        frp,
        &FlexureInput {
            b,
            d,
            a_f,
            f_fu,
            eps_fu,
            rho_f,
            rho_fb,
        },
    );
    let (n_f, k, f_f) = service_stress_state(concrete, frp, rho_f, a_f, d, m_service);
    let crack_w = crack_width(&CrackGeometry { h, d, d_c, s }, frp, k, f_f);
    let inertia = inertias(
        concrete,
        &InertiaInput {
            b,
            h,
            d,
            a_f,
            n_f,
            k,
            rho_f,
            rho_fb,
            m_service,
        },
        opts.cap_tension_stiffening,
    );
    let defl = deflections(concrete, loading, w_dl, inertia.i_e);
    let creep = creep_rupture(frp, loading, w_dl, m_service, a_f, d, k, f_fu);

    let [g0, g1, g2, g3, g4] = geometric;
    let violations = [
        g0,
        g1,
        g2,
        g3,
        g4,
        violate("min_ratio", lower(rho_f, rho_f_min)),
        violate("strength", upper(m_u, flexure.phi * flexure.m_n)),
        violate("crack_width", upper(crack_w, limits.w_max)),
        violate("long_term_deflection", upper(defl.long_term, limits.delta_lt_max)),
        violate("creep_rupture", upper(creep.f_fs, creep.limit)),
        violate("effective_depth", 0.0),
        violate("bar_spacing", spacing_fault),
    ];

    CheckReport {
        w_dl,
        w_u,
        m_u,
        m_service,
        f_fu,
        eps_fu,
        beta1,
        a_f,
        d,
        d_c,
        s,
        min_width: width_needed,
        rho_f,
        rho_fb,
        rho_f_min,
        m_n: flexure.m_n,
        phi: flexure.phi,
        f_f_ultimate: flexure.f_f,
        n_f,
        k,
        f_f,
        crack_w,
        i_g: inertia.i_g,
        i_cr: inertia.i_cr,
        m_cr: inertia.m_cr,
        i_e: inertia.i_e,
        delta_i_total: defl.total,
        delta_i_dl: defl.dead,
        delta_i_ll: defl.live,
        delta_lt: defl.long_term,
        m_s: creep.m_s,
        f_fs: creep.f_fs,
        f_fs_limit: creep.limit,
        geometry_fault,
        violations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::beam_model::{CatalogVariant, CostCase};
    use approx::assert_abs_diff_eq;

    fn problem() -> DesignProblem {
        DesignProblem::example(CostCase::A, CatalogVariant::Reconciled)
    }

    fn section(p: &DesignProblem, b: f64, h: f64, n: u32, bar: &str) -> Section {
        Section::new(b, h, n, p.catalog.find(bar).unwrap().clone()).unwrap()
    }

    #[test]
    fn beta1_branches() {
        assert_eq!(beta1(27.58), 0.85);
        assert_abs_diff_eq!(beta1(30.0), 0.832451, epsilon = 1e-6);
        assert_eq!(beta1(100.0), 0.65);
    }

    #[test]
    fn reinforcement_ratios() {
        let p = problem();
        let no7 = p.catalog.find("#7").unwrap();
        let (f_fu, _) = design_material(&p.frp, no7);
        assert_abs_diff_eq!(f_fu, 468.8, epsilon = 1e-9);
        assert_abs_diff_eq!(balanced_ratio(&p.concrete, &p.frp, f_fu), 0.0100890, epsilon = 1e-7);
        assert_abs_diff_eq!(min_ratio(40.0, 496.0), 0.0051897, epsilon = 1e-7);
        // Below about 30.7 MPa the constant branch governs.
        assert_abs_diff_eq!(min_ratio(30.0, 496.0), 2.256 / 496.0, epsilon = 1e-12);
    }

    #[test]
    fn phi_is_continuous() {
        let rb = 0.01;
        assert_eq!(strength_reduction(rb, rb), 0.55);
        assert_abs_diff_eq!(strength_reduction(rb * (1.0 + 1e-12), rb), 0.55, epsilon = 1e-9);
        assert_abs_diff_eq!(strength_reduction(1.2 * rb, rb), 0.60, epsilon = 1e-12);
        assert_abs_diff_eq!(strength_reduction(1.4 * rb, rb), 0.65, epsilon = 1e-12);
        assert_eq!(strength_reduction(1.4 * rb * (1.0 + 1e-9), rb), 0.65);
    }

    #[test]
    fn neutral_axis_limits() {
        assert_eq!(neutral_axis_ratio(0.0, 1.72), 0.0);
        let k = neutral_axis_ratio(0.01, 1.72);
        assert!(k > 0.0 && k < 1.0);
        assert!(neutral_axis_ratio(0.02, 1.72) > k);
    }

    #[test]
    fn reference_case_a_section() {
        let p = problem();
        let r = check_all(&p, &section(&p, 0.2124, 0.5346, 3, "#6"));
        assert!(r.is_feasible(), "{:?}", r.violations);
        assert_abs_diff_eq!(r.rho_fb, 0.0091243, epsilon = 1e-7);
        assert_abs_diff_eq!(r.rho_f_min, 0.0045484, epsilon = 1e-7);
        assert_abs_diff_eq!(r.k, 0.156505, epsilon = 1e-6);
        assert_abs_diff_eq!(r.f_f, 143.146, epsilon = 1e-3);
        assert_abs_diff_eq!(r.crack_w, 0.63535, epsilon = 1e-5);
        assert_abs_diff_eq!(r.i_g, 2.70433e-3, epsilon = 1e-8);
        assert_abs_diff_eq!(r.m_cr, 34.3569, epsilon = 1e-4);
        assert_abs_diff_eq!(r.m_u, 75.2194, epsilon = 1e-4);
        assert_abs_diff_eq!(r.m_service, 55.3912, epsilon = 1e-4);
        assert_abs_diff_eq!(r.m_n, 184.524, epsilon = 1e-3);
        assert_eq!(r.phi, 0.55);
        assert_abs_diff_eq!(r.i_e, 3.23580e-4, epsilon = 1e-9);
        assert_abs_diff_eq!(r.delta_lt, 0.0208322, epsilon = 1e-7);
        assert_abs_diff_eq!(r.f_fs, 97.921, epsilon = 1e-3);
        assert_abs_diff_eq!(r.f_fs_limit, 99.2, epsilon = 1e-9);
    }

    #[test]
    fn over_reinforced_section() {
        let p = problem().with_h_max(0.35);
        let r = check_all(&p, &section(&p, 0.5067, 0.35, 9, "#6"));
        assert!(r.rho_f > 1.4 * r.rho_fb);
        assert_eq!(r.phi, 0.65);
        assert!(r.f_f_ultimate < r.f_fu);
        assert_abs_diff_eq!(r.m_n, 228.612, epsilon = 1e-3);
        assert_abs_diff_eq!(r.k, 0.216041, epsilon = 1e-6);
        assert_abs_diff_eq!(r.delta_lt, 0.0204771, epsilon = 1e-7);
    }

    #[test]
    fn lower_height_fails_deflection() {
        let p = problem();
        let r = check_all(&p, &section(&p, 0.2124, 0.45, 3, "#6"));
        assert!(!r.is_feasible());
        assert!(r.violation("long_term_deflection").unwrap() > 0.0);
        assert_eq!(r.violation("width"), Some(0.0));
    }

    #[test]
    fn non_positive_depth_is_reported() {
        let p = problem();
        let s = Section {
            b: 0.3,
            h: 0.04,
            n: 3,
            bar: p.catalog.find("#6").unwrap().clone(),
        };
        let r = check_all(&p, &s);
        assert!(r.geometry_fault.is_some());
        assert!(r.k.is_nan());
        assert!(r.violation("effective_depth").unwrap() > 1.0);
        assert_eq!(r.violation("strength"), Some(1.0));
        assert!(r.violations.iter().all(|v| v.magnitude.is_finite()));
    }

    #[test]
    fn too_many_bars_violates_width() {
        let p = problem();
        let r = check_all(&p, &section(&p, 0.2124, 0.5346, 4, "#6"));
        assert!(r.violation("width").unwrap() > 0.0);
    }

    #[test]
    fn uncapped_stiffening_is_an_option() {
        let p = problem();
        let s = section(&p, 0.5067, 0.35, 9, "#6");
        let opts = CheckOptions {
            cap_tension_stiffening: false,
            ..CheckOptions::default()
        };
        let capped = check_all(&p, &s);
        let raw = check_all_with(&p, &s, &opts);
        assert!(raw.i_e >= capped.i_e);
        assert!(raw.i_e <= raw.i_g);
    }

    #[test]
    fn evaluation_is_deterministic() {
        let p = problem();
        let s = section(&p, 0.2401, 0.4883, 3, "#7");
        assert_eq!(check_all(&p, &s), check_all(&p, &s));
    }
}
