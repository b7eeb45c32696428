use frpbeam::beam_model::{CatalogVariant, CostCase, DesignProblem, Section};
use frpbeam::checks::{bar_stress, check_all, flexural_strength, neutral_axis_ratio, strength_reduction, FlexureInput};
use frpbeam::constraints::{Penalization, PenaltySchedule};
use frpbeam::optimizers::{optimize2, Variant};
use proptest::prelude::*;

fn problem() -> DesignProblem {
    DesignProblem::example(CostCase::A, CatalogVariant::Reconciled)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn effective_inertia_is_bracketed(b in 0.2f64..1.0, h in 0.2f64..2.0, n in 2u32..30, idx in 0usize..8) {
        let p = problem();
        let s = Section::new(b, h, n, p.catalog.bars()[idx].clone()).unwrap();
        let r = check_all(&p, &s);
        prop_assume!(r.d > 0.0);
        prop_assert!(r.i_cr <= r.i_e && r.i_e <= r.i_g, "{} {} {}", r.i_cr, r.i_e, r.i_g);
        prop_assert!(r.violations.iter().all(|v| v.magnitude >= 0.0 && v.magnitude.is_finite()));
    }

    #[test]
    fn neutral_axis_ratio_is_monotone(rn in 1e-6f64..5.0, dr in 1e-6f64..1.0) {
        let k = neutral_axis_ratio(rn, 1.0);
        prop_assert!(k > 0.0 && k < 1.0);
        prop_assert!(neutral_axis_ratio(rn + dr, 1.0) > k);
    }

    #[test]
    fn phi_is_bounded_and_nondecreasing(rb in 1e-3f64..0.05, a in 0.0f64..3.0, da in 0.0f64..1.0) {
        let lo = strength_reduction(a * rb, rb);
        let hi = strength_reduction((a + da) * rb, rb);
        prop_assert!((0.55..=0.65).contains(&lo));
        prop_assert!(hi >= lo - 1e-12);
    }

    #[test]
    fn service_stress_falls_with_area(a_f in 1e-4f64..5e-3, extra in 1e-5f64..1e-3, d in 0.2f64..1.5) {
        let (b, n_f, m) = (0.3, 1.72, 60.0);
        let stress = |a: f64| bar_stress(m, a, d, neutral_axis_ratio(a / (b * d), n_f));
        prop_assert!(stress(a_f + extra) < stress(a_f));
    }

    #[test]
    fn capacity_is_continuous_at_balance(d in 0.2f64..1.0, b in 0.2f64..1.0) {
        let p = problem();
        let f_fu = 496.0;
        let rho_fb = frpbeam::checks::balanced_ratio(&p.concrete, &p.frp, f_fu);
        let mn = |rho: f64| {
            flexural_strength(&p.concrete, &p.frp, &FlexureInput {
                b, d, a_f: rho * b * d, f_fu, eps_fu: f_fu / p.frp.e_f, rho_f: rho, rho_fb,
            }).m_n
        };
        let below = mn(rho_fb);
        let above = mn(rho_fb * (1.0 + 1e-9));
        prop_assert!((above - below).abs() / below < 0.05, "{below} vs {above}");
    }
}

#[test]
fn penalized_runs_are_reproducible() {
    let p = problem();
    let mut swarm = Variant::Optimizer2.default_swarm();
    swarm.t_max = 300;
    swarm.record_trace = true;
    let pen = Penalization {
        schedule: PenaltySchedule::DEFAULT,
        ..Penalization::default()
    };
    let a = optimize2(&p, &swarm, &pen, 4).unwrap();
    let b = optimize2(&p, &swarm, &pen, 4).unwrap();
    assert_eq!(a.section, b.section);
    assert_eq!(a.cost.total.to_bits(), b.cost.total.to_bits());
    assert_eq!(a.trace, b.trace);
    let c = optimize2(&p, &swarm, &pen, 5).unwrap();
    assert_ne!(a.trace, c.trace);
}
