use kessence_core::model::{
    cs2_paper_thinwall, CsMode, KineticModel, PotentialSpec, ScalingSolution,
};
use proptest::prelude::*;

fn rel(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).abs() / a.abs().max(b.abs())
    }
}

fn central(f: impl Fn(f64) -> f64, x: f64, h: f64) -> f64 {
    (f(x + h) - f(x - h)) / (2.0 * h)
}

prop_compose! {
    fn model()(f0 in -10.0f64..-0.1, f2 in 1e-2f64..1e3, x0 in 1e-2f64..1e3) -> KineticModel {
        KineticModel::new(f0, f2, x0, 0.0).unwrap()
    }
}

prop_compose! {
    fn potential()(quadratic in any::<bool>(), coef in 1e-3f64..1e2) -> PotentialSpec {
        if quadratic { PotentialSpec::Quadratic { m2: coef } } else { PotentialSpec::Constant { v0: coef } }
    }
}

proptest! {
    #[test]
    fn extremum_anchors(m in model()) {
        prop_assert_eq!(m.eos_w(m.x0()).unwrap(), -1.0);
        prop_assert_eq!(m.sound_speed(m.x0()).unwrap(), 0.0);
    }

    #[test]
    fn potential_cancels(m in model(), v in potential(), phi in 0.01f64..10.0, u in 0.0f64..2.0) {
        let x = m.x0() * (1.0 + u);
        let ratio = m.pressure(&v, phi, x) / m.density(&v, phi, x);
        prop_assert!(rel(ratio, m.eos_w(x).unwrap()) < 1e-12);
    }

    #[test]
    fn sound_speed_reduces(m in model(), u in -0.5f64..9.0) {
        let x = m.x0() * (1.0 + u);
        let reduced = (x - m.x0()) / (3.0 * x - m.x0());
        prop_assert!(rel(m.sound_speed(x).unwrap(), reduced) < 1e-12);
    }

    #[test]
    fn perturbed_forms_match_exact(m in model(), u in 1e-9f64..1.0) {
        let x = m.x0() * (1.0 + u);
        let eps = x - m.x0();
        let p = m.with_eps0(eps).unwrap();
        prop_assert!(rel(p.sound_speed_perturbed().unwrap(), m.sound_speed(x).unwrap()) < 1e-12);
        prop_assert!(rel(p.w_perturbed_exact().unwrap(), m.eos_w(x).unwrap()) < 1e-12);
    }

    #[test]
    fn derivatives_match_differences(m in model(), u in 1e-3f64..2.0, below in any::<bool>()) {
        let x = if below { m.x0() * (1.0 - 0.5 * u.min(1.0)) } else { m.x0() * (1.0 + u) };
        let h = 1e-6 * x.abs().max(1.0);
        let fx = central(|x| m.f(x), x, h);
        prop_assert!(rel(fx, m.f_x(x)) < 1e-6, "F_X {} vs {}", fx, m.f_x(x));
        let fxx = central(|x| m.f_x(x), x, h);
        prop_assert!(rel(fxx, m.f_xx(x)) < 1e-6, "F_XX {} vs {}", fxx, m.f_xx(x));
    }

    #[test]
    fn scaling_orders_agree(eps1 in -0.1f64..0.1, growth in 1.0f64..100.0, x0 in 1e-2f64..1e3) {
        let s = ScalingSolution::new(x0, eps1, 1.0).unwrap();
        let exact = s.cs2_of_a(growth, CsMode::Exact).unwrap();
        let first = s.cs2_of_a(growth, CsMode::FirstOrder).unwrap();
        prop_assert!((exact - first).abs() < 2.0 * eps1 * eps1 + f64::MIN_POSITIVE);
    }

    #[test]
    fn thinwall_cs2_decreasing(x0 in 1e-6f64..1e4, step in 1.0001f64..10.0, eps0 in 1e-4f64..1.0) {
        prop_assert!(cs2_paper_thinwall(x0 * step, eps0).unwrap() < cs2_paper_thinwall(x0, eps0).unwrap());
    }
}

#[test]
fn thinwall_cs2_limits() {
    assert!(cs2_paper_thinwall(1e-15, 1e-2).unwrap() > 1.0 - 1e-12);
    assert!(cs2_paper_thinwall(1e8, 1e-2).unwrap() < 1e-18);
}
