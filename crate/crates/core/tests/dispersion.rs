use icewave_core::dispersion::*;
use proptest::prelude::*;

fn params() -> impl Strategy<Value = FluidParams> {
    (prop_oneof![Just(0.0), 0.05f64..5.0], 0.2f64..4.0)
        .prop_map(|(b, g)| FluidParams::new(b, g).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn value_is_even_in_each_wavenumber(p in params(), l1 in -20.0f64..20.0, l2 in -20.0f64..20.0) {
        let d = dispersion_value(l1, l2, &p).unwrap();
        for (a, b) in [(-l1, l2), (l1, -l2), (-l1, -l2)] {
            prop_assert!((dispersion_value(a, b, &p).unwrap() - d).abs() <= 1e-14 * d.abs().max(1.0));
        }
    }

    #[test]
    fn trace_samples_lie_on_the_curve(p in params()) {
        let traces = trace_curve(&p, 1e-3, 10.0, 400).unwrap();
        for t in &traces {
            for s in &t.samples {
                let scale = p.radial(s.a) + p.gamma * p.gamma * s.l1 * s.l1;
                let d = dispersion_value(s.l1, s.l2, &p).unwrap();
                prop_assert!(d.abs() <= 1e-10 * (1.0 + scale), "D = {d:e} at {s:?}");
                prop_assert!((s.l1 * s.l1 + s.l2 * s.l2 - s.a * s.a).abs() <= 1e-10 * (1.0 + s.a * s.a));
            }
        }
    }

    #[test]
    fn shallow_limit_approaches_deep_value(gamma in 0.2f64..4.0, l1 in 0.1f64..5.0, l2 in 0.1f64..5.0) {
        let deep = dispersion_value(l1, l2, &FluidParams::new(0.0, gamma).unwrap()).unwrap();
        let mut last = f64::INFINITY;
        for beta in [1e-2, 1e-3, 1e-4] {
            let v = dispersion_value(l1, l2, &FluidParams::new(beta, gamma).unwrap()).unwrap();
            let err = (v - deep).abs();
            prop_assert!(err <= last);
            last = err;
        }
        prop_assert!(last <= 1e-12 * deep.abs().max(1.0));
    }

    #[test]
    fn derivatives_are_consistent(p in params(), l1 in 0.2f64..4.0, l2 in 0.2f64..4.0) {
        let d = dispersion_derivatives(l1, l2, &p);
        let h = 1e-6;
        let f = |a: f64, b: f64| dispersion_value(a, b, &p).unwrap();
        let dx = (f(l1 + h, l2) - f(l1 - h, l2)) / (2.0 * h);
        let dy = (f(l1, l2 + h) - f(l1, l2 - h)) / (2.0 * h);
        let scale = 1.0 + dx.abs() + dy.abs();
        prop_assert!((d[0] - dx).abs() <= 1e-6 * scale);
        prop_assert!((d[1] - dy).abs() <= 1e-6 * scale);
    }
}

#[test]
fn axis_curvature_changes_sign_across_d2() {
    for beta in [0.3, 1.0, 2.5, 7.0] {
        let g2 = 1.0 / f64::sqrt(beta);
        let h = 1e-4;
        let curvature = |gamma: f64| {
            let p = FluidParams::new(beta, gamma).unwrap();
            let f = |l: f64| dispersion_value(l, 0.0, &p).unwrap();
            (f(2.0 * h) - 2.0 * f(h) + f(0.0)) / (h * h)
        };
        assert!(curvature(0.98 * g2) > 0.0);
        assert!(curvature(1.02 * g2) < 0.0);
    }
}

#[test]
fn classification_of_documented_points() {
    let on = classify_region(&FluidParams::new(4.0, 0.5).unwrap()).unwrap();
    assert_eq!(on.region, Region::OnD2);
    let above = classify_region(&FluidParams::new(1.0, 10.0).unwrap()).unwrap();
    assert_eq!(above.region, Region::AboveD2);
    assert!(above.origin_angle.is_some());
    assert!(FluidParams::new(-1.0, 1.0).is_err());
    let below = classify_region(&FluidParams::new(1.0, 0.3).unwrap()).unwrap();
    assert_eq!(below.region, Region::EmptyBelowD1);
    assert!(
        trace_curve(&FluidParams::new(1.0, 0.3).unwrap(), 1e-3, 10.0, 200)
            .unwrap()
            .is_empty()
    );
}
