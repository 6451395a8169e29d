use icewave_core::dispersion::{curve_ck, FluidParams};
use icewave_core::resonance::{
    config_from_selection, detect_jordan, mode_eigenvalues, select_parameters, tangency_condition,
    JordanMechanism, ResonanceConfig, WaveGeometry,
};
use icewave_core::spectral::*;
use icewave_core::Complex64;
use proptest::prelude::*;

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

fn config(beta: f64) -> ResonanceConfig {
    let (s, nu0, dtheta) = (0.6, 1.4, 1.9);
    let sel = select_parameters(beta, s, nu0, dtheta).unwrap().unwrap();
    config_from_selection(beta, s, nu0, &sel, 4).unwrap()
}

fn close(a: &EigenFunction, b: &EigenFunction, grid: &YGrid) -> f64 {
    assert_eq!(a.k, b.k);
    a.combine(Complex64::new(1.0, 0.0), b, Complex64::new(-1.0, 0.0))
        .unwrap()
        .grid_norm(grid)
}

#[test]
fn mode_quantities_at_mode_zero() {
    let geom = WaveGeometry::new(0.4, 1.3, 0.8).unwrap();
    let p = FluidParams::new(0.5, 2.0).unwrap();
    let q = mode_quantities(0, 0.7, &p, &geom).unwrap();
    assert!((q.a_k - 0.7).abs() < 1e-15);
    assert!((q.b_k - 0.7 * 1.3f64.sin()).abs() < 1e-15);
    let deep = FluidParams::new(0.0, 2.0).unwrap();
    let q = mode_quantities(2, 0.7, &deep, &geom).unwrap();
    assert_eq!(q.c_k, 0.0);
    assert_eq!(q.t_k, 1.0);
    assert!(mode_quantities(0, 0.0, &p, &geom).is_err());
}

#[test]
fn eigenvector_entries_and_residuals() {
    for beta in [1.0, 0.35, 0.0] {
        let c = config(beta);
        let grid = YGrid::for_params(&c.params, 64).unwrap();
        for k in [-1i64, 1] {
            for e in mode_eigenvalues(k, &c.params, &c.geom, (-6.0, 6.0)).unwrap() {
                let v = eigenvector(k, e.s, &c.params, &c.geom).unwrap();
                let q = mode_quantities(k, e.s, &c.params, &c.geom).unwrap();
                let eta = I * (c.params.gamma * q.b_k / (1.0 + q.sigma_k.powi(4)));
                assert!((v.eta - eta).norm() < 1e-15);
                let r = eigen_residual(&v, I * e.s, &c.params, &c.geom, &grid).unwrap();
                assert!(r < 1e-10, "beta {beta} k {k} s {}: {r:e}", e.s);
                let (bot, top) = v.boundary_residuals(&c.params, &c.geom);
                assert!(bot < 1e-12 && top < 1e-10, "{bot:e} {top:e}");
            }
        }
    }
}

#[test]
fn residual_is_grid_independent() {
    let c = config(0.8);
    let v = eigenvector(1, c.s, &c.params, &c.geom).unwrap();
    let g64 = YGrid::for_params(&c.params, 64).unwrap();
    let g128 = YGrid::for_params(&c.params, 128).unwrap();
    let r64 = eigen_residual(&v, I * c.s, &c.params, &c.geom, &g64).unwrap();
    let r128 = eigen_residual(&v, I * c.s, &c.params, &c.geom, &g128).unwrap();
    assert!((r64 - r128).abs() < 1e-13);
}

#[test]
fn rejects_non_eigenvalues() {
    let c = config(1.0);
    assert!(eigenvector(1, c.s * 1.1, &c.params, &c.geom).is_err());
    assert!(generalized_eigenvector(1, c.s, &c.params, &c.geom).is_err());
}

#[test]
fn conjugation_and_reverser() {
    let c = config(1.0);
    let grid = YGrid::for_params(&c.params, 64).unwrap();
    let v = eigenvector(1, c.s, &c.params, &c.geom).unwrap();
    let vm = eigenvector(-1, -c.s, &c.params, &c.geom).unwrap();
    assert!(close(&vm, &v.conj(), &grid) < 1e-13);
    assert!(close(&vm, &reverser(&v).scale(Complex64::new(-1.0, 0.0)), &grid) < 1e-13);
    let e = reversible_eigenvector(1, c.s, &c.params, &c.geom).unwrap();
    assert!(close(&reverser(&e), &e.conj(), &grid) < 1e-13);
    assert!(close(&reverser(&reverser(&e)), &e, &grid) < 1e-15);
}

#[test]
fn generalized_eigenvector_on_curve_ck() {
    for (a, k, t1, t2, nt) in [
        (0.8, 1i64, 0.3, 1.2, 0.5),
        (0.5, 1, 0.9, 1.6, 0.7),
        (1.1, 2, 0.2, 1.0, 0.4),
    ] {
        let Some((beta, gamma)) = curve_ck(a, k, t1, t2, nt).unwrap() else {
            continue;
        };
        let params = FluidParams::new(beta, gamma).unwrap();
        let geom = WaveGeometry::new(t1, t2, nt * beta).unwrap();
        let s = a * beta;
        let j = detect_jordan(k, s, &params, &geom).unwrap();
        assert_eq!(j.mechanism, JordanMechanism::CurveCk);
        let v = eigenvector(k, s, &params, &geom).unwrap();
        let w = generalized_eigenvector(k, s, &params, &geom).unwrap();
        let grid = YGrid::for_params(&params, 64).unwrap();
        let r = chain_residual(&w, &v, I * s, &params, &geom, &grid).unwrap();
        assert!(r < 1e-8, "{r:e}");
        let (bot, top) = w.boundary_residuals(&params, &geom);
        assert!(bot < 1e-10 && top < 1e-8, "{bot:e} {top:e}");
        // xi entry of the printed closed form
        let q = mode_quantities(k, s, &params, &geom).unwrap();
        let d = 1.0 + q.sigma_k.powi(4);
        let k2 = 2.0 * q.sigma_k.powi(4) / (d * d) + (q.c_k - 2.0) / (2.0 * d);
        let xi = -q.sigma_k.powi(2) / d * gamma * t2.sin() + 2.0 * gamma * q.a_k * q.b_k * k2;
        assert!((w.xi.re - xi).abs() < 1e-14 * xi.abs().max(1.0) && w.xi.im == 0.0);
    }
}

#[test]
fn generalized_eigenvector_infinite_depth() {
    let geom = WaveGeometry::new(0.5, 1.4, 1.1).unwrap();
    let probe = FluidParams::new(0.0, 1.0).unwrap();
    let tau = |s: f64| tangency_condition(1, s, &probe, &geom).0;
    let grid: Vec<f64> = (1..4000).map(|i| -4.0 + 8.0 * i as f64 / 4000.0).collect();
    let mut found = false;
    for w in grid.windows(2) {
        if tau(w[0]).signum() == tau(w[1]).signum() {
            continue;
        }
        let (mut lo, mut hi) = (w[0], w[1]);
        for _ in 0..200 {
            let m = 0.5 * (lo + hi);
            if tau(lo).signum() == tau(m).signum() {
                lo = m;
            } else {
                hi = m;
            }
        }
        let s = 0.5 * (lo + hi);
        let sig = (s * s + 2.0 * 1.1 * s * (0.5f64 - 1.4).cos() + 1.21).sqrt();
        let b = 1.1 * 0.5f64.sin() + s * 1.4f64.sin();
        if b.abs() < 1e-3 {
            continue;
        }
        let gamma = ((1.0 + sig.powi(4)) * sig / (b * b)).sqrt();
        let params = FluidParams::new(0.0, gamma).unwrap();
        let j = detect_jordan(1, s, &params, &geom).unwrap();
        assert_eq!(j.mechanism, JordanMechanism::DeepwaterC);
        let v = eigenvector(1, s, &params, &geom).unwrap();
        let w = generalized_eigenvector(1, s, &params, &geom).unwrap();
        let yg = YGrid::for_params(&params, 64).unwrap();
        let r = chain_residual(&w, &v, I * s, &params, &geom, &yg).unwrap();
        assert!(r < 1e-8, "{r:e}");
        found = true;
    }
    assert!(found);
}

#[test]
fn mode_zero_chain() {
    let geom = WaveGeometry::new(0.4, 1.1, 0.9).unwrap();
    let p = FluidParams::new(0.7, 1.3).unwrap();
    let grid = YGrid::for_params(&p, 64).unwrap();
    let ch = mode0_chain(&p, &geom).unwrap();
    assert_eq!(ch.len(), 2);
    let l1 = apply_l_mode(0, &ch[0], &p, &geom).unwrap();
    assert_eq!(l1.grid_norm(&grid), 0.0);
    let l2 = apply_l_mode(0, &ch[1], &p, &geom).unwrap();
    assert!(close(&l2, &ch[0], &grid) < 1e-12);

    let st = geom.theta2.sin();
    let tuned = FluidParams::new(0.7, 1.0 / (0.7f64.sqrt() * st)).unwrap();
    let ch = mode0_chain(&tuned, &geom).unwrap();
    assert_eq!(ch.len(), 4);
    for j in 1..4 {
        let l = apply_l_mode(0, &ch[j], &tuned, &geom).unwrap();
        assert!(close(&l, &ch[j - 1], &grid) < 1e-10, "link {j}");
    }
    let (bot, top) = ch[2].boundary_residuals(&tuned, &geom);
    assert!(bot < 1e-14 && top < 1e-12);

    assert!(mode0_chain(&FluidParams::new(0.0, 1.0).unwrap(), &geom).is_err());
}

#[test]
fn mode_zero_pairing_and_normalization() {
    let geom = WaveGeometry::new(0.4, 1.1, 0.9).unwrap();
    let p = FluidParams::new(0.7, 1.3).unwrap();
    let ch = mode0_chain(&p, &geom).unwrap();
    let w = symplectic_pair(&ch[0], &ch[1], &p).unwrap();
    assert!((w.re - mode0_pairing(&p, &geom)).abs() < 1e-12 && w.im.abs() < 1e-14);
    let n = normalize_chain(&ch, &p).unwrap();
    let w = symplectic_pair(&n[0], &n[1], &p).unwrap();
    assert!((w - Complex64::new(1.0, 0.0)).norm() < 1e-13);
}

#[test]
fn symplectic_normalization_gives_unit_imaginary() {
    for beta in [1.0, 0.0] {
        let c = config(beta);
        for k in [1i64, -1] {
            for e in mode_eigenvalues(k, &c.params, &c.geom, (-6.0, 6.0)).unwrap() {
                let v = reversible_eigenvector(k, e.s, &c.params, &c.geom).unwrap();
                let (n, sign) = normalize_eigenvector(&v, &c.params).unwrap();
                let w = symplectic_pair(&n, &n.conj(), &c.params).unwrap();
                assert!((w - I * sign as f64).norm() < 1e-12, "{w}");
                assert_eq!(
                    symplectic_pair(&n, &n, &c.params).unwrap(),
                    Complex64::new(0.0, 0.0)
                );
            }
        }
    }
}

#[test]
fn quadrature_matches_exact_integral() {
    // integral over [-h, 0] of e^{(s1 + s2) y} computed in closed form
    let c = config(0.6);
    let v = eigenvector(1, c.s, &c.params, &c.geom).unwrap();
    let ones = EigenFunction {
        psi: Profile::Closed(vec![Term::poly(1.0, 0)]),
        ..EigenFunction::zero(-1)
    };
    let h = 1.0 / c.params.beta;
    let q = mode_quantities(1, c.s, &c.params, &c.geom).unwrap();
    let (sg, t) = (q.sigma_k, q.t_k);
    let exact = ((sg * h).sinh() - t * ((sg * h).cosh() - 1.0)) / sg;
    let w = symplectic_pair(&v, &ones, &c.params).unwrap();
    assert!((w / (2.0 * std::f64::consts::PI) - Complex64::new(exact, 0.0)).norm() < 1e-12);
}

#[test]
fn sampled_fallback_agrees_with_closed_form() {
    let c = config(1.0);
    let grid = YGrid::for_params(&c.params, 64).unwrap();
    let v = eigenvector(1, c.s, &c.params, &c.geom).unwrap();
    let closed = apply_l_mode(1, &v, &c.params, &c.geom).unwrap();
    let sampled = apply_l_mode(1, &v.to_sampled(&grid), &c.params, &c.geom).unwrap();
    assert!(!sampled.is_closed());
    let d = close(&closed.to_sampled(&grid), &sampled, &grid);
    assert!(d < 1e-8, "{d:e}");
}

fn arb_function(k: i64) -> impl Strategy<Value = EigenFunction> {
    (prop::collection::vec(-2.0f64..2.0, 12), 0.1f64..3.0).prop_map(move |(c, r)| {
        let z = |i: usize| Complex64::new(c[i], c[i + 1]);
        EigenFunction {
            k,
            eta: z(0),
            rho: z(2),
            gamma: Profile::Closed(vec![
                Term::new(z(4), 1, r, 0.0),
                Term::new(z(10), 0, -r, 0.0),
            ]),
            zeta: z(6),
            xi: z(8),
            psi: Profile::Closed(vec![Term::new(z(4) * r, 2, r, 0.0)]),
        }
    })
}

proptest! {
    #[test]
    fn reverser_anticommutes_with_l(k in -3i64..=3, f in (-3i64..=3).prop_flat_map(arb_function)) {
        let f = EigenFunction { k, ..f };
        let geom = WaveGeometry::new(0.3, 1.7, 1.2).unwrap();
        let p = FluidParams::new(0.9, 1.4).unwrap();
        let grid = YGrid::for_params(&p, 32).unwrap();
        let lrf = apply_l_mode(-k, &reverser(&f), &p, &geom).unwrap();
        let rlf = reverser(&apply_l_mode(k, &f, &p, &geom).unwrap());
        let d = lrf.combine(Complex64::new(1.0, 0.0), &rlf, Complex64::new(1.0, 0.0)).unwrap().grid_norm(&grid);
        prop_assert!(d <= 1e-12 * (1.0 + lrf.grid_norm(&grid)));
    }

    #[test]
    fn pairing_is_antisymmetric(f in arb_function(2), g in arb_function(-2)) {
        let p = FluidParams::new(0.9, 1.4).unwrap();
        let a = symplectic_pair(&f, &g, &p).unwrap();
        let b = symplectic_pair(&g, &f, &p).unwrap();
        prop_assert!((a + b).norm() <= 1e-12 * (1.0 + a.norm()));
    }
}
