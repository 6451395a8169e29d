use icewave_core::centre::*;
use icewave_core::linalg::Matrix;
use icewave_core::Complex64;
use proptest::prelude::*;

const C1: Complex64 = Complex64 { re: 1.0, im: 0.0 };
const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

fn basic() -> HamiltonianSystem {
    make_test_system(TestSystemKind::Basic4d, 1.0, 1.0).unwrap()
}

fn translation() -> HamiltonianSystem {
    make_test_system(TestSystemKind::Translation6d, 1.0, 1.0).unwrap()
}

fn random_loop(dim: usize, n: usize, seed: u64, amp: f64) -> LoopState {
    let mut s = seed;
    let mut next = || {
        s = s
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        ((s >> 11) as f64 / (1u64 << 53) as f64) * 2.0 - 1.0
    };
    let mut u = LoopState::zeros(dim, n);
    for k in 0..=n {
        let decay = amp / (1.0 + (k * k) as f64);
        for l in 0..dim {
            u.coeffs[k][l] =
                Complex64::new(decay * next(), if k == 0 { 0.0 } else { decay * next() });
        }
    }
    u
}

/// BASIC_4D with a state-dependent structure `J = J0 + eps (Dg - Dg^T)`,
/// `alpha = J0 v / 2 + eps g(v)`, `g = (q1^2 p1, 0, 0, q2 p1^2)`.
fn field_system() -> HamiltonianSystem {
    let base = basic();
    let eps = 0.3;
    let j0 = canonical_structure(2);
    let j0c = j0.clone();
    let j = move |v: &[f64], _mu: f64| {
        let mut dg = Matrix::zeros(4, 4);
        dg[(0, 0)] = 2.0 * v[0] * v[2];
        dg[(0, 2)] = v[0] * v[0];
        dg[(3, 1)] = v[2] * v[2];
        dg[(3, 2)] = 2.0 * v[1] * v[2];
        let mut m = j0c.clone();
        for r in 0..4 {
            for c in 0..4 {
                m[(r, c)] += eps * (dg[(r, c)] - dg[(c, r)]);
            }
        }
        m
    };
    let alpha = move |v: &[f64], _mu: f64| {
        let mut out = vec![0.0; 4];
        j0.mul_vec(v, &mut out);
        out.iter_mut().for_each(|o| *o *= 0.5);
        out[0] += eps * v[0] * v[0] * v[2];
        out[3] += eps * v[1] * v[2] * v[2];
        out
    };
    let poly = PolynomialHamiltonian::new(
        4,
        vec![
            Monomial {
                exponents: vec![2, 0, 0, 0],
                coeff: 0.5,
                mu_degree: 0,
            },
            Monomial {
                exponents: vec![0, 0, 2, 0],
                coeff: 0.5,
                mu_degree: 0,
            },
            Monomial {
                exponents: vec![0, 2, 0, 0],
                coeff: 0.5,
                mu_degree: 0,
            },
            Monomial {
                exponents: vec![0, 0, 0, 2],
                coeff: 0.5,
                mu_degree: 0,
            },
            Monomial {
                exponents: vec![2, 0, 0, 0],
                coeff: 0.25,
                mu_degree: 1,
            },
            Monomial {
                exponents: vec![0, 0, 2, 0],
                coeff: 0.25,
                mu_degree: 1,
            },
            Monomial {
                exponents: vec![0, 2, 0, 0],
                coeff: -0.25,
                mu_degree: 1,
            },
            Monomial {
                exponents: vec![0, 0, 0, 2],
                coeff: -0.25,
                mu_degree: 1,
            },
            Monomial {
                exponents: vec![2, 2, 0, 0],
                coeff: 1.0,
                mu_degree: 0,
            },
        ],
    )
    .unwrap();
    HamiltonianSystem::new(
        "FIELD",
        Box::new(poly),
        Structure::Field {
            j: Box::new(j),
            alpha: Box::new(alpha),
        },
        base.reverser.clone(),
        1.0,
        base.e1.clone(),
        base.e2.clone(),
        None,
    )
    .unwrap()
}

fn variational_error(sys: &HamiltonianSystem, seed: u64) -> f64 {
    let g = Galerkin::new(sys, 6).unwrap();
    let d = sys.dim();
    let u = random_loop(d, 6, seed, 0.2);
    let v = random_loop(d, 6, seed ^ 0xabcdef, 1.0);
    let (mu1, mu2) = (0.07, -0.04);
    let lhs = g.residual(&u, mu1, mu2).inner(&v);
    let h = 1e-5;
    let rhs = (g.action(&u.add_scaled(h, &v), mu1, mu2)
        - g.action(&u.add_scaled(-h, &v), mu1, mu2))
        / (2.0 * h);
    (lhs - rhs).abs() / lhs.abs().max(1e-3)
}

#[test]
fn residual_vanishes_at_zero_and_on_eigen_loops() {
    let sys = make_test_system(TestSystemKind::Basic4d, 1.3, 0.0).unwrap();
    let g = Galerkin::new(&sys, 8).unwrap();
    let zero = LoopState::zeros(4, 8);
    assert_eq!(g.residual(&zero, 0.1, 0.2).max_abs(), 0.0);
    assert_eq!(g.action(&zero, 0.1, 0.2), 0.0);
    let mut u = LoopState::zeros(4, 8);
    for l in 0..4 {
        u.coeffs[1][l] = sys.e1[l] * 0.01;
    }
    assert!(g.residual(&u, 0.0, 0.0).max_abs() < 1e-16);
}

#[test]
fn variational_identity_constant_structure() {
    for (sys, seed) in [
        (basic(), 1),
        (translation(), 2),
        (
            make_test_system(TestSystemKind::Basic4dOpposite, 0.8, -2.0).unwrap(),
            3,
        ),
    ] {
        let e = variational_error(&sys, seed);
        assert!(e < 1e-6, "{}: relative error {e:e}", sys.name);
    }
}

#[test]
fn variational_identity_state_dependent_structure() {
    let sys = field_system();
    for seed in [4, 5, 6] {
        let e = variational_error(&sys, seed);
        assert!(e < 1e-6, "relative error {e:e}");
    }
}

#[test]
fn jacobian_matches_finite_differences() {
    for sys in [basic(), field_system()] {
        let g = Galerkin::new(&sys, 4).unwrap();
        let u = random_loop(4, 4, 11, 0.3);
        let x = u.to_real();
        let jac = g.jacobian(&u, 0.05, 0.02);
        let h = 1e-6;
        let mut worst: f64 = 0.0;
        for c in 0..x.len() {
            let mut xp = x.clone();
            let mut xm = x.clone();
            xp[c] += h;
            xm[c] -= h;
            let fp = g
                .residual(&LoopState::from_real(4, 4, &xp), 0.05, 0.02)
                .to_real();
            let fm = g
                .residual(&LoopState::from_real(4, 4, &xm), 0.05, 0.02)
                .to_real();
            for r in 0..x.len() {
                worst = worst.max(((fp[r] - fm[r]) / (2.0 * h) - jac[(r, c)]).abs());
            }
        }
        assert!(worst < 1e-7, "{}: {worst:e}", sys.name);
    }
}

#[test]
fn polynomial_derivatives_match_hyper_dual_defaults() {
    #[derive(Debug)]
    struct Plain(PolynomialHamiltonian);
    impl Hamiltonian for Plain {
        fn dim(&self) -> usize {
            self.0.dim
        }
        fn eval_hd(&self, x: &[HyperDual], mu1: HyperDual) -> HyperDual {
            self.0.eval_hd(x, mu1)
        }
    }
    let poly = PolynomialHamiltonian::new(
        3,
        vec![
            Monomial {
                exponents: vec![2, 1, 0],
                coeff: 1.5,
                mu_degree: 1,
            },
            Monomial {
                exponents: vec![0, 3, 1],
                coeff: -0.7,
                mu_degree: 0,
            },
            Monomial {
                exponents: vec![1, 0, 4],
                coeff: 0.2,
                mu_degree: 2,
            },
        ],
    )
    .unwrap();
    let plain = Plain(poly.clone());
    let x = [0.3, -0.8, 1.1];
    let mu = 0.4;
    assert!((poly.value(&x, mu) - plain.value(&x, mu)).abs() < 1e-14);
    let (mut ga, mut gb) = ([0.0; 3], [0.0; 3]);
    poly.gradient(&x, mu, &mut ga);
    plain.gradient(&x, mu, &mut gb);
    let (mut ha, mut hb) = (Matrix::zeros(3, 3), Matrix::zeros(3, 3));
    poly.hessian(&x, mu, &mut ha);
    plain.hessian(&x, mu, &mut hb);
    for i in 0..3 {
        assert!((ga[i] - gb[i]).abs() < 1e-13);
        for j in 0..3 {
            assert!((ha[(i, j)] - hb[(i, j)]).abs() < 1e-13);
        }
    }
    let (mut da, mut db) = (Matrix::zeros(3, 3), Matrix::zeros(3, 3));
    poly.hessian_mu1(&x, mu, &mut da);
    plain.hessian_mu1(&x, mu, &mut db);
    assert!(da
        .data
        .iter()
        .zip(&db.data)
        .all(|(a, b)| (a - b).abs() < 1e-7));
}

#[test]
fn action_invariant_under_translation_and_reversal() {
    for sys in [basic(), translation()] {
        let g = Galerkin::new(&sys, 8).unwrap();
        let u = random_loop(sys.dim(), 8, 21, 0.3);
        let s = g.action(&u, 0.03, 0.01);
        for theta in [0.3, 1.7, -2.2] {
            assert!((g.action(&u.translate(theta), 0.03, 0.01) - s).abs() < 1e-12);
        }
        assert!((g.action(&u.reverse(&sys.reverser), 0.03, 0.01) - s).abs() < 1e-12);
    }
}

#[test]
fn range_solution_properties() {
    let sys = translation();
    let g = Galerkin::new(&sys, 16).unwrap();
    let zero = KernelCoords::real_slice(0.0, 0.0, 0.0);
    let sol = g.solve_h(&zero, 0.01, 0.01, None).unwrap();
    assert_eq!(sol.u.max_abs(), 0.0);

    let kc = KernelCoords {
        a: Complex64::new(0.04, 0.01),
        b: Complex64::new(-0.02, 0.03),
        q: 0.0,
        p: 0.01,
    };
    let sol = g.solve_h(&kc, 0.002, -0.001, None).unwrap();
    assert!(sol.residual <= 1e-12);
    let h = g.h(&kc, 0.002, -0.001).unwrap();
    // h has no component along f1, f2 or e1, e2
    let ch = sys.zero_chain.as_ref().unwrap();
    for f in [&ch.f1, &ch.f2] {
        let c: f64 = h.coeffs[0]
            .iter()
            .zip(f.iter())
            .map(|(z, x)| z.re * x)
            .sum();
        assert!(c.abs() < 1e-15);
    }
    for e in [&sys.e1, &sys.e2] {
        let c: Complex64 = h.coeffs[1]
            .iter()
            .zip(e.iter())
            .map(|(z, x)| z * x.conj())
            .sum();
        assert!(c.norm() < 1e-15);
    }
    // h is tangent to the kernel at the origin: |h(delta u1)| = O(delta^2)
    let scaled = |t: f64| KernelCoords {
        a: kc.a * t,
        b: kc.b * t,
        q: 0.0,
        p: kc.p * t,
    };
    let n1 = g.h(&scaled(1e-2), 0.0, 0.0).unwrap().norm();
    let n2 = g.h(&scaled(1e-3), 0.0, 0.0).unwrap().norm();
    assert!(n2 / 1e-3 < 1e-5, "{n2:e}");
    assert!((n1 / n2).log10() > 1.9, "ratio {}", n1 / n2);
}

#[test]
fn no_zero_chain_means_full_mode_zero_complement() {
    let sys = basic();
    let g = Galerkin::new(&sys, 8).unwrap();
    assert_eq!(g.complement_dim(), 4 * 17 - 4);
    let t = translation();
    let g6 = Galerkin::new(&t, 8).unwrap();
    assert_eq!(g6.complement_dim(), 6 * 17 - 4 - 2);
}

#[test]
fn reduction_is_equivariant() {
    let sys = basic();
    let g = Galerkin::new(&sys, 16).unwrap();
    let kc = KernelCoords {
        a: Complex64::new(0.05, 0.02),
        b: Complex64::new(0.01, -0.04),
        q: 0.0,
        p: 0.0,
    };
    let (mu1, mu2) = (0.001, 0.002);
    let h = g.h(&kc, mu1, mu2).unwrap();
    let theta = 0.9;
    let w = Complex64::from_polar(1.0, theta);
    let ht = g
        .h(
            &KernelCoords {
                a: kc.a * w,
                b: kc.b * w,
                ..kc
            },
            mu1,
            mu2,
        )
        .unwrap();
    assert!(ht.add_scaled(-1.0, &h.translate(theta)).max_abs() < 1e-13);
    // T maps A e1 e^{i tau} + c.c. to conj(A) e1 e^{i tau} + c.c. since R e1 = conj(e1)
    let hr = g
        .h(
            &KernelCoords {
                a: kc.a.conj(),
                b: kc.b.conj(),
                ..kc
            },
            mu1,
            mu2,
        )
        .unwrap();
    assert!(hr.add_scaled(-1.0, &h.reverse(&sys.reverser)).max_abs() < 1e-13);
}

#[test]
fn reduced_action_symmetries() {
    let sys = basic();
    let g = Galerkin::new(&sys, 16).unwrap();
    assert_eq!(g.reduced_action_sq(0.0, 0.0, 0.0, 0.01, 0.02).unwrap(), 0.0);
    let (r1, r2, mu1, mu2) = (0.06, 0.04, 0.003, -0.002);
    let base = KernelCoords {
        a: r1 * C1,
        b: r2 * I,
        q: 0.0,
        p: 0.0,
    };
    let s0 = g.reduced_action(&base, mu1, mu2).unwrap();
    for theta in [0.4, 2.5, -1.3] {
        let w = Complex64::from_polar(1.0, theta);
        let s = g
            .reduced_action(
                &KernelCoords {
                    a: base.a * w,
                    b: base.b * w,
                    ..base
                },
                mu1,
                mu2,
            )
            .unwrap();
        assert!((s - s0).abs() < 1e-10);
    }
    // the real slice differs from (r1, i r2) only through Re((conj(A) B)^2), at order r1^2 r2^2
    let gap = |t: f64| {
        let a = g
            .reduced_action(&KernelCoords::real_slice(t * r1, t * r2, 0.0), mu1, mu2)
            .unwrap();
        let b = g
            .reduced_action(
                &KernelCoords {
                    a: t * r1 * C1,
                    b: t * r2 * I,
                    q: 0.0,
                    p: 0.0,
                },
                mu1,
                mu2,
            )
            .unwrap();
        (a - b) / (t * r1 * t * r2).powi(2)
    };
    let (g1, g2) = (gap(1.0), gap(0.5));
    assert!(
        g1.abs() > 0.1 && (g1 - g2).abs() < 1e-2 * g1.abs(),
        "{g1} {g2}"
    );

    let sys6 = translation();
    let g6 = Galerkin::new(&sys6, 16).unwrap();
    let kc = KernelCoords {
        a: 0.05 * C1,
        b: 0.03 * C1,
        q: 0.0,
        p: -0.02,
    };
    let a = g6.reduced_action(&kc, mu1, mu2).unwrap();
    let b = g6
        .reduced_action(&KernelCoords { q: 0.7, ..kc }, mu1, mu2)
        .unwrap();
    assert!((a - b).abs() < 1e-12, "{a} vs {b}");
}

#[test]
fn origin_has_zero_reduced_gradient() {
    let sys = translation();
    let g = Galerkin::new(&sys, 16).unwrap();
    let (grad, _) = g.reduced_gradient(0.0, 0.0, 0.0, 0.0, 0.0, None).unwrap();
    assert!(grad.iter().all(|x| x.abs() < 1e-15));
}

/// `d kappa_i / d mu1` from the linearization: eigenvalues of `L` near `i kappa`.
fn kappa_slope(sys: &HamiltonianSystem, e: &[Complex64]) -> f64 {
    // first-order perturbation: d(kappa) = Omega(dL e, conj e) / (i Omega(e, conj e))
    let dl = sys.linearization_mu1().unwrap();
    let j = sys.j0();
    let mut dle = vec![Complex64::new(0.0, 0.0); e.len()];
    dl.mul_cvec(e, &mut dle);
    let mut jdle = vec![Complex64::new(0.0, 0.0); e.len()];
    j.mul_cvec(&dle, &mut jdle);
    let ec: Vec<Complex64> = e.iter().map(|z| z.conj()).collect();
    let num: Complex64 = jdle.iter().zip(&ec).map(|(a, b)| a * b).sum();
    (num / (I * sys.omega(e, &ec))).re
}

#[test]
fn kappa_slopes_from_linearization() {
    for kind in [
        TestSystemKind::Basic4d,
        TestSystemKind::Basic4dOpposite,
        TestSystemKind::Translation6d,
    ] {
        let sys = make_test_system(kind, 1.0, 1.0).unwrap();
        let slopes = kind.kappa_slopes();
        assert!((kappa_slope(&sys, &sys.e1) - slopes[0]).abs() < 1e-9);
        assert!((kappa_slope(&sys, &sys.e2) - slopes[1]).abs() < 1e-9);
    }
}

#[test]
fn coefficient_identities_both_signatures() {
    for kind in [
        TestSystemKind::Basic4d,
        TestSystemKind::Basic4dOpposite,
        TestSystemKind::Translation6d,
    ] {
        let sys = make_test_system(kind, 1.0, 1.0).unwrap();
        let g = Galerkin::new(&sys, 16).unwrap();
        let c = g.extract_coefficients().unwrap();
        let (s1, s2) = (sys.signs[0] as f64, sys.signs[1] as f64);
        let [k1, k2] = kind.kappa_slopes();
        assert!((c.s200_01 + s1).abs() < 1e-4, "{kind:?} {c:?}");
        assert!((c.s020_01 + s2).abs() < 1e-4, "{kind:?} {c:?}");
        assert!((c.s200_10 - s1 * k1).abs() < 1e-4, "{kind:?} {c:?}");
        assert!((c.s020_10 - s2 * k2).abs() < 1e-4, "{kind:?} {c:?}");
        match kind {
            TestSystemKind::Translation6d => assert!((c.s002_00.unwrap() + 0.5).abs() < 1e-4),
            _ => assert!(c.s002_00.is_none() && c.s002_10.is_none()),
        }
    }
    let opp = make_test_system(TestSystemKind::Basic4dOpposite, 1.0, 1.0).unwrap();
    assert_eq!(opp.signs, [-1, 1]);
}

#[test]
fn solve_reduced_origin_and_residual() {
    let sys = translation();
    let g = Galerkin::new(&sys, 16).unwrap();
    let s = g.solve_reduced(0.0, 0.0).unwrap();
    assert_eq!((s.p, s.mu1, s.mu2), (0.0, 0.0, 0.0));
    let s = g.solve_reduced(0.0016, 0.0009).unwrap();
    assert!(s.residual <= 1e-10);
    let (grad, _) = g
        .reduced_gradient(0.04, 0.03, s.p, s.mu1, s.mu2, None)
        .unwrap();
    assert!(grad.iter().all(|x| x.abs() <= 1e-10), "{grad:?}");
    assert!((s.p + 0.0016).abs() < 1e-4, "p* = {}", s.p);
}

#[test]
fn solve_reduced_first_order_response() {
    let sys = basic();
    let g = Galerkin::new(&sys, 16).unwrap();
    let c = g.extract_coefficients().unwrap();
    // Hessian of s~ in (r1^2, r2^2) at mu = 0 by central differences
    let s = |x1: f64, x2: f64| g.reduced_action_sq(x1, x2, 0.0, 0.0, 0.0).unwrap();
    let second = |h: f64| {
        let c11 = (s(2.0 * h, 0.0) - 2.0 * s(h, 0.0)) / (h * h);
        let c22 = (s(0.0, 2.0 * h) - 2.0 * s(0.0, h)) / (h * h);
        let c12 = (s(h, h) - s(h, 0.0) - s(0.0, h)) / (h * h);
        [c11, c12, c22]
    };
    let (a1, a2) = (second(1e-3), second(5e-4));
    let [c11, c12, c22] = [0, 1, 2].map(|i| 2.0 * a2[i] - a1[i]);
    let m = [[c.s200_10, c.s200_01], [c.s020_10, c.s020_01]];
    let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    let inv = [
        [m[1][1] / det, -m[0][1] / det],
        [-m[1][0] / det, m[0][0] / det],
    ];
    let hess = [[c11, c12], [c12, c22]];
    let mut model = [[0.0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            model[i][j] = -(inv[i][0] * hess[0][j] + inv[i][1] * hess[1][j]);
        }
    }
    // implicit-function response by finite differences of the solver
    let d = 1e-5;
    let a = g.solve_reduced(d, 0.0).unwrap();
    let b = g.solve_reduced(0.0, d).unwrap();
    let fd = [[a.mu1 / d, b.mu1 / d], [a.mu2 / d, b.mu2 / d]];
    for i in 0..2 {
        for j in 0..2 {
            assert!((fd[i][j] - model[i][j]).abs() < 1e-3, "{fd:?} vs {model:?}");
        }
    }
    // closed form for the builtin coupling: mu1 = 3/2 (x1 - x2), mu2 = 3/4 (x1 + x2)
    let exact = [[1.5, -1.5], [0.75, 0.75]];
    for i in 0..2 {
        for j in 0..2 {
            assert!((fd[i][j] - exact[i][j]).abs() < 1e-3, "{fd:?}");
        }
    }
}

#[test]
fn degenerate_collision_is_rejected() {
    let sys = make_test_system(TestSystemKind::Basic4d, 1.0, 1.0).unwrap();
    // same system with both frequencies moving together: d(kappa1 - kappa2) = 0
    let mut ms = Vec::new();
    for (e, c, m) in [
        ([2, 0, 0, 0], 0.5, 0),
        ([0, 0, 2, 0], 0.5, 0),
        ([0, 2, 0, 0], 0.5, 0),
        ([0, 0, 0, 2], 0.5, 0),
        ([2, 2, 0, 0], 1.0, 0),
    ] {
        ms.push(Monomial {
            exponents: e.to_vec(),
            coeff: c,
            mu_degree: m,
        });
    }
    let flat = HamiltonianSystem::new(
        "FLAT",
        Box::new(PolynomialHamiltonian::new(4, ms).unwrap()),
        Structure::Constant(canonical_structure(2)),
        sys.reverser.clone(),
        1.0,
        sys.e1.clone(),
        sys.e2.clone(),
        None,
    )
    .unwrap();
    let g = Galerkin::new(&flat, 8).unwrap();
    assert!(matches!(
        g.solve_reduced(1e-4, 1e-4),
        Err(icewave_core::Error::Degenerate(_))
    ));
}

#[test]
fn branch_points_are_reversible_and_verified() {
    let sys = basic();
    let g = Galerkin::new(&sys, 16).unwrap();
    let branch = assemble_branch(&g, 0.1, 4).unwrap();
    assert_eq!(branch.points.len(), 16);
    assert_eq!(branch.converged(), 16);
    let origin = branch.points[0].outcome.as_ref().unwrap();
    assert_eq!(origin.u.max_abs(), 0.0);
    let v = verify_orbit(&sys, origin).unwrap();
    assert_eq!(
        (v.closure_residual, v.energy_drift, v.oracle_error),
        (0.0, 0.0, 0.0)
    );
    for p in &branch.points {
        let o = p.outcome.as_ref().unwrap();
        assert!(o.reversibility_residual <= 1e-10);
        if p.i == p.j {
            assert!(o.mu1.abs() < 1e-12, "diagonal mu1 = {}", o.mu1);
        }
    }
    let p = branch.points.iter().find(|p| p.i == 2 && p.j == 2).unwrap();
    assert!((p.t1 - 0.05).abs() < 1e-15);
    let v = verify_orbit(&sys, p.outcome.as_ref().unwrap()).unwrap();
    assert!(v.closure_residual <= 1e-7, "{v:?}");
    assert!(v.energy_drift <= 1e-9, "{v:?}");
    assert!(v.oracle_error <= 1e-6, "{v:?}");
}

#[test]
fn zero_width_grid_is_a_single_point() {
    let sys = basic();
    let g = Galerkin::new(&sys, 8).unwrap();
    let b = assemble_branch(&g, 0.0, 8).unwrap();
    assert_eq!(b.points.len(), 1);
    assert_eq!(b.points[0].outcome.as_ref().unwrap().mu2, 0.0);
}

#[test]
fn spectral_convergence_in_truncation() {
    let sys = basic();
    let g16 = Galerkin::new(&sys, 16).unwrap();
    let g32 = Galerkin::new(&sys, 32).unwrap();
    let a = g16.solve_reduced(0.0025, 0.0016).unwrap();
    let b = g32.solve_reduced(0.0025, 0.0016).unwrap();
    assert!(b.u.add_scaled(-1.0, &a.u.resized(32)).max_abs() <= 1e-9);
    assert!((a.mu1 - b.mu1).abs() <= 1e-9 && (a.mu2 - b.mu2).abs() <= 1e-9);
}

#[test]
fn test_system_structure() {
    let sys = make_test_system(TestSystemKind::Basic4d, 1.0, 0.5).unwrap();
    let l = sys.linearization(0.2).unwrap();
    // (q1, p1) block rotates with frequency 1.1, (q2, p2) with 0.9
    for (q, p, w) in [(0, 2, 1.1), (1, 3, 0.9)] {
        let mut e = vec![Complex64::new(0.0, 0.0); 4];
        e[q] = C1;
        e[p] = I;
        let mut le = vec![Complex64::new(0.0, 0.0); 4];
        l.mul_cvec(&e, &mut le);
        for k in 0..4 {
            assert!((le[k] - I * w * e[k]).norm() < 1e-12);
        }
    }
    for kind in [
        TestSystemKind::Basic4d,
        TestSystemKind::Basic4dOpposite,
        TestSystemKind::Translation6d,
    ] {
        let sys = make_test_system(kind, 0.7, 2.0).unwrap();
        let rep = sys.check_hypotheses().unwrap();
        assert!(rep.holds(1e-10), "{kind:?} {rep:?}");
        assert_eq!(TestSystemKind::parse(kind.name()), Some(kind));
    }
    let t = translation();
    for seed in 0..20u64 {
        let mut v = random_loop(6, 0, seed, 1.0).eval(0.0);
        let h0 = t.hamiltonian.value(&v, 0.1);
        v[2] += 3.7;
        assert_eq!(t.hamiltonian.value(&v, 0.1), h0);
    }
}

#[test]
fn invalid_systems_are_rejected() {
    let sys = basic();
    let e = sys.e1.clone();
    let bad = HamiltonianSystem::new(
        "BAD",
        Box::new(PolynomialHamiltonian::new(4, vec![]).unwrap()),
        Structure::Constant(canonical_structure(2)),
        sys.reverser.clone(),
        -1.0,
        e.clone(),
        e,
        None,
    );
    assert!(bad.is_err());
    assert!(PolynomialHamiltonian::new(
        2,
        vec![Monomial {
            exponents: vec![1],
            coeff: 1.0,
            mu_degree: 0
        }]
    )
    .is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn action_translation_invariance(seed in any::<u64>(), theta in -3.0f64..3.0, mu1 in -0.1f64..0.1, mu2 in -0.1f64..0.1) {
        let sys = basic();
        let g = Galerkin::new(&sys, 5).unwrap();
        let u = random_loop(4, 5, seed, 0.4);
        let s = g.action(&u, mu1, mu2);
        prop_assert!((g.action(&u.translate(theta), mu1, mu2) - s).abs() < 1e-12);
        prop_assert!((g.action(&u.reverse(&sys.reverser), mu1, mu2) - s).abs() < 1e-12);
    }

    #[test]
    fn variational_identity_random(seed in any::<u64>()) {
        prop_assert!(variational_error(&basic(), seed) < 1e-6);
    }

    #[test]
    fn loop_inner_product_is_parseval(seed in any::<u64>()) {
        let u = random_loop(2, 4, seed, 1.0);
        let v = random_loop(2, 4, seed.rotate_left(7), 1.0);
        let m = 400;
        let mean: f64 = (0..m)
            .map(|j| {
                let t = 2.0 * std::f64::consts::PI * j as f64 / m as f64;
                u.eval(t).iter().zip(v.eval(t)).map(|(a, b)| a * b).sum::<f64>()
            })
            .sum::<f64>()
            / m as f64;
        prop_assert!((mean - u.inner(&v)).abs() < 1e-12);
    }
}
