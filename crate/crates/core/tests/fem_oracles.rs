use std::f64::consts::FRAC_PI_2;

use layermesh_core::fem::{
    apply_dirichlet, assemble, assembly_quadrature, energy_error, error_quadrature, galerkin_solve,
    gauss_rule, ReferenceElement, MAX_GAUSS_POINTS,
};
use layermesh_core::{paper_problem, CoefficientProblem, ExactSolution, MeshFamily, MeshParams, TwoPointBvp};
use proptest::prelude::*;

/// Closed forms of u, u', u'' for the benchmark, written independently of the library.
struct Oracle {
    eps: f64,
}

impl Oracle {
    fn parts(&self, x: f64) -> (f64, f64, f64) {
        let e = self.eps;
        let d = 1.0 - (-1.0 / e).exp();
        let layer = (-x / e).exp();
        let g = (layer - (-1.0 / e).exp()) / d;
        let u = (FRAC_PI_2 * x).cos() - g;
        let du = -FRAC_PI_2 * (FRAC_PI_2 * x).sin() + layer / (e * d);
        let ddu = -FRAC_PI_2 * FRAC_PI_2 * (FRAC_PI_2 * x).cos() - layer / (e * e * d);
        (u, du, ddu)
    }
}

fn lcg(seed: &mut u64) -> f64 {
    *seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
    (*seed >> 11) as f64 / (1u64 << 53) as f64
}

#[test]
fn manufactured_rhs_residual() {
    for eps in [1e-2, 1e-6] {
        let problem = paper_problem(eps).unwrap();
        let oracle = Oracle { eps };
        let mut seed = 7u64;
        for k in 0..100 {
            // cluster half of the points inside the layer
            let r = lcg(&mut seed);
            let x = if k % 2 == 0 { r * 20.0 * eps } else { r };
            let (u, du, ddu) = oracle.parts(x);
            let f = problem.rhs(x);
            let terms = [eps * ddu, du, u, f];
            let scale = terms.iter().fold(0.0f64, |m, t| m.max(t.abs()));
            let residual = -eps * ddu - du + u - f;
            assert!(residual.abs() <= 1e-8 * scale, "eps={eps} x={x} res={residual}");
            assert!((problem.value(x) - u).abs() <= 1e-12 * scale);
            assert!((problem.derivative(x) - du).abs() <= 1e-12 * scale.max(du.abs()));
        }
    }
}

#[test]
fn manufactured_rhs_finite_differences() {
    let eps = 1e-2;
    let p = paper_problem(eps).unwrap();
    let h = 1e-4;
    for k in 1..50 {
        let x = k as f64 / 50.0;
        let (um, u0, up) = (p.value(x - h), p.value(x), p.value(x + h));
        let ddu = (up - 2.0 * u0 + um) / (h * h);
        let du = (up - um) / (2.0 * h);
        let res = -eps * ddu - du + u0 - p.rhs(x);
        let scale = (eps * ddu).abs().max(du.abs()).max(1.0);
        assert!(res.abs() <= 1e-4 * scale, "x={x} res={res}");
    }
}

#[test]
fn benchmark_values_finite_and_layer_local() {
    for eps in [1e-12, 1e-9, 1e-6, 1e-3, 1e-1, 1.0] {
        let p = paper_problem(eps).unwrap();
        for k in 0..=1000 {
            let x = k as f64 / 1000.0;
            for x in [x, x * 1e-6] {
                assert!(p.value(x).is_finite() && p.derivative(x).is_finite() && p.rhs(x).is_finite());
            }
        }
    }
    let eps = 1e-6;
    let p = paper_problem(eps).unwrap();
    for k in 0..=1000 {
        let x = 50.0 * eps + (1.0 - 50.0 * eps) * k as f64 / 1000.0;
        assert!((p.value(x) - (FRAC_PI_2 * x).cos()).abs() <= 1e-10);
    }
}

#[test]
fn gauss_exactness_up_to_degree_2n_minus_1() {
    for n in 1..=MAX_GAUSS_POINTS {
        let rule = gauss_rule(n).unwrap();
        for k in 0..2 * n {
            let exact = if k % 2 == 1 { 0.0 } else { 2.0 / (k as f64 + 1.0) };
            let v = rule.integrate(|x| x.powi(k as i32));
            assert!((v - exact).abs() <= 1e-13, "n={n} k={k}: {v} vs {exact}");
        }
        assert!((rule.weights.iter().sum::<f64>() - 2.0).abs() <= 1e-14);
    }
}

proptest! {
    #[test]
    fn partition_of_unity(p in 1usize..=6, t in -1.0f64..=1.0) {
        let e = ReferenceElement::new(p).unwrap();
        let (v, d) = e.shape_functions(t);
        prop_assert!((v.iter().sum::<f64>() - 1.0).abs() < 1e-13);
        prop_assert!(d.iter().sum::<f64>().abs() < 1e-11);
    }

    /// Polynomials of degree <= p are reproduced exactly by the Galerkin method.
    #[test]
    fn galerkin_exactness_on_random_meshes(
        p in 1usize..=3,
        coeffs in prop::collection::vec(-2.0f64..2.0, 4),
        cuts in prop::collection::vec(0.001f64..1.0, 3..40),
        log_eps in -6.0f64..0.0,
    ) {
        let mut nodes: Vec<f64> = cuts.into_iter().filter(|&x| x < 1.0 - 1e-4).collect();
        nodes.push(0.0);
        nodes.sort_by(f64::total_cmp);
        nodes.dedup_by(|a, b| (*a - *b).abs() < 1e-4);
        nodes.push(1.0);
        let eps = 10f64.powf(log_eps);
        let a: Vec<f64> = coeffs[..=p].to_vec();
        let u = |x: f64| a.iter().rev().fold(0.0, |acc, c| acc * x + c);
        let du = |x: f64| (1..a.len()).map(|k| k as f64 * a[k] * x.powi(k as i32 - 1)).sum::<f64>();
        let ddu = |x: f64| (2..a.len()).map(|k| (k * (k - 1)) as f64 * a[k] * x.powi(k as i32 - 2)).sum::<f64>();
        let problem = CoefficientProblem {
            epsilon: eps,
            convection: |_| 1.0,
            reaction: |_| 1.0,
            rhs: |x| -eps * ddu(x) - du(x) + u(x),
            boundary: (u(0.0), u(1.0)),
        };
        struct Exact<F, G>(F, G);
        impl<F: Fn(f64) -> f64, G: Fn(f64) -> f64> ExactSolution for Exact<F, G> {
            fn value(&self, x: f64) -> f64 { (self.0)(x) }
            fn derivative(&self, x: f64) -> f64 { (self.1)(x) }
        }
        let out = galerkin_solve(&problem, &nodes, p).unwrap();
        let err = energy_error(&out.solution, &Exact(u, du), eps, error_quadrature(p)).unwrap();
        prop_assert!(err.total() <= 1e-10, "error {}", err.total());
    }
}

#[test]
fn galerkin_exactness_parabola_p2() {
    let eps = 1.0;
    let problem = CoefficientProblem {
        epsilon: eps,
        convection: |_| 1.0,
        reaction: |_| 1.0,
        rhs: |x: f64| 2.0 * eps - (1.0 - 2.0 * x) + x * (1.0 - x),
        boundary: (0.0, 0.0),
    };
    struct P;
    impl ExactSolution for P {
        fn value(&self, x: f64) -> f64 { x * (1.0 - x) }
        fn derivative(&self, x: f64) -> f64 { 1.0 - 2.0 * x }
    }
    let nodes = [0.0, 0.05, 0.3, 0.31, 0.7, 1.0];
    let out = galerkin_solve(&problem, &nodes, 2).unwrap();
    assert!(energy_error(&out.solution, &P, eps, 6).unwrap().total() <= 1e-10);
}

#[test]
fn convection_matrix_matches_analytic_integrals() {
    // -int phi_j' phi_i over [a, a+h] for linear elements: row i = [1/2, -1/2]
    let conv = CoefficientProblem { epsilon: 0.0, convection: |_| 1.0, reaction: |_| 0.0, rhs: |_| 0.0, boundary: (0.0, 0.0) };
    for q in [2, 3, 5] {
        let sys = assemble(&conv, &[0.3, 0.7], 1, q).unwrap();
        let m = &sys.matrix;
        let expected = [[0.5, -0.5], [0.5, -0.5]];
        for (i, row) in expected.iter().enumerate() {
            for (j, &e) in row.iter().enumerate() {
                assert!((m.get(i, j) - e).abs() <= 1e-14);
            }
        }
    }
}

fn benchmark_mesh(family: MeshFamily, p: usize, n: usize) -> Vec<f64> {
    let params = MeshParams::new(1e-6, p as f64 + 1.0, 1.0, n).unwrap();
    family.build(&params).unwrap().nodes
}

#[test]
fn solver_residual_and_symmetric_part_positive() {
    let problem = paper_problem(1e-6).unwrap();
    for p in 1..=3 {
        for family in MeshFamily::ALL {
            let nodes = benchmark_mesh(family, p, 64);
            let mut sys = assemble(&problem, &nodes, p, assembly_quadrature(p)).unwrap();
            apply_dirichlet(&mut sys, (0.0, 0.0));
            // coercive on the constrained space: the convection term only has a boundary symmetric part
            let sym = sys.matrix.symmetric_part();
            assert!(sym.elimination_pivots().iter().all(|&v| v > 0.0), "{family} p={p}");
            let x = layermesh_core::fem::solve_banded(&sys).unwrap();
            assert!(sys.relative_residual(&x) <= 1e-10);
            assert_eq!(x[0], 0.0);
            assert_eq!(*x.last().unwrap(), 0.0);
        }
    }
}

#[test]
fn bs_p1_n64_matches_reference() {
    let problem = paper_problem(1e-6).unwrap();
    let out = galerkin_solve(&problem, &benchmark_mesh(MeshFamily::Bs, 1, 64), 1).unwrap();
    let e = energy_error(&out.solution, &problem, 1e-6, error_quadrature(1)).unwrap();
    assert!((e.total() - 1.776e-2).abs() / 1.776e-2 <= 0.02, "{}", e.total());
    assert!(out.residual <= 1e-10);
}

#[test]
fn error_quadrature_is_resolved() {
    let problem = paper_problem(1e-6).unwrap();
    let out = galerkin_solve(&problem, &benchmark_mesh(MeshFamily::Bs, 1, 64), 1).unwrap();
    let e1 = energy_error(&out.solution, &problem, 1e-6, error_quadrature(1)).unwrap().total();
    let e2 = energy_error(&out.solution, &problem, 1e-6, 2 * error_quadrature(1)).unwrap().total();
    assert!((e1 - e2).abs() / e2 < 1e-3);
}

#[test]
fn errors_decrease_under_refinement_on_bs() {
    let problem = paper_problem(1e-6).unwrap();
    for p in 1..=3 {
        let errs: Vec<f64> = [64, 128, 256, 512]
            .iter()
            .map(|&n| {
                let out = galerkin_solve(&problem, &benchmark_mesh(MeshFamily::Bs, p, n), p).unwrap();
                energy_error(&out.solution, &problem, 1e-6, error_quadrature(p)).unwrap().total()
            })
            .collect();
        assert!(errs.windows(2).all(|w| w[1] < w[0]), "p={p}: {errs:?}");
    }
}
