mod common;

use common::comfortably_stable;
use nalgebra::Matrix2;
use proptest::prelude::*;
use twomode::cli::config::{CriticalConfig, EvolutionConfig, OptimizeConfig};
use twomode::cli::format::num;
use twomode::cli::{parse_config, serialize_config, RunConfig};
use twomode::control::{CouplingBox, OptimizeOptions, SweepAxis, SweepParam};
use twomode::gaussian::{
    covariance_by_propagation, covariance_from_wigner, initial_covariance, wigner_coefficients,
    CovarianceState, InitialState,
};
use twomode::metrics::log_negativity;
use twomode::model::{symplectic_matrix, Evolver, ModelParams};
use twomode::numerics::linalg::{
    inverse_with_condition, max_abs_c, max_abs_r, symplectic_form, RMatrix4, C64,
};
use twomode::numerics::{drift_matrix, matrix_exponential};

fn stable_params() -> impl Strategy<Value = ModelParams> {
    (0.5f64..2.5, 0.5f64..2.5, 0.0f64..1.0, 0.0f64..1.0)
        .prop_map(|(a, b, c, d)| ModelParams::new(a, b, c, d).unwrap())
        .prop_filter("stable", comfortably_stable)
}

fn initial_state() -> impl Strategy<Value = InitialState> {
    (
        -2.0f64..2.0,
        -2.0f64..2.0,
        -2.0f64..2.0,
        -2.0f64..2.0,
        0.0f64..3.0,
        0.0f64..3.0,
    )
        .prop_map(|(a, b, c, d, n1, n2)| {
            InitialState::new(C64::new(a, b), C64::new(c, d), n1, n2).unwrap()
        })
}

fn covariance(p: &ModelParams, s: &InitialState, t: f64) -> CovarianceState {
    let c = Evolver::new(p).unwrap().at(t).unwrap();
    covariance_from_wigner(&wigner_coefficients(&c, s)).unwrap()
}

fn rotation(theta: f64) -> Matrix2<f64> {
    let (s, c) = theta.sin_cos();
    Matrix2::new(c, -s, s, c)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn sum_rule_holds(p in stable_params(), t in 0.0f64..50.0) {
        let c = Evolver::new(&p).unwrap().at(t).unwrap();
        for s in c.sum_rule() {
            prop_assert!((s - 1.0).abs() <= 1e-10);
        }
    }

    #[test]
    fn propagator_group_property(p in stable_params(), t1 in 0.0f64..25.0, t2 in 0.0f64..25.0) {
        let ev = Evolver::new(&p).unwrap();
        let composed = ev.at(t1).unwrap().compose(&ev.at(t2).unwrap());
        let direct = ev.at(t1 + t2).unwrap();
        prop_assert!(max_abs_c(&(composed.to_matrix() - direct.to_matrix())) <= 1e-10);
        let s = symplectic_matrix(&ev.at(t1).unwrap()) * symplectic_matrix(&ev.at(t2).unwrap());
        prop_assert!(max_abs_r(&(s - symplectic_matrix(&direct))) <= 1e-10);
    }

    #[test]
    fn quadrature_map_is_symplectic(p in stable_params(), t in 0.0f64..50.0) {
        let s = symplectic_matrix(&Evolver::new(&p).unwrap().at(t).unwrap());
        let j = symplectic_form();
        prop_assert!(max_abs_r(&(s * j * s.transpose() - j)) <= 1e-10);
        prop_assert!((s.determinant() - 1.0).abs() <= 1e-10);
    }

    #[test]
    fn routes_agree(p in stable_params(), s in initial_state(), t in 0.0f64..20.0) {
        let c = Evolver::new(&p).unwrap().at(t).unwrap();
        let a = covariance_from_wigner(&wigner_coefficients(&c, &s)).unwrap();
        let b = covariance_by_propagation(&symplectic_matrix(&c), &initial_covariance(&s)).unwrap();
        // Inverting V⁻¹ cannot beat the perturbation bound ε·κ(V)·‖V‖, which
        // exceeds 1e-10 for strongly squeezed states.
        let (_, cond) = inverse_with_condition(&b.v).unwrap();
        let scale = max_abs_r(&b.v).max(1.0);
        let tol = f64::max(1e-10, 64.0 * f64::EPSILON * cond * scale);
        prop_assert!(max_abs_r(&(a.v - b.v)) <= tol);
        prop_assert!((a.mean - b.mean).amax() <= tol);
    }

    #[test]
    fn determinant_is_conserved(p in stable_params(), s in initial_state(), t in 0.0f64..50.0) {
        let [n1, n2] = s.widths();
        let det = covariance(&p, &s, t).v.determinant();
        prop_assert!((det / (n1 * n1 * n2 * n2) - 1.0).abs() <= 1e-10);
    }

    #[test]
    fn evolved_states_are_physical(p in stable_params(), s in initial_state(), t in 0.0f64..50.0) {
        let cov = covariance(&p, &s, t);
        prop_assert!(cov.symmetry_residual() <= 1e-12);
        prop_assert!(cov.uncertainty_floor() >= -1e-10);
        prop_assert!(cov.v.determinant() >= 1.0 / 16.0 - 1e-10);
    }

    #[test]
    fn entanglement_ignores_displacement(p in stable_params(), s in initial_state(), t in 0.0f64..50.0) {
        let [n1, n2] = s.occupation();
        let plain = InitialState::thermal(n1, n2).unwrap();
        let e0 = log_negativity(&covariance(&p, &plain, t)).unwrap().e_raw;
        let e1 = log_negativity(&covariance(&p, &s, t)).unwrap().e_raw;
        prop_assert_eq!(e0.to_bits(), e1.to_bits());
    }

    #[test]
    fn local_rotations_leave_entanglement(p in stable_params(), s in initial_state(), t in 0.0f64..20.0,
                                          th1 in 0.0f64..6.3, th2 in 0.0f64..6.3) {
        let cov = covariance(&p, &s, t);
        let mut r = RMatrix4::zeros();
        r.fixed_view_mut::<2, 2>(0, 0).copy_from(&rotation(th1));
        r.fixed_view_mut::<2, 2>(2, 2).copy_from(&rotation(th2));
        let rotated = CovarianceState { v: r * cov.v * r.transpose(), mean: r * cov.mean };
        let e0 = log_negativity(&cov).unwrap().e_raw;
        let e1 = log_negativity(&rotated).unwrap().e_raw;
        prop_assert!((e0 - e1).abs() <= 1e-10);
    }

    #[test]
    fn product_states_start_separable(p in stable_params(), s in initial_state()) {
        prop_assert!(log_negativity(&covariance(&p, &s, 0.0)).unwrap().separable);
    }

    #[test]
    fn exponential_is_additive(p in stable_params(), t1 in 0.0f64..10.0, t2 in 0.0f64..10.0) {
        let k = *drift_matrix(&p).matrix();
        let lhs = matrix_exponential(&k, t1 + t2).unwrap();
        let rhs = matrix_exponential(&k, t1).unwrap() * matrix_exponential(&k, t2).unwrap();
        prop_assert!(max_abs_c(&(lhs - rhs)) <= 1e-10);
    }

    #[test]
    fn twelve_digit_output_round_trips(x in -1e6f64..1e6, e in -20i32..20) {
        let v = x * 10f64.powi(e);
        let back: f64 = num(v).parse().unwrap();
        prop_assert!((back - v).abs() <= 5e-12 * v.abs());
    }
}

fn run_config() -> impl Strategy<Value = RunConfig> {
    (
        stable_params(),
        initial_state(),
        (1.0f64..100.0, 0.001f64..0.5),
        proptest::option::of(1e-6f64..1e-1),
        proptest::option::of(proptest::collection::vec(-1.0f64..3.0, 1..6)),
        proptest::option::of((0.0f64..1.0, 0.0f64..1.0, 2usize..30)),
    )
        .prop_map(
            |(model, initial, (t_max, dt), tol, values, opt)| RunConfig {
                model,
                initial,
                evolution: EvolutionConfig { t_max, dt },
                critical: tol.map(|tol| CriticalConfig { tol }),
                sweep: values.map(|v| {
                    vec![
                        SweepAxis {
                            param: SweepParam::N,
                            values: v.iter().map(|x| x.abs()).collect(),
                        },
                        SweepAxis {
                            param: SweepParam::G2,
                            values: v,
                        },
                    ]
                }),
                optimize: opt.map(|(a, b, grid)| OptimizeConfig {
                    bounds: CouplingBox {
                        g1: (0.0, a),
                        g2: (b, b + 0.5),
                    },
                    options: OptimizeOptions {
                        grid_points: grid,
                        min_step: 1e-3,
                    },
                }),
            },
        )
}

proptest! {
    #[test]
    fn config_round_trip(c in run_config()) {
        let text = serialize_config(&c);
        prop_assert_eq!(parse_config(&text).unwrap(), c);
    }
}
