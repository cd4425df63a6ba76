use num_complex::Complex64;
use proptest::prelude::*;
use salpeter_core::covariance::{boost_momentum, compose_boosts, constraint_report};
use salpeter_core::dirac::{lift, negative_energy_fraction};
use salpeter_core::kernels::{current, density, kernel_value};
use salpeter_core::salpeter::{apply_hamiltonian, energy, evolve_free};
use salpeter_core::thresholds::CONSTRAINT_RESIDUAL_MAX;
use salpeter_core::{Boost, Grid1D, KernelKind, WaveFunction};

const N: usize = 64;

fn grid() -> Grid1D {
    Grid1D::new(-6.0, 6.0, N).unwrap()
}

fn state() -> impl Strategy<Value = WaveFunction> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), N).prop_map(|v| {
        let values = v.into_iter().map(|(re, im)| Complex64::new(re, im)).collect();
        WaveFunction::new(grid(), values).unwrap()
    })
}

fn kernel() -> impl Strategy<Value = KernelKind> {
    prop_oneof![Just(KernelKind::Born), Just(KernelKind::Scalar), Just(KernelKind::SpinHalf)]
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn parseval(psi in state()) {
        prop_assert!(rel(psi.to_momentum().norm_sqr(), psi.norm_sqr()) < 1e-12);
    }

    #[test]
    fn transform_round_trip(psi in state()) {
        prop_assert!(psi.to_momentum().to_position().sup_distance(&psi).unwrap() < 1e-13);
    }

    #[test]
    fn evolution_is_unitary(psi in state(), t in -20.0f64..20.0) {
        prop_assert!(rel(evolve_free(&psi, t).norm_sqr(), psi.norm_sqr()) < 1e-12);
    }

    #[test]
    fn evolution_group_property(psi in state(), t1 in -5.0f64..5.0, t2 in -5.0f64..5.0) {
        let stepwise = evolve_free(&evolve_free(&psi, t1), t2);
        prop_assert!(stepwise.sup_distance(&evolve_free(&psi, t1 + t2)).unwrap() < 1e-12);
    }

    #[test]
    fn hamiltonian_is_self_adjoint(a in state(), b in state()) {
        let lhs = a.inner(&apply_hamiltonian(&b)).unwrap();
        let rhs = apply_hamiltonian(&a).inner(&b).unwrap();
        prop_assert!((lhs - rhs).norm() < 1e-11 * lhs.norm().max(1.0));
    }

    #[test]
    fn kernels_are_symmetric(kind in kernel(), p1 in -3.0f64..3.0, p2 in -3.0f64..3.0) {
        prop_assert_eq!(kernel_value(kind, p1, p2).unwrap(), kernel_value(kind, p2, p1).unwrap());
    }

    #[test]
    fn densities_ignore_global_phase(psi in state(), kind in kernel(), phase in -3.2f64..3.2) {
        let rotated = psi.scaled(Complex64::from_polar(1.0, phase));
        let rho = density(&psi, kind).unwrap();
        let j = current(&psi, kind).unwrap();
        let scale = rho.sup_norm().max(1.0);
        prop_assert!(density(&rotated, kind).unwrap().sup_distance(&rho).unwrap() < 1e-12 * scale);
        prop_assert!(current(&rotated, kind).unwrap().sup_distance(&j).unwrap() < 1e-12 * scale);
    }

    #[test]
    fn boost_chains_stay_on_shell(p in -3.0f64..3.0, vs in prop::collection::vec(-0.9f64..0.9, 1..6)) {
        let mut q = p;
        let mut total = Boost::identity();
        for v in vs {
            let b = Boost::new(v).unwrap();
            q = boost_momentum(q, b);
            total = compose_boosts(total, b);
            // E² − p² = 1 for the boosted (E, p) pair
            let (e, k) = total.vector(energy(p), p);
            prop_assert!(rel(e * e - k * k, 1.0) < 1e-10);
            prop_assert!(rel(k, q) < 1e-10);
        }
    }

    #[test]
    fn lift_has_no_negative_energy(psi in state()) {
        prop_assert!(negative_energy_fraction(&lift(&psi)) < 1e-12);
    }
}

/// Constraint equation on a 20×20 momentum grid for five velocities.
#[test]
fn constraint_sample_for_regular_kernels() {
    let momenta: Vec<f64> = (0..20).map(|k| -2.0 + 4.0 * k as f64 / 19.0).collect();
    let mut worst: f64 = 0.0;
    for v in [-0.9, -0.4, 0.0, 0.5, 0.9] {
        let b = Boost::new(v).unwrap();
        for &pi in &momenta {
            for &pj in &momenta {
                if pi == pj {
                    continue;
                }
                for kind in [KernelKind::Scalar, KernelKind::SpinHalf] {
                    worst = worst.max(constraint_report(kind, pi, pj, b).unwrap().residual);
                }
            }
        }
    }
    assert!(worst < CONSTRAINT_RESIDUAL_MAX, "worst {worst:e}");
}
