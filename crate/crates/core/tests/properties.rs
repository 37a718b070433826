//! Randomised invariants of the operator algebra, the dynamics and the runners.

mod common;

use common::*;
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64 as C;
use proptest::prelude::*;
use spinlock_qa::dynamics::{
    evolve, expm_hermitian, fidelity, ground_space, hermitian_eigen, propagate, Method,
    PropagationSettings, QuantumState,
};
use spinlock_qa::experiments::{
    fidelity_csv, prepare_run, preset_fig3, run_fidelity_curve, ExperimentConfig, Frame,
};
use spinlock_qa::hamiltonians::{
    map_xxz_exact, schedule_linear, xxz_hamiltonian, LabFrameModel, ScheduleDirection, XxzParams,
};
use spinlock_qa::operators::{
    rotation_unitary, square_lattice, swap_product, Axis, OperatorSum, PauliTerm,
};
use spinlock_qa::symmetry::sector_expectation;

const AXES: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];

fn pauli_string() -> impl Strategy<Value = Vec<(usize, Axis)>> {
    proptest::collection::btree_map(0usize..3, 0usize..3, 0..=3)
        .prop_map(|m| m.into_iter().map(|(site, a)| (site, AXES[a])).collect())
}

fn operator_sum() -> impl Strategy<Value = OperatorSum> {
    proptest::collection::vec((pauli_string(), -2.0f64..2.0, -2.0f64..2.0), 1..5).prop_map(
        |terms| {
            OperatorSum::from_terms(
                3,
                terms
                    .into_iter()
                    .map(|(f, re, im)| PauliTerm::new(C::new(re, im), f).unwrap()),
            )
            .unwrap()
        },
    )
}

fn state(dim: usize) -> impl Strategy<Value = QuantumState> {
    proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), dim).prop_filter_map(
        "zero vector",
        |v| {
            QuantumState::normalized(DVector::from_iterator(
                v.len(),
                v.into_iter().map(|(a, b)| C::new(a, b)),
            ))
            .ok()
        },
    )
}

/// A random unitary `exp(−iK)`.
fn unitary(dim: usize, seed: u64) -> DMatrix<C> {
    expm_hermitian(&to_nalgebra(&random_hermitian(dim, seed)), 1.0).unwrap()
}

fn disjoint_pairs(n: usize) -> impl Strategy<Value = Vec<(usize, usize)>> {
    Just((0..n).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_flat_map(move |perm| (Just(perm), 0..=n / 2))
        .prop_map(|(perm, k)| (0..k).map(|i| (perm[2 * i], perm[2 * i + 1])).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn compile_is_linear(a in operator_sum(), b in operator_sum(), x in -3.0f64..3.0, y in -3.0f64..3.0) {
        let lhs = (a.clone().scale(x) + b.clone().scale(y)).compile().unwrap();
        let rhs = a.compile().unwrap() * C::new(x, 0.0) + b.compile().unwrap() * C::new(y, 0.0);
        prop_assert!((lhs - rhs).norm() < 1e-12);
    }

    #[test]
    fn compile_of_product_is_matrix_product(a in operator_sum(), b in operator_sum()) {
        let lhs = a.product(&b).unwrap().compile().unwrap();
        let rhs = a.compile().unwrap() * b.compile().unwrap();
        prop_assert!((lhs - rhs).norm() < 1e-11);
    }

    #[test]
    fn rotation_inverse(axis in 0usize..3, theta in -6.0f64..6.0, mask in 1u8..8) {
        let sites: Vec<usize> = (0..3).filter(|s| mask >> s & 1 == 1).collect();
        let u = rotation_unitary(AXES[axis], theta, &sites, 3).unwrap();
        let v = rotation_unitary(AXES[axis], -theta, &sites, 3).unwrap();
        prop_assert!((u * v - DMatrix::identity(8, 8)).norm() < 1e-13);
    }

    #[test]
    fn swap_product_is_the_permutation(pairs in disjoint_pairs(5)) {
        let ours = from_nalgebra(&swap_product(&pairs, 5).unwrap().compile().unwrap());
        prop_assert_eq!(max_diff(&ours, &swap_permutation(5, &pairs)), 0.0);
    }

    #[test]
    fn fidelity_is_bounded(psi in state(16), seed in 0u64..1000) {
        let gs = ground_space(&to_nalgebra(&random_hermitian(16, seed)), 0.3).unwrap();
        let f = fidelity(&psi, &gs).unwrap();
        prop_assert!((0.0..=1.0 + 1e-12).contains(&f));
    }

    #[test]
    fn fidelity_invariant_under_basis_remixing(psi in state(64), seed in 0u64..1000) {
        // the ferromagnetic Δ = 1.7 problem has a doubly degenerate ground space
        let graph = square_lattice(2, 3).unwrap();
        let h = xxz_hamiltonian(&XxzParams { j: -1.0, delta: 1.7, graph }).compile().unwrap();
        let gs = ground_space(&h, 1e-6).unwrap();
        prop_assert_eq!(gs.degeneracy(), 2);
        let remixed = gs.rotated(&unitary(2, seed)).unwrap();
        let (a, b) = (fidelity(&psi, &gs).unwrap(), fidelity(&psi, &remixed).unwrap());
        prop_assert!((a - b).abs() <= 1e-10, "{} vs {}", a, b);
    }

    #[test]
    fn nondegenerate_eigenvectors_have_definite_sector(j in -2.0f64..2.0, delta in 0.0f64..3.0) {
        prop_assume!(j.abs() > 0.1);
        let graph = square_lattice(2, 3).unwrap();
        let h = xxz_hamiltonian(&XxzParams { j, delta, graph }).compile().unwrap();
        let s = swap_product(&ROW_REFLECTION, 6).unwrap();
        let eig = hermitian_eigen(&h).unwrap();
        for k in 0..eig.values.len() {
            let psi = QuantumState::normalized(eig.vectors.column(k).into_owned()).unwrap();
            let v = sector_expectation(&psi, &s).unwrap();
            prop_assert!((-1.0 - 1e-12..=1.0 + 1e-12).contains(&v));
            let isolated = (k == 0 || eig.values[k] - eig.values[k - 1] > 1e-6)
                && (k + 1 == eig.values.len() || eig.values[k + 1] - eig.values[k] > 1e-6);
            if isolated {
                prop_assert!((v.abs() - 1.0).abs() < 1e-9, "level {} has sector {}", k, v);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn swap_sector_is_conserved_by_uniform_drive(
        j in -1.5f64..1.5,
        delta in 0.2f64..2.0,
        omega in 3.0f64..8.0,
        psi in state(16),
    ) {
        // rows of the 2×2 lattice are (0, 1) and (2, 3)
        let graph = square_lattice(2, 2).unwrap();
        let p = map_xxz_exact(j, delta, omega).unwrap().with_lambda0(1.0);
        let sched = schedule_linear(1.0, p.g, 5.0, ScheduleDirection::DriveOff).unwrap();
        let h = LabFrameModel::new(&p, &graph, &[1.0; 4], &sched).unwrap();
        let s = swap_product(&[(0, 2), (1, 3)], 4).unwrap();
        let settings = PropagationSettings::new(5.0, 0.01).with_method(Method::Magnus4).with_samples(50);
        let start = sector_expectation(&psi, &s).unwrap();
        let tr = propagate(&h, &psi, &settings, |_, phi| sector_expectation(phi, &s)).unwrap();
        for v in tr.fidelities {
            prop_assert!((v - start).abs() < 1e-9);
        }
    }
}

fn toy(total_time: f64, frame: Frame) -> ExperimentConfig {
    let mut cfg = preset_fig3().remove(0);
    cfg.name = "toy".into();
    cfg.lattice.rows = 1;
    cfg.lattice.cols = 2;
    cfg.problem.delta = 1.0;
    cfg.device.omega = vec![5.0];
    cfg.anneal.total_time = total_time;
    cfg.anneal.frame = frame;
    cfg
}

#[test]
fn adiabatic_limit_for_two_qubits() {
    // Δ = 0.7 keeps the ferromagnetic target non-degenerate
    let finals: Vec<f64> = [10.0, 100.0, 1000.0]
        .iter()
        .map(|&t| {
            let mut cfg = toy(t, Frame::RotatingRwa);
            cfg.problem.delta = 0.7;
            let run = prepare_run(&cfg, 5.0, Frame::RotatingRwa).unwrap();
            assert_eq!(run.target.degeneracy(), 1);
            run.run().unwrap().final_fidelity()
        })
        .collect();
    assert!(finals.windows(2).all(|w| w[1] > w[0]), "{finals:?}");
    assert!(finals[2] > 0.99, "{finals:?}");
}

#[test]
fn runs_are_deterministic() {
    let cfg = toy(30.0, Frame::Both);
    let (a, b) = (
        run_fidelity_curve(&cfg).unwrap(),
        run_fidelity_curve(&cfg).unwrap(),
    );
    for (x, y) in a.iter().zip(&b) {
        assert_eq!(x.fidelities, y.fidelities);
        assert_eq!(fidelity_csv(x), fidelity_csv(y));
    }
    let mut threaded = cfg.clone();
    threaded.output.workers = 2;
    let c = run_fidelity_curve(&threaded).unwrap();
    assert!(a.iter().zip(&c).all(|(x, y)| x.fidelities == y.fidelities));
}

#[test]
fn norm_is_conserved_by_every_integrator() {
    let h = to_nalgebra(&random_hermitian(8, 21));
    let psi = QuantumState::basis(8, 3).unwrap();
    for method in [Method::Midpoint, Method::Magnus4, Method::Rk4] {
        let tr = evolve(
            &h,
            &psi,
            &PropagationSettings::new(10.0, 0.01).with_method(method),
        )
        .unwrap();
        assert!((tr.final_state.norm() - 1.0).abs() <= 1e-9, "{method:?}");
    }
}
