use proptest::prelude::*;

use qbattery_core::dynamics::StaticHamiltonian;
use qbattery_core::matrix::{hermitian_eigen, Complex, ComplexMatrix};
use qbattery_core::{
    build_h0, closed_form_spectrum, energy, ergotropy, integrate, l1_coherence, lindblad_rhs,
    passive_state, purity_fidelity, ChannelKind, ChannelSpec, DensityMatrix, IntegratorConfig,
    ModelParams, ObservableSet, RateProfile,
};

fn complex() -> impl Strategy<Value = Complex> {
    (-1.0f64..1.0, -1.0f64..1.0).prop_map(|(re, im)| Complex::new(re, im))
}

fn hermitian(n: usize) -> impl Strategy<Value = ComplexMatrix> {
    prop::collection::vec(complex(), n * n)
        .prop_map(move |v| ComplexMatrix::from_row_major(v).unwrap().hermitian_part())
}

/// ρ = A A† / Tr(A A†)
fn density() -> impl Strategy<Value = DensityMatrix> {
    prop::collection::vec(complex(), 16).prop_map(|v| {
        let a = ComplexMatrix::from_row_major(v).unwrap();
        let m = a.mul(&a.adjoint()).unwrap();
        let tr = m.trace().re;
        DensityMatrix::new(m.scale_real(1.0 / tr).hermitian_part()).unwrap()
    })
}

fn params() -> impl Strategy<Value = ModelParams> {
    (
        0.2f64..3.0,
        0.0f64..std::f64::consts::TAU,
        0.05f64..2.0,
        -5.0f64..5.0,
        -5.0f64..5.0,
    )
        .prop_map(|(lambda, alpha, eta, n_x, n_y)| ModelParams {
            lambda,
            alpha,
            eta,
            n_x,
            n_y,
            ..ModelParams::default()
        })
}

fn channel() -> impl Strategy<Value = ChannelSpec> {
    (
        prop_oneof![
            Just(ChannelKind::AmplitudeDamping),
            Just(ChannelKind::Dephasing)
        ],
        0.0f64..2.0,
    )
        .prop_map(|(kind, gamma)| ChannelSpec {
            kind,
            rate: RateProfile::Constant { gamma },
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn eigen_reconstructs(a in hermitian(4)) {
        let eig = hermitian_eigen(&a, 1e-12).unwrap();
        prop_assert!(eig.reconstruct().max_abs_diff(&a) < 1e-10);
        prop_assert!(eig.values.windows(2).all(|w| w[0] <= w[1]));
        for i in 0..4 {
            for j in 0..4 {
                let dot: Complex = eig.vector(i).iter().zip(eig.vector(j)).map(|(x, y)| x.conj() * y).sum();
                let expected = if i == j { 1.0 } else { 0.0 };
                prop_assert!((dot - Complex::new(expected, 0.0)).norm() < 1e-10);
            }
        }
    }

    #[test]
    fn h0_spectrum_matches_closed_form(p in params()) {
        let h = build_h0(&p).unwrap();
        prop_assert!(h.hermitian_deviation() == 0.0);
        let eig = hermitian_eigen(&h, 1e-12).unwrap();
        let closed = closed_form_spectrum(&p).sorted();
        for (a, b) in eig.values.iter().zip(closed) {
            prop_assert!((a - b).abs() < 1e-9 * p.lambda.max(1.0));
        }
        let tr: f64 = eig.values.iter().sum();
        prop_assert!((tr - 4.0 * p.lambda).abs() < 1e-9);
    }

    #[test]
    fn observable_ranges(rho in density()) {
        let h = build_h0(&ModelParams::default()).unwrap();
        let pf = purity_fidelity(&rho, 4);
        prop_assert!((-1e-12..=1.0 + 1e-12).contains(&pf));
        prop_assert!(l1_coherence(&rho) >= 0.0);
        prop_assert!(l1_coherence(&rho) <= 3.0 + 1e-12);
        let w = ergotropy(&rho, &h).unwrap();
        prop_assert!(w >= 0.0);
        let eig = hermitian_eigen(&h, 1e-12).unwrap();
        let e = energy(&rho, &h).unwrap();
        prop_assert!(w <= e - eig.values[0] + 1e-10);
    }

    #[test]
    fn passive_state_is_unitarily_equivalent(rho in density()) {
        let h = build_h0(&ModelParams::default()).unwrap();
        let p = passive_state(&rho, &h).unwrap();
        let before = rho.eigen().unwrap().values;
        let after = p.mat.eigen().unwrap().values;
        for (a, b) in before.iter().zip(&after) {
            prop_assert!((a - b).abs() < 1e-10);
        }
        prop_assert!(p.mat.matrix().commutator(&h).unwrap().max_abs() < 1e-9);
        prop_assert!(ergotropy(&p.mat, &h).unwrap() < 1e-10);
    }

    #[test]
    fn generator_is_trace_free_and_hermitian(rho in density(), c in channel(), p in params()) {
        let h = build_h0(&p).unwrap();
        let d = lindblad_rhs(&rho, &h, &c, 0.0).unwrap();
        prop_assert!(d.trace().norm() < 1e-12);
        prop_assert!(d.hermitian_deviation() < 1e-13);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn trajectories_stay_physical(rho in density(), c in channel()) {
        let h = StaticHamiltonian(build_h0(&ModelParams::default()).unwrap());
        let cfg = IntegratorConfig { t_end: 5.0, sample_stride: 50, ..IntegratorConfig::default() };
        let rec = integrate(&rho, &h, &c, &cfg, &ObservableSet::all()).unwrap();
        prop_assert!(rec.diagnostics.max_trace_drift < 1e-8);
        prop_assert!(rec.diagnostics.min_eigenvalue > -1e-6);
        let n = rec.len();
        for series in [&rec.energy, &rec.purity, &rec.coherence, &rec.ergotropy, &rec.min_eig, &rec.rate] {
            prop_assert_eq!(series.len(), n);
        }
        prop_assert!(rec.times.windows(2).all(|w| w[0] < w[1]));
        prop_assert!(rec.ergotropy.iter().all(|&e| e >= 0.0));
    }
}

fn random_unitary() -> impl Strategy<Value = ComplexMatrix> {
    hermitian(4).prop_map(|a| {
        // eigenvectors of a random Hermitian matrix form a unitary
        let eig = hermitian_eigen(&a, 1e-12).unwrap();
        eig.vectors
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ergotropy_is_unitarily_invariant(rho in density(), h in hermitian(4), u in random_unitary()) {
        let ud = u.adjoint();
        let rho_u = DensityMatrix::new(u.mul(rho.matrix()).unwrap().mul(&ud).unwrap().hermitian_part()).unwrap();
        let h_u = u.mul(&h).unwrap().mul(&ud).unwrap().hermitian_part();
        let a = ergotropy(&rho, &h).unwrap();
        let b = ergotropy(&rho_u, &h_u).unwrap();
        prop_assert!((a - b).abs() < 1e-10, "{} vs {}", a, b);
    }

    #[test]
    fn purity_is_monotone_under_mixing(rho in density(), alpha in 0.0f64..1.0) {
        let mixed = rho
            .matrix()
            .scale_real(alpha)
            .add(&ComplexMatrix::identity(4).scale_real((1.0 - alpha) / 4.0))
            .unwrap();
        let mixed = DensityMatrix::new(mixed).unwrap();
        prop_assert!(purity_fidelity(&mixed, 4) <= purity_fidelity(&rho, 4) + 1e-12);
    }

    #[test]
    fn coherence_vanishes_only_for_diagonal_states(rho in density()) {
        let off = (0..4)
            .flat_map(|i| (0..4).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| rho.matrix()[(i, j)].norm())
            .fold(0.0, f64::max);
        prop_assert_eq!(l1_coherence(&rho) == 0.0, off == 0.0);
        let diag = DensityMatrix::new(ComplexMatrix::from_diagonal(&rho.populations())).unwrap();
        prop_assert!(l1_coherence(&diag) == 0.0);
        let all_finite = [
            energy(&rho, &build_h0(&ModelParams::default()).unwrap()).unwrap(),
            purity_fidelity(&rho, 4),
            l1_coherence(&rho),
        ]
        .iter()
        .all(|x| x.is_finite());
        prop_assert!(all_finite);
    }
}
