use qbattery_core::dynamics::{StaticHamiltonian, TwoPhaseConfig};
use qbattery_core::{
    build_h0, ground_state, integrate, l1_coherence, run_two_phase, ChannelSpec, IntegratorConfig,
    ModelParams, ObservableSet, RateProfile,
};

const CHARGED_B_S: f64 = 9.708_20;

fn charged_params() -> ModelParams {
    ModelParams {
        b_s: CHARGED_B_S,
        ..ModelParams::default()
    }
}

fn constant(gamma: f64) -> RateProfile {
    RateProfile::Constant { gamma }
}

#[test]
fn charged_state_matches_reference_row() {
    let p = charged_params();
    let out = run_two_phase(
        &p,
        &ChannelSpec::amplitude_damping(constant(0.5)),
        &TwoPhaseConfig::for_params(&p),
        &ObservableSet::all(),
    )
    .unwrap();
    let c0 = l1_coherence(&out.charged);
    assert!((c0 - 2.1013).abs() < 1e-3, "C(0) = {c0}");
    let d = &out.dissipation;
    assert!(
        (d.ergotropy[0] - 1.7791).abs() < 1e-3,
        "E(0) = {}",
        d.ergotropy[0]
    );

    let last = d.len() - 1;
    assert!((d.times[last] - 100.0).abs() < 1e-12);
    assert!(
        (d.coherence[last] - 0.9983).abs() < 2e-3,
        "{}",
        d.coherence[last]
    );
    assert!(
        (d.ergotropy[last] - 1.0347).abs() < 2e-3,
        "{}",
        d.ergotropy[last]
    );
    assert!(d.diagnostics.max_trace_drift < 1e-8);
    assert!(d.diagnostics.positivity_warnings.is_empty());
    assert_eq!(d.len(), 1001);
}

#[test]
fn closed_evolution_conserves_energy_and_ergotropy() {
    let p = charged_params();
    let out = run_two_phase(
        &p,
        &ChannelSpec::none(),
        &TwoPhaseConfig {
            charging: IntegratorConfig::charging(&p),
            dissipation: IntegratorConfig {
                t_end: 20.0,
                ..IntegratorConfig::default()
            },
        },
        &ObservableSet::all(),
    )
    .unwrap();
    let d = &out.dissipation;
    for i in 0..d.len() {
        assert!((d.energy[i] - d.energy[0]).abs() < 1e-8);
        assert!((d.ergotropy[i] - d.ergotropy[0]).abs() < 1e-8);
        assert!((d.purity[i] - 1.0).abs() < 1e-8);
    }
}

#[test]
fn ground_state_is_stationary_without_pulse() {
    let p = ModelParams {
        b_s: 0.0,
        ..ModelParams::default()
    };
    let out = run_two_phase(
        &p,
        &ChannelSpec::none(),
        &TwoPhaseConfig {
            charging: IntegratorConfig::charging(&p),
            dissipation: IntegratorConfig {
                t_end: 5.0,
                ..IntegratorConfig::default()
            },
        },
        &ObservableSet::all(),
    )
    .unwrap();
    let g = ground_state(&p).unwrap();
    assert!(out.charged.matrix().max_abs_diff(g.matrix()) < 1e-9);
    assert!(out.dissipation.ergotropy.iter().all(|&e| e < 1e-9));
}

#[test]
fn snapshots_land_on_requested_times() {
    let p = ModelParams::default();
    let rho = ground_state(&p).unwrap();
    let h = StaticHamiltonian(build_h0(&p).unwrap());
    let channel = ChannelSpec::dephasing(constant(0.1));
    let cfg = IntegratorConfig {
        t_end: 2.0,
        ..IntegratorConfig::default()
    };
    let rec = integrate(
        &rho,
        &h,
        &channel,
        &cfg,
        &ObservableSet::all().with_snapshots(vec![0.0, 1.0, 2.0]),
    )
    .unwrap();
    let times: Vec<f64> = rec.snapshots.iter().map(|s| s.t).collect();
    assert_eq!(times, vec![0.0, 1.0, 2.0]);
    assert!(
        rec.snapshots[2]
            .rho
            .matrix()
            .max_abs_diff(rec.final_state.matrix())
            < 1e-15
    );
    assert!(rec.snapshots[0]
        .eigenvalues
        .windows(2)
        .all(|w| w[0] >= w[1]));
}
