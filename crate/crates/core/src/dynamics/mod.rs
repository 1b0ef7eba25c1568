//! Master-equation dynamics: collapse channels, time-dependent rates, the
//! fixed-step RK4 integrator, and the charge-then-dissipate protocol.

mod channel;
mod integrate;

pub use channel::{
    collapse_operator, evaluate_rate, lindblad_rhs, ChannelKind, ChannelSpec, RateProfile,
};
pub use integrate::{
    integrate, ChargingHamiltonian, Diagnostics, HamiltonianSource, IntegratorConfig,
    PositivityWarning, Snapshot, StaticHamiltonian, TrajectoryRecord,
};

use crate::density::DensityMatrix;
use crate::error::Result;
use crate::model::{build_h0, ground_state, ModelParams};
use crate::observables::ObservableSet;

/// Integrator settings for both phases.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoPhaseConfig {
    pub charging: IntegratorConfig,
    pub dissipation: IntegratorConfig,
}

impl TwoPhaseConfig {
    pub fn for_params(params: &ModelParams) -> Self {
        Self {
            charging: IntegratorConfig::charging(params),
            dissipation: IntegratorConfig::default(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct TwoPhaseOutcome {
    pub charged: DensityMatrix,
    /// Closed evolution under H0 + pulse, clock starting at 0.
    pub charging: TrajectoryRecord,
    /// Open evolution under H0, clock restarted at 0.
    pub dissipation: TrajectoryRecord,
}

/// Charges the ground state of H0 with the pulse, then lets the charged state
/// evolve under H0 and `channel`.
pub fn run_two_phase(
    params: &ModelParams,
    channel: &ChannelSpec,
    cfg: &TwoPhaseConfig,
    observables: &ObservableSet,
) -> Result<TwoPhaseOutcome> {
    params.validate()?;
    channel.validate()?;
    let rho0 = ground_state(params)?;
    let charging = integrate(
        &rho0,
        &ChargingHamiltonian::new(params)?,
        &ChannelSpec::none(),
        &cfg.charging,
        &ObservableSet::all(),
    )?;
    let charged = charging.final_state.clone();
    let h0 = StaticHamiltonian(build_h0(params)?);
    let dissipation = integrate(&charged, &h0, channel, &cfg.dissipation, observables)?;
    Ok(TwoPhaseOutcome {
        charged,
        charging,
        dissipation,
    })
}

/// Closed charging only; returns the state at the end of the pulse window.
pub fn charge(params: &ModelParams, cfg: &IntegratorConfig) -> Result<DensityMatrix> {
    params.validate()?;
    let rho0 = ground_state(params)?;
    let only_energy = ObservableSet {
        energy: true,
        purity: false,
        coherence: false,
        ergotropy: false,
        snapshot_times: Vec::new(),
    };
    let rec = integrate(
        &rho0,
        &ChargingHamiltonian::new(params)?,
        &ChannelSpec::none(),
        &IntegratorConfig {
            sample_stride: cfg.steps().max(1),
            ..*cfg
        },
        &only_energy,
    )?;
    Ok(rec.final_state)
}
