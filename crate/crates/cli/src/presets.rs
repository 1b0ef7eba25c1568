//! Named scenarios for the dissipation families: amplitude damping and
//! dephasing at fixed rates, and the exponential-cosine memory kernel.

use qbattery_core::{ChannelSpec, ModelParams, RateProfile};

use crate::calibrate::CALIBRATED_B_S;
use crate::config::ScenarioConfig;

/// Times at which presets store full density matrices.
pub const TABLE_TIMES: [f64; 4] = [0.0, 10.0, 40.0, 100.0];

pub struct Preset {
    pub name: &'static str,
    pub description: &'static str,
    pub channel: ChannelSpec,
}

fn constant(gamma: f64) -> RateProfile {
    RateProfile::Constant { gamma }
}

fn memory(beta: f64) -> RateProfile {
    RateProfile::ExpCosine {
        gamma0: 0.5,
        beta,
        omega: 1.0,
    }
}

pub fn catalog() -> Vec<Preset> {
    let ad = ChannelSpec::amplitude_damping;
    let deph = ChannelSpec::dephasing;
    vec![
        Preset {
            name: "ad-weak",
            description: "amplitude damping, gamma = 0.1",
            channel: ad(constant(0.1)),
        },
        Preset {
            name: "ad-mid",
            description: "amplitude damping, gamma = 0.5",
            channel: ad(constant(0.5)),
        },
        Preset {
            name: "ad-strong",
            description: "amplitude damping, gamma = 1.0",
            channel: ad(constant(1.0)),
        },
        Preset {
            name: "deph-weak",
            description: "collective dephasing, gamma = 0.1",
            channel: deph(constant(0.1)),
        },
        Preset {
            name: "deph-strong",
            description: "collective dephasing, gamma = 1.0",
            channel: deph(constant(1.0)),
        },
        Preset {
            name: "markov",
            description: "Markovian reference: amplitude damping, gamma = 0.5",
            channel: ad(constant(0.5)),
        },
        Preset {
            name: "nonmarkov-b01",
            description: "amplitude damping, gamma(t) = 0.5 exp(-0.1 t) cos(t)",
            channel: ad(memory(0.1)),
        },
        Preset {
            name: "nonmarkov-b05",
            description: "amplitude damping, gamma(t) = 0.5 exp(-0.5 t) cos(t)",
            channel: ad(memory(0.5)),
        },
        Preset {
            name: "nonmarkov-b10",
            description: "amplitude damping, gamma(t) = 0.5 exp(-t) cos(t)",
            channel: ad(memory(1.0)),
        },
    ]
}

pub fn names() -> Vec<&'static str> {
    catalog().into_iter().map(|p| p.name).collect()
}

/// Full scenario for a preset: default model with the calibrated pulse
/// amplitude, default integrators, snapshots at the table times.
pub fn preset(name: &str) -> Option<ScenarioConfig> {
    let p = catalog().into_iter().find(|p| p.name == name)?;
    Some(ScenarioConfig {
        label: p.name.to_string(),
        snapshot_times: TABLE_TIMES.to_vec(),
        model: ModelParams {
            b_s: CALIBRATED_B_S,
            ..ModelParams::default()
        },
        channel: p.channel,
        ..ScenarioConfig::default()
    })
}
