use serde::{Deserialize, Serialize};

use crate::density::DensityMatrix;
use crate::error::{Error, Result};
use crate::matrix::{hermitian_eigen, ComplexMatrix};
use crate::model::{build_h0, pulse_hamiltonian, ModelParams};
use crate::observables::{
    energy, ergotropy_with_spectra, l1_coherence, purity_fidelity, ObservableSet,
};
use crate::tolerances;

use super::channel::{ChannelSpec, Generator};

/// Time-dependent Hamiltonian seen by the integrator.
pub trait HamiltonianSource {
    /// H(t), used for the dynamics and for ergotropy.
    fn at(&self, t: f64) -> ComplexMatrix;

    /// The bare Hamiltonian that defines stored energy.
    fn reference(&self) -> &ComplexMatrix;
}

#[derive(Debug, Clone)]
pub struct StaticHamiltonian(pub ComplexMatrix);

impl HamiltonianSource for StaticHamiltonian {
    fn at(&self, _t: f64) -> ComplexMatrix {
        self.0.clone()
    }

    fn reference(&self) -> &ComplexMatrix {
        &self.0
    }
}

/// H0 + H_pulse(t − t_c) on the charging clock, with the pulse centred at
/// t_c = 5τ.
#[derive(Debug, Clone)]
pub struct ChargingHamiltonian {
    h0: ComplexMatrix,
    params: ModelParams,
}

impl ChargingHamiltonian {
    pub fn new(params: &ModelParams) -> Result<Self> {
        Ok(Self {
            h0: build_h0(params)?,
            params: *params,
        })
    }
}

impl HamiltonianSource for ChargingHamiltonian {
    fn at(&self, t: f64) -> ComplexMatrix {
        let pulse = pulse_hamiltonian(&self.params, t - self.params.pulse_center());
        let mut h = self.h0.clone();
        for i in 0..h.dim() {
            h[(i, i)] += pulse[(i, i)];
        }
        h
    }

    fn reference(&self) -> &ComplexMatrix {
        &self.h0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct IntegratorConfig {
    pub dt: f64,
    pub t_end: f64,
    pub sample_stride: usize,
    pub positivity_tol: f64,
}

impl Default for IntegratorConfig {
    fn default() -> Self {
        Self {
            dt: tolerances::DISSIPATIVE_DT,
            t_end: 100.0,
            sample_stride: 100,
            positivity_tol: tolerances::DENSITY_POSITIVITY,
        }
    }
}

impl IntegratorConfig {
    /// Charging-phase defaults for the given pulse width.
    pub fn charging(params: &ModelParams) -> Self {
        Self {
            dt: tolerances::CHARGING_DT,
            t_end: params.charging_duration(),
            sample_stride: 100,
            positivity_tol: tolerances::DENSITY_POSITIVITY,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !self.dt.is_finite() || self.dt <= 0.0 {
            return Err(Error::validation("integrator.dt", "must be > 0"));
        }
        if !self.t_end.is_finite() || self.t_end <= 0.0 {
            return Err(Error::validation("integrator.t_end", "must be > 0"));
        }
        if self.dt > self.t_end {
            return Err(Error::validation("integrator.dt", "must not exceed t_end"));
        }
        if self.sample_stride == 0 {
            return Err(Error::validation(
                "integrator.sample_stride",
                "must be >= 1",
            ));
        }
        if self.positivity_tol.is_nan() || self.positivity_tol < 0.0 {
            return Err(Error::validation(
                "integrator.positivity_tol",
                "must be >= 0",
            ));
        }
        let ratio = self.t_end / self.dt;
        if (ratio - ratio.round()).abs() > 1e-6 {
            return Err(Error::validation(
                "integrator.dt",
                format!("t_end / dt = {ratio} is not an integer step count"),
            ));
        }
        Ok(())
    }

    pub fn steps(&self) -> usize {
        (self.t_end / self.dt).round() as usize
    }

    /// Step index closest to `t`.
    pub fn step_of(&self, t: f64) -> usize {
        (t / self.dt).round() as usize
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PositivityWarning {
    pub t: f64,
    pub min_eig: f64,
}

#[derive(Debug, Clone)]
pub struct Snapshot {
    pub t: f64,
    pub rho: DensityMatrix,
    /// Eigenvalues of ρ, largest first.
    pub eigenvalues: Vec<f64>,
}

/// Integrator bookkeeping, reported next to the trajectory.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Diagnostics {
    /// Largest |Tr ρ − 1| seen after any step, before correction.
    pub max_trace_drift: f64,
    /// Number of steps where the trace was renormalized.
    pub trace_corrections: usize,
    /// Sum of all applied trace corrections.
    pub cumulative_trace_correction: f64,
    /// Largest |ρ − ρ†| entry removed by symmetrization.
    pub max_hermitian_drift: f64,
    /// Smallest density-matrix eigenvalue over the sampled times.
    pub min_eigenvalue: f64,
    pub positivity_warnings: Vec<PositivityWarning>,
}

/// Sampled observables of one integration. Unselected observables hold NaN
/// so every series has the same length as `times`.
#[derive(Debug, Clone)]
pub struct TrajectoryRecord {
    pub times: Vec<f64>,
    pub energy: Vec<f64>,
    pub purity: Vec<f64>,
    pub coherence: Vec<f64>,
    pub ergotropy: Vec<f64>,
    pub min_eig: Vec<f64>,
    pub rate: Vec<f64>,
    pub snapshots: Vec<Snapshot>,
    pub diagnostics: Diagnostics,
    pub final_state: DensityMatrix,
}

impl TrajectoryRecord {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    /// Index of the sample closest to `t`.
    pub fn index_of(&self, t: f64) -> Option<usize> {
        self.times
            .iter()
            .enumerate()
            .min_by(|a, b| (a.1 - t).abs().total_cmp(&(b.1 - t).abs()))
            .map(|(i, _)| i)
    }

    pub fn snapshot_at(&self, t: f64) -> Option<&Snapshot> {
        self.snapshots
            .iter()
            .min_by(|a, b| (a.t - t).abs().total_cmp(&(b.t - t).abs()))
    }

    pub fn row(&self, i: usize) -> [f64; 7] {
        [
            self.times[i],
            self.energy[i],
            self.purity[i],
            self.coherence[i],
            self.ergotropy[i],
            self.min_eig[i],
            self.rate[i],
        ]
    }
}

/// Fixed-step classical RK4 integration of the master equation.
///
/// After every step ρ is symmetrized and, if its trace drifted by more than
/// `TRACE_RENORMALIZE`, rescaled to unit trace. Observables are evaluated
/// every `sample_stride` steps and at `t_end`. Positivity is monitored only.
pub fn integrate(
    rho0: &DensityMatrix,
    hamiltonian: &dyn HamiltonianSource,
    channel: &ChannelSpec,
    cfg: &IntegratorConfig,
    observables: &ObservableSet,
) -> Result<TrajectoryRecord> {
    cfg.validate()?;
    observables.validate()?;
    let generator = Generator::new(channel)?;
    let n_steps = cfg.steps();
    let dim = rho0.dim();
    if hamiltonian.reference().dim() != dim {
        return Err(Error::DimensionMismatch {
            left: dim,
            right: hamiltonian.reference().dim(),
        });
    }

    let mut snapshot_steps = Vec::with_capacity(observables.snapshot_times.len());
    for &ts in &observables.snapshot_times {
        if !(0.0..=cfg.t_end + 0.5 * cfg.dt).contains(&ts) {
            return Err(Error::validation(
                "snapshot_times",
                format!("{ts} lies outside [0, {}]", cfg.t_end),
            ));
        }
        snapshot_steps.push(cfg.step_of(ts));
    }

    let capacity = n_steps / cfg.sample_stride + 2;
    let mut rec = Recorder {
        times: Vec::with_capacity(capacity),
        energy: Vec::with_capacity(capacity),
        purity: Vec::with_capacity(capacity),
        coherence: Vec::with_capacity(capacity),
        ergotropy: Vec::with_capacity(capacity),
        min_eig: Vec::with_capacity(capacity),
        rate: Vec::with_capacity(capacity),
        snapshots: Vec::new(),
        diagnostics: Diagnostics {
            min_eigenvalue: f64::INFINITY,
            ..Default::default()
        },
    };

    let mut rho = rho0.matrix().hermitian_part();
    let half = 0.5 * cfg.dt;
    for k in 0..=n_steps {
        let t = k as f64 * cfg.dt;
        let sample = k % cfg.sample_stride == 0 || k == n_steps;
        let snap = snapshot_steps.contains(&k);
        if sample || snap {
            rec.observe(
                &rho,
                t,
                sample,
                snap,
                hamiltonian,
                channel,
                cfg,
                observables,
            )?;
        }
        if k == n_steps {
            break;
        }

        let h_start = hamiltonian.at(t);
        let h_mid = hamiltonian.at(t + half);
        let h_end = hamiltonian.at(t + cfg.dt);

        let k1 = generator.rhs(&rho, &h_start, t);
        let mut probe = rho.clone();
        probe.axpy_in_place(half, &k1);
        let k2 = generator.rhs(&probe, &h_mid, t + half);
        probe = rho.clone();
        probe.axpy_in_place(half, &k2);
        let k3 = generator.rhs(&probe, &h_mid, t + half);
        probe = rho.clone();
        probe.axpy_in_place(cfg.dt, &k3);
        let k4 = generator.rhs(&probe, &h_end, t + cfg.dt);

        let w = cfg.dt / 6.0;
        rho.axpy_in_place(w, &k1);
        rho.axpy_in_place(2.0 * w, &k2);
        rho.axpy_in_place(2.0 * w, &k3);
        rho.axpy_in_place(w, &k4);

        let t_next = t + cfg.dt;
        if !rho.is_finite() {
            return Err(Error::Numerical {
                t: t_next,
                reason: "non-finite density-matrix entry".into(),
            });
        }

        let herm = rho.hermitian_deviation();
        if herm > 0.0 {
            rec.diagnostics.max_hermitian_drift = rec.diagnostics.max_hermitian_drift.max(herm);
            rho = rho.hermitian_part();
        }

        let tr = rho.trace().re;
        let drift = (tr - 1.0).abs();
        rec.diagnostics.max_trace_drift = rec.diagnostics.max_trace_drift.max(drift);
        if drift > tolerances::TRACE_RENORMALIZE {
            rho = rho.scale_real(1.0 / tr);
            rec.diagnostics.trace_corrections += 1;
            rec.diagnostics.cumulative_trace_correction += drift;
        }
    }

    Ok(TrajectoryRecord {
        times: rec.times,
        energy: rec.energy,
        purity: rec.purity,
        coherence: rec.coherence,
        ergotropy: rec.ergotropy,
        min_eig: rec.min_eig,
        rate: rec.rate,
        snapshots: rec.snapshots,
        diagnostics: rec.diagnostics,
        final_state: DensityMatrix::new_unchecked(rho),
    })
}

struct Recorder {
    times: Vec<f64>,
    energy: Vec<f64>,
    purity: Vec<f64>,
    coherence: Vec<f64>,
    ergotropy: Vec<f64>,
    min_eig: Vec<f64>,
    rate: Vec<f64>,
    snapshots: Vec<Snapshot>,
    diagnostics: Diagnostics,
}

impl Recorder {
    #[allow(clippy::too_many_arguments)]
    fn observe(
        &mut self,
        rho: &ComplexMatrix,
        t: f64,
        sample: bool,
        snap: bool,
        hamiltonian: &dyn HamiltonianSource,
        channel: &ChannelSpec,
        cfg: &IntegratorConfig,
        observables: &ObservableSet,
    ) -> Result<()> {
        let state = DensityMatrix::new_unchecked(rho.clone());
        let at = |e: Error| match e {
            Error::Numerical { reason, .. } => Error::Numerical { t, reason },
            Error::NoConvergence {
                sweeps,
                off_diagonal,
            } => Error::Numerical {
                t,
                reason: format!(
                    "eigensolver did not converge after {sweeps} sweeps ({off_diagonal:e})"
                ),
            },
            other => other,
        };
        let rho_eig = state.eigen().map_err(at)?;
        let min_eig = rho_eig.values[0];

        if sample {
            let nan = f64::NAN;
            let h_ref = hamiltonian.reference();
            self.times.push(t);
            self.energy.push(if observables.energy {
                energy(&state, h_ref).map_err(at)?
            } else {
                nan
            });
            self.purity.push(if observables.purity {
                purity_fidelity(&state, state.dim())
            } else {
                nan
            });
            self.coherence.push(if observables.coherence {
                l1_coherence(&state)
            } else {
                nan
            });
            self.ergotropy.push(if observables.ergotropy {
                let h_t = hamiltonian.at(t);
                let h_eig = hermitian_eigen(&h_t, tolerances::JACOBI_OFF_DIAGONAL).map_err(at)?;
                ergotropy_with_spectra(&state, &h_t, &rho_eig, &h_eig).map_err(at)?
            } else {
                nan
            });
            self.min_eig.push(min_eig);
            self.rate.push(channel.rate_at(t));

            self.diagnostics.min_eigenvalue = self.diagnostics.min_eigenvalue.min(min_eig);
            if min_eig < -cfg.positivity_tol {
                if self.diagnostics.positivity_warnings.is_empty() {
                    log::warn!("positivity violated at t = {t}: min eigenvalue {min_eig:e}");
                }
                self.diagnostics
                    .positivity_warnings
                    .push(PositivityWarning { t, min_eig });
            }
        }

        if snap && !self.snapshots.iter().any(|s| s.t == t) {
            self.snapshots.push(Snapshot {
                t,
                eigenvalues: rho_eig.values.iter().rev().copied().collect(),
                rho: state,
            });
        }
        Ok(())
    }
}
