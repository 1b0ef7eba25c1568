use serde::{Deserialize, Serialize};

use crate::density::DensityMatrix;
use crate::error::{Error, Result};
use crate::matrix::{pauli, ComplexMatrix, I};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ChannelKind {
    AmplitudeDamping,
    Dephasing,
    None,
}

/// Instantaneous decay rate γ(t).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "form", rename_all = "snake_case", deny_unknown_fields)]
pub enum RateProfile {
    Constant {
        gamma: f64,
    },
    /// γ₀ e^{-βt} cos(ωt); goes negative whenever cos(ωt) < 0.
    ExpCosine {
        gamma0: f64,
        beta: f64,
        omega: f64,
    },
}

impl Default for RateProfile {
    fn default() -> Self {
        RateProfile::Constant { gamma: 0.0 }
    }
}

impl RateProfile {
    pub fn is_zero(&self) -> bool {
        match *self {
            RateProfile::Constant { gamma } => gamma == 0.0,
            RateProfile::ExpCosine { gamma0, .. } => gamma0 == 0.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            RateProfile::Constant { gamma } => {
                if !gamma.is_finite() || gamma < 0.0 {
                    return Err(Error::validation(
                        "channel.rate.gamma",
                        "must be finite and >= 0",
                    ));
                }
            }
            RateProfile::ExpCosine {
                gamma0,
                beta,
                omega,
            } => {
                if !gamma0.is_finite() || gamma0 < 0.0 {
                    return Err(Error::validation(
                        "channel.rate.gamma0",
                        "must be finite and >= 0",
                    ));
                }
                if !beta.is_finite() || beta < 0.0 {
                    return Err(Error::validation(
                        "channel.rate.beta",
                        "must be finite and >= 0",
                    ));
                }
                if !omega.is_finite() {
                    return Err(Error::validation("channel.rate.omega", "must be finite"));
                }
            }
        }
        Ok(())
    }
}

pub fn evaluate_rate(profile: &RateProfile, t: f64) -> f64 {
    match *profile {
        RateProfile::Constant { gamma } => gamma,
        RateProfile::ExpCosine {
            gamma0,
            beta,
            omega,
        } => gamma0 * (-beta * t).exp() * (omega * t).cos(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChannelSpec {
    pub kind: ChannelKind,
    #[serde(default)]
    pub rate: RateProfile,
}

impl Default for ChannelSpec {
    fn default() -> Self {
        Self::none()
    }
}

impl ChannelSpec {
    pub fn none() -> Self {
        Self {
            kind: ChannelKind::None,
            rate: RateProfile::default(),
        }
    }

    pub fn amplitude_damping(rate: RateProfile) -> Self {
        Self {
            kind: ChannelKind::AmplitudeDamping,
            rate,
        }
    }

    pub fn dephasing(rate: RateProfile) -> Self {
        Self {
            kind: ChannelKind::Dephasing,
            rate,
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.rate.validate()?;
        if self.kind == ChannelKind::None && !self.rate.is_zero() {
            return Err(Error::validation(
                "channel.rate",
                "channel kind `none` requires a zero rate",
            ));
        }
        Ok(())
    }

    pub fn rate_at(&self, t: f64) -> f64 {
        match self.kind {
            ChannelKind::None => 0.0,
            _ => evaluate_rate(&self.rate, t),
        }
    }
}

/// Single-qubit lowering |0⟩⟨1|, taking |1⟩ to the lower level |0⟩.
fn qubit_lowering() -> ComplexMatrix {
    pauli::sigma_plus()
}

/// Collective collapse operators on the two pseudospins:
/// lowering ⊗ I + I ⊗ lowering for amplitude damping and
/// σ_z ⊗ I + I ⊗ σ_z = diag(2, 0, 0, −2) for dephasing.
pub fn collapse_operator(kind: ChannelKind) -> Result<ComplexMatrix> {
    let id = pauli::identity();
    let single = match kind {
        ChannelKind::AmplitudeDamping => qubit_lowering(),
        ChannelKind::Dephasing => pauli::sigma_z(),
        ChannelKind::None => {
            return Err(Error::Usage(
                "channel kind `none` has no collapse operator".into(),
            ))
        }
    };
    single.kron(&id).add(&id.kron(&single))
}

/// L with L† and L†L cached.
#[derive(Debug, Clone)]
pub(crate) struct Dissipator {
    l: ComplexMatrix,
    l_dag: ComplexMatrix,
    l_dag_l: ComplexMatrix,
}

impl Dissipator {
    pub(crate) fn new(kind: ChannelKind) -> Result<Option<Self>> {
        if kind == ChannelKind::None {
            return Ok(None);
        }
        let l = collapse_operator(kind)?;
        let l_dag = l.adjoint();
        let l_dag_l = l_dag.mul_unchecked(&l);
        Ok(Some(Self { l, l_dag, l_dag_l }))
    }

    /// LρL† − ½{L†L, ρ}, assuming ρ Hermitian.
    fn apply(&self, rho: &ComplexMatrix) -> ComplexMatrix {
        let jump = self.l.mul_unchecked(rho).mul_unchecked(&self.l_dag);
        let b = self.l_dag_l.mul_unchecked(rho);
        let n = rho.dim();
        let mut out = jump;
        for i in 0..n {
            for j in 0..n {
                out[(i, j)] -= (b[(i, j)] + b[(j, i)].conj()) * 0.5;
            }
        }
        out
    }
}

/// Precomputed right-hand side of the master equation for one channel.
#[derive(Debug, Clone)]
pub(crate) struct Generator {
    dissipator: Option<Dissipator>,
    channel: ChannelSpec,
}

impl Generator {
    pub(crate) fn new(channel: &ChannelSpec) -> Result<Self> {
        channel.validate()?;
        Ok(Self {
            dissipator: Dissipator::new(channel.kind)?,
            channel: *channel,
        })
    }

    /// −i[H, ρ] + γ(t) D[L]ρ for Hermitian ρ and H. Uses ρH = (Hρ)† so the
    /// result is Hermitian by construction.
    pub(crate) fn rhs(&self, rho: &ComplexMatrix, h: &ComplexMatrix, t: f64) -> ComplexMatrix {
        let a = h.mul_unchecked(rho);
        let n = rho.dim();
        let mut out = ComplexMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out[(i, j)] = -I * (a[(i, j)] - a[(j, i)].conj());
            }
        }
        if let Some(d) = &self.dissipator {
            let gamma = self.channel.rate_at(t);
            if gamma != 0.0 {
                out.axpy_in_place(gamma, &d.apply(rho));
            }
        }
        out
    }
}

/// dρ/dt = −i[H, ρ] + γ(t)(LρL† − ½{L†L, ρ})
pub fn lindblad_rhs(
    rho: &DensityMatrix,
    h: &ComplexMatrix,
    channel: &ChannelSpec,
    t: f64,
) -> Result<ComplexMatrix> {
    let m = rho.matrix();
    if m.dim() != h.dim() {
        return Err(Error::DimensionMismatch {
            left: m.dim(),
            right: h.dim(),
        });
    }
    let deviation = h.hermitian_deviation();
    if deviation > crate::tolerances::HERMITIAN_INPUT {
        return Err(Error::NotHermitian { deviation });
    }
    Ok(Generator::new(channel)?.rhs(m, h, t))
}
