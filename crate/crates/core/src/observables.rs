//! Figures of merit of a battery state: stored energy, fidelity-based purity,
//! ℓ1-coherence, passive state and ergotropy.

use log::debug;
use serde::{Deserialize, Serialize};

use crate::density::DensityMatrix;
use crate::error::{Error, Result};
use crate::matrix::{hermitian_eigen, ComplexMatrix, EigenDecomposition};
use crate::tolerances;

/// Which observables the integrator records. Snapshot times are given
/// explicitly; an empty list disables snapshots.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ObservableSet {
    pub energy: bool,
    pub purity: bool,
    pub coherence: bool,
    pub ergotropy: bool,
    pub snapshot_times: Vec<f64>,
}

impl Default for ObservableSet {
    fn default() -> Self {
        Self::all()
    }
}

impl ObservableSet {
    pub fn all() -> Self {
        Self {
            energy: true,
            purity: true,
            coherence: true,
            ergotropy: true,
            snapshot_times: Vec::new(),
        }
    }

    pub fn with_snapshots(mut self, times: Vec<f64>) -> Self {
        self.snapshot_times = times;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.energy
            || self.purity
            || self.coherence
            || self.ergotropy
            || !self.snapshot_times.is_empty())
        {
            return Err(Error::validation("observables", "nothing selected"));
        }
        Ok(())
    }
}

/// Re Tr[Hρ]; errors if the imaginary residue exceeds `ENERGY_IMAGINARY`.
pub fn energy(rho: &DensityMatrix, h: &ComplexMatrix) -> Result<f64> {
    let m = rho.matrix();
    if m.dim() != h.dim() {
        return Err(Error::DimensionMismatch {
            left: m.dim(),
            right: h.dim(),
        });
    }
    // Tr[Hρ] = Σ_ij H_ij ρ_ji without forming the product.
    let n = m.dim();
    let mut tr = crate::matrix::ZERO;
    for i in 0..n {
        for j in 0..n {
            tr += h[(i, j)] * m[(j, i)];
        }
    }
    if tr.im.abs() > tolerances::ENERGY_IMAGINARY {
        return Err(Error::Numerical {
            t: f64::NAN,
            reason: format!("Tr[H rho] has imaginary part {:e}", tr.im),
        });
    }
    Ok(tr.re)
}

/// log_d(d Tr ρ²): 1 for pure states, 0 for I/d.
pub fn purity_fidelity(rho: &DensityMatrix, d: usize) -> f64 {
    let d = d as f64;
    (d * rho.purity()).ln() / d.ln()
}

/// Σ_{i≠j} |ρ_ij| in the computational basis.
pub fn l1_coherence(rho: &DensityMatrix) -> f64 {
    let m = rho.matrix();
    let n = m.dim();
    let mut sum = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                sum += m[(i, j)].norm();
            }
        }
    }
    sum
}

#[derive(Debug, Clone)]
pub struct PassiveState {
    pub mat: DensityMatrix,
    /// Eigenvalues of ρ, largest first.
    pub populations: Vec<f64>,
    /// Eigenvalues of the reference Hamiltonian, lowest first.
    pub levels: Vec<f64>,
    /// `assignment[k]` is the Hamiltonian level (ascending index) that
    /// receives the population of ρ's k-th eigenvector (ascending index).
    pub assignment: Vec<usize>,
}

impl PassiveState {
    /// Σ_k p_k↓ E_k↑
    pub fn energy(&self) -> f64 {
        self.populations
            .iter()
            .zip(&self.levels)
            .map(|(p, e)| p * e)
            .sum()
    }
}

/// Σ_k p_k↓ |E_k↑⟩⟨E_k↑|.
///
/// Eigenvalues of ρ are used as-is, small negative ones included.
pub fn passive_state(rho: &DensityMatrix, h: &ComplexMatrix) -> Result<PassiveState> {
    let rho_eig = rho.eigen()?;
    let h_eig = hermitian_eigen(h, tolerances::JACOBI_OFF_DIAGONAL)?;
    Ok(passive_from_spectra(&rho_eig, &h_eig))
}

fn passive_from_spectra(rho_eig: &EigenDecomposition, h_eig: &EigenDecomposition) -> PassiveState {
    let n = rho_eig.values.len();
    let populations: Vec<f64> = rho_eig.values.iter().rev().copied().collect();
    let mut mat = ComplexMatrix::zeros(n);
    for (k, &p) in populations.iter().enumerate() {
        let v = h_eig.vector(k);
        for i in 0..n {
            let vi = v[i] * p;
            for j in 0..n {
                mat[(i, j)] += vi * v[j].conj();
            }
        }
    }
    PassiveState {
        mat: DensityMatrix::new_unchecked(mat),
        populations,
        levels: h_eig.values.clone(),
        assignment: (0..n).map(|k| n - 1 - k).collect(),
    }
}

/// Tr[Hρ] − Tr[H ρ_passive], clamped at zero when the raw value is within the
/// rounding floor.
pub fn ergotropy(rho: &DensityMatrix, h: &ComplexMatrix) -> Result<f64> {
    let passive = passive_state(rho, h)?;
    let raw = energy(rho, h)? - passive.energy();
    Ok(clamp_ergotropy(raw))
}

/// Ergotropy from a precomputed spectrum of ρ; used by the integrator, which
/// already diagonalizes ρ for positivity monitoring.
pub(crate) fn ergotropy_with_spectra(
    rho: &DensityMatrix,
    h: &ComplexMatrix,
    rho_eig: &EigenDecomposition,
    h_eig: &EigenDecomposition,
) -> Result<f64> {
    let passive_energy: f64 = rho_eig
        .values
        .iter()
        .rev()
        .zip(&h_eig.values)
        .map(|(p, e)| p * e)
        .sum();
    Ok(clamp_ergotropy(energy(rho, h)? - passive_energy))
}

fn clamp_ergotropy(raw: f64) -> f64 {
    if raw >= 0.0 {
        raw
    } else {
        if raw < tolerances::ERGOTROPY_FLOOR {
            log::warn!("ergotropy {raw:e} is below the rounding floor; clamped to 0");
        } else {
            debug!("ergotropy {raw:e} clamped to 0");
        }
        0.0
    }
}
