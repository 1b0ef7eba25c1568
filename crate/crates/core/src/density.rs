use crate::error::{Error, Result};
use crate::matrix::{hermitian_eigen, ComplexMatrix, EigenDecomposition, ONE};
use crate::tolerances;

/// A Hermitian, unit-trace, positive semidefinite matrix.
///
/// Positivity is checked with the loose `DENSITY_POSITIVITY` floor because
/// time-local master equations with negative rates can push eigenvalues
/// slightly below zero.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix(ComplexMatrix);

impl DensityMatrix {
    pub fn new(mat: ComplexMatrix) -> Result<Self> {
        if !mat.is_finite() {
            return Err(Error::validation("rho", "non-finite entry"));
        }
        let herm = mat.hermitian_deviation();
        if herm > tolerances::DENSITY_HERMITIAN {
            return Err(Error::validation(
                "rho",
                format!("not Hermitian (deviation {herm:e})"),
            ));
        }
        let tr = mat.trace();
        if (tr - ONE).norm() > tolerances::DENSITY_TRACE {
            return Err(Error::validation(
                "rho",
                format!("trace is {} + {}i, expected 1", tr.re, tr.im),
            ));
        }
        let eig = hermitian_eigen(&mat, tolerances::JACOBI_OFF_DIAGONAL)?;
        if eig.values[0] < -tolerances::DENSITY_POSITIVITY {
            return Err(Error::validation(
                "rho",
                format!("negative eigenvalue {:e}", eig.values[0]),
            ));
        }
        Ok(Self(mat))
    }

    /// Skips validation; for states produced by the integrator, which monitors
    /// the invariants itself.
    pub(crate) fn new_unchecked(mat: ComplexMatrix) -> Self {
        Self(mat)
    }

    /// I/d
    pub fn maximally_mixed(dim: usize) -> Self {
        Self(ComplexMatrix::identity(dim).scale_real(1.0 / dim as f64))
    }

    /// Projector onto a normalized pure state.
    pub fn pure(psi: &[crate::matrix::Complex]) -> Result<Self> {
        let norm: f64 = psi.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::validation(
                "psi",
                "state vector has zero or non-finite norm",
            ));
        }
        let scaled: Vec<_> = psi.iter().map(|z| z / norm).collect();
        Ok(Self(ComplexMatrix::outer(&scaled)))
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.0
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    pub fn eigen(&self) -> Result<EigenDecomposition> {
        hermitian_eigen(&self.0, tolerances::JACOBI_OFF_DIAGONAL)
    }

    /// Diagonal entries in the computational basis.
    pub fn populations(&self) -> Vec<f64> {
        self.0.diagonal().iter().map(|z| z.re).collect()
    }

    /// Tr ρ²
    pub fn purity(&self) -> f64 {
        // Tr ρ² = Σ|ρ_ij|² for Hermitian ρ
        self.0.as_slice().iter().map(|z| z.norm_sqr()).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::Complex;

    #[test]
    fn rejects_invalid_states() {
        let not_unit = ComplexMatrix::identity(2);
        assert!(DensityMatrix::new(not_unit).is_err());

        let mut not_herm = ComplexMatrix::from_diagonal(&[0.5, 0.5]);
        not_herm[(0, 1)] = Complex::new(0.1, 0.0);
        assert!(DensityMatrix::new(not_herm).is_err());

        let negative = ComplexMatrix::from_diagonal(&[1.5, -0.5]);
        assert!(DensityMatrix::new(negative).is_err());
    }

    #[test]
    fn pure_and_mixed() {
        let psi = [Complex::new(1.0, 0.0), Complex::new(0.0, 1.0)];
        let rho = DensityMatrix::pure(&psi).unwrap();
        assert!((rho.purity() - 1.0).abs() < 1e-15);
        assert!(rho.populations().iter().all(|p| (p - 0.5).abs() < 1e-15));
        let mixed = DensityMatrix::maximally_mixed(4);
        assert!((mixed.purity() - 0.25).abs() < 1e-15);
        assert!(DensityMatrix::new(mixed.into_matrix()).is_ok());
    }
}
