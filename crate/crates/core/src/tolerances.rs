//! Numerical tolerances shared across the crate.

/// Max |A − A†| accepted for a matrix that should be Hermitian.
pub const HERMITIAN_INPUT: f64 = 1e-9;
/// Jacobi stops once the off-diagonal Frobenius norm falls below this
/// fraction of the total norm.
pub const JACOBI_OFF_DIAGONAL: f64 = 1e-12;
pub const JACOBI_MAX_SWEEPS: usize = 100;
/// Max entry of V diag(w) V† − A for an accepted decomposition.
pub const EIGEN_RECONSTRUCTION: f64 = 1e-10;
/// Gap below which the ground level counts as degenerate.
pub const GROUND_DEGENERACY: f64 = 1e-9;

/// Largest imaginary part of Tr[Hρ] tolerated as rounding.
pub const ENERGY_IMAGINARY: f64 = 1e-10;
/// Ergotropy values in (ERGOTROPY_FLOOR, 0) are rounding and are clamped
/// silently; lower values are clamped with a warning.
pub const ERGOTROPY_FLOOR: f64 = -1e-10;
/// Trace drift per step above which ρ is rescaled.
pub const TRACE_RENORMALIZE: f64 = 1e-12;

pub const DENSITY_HERMITIAN: f64 = 1e-9;
pub const DENSITY_TRACE: f64 = 1e-9;
/// Most negative eigenvalue accepted in a density matrix.
pub const DENSITY_POSITIVITY: f64 = 1e-6;

pub const DISSIPATIVE_DT: f64 = 1e-3;
pub const CHARGING_DT: f64 = 1e-4;
