//! The spin-valley battery Hamiltonian, its closed-form spectrum, the initial
//! ground state, and the Gaussian charging pulse.
//!
//! Basis ordering is {|00⟩, |01⟩, |10⟩, |11⟩} with the sublattice index first.

use std::f64::consts::FRAC_PI_4;

use serde::{Deserialize, Serialize};

use crate::density::DensityMatrix;
use crate::error::{Error, Result};
use crate::matrix::{hermitian_eigen, Complex, ComplexMatrix, ZERO};
use crate::tolerances;

/// Number of levels in the battery.
pub const DIM: usize = 4;

/// Diagonal pattern of the pulse Hamiltonian.
const PULSE_PATTERN: [f64; DIM] = [1.0, -1.0, 1.0, -1.0];

/// Physical constants of the battery and the charging pulse. All quantities
/// are dimensionless; `lambda` is the energy unit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ModelParams {
    pub lambda: f64,
    pub alpha: f64,
    pub eta: f64,
    pub n_x: f64,
    pub n_y: f64,
    pub b_s: f64,
    pub tau: f64,
}

impl Default for ModelParams {
    fn default() -> Self {
        Self {
            lambda: 1.0,
            alpha: FRAC_PI_4,
            eta: 0.5,
            n_x: 1.0,
            n_y: 5.0,
            b_s: 1.0,
            tau: 1.0,
        }
    }
}

impl ModelParams {
    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("lambda", self.lambda),
            ("alpha", self.alpha),
            ("eta", self.eta),
            ("n_x", self.n_x),
            ("n_y", self.n_y),
            ("b_s", self.b_s),
            ("tau", self.tau),
        ];
        for (name, value) in fields {
            if !value.is_finite() {
                return Err(Error::validation(name, "must be finite"));
            }
        }
        if self.lambda <= 0.0 {
            return Err(Error::validation("lambda", "must be > 0"));
        }
        if self.tau <= 0.0 {
            return Err(Error::validation("tau", "must be > 0"));
        }
        if self.b_s < 0.0 {
            return Err(Error::validation("b_s", "must be >= 0"));
        }
        let (k1, k2) = self.momentum_ratios();
        if !k1.is_finite() || !k2.is_finite() {
            return Err(Error::validation("eta", "k1/k2 are not finite"));
        }
        Ok(())
    }

    /// (k₁, k₂) = (η n_x / λ, η n_y / λ)
    pub fn momentum_ratios(&self) -> (f64, f64) {
        (
            self.eta * self.n_x / self.lambda,
            self.eta * self.n_y / self.lambda,
        )
    }

    /// Centre of the charging pulse on the charging-phase clock.
    pub fn pulse_center(&self) -> f64 {
        CHARGING_CENTER_WIDTHS * self.tau
    }

    /// Length of the charging phase.
    pub fn charging_duration(&self) -> f64 {
        CHARGING_WINDOW_WIDTHS * self.tau
    }
}

/// The pulse peaks at 5τ and the charging phase covers [0, 10τ].
pub const CHARGING_CENTER_WIDTHS: f64 = 5.0;
pub const CHARGING_WINDOW_WIDTHS: f64 = 10.0;

/// The 4x4 battery Hamiltonian
///
/// ```text
///       ⎡ 1        e^{-iα}   η̃(n_x-in_y)  0           ⎤
/// H0 = λ⎢ e^{iα}   1         0            η̃(n_x+in_y) ⎥
///       ⎢ η̃(n_x+in_y) 0      1            e^{-iα}     ⎥
///       ⎣ 0        η̃(n_x-in_y) e^{iα}     1           ⎦
/// ```
///
/// with η̃ = η/λ.
pub fn build_h0(p: &ModelParams) -> Result<ComplexMatrix> {
    p.validate()?;
    let one = Complex::new(1.0, 0.0);
    let down = Complex::from_polar(1.0, -p.alpha);
    let up = down.conj();
    let eta_rel = p.eta / p.lambda;
    let minus = Complex::new(eta_rel * p.n_x, -eta_rel * p.n_y);
    let plus = minus.conj();
    let h = ComplexMatrix::from_rows(&[
        [one, down, minus, ZERO],
        [up, one, ZERO, plus],
        [plus, ZERO, one, down],
        [ZERO, minus, up, one],
    ]);
    Ok(h.scale_real(p.lambda))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumClosedForm {
    pub e1: f64,
    pub e2: f64,
    pub e3: f64,
    pub e4: f64,
}

impl SpectrumClosedForm {
    pub fn sorted(&self) -> [f64; 4] {
        let mut v = [self.e1, self.e2, self.e3, self.e4];
        v.sort_by(f64::total_cmp);
        v
    }
}

/// E₁,₂ = λ(1 ∓ √(1 + k₁² + 2k₁ + k₂²)), E₃,₄ = λ(1 ∓ √(1 + k₁² − 2k₁ + k₂²)).
pub fn closed_form_spectrum(p: &ModelParams) -> SpectrumClosedForm {
    let (k1, k2) = p.momentum_ratios();
    let r_plus = (1.0 + k1 * k1 + 2.0 * k1 + k2 * k2).sqrt();
    let r_minus = (1.0 + k1 * k1 - 2.0 * k1 + k2 * k2).sqrt();
    SpectrumClosedForm {
        e1: p.lambda * (1.0 - r_plus),
        e2: p.lambda * (1.0 + r_plus),
        e3: p.lambda * (1.0 - r_minus),
        e4: p.lambda * (1.0 + r_minus),
    }
}

/// Projector onto the lowest eigenvector of H0. Refuses a degenerate ground
/// level rather than picking a vector out of the degenerate subspace.
pub fn ground_state(p: &ModelParams) -> Result<DensityMatrix> {
    let h0 = build_h0(p)?;
    let eig = hermitian_eigen(&h0, tolerances::JACOBI_OFF_DIAGONAL)?;
    let gap = eig.values[1] - eig.values[0];
    if gap < tolerances::GROUND_DEGENERACY {
        return Err(Error::DegenerateGround {
            lowest: eig.values[0],
            next: eig.values[1],
            gap,
        });
    }
    let psi = eig.vector(0);
    DensityMatrix::new(ComplexMatrix::outer(&psi))
}

/// Envelope e^{-t²/(2τ²)} with `t` measured from the pulse centre.
pub fn pulse_envelope(p: &ModelParams, t: f64) -> f64 {
    (-t * t / (2.0 * p.tau * p.tau)).exp()
}

/// B_s diag(1, -1, 1, -1) e^{-t²/(2τ²)}, with `t` measured from the pulse centre.
pub fn pulse_hamiltonian(p: &ModelParams, t: f64) -> ComplexMatrix {
    let amp = p.b_s * pulse_envelope(p, t);
    ComplexMatrix::from_diagonal(&PULSE_PATTERN.map(|s| s * amp))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{adjoint, pauli, ONE};
    use crate::observables::{energy, ergotropy};

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn default_parameters() {
        let p = ModelParams::default();
        assert_eq!(p.lambda, 1.0);
        assert_eq!(p.alpha, std::f64::consts::PI / 4.0);
        assert_eq!((p.eta, p.n_x, p.n_y, p.tau), (0.5, 1.0, 5.0, 1.0));
        assert_eq!(p.momentum_ratios(), (0.5, 2.5));
    }

    #[test]
    fn h0_default_entries() {
        let h = build_h0(&ModelParams::default()).unwrap();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        assert!((h[(0, 1)] - Complex::new(s, -s)).norm() < 1e-15);
        assert!((h[(0, 2)] - Complex::new(0.5, -2.5)).norm() < 1e-15);
        assert!((h[(2, 0)] - Complex::new(0.5, 2.5)).norm() < 1e-15);
        assert_eq!(h, adjoint(&h));
        assert!((h.trace() - Complex::new(4.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn h0_without_kinetic_term() {
        // η = 0 leaves λ(I₄ + e^{-iα} Σ₊ + e^{iα} Σ₋), where the tunnelling
        // couples |00⟩↔|01⟩ and |10⟩↔|11⟩.
        let p = ModelParams {
            eta: 0.0,
            lambda: 1.7,
            alpha: 0.3,
            ..Default::default()
        };
        let h = build_h0(&p).unwrap();
        let hop = pauli::identity().kron(&pauli::sigma_plus());
        let expected = ComplexMatrix::identity(4)
            .add(&hop.scale(Complex::from_polar(1.0, -0.3)))
            .unwrap()
            .add(&hop.adjoint().scale(Complex::from_polar(1.0, 0.3)))
            .unwrap()
            .scale_real(1.7);
        assert!(h.max_abs_diff(&expected) < 1e-15);
    }

    #[test]
    fn invalid_params_rejected() {
        let bad = [
            ModelParams {
                lambda: 0.0,
                ..Default::default()
            },
            ModelParams {
                tau: -1.0,
                ..Default::default()
            },
            ModelParams {
                b_s: -0.1,
                ..Default::default()
            },
            ModelParams {
                n_y: f64::NAN,
                ..Default::default()
            },
        ];
        let names = ["lambda", "tau", "b_s", "n_y"];
        for (p, name) in bad.iter().zip(names) {
            match build_h0(p) {
                Err(Error::Validation { field, .. }) => assert_eq!(field, name),
                other => panic!("expected validation error, got {other:?}"),
            }
        }
    }

    #[test]
    fn closed_form_limits() {
        let p = ModelParams {
            eta: 0.0,
            ..Default::default()
        };
        let s = closed_form_spectrum(&p);
        assert_eq!((s.e1, s.e2, s.e3, s.e4), (0.0, 2.0, 0.0, 2.0));

        let s = closed_form_spectrum(&ModelParams::default());
        assert!(close(s.e1, 1.0 - 8.5f64.sqrt(), 1e-15));
        assert!(close(s.e1, -1.91548, 1e-5));
        assert!(close(s.e2, 3.91548, 1e-5));
        assert!(close(s.e3, -1.54951, 1e-5));
        assert!(close(s.e4, 3.54951, 1e-5));
        assert!(s.e1 < s.e2 && s.e3 < s.e4);
    }

    #[test]
    fn numerical_spectrum_matches_closed_form() {
        let p = ModelParams::default();
        let eig = hermitian_eigen(&build_h0(&p).unwrap(), 1e-12).unwrap();
        let expected = [
            1.0 - 8.5f64.sqrt(),
            1.0 - 6.5f64.sqrt(),
            1.0 + 6.5f64.sqrt(),
            1.0 + 8.5f64.sqrt(),
        ];
        for (a, b) in eig.values.iter().zip(expected) {
            assert!(close(*a, b, 1e-10), "{a} vs {b}");
        }
    }

    #[test]
    fn ground_state_properties() {
        let p = ModelParams::default();
        let rho = ground_state(&p).unwrap();
        let h0 = build_h0(&p).unwrap();
        let (k1, k2) = p.momentum_ratios();
        let e1 = 1.0 - (1.0 + k1 * k1 + 2.0 * k1 + k2 * k2).sqrt();
        assert!(close(energy(&rho, &h0).unwrap(), e1, 1e-10));
        assert!((rho.matrix().trace() - ONE).norm() < 1e-12);
        let purity = rho.matrix().mul(rho.matrix()).unwrap().trace().re;
        assert!(close(purity, 1.0, 1e-10));
        assert!(ergotropy(&rho, &h0).unwrap().abs() < 1e-10);
    }

    #[test]
    fn degenerate_ground_is_an_error() {
        // η = 0 gives E = {0, 0, 2, 2}.
        let p = ModelParams {
            eta: 0.0,
            ..Default::default()
        };
        assert!(matches!(
            ground_state(&p),
            Err(Error::DegenerateGround { .. })
        ));
    }

    #[test]
    fn pulse_shape() {
        let p = ModelParams {
            b_s: 2.0,
            ..Default::default()
        };
        assert_eq!(
            pulse_hamiltonian(&p, 0.0),
            ComplexMatrix::from_diagonal(&[2.0, -2.0, 2.0, -2.0])
        );
        let at_tau = pulse_hamiltonian(&p, p.tau);
        assert!(close(at_tau[(0, 0)].re / 2.0, (-0.5f64).exp(), 1e-15));
        assert!(close((-0.5f64).exp(), 0.60653, 1e-5));
        for t in [-10.0, 10.0] {
            assert!(pulse_hamiltonian(&p, t * p.tau).max_abs() < p.b_s * 2e-22);
        }
        for t in [-3.0, 0.0, 0.4, 7.0] {
            assert_eq!(pulse_hamiltonian(&p, t).trace().norm(), 0.0);
        }
    }

    #[test]
    fn pulse_commutation() {
        let p = ModelParams {
            b_s: 1.3,
            ..Default::default()
        };
        let a = pulse_hamiltonian(&p, 0.2);
        let b = pulse_hamiltonian(&p, -1.7);
        assert_eq!(a.commutator(&b).unwrap(), ComplexMatrix::zeros(4));
        let h0 = build_h0(&p).unwrap();
        assert!(h0.commutator(&a).unwrap().max_abs() > 0.1);
    }
}
