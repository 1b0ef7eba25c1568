//! Ergotropy checked against brute force over all level orderings. For a state
//! diagonal in the energy basis the optimal unitary is a permutation, so the
//! minimum over the 24 orderings gives the passive energy directly.

use qbattery_core::matrix::{hermitian_eigen, Complex, ComplexMatrix};
use qbattery_core::{build_h0, ergotropy, DensityMatrix, ModelParams};

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}

#[test]
fn matches_permutation_minimum() {
    let h = build_h0(&ModelParams::default()).unwrap();
    let eig = hermitian_eigen(&h, 1e-12).unwrap();
    let perms = permutations(&[0, 1, 2, 3]);
    assert_eq!(perms.len(), 24);

    let weights = [
        [0.1, 0.2, 0.3, 0.4],
        [0.7, 0.1, 0.15, 0.05],
        [0.0, 0.0, 0.0, 1.0],
        [0.25, 0.25, 0.25, 0.25],
        [0.05, 0.6, 0.05, 0.3],
    ];
    for p in weights {
        // ρ = Σ p_k |E_k⟩⟨E_k|
        let mut m = ComplexMatrix::zeros(4);
        for (k, &pk) in p.iter().enumerate() {
            let proj = ComplexMatrix::outer(&eig.vector(k)).scale(Complex::new(pk, 0.0));
            m = m.add(&proj).unwrap();
        }
        let rho = DensityMatrix::new(m.hermitian_part()).unwrap();
        let e: f64 = p.iter().zip(&eig.values).map(|(a, b)| a * b).sum();
        let min_e = perms
            .iter()
            .map(|perm| {
                perm.iter()
                    .enumerate()
                    .map(|(k, &j)| p[k] * eig.values[j])
                    .sum::<f64>()
            })
            .fold(f64::INFINITY, f64::min);
        let expected = e - min_e;
        let got = ergotropy(&rho, &h).unwrap();
        assert!((got - expected).abs() < 1e-10, "{p:?}: {got} vs {expected}");
    }
}
