use num_complex::Complex64;

use super::require_two_qubits;
use crate::error::Result;
use crate::linalg::{hermitian_eigensystem, CMatrix};
use crate::state::DensityMatrix;

/// Eigenvalues of `ρ` below this are treated as eigensolver noise when
/// forming the decomposition `ρ = W W†`.
const RANK_TOL: f64 = 1e-14;

/// Wootters concurrence `max(0, √λ1 − √λ2 − √λ3 − √λ4)`, with `λ` the
/// eigenvalues of `ρ (σy⊗σy) ρ* (σy⊗σy)`.
///
/// With `ρ = W W†` the `√λ` are the singular values of the complex symmetric
/// matrix `Wᵀ (σy⊗σy) W`, which avoids square roots of near-zero
/// eigenvalues.
pub fn concurrence(rho: &DensityMatrix) -> Result<f64> {
    require_two_qubits(rho)?;
    let eig = hermitian_eigensystem(rho.matrix())?;
    let kept: Vec<usize> = (0..4).filter(|&i| eig.values[i] > RANK_TOL).collect();
    if kept.is_empty() {
        return Ok(0.0);
    }
    let w = CMatrix::from_fn(4, kept.len(), |r, c| {
        eig.vectors[(r, kept[c])] * eig.values[kept[c]].sqrt()
    });

    let mut yy = CMatrix::zeros(4, 4);
    yy[(0, 3)] = Complex64::new(-1.0, 0.0);
    yy[(1, 2)] = Complex64::new(1.0, 0.0);
    yy[(2, 1)] = Complex64::new(1.0, 0.0);
    yy[(3, 0)] = Complex64::new(-1.0, 0.0);

    let t = w.transpose() * yy * &w;
    let mut roots: Vec<f64> = t.singular_values().iter().copied().collect();
    roots.sort_by(|a, b| b.total_cmp(a));
    roots.resize(4, 0.0);
    Ok((roots[0] - roots[1] - roots[2] - roots[3]).clamp(0.0, 1.0))
}
