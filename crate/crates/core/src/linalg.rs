//! Small dense complex linear algebra shared by the rest of the crate.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type CMatrix = DMatrix<Complex64>;

/// Hermiticity tolerance accepted by the eigensolver.
pub const HERMITIAN_TOL: f64 = 1e-10;

pub const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Eigen-decomposition of a Hermitian matrix with eigenvalues sorted in
/// descending order. Column `i` of `vectors` belongs to `values[i]`.
#[derive(Clone, Debug)]
pub struct Eigensystem {
    pub values: Vec<f64>,
    pub vectors: CMatrix,
}

impl Eigensystem {
    /// `V diag(values) V†`
    pub fn reconstruct(&self) -> CMatrix {
        let d = DMatrix::from_diagonal(&DVector::from_iterator(
            self.values.len(),
            self.values.iter().map(|&v| Complex64::new(v, 0.0)),
        ));
        &self.vectors * d * self.vectors.adjoint()
    }
}

pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    assert_eq!(a.shape(), b.shape());
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// Largest entry of `|H - H†|`.
pub fn hermiticity_defect(h: &CMatrix) -> f64 {
    let n = h.nrows();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in i..n {
            worst = worst.max((h[(i, j)] - h[(j, i)].conj()).norm());
        }
    }
    worst
}

fn check_hermitian(h: &CMatrix) -> Result<()> {
    if !h.is_square() {
        return Err(Error::arg(format!(
            "expected a square matrix, got {}x{}",
            h.nrows(),
            h.ncols()
        )));
    }
    let defect = hermiticity_defect(h);
    if defect > HERMITIAN_TOL {
        return Err(Error::arg(format!(
            "matrix is not Hermitian (max |H - H^dagger| = {defect:.3e})"
        )));
    }
    Ok(())
}

fn symmetrized(h: &CMatrix) -> CMatrix {
    (h + h.adjoint()).map(|z| z * 0.5)
}

pub fn hermitian_eigensystem(h: &CMatrix) -> Result<Eigensystem> {
    check_hermitian(h)?;
    let eig = symmetrized(h).symmetric_eigen();
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = CMatrix::from_fn(h.nrows(), order.len(), |r, c| {
        eig.eigenvectors[(r, order[c])]
    });
    Ok(Eigensystem { values, vectors })
}

/// Eigenvalues only, descending.
pub fn hermitian_eigenvalues(h: &CMatrix) -> Result<Vec<f64>> {
    check_hermitian(h)?;
    Ok(eigenvalues_unchecked(h))
}

pub(crate) fn eigenvalues_unchecked(h: &CMatrix) -> Vec<f64> {
    if h.nrows() == 2 {
        let (hi, lo) = eigenvalues_2x2(h[(0, 0)].re, h[(1, 1)].re, h[(0, 1)]);
        return vec![hi, lo];
    }
    let mut values: Vec<f64> = symmetrized(h)
        .symmetric_eigenvalues()
        .iter()
        .copied()
        .collect();
    values.sort_by(|a, b| b.total_cmp(a));
    values
}

/// Eigenvalues (larger, smaller) of the Hermitian matrix `[[a, c], [c*, d]]`.
#[inline]
pub fn eigenvalues_2x2(a: f64, d: f64, c: Complex64) -> (f64, f64) {
    let mean = 0.5 * (a + d);
    let half_gap = (0.25 * (a - d) * (a - d) + c.norm_sqr()).sqrt();
    (mean + half_gap, mean - half_gap)
}

/// Kronecker product `a ⊗ b`.
pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    let (ar, ac) = a.shape();
    let (br, bc) = b.shape();
    CMatrix::from_fn(ar * br, ac * bc, |r, c| {
        a[(r / br, c / bc)] * b[(r % br, c % bc)]
    })
}

/// Hadamard (elementwise) product.
pub fn hadamard(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.component_mul(b)
}

/// `−Σ λ log2 λ` over eigenvalues clamped into `[0, 1]`.
pub fn entropy_bits(eigenvalues: &[f64]) -> f64 {
    eigenvalues
        .iter()
        .map(|&l| l.clamp(0.0, 1.0))
        .filter(|&l| l > 0.0)
        .map(|l| -l * l.log2())
        .sum::<f64>()
        .max(0.0)
}

/// `(e^{-iφ} cos φ)^p`, evaluated in magnitude/phase form so that huge
/// exponents underflow cleanly to zero instead of producing NaN.
pub fn cos_phase_pow(phi: f64, p: u64) -> Complex64 {
    if p == 0 {
        return ONE;
    }
    let c = phi.cos();
    // cos evaluated at an odd multiple of π/2 lands within a few ulp of zero
    if c.abs() < 1e-15 {
        return ZERO;
    }
    let magnitude = (p as f64 * c.abs().ln()).exp();
    let mut phase = -(p as f64) * phi;
    if c < 0.0 && p % 2 == 1 {
        phase += std::f64::consts::PI;
    }
    Complex64::from_polar(magnitude, phase.rem_euclid(std::f64::consts::TAU))
}
