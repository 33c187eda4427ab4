//! Equal-weight building blocks for one- and two-qubit reduced states.
//!
//! With every link carrying the same phase `θ`, write
//! `a = e^{-iθ/2} cos(θ/2)` and `A(θ) = e^{-iθ} cos θ`. A qubit with `n`
//! outside links has off-diagonal element `½ aⁿ`; a pair picks up one factor
//! per outside qubit, which yields the fused closed form in [`pair_rdm`].

use std::f64::consts::PI;

use num_complex::Complex64;

use super::WeightedGraph;
use crate::error::{Error, Result};
use crate::linalg::{cos_phase_pow, hadamard, CMatrix};
use crate::state::{tensor_product, DensityMatrix};

/// Connectivity of a two-qubit block inside an equal-weight graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PairNeighborhood {
    /// Outside qubits linked only to the first qubit.
    pub n1: u64,
    /// Outside qubits linked only to the second qubit.
    pub n2: u64,
    /// Outside qubits linked to both.
    pub m: u64,
    /// Whether the pair shares a direct link.
    pub direct: bool,
}

impl PairNeighborhood {
    pub const fn new(n1: u64, n2: u64, m: u64, direct: bool) -> Self {
        Self { n1, n2, m, direct }
    }

    /// Total qubits of the smallest graph realizing this neighborhood.
    pub fn embedding_size(&self) -> u64 {
        2 + self.n1 + self.n2 + self.m
    }

    /// Smallest graph with exactly this neighborhood around qubits 0 and 1,
    /// every link weighted `theta`: the `n1` private neighbors of qubit 0
    /// come first, then the `n2` of qubit 1, then the `m` shared ones.
    pub fn embedding_graph(&self, theta: f64) -> Result<WeightedGraph> {
        let n = self.embedding_size() as usize;
        let mut g = WeightedGraph::new(n);
        if self.direct {
            g.set_weight(0, 1, theta)?;
        }
        let mut next = 2;
        for _ in 0..self.n1 {
            g.set_weight(0, next, theta)?;
            next += 1;
        }
        for _ in 0..self.n2 {
            g.set_weight(1, next, theta)?;
            next += 1;
        }
        for _ in 0..self.m {
            g.set_weight(0, next, theta)?;
            g.set_weight(1, next, theta)?;
            next += 1;
        }
        Ok(g)
    }
}

/// Reduced state of a qubit with `n` outside links of weight `theta`:
/// diagonal ½, off-diagonal `½ aⁿ`.
pub fn single_qubit_rdm(n: u64, theta: f64) -> DensityMatrix {
    let off = cos_phase_pow(0.5 * theta, n) * 0.5;
    let half = Complex64::new(0.5, 0.0);
    let m = CMatrix::from_row_slice(2, 2, &[half, off, off.conj(), half]);
    DensityMatrix::from_raw(m).expect("2x2")
}

/// `U_θ ρ U_θ†` with `U_θ = diag(1, 1, 1, e^{iθ})`.
pub(crate) fn apply_direct_link(m: &mut CMatrix, theta: f64) {
    let phase = Complex64::cis(theta);
    for i in 0..3 {
        m[(i, 3)] *= phase.conj();
        m[(3, i)] *= phase;
    }
}

/// Two-qubit reduced state of an equal-weight graph, evaluated in the fused
/// closed form. Regular for every `theta`, including the Clifford point π.
pub fn pair_rdm(nb: &PairNeighborhood, theta: f64) -> DensityMatrix {
    let a = |p: u64| cos_phase_pow(0.5 * theta, p);
    let q = Complex64::new(0.25, 0.0);
    let mut m = CMatrix::from_element(4, 4, q);
    let upper = [
        ((0, 1), a(nb.n2 + nb.m)),
        ((0, 2), a(nb.n1 + nb.m)),
        ((0, 3), a(nb.n1 + nb.n2) * cos_phase_pow(theta, nb.m)),
        ((1, 2), a(nb.n1) * a(nb.n2).conj()),
        ((1, 3), a(nb.n1 + nb.m)),
        ((2, 3), a(nb.n2 + nb.m)),
    ];
    for ((r, c), v) in upper {
        m[(r, c)] = v * 0.25;
        m[(c, r)] = v.conj() * 0.25;
    }
    if nb.direct {
        apply_direct_link(&mut m, theta);
    }
    DensityMatrix::from_raw(m).expect("4x4")
}

/// How close `cos(θ/2)` may come to zero before the correction matrix is
/// refused.
pub const ETA_SINGULAR_TOL: f64 = 1e-6;

/// Correction matrix for `m` shared outside qubits: all ones except
/// `P_m = (cos θ / cos²(θ/2))^m` on the anti-diagonal corners and
/// `Q_m = cos^{−2m}(θ/2)` on the inner swap entries.
pub fn eta_correction(m: u64, theta: f64) -> Result<[[f64; 4]; 4]> {
    let ch = (0.5 * theta).cos();
    if ch.abs() <= ETA_SINGULAR_TOL {
        return Err(Error::Singular(format!(
            "correction matrix diverges at theta = {theta} (cos(theta/2) = {ch:.3e}); use pair_rdm"
        )));
    }
    let exp = i32::try_from(m).map_err(|_| Error::arg("shared-neighbor count too large"))?;
    let p = (theta.cos() / (ch * ch)).powi(exp);
    let q = (ch * ch).powi(-exp);
    let mut eta = [[1.0; 4]; 4];
    eta[0][3] = p;
    eta[3][0] = p;
    eta[1][2] = q;
    eta[2][1] = q;
    Ok(eta)
}

/// The literal composition `U_θ [(ρ₁^{n1+m} ⊗ ρ₁^{n2+m}) ⋆ η^m] U_θ†`.
/// Singular near `θ = π`; kept as an independent route to check
/// [`pair_rdm`].
pub fn pair_rdm_via_correction(nb: &PairNeighborhood, theta: f64) -> Result<DensityMatrix> {
    let eta = eta_correction(nb.m, theta)?;
    let eta = CMatrix::from_fn(4, 4, |r, c| Complex64::new(eta[r][c], 0.0));
    let product = tensor_product(
        &single_qubit_rdm(nb.n1 + nb.m, theta),
        &single_qubit_rdm(nb.n2 + nb.m, theta),
    );
    let mut m = hadamard(product.matrix(), &eta);
    if nb.direct {
        apply_direct_link(&mut m, theta);
    }
    DensityMatrix::from_raw(m)
}

/// `θ` values used throughout the equivalence tests.
pub const REFERENCE_THETAS: [f64; 5] = [0.3, PI / 2.0, 2.0, PI, 4.0];
