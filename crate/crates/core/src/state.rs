//! Pure states, density matrices and the operations that move between them.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix, ZERO};

pub const NORM_TOL: f64 = 1e-12;
pub const HERMITIAN_TOL: f64 = 1e-12;
pub const TRACE_TOL: f64 = 1e-10;
pub const PSD_TOL: f64 = 1e-10;

/// Pure state of `num_qubits` qubits. Amplitude index bits are read with
/// qubit 0 as the most significant bit.
#[derive(Clone, Debug, PartialEq)]
pub struct PureState {
    num_qubits: usize,
    amplitudes: Vec<Complex64>,
}

impl PureState {
    /// Wraps amplitudes that must already be normalized.
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self> {
        let num_qubits = qubits_for_len(amplitudes.len())?;
        let norm = norm(&amplitudes);
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::arg(format!("state norm is {norm}, expected 1")));
        }
        Ok(Self {
            num_qubits,
            amplitudes,
        })
    }

    /// Wraps arbitrary nonzero amplitudes, rescaling them to unit norm.
    pub fn normalized(mut amplitudes: Vec<Complex64>) -> Result<Self> {
        let num_qubits = qubits_for_len(amplitudes.len())?;
        let norm = norm(&amplitudes);
        if !(norm > 0.0 && norm.is_finite()) {
            return Err(Error::arg("cannot normalize a zero or non-finite vector"));
        }
        amplitudes.iter_mut().for_each(|a| *a /= norm);
        Ok(Self {
            num_qubits,
            amplitudes,
        })
    }

    pub fn basis(num_qubits: usize, index: usize) -> Result<Self> {
        let dim = dim_for(num_qubits)?;
        if index >= dim {
            return Err(Error::arg(format!(
                "basis index {index} out of range for {num_qubits} qubits"
            )));
        }
        let mut amplitudes = vec![ZERO; dim];
        amplitudes[index] = Complex64::new(1.0, 0.0);
        Ok(Self {
            num_qubits,
            amplitudes,
        })
    }

    /// `|+⟩^⊗n`
    pub fn plus(num_qubits: usize) -> Result<Self> {
        let dim = dim_for(num_qubits)?;
        let a = Complex64::new((dim as f64).sqrt().recip(), 0.0);
        Ok(Self {
            num_qubits,
            amplitudes: vec![a; dim],
        })
    }

    /// `(|0…0⟩ + |1…1⟩)/√2`
    pub fn ghz(num_qubits: usize) -> Result<Self> {
        let dim = dim_for(num_qubits)?;
        let mut amplitudes = vec![ZERO; dim];
        let h = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        amplitudes[0] = h;
        amplitudes[dim - 1] = h;
        Ok(Self {
            num_qubits,
            amplitudes,
        })
    }

    /// Equal superposition of all weight-one basis states.
    pub fn w(num_qubits: usize) -> Result<Self> {
        let dim = dim_for(num_qubits)?;
        let mut amplitudes = vec![ZERO; dim];
        let a = Complex64::new((num_qubits as f64).sqrt().recip(), 0.0);
        for q in 0..num_qubits {
            amplitudes[1 << q] = a;
        }
        Ok(Self {
            num_qubits,
            amplitudes,
        })
    }

    /// Tensor product of single-qubit states, each given as `[⟨0|v⟩, ⟨1|v⟩]`.
    pub fn product(factors: &[[Complex64; 2]]) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::arg("product state needs at least one factor"));
        }
        let mut amplitudes = vec![Complex64::new(1.0, 0.0)];
        for f in factors {
            amplitudes = amplitudes
                .iter()
                .flat_map(|&a| [a * f[0], a * f[1]])
                .collect();
        }
        Self::normalized(amplitudes)
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        norm(&self.amplitudes)
    }

    /// In-place controlled-phase: multiplies by `e^{iφ}` every amplitude
    /// whose basis index has both bit `k` and bit `l` set.
    pub fn apply_controlled_phase(&mut self, k: usize, l: usize, phi: f64) -> Result<()> {
        let n = self.num_qubits;
        if k >= n || l >= n {
            return Err(Error::arg(format!(
                "qubit index out of range ({k}, {l}) for {n} qubits"
            )));
        }
        if k == l {
            return Err(Error::arg(format!(
                "controlled phase needs distinct qubits, got {k} twice"
            )));
        }
        let phi = phi.rem_euclid(std::f64::consts::TAU);
        if phi == 0.0 {
            return Ok(());
        }
        let phase = Complex64::from_polar(1.0, phi);
        let mask = bit(n, k) | bit(n, l);
        for (i, a) in self.amplitudes.iter_mut().enumerate() {
            if i & mask == mask {
                *a *= phase;
            }
        }
        Ok(())
    }
}

fn norm(v: &[Complex64]) -> f64 {
    v.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
}

fn qubits_for_len(len: usize) -> Result<usize> {
    if len < 2 || !len.is_power_of_two() {
        return Err(Error::arg(format!(
            "amplitude vector length {len} is not 2^n with n >= 1"
        )));
    }
    Ok(len.trailing_zeros() as usize)
}

fn dim_for(num_qubits: usize) -> Result<usize> {
    if num_qubits == 0 {
        return Err(Error::arg("a state needs at least one qubit"));
    }
    if num_qubits > 30 {
        return Err(Error::capacity(format!("{num_qubits} qubits")));
    }
    Ok(1 << num_qubits)
}

/// Mask of qubit `q` in an `n`-qubit basis index.
#[inline]
pub(crate) fn bit(n: usize, q: usize) -> usize {
    1 << (n - 1 - q)
}

/// Strictly increasing set of qubit indices drawn from `0..parent`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QubitSubset {
    indices: Vec<usize>,
    parent: usize,
}

impl QubitSubset {
    pub fn new(mut indices: Vec<usize>, parent: usize) -> Result<Self> {
        indices.sort_unstable();
        if let Some(&bad) = indices.iter().find(|&&q| q >= parent) {
            return Err(Error::arg(format!(
                "qubit {bad} out of range for {parent} qubits"
            )));
        }
        if indices.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::arg("duplicate qubit index in subset"));
        }
        Ok(Self { indices, parent })
    }

    pub(crate) fn from_mask(mask: usize, parent: usize) -> Self {
        let indices = (0..parent)
            .filter(|&q| mask & bit(parent, q) != 0)
            .collect();
        Self { indices, parent }
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn parent(&self) -> usize {
        self.parent
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn contains(&self, q: usize) -> bool {
        self.indices.binary_search(&q).is_ok()
    }

    pub fn complement(&self) -> Self {
        let indices = (0..self.parent).filter(|&q| !self.contains(q)).collect();
        Self {
            indices,
            parent: self.parent,
        }
    }
}

/// Density operator of one or more qubits.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    matrix: CMatrix,
}

impl DensityMatrix {
    /// Validates Hermiticity, unit trace and positivity.
    pub fn new(matrix: CMatrix) -> Result<Self> {
        let rho = Self::from_raw(matrix)?;
        rho.validate()?;
        Ok(rho)
    }

    /// Shape checks only; for matrices produced by trusted constructions.
    pub(crate) fn from_raw(matrix: CMatrix) -> Result<Self> {
        if !matrix.is_square() || !matrix.nrows().is_power_of_two() || matrix.nrows() < 2 {
            return Err(Error::arg(format!(
                "density matrix must be 2^n x 2^n, got {}x{}",
                matrix.nrows(),
                matrix.ncols()
            )));
        }
        Ok(Self { matrix })
    }

    pub fn from_pure(state: &PureState) -> Self {
        let v = nalgebra::DVector::from_column_slice(state.amplitudes());
        Self {
            matrix: &v * v.adjoint(),
        }
    }

    /// Maximally mixed state on `num_qubits` qubits.
    pub fn maximally_mixed(num_qubits: usize) -> Result<Self> {
        let dim = dim_for(num_qubits)?;
        Ok(Self {
            matrix: CMatrix::identity(dim, dim).map(|z| z / dim as f64),
        })
    }

    /// Re-checks every invariant; returns the first violation.
    pub fn validate(&self) -> Result<()> {
        let defect = linalg::hermiticity_defect(&self.matrix);
        if defect > HERMITIAN_TOL {
            return Err(Error::arg(format!(
                "density matrix not Hermitian (defect {defect:.3e})"
            )));
        }
        let tr = self.matrix.trace();
        if (tr.re - 1.0).abs() > TRACE_TOL || tr.im.abs() > TRACE_TOL {
            return Err(Error::arg(format!(
                "density matrix trace is {tr}, expected 1"
            )));
        }
        let lowest = self.eigenvalues().last().copied().unwrap_or(0.0);
        if lowest < -PSD_TOL {
            return Err(Error::arg(format!(
                "density matrix has eigenvalue {lowest:.3e} < 0"
            )));
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn num_qubits(&self) -> usize {
        self.dim().trailing_zeros() as usize
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> CMatrix {
        self.matrix
    }

    pub fn trace(&self) -> Complex64 {
        self.matrix.trace()
    }

    /// Eigenvalues in descending order.
    pub fn eigenvalues(&self) -> Vec<f64> {
        linalg::eigenvalues_unchecked(&self.matrix)
    }

    pub fn purity(&self) -> f64 {
        self.matrix.iter().map(|z| z.norm_sqr()).sum()
    }
}

pub fn controlled_phase(state: &PureState, k: usize, l: usize, phi: f64) -> Result<PureState> {
    let mut out = state.clone();
    out.apply_controlled_phase(k, l, phi)?;
    Ok(out)
}

/// Amplitudes reshaped to `2^|keep| × 2^(N−|keep|)`, kept qubits indexing
/// rows. Both index halves preserve the global qubit order.
pub(crate) fn bipartite_matrix(state: &PureState, keep: &QubitSubset) -> CMatrix {
    let n = state.num_qubits();
    let ka = keep.len();
    let kb = n - ka;
    let rest = keep.complement();
    let mut m = CMatrix::zeros(1 << ka, 1 << kb);
    for (i, &amp) in state.amplitudes().iter().enumerate() {
        let row = gather_bits(i, n, keep.indices());
        let col = gather_bits(i, n, rest.indices());
        m[(row, col)] = amp;
    }
    m
}

/// Compresses the bits of `index` at `qubits` into a `qubits.len()`-bit
/// integer, first listed qubit most significant.
#[inline]
pub(crate) fn gather_bits(index: usize, n: usize, qubits: &[usize]) -> usize {
    qubits.iter().fold(0, |acc, &q| {
        (acc << 1) | usize::from(index & bit(n, q) != 0)
    })
}

/// Inverse of [`gather_bits`] for a pair of complementary subsets.
#[inline]
fn scatter_bits(a: usize, a_qubits: &[usize], b: usize, b_qubits: &[usize], n: usize) -> usize {
    let mut index = 0;
    for (pos, &q) in a_qubits.iter().enumerate() {
        if a >> (a_qubits.len() - 1 - pos) & 1 == 1 {
            index |= bit(n, q);
        }
    }
    for (pos, &q) in b_qubits.iter().enumerate() {
        if b >> (b_qubits.len() - 1 - pos) & 1 == 1 {
            index |= bit(n, q);
        }
    }
    index
}

fn check_proper(keep: &QubitSubset, n: usize) -> Result<()> {
    if keep.parent() != n {
        return Err(Error::arg(format!(
            "subset defined over {} qubits, state has {n}",
            keep.parent()
        )));
    }
    if keep.is_empty() || keep.len() == n {
        return Err(Error::arg("kept subset must be nonempty and proper"));
    }
    Ok(())
}

/// Like [`partial_trace_pure`], but keeping every qubit yields `|ψ⟩⟨ψ|`.
pub(crate) fn reduce_pure(state: &PureState, keep: &QubitSubset) -> Result<DensityMatrix> {
    if keep.parent() == state.num_qubits() && keep.len() == state.num_qubits() {
        return Ok(DensityMatrix::from_pure(state));
    }
    partial_trace_pure(state, keep)
}

/// `Tr_B |ψ⟩⟨ψ|` computed as `M M†`.
pub fn partial_trace_pure(state: &PureState, keep: &QubitSubset) -> Result<DensityMatrix> {
    check_proper(keep, state.num_qubits())?;
    let m = bipartite_matrix(state, keep);
    Ok(DensityMatrix {
        matrix: &m * m.adjoint(),
    })
}

pub fn partial_trace_mixed(
    rho: &DensityMatrix,
    num_qubits: usize,
    keep: &QubitSubset,
) -> Result<DensityMatrix> {
    if rho.dim() != 1usize.checked_shl(num_qubits as u32).unwrap_or(0) {
        return Err(Error::arg(format!(
            "density matrix of dimension {} does not describe {num_qubits} qubits",
            rho.dim()
        )));
    }
    check_proper(keep, num_qubits)?;
    let rest = keep.complement();
    let da = 1 << keep.len();
    let db = 1 << rest.len();
    let m = rho.matrix();
    let out = CMatrix::from_fn(da, da, |r, c| {
        (0..db)
            .map(|b| {
                let i = scatter_bits(r, keep.indices(), b, rest.indices(), num_qubits);
                let j = scatter_bits(c, keep.indices(), b, rest.indices(), num_qubits);
                m[(i, j)]
            })
            .sum()
    });
    Ok(DensityMatrix { matrix: out })
}

/// `a ⊗ b`, with `a` on the leading qubits.
pub fn tensor_product(a: &DensityMatrix, b: &DensityMatrix) -> DensityMatrix {
    DensityMatrix {
        matrix: linalg::kron(a.matrix(), b.matrix()),
    }
}

/// Von Neumann entropy in bits.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> f64 {
    linalg::entropy_bits(&rho.eigenvalues())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::max_abs_diff;
    use std::f64::consts::{FRAC_1_SQRT_2, PI};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn bell() -> PureState {
        PureState::new(vec![
            c(FRAC_1_SQRT_2, 0.0),
            c(0.0, 0.0),
            c(0.0, 0.0),
            c(FRAC_1_SQRT_2, 0.0),
        ])
        .unwrap()
    }

    fn dm(rows: &[&[Complex64]]) -> CMatrix {
        CMatrix::from_fn(rows.len(), rows.len(), |r, col| rows[r][col])
    }

    fn subset(ix: &[usize], n: usize) -> QubitSubset {
        QubitSubset::new(ix.to_vec(), n).unwrap()
    }

    #[test]
    fn controlled_phase_examples() {
        let out = controlled_phase(&PureState::plus(2).unwrap(), 0, 1, PI).unwrap();
        let expected = [0.5, 0.5, 0.5, -0.5];
        for (a, e) in out.amplitudes().iter().zip(expected) {
            assert!((a - c(e, 0.0)).norm() < 1e-15);
        }

        let psi = PureState::w(3).unwrap();
        assert_eq!(controlled_phase(&psi, 0, 2, 0.0).unwrap(), psi);

        let one_one = PureState::basis(2, 3).unwrap();
        let out = controlled_phase(&one_one, 1, 0, PI / 2.0).unwrap();
        assert!((out.amplitudes()[3] - c(0.0, 1.0)).norm() < 1e-15);
    }

    #[test]
    fn controlled_phase_rejects_bad_indices() {
        let psi = PureState::plus(3).unwrap();
        assert!(matches!(
            controlled_phase(&psi, 0, 3, 1.0),
            Err(Error::Argument(_))
        ));
        assert!(matches!(
            controlled_phase(&psi, 1, 1, 1.0),
            Err(Error::Argument(_))
        ));
    }

    #[test]
    fn partial_trace_pure_examples() {
        let r = partial_trace_pure(&bell(), &subset(&[0], 2)).unwrap();
        let half = CMatrix::identity(2, 2).map(|z| z * 0.5);
        assert!(max_abs_diff(r.matrix(), &half) < 1e-15);

        let h = FRAC_1_SQRT_2;
        let zero_plus =
            PureState::product(&[[c(1.0, 0.0), c(0.0, 0.0)], [c(h, 0.0), c(h, 0.0)]]).unwrap();
        let r = partial_trace_pure(&zero_plus, &subset(&[1], 2)).unwrap();
        assert!(max_abs_diff(r.matrix(), &CMatrix::from_element(2, 2, c(0.5, 0.0))) < 1e-15);

        let r = partial_trace_pure(&PureState::ghz(3).unwrap(), &subset(&[0, 1], 3)).unwrap();
        let mut expected = CMatrix::zeros(4, 4);
        expected[(0, 0)] = c(0.5, 0.0);
        expected[(3, 3)] = c(0.5, 0.0);
        assert!(max_abs_diff(r.matrix(), &expected) < 1e-15);
        r.validate().unwrap();
    }

    #[test]
    fn partial_trace_pure_rejects_trivial_cuts() {
        let psi = PureState::plus(3).unwrap();
        assert!(partial_trace_pure(&psi, &subset(&[], 3)).is_err());
        assert!(partial_trace_pure(&psi, &subset(&[0, 1, 2], 3)).is_err());
        assert!(partial_trace_pure(&psi, &subset(&[0], 4)).is_err());
    }

    #[test]
    fn partial_trace_keeps_non_contiguous_order() {
        // |0⟩|1⟩|0⟩: keeping {0, 2} leaves |00⟩, keeping {1, 2} leaves |10⟩
        let psi = PureState::basis(3, 0b010).unwrap();
        let r = partial_trace_pure(&psi, &subset(&[0, 2], 3)).unwrap();
        assert!((r.matrix()[(0, 0)].re - 1.0).abs() < 1e-15);
        let r = partial_trace_pure(&psi, &subset(&[1, 2], 3)).unwrap();
        assert!((r.matrix()[(2, 2)].re - 1.0).abs() < 1e-15);
    }

    #[test]
    fn partial_trace_mixed_examples() {
        let phi = DensityMatrix::from_pure(&bell());
        let r = partial_trace_mixed(&phi, 2, &subset(&[1], 2)).unwrap();
        assert!(max_abs_diff(r.matrix(), &CMatrix::identity(2, 2).map(|z| z * 0.5)) < 1e-15);

        let a = DensityMatrix::new(dm(&[
            &[c(0.7, 0.0), c(0.1, 0.2)],
            &[c(0.1, -0.2), c(0.3, 0.0)],
        ]))
        .unwrap();
        let b = DensityMatrix::new(dm(&[
            &[c(0.4, 0.0), c(0.0, -0.3)],
            &[c(0.0, 0.3), c(0.6, 0.0)],
        ]))
        .unwrap();
        let r = partial_trace_mixed(&tensor_product(&a, &b), 2, &subset(&[0], 2)).unwrap();
        assert!(max_abs_diff(r.matrix(), a.matrix()) < 1e-15);
        let r = partial_trace_mixed(&tensor_product(&a, &b), 2, &subset(&[1], 2)).unwrap();
        assert!(max_abs_diff(r.matrix(), b.matrix()) < 1e-15);

        let mixed = DensityMatrix::maximally_mixed(2).unwrap();
        let r = partial_trace_mixed(&mixed, 2, &subset(&[0], 2)).unwrap();
        assert!(max_abs_diff(r.matrix(), &CMatrix::identity(2, 2).map(|z| z * 0.5)) < 1e-15);

        assert!(partial_trace_mixed(&mixed, 3, &subset(&[0], 3)).is_err());
    }

    #[test]
    fn entropy_examples() {
        assert!(
            von_neumann_entropy(&DensityMatrix::from_pure(&PureState::ghz(3).unwrap())).abs()
                < 1e-12
        );
        assert!(
            (von_neumann_entropy(&DensityMatrix::maximally_mixed(1).unwrap()) - 1.0).abs() < 1e-14
        );
        assert!(
            (von_neumann_entropy(&DensityMatrix::maximally_mixed(2).unwrap()) - 2.0).abs() < 1e-14
        );
    }

    #[test]
    fn tensor_product_examples() {
        let half = DensityMatrix::maximally_mixed(1).unwrap();
        let quarter = DensityMatrix::maximally_mixed(2).unwrap();
        assert!(max_abs_diff(tensor_product(&half, &half).matrix(), quarter.matrix()) < 1e-15);

        let zero = DensityMatrix::from_pure(&PureState::basis(1, 0).unwrap());
        let one = DensityMatrix::from_pure(&PureState::basis(1, 1).unwrap());
        let expected = DensityMatrix::from_pure(&PureState::basis(2, 1).unwrap());
        assert_eq!(tensor_product(&zero, &one), expected);
    }

    #[test]
    fn density_matrix_validation() {
        let mut m = CMatrix::identity(2, 2).map(|z| z * 0.5);
        m[(0, 1)] = c(0.1, 0.0);
        assert!(DensityMatrix::new(m.clone()).is_err());
        m[(1, 0)] = c(0.1, 0.0);
        assert!(DensityMatrix::new(m).is_ok());
        assert!(DensityMatrix::new(CMatrix::identity(2, 2)).is_err());
        assert!(DensityMatrix::new(dm(&[
            &[c(1.2, 0.0), c(0.0, 0.0)],
            &[c(0.0, 0.0), c(-0.2, 0.0)]
        ]))
        .is_err());
        assert!(DensityMatrix::new(CMatrix::identity(3, 3).map(|z| z / 3.0)).is_err());
    }

    #[test]
    fn pure_state_constructors_validate() {
        assert!(PureState::new(vec![c(1.0, 0.0), c(1.0, 0.0)]).is_err());
        assert!(PureState::new(vec![c(1.0, 0.0); 3]).is_err());
        assert!(PureState::normalized(vec![c(0.0, 0.0); 4]).is_err());
        assert!(QubitSubset::new(vec![1, 1], 3).is_err());
        assert!(QubitSubset::new(vec![3], 3).is_err());
        assert_eq!(QubitSubset::new(vec![2, 0], 3).unwrap().indices(), &[0, 2]);
    }
}
