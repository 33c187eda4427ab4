//! Weighted graph states and their reduced density matrices.
//!
//! A weighted graph state is `∏ C_{φ_kl} |+⟩^⊗n` over the edges of the graph,
//! where `C_φ = diag(1, 1, 1, e^{iφ})`. Reduced states of a block `A` are
//! available three ways: brute force through [`build_graph_state`] and a
//! partial trace, the general elementwise-product formula of
//! [`subsystem_rdm_general`], and the equal-weight closed forms in
//! [`primitives`], [`lattice`] and [`fully_connected`].
//!
//! All matrices use the standard convention `ρ[m][n] = Σ_b ψ(m,b) ψ(n,b)*`.

pub mod fully_connected;
pub mod lattice;
pub mod primitives;

use std::collections::BTreeMap;
use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use crate::state::{bit, DensityMatrix, PureState, QubitSubset};

pub use fully_connected::{
    fully_connected_ggm, fully_connected_ggm_block, fully_connected_pair_rdm,
    fully_connected_single_rdm,
};
pub use lattice::{
    lattice_ggm, lattice_neighborhood, square_lattice_ggm, CaseLabel, LatticeCase, LatticeKind,
};
pub use primitives::{
    eta_correction, pair_rdm, pair_rdm_via_correction, single_qubit_rdm, PairNeighborhood,
    ETA_SINGULAR_TOL, REFERENCE_THETAS,
};

/// Largest graph turned into a full statevector.
pub const MAX_STATEVECTOR_QUBITS: usize = 20;
/// Largest block handled by [`subsystem_rdm_general`].
pub const MAX_GENERAL_BLOCK: usize = 12;

/// Simple undirected graph with a phase `φ_kl ∈ [0, 2π)` on every edge.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct WeightedGraph {
    n: usize,
    weights: BTreeMap<(usize, usize), f64>,
}

impl WeightedGraph {
    pub fn new(n: usize) -> Self {
        Self {
            n,
            weights: BTreeMap::new(),
        }
    }

    /// All `C(n, 2)` edges with the same weight.
    pub fn complete(n: usize, phi: f64) -> Self {
        let mut g = Self::new(n);
        for k in 0..n {
            for l in k + 1..n {
                g.weights.insert((k, l), phi.rem_euclid(TAU));
            }
        }
        g
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize, f64)]) -> Result<Self> {
        let mut g = Self::new(n);
        for &(k, l, phi) in edges {
            g.set_weight(k, l, phi)?;
        }
        Ok(g)
    }

    pub fn set_weight(&mut self, k: usize, l: usize, phi: f64) -> Result<()> {
        if k == l {
            return Err(Error::arg(format!("self-loop on vertex {k}")));
        }
        if k >= self.n || l >= self.n {
            return Err(Error::arg(format!(
                "edge ({k}, {l}) out of range for {} vertices",
                self.n
            )));
        }
        self.weights
            .insert((k.min(l), k.max(l)), phi.rem_euclid(TAU));
        Ok(())
    }

    /// Weight of `(k, l)`; zero when there is no edge.
    pub fn weight(&self, k: usize, l: usize) -> f64 {
        self.weights
            .get(&(k.min(l), k.max(l)))
            .copied()
            .unwrap_or(0.0)
    }

    pub fn num_vertices(&self) -> usize {
        self.n
    }

    pub fn num_edges(&self) -> usize {
        self.weights.len()
    }

    /// Edges as `(k, l, φ)` with `k < l`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        self.weights.iter().map(|(&(k, l), &w)| (k, l, w))
    }

    pub fn degree(&self, v: usize) -> usize {
        self.weights
            .keys()
            .filter(|&&(k, l)| k == v || l == v)
            .count()
    }
}

pub fn build_graph_state(g: &WeightedGraph) -> Result<PureState> {
    if g.n > MAX_STATEVECTOR_QUBITS {
        return Err(Error::capacity(format!(
            "graph state on {} qubits exceeds the {MAX_STATEVECTOR_QUBITS}-qubit statevector limit",
            g.n
        )));
    }
    let mut psi = PureState::plus(g.n)?;
    for (k, l, phi) in g.edges() {
        psi.apply_controlled_phase(k, l, phi)?;
    }
    Ok(psi)
}

/// Reduced state of block `a` from the elementwise product over the outside
/// qubits `l`:
///
/// `ρ'[m][n] ∝ ∏_l ½ (1 + exp(i Σ_{k∈A} φ_kl (m_k − n_k)))`,
///
/// followed by the diagonal unitary of the links inside `a` and trace
/// normalization. Works for arbitrary per-edge weights.
pub fn subsystem_rdm_general(g: &WeightedGraph, a: &QubitSubset) -> Result<DensityMatrix> {
    if a.parent() != g.n {
        return Err(Error::arg(format!(
            "subset over {} qubits, graph has {}",
            a.parent(),
            g.n
        )));
    }
    if a.is_empty() {
        return Err(Error::arg("block must be nonempty"));
    }
    if a.len() > MAX_GENERAL_BLOCK {
        return Err(Error::capacity(format!(
            "block of {} qubits exceeds the limit of {MAX_GENERAL_BLOCK}",
            a.len()
        )));
    }
    let k = a.len();
    let dim = 1usize << k;
    let members = a.indices();
    // Σ_{j∈A} φ_jl x_j for every outside qubit l linked to the block
    let linked: Vec<Vec<f64>> = a
        .complement()
        .indices()
        .iter()
        .filter(|&&l| members.iter().any(|&j| g.weight(j, l) != 0.0))
        .map(|&l| {
            (0..dim)
                .map(|x| phase_sum(x, k, |p| g.weight(members[p], l)))
                .collect()
        })
        .collect();
    let internal: Vec<f64> = (0..dim)
        .map(|x| {
            let mut s = 0.0;
            for p in 0..k {
                for q in p + 1..k {
                    if bit(k, p) & x != 0 && bit(k, q) & x != 0 {
                        s += g.weight(members[p], members[q]);
                    }
                }
            }
            s
        })
        .collect();

    let mut rho = CMatrix::from_fn(dim, dim, |m, n| {
        let outer: Complex64 = linked
            .iter()
            .map(|s| (Complex64::new(1.0, 0.0) + Complex64::cis(s[m] - s[n])) * 0.5)
            .product();
        outer * Complex64::cis(internal[m] - internal[n])
    });
    let tr = rho.trace().re;
    rho /= Complex64::new(tr, 0.0);
    DensityMatrix::from_raw(rho)
}

fn phase_sum(x: usize, k: usize, weight: impl Fn(usize) -> f64) -> f64 {
    (0..k).filter(|&p| x & bit(k, p) != 0).map(weight).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::max_abs_diff;
    use crate::state::partial_trace_pure;
    use std::f64::consts::{FRAC_1_SQRT_2, PI};

    #[test]
    fn graph_state_examples() {
        let psi = build_graph_state(&WeightedGraph::new(1)).unwrap();
        assert!(psi
            .amplitudes()
            .iter()
            .all(|a| (a.re - FRAC_1_SQRT_2).abs() < 1e-15 && a.im == 0.0));

        let cz = build_graph_state(&WeightedGraph::from_edges(2, &[(0, 1, PI)]).unwrap()).unwrap();
        for (a, e) in cz.amplitudes().iter().zip([0.5, 0.5, 0.5, -0.5]) {
            assert!((a - Complex64::new(e, 0.0)).norm() < 1e-15);
        }

        // hand-applied CZ(0,1) CZ(0,2) CZ(1,2): sign −1 on 011, 101, 110, 111
        let tri = build_graph_state(&WeightedGraph::complete(3, PI)).unwrap();
        let expected = [1.0, 1.0, 1.0, -1.0, 1.0, -1.0, -1.0, -1.0];
        for (a, e) in tri.amplitudes().iter().zip(expected) {
            assert!((a - Complex64::new(e / 8f64.sqrt(), 0.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn graph_state_is_order_independent() {
        let edges = [(0, 1, 0.3), (1, 2, 1.7), (0, 3, 2.9), (2, 3, 4.1)];
        let a = build_graph_state(&WeightedGraph::from_edges(4, &edges).unwrap()).unwrap();
        let mut rev = edges;
        rev.reverse();
        let mut psi = PureState::plus(4).unwrap();
        for (k, l, phi) in rev {
            psi.apply_controlled_phase(l, k, phi).unwrap();
        }
        for (x, y) in a.amplitudes().iter().zip(psi.amplitudes()) {
            assert!((x - y).norm() < 1e-15);
        }
    }

    #[test]
    fn graph_validation() {
        let mut g = WeightedGraph::new(3);
        assert!(g.set_weight(1, 1, 1.0).is_err());
        assert!(g.set_weight(0, 3, 1.0).is_err());
        g.set_weight(2, 0, -1.0).unwrap();
        assert!((g.weight(0, 2) - (TAU - 1.0)).abs() < 1e-15);
        assert_eq!(g.weight(0, 1), 0.0);
        assert!(matches!(
            build_graph_state(&WeightedGraph::new(21)),
            Err(Error::Capacity(_))
        ));
    }

    #[test]
    fn general_rdm_matches_brute_force_for_random_weights() {
        let edges = [
            (0, 1, 0.4),
            (0, 2, 2.2),
            (1, 3, 5.1),
            (2, 3, 1.3),
            (3, 4, 3.3),
            (1, 4, 0.9),
            (0, 5, 2.7),
            (4, 5, 4.4),
        ];
        let g = WeightedGraph::from_edges(6, &edges).unwrap();
        let psi = build_graph_state(&g).unwrap();
        for block in [vec![0], vec![1, 3], vec![0, 2, 5], vec![1, 2, 4, 5]] {
            let a = QubitSubset::new(block, 6).unwrap();
            let analytic = subsystem_rdm_general(&g, &a).unwrap();
            let brute = partial_trace_pure(&psi, &a).unwrap();
            assert!(max_abs_diff(analytic.matrix(), brute.matrix()) < 1e-12);
        }
    }

    #[test]
    fn disconnected_block_is_pure() {
        let g = WeightedGraph::from_edges(5, &[(0, 1, 1.1), (2, 3, 0.5), (3, 4, 2.0)]).unwrap();
        let rho = subsystem_rdm_general(&g, &QubitSubset::new(vec![0, 1], 5).unwrap()).unwrap();
        assert!((rho.purity() - 1.0).abs() < 1e-12);
        assert!((rho.eigenvalues()[0] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn general_rdm_capacity() {
        let g = WeightedGraph::new(14);
        let a = QubitSubset::new((0..13).collect(), 14).unwrap();
        assert!(matches!(
            subsystem_rdm_general(&g, &a),
            Err(Error::Capacity(_))
        ));
    }
}
