//! Closed forms for the equal-weight fully connected cluster on `N` qubits.
//!
//! Every pair shares `N − 2` outside neighbors and no private ones. Powers
//! go through [`cos_phase_pow`] so `N` in the millions stays finite.

use num_complex::Complex64;

use super::primitives::{apply_direct_link, single_qubit_rdm};
use crate::error::{Error, Result};
use crate::linalg::{cos_phase_pow, hermitian_eigenvalues, CMatrix};
use crate::measures::TIE_TOL;
use crate::state::DensityMatrix;

/// Two-qubit reduced state of the `n_total`-qubit cluster, with or without
/// the link between the pair itself.
pub fn fully_connected_pair_rdm(
    n_total: u64,
    theta: f64,
    include_direct: bool,
) -> Result<DensityMatrix> {
    if n_total < 2 {
        return Err(Error::arg("a pair needs at least two qubits"));
    }
    let shared = n_total - 2;
    let x = cos_phase_pow(0.5 * theta, shared) * 0.25;
    let y = cos_phase_pow(theta, shared) * 0.25;
    let q = Complex64::new(0.25, 0.0);
    #[rustfmt::skip]
    let mut m = CMatrix::from_row_slice(4, 4, &[
        q,        x,        x,        y,
        x.conj(), q,        q,        x,
        x.conj(), q,        q,        x,
        y.conj(), x.conj(), x.conj(), q,
    ]);
    if include_direct {
        apply_direct_link(&mut m, theta);
    }
    DensityMatrix::from_raw(m)
}

/// Single-qubit reduced state: `N − 1` links.
pub fn fully_connected_single_rdm(n_total: u64, theta: f64) -> Result<DensityMatrix> {
    if n_total < 1 {
        return Err(Error::arg("need at least one qubit"));
    }
    Ok(single_qubit_rdm(n_total - 1, theta))
}

/// `½ − ½ |cos^{N−1}(θ/2)|`, from the single-qubit marginal.
///
/// For `N = 4` the two-qubit marginal can carry the larger eigenvalue, so
/// from `N = 4` on it is checked as well and wins only when larger by more
/// than [`TIE_TOL`]. Blocks of three or more never dominate.
pub fn fully_connected_ggm(n_total: u64, theta: f64) -> Result<f64> {
    fully_connected_ggm_block(n_total, theta).map(|(g, _)| g)
}

/// The GGM together with the size of the maximizing block (1 or 2).
pub fn fully_connected_ggm_block(n_total: u64, theta: f64) -> Result<(f64, usize)> {
    if n_total < 2 {
        return Err(Error::arg("GGM needs at least two qubits"));
    }
    let single = 0.5 + 0.5 * cos_phase_pow(0.5 * theta, n_total - 1).norm();
    if n_total < 4 {
        return Ok((1.0 - single, 1));
    }
    let pair = fully_connected_pair_rdm(n_total, theta, true)?;
    let pair_max = hermitian_eigenvalues(pair.matrix())?[0];
    Ok(if pair_max > single + TIE_TOL {
        (1.0 - pair_max, 2)
    } else {
        (1.0 - single, 1)
    })
}
