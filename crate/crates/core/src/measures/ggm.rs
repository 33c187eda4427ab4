use crate::error::{Error, Result};
use crate::linalg;
use crate::state::{bipartite_matrix, bit, PureState, QubitSubset};

/// A later bipartition only replaces the incumbent maximum when it beats it
/// by more than this, so exact ties resolve toward the smallest block size.
pub const TIE_TOL: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq)]
pub struct GgmResult {
    /// `1 − lambda_max_sq`
    pub value: f64,
    /// Largest squared Schmidt coefficient over all bipartitions.
    pub lambda_max_sq: f64,
    /// The smaller block of the maximizing bipartition.
    pub argmax_bipartition: QubitSubset,
    /// `per_k_max[k − 1]` is the largest eigenvalue over blocks of size `k`.
    pub per_k_max: Vec<f64>,
}

fn largest_eigenvalue(state: &PureState, block: &QubitSubset) -> f64 {
    let m = bipartite_matrix(state, block);
    let rdm = &m * m.adjoint();
    linalg::eigenvalues_unchecked(&rdm)[0]
}

fn scan<I>(state: &PureState, blocks_of_size: impl Fn(usize) -> I) -> Result<GgmResult>
where
    I: Iterator<Item = QubitSubset>,
{
    let n = state.num_qubits();
    if n < 2 {
        return Err(Error::arg("GGM needs at least two qubits"));
    }
    let mut per_k_max = Vec::with_capacity(n / 2);
    let mut best: Option<(f64, QubitSubset)> = None;
    for k in 1..=n / 2 {
        let mut k_max = f64::NEG_INFINITY;
        for block in blocks_of_size(k) {
            let lambda = largest_eigenvalue(state, &block);
            k_max = k_max.max(lambda);
            let better = match &best {
                None => true,
                Some((b, _)) => lambda > b + TIE_TOL,
            };
            if better {
                best = Some((lambda, block));
            }
        }
        per_k_max.push(k_max);
    }
    let (lambda_max_sq, argmax_bipartition) = best.expect("at least one bipartition");
    let lambda_max_sq = lambda_max_sq.min(1.0);
    Ok(GgmResult {
        value: 1.0 - lambda_max_sq,
        lambda_max_sq,
        argmax_bipartition,
        per_k_max,
    })
}

/// Blocks of size `k` of an `n`-qubit register, each bipartition counted
/// once: at `k = n/2` only blocks holding qubit 0 are produced.
fn blocks(n: usize, k: usize) -> impl Iterator<Item = QubitSubset> {
    let first = bit(n, 0);
    let half = 2 * k == n;
    let limit = 1usize << n;
    let mut mask = (1usize << k) - 1;
    std::iter::from_fn(move || {
        while mask < limit {
            let current = mask;
            // Gosper: next integer with the same popcount
            let low = mask & mask.wrapping_neg();
            let ripple = mask + low;
            mask = (((ripple ^ mask) >> 2) / low) | ripple;
            if !half || current & first != 0 {
                return Some(QubitSubset::from_mask(current, n));
            }
        }
        None
    })
}

/// Generalised geometric measure by scanning every bipartition.
pub fn ggm(state: &PureState) -> Result<GgmResult> {
    let n = state.num_qubits();
    scan(state, |k| blocks(n, k))
}

/// GGM of a permutation-symmetric state: every block of size `k` has the
/// same reduced state, so one representative per size is enough.
pub fn ggm_symmetric(state: &PureState) -> Result<GgmResult> {
    let n = state.num_qubits();
    scan(state, |k| {
        std::iter::once(QubitSubset::from_mask(((1usize << k) - 1) << (n - k), n))
    })
}
