//! Quantifiers of global entanglement and of two-qubit correlations.

mod concurrence;
mod discord;
mod ggm;

pub use concurrence::concurrence;
pub use discord::{
    conditional_entropy, discord, discord_with_basis, DiscordOutcome, DiscordSettings,
    MeasuredSide, MeasurementBasis, Side,
};
pub use ggm::{ggm, ggm_symmetric, GgmResult, TIE_TOL};

use crate::error::{Error, Result};
use crate::state::{partial_trace_mixed, von_neumann_entropy, DensityMatrix, QubitSubset};

pub(crate) fn require_two_qubits(rho: &DensityMatrix) -> Result<()> {
    if rho.dim() != 4 {
        return Err(Error::arg(format!(
            "expected a two-qubit (4x4) density matrix, got dimension {}",
            rho.dim()
        )));
    }
    Ok(())
}

/// Single-qubit marginals `(ρ_A, ρ_B)` of a two-qubit state.
pub fn two_qubit_marginals(rho: &DensityMatrix) -> Result<(DensityMatrix, DensityMatrix)> {
    require_two_qubits(rho)?;
    let a = partial_trace_mixed(rho, 2, &QubitSubset::new(vec![0], 2)?)?;
    let b = partial_trace_mixed(rho, 2, &QubitSubset::new(vec![1], 2)?)?;
    Ok((a, b))
}

/// `I(A:B) = S(A) + S(B) − S(AB)` in bits; roundoff below zero is clipped.
pub fn mutual_information(rho: &DensityMatrix) -> Result<f64> {
    let (a, b) = two_qubit_marginals(rho)?;
    Ok((von_neumann_entropy(&a) + von_neumann_entropy(&b) - von_neumann_entropy(rho)).max(0.0))
}
