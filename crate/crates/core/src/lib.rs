//! Genuine multipartite entanglement (GGM) of pure N-qubit states and the
//! nonclassical correlations (quantum discord, concurrence) of their
//! two-qubit subsystems.
//!
//! The crate is organised bottom-up:
//!
//! - [`linalg`] and [`state`]: dense complex matrices, pure states, density
//!   matrices, partial traces and entropies.
//! - [`measures`]: GGM by bipartition scan, discord, concurrence and mutual
//!   information.
//! - [`graph`]: weighted graph states, analytic reduced density matrices and
//!   the lattice / fully connected closed forms.
//! - [`kicked_top`]: Floquet dynamics of the quantum kicked top expanded to
//!   qubits.
//! - [`sampling`]: seeded Haar-random states and random-weighted graphs.
//! - [`runner`]: configuration parsing, the five sweep experiments and CSV
//!   output.
//!
//! Basis ordering is fixed everywhere: qubit 0 is the most significant bit of
//! a computational-basis index.

pub mod error;
pub mod graph;
pub mod kicked_top;
pub mod linalg;
pub mod measures;
pub mod runner;
pub mod sampling;
pub mod state;

pub use error::{Error, Result};
pub use graph::{LatticeCase, LatticeKind, PairNeighborhood, WeightedGraph};
pub use measures::{DiscordSettings, GgmResult, MeasuredSide, MeasurementBasis};
pub use state::{DensityMatrix, PureState, QubitSubset};

pub use num_complex::Complex64;
