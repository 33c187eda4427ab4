//! Sweep experiments driven by plain-text configs and written as CSV.

mod config;
mod experiments;
mod pair;
mod record;

pub use config::{parse_angle, parse_theta_grid, ExperimentKind, SweepConfig};
pub use experiments::{
    run, run_fully_connected, run_kicked_top, run_lattice, run_random_states, run_random_weighted,
    MAX_KICKED_TOP_QUBITS, MAX_RANDOM_WEIGHTED_QUBITS,
};
pub use pair::{analyze_pair, parse_complex, parse_density_matrix, PairReport};
pub use record::{format_float, ExperimentRecord, Report, CSV_COLUMNS};
