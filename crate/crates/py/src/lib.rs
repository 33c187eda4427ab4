//! Python bindings: pure and mixed qubit states, the correlation measures,
//! graph-state closed forms, the kicked top and the sweep runner.

use pyo3::exceptions::{PyIOError, PyMemoryError, PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use qcorr::graph::{self, WeightedGraph};
use qcorr::kicked_top::{self, FloquetOrder, KickedTopParams};
use qcorr::linalg::CMatrix;
use qcorr::measures::{self, DiscordSettings, MeasuredSide};
use qcorr::runner::{self, SweepConfig};
use qcorr::sampling::{self, SeededRng};
use qcorr::state::{self, QubitSubset};
use qcorr::{Complex64, Error, LatticeCase, PairNeighborhood};

fn py_err(e: Error) -> PyErr {
    match e {
        Error::Argument(_) | Error::Config(_) | Error::Singular(_) => {
            PyValueError::new_err(e.to_string())
        }
        Error::Capacity(_) => PyMemoryError::new_err(e.to_string()),
        Error::Io { .. } => PyIOError::new_err(e.to_string()),
        Error::Consistency(_) => PyRuntimeError::new_err(e.to_string()),
    }
}

trait IntoPy<T> {
    fn py(self) -> PyResult<T>;
}

impl<T> IntoPy<T> for qcorr::Result<T> {
    fn py(self) -> PyResult<T> {
        self.map_err(py_err)
    }
}

fn settings(side: &str) -> PyResult<DiscordSettings> {
    Ok(DiscordSettings {
        side: side.parse::<MeasuredSide>().py()?,
        ..DiscordSettings::default()
    })
}

/// A normalized pure state of `n` qubits; qubit 0 is the most significant bit.
#[pyclass(name = "PureState", module = "qcorr", from_py_object)]
#[derive(Clone)]
struct PyPureState {
    inner: state::PureState,
}

#[pymethods]
impl PyPureState {
    /// Amplitudes must have length 2**n and unit norm unless `normalize`.
    #[new]
    #[pyo3(signature = (amplitudes, normalize = false))]
    fn new(amplitudes: Vec<Complex64>, normalize: bool) -> PyResult<Self> {
        let inner = if normalize {
            state::PureState::normalized(amplitudes)
        } else {
            state::PureState::new(amplitudes)
        };
        Ok(Self { inner: inner.py()? })
    }

    #[staticmethod]
    fn ghz(n: usize) -> PyResult<Self> {
        Ok(Self {
            inner: state::PureState::ghz(n).py()?,
        })
    }

    #[staticmethod]
    fn w(n: usize) -> PyResult<Self> {
        Ok(Self {
            inner: state::PureState::w(n).py()?,
        })
    }

    #[staticmethod]
    fn plus(n: usize) -> PyResult<Self> {
        Ok(Self {
            inner: state::PureState::plus(n).py()?,
        })
    }

    #[staticmethod]
    fn basis(n: usize, index: usize) -> PyResult<Self> {
        Ok(Self {
            inner: state::PureState::basis(n, index).py()?,
        })
    }

    #[getter]
    fn num_qubits(&self) -> usize {
        self.inner.num_qubits()
    }

    fn amplitudes(&self) -> Vec<Complex64> {
        self.inner.amplitudes().to_vec()
    }

    /// Reduced state of the listed qubits.
    fn reduced(&self, qubits: Vec<usize>) -> PyResult<PyDensityMatrix> {
        let keep = QubitSubset::new(qubits, self.inner.num_qubits()).py()?;
        Ok(PyDensityMatrix {
            inner: state::partial_trace_pure(&self.inner, &keep).py()?,
        })
    }

    fn apply_controlled_phase(&mut self, k: usize, l: usize, phi: f64) -> PyResult<()> {
        self.inner.apply_controlled_phase(k, l, phi).py()
    }

    fn __len__(&self) -> usize {
        self.inner.amplitudes().len()
    }

    fn __repr__(&self) -> String {
        format!("PureState(num_qubits={})", self.inner.num_qubits())
    }
}

/// A validated density matrix (Hermitian, unit trace, positive semidefinite).
#[pyclass(name = "DensityMatrix", module = "qcorr", from_py_object)]
#[derive(Clone)]
struct PyDensityMatrix {
    inner: state::DensityMatrix,
}

#[pymethods]
impl PyDensityMatrix {
    /// From a square nested list of complex numbers, row-major.
    #[new]
    fn new(rows: Vec<Vec<Complex64>>) -> PyResult<Self> {
        let d = rows.len();
        if rows.iter().any(|r| r.len() != d) {
            return Err(PyValueError::new_err("density matrix must be square"));
        }
        let flat: Vec<Complex64> = rows.into_iter().flatten().collect();
        Ok(Self {
            inner: state::DensityMatrix::new(CMatrix::from_row_slice(d, d, &flat)).py()?,
        })
    }

    #[staticmethod]
    fn from_pure(state: &PyPureState) -> Self {
        Self {
            inner: state::DensityMatrix::from_pure(&state.inner),
        }
    }

    #[staticmethod]
    fn maximally_mixed(n: usize) -> PyResult<Self> {
        Ok(Self {
            inner: state::DensityMatrix::maximally_mixed(n).py()?,
        })
    }

    /// Parses 16 whitespace-separated `re+imi` entries.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Ok(Self {
            inner: runner::parse_density_matrix(text).py()?,
        })
    }

    #[getter]
    fn num_qubits(&self) -> usize {
        self.inner.num_qubits()
    }

    fn matrix(&self) -> Vec<Vec<Complex64>> {
        let m = self.inner.matrix();
        (0..m.nrows())
            .map(|r| (0..m.ncols()).map(|c| m[(r, c)]).collect())
            .collect()
    }

    fn eigenvalues(&self) -> Vec<f64> {
        self.inner.eigenvalues()
    }

    fn purity(&self) -> f64 {
        self.inner.purity()
    }

    fn entropy(&self) -> f64 {
        state::von_neumann_entropy(&self.inner)
    }

    fn reduced(&self, qubits: Vec<usize>) -> PyResult<Self> {
        let n = self.inner.num_qubits();
        let keep = QubitSubset::new(qubits, n).py()?;
        Ok(Self {
            inner: state::partial_trace_mixed(&self.inner, n, &keep).py()?,
        })
    }

    fn tensor(&self, other: &Self) -> Self {
        Self {
            inner: state::tensor_product(&self.inner, &other.inner),
        }
    }

    fn __repr__(&self) -> String {
        format!("DensityMatrix(num_qubits={})", self.inner.num_qubits())
    }
}

/// Geometric measure of entanglement with the maximizing block.
#[pyfunction]
#[pyo3(signature = (state, symmetric = false))]
fn ggm<'py>(py: Python<'py>, state: &PyPureState, symmetric: bool) -> PyResult<Bound<'py, PyDict>> {
    let g = if symmetric {
        measures::ggm_symmetric(&state.inner)
    } else {
        measures::ggm(&state.inner)
    }
    .py()?;
    let d = PyDict::new(py);
    d.set_item("value", g.value)?;
    d.set_item("lambda_max_sq", g.lambda_max_sq)?;
    d.set_item(
        "argmax_bipartition",
        g.argmax_bipartition.indices().to_vec(),
    )?;
    d.set_item("per_k_max", g.per_k_max)?;
    Ok(d)
}

/// Two-qubit discord; `side` is "first", "second" or "min".
#[pyfunction]
#[pyo3(signature = (rho, side = "second"))]
fn discord(rho: &PyDensityMatrix, side: &str) -> PyResult<f64> {
    measures::discord(&rho.inner, &settings(side)?).py()
}

#[pyfunction]
fn concurrence(rho: &PyDensityMatrix) -> PyResult<f64> {
    measures::concurrence(&rho.inner).py()
}

#[pyfunction]
fn mutual_information(rho: &PyDensityMatrix) -> PyResult<f64> {
    measures::mutual_information(&rho.inner).py()
}

/// Every measure of a two-qubit state, as a dict.
#[pyfunction]
#[pyo3(signature = (rho, side = "second"))]
fn analyze_pair<'py>(
    py: Python<'py>,
    rho: &PyDensityMatrix,
    side: &str,
) -> PyResult<Bound<'py, PyDict>> {
    let r = runner::analyze_pair(&rho.inner, &settings(side)?).py()?;
    let d = PyDict::new(py);
    d.set_item("discord", r.discord)?;
    d.set_item("measured", r.measured)?;
    d.set_item("alpha", r.alpha)?;
    d.set_item("beta", r.beta)?;
    d.set_item("conditional_entropy", r.conditional_entropy)?;
    d.set_item("concurrence", r.concurrence)?;
    d.set_item("mutual_information", r.mutual_information)?;
    d.set_item("entropy_a", r.entropy_a)?;
    d.set_item("entropy_b", r.entropy_b)?;
    d.set_item("entropy_ab", r.entropy_ab)?;
    d.set_item("purity", r.purity)?;
    Ok(d)
}

/// Weighted graph state from `(k, l, phi)` edges.
#[pyfunction]
fn graph_state(n: usize, edges: Vec<(usize, usize, f64)>) -> PyResult<PyPureState> {
    let g = WeightedGraph::from_edges(n, &edges).py()?;
    Ok(PyPureState {
        inner: graph::build_graph_state(&g).py()?,
    })
}

/// Reduced state of `qubits` in a weighted graph state, without the statevector.
#[pyfunction]
fn graph_subsystem_rdm(
    n: usize,
    edges: Vec<(usize, usize, f64)>,
    qubits: Vec<usize>,
) -> PyResult<PyDensityMatrix> {
    let g = WeightedGraph::from_edges(n, &edges).py()?;
    let keep = QubitSubset::new(qubits, n).py()?;
    Ok(PyDensityMatrix {
        inner: graph::subsystem_rdm_general(&g, &keep).py()?,
    })
}

/// Closed-form pair state: `n1`, `n2` private neighbours, `m` shared ones.
#[pyfunction]
#[pyo3(signature = (n1, n2, m, direct, theta))]
fn pair_rdm(n1: u64, n2: u64, m: u64, direct: bool, theta: f64) -> PyDensityMatrix {
    PyDensityMatrix {
        inner: graph::pair_rdm(&PairNeighborhood::new(n1, n2, m, direct), theta),
    }
}

/// Pair state of a lattice case such as "square-A" or "triangular-C".
#[pyfunction]
fn lattice_pair_rdm(case: &str, theta: f64) -> PyResult<PyDensityMatrix> {
    let case: LatticeCase = case.parse().py()?;
    let nb = graph::lattice_neighborhood(&case).py()?;
    Ok(PyDensityMatrix {
        inner: graph::pair_rdm(&nb, theta),
    })
}

#[pyfunction]
fn square_lattice_ggm(theta: f64) -> f64 {
    graph::square_lattice_ggm(theta)
}

#[pyfunction]
#[pyo3(signature = (n, theta, direct = true))]
fn fully_connected_pair_rdm(n: u64, theta: f64, direct: bool) -> PyResult<PyDensityMatrix> {
    Ok(PyDensityMatrix {
        inner: graph::fully_connected_pair_rdm(n, theta, direct).py()?,
    })
}

#[pyfunction]
fn fully_connected_ggm(n: u64, theta: f64) -> PyResult<f64> {
    graph::fully_connected_ggm(n, theta).py()
}

/// Seeded Haar-random pure state; `stream` selects an independent sequence.
#[pyfunction]
#[pyo3(signature = (n, seed, stream = 0))]
fn haar_random_pure(n: usize, seed: u64, stream: u64) -> PyResult<PyPureState> {
    let mut rng = SeededRng::new(seed, stream).rng();
    Ok(PyPureState {
        inner: sampling::haar_random_pure(n, &mut rng).py()?,
    })
}

/// Kicked-top trajectory as a list of per-step dicts.
#[pyfunction]
#[pyo3(signature = (
    num_qubits = 8, kappa = 7.0, p = std::f64::consts::FRAC_PI_2, theta0 = 2.25, phi0 = 1.1,
    steps = 200, smoothing_half_width = 4, order = "rotation-then-kick", side = "second",
))]
#[allow(clippy::too_many_arguments)]
fn kicked_top_trajectory<'py>(
    py: Python<'py>,
    num_qubits: usize,
    kappa: f64,
    p: f64,
    theta0: f64,
    phi0: f64,
    steps: usize,
    smoothing_half_width: usize,
    order: &str,
    side: &str,
) -> PyResult<Vec<Bound<'py, PyDict>>> {
    let order: FloquetOrder = order.parse().py()?;
    let params = KickedTopParams {
        num_qubits,
        kappa,
        p,
        theta0,
        phi0,
        steps,
        smoothing_half_width,
        order,
    };
    let records = py.detach(|| kicked_top::trajectory(&params, &settings(side)?).py())?;
    records
        .into_iter()
        .map(|r| {
            let d = PyDict::new(py);
            d.set_item("step", r.step)?;
            d.set_item("norm", r.norm)?;
            d.set_item("ggm", r.ggm)?;
            d.set_item("lambda_max_sq", r.lambda_max_sq)?;
            d.set_item("argmax_size", r.argmax_size)?;
            d.set_item("discord", r.discord)?;
            d.set_item("concurrence", r.concurrence)?;
            d.set_item("mutual_information", r.mutual_information)?;
            d.set_item("smoothed_ggm", r.smoothed_ggm)?;
            d.set_item("smoothed_discord", r.smoothed_discord)?;
            d.set_item("smoothed_concurrence", r.smoothed_concurrence)?;
            Ok(d)
        })
        .collect()
}

/// Runs a sweep from config text and returns the CSV.
#[pyfunction]
#[pyo3(signature = (config, seed = None))]
fn run_experiment(py: Python<'_>, config: &str, seed: Option<u64>) -> PyResult<String> {
    let mut cfg = SweepConfig::parse(config).py()?;
    if let Some(s) = seed {
        cfg.seed = s;
    }
    py.detach(|| runner::run(&cfg).map(|r| r.to_csv_string()).py())
}

#[pymodule]
#[pyo3(name = "qcorr")]
fn qcorr_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add_class::<PyPureState>()?;
    m.add_class::<PyDensityMatrix>()?;
    m.add_function(wrap_pyfunction!(ggm, m)?)?;
    m.add_function(wrap_pyfunction!(discord, m)?)?;
    m.add_function(wrap_pyfunction!(concurrence, m)?)?;
    m.add_function(wrap_pyfunction!(mutual_information, m)?)?;
    m.add_function(wrap_pyfunction!(analyze_pair, m)?)?;
    m.add_function(wrap_pyfunction!(graph_state, m)?)?;
    m.add_function(wrap_pyfunction!(graph_subsystem_rdm, m)?)?;
    m.add_function(wrap_pyfunction!(pair_rdm, m)?)?;
    m.add_function(wrap_pyfunction!(lattice_pair_rdm, m)?)?;
    m.add_function(wrap_pyfunction!(square_lattice_ggm, m)?)?;
    m.add_function(wrap_pyfunction!(fully_connected_pair_rdm, m)?)?;
    m.add_function(wrap_pyfunction!(fully_connected_ggm, m)?)?;
    m.add_function(wrap_pyfunction!(haar_random_pure, m)?)?;
    m.add_function(wrap_pyfunction!(kicked_top_trajectory, m)?)?;
    m.add_function(wrap_pyfunction!(run_experiment, m)?)?;
    Ok(())
}
