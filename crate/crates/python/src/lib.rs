//! Python bindings: the register/orbit toolkit, the flow, the pointer
//! statistics, and the measurement scenario, exposed with plain Python
//! types (ints of any width, complex lists, dicts) so the module works
//! directly from a REPL or a notebook.

use num_bigint::BigUint;
use num_complex::Complex64;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};

use ming_core::{
    classical_limit as core_classical_limit, decompose as core_decompose,
    evolve_orbit as core_evolve_orbit, macroscopic_check as core_macroscopic_check,
    ming_entry as core_ming_entry, orbit_of as core_orbit_of,
    paradox_scan as core_paradox_scan, smoothing_scan as core_smoothing_scan,
    standard_prefixes, time_average_quadrature as core_time_average_quadrature,
    time_average_spectral as core_time_average_spectral, validate_dense as core_validate_dense,
    AverageMethod, BasisIndex, BudgetRule, ClassicalPoint, CockedSet, MeasurementOutcome,
    Observable, ParticleAmplitudes, PhysicalScale, PointerConfig, PointerFamily, SmoothingModel,
    TailState, TimeAverageResult,
};

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn basis(n: usize, value: BigUint) -> PyResult<BasisIndex> {
    BasisIndex::new(n, value).map_err(value_error)
}

fn parse_budget(rule: &str) -> PyResult<BudgetRule> {
    match rule {
        "zero" => Ok(BudgetRule::Zero),
        "sqrt" => Ok(BudgetRule::Sqrt),
        other => {
            let gamma: f64 = other.parse().map_err(|_| {
                value_error(format!(
                    "budget must be 'zero', 'sqrt', or an exponent in (0,1), not '{other}'"
                ))
            })?;
            if !(gamma.is_finite() && 0.0 < gamma && gamma < 1.0) {
                return Err(value_error(format!(
                    "budget exponent must lie strictly between 0 and 1, got {gamma}"
                )));
            }
            Ok(BudgetRule::Power(gamma))
        }
    }
}

fn particle(p1: f64, phase: f64) -> PyResult<ParticleAmplitudes> {
    ParticleAmplitudes::from_detection_probability(p1, phase).map_err(value_error)
}

fn average_dict<'py>(py: Python<'py>, r: &TimeAverageResult) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("n", r.n)?;
    d.set_item("orbit_len", r.orbit_len)?;
    d.set_item("s", r.s)?;
    d.set_item(
        "method",
        match r.method {
            AverageMethod::Spectral => "spectral",
            AverageMethod::Quadrature => "quadrature",
        },
    )?;
    d.set_item("value", r.value)?;
    d.set_item("detection_probability", r.detection_probability)?;
    d.set_item("residual", r.residual)?;
    d.set_item("s_over_n", r.s_over_n())?;
    Ok(d)
}

// ---------------------------------------------------------------------------
// Register and orbits
// ---------------------------------------------------------------------------

/// Rotates the width-`n` bit pattern `value` left `k` times (one time step
/// of the amplifier per rotation; equivalently, doubling mod 2^n − 1 away
/// from the fixed points).
#[pyfunction]
#[pyo3(signature = (n, value, k = 1))]
fn rotate(n: usize, value: BigUint, k: usize) -> PyResult<BigUint> {
    Ok(basis(n, value)?.rotate_by(k).value().clone())
}

/// The canonical (minimal-value) representative of `value`'s orbit.
#[pyfunction]
fn canonical(n: usize, value: BigUint) -> PyResult<BigUint> {
    let orbit = core_orbit_of(&basis(n, value)?).map_err(value_error)?;
    Ok(orbit.representative().value().clone())
}

/// The full orbit of `value` in rotation order from its canonical
/// representative.
#[pyfunction]
fn orbit_of(n: usize, value: BigUint) -> PyResult<Vec<BigUint>> {
    let orbit = core_orbit_of(&basis(n, value)?).map_err(value_error)?;
    Ok(orbit.members().iter().map(|m| m.value().clone()).collect())
}

/// Orbit structure of the whole width-`n` basis (prime `n` ≤ 20):
/// `{"n", "q", "orbits", "fixed"}`.
#[pyfunction]
fn decompose(py: Python<'_>, n: usize) -> PyResult<Bound<'_, PyDict>> {
    let d = core_decompose(n).map_err(value_error)?;
    let out = PyDict::new(py);
    out.set_item("n", d.n())?;
    out.set_item("q", d.q())?;
    let orbits: Vec<Vec<BigUint>> = d
        .orbits()
        .iter()
        .map(|o| o.members().iter().map(|m| m.value().clone()).collect())
        .collect();
    out.set_item("orbits", orbits)?;
    out.set_item(
        "fixed",
        d.fixed_points()
            .iter()
            .map(|f| f.value().clone())
            .collect::<Vec<_>>(),
    )?;
    Ok(out)
}

/// Number of sites of `value` that disagree with the ready pattern
/// (ones on the low ⌈n/2⌉ sites, zeros above).
#[pyfunction]
fn defect_count(n: usize, value: BigUint) -> PyResult<u64> {
    let config = PointerConfig::new(n, BudgetRule::Zero).map_err(value_error)?;
    Ok(ming_core::defect_count(&basis(n, value)?, &config))
}

/// The ready pattern 2^⌈n/2⌉ − 1 itself.
#[pyfunction]
fn ready_pattern(n: usize) -> PyResult<BigUint> {
    let config = PointerConfig::new(n, BudgetRule::Zero).map_err(value_error)?;
    Ok(CockedSet::new(config).canonical().value().clone())
}

// ---------------------------------------------------------------------------
// Dynamics
// ---------------------------------------------------------------------------

/// Generator entry `A[row, col]` of the width-`n` amplifier at base scale
/// `h0` (the per-width quantum is `h0 / n`).
#[pyfunction]
#[pyo3(signature = (row, col, n, h0 = 1.0))]
fn ming_entry(row: usize, col: usize, n: usize, h0: f64) -> PyResult<Complex64> {
    if row >= n || col >= n {
        return Err(value_error(format!(
            "orbit positions must lie below n = {n}, got ({row}, {col})"
        )));
    }
    let scale = PhysicalScale::new(h0).map_err(value_error)?;
    Ok(core_ming_entry(row, col, n, scale))
}

/// Evolves amplitudes along one orbit for time `t` (length inferred from
/// the list; `t = 1` advances every amplitude one orbit position).
#[pyfunction]
fn evolve_orbit(amps: Vec<Complex64>, t: f64) -> PyResult<Vec<Complex64>> {
    if amps.is_empty() {
        return Err(value_error("orbit amplitude list must be non-empty"));
    }
    Ok(core_evolve_orbit(&amps, t))
}

/// Cross-checks the flow against dense linear algebra at width `n` ≤ 12:
/// skew-hermiticity, the unit-time rotation, and a fractional-time probe.
/// Raises on any disagreement.
#[pyfunction]
#[pyo3(signature = (n, h0 = 1.0))]
fn validate_dense(n: usize, h0: f64) -> PyResult<()> {
    let scale = PhysicalScale::new(h0).map_err(value_error)?;
    core_validate_dense(n, scale).map_err(value_error)?;
    Ok(())
}

// ---------------------------------------------------------------------------
// Pointer statistics
// ---------------------------------------------------------------------------

/// Closed-form infinite-time average of the pointer from the ready pattern.
#[pyfunction]
#[pyo3(signature = (n, p1, budget = "sqrt", phase = 0.0))]
fn time_average_spectral<'py>(
    py: Python<'py>,
    n: usize,
    p1: f64,
    budget: &str,
    phase: f64,
) -> PyResult<Bound<'py, PyDict>> {
    let config = PointerConfig::new(n, parse_budget(budget)?).map_err(value_error)?;
    let result = core_time_average_spectral(particle(p1, phase)?, &config).map_err(value_error)?;
    average_dict(py, &result)
}

/// Trapezoid time average over one period; `steps = None` picks the
/// smallest resolution that makes the quadrature exact (2n + 2).
#[pyfunction]
#[pyo3(signature = (n, p1, steps = None, budget = "sqrt", phase = 0.0))]
fn time_average_quadrature<'py>(
    py: Python<'py>,
    n: usize,
    p1: f64,
    steps: Option<usize>,
    budget: &str,
    phase: f64,
) -> PyResult<Bound<'py, PyDict>> {
    let config = PointerConfig::new(n, parse_budget(budget)?).map_err(value_error)?;
    let result = core_time_average_quadrature(
        particle(p1, phase)?,
        &config,
        steps.unwrap_or(2 * n + 2),
    )
    .map_err(value_error)?;
    average_dict(py, &result)
}

/// Both averaging routes across a width grid: a list of
/// `{"n", "s", "s_over_n", "avg_spectral", "avg_quadrature", "residual"}`.
#[pyfunction]
#[pyo3(signature = (n_list, p1, budget = "sqrt", phase = 0.0))]
fn convergence_sweep<'py>(
    py: Python<'py>,
    n_list: Vec<usize>,
    p1: f64,
    budget: &str,
    phase: f64,
) -> PyResult<Bound<'py, PyList>> {
    let rows = ming_core::convergence_sweep(&n_list, particle(p1, phase)?, parse_budget(budget)?)
        .map_err(value_error)?;
    let out = PyList::empty(py);
    for r in rows {
        let d = PyDict::new(py);
        d.set_item("n", r.n)?;
        d.set_item("s", r.s)?;
        d.set_item("s_over_n", r.s_over_n)?;
        d.set_item("avg_spectral", r.avg_spectral)?;
        d.set_item("avg_quadrature", r.avg_quadrature)?;
        d.set_item("residual", r.residual)?;
        out.append(d)?;
    }
    Ok(out)
}

/// The n → ∞ limit of the pointer statistics: Born weights on the
/// two-point classical state space.
#[pyfunction]
#[pyo3(signature = (p1, phase = 0.0))]
fn classical_limit<'py>(py: Python<'py>, p1: f64, phase: f64) -> PyResult<Bound<'py, PyDict>> {
    let limit = core_classical_limit(particle(p1, phase)?);
    let d = PyDict::new(py);
    d.set_item("quiescent", limit.weight(ClassicalPoint::Quiescent))?;
    d.set_item("detected", limit.weight(ClassicalPoint::Detected))?;
    d.set_item("pointer_expectation", limit.pointer_expectation())?;
    Ok(d)
}

/// Product-state macroscopicity check over the stock prefixes:
/// `{"rows", "spread", "tolerance", "pass"}`.
#[pyfunction]
#[pyo3(signature = (n_list, budget = "sqrt", tail = "plus", family = "deficit"))]
fn macroscopic_check<'py>(
    py: Python<'py>,
    n_list: Vec<usize>,
    budget: &str,
    tail: &str,
    family: &str,
) -> PyResult<Bound<'py, PyDict>> {
    let tail = match tail {
        "ground" => TailState::ground(),
        "excited" => TailState::excited(),
        "plus" => TailState::plus(),
        other => return Err(value_error(format!("unknown tail '{other}'"))),
    };
    let family = match family {
        "deficit" => PointerFamily::MassDeficit,
        "indicator" => PointerFamily::ManifoldIndicator,
        other => return Err(value_error(format!("unknown family '{other}'"))),
    };
    let report = core_macroscopic_check(
        &standard_prefixes(&tail),
        &tail,
        &n_list,
        parse_budget(budget)?,
        family,
    )
    .map_err(value_error)?;
    let rows = PyList::empty(py);
    for row in &report.rows {
        let d = PyDict::new(py);
        d.set_item("prefix", &row.label)?;
        d.set_item("n", row.n)?;
        d.set_item("value", row.value)?;
        rows.append(d)?;
    }
    let out = PyDict::new(py);
    out.set_item("rows", rows)?;
    out.set_item("spread", report.spread)?;
    out.set_item("tolerance", report.tolerance)?;
    out.set_item("pass", report.pass)?;
    Ok(out)
}

// ---------------------------------------------------------------------------
// Measurement
// ---------------------------------------------------------------------------

/// A finite observable: eigenvalues with orthogonal eigenspace bases. The
/// bases must resolve the identity; `measure` and `expectation` accept any
/// nonzero scaling of the state.
#[pyclass(name = "Observable", frozen)]
struct PyObservable {
    inner: Observable,
}

#[pymethods]
impl PyObservable {
    /// `Observable(dim, pairs)` with `pairs = [(eigenvalue, [basis vectors]), ...]`.
    #[new]
    fn new(dim: usize, pairs: Vec<(f64, Vec<Vec<Complex64>>)>) -> PyResult<Self> {
        Ok(Self {
            inner: Observable::new(dim, pairs).map_err(value_error)?,
        })
    }

    /// Distinct eigenvalues in declaration order.
    fn eigenvalues(&self) -> Vec<f64> {
        self.inner.eigenvalues()
    }

    /// Projective measurement: a list of
    /// `{"eigenvalue", "probability", "post_state"}`, branches with
    /// probability below 1e−15 omitted.
    fn measure<'py>(
        &self,
        py: Python<'py>,
        state: Vec<Complex64>,
    ) -> PyResult<Bound<'py, PyList>> {
        let outcomes = ming_core::measure(&state, &self.inner).map_err(value_error)?;
        outcomes_to_py(py, &outcomes)
    }

    /// `⟨state|A|state⟩ / ⟨state|state⟩`.
    fn expectation(&self, state: Vec<Complex64>) -> PyResult<f64> {
        ming_core::expectation(&state, &self.inner).map_err(value_error)
    }
}

fn outcomes_to_py<'py>(
    py: Python<'py>,
    outcomes: &[MeasurementOutcome],
) -> PyResult<Bound<'py, PyList>> {
    let list = PyList::empty(py);
    for o in outcomes {
        let d = PyDict::new(py);
        d.set_item("eigenvalue", o.eigenvalue)?;
        d.set_item("probability", o.probability)?;
        d.set_item("post_state", o.post_state.clone())?;
        list.append(d)?;
    }
    Ok(list)
}

/// The prepared two-spin state `|↑↑⟩ + |↑↓⟩` (unnormalised on purpose: all
/// measurement operations are scale-invariant and the integer components
/// keep them exact).
#[pyfunction]
fn equal_superposition_state() -> Vec<Complex64> {
    ming_core::equal_superposition_state()
}

/// "First spin up": eigenvalue 1 on span{|↑↑⟩, |↑↓⟩}, 0 on the rest.
#[pyfunction]
fn first_spin_observable() -> PyObservable {
    PyObservable {
        inner: ming_core::first_spin_observable(),
    }
}

/// The same observable with the degeneracy split by `eps`.
#[pyfunction]
fn split_first_spin_observable(eps: f64) -> PyResult<PyObservable> {
    Ok(PyObservable {
        inner: ming_core::split_first_spin_observable(eps).map_err(value_error)?,
    })
}

/// The superposition witness `R`: eigenvalue 1 along `|↑↑⟩ + |↑↓⟩`.
#[pyfunction]
fn superposition_witness() -> PyObservable {
    PyObservable {
        inner: ming_core::superposition_witness(),
    }
}

/// Measures `Q_eps` (plain `Q` at eps = 0) on the prepared superposition,
/// then reports the outcome-averaged `⟨R⟩` for each eps: exactly 1.0 at 0,
/// exactly 0.5 at any eps > 0. Rows are
/// `{"eps", "expectation_r", "outcomes": [(eigenvalue, probability), ...]}`.
#[pyfunction]
fn paradox_scan<'py>(py: Python<'py>, eps_grid: Vec<f64>) -> PyResult<Bound<'py, PyList>> {
    let rows = core_paradox_scan(&eps_grid).map_err(value_error)?;
    let out = PyList::empty(py);
    for row in rows {
        let d = PyDict::new(py);
        d.set_item("eps", row.eps)?;
        d.set_item("expectation_r", row.expectation_r)?;
        d.set_item("outcomes", row.outcomes)?;
        out.append(d)?;
    }
    Ok(out)
}

/// Monte-Carlo rerun of the sequential experiment: measure `first` on
/// `state`, then `second` on the collapsed branch, and average the second
/// eigenvalue over `shots` repetitions (deterministic in `seed`).
#[pyfunction]
#[pyo3(signature = (state, first, second, shots, seed = 0))]
fn sample_sequential_expectation(
    state: Vec<Complex64>,
    first: PyRef<'_, PyObservable>,
    second: PyRef<'_, PyObservable>,
    shots: u64,
    seed: u64,
) -> PyResult<f64> {
    ming_core::sample_sequential_expectation(&state, &first.inner, &second.inner, shots, seed)
        .map_err(value_error)
}

/// The illustrative smoothed crossover (a plotting aid, not a prediction):
/// a list of `(eps, smoothed value)` pairs.
#[pyfunction]
#[pyo3(signature = (eps_grid, width, steepness = 2.0))]
fn smoothing_scan(eps_grid: Vec<f64>, width: f64, steepness: f64) -> PyResult<Vec<(f64, f64)>> {
    let model = SmoothingModel::new(width, steepness).map_err(value_error)?;
    Ok(core_smoothing_scan(&eps_grid, model)
        .into_iter()
        .map(|row| (row.eps, row.smoothed_expectation_r))
        .collect())
}

#[pymodule]
fn ming_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(rotate, m)?)?;
    m.add_function(wrap_pyfunction!(canonical, m)?)?;
    m.add_function(wrap_pyfunction!(orbit_of, m)?)?;
    m.add_function(wrap_pyfunction!(decompose, m)?)?;
    m.add_function(wrap_pyfunction!(defect_count, m)?)?;
    m.add_function(wrap_pyfunction!(ready_pattern, m)?)?;
    m.add_function(wrap_pyfunction!(ming_entry, m)?)?;
    m.add_function(wrap_pyfunction!(evolve_orbit, m)?)?;
    m.add_function(wrap_pyfunction!(validate_dense, m)?)?;
    m.add_function(wrap_pyfunction!(time_average_spectral, m)?)?;
    m.add_function(wrap_pyfunction!(time_average_quadrature, m)?)?;
    m.add_function(wrap_pyfunction!(convergence_sweep, m)?)?;
    m.add_function(wrap_pyfunction!(classical_limit, m)?)?;
    m.add_function(wrap_pyfunction!(macroscopic_check, m)?)?;
    m.add_function(wrap_pyfunction!(equal_superposition_state, m)?)?;
    m.add_function(wrap_pyfunction!(first_spin_observable, m)?)?;
    m.add_function(wrap_pyfunction!(split_first_spin_observable, m)?)?;
    m.add_function(wrap_pyfunction!(superposition_witness, m)?)?;
    m.add_function(wrap_pyfunction!(paradox_scan, m)?)?;
    m.add_function(wrap_pyfunction!(sample_sequential_expectation, m)?)?;
    m.add_function(wrap_pyfunction!(smoothing_scan, m)?)?;
    m.add_class::<PyObservable>()?;
    Ok(())
}
