//! Python access to the identity registry, dumps and the lattice sampler.
//! Reports and dumps cross the boundary as JSON strings.

use freeboundary::cli::{self, Alphabet, CliError, ParamsArg, RunOptions};
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

fn to_py(e: CliError) -> PyErr {
    match e.exit_code() {
        2 => PyValueError::new_err(e.to_string()),
        _ => PyRuntimeError::new_err(e.to_string()),
    }
}

#[allow(clippy::too_many_arguments)]
fn options(
    n: Option<u32>,
    alphabet: Option<&str>,
    params: Option<&str>,
    qt_cap: Option<u32>,
    x_cap: Option<u32>,
    param_cap: Option<u32>,
    z_order: Option<u32>,
    n_max: Option<u32>,
    seed: Option<u64>,
    count: Option<usize>,
) -> PyResult<RunOptions> {
    let alphabet = alphabet.map(|s| s.parse::<Alphabet>()).transpose().map_err(PyValueError::new_err)?;
    let params = params.map(|s| s.parse::<ParamsArg>()).transpose().map_err(PyValueError::new_err)?;
    Ok(RunOptions { n, alphabet, params, qt_cap, x_cap, param_cap, z_order, n_max, seed, count, l: None })
}

/// Names accepted by `run`.
#[pyfunction]
fn identities() -> Vec<&'static str> {
    cli::IDENTITIES.to_vec()
}

/// Runs one identity and returns its report as JSON. `qt_cap` is in half-units.
#[pyfunction]
#[pyo3(signature = (name, *, n=None, alphabet=None, params=None, qt_cap=None, x_cap=None, param_cap=None, z_order=None, n_max=None, seed=None, count=None))]
#[allow(clippy::too_many_arguments)]
fn run(
    py: Python<'_>,
    name: &str,
    n: Option<u32>,
    alphabet: Option<&str>,
    params: Option<&str>,
    qt_cap: Option<u32>,
    x_cap: Option<u32>,
    param_cap: Option<u32>,
    z_order: Option<u32>,
    n_max: Option<u32>,
    seed: Option<u64>,
    count: Option<usize>,
) -> PyResult<String> {
    let o = options(n, alphabet, params, qt_cap, x_cap, param_cap, z_order, n_max, seed, count)?;
    let rep = py.detach(|| cli::run(name, &o)).map_err(to_py)?;
    Ok(rep.to_json())
}

/// `Z_n` as a series record.
#[pyfunction]
#[pyo3(signature = (n, alphabet, *, params=None, qt_cap=None, x_cap=None, param_cap=None))]
fn dump_zn(
    n: u32,
    alphabet: usize,
    params: Option<&str>,
    qt_cap: Option<u32>,
    x_cap: Option<u32>,
    param_cap: Option<u32>,
) -> PyResult<String> {
    let a = alphabet.to_string();
    let o = options(Some(n), Some(&a), params, qt_cap, x_cap, param_cap, None, None, None, None)?;
    Ok(cli::dump_zn(&o).map_err(to_py)?.to_string())
}

/// The strip's `"S/D"` distribution: numeric when every parameter is a
/// rational, formal otherwise.
#[pyfunction]
#[pyo3(signature = (alphabet, *, params=None, n_max=None, l=None, qt_cap=None))]
fn dump_distribution(
    alphabet: &str,
    params: Option<&str>,
    n_max: Option<u32>,
    l: Option<usize>,
    qt_cap: Option<u32>,
) -> PyResult<String> {
    let mut o = options(None, Some(alphabet), params, qt_cap, None, None, None, n_max, None, None)?;
    o.l = l;
    Ok(cli::dump_distribution(&o).map_err(to_py)?.to_string())
}

/// Sampler outcomes as `"S H V"` lines.
#[pyfunction]
#[pyo3(signature = (seed, count, *, params=None, alphabet=None))]
fn sample(py: Python<'_>, seed: u64, count: usize, params: Option<&str>, alphabet: Option<&str>) -> PyResult<Vec<String>> {
    let o = options(None, alphabet, params, None, None, None, None, None, Some(seed), Some(count))?;
    let out = py.detach(|| cli::sample(&o)).map_err(to_py)?;
    Ok(out.lines())
}

#[pymodule]
fn freeboundary_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(identities, m)?)?;
    m.add_function(wrap_pyfunction!(run, m)?)?;
    m.add_function(wrap_pyfunction!(dump_zn, m)?)?;
    m.add_function(wrap_pyfunction!(dump_distribution, m)?)?;
    m.add_function(wrap_pyfunction!(sample, m)?)?;
    Ok(())
}
