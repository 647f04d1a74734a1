//! Python bindings: spec text in, report text and plain values out.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use superwarp::einstein::{classify as classify_problem, BaseKind, ConnectionChoice, EinsteinProblem};
use superwarp::scalar::{expr_equal as equal, parse_expr, Assumptions, BigRational, DEFAULT_SEED};
use superwarp::specfile::{parse_any, parse_field, AnySpec};
use superwarp::{suite, Error};

fn err(e: Error) -> PyErr {
    PyValueError::new_err(format!("{e} (exit status {})", e.exit_code()))
}

fn spec(text: &str) -> PyResult<AnySpec> {
    parse_any(text).map_err(err)
}

fn constant(src: &str) -> PyResult<BigRational> {
    parse_expr(src)
        .map_err(|e| err(e.into()))?
        .to_ratfunc()
        .as_constant()
        .ok_or_else(|| PyValueError::new_err(format!("'{src}' is not a rational constant")))
}

/// Canonical form of an even expression.
#[pyfunction]
fn canonicalize(expr: &str) -> PyResult<String> {
    let e = parse_expr(expr).map_err(|e| err(e.into()))?;
    Ok(e.try_to_ratfunc()
        .ok_or_else(|| PyValueError::new_err("division by zero"))?
        .to_string())
}

#[pyfunction]
fn differentiate(expr: &str, var: &str) -> PyResult<String> {
    let e = parse_expr(expr).map_err(|e| err(e.into()))?;
    Ok(e.differentiate(var).canonicalize().to_string())
}

#[pyfunction]
fn expr_equal(a: &str, b: &str) -> PyResult<bool> {
    let a = parse_expr(a).map_err(|e| err(e.into()))?;
    let b = parse_expr(b).map_err(|e| err(e.into()))?;
    Ok(equal(&a, &b, &Assumptions::new(), DEFAULT_SEED).is_equal())
}

/// Christoffel, curvature and Ricci tables of a spec given as TOML text.
#[pyfunction]
#[pyo3(signature = (spec_toml, connection = "lc", p = None))]
fn tables(spec_toml: &str, connection: &str, p: Option<&str>) -> PyResult<String> {
    let s = spec(spec_toml)?;
    let conn: ConnectionChoice = connection.parse().map_err(err)?;
    let p = match p {
        Some(src) => {
            let inst = suite::instance(&s, None).map_err(err)?;
            Some(parse_field(inst.manifold.chart(), src).map_err(err)?)
        }
        None => None,
    };
    let inst = suite::instance(&s, p.as_ref()).map_err(err)?;
    suite::compute(&inst, &[conn], "-").map_err(err)
}

#[pyfunction]
fn scopes() -> Vec<&'static str> {
    suite::scopes()
}

/// Runs a verification scope; bundled specs are used when `spec_toml` is
/// omitted.
#[pyfunction]
#[pyo3(signature = (scope, spec_toml = None, seed = DEFAULT_SEED))]
fn verify<'py>(py: Python<'py>, scope: &str, spec_toml: Option<&str>, seed: u64) -> PyResult<Bound<'py, PyDict>> {
    let s = spec_toml.map(spec).transpose()?;
    let report = suite::run(scope, s.as_ref(), None, seed).map_err(err)?;
    let d = PyDict::new(py);
    d.set_item("scope", &report.scope)?;
    d.set_item("total", report.total())?;
    d.set_item("passed", report.passed())?;
    d.set_item("failed", report.failed())?;
    d.set_item("all_pass", report.all_pass())?;
    let failures: Vec<(String, String, String)> = report
        .failures()
        .map(|r| (r.check_id.clone(), r.tuple.clone(), r.residual.clone()))
        .collect();
    d.set_item("failures", failures)?;
    d.set_item("report", report.to_string())?;
    Ok(d)
}

/// Solution families as dictionaries, plus the classification notes.
#[pyfunction]
#[pyo3(signature = (base, conn, l, lambda0 = None, c0 = None))]
fn classify<'py>(
    py: Python<'py>,
    base: &str,
    conn: &str,
    l: i64,
    lambda0: Option<&str>,
    c0: Option<&str>,
) -> PyResult<Bound<'py, PyDict>> {
    let base: BaseKind = base.parse().map_err(err)?;
    let conn: ConnectionChoice = conn.parse().map_err(err)?;
    let mut problem = EinsteinProblem::new(base, conn, l);
    problem.lambda0 = lambda0.map(constant).transpose()?;
    problem.c0 = c0.map(constant).transpose()?;
    let c = classify_problem(&problem).map_err(err)?;
    let mut families = Vec::new();
    for f in &c.families {
        let d = PyDict::new(py);
        d.set_item("tag", f.tag.to_string())?;
        d.set_item("case", &f.case)?;
        d.set_item("h", f.h.to_string())?;
        d.set_item("lambda", f.lambda.to_string())?;
        d.set_item("fiber_constant", f.fiber_constant.to_string())?;
        d.set_item("constants", f.constants.clone())?;
        d.set_item("side_conditions", f.side_conditions.clone())?;
        families.push(d);
    }
    let out = PyDict::new(py);
    out.set_item("families", families)?;
    out.set_item("notes", c.notes.clone())?;
    Ok(out)
}

#[pymodule]
fn superwarp_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(canonicalize, m)?)?;
    m.add_function(wrap_pyfunction!(differentiate, m)?)?;
    m.add_function(wrap_pyfunction!(expr_equal, m)?)?;
    m.add_function(wrap_pyfunction!(tables, m)?)?;
    m.add_function(wrap_pyfunction!(scopes, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    Ok(())
}
