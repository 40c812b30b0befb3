//! Python bindings. Objects cross the boundary as the same JSON strings the CLI reads and writes.

use nakayama_core::complexes::{phi as phi_map, TwoTerm};
use nakayama_core::disc::{self, Triangulation};
use nakayama_core::fmap::{self as fm, QuiverKind, Suite};
use nakayama_core::modcat::Algebra;
use nakayama_core::smscfg::{self, Configuration};
use nakayama_core::{Error, Sign};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

fn err(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn sign(s: &str) -> PyResult<Sign> {
    match s {
        "minus" | "-" => Ok(Sign::Minus),
        "plus" | "+" => Ok(Sign::Plus),
        _ => Err(PyValueError::new_err(format!("sign must be minus or plus, got {s:?}"))),
    }
}

fn algebra(n: usize, ell: usize) -> PyResult<Algebra> {
    Algebra::new(n, ell).map_err(err)
}

/// Triangulations of the punctured e-gon as JSON strings.
#[pyfunction]
fn enumerate_triangulations(e: usize) -> PyResult<Vec<String>> {
    Ok(disc::enumerate_triangulations(e).map_err(err)?.iter().map(|x| x.to_json()).collect())
}

/// Configurations of A_n^ell as JSON strings.
#[pyfunction]
fn enumerate_sms(n: usize, ell: usize) -> PyResult<Vec<String>> {
    let all = smscfg::enumerate_configurations(&algebra(n, ell)?).map_err(err)?;
    Ok(all.iter().map(|c| c.to_json()).collect())
}

/// Two-term tilting complexes of A_n^ell as JSON strings.
#[pyfunction]
fn two_term_tilting(n: usize, ell: usize) -> PyResult<Vec<String>> {
    let all = fm::two_term_tilting(&algebra(n, ell)?).map_err(err)?;
    Ok(all.iter().map(|t| t.to_json()).collect())
}

#[pyfunction]
#[pyo3(signature = (triangulation, n, ell, sign_name = "minus"))]
fn phi(triangulation: &str, n: usize, ell: usize, sign_name: &str) -> PyResult<String> {
    let x = Triangulation::from_json(triangulation).map_err(err)?;
    Ok(phi_map(&x, sign(sign_name)?, &algebra(n, ell)?).map_err(err)?.to_json())
}

#[pyfunction]
fn is_config(config: &str) -> PyResult<bool> {
    Ok(smscfg::is_configuration(&Configuration::from_json(config).map_err(err)?))
}

#[pyfunction]
fn prune_type(config: &str) -> PyResult<String> {
    let c = Configuration::from_json(config).map_err(err)?;
    Ok(format!("{:?}", smscfg::prune_type(&c).map_err(err)?).to_lowercase())
}

/// Mutate a configuration at the given points. Returns the resulting JSON.
#[pyfunction]
fn sms_mutate(config: &str, points: Vec<(usize, usize)>, sign_name: &str) -> PyResult<String> {
    let c = Configuration::from_json(config).map_err(err)?;
    Ok(smscfg::sms_mutate(&c, &points, sign(sign_name)?).map_err(err)?.result.to_json())
}

/// Image of a two-term tilting complex.
#[pyfunction]
fn fmap(complex: &str) -> PyResult<String> {
    let t = TwoTerm::from_json(complex).map_err(err)?;
    Ok(fm::fmap(&t).map_err(err)?.to_json())
}

#[pyfunction]
fn exchange_quiver(kind: &str, n: usize, ell: usize) -> PyResult<String> {
    let kind = match kind {
        "2tilt" => QuiverKind::TwoTilt,
        "sms" => QuiverKind::Sms,
        _ => return Err(PyValueError::new_err(format!("kind must be 2tilt or sms, got {kind:?}"))),
    };
    Ok(fm::exchange_quiver(kind, &algebra(n, ell)?).map_err(err)?.to_json())
}

/// Run one verification suite; returns the report as JSON.
#[pyfunction]
fn verify(suite: &str, n: usize, ell: usize) -> PyResult<String> {
    let s: Suite = suite.parse().map_err(err)?;
    Ok(fm::verify(s, &algebra(n, ell)?).map_err(err)?.to_json())
}

#[pymodule]
fn nakayama(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(enumerate_triangulations, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_sms, m)?)?;
    m.add_function(wrap_pyfunction!(two_term_tilting, m)?)?;
    m.add_function(wrap_pyfunction!(phi, m)?)?;
    m.add_function(wrap_pyfunction!(is_config, m)?)?;
    m.add_function(wrap_pyfunction!(prune_type, m)?)?;
    m.add_function(wrap_pyfunction!(sms_mutate, m)?)?;
    m.add_function(wrap_pyfunction!(fmap, m)?)?;
    m.add_function(wrap_pyfunction!(exchange_quiver, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
