//! Python bindings for the `nonorient` crate.

use nonorient::action::{self, Bounds, CurveClass};
use nonorient::catalog;
use nonorient::nec;
use nonorient::notation::{self, GenWord};
use nonorient::pi1::{format_element, ConjConfig, Conjugacy};
use nonorient::words;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn bounds(bound: usize, power_bound: i64, orbit_cap: usize) -> Bounds {
    Bounds { conj: ConjConfig { bound, orbit_cap }, power_bound }
}

/// `(status, witness)` with status `"yes"`, `"no"` or `"inconclusive"`.
fn answer(c: &Conjugacy) -> (String, Option<String>) {
    match c {
        Conjugacy::Yes(w) => ("yes".into(), Some(format_element(w))),
        Conjugacy::No(inv) => ("no".into(), Some((*inv).to_string())),
        Conjugacy::Inconclusive => ("inconclusive".into(), None),
    }
}

/// A word in twists and crosscap slides on `N_genus`.
#[pyclass(name = "Word", frozen)]
struct PyWord {
    inner: GenWord,
}

#[pymethods]
impl PyWord {
    #[new]
    fn new(text: &str, genus: usize) -> PyResult<Self> {
        Ok(PyWord { inner: notation::parse_word(text, genus).map_err(err)? })
    }

    #[getter]
    fn genus(&self) -> usize {
        self.inner.genus
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Word({:?}, genus={})", self.inner.to_string(), self.inner.genus)
    }

    fn __eq__(&self, other: &PyWord) -> bool {
        self.inner == other.inner
    }

    fn reduce(&self) -> PyWord {
        PyWord { inner: words::reduce(&self.inner) }
    }

    fn inverse(&self) -> PyWord {
        PyWord { inner: words::invert(&self.inner) }
    }

    fn __mul__(&self, other: &PyWord) -> PyResult<PyWord> {
        if self.inner.genus != other.inner.genus {
            return Err(err("genus mismatch"));
        }
        Ok(PyWord { inner: words::concat(&self.inner, &other.inner) })
    }

    fn evaluate(&self) -> PyResult<PyAutomorphism> {
        Ok(PyAutomorphism { inner: action::evaluate(&self.inner).map_err(err)? })
    }
}

/// The automorphism of the surface group induced by a word.
#[pyclass(name = "Automorphism", frozen)]
struct PyAutomorphism {
    inner: action::Automorphism,
}

#[pymethods]
impl PyAutomorphism {
    #[getter]
    fn genus(&self) -> usize {
        self.inner.genus()
    }

    /// Normal forms of the images of `x1..xg`.
    fn images(&self) -> Vec<String> {
        self.inner.images().iter().map(|w| format_element(w)).collect()
    }

    fn is_identity(&self) -> bool {
        self.inner.is_identity()
    }

    /// Rows as lists of 0/1; `Vec<u8>` would arrive as `bytes`.
    fn homology_z2(&self) -> Vec<Vec<u32>> {
        let m = action::homology_matrix_z2(&self.inner);
        m.iter().map(|r| r.iter().map(|&b| u32::from(b)).collect()).collect()
    }

    fn homology_z(&self) -> Vec<Vec<i64>> {
        action::homology_matrix_z(&self.inner).rows()
    }

    /// Normal form of the image of a curve such as `g1,3`, `a2`, `b`, `m1`.
    fn apply_to_curve(&self, curve: &str) -> PyResult<String> {
        let c = CurveClass::parse(curve).map_err(err)?;
        Ok(format_element(&action::apply_to_class(&self.inner, &c).map_err(err)?))
    }
}

/// Expands the word and returns its text.
#[pyfunction]
fn parse(text: &str, genus: usize) -> PyResult<String> {
    Ok(notation::parse_word(text, genus).map_err(err)?.to_string())
}

#[pyfunction]
fn evaluate(text: &str, genus: usize) -> PyResult<PyAutomorphism> {
    PyWord::new(text, genus)?.evaluate()
}

#[pyfunction]
#[pyo3(signature = (left, right, genus, bound = 16, power_bound = 8, orbit_cap = 20_000))]
fn outer_equal(
    left: &str,
    right: &str,
    genus: usize,
    bound: usize,
    power_bound: i64,
    orbit_cap: usize,
) -> PyResult<(String, Option<String>)> {
    let u = notation::parse_word(left, genus).map_err(err)?;
    let v = notation::parse_word(right, genus).map_err(err)?;
    let c = action::outer_equal(&u, &v, &bounds(bound, power_bound, orbit_cap)).map_err(err)?;
    Ok(answer(&c))
}

#[pyfunction]
#[pyo3(signature = (text, genus, bound = 16, power_bound = 8, orbit_cap = 20_000))]
fn is_involution(
    text: &str,
    genus: usize,
    bound: usize,
    power_bound: i64,
    orbit_cap: usize,
) -> PyResult<(String, Option<String>)> {
    let w = notation::parse_word(text, genus).map_err(err)?;
    let c = catalog::is_involution(&w, &bounds(bound, power_bound, orbit_cap)).map_err(err)?;
    Ok(answer(&c))
}

/// Topological-conjugacy classes of the NSK-maps of one genus.
#[pyfunction]
fn classify<'py>(py: Python<'py>, genus: usize) -> PyResult<Vec<Bound<'py, PyDict>>> {
    nec::classes(genus)
        .map_err(err)?
        .into_iter()
        .map(|c| {
            let d = PyDict::new(py);
            d.set_item("label", &c.label)?;
            d.set_item("signature", c.signature.to_string())?;
            d.set_item("profile", c.profile.to_string())?;
            d.set_item("m", c.m)?;
            d.set_item("maps", c.members.len())?;
            Ok(d)
        })
        .collect()
}

/// Catalog records as `(label, word, signature, profile)`.
#[pyfunction]
fn catalog_records() -> Vec<(String, String, String, String)> {
    catalog::load_catalog()
        .iter()
        .map(|r| (r.label.to_string(), r.text.clone(), r.signature.to_string(), r.profile.to_string()))
        .collect()
}

#[pymodule]
fn nonorient_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyWord>()?;
    m.add_class::<PyAutomorphism>()?;
    m.add_function(wrap_pyfunction!(parse, m)?)?;
    m.add_function(wrap_pyfunction!(evaluate, m)?)?;
    m.add_function(wrap_pyfunction!(outer_equal, m)?)?;
    m.add_function(wrap_pyfunction!(is_involution, m)?)?;
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    m.add_function(wrap_pyfunction!(catalog_records, m)?)?;
    Ok(())
}
