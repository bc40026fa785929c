//! Python bindings for the aq14 engine.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use aq14::{
    bases, cluster::Frame, multiplication, triangular, BasisFamily, ChebKind, FrameAlgebra,
    QLaurent, TorusElement,
};

fn to_py_err(e: aq14::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// One frame of the algebra with its generated elements.
#[pyclass(name = "Algebra")]
struct PyAlgebra {
    inner: FrameAlgebra,
}

/// Torus element wrapper with exact arithmetic.
#[pyclass(name = "Element")]
#[derive(Clone)]
struct PyElement {
    inner: TorusElement,
}

#[pymethods]
impl PyElement {
    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Element({})", self.inner)
    }

    fn __eq__(&self, other: &PyElement) -> bool {
        self.inner == other.inner
    }

    fn __add__(&self, other: &PyElement) -> PyElement {
        PyElement {
            inner: self.inner.add(&other.inner),
        }
    }

    fn __sub__(&self, other: &PyElement) -> PyElement {
        PyElement {
            inner: self.inner.sub(&other.inner),
        }
    }

    fn __mul__(&self, other: &PyElement) -> PyElement {
        PyElement {
            inner: self.inner.mul(&other.inner),
        }
    }

    fn __pow__(&self, n: u32, _mod: Option<u32>) -> PyElement {
        PyElement {
            inner: self.inner.pow(n),
        }
    }

    fn bar(&self) -> PyElement {
        PyElement {
            inner: self.inner.bar(),
        }
    }

    fn is_bar_invariant(&self) -> bool {
        self.inner.bar() == self.inner
    }

    fn is_positive(&self) -> bool {
        self.inner.is_positive()
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    fn num_terms(&self) -> usize {
        self.inner.num_terms()
    }

    /// Terms as a list of (a, b, [(half_exponent, coefficient_str)]).
    fn terms(&self) -> Vec<(i64, i64, Vec<(i64, String)>)> {
        self.inner
            .iter()
            .map(|(&(a, b), c)| {
                (a, b, c.iter().map(|(&e, v)| (e, v.to_string())).collect())
            })
            .collect()
    }

    fn to_json(&self) -> String {
        self.inner.to_json().to_string()
    }
}

#[pymethods]
impl PyAlgebra {
    #[new]
    #[pyo3(signature = (frame = 1))]
    fn new(frame: i64) -> Self {
        PyAlgebra {
            inner: FrameAlgebra::new(Frame::new(frame)),
        }
    }

    /// Laurent expansion of the cluster variable X_m.
    fn cluster_var(&self, m: i64) -> PyElement {
        PyElement {
            inner: self.inner.cluster_var(m),
        }
    }

    /// The bar-invariant element attached to the null root.
    fn x_delta(&self) -> PyElement {
        PyElement {
            inner: self.inner.x_delta(),
        }
    }

    /// F_n(X_delta) or S_n(X_delta) for kind "F" or "S".
    fn chebyshev(&self, kind: &str, n: i64) -> PyResult<PyElement> {
        let kind = match kind {
            "F" => ChebKind::F,
            "S" => ChebKind::S,
            other => return Err(PyValueError::new_err(format!("unknown kind {other:?}"))),
        };
        Ok(PyElement {
            inner: self.inner.chebyshev(kind, n),
        })
    }

    /// The normalized cluster monomial q^{-ab/2} X_m^a X_{m+1}^b.
    fn cluster_monomial(&self, m: i64, a: i64, b: i64) -> PyResult<PyElement> {
        Ok(PyElement {
            inner: self.inner.cluster_monomial(m, a, b).map_err(to_py_err)?,
        })
    }

    /// The standard monomial E_(a,b).
    fn standard_monomial(&self, a: i64, b: i64) -> PyElement {
        PyElement {
            inner: triangular::standard_monomial(a, b, &self.inner),
        }
    }

    /// The triangular basis element C_(a,b) and its E-expansion
    /// as a list of (a, b, coefficient_str).
    fn triangular_c(&self, a: i64, b: i64) -> PyResult<(PyElement, Vec<(i64, i64, String)>)> {
        let (c, exp) = triangular::lusztig_c(a, b, &self.inner).map_err(to_py_err)?;
        let terms = exp
            .iter()
            .map(|(&(a, b), coef)| (a, b, coef.to_string()))
            .collect();
        Ok((PyElement { inner: c }, terms))
    }

    /// Expand an element in basis family "B", "S" or "D"; returns a list
    /// of (label_str, coefficient_str).
    fn expand_in_basis(&self, x: &PyElement, family: &str) -> PyResult<Vec<(String, String)>> {
        let family = match family {
            "B" => BasisFamily::B,
            "S" => BasisFamily::S,
            "D" => BasisFamily::D,
            other => return Err(PyValueError::new_err(format!("unknown family {other:?}"))),
        };
        let c = bases::expand_in_basis(&x.inner, family, &self.inner, &bases::Window::default())
            .map_err(to_py_err)?;
        Ok(c
            .iter()
            .map(|(label, coef)| (label.to_string(), coef.to_string()))
            .collect())
    }

    /// Expand an element in the standard monomials; returns a list of
    /// (a, b, coefficient_str).
    fn expand_in_standard(&self, x: &PyElement) -> PyResult<Vec<(i64, i64, String)>> {
        let exp = triangular::expand_in_standard(&x.inner, &self.inner).map_err(to_py_err)?;
        Ok(exp
            .iter()
            .map(|(&(a, b), coef)| (a, b, coef.to_string()))
            .collect())
    }
}

/// The monomial c * q^{e/2} X^(a,b) as an element.
#[pyfunction]
#[pyo3(signature = (a, b, half_exponent = 0, coefficient = 1))]
fn monomial(a: i64, b: i64, half_exponent: i64, coefficient: i64) -> PyElement {
    PyElement {
        inner: TorusElement::monomial(a, b, QLaurent::monomial(half_exponent, coefficient)),
    }
}

/// Closed-form product rule check over ranges; returns (total, failures).
#[pyfunction]
fn verify_theorem2(
    m_lo: i64,
    m_hi: i64,
    n_lo: i64,
    n_hi: i64,
    frames: Vec<i64>,
) -> PyResult<(usize, Vec<String>)> {
    let recs = multiplication::verify_theorem2((m_lo, m_hi), (n_lo, n_hi), &frames)
        .map_err(to_py_err)?;
    let total = recs.len();
    let failures = recs
        .into_iter()
        .filter(|r| !r.pass)
        .map(|r| format!("{} frame {}", r.name, r.frame))
        .collect();
    Ok((total, failures))
}

#[pymodule]
fn aq14_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyAlgebra>()?;
    m.add_class::<PyElement>()?;
    m.add_function(wrap_pyfunction!(monomial, m)?)?;
    m.add_function(wrap_pyfunction!(verify_theorem2, m)?)?;
    Ok(())
}
