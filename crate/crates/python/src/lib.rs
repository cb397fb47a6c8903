//! Python bindings. Rationals cross the boundary as `fractions.Fraction`
//! (inputs may also be `int` or `"p/q"` strings).

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use seifert::seifert::{col_enlarge, congruence, row_enlarge, verify_certificate};
use seifert::wire::{parse_rational, Wire};
use seifert::{Factor, MatrixQ, Rational};

fn err(e: seifert::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn rational(obj: &Bound<'_, PyAny>) -> PyResult<Rational> {
    parse_rational(&obj.str()?.to_cow()?).map_err(err)
}

fn fraction<'py>(py: Python<'py>, q: &Rational) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?.getattr("Fraction")?.call1((q.to_string(),))
}

fn matrix(rows: &Bound<'_, PyAny>) -> PyResult<MatrixQ> {
    let mut out = Vec::new();
    for row in rows.try_iter()? {
        let row = row?;
        out.push(row.try_iter()?.map(|x| rational(&x?)).collect::<PyResult<Vec<_>>>()?);
    }
    MatrixQ::from_rows(out).map_err(err)
}

fn rows<'py>(py: Python<'py>, m: &MatrixQ) -> PyResult<Vec<Vec<Bound<'py, PyAny>>>> {
    m.rows_iter().map(|r| r.iter().map(|x| fraction(py, x)).collect()).collect()
}

fn from_json<T: Wire>(text: &str) -> PyResult<T> {
    let v: serde_json::Value = serde_json::from_str(text).map_err(|e| PyValueError::new_err(e.to_string()))?;
    T::from_json(&v).map_err(err)
}

/// A Laurent polynomial in `t` with rational coefficients.
#[pyclass(module = "seifert_py", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
pub struct Laurent(seifert::Laurent);

#[pymethods]
impl Laurent {
    /// From a mapping `{exponent: coefficient}`.
    #[new]
    fn new(coeffs: &Bound<'_, PyDict>) -> PyResult<Self> {
        let terms = coeffs
            .iter()
            .map(|(k, v)| Ok((k.extract::<i64>()?, rational(&v)?)))
            .collect::<PyResult<Vec<_>>>()?;
        Ok(Laurent(seifert::Laurent::from_terms(terms)))
    }

    /// `{exponent: Fraction}` for the nonzero terms.
    fn coefficients<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let d = PyDict::new(py);
        for (e, c) in self.0.terms() {
            d.set_item(e, fraction(py, c)?)?;
        }
        Ok(d)
    }

    fn __call__<'py>(&self, py: Python<'py>, t: &Bound<'py, PyAny>) -> PyResult<Bound<'py, PyAny>> {
        fraction(py, &self.0.eval(&rational(t)?).map_err(err)?)
    }

    /// Associate with lowest exponent 0 and positive leading coefficient.
    fn normalized(&self) -> Self {
        Laurent(self.0.associate_normalized())
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Laurent({})", self.0)
    }
}

/// A Seifert matrix: a square rational matrix with `V - V^t = J`.
#[pyclass(module = "seifert_py", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
pub struct SeifertMatrix(seifert::SeifertMatrix);

#[pymethods]
impl SeifertMatrix {
    #[new]
    fn new(rows: &Bound<'_, PyAny>) -> PyResult<Self> {
        seifert::SeifertMatrix::validate(matrix(rows)?).map(SeifertMatrix).map_err(err)
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        from_json(text).map(SeifertMatrix)
    }

    fn to_json(&self) -> String {
        self.0.to_json().to_string()
    }

    fn rows<'py>(&self, py: Python<'py>) -> PyResult<Vec<Vec<Bound<'py, PyAny>>>> {
        rows(py, self.0.matrix())
    }

    #[getter]
    fn size(&self) -> usize {
        self.0.size()
    }

    #[getter]
    fn genus(&self) -> usize {
        self.0.genus()
    }

    #[getter]
    fn is_integral(&self) -> bool {
        self.0.is_integral()
    }

    fn determinant<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        fraction(py, &self.0.determinant())
    }

    /// `det(tV - V^t)` shifted to lowest exponent 0, so that `Δ(1) = 1`.
    fn alexander_polynomial(&self) -> Laurent {
        Laurent(seifert::alexander_polynomial(&self.0))
    }

    /// Nonunit invariant factors of the Alexander module over `Q[t, t^-1]`.
    fn invariant_factors(&self) -> Vec<Laurent> {
        seifert::module_decomposition(&self.0).invariant_factors.into_iter().map(Laurent).collect()
    }

    /// Generators of the `k`-th elementary ideal (integral matrices only).
    fn elementary_ideal(&self, k: usize) -> PyResult<Vec<Laurent>> {
        let ideal = seifert::elementary_ideal(&self.0, k).map_err(err)?;
        Ok(ideal.generators.into_iter().map(Laurent).collect())
    }

    fn scalar_form<'py>(&self, py: Python<'py>) -> PyResult<Vec<Vec<Bound<'py, PyAny>>>> {
        rows(py, &seifert::scalar_form(&self.0).map_err(err)?.matrix)
    }

    fn t_action<'py>(&self, py: Python<'py>) -> PyResult<Vec<Vec<Bound<'py, PyAny>>>> {
        rows(py, &seifert::t_action(&self.0).map_err(err)?)
    }

    fn z_action<'py>(&self, py: Python<'py>) -> PyResult<Vec<Vec<Bound<'py, PyAny>>>> {
        rows(py, &seifert::z_action(&self.0).map_err(err)?)
    }

    #[pyo3(signature = (x, rho, row = true))]
    fn enlarge(&self, x: &Bound<'_, PyAny>, rho: &Bound<'_, PyAny>, row: bool) -> PyResult<Self> {
        let x = rational(x)?;
        let rho = rho.try_iter()?.map(|r| rational(&r?)).collect::<PyResult<Vec<_>>>()?;
        let w = if row { row_enlarge(&self.0, &x, &rho) } else { col_enlarge(&self.0, &x, &rho) };
        w.map(SeifertMatrix).map_err(err)
    }

    /// Undo an enlargement; returns the smaller matrix and the move name.
    fn reduce(&self) -> PyResult<(Self, &'static str)> {
        let (w, kind) = seifert::reduce(&self.0).map_err(err)?;
        Ok((SeifertMatrix(w), kind.name()))
    }

    /// `P V P^t` for a symplectic `P`.
    fn congruence(&self, p: &Bound<'_, PyAny>) -> PyResult<Self> {
        congruence(&self.0, &matrix(p)?).map(SeifertMatrix).map_err(err)
    }

    fn reduce_to_invertible(&self) -> (Self, Certificate) {
        let (w, cert) = seifert::reduce_to_invertible(&self.0);
        (SeifertMatrix(w), Certificate(cert))
    }

    /// Certificate carrying `V` to `Δ_n V Δ_n`.
    #[pyo3(signature = (n, integral = false))]
    fn realize_delta(&self, n: &Bound<'_, PyAny>, integral: bool) -> PyResult<Certificate> {
        let real = seifert::realize_delta(&self.0, &rational(n)?, integral).map_err(err)?;
        Ok(Certificate(real.certificate))
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("SeifertMatrix.from_json('{}')", self.to_json())
    }
}

/// A replayable list of elementary moves.
#[pyclass(module = "seifert_py", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
pub struct Certificate(seifert::Certificate);

#[pymethods]
impl Certificate {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        from_json(text).map(Certificate)
    }

    fn to_json(&self) -> String {
        self.0.to_json().to_string()
    }

    #[getter]
    fn flavor(&self) -> &'static str {
        self.0.flavor.name()
    }

    fn __len__(&self) -> usize {
        self.0.moves.len()
    }

    fn apply(&self, v: &SeifertMatrix) -> PyResult<SeifertMatrix> {
        seifert::apply_certificate(&v.0, &self.0).map(|o| SeifertMatrix(o.result)).map_err(err)
    }

    fn verify(&self, source: &SeifertMatrix, target: &SeifertMatrix) -> PyResult<bool> {
        verify_certificate(&source.0, &target.0, &self.0).map_err(err)
    }
}

/// A lattice in the scalar space of an invertible integral Seifert matrix.
#[pyclass(module = "seifert_py", frozen)]
pub struct Lattice(seifert::Lattice);

#[pymethods]
impl Lattice {
    /// Columns of `basis` are lattice vectors in the reference coordinates.
    #[new]
    #[pyo3(signature = (v, basis = None))]
    fn new(v: &SeifertMatrix, basis: Option<&Bound<'_, PyAny>>) -> PyResult<Self> {
        let space = seifert::ScalarSpace::from_seifert(&v.0).map_err(err)?;
        match basis {
            Some(b) => seifert::Lattice::new(space, matrix(b)?).map(Lattice).map_err(err),
            None => Ok(Lattice(seifert::Lattice::standard(space))),
        }
    }

    fn is_self_dual(&self) -> bool {
        self.0.is_self_dual()
    }

    fn is_admissible(&self) -> bool {
        self.0.is_admissible()
    }

    fn symplectic_basis<'py>(&self, py: Python<'py>) -> PyResult<Vec<Vec<Bound<'py, PyAny>>>> {
        rows(py, &self.0.symplectic_basis().map_err(err)?)
    }

    /// `n` when the lattices are n-adjacent, otherwise `None`.
    fn adjacency(&self, other: &Lattice) -> PyResult<Option<u64>> {
        let n = self.0.adjacency(&other.0).map_err(err)?;
        n.map(|n| u64::try_from(n).map_err(|e| PyValueError::new_err(e.to_string()))).transpose()
    }

    /// Seifert matrix in the given symplectic basis, or in a computed one.
    #[pyo3(signature = (basis = None))]
    fn seifert_matrix(&self, basis: Option<&Bound<'_, PyAny>>) -> PyResult<SeifertMatrix> {
        let b = match basis {
            Some(b) => matrix(b)?,
            None => self.0.symplectic_basis().map_err(err)?,
        };
        self.0.seifert_matrix(&b).map(SeifertMatrix).map_err(err)
    }
}

/// Compares invariants. The witness, if any, reads like `E2@t=-1: 1 vs 3`.
#[pyfunction]
#[pyo3(signature = (v, w, points = None))]
fn distinguish<'py>(
    py: Python<'py>,
    v: &SeifertMatrix,
    w: &SeifertMatrix,
    points: Option<&Bound<'py, PyAny>>,
) -> PyResult<Bound<'py, PyDict>> {
    let points = match points {
        Some(p) => p.try_iter()?.map(|x| rational(&x?)).collect::<PyResult<Vec<_>>>()?,
        None => seifert::default_points(),
    };
    let report = seifert::distinguish(&v.0, &w.0, &points).map_err(err)?;
    let d = PyDict::new(py);
    d.set_item("alexander_equal", report.alexander_equal)?;
    d.set_item("factors_equal", report.factors_equal)?;
    d.set_item("witness", report.integral_witness.as_ref().map(ToString::to_string))?;
    d.set_item("obstruction", report.has_obstruction())?;
    Ok(d)
}

/// Factors of a rational symplectic matrix, as `("delta", n)` or `("integral", rows)`.
#[pyfunction]
fn factor_symplectic<'py>(py: Python<'py>, p: &Bound<'py, PyAny>) -> PyResult<Vec<(&'static str, Bound<'py, PyAny>)>> {
    let f = seifert::factor_symplectic(&matrix(p)?).map_err(err)?;
    f.factors
        .iter()
        .map(|factor| match factor {
            Factor::Delta(d) => Ok(("delta", fraction(py, d.n())?)),
            Factor::Integral(m) => Ok(("integral", rows(py, m)?.into_pyobject(py)?.into_any())),
        })
        .collect()
}

/// `χ(num / den)`.
#[pyfunction]
fn chi<'py>(py: Python<'py>, num: &Laurent, den: &Laurent) -> PyResult<Bound<'py, PyAny>> {
    let f = seifert::RationalFunction::new(num.0.clone(), den.0.clone()).map_err(err)?;
    fraction(py, &seifert::chi(&f).map_err(err)?)
}

#[pymodule]
fn seifert_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Laurent>()?;
    m.add_class::<SeifertMatrix>()?;
    m.add_class::<Certificate>()?;
    m.add_class::<Lattice>()?;
    m.add_function(wrap_pyfunction!(distinguish, m)?)?;
    m.add_function(wrap_pyfunction!(factor_symplectic, m)?)?;
    m.add_function(wrap_pyfunction!(chi, m)?)?;
    Ok(())
}
