//! Python bindings. Rationals cross the boundary as strings like `"-3/2"`.

use megaideal::format::{algebra_to_json, parse_algebra, parse_fields};
use megaideal::lie::format_subspace;
use megaideal::vectorfield::family_variables;
use megaideal::{
    analyze, analyze_automorphisms, closure, essential_filter, extract_structure, parse_rational,
    AnalyzeOptions, ClosureOptions, Error, PolyVectorField, Rational, Subspace,
};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

fn err(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn rationals(xs: &[String]) -> PyResult<Vec<Rational>> {
    xs.iter()
        .map(|s| parse_rational(s).map_err(|e| PyValueError::new_err(format!("{s:?}: {e}"))))
        .collect()
}

fn strings(xs: &[Rational]) -> Vec<String> {
    xs.iter().map(|x| x.to_string()).collect()
}

fn rows(s: &Subspace) -> Vec<Vec<String>> {
    s.basis().row_vectors().map(strings).collect()
}

#[pyclass(name = "LieAlgebra", module = "megaideal_py", frozen)]
struct PyLieAlgebra {
    inner: megaideal::LieAlgebra,
}

impl PyLieAlgebra {
    fn subspace(&self, basis: Vec<Vec<String>>) -> PyResult<Subspace> {
        let n = self.inner.dim();
        let gens = basis
            .iter()
            .map(|v| {
                let v = rationals(v)?;
                if v.len() != n {
                    return Err(PyValueError::new_err(format!(
                        "vector has length {}, expected {n}",
                        v.len()
                    )));
                }
                Ok(v)
            })
            .collect::<PyResult<Vec<_>>>()?;
        Ok(Subspace::span(n, gens))
    }

    fn lattice(&self, budget: usize, full_prop34: bool) -> PyResult<megaideal::MegaidealLattice> {
        let options = ClosureOptions { budget, full_prop34 };
        closure(&self.inner, &[], options).map(|l| essential_filter(&l)).map_err(err)
    }
}

#[pymethods]
impl PyLieAlgebra {
    /// Parses an algebra file.
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(Self { inner: parse_algebra(text).map_err(err)? })
    }

    /// One of `m5`, `sl2d`, `heisenberg`, `sl2`, `sl2+z`.
    #[staticmethod]
    fn fixture(name: &str) -> PyResult<Self> {
        megaideal::fixtures::by_name(name)
            .map(|inner| Self { inner })
            .ok_or_else(|| PyValueError::new_err(format!("no fixture named {name:?}")))
    }

    #[staticmethod]
    fn abelian(n: usize) -> Self {
        Self { inner: megaideal::LieAlgebra::abelian(n) }
    }

    #[getter]
    fn name(&self) -> String {
        self.inner.name().to_string()
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    #[getter]
    fn basis(&self) -> Vec<String> {
        self.inner.basis_names().to_vec()
    }

    fn to_json(&self) -> String {
        algebra_to_json(&self.inner)
    }

    /// True when antisymmetry and Jacobi hold.
    fn validate(&self) -> bool {
        self.inner.validate().is_valid()
    }

    fn bracket(&self, x: Vec<String>, y: Vec<String>) -> PyResult<Vec<String>> {
        let (x, y) = (rationals(&x)?, rationals(&y)?);
        let n = self.inner.dim();
        if x.len() != n || y.len() != n {
            return Err(PyValueError::new_err(format!("vectors must have length {n}")));
        }
        Ok(strings(&self.inner.bracket(&x, &y)))
    }

    fn center(&self) -> Vec<Vec<String>> {
        rows(&self.inner.center())
    }

    fn radical(&self) -> Vec<Vec<String>> {
        rows(&self.inner.radical())
    }

    /// `derived`, `lower` or `upper`; one basis per term.
    #[pyo3(signature = (kind = "derived"))]
    fn series(&self, kind: &str) -> PyResult<Vec<Vec<Vec<String>>>> {
        let report = match kind {
            "derived" => self.inner.derived_series(),
            "lower" => self.inner.lower_central_series(),
            "upper" => self.inner.upper_central_series(),
            _ => return Err(PyValueError::new_err(format!("unknown series {kind:?}"))),
        };
        Ok(report.terms.iter().map(rows).collect())
    }

    fn is_ideal(&self, basis: Vec<Vec<String>>) -> PyResult<bool> {
        Ok(self.inner.is_ideal(&self.subspace(basis)?))
    }

    /// Closure lattice members as dicts with `basis`, `span`, `provenance`, `essential`.
    #[pyo3(signature = (budget = 4, full_prop34 = false))]
    fn megaideals<'py>(
        &self,
        py: Python<'py>,
        budget: usize,
        full_prop34: bool,
    ) -> PyResult<Vec<Bound<'py, PyDict>>> {
        let lattice = self.lattice(budget, full_prop34)?;
        lattice
            .members
            .iter()
            .map(|m| {
                let d = PyDict::new(py);
                d.set_item("basis", rows(&m.subspace))?;
                d.set_item("span", format_subspace(&m.subspace, self.inner.basis_names()))?;
                d.set_item("provenance", m.provenance())?;
                d.set_item("essential", m.essential)?;
                Ok(d)
            })
            .collect()
    }

    /// Solved automorphism parametrization in the adapted basis.
    fn automorphisms<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let lattice = self.lattice(4, false)?;
        let a = analyze_automorphisms(&self.inner, &lattice).map_err(err)?;
        let p = &a.parametrization;
        let d = PyDict::new(py);
        d.set_item("unknowns", p.unknowns().to_vec())?;
        d.set_item("pattern", p.shape.pattern_rows())?;
        let assignments = PyDict::new(py);
        for (u, poly) in &p.assignments {
            assignments.set_item(&p.unknowns()[*u], p.format(poly))?;
        }
        d.set_item("assignments", assignments)?;
        d.set_item("free_parameters", p.free_parameter_names())?;
        let residuals: Vec<String> = p.residual_equations.iter().map(|e| p.format(e)).collect();
        d.set_item("residual_equations", residuals)?;
        let side: Vec<String> = p.side_conditions.iter().map(|e| p.format(e)).collect();
        d.set_item("side_conditions", side)?;
        d.set_item("change_of_basis", a.basis.change_of_basis.row_vectors().map(strings).collect::<Vec<_>>())?;
        Ok(d)
    }

    /// The full analysis report as JSON text, plus its exit code.
    #[pyo3(signature = (budget = 4, full_prop34 = false, max_enum_dim = 16))]
    fn analyze(&self, budget: usize, full_prop34: bool, max_enum_dim: usize) -> (String, i32) {
        let options = AnalyzeOptions {
            closure: ClosureOptions { budget, full_prop34 },
            max_enum_dim,
        };
        let report = analyze(&self.inner, &algebra_to_json(&self.inner), options);
        (report.to_json(), report.exit_code)
    }

    fn __repr__(&self) -> String {
        format!("LieAlgebra({:?}, dim={})", self.inner.name(), self.inner.dim())
    }
}

fn field(variables: &[String], comps: &Bound<'_, PyDict>) -> PyResult<PolyVectorField> {
    let pairs = comps
        .iter()
        .map(|(k, v)| Ok((k.extract::<String>()?, v.extract::<String>()?)))
        .collect::<PyResult<Vec<_>>>()?;
    let borrowed: Vec<(&str, &str)> = pairs.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
    PolyVectorField::parse(variables, &borrowed).map_err(err)
}

/// Bracket of two vector fields given as `{variable: polynomial}` dicts.
/// Variables default to `t, x, u, u_x, f, g`.
#[pyfunction]
#[pyo3(signature = (q1, q2, variables = None))]
fn lie_bracket(
    q1: &Bound<'_, PyDict>,
    q2: &Bound<'_, PyDict>,
    variables: Option<Vec<String>>,
) -> PyResult<Vec<(String, String)>> {
    let vars = variables.unwrap_or_else(family_variables);
    let b = field(&vars, q1)?.lie_bracket(&field(&vars, q2)?).map_err(err)?;
    Ok(vars
        .iter()
        .zip(b.components())
        .filter(|(_, p)| !p.is_zero())
        .map(|(v, p)| (v.clone(), p.format(&vars)))
        .collect())
}

/// Structure constants of named fields from a field file.
#[pyfunction]
#[pyo3(signature = (fields_json, names = None, name = "extracted"))]
fn extract(fields_json: &str, names: Option<Vec<String>>, name: &str) -> PyResult<PyLieAlgebra> {
    let (_, all) = parse_fields(fields_json).map_err(err)?;
    let chosen = match names {
        None => all,
        Some(names) => names
            .iter()
            .map(|n| {
                all.iter()
                    .find(|(f, _)| f == n)
                    .cloned()
                    .ok_or_else(|| PyValueError::new_err(format!("no field named {n:?}")))
            })
            .collect::<PyResult<Vec<_>>>()?,
    };
    Ok(PyLieAlgebra { inner: extract_structure(name, &chosen).map_err(err)? })
}

#[pymodule]
fn megaideal_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyLieAlgebra>()?;
    m.add_function(wrap_pyfunction!(lie_bracket, m)?)?;
    m.add_function(wrap_pyfunction!(extract, m)?)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
