use num_bigint::BigUint;
use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;

use kclosure::actions::{block_systems, is_primitive, orbits, transitivity_degree};
use kclosure::closure::{are_k_equivalent, k_closure, k_closure_with, partition_r_closure, Engine};
use kclosure::constructions::{direct_product_disjoint, wreath_imprimitive, wreath_product_action};
use kclosure::io::{parse_any, write_json, write_text};
use kclosure::structure::{composition_factors, is_solvable, socle};
use kclosure::{Budget, Error, Group, Permutation};

create_exception!(kclosure, KClosureError, PyException);
create_exception!(kclosure, BudgetExceeded, KClosureError);

fn err(e: Error) -> PyErr {
    match e {
        Error::Budget { .. } => BudgetExceeded::new_err(e.to_string()),
        Error::InvalidParameter(_) | Error::Parse(_) | Error::DegreeMismatch { .. } => {
            PyValueError::new_err(e.to_string())
        }
        _ => KClosureError::new_err(e.to_string()),
    }
}

fn budget(tuples: Option<u64>) -> Budget {
    let b = Budget::from_env();
    match tuples {
        Some(t) => b.with_tuples(t),
        None => b,
    }
}

/// A permutation group on `{0, ..., degree-1}`.
#[pyclass(name = "Group", module = "kclosure", frozen)]
struct PyGroup(Group);

#[pymethods]
impl PyGroup {
    /// Generators given as image lists.
    #[new]
    fn new(degree: usize, generators: Vec<Vec<usize>>) -> PyResult<Self> {
        let gens = generators
            .into_iter()
            .map(Permutation::from_images)
            .collect::<Result<Vec<_>, _>>()
            .map_err(err)?;
        Group::new(degree, gens).map(PyGroup).map_err(err)
    }

    /// Parses the text or JSON group format.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        parse_any(text).map(PyGroup).map_err(err)
    }

    #[staticmethod]
    fn symmetric(n: usize) -> Self {
        PyGroup(Group::symmetric(n))
    }

    #[staticmethod]
    fn alternating(n: usize) -> Self {
        PyGroup(Group::alternating(n))
    }

    #[staticmethod]
    fn cyclic(n: usize) -> Self {
        PyGroup(Group::cyclic(n))
    }

    #[getter]
    fn degree(&self) -> usize {
        self.0.degree()
    }

    fn order(&self) -> BigUint {
        self.0.order()
    }

    fn generators(&self) -> Vec<Vec<usize>> {
        self.0.generators().iter().map(|p| p.images().to_vec()).collect()
    }

    fn contains(&self, images: Vec<usize>) -> PyResult<bool> {
        let p = Permutation::from_images(images).map_err(err)?;
        self.0.contains(&p).map_err(err)
    }

    fn is_subgroup_of(&self, other: &PyGroup) -> PyResult<bool> {
        self.0.is_subgroup_of(&other.0).map_err(err)
    }

    fn orbits(&self) -> Vec<Vec<usize>> {
        orbits(&self.0)
    }

    fn transitivity_degree(&self) -> usize {
        transitivity_degree(&self.0)
    }

    fn is_primitive(&self) -> bool {
        is_primitive(&self.0)
    }

    fn is_solvable(&self) -> bool {
        is_solvable(&self.0)
    }

    fn base_size(&self) -> usize {
        self.0.base_size()
    }

    fn stabilizer(&self, point: usize) -> Self {
        PyGroup(self.0.stabilizer(point))
    }

    /// `G^(k)`; `engine` is "exhaustive", "backtracking" or "shortcut".
    #[pyo3(signature = (k, engine=None, budget=None))]
    fn closure(&self, k: usize, engine: Option<&str>, budget: Option<u64>) -> PyResult<Self> {
        let b = self::budget(budget);
        let r = match engine {
            Some(e) => {
                let e: Engine = e.parse().map_err(err)?;
                k_closure_with(&self.0, k, e, &b)
            }
            None => k_closure(&self.0, k, &b),
        };
        r.map(|r| PyGroup(r.group)).map_err(err)
    }

    /// `None` when equivalent, else `(first, second, together_in)`.
    #[pyo3(signature = (other, k, budget=None))]
    fn equivalence_witness(
        &self,
        other: &PyGroup,
        k: usize,
        budget: Option<u64>,
    ) -> PyResult<Option<(Vec<usize>, Vec<usize>, usize)>> {
        let w = are_k_equivalent(&self.0, &other.0, k, &self::budget(budget)).map_err(err)?;
        Ok(w.map(|w| (w.first, w.second, w.together_in)))
    }

    #[pyo3(signature = (other, k, budget=None))]
    fn is_k_equivalent(&self, other: &PyGroup, k: usize, budget: Option<u64>) -> PyResult<bool> {
        Ok(self.equivalence_witness(other, k, budget)?.is_none())
    }

    #[pyo3(signature = (r, budget=None))]
    fn partition_closure(&self, r: usize, budget: Option<u64>) -> PyResult<Self> {
        partition_r_closure(&self.0, r, &self::budget(budget)).map(PyGroup).map_err(err)
    }

    fn block_systems(&self) -> PyResult<Vec<Vec<Vec<usize>>>> {
        Ok(block_systems(&self.0).map_err(err)?.into_iter().map(|s| s.blocks).collect())
    }

    fn composition_factors(&self) -> Vec<String> {
        composition_factors(&self.0, &Budget::from_env())
            .factors
            .iter()
            .map(|f| f.label.to_string())
            .collect()
    }

    fn socle(&self) -> PyResult<Self> {
        socle(&self.0, &Budget::from_env()).map(PyGroup).map_err(err)
    }

    fn to_text(&self) -> String {
        write_text(&self.0)
    }

    fn to_json(&self) -> String {
        write_json(&self.0)
    }

    fn __eq__(&self, other: &PyGroup) -> PyResult<bool> {
        self.0.equals(&other.0).map_err(err)
    }

    fn __repr__(&self) -> String {
        format!("<Group of degree {} and order {}>", self.0.degree(), self.0.order())
    }
}

#[pyfunction]
fn load_corpus(name: &str) -> PyResult<PyGroup> {
    kclosure::corpus::load_corpus(name).map(PyGroup).map_err(err)
}

/// Imprimitive wreath product `L wr K`.
#[pyfunction]
fn wreath_product(l: &PyGroup, k: &PyGroup) -> PyGroup {
    PyGroup(wreath_imprimitive(&l.0, &k.0))
}

#[pyfunction]
#[pyo3(signature = (l, k, budget=None))]
fn product_action(l: &PyGroup, k: &PyGroup, budget: Option<u64>) -> PyResult<PyGroup> {
    wreath_product_action(&l.0, &k.0, &self::budget(budget)).map(PyGroup).map_err(err)
}

#[pyfunction]
fn direct_product(a: &PyGroup, b: &PyGroup) -> PyGroup {
    PyGroup(direct_product_disjoint(&a.0, &b.0))
}

/// The audit report as JSON.
#[pyfunction]
fn audit_c6() -> String {
    serde_json::to_string(&kclosure::structure::audit_c6()).expect("report serializes")
}

/// The acceptance suite report as JSON.
#[pyfunction]
#[pyo3(signature = (filter=None, budget=None))]
fn verify(py: Python<'_>, filter: Option<String>, budget: Option<u64>) -> String {
    let b = self::budget(budget);
    let suite = py.detach(|| kclosure::verify::run_suite(&b, filter.as_deref()));
    serde_json::to_string(&suite).expect("report serializes")
}

#[pymodule]
#[pyo3(name = "kclosure")]
fn kclosure_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGroup>()?;
    m.add("KClosureError", m.py().get_type::<KClosureError>())?;
    m.add("BudgetExceeded", m.py().get_type::<BudgetExceeded>())?;
    m.add_function(wrap_pyfunction!(load_corpus, m)?)?;
    m.add_function(wrap_pyfunction!(wreath_product, m)?)?;
    m.add_function(wrap_pyfunction!(product_action, m)?)?;
    m.add_function(wrap_pyfunction!(direct_product, m)?)?;
    m.add_function(wrap_pyfunction!(audit_c6, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
