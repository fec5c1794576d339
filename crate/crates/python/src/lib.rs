//! Python bindings: rings, pp formulas, finitely presented modules, the
//! decision procedures and the class checkers.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use ppcalc_core::classes::{check_class, herzog_tensor_zero, is_pure_submodule, ClassName, PurityMode, TensorZero, Verdict};
use ppcalc_core::decide::{equivalent, leq, Evidence};
use ppcalc_core::eval::{satisfies, solution_subgroup};
use ppcalc_core::formula::{normalize, parse_formula, print_formula, FormulaBound, PpMatrixForm, Side};
use ppcalc_core::json::{certificate_artifact, countermodel_artifact, formula_to_json, module_to_json, parse_artifact, parse_module, parse_ring, verify as verify_artifact};
use ppcalc_core::linalg::Int;
use ppcalc_core::matrix::RingMatrix;
use ppcalc_core::module::{FpModule, ModElem, Subgroup};
use ppcalc_core::ring::{Ring, RingKind};

fn err(e: ppcalc_core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn side(s: &str) -> PyResult<Side> {
    s.parse().map_err(err)
}

fn to_json_string<T: serde::Serialize>(v: &T) -> PyResult<String> {
    serde_json::to_string(v).map_err(|e| PyValueError::new_err(e.to_string()))
}

fn bound(b: Option<(usize, usize, u64)>) -> FormulaBound {
    b.map_or_else(FormulaBound::default, |(r, w, c)| FormulaBound::new(r, w, c))
}

#[pyclass(name = "Ring", frozen, skip_from_py_object, eq)]
#[derive(Clone, PartialEq)]
struct PyRing(Ring);

#[pymethods]
impl PyRing {
    #[staticmethod]
    fn integers() -> Self {
        PyRing(Ring::integers())
    }

    #[staticmethod]
    fn modular(n: u64) -> PyResult<Self> {
        Ring::modular(n).map(PyRing).map_err(err)
    }

    /// `{"kind":"table","orders":[...],"mul":[...],"one":[...]}` and the like.
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        parse_ring(text).map(PyRing).map_err(err)
    }

    fn is_commutative(&self) -> bool {
        self.0.is_commutative()
    }

    fn is_finite(&self) -> bool {
        !matches!(self.0.kind(), RingKind::Integers)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Ring({})", self.0)
    }
}

#[pyclass(name = "Formula", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyFormula(PpMatrixForm);

#[pymethods]
impl PyFormula {
    #[new]
    #[pyo3(signature = (text, ring, side = "left", arity = 1))]
    fn new(text: &str, ring: &PyRing, side: &str, arity: usize) -> PyResult<Self> {
        let p = parse_formula(text, &ring.0, self::side(side)?, arity).map_err(err)?;
        Ok(PyFormula(normalize(&p)))
    }

    #[getter]
    fn arity(&self) -> usize {
        self.0.arity()
    }

    #[getter]
    fn side(&self) -> &'static str {
        match self.0.side() {
            Side::Left => "left",
            Side::Right => "right",
        }
    }

    #[getter]
    fn ring(&self) -> PyRing {
        PyRing(self.0.ring().clone())
    }

    fn dual(&self) -> Self {
        PyFormula(self.0.dual())
    }

    fn meet(&self, other: &PyFormula) -> PyResult<Self> {
        self.0.meet(&other.0).map(PyFormula).map_err(err)
    }

    fn join(&self, other: &PyFormula) -> PyResult<Self> {
        self.0.join(&other.0).map(PyFormula).map_err(err)
    }

    /// Whether `self ≤ other` holds in every module.
    fn leq(&self, other: &PyFormula) -> PyResult<bool> {
        Ok(leq(&self.0, &other.0).map_err(err)?.verdict)
    }

    fn equivalent(&self, other: &PyFormula) -> PyResult<bool> {
        equivalent(&self.0, &other.0).map_err(err)
    }

    /// The certificate (valid) or countermodel (invalid) for `self ≤ other`
    /// as a JSON artifact accepted by `verify`, or `None` when neither exists.
    fn evidence(&self, other: &PyFormula) -> PyResult<Option<String>> {
        let d = leq(&self.0, &other.0).map_err(err)?;
        let artifact = match &d.evidence {
            Some(Evidence::Certificate(c)) => certificate_artifact(&self.0, &other.0, c),
            Some(Evidence::Countermodel { module, witness }) => countermodel_artifact(&self.0, &other.0, module, witness),
            None => return Ok(None),
        };
        to_json_string(&artifact.map_err(err)?).map(Some)
    }

    fn to_json(&self) -> PyResult<String> {
        to_json_string(&formula_to_json(&self.0).map_err(err)?)
    }

    fn __str__(&self) -> String {
        print_formula(&self.0)
    }

    fn __repr__(&self) -> String {
        format!("Formula({:?})", print_formula(&self.0))
    }
}

#[pyclass(name = "Module", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyModule_(FpModule);

impl PyModule_ {
    fn element(&self, coeffs: &[i64]) -> PyResult<ModElem> {
        self.0.combination_ints(coeffs).map_err(err)
    }

    fn coefficients(&self, e: &ModElem) -> Vec<Int> {
        self.0.express(e).iter().map(|c| c.coords()[0].clone()).collect()
    }

    fn listing(&self, s: &Subgroup, limit: u64) -> PyResult<Vec<Vec<Vec<Int>>>> {
        let mut all = s
            .elements(limit)
            .ok_or_else(|| PyValueError::new_err(format!("solution set exceeds {limit} elements")))?;
        all.sort();
        Ok(all.iter().map(|t| t.iter().map(|e| self.coefficients(e)).collect()).collect())
    }
}

#[pymethods]
impl PyModule_ {
    /// `generators` generators subject to `relations`, each a list of
    /// integer coefficients (one per generator).
    #[new]
    #[pyo3(signature = (ring, generators, relations = Vec::new(), side = "left"))]
    fn new(ring: &PyRing, generators: usize, relations: Vec<Vec<i64>>, side: &str) -> PyResult<Self> {
        let r = &ring.0;
        let entries = relations.iter().flatten().map(|&c| r.int(c)).collect();
        if relations.iter().any(|row| row.len() != generators) {
            return Err(PyValueError::new_err("each relation needs one coefficient per generator"));
        }
        let rel = RingMatrix::new(r, relations.len(), generators, entries).map_err(err)?;
        FpModule::new(r, self::side(side)?, generators, rel).map(PyModule_).map_err(err)
    }

    #[staticmethod]
    #[pyo3(signature = (ring, n, side = "left"))]
    fn cyclic(ring: &PyRing, n: i64, side: &str) -> PyResult<Self> {
        FpModule::cyclic(&ring.0, self::side(side)?, &ring.0.int(n)).map(PyModule_).map_err(err)
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        parse_module(text, None).map(PyModule_).map_err(err)
    }

    fn to_json(&self) -> PyResult<String> {
        to_json_string(&module_to_json(&self.0).map_err(err)?)
    }

    #[getter]
    fn ring(&self) -> PyRing {
        PyRing(self.0.ring().clone())
    }

    /// The order of the module, or `None` when it is infinite.
    fn size(&self) -> Option<Int> {
        self.0.size()
    }

    fn describe(&self) -> String {
        self.0.describe()
    }

    /// Every tuple in `φ(M)`, as generator coefficients.
    #[pyo3(signature = (formula, limit = 4096))]
    fn eval(&self, formula: &PyFormula, limit: u64) -> PyResult<Vec<Vec<Vec<Int>>>> {
        let s = solution_subgroup(&self.0, &formula.0).map_err(err)?;
        self.listing(&s, limit)
    }

    fn satisfies(&self, formula: &PyFormula, tuple: Vec<Vec<i64>>) -> PyResult<bool> {
        let t: Vec<ModElem> = tuple.iter().map(|c| self.element(c)).collect::<PyResult<_>>()?;
        satisfies(&self.0, &formula.0, &t).map_err(err)
    }

    /// Class membership: returns `(verdict, witness formula or None)` with
    /// verdict one of `holds`, `fails`, `holds-at-bound`.
    #[pyo3(signature = (class_name, bound = None))]
    fn check(&self, class_name: &str, bound: Option<(usize, usize, u64)>) -> PyResult<(String, Option<String>)> {
        let class: ClassName = class_name.parse().map_err(err)?;
        let r = check_class(&self.0, class, &self::bound(bound)).map_err(err)?;
        let formula = r.witness.and_then(|w| w.formula).map(|f| print_formula(&f));
        Ok((verdict(r.verdict).to_string(), formula))
    }

    /// Whether the submodule generated by `generators` is pure.
    #[pyo3(signature = (generators, bound = None))]
    fn is_pure(&self, generators: Vec<Vec<i64>>, bound: Option<(usize, usize, u64)>) -> PyResult<bool> {
        let gens: Vec<ModElem> = generators.iter().map(|c| self.element(c)).collect::<PyResult<_>>()?;
        let s = Subgroup::from_elems(&self.0, &gens);
        let mode = match self.0.ring().kind() {
            RingKind::Table => PurityMode::Bounded(self::bound(bound)),
            _ => PurityMode::ExactZ,
        };
        Ok(is_pure_submodule(&self.0, &s, mode).map_err(err)?.verdict.holds())
    }

    fn __repr__(&self) -> String {
        format!("Module({} over {})", self.0.describe(), self.0.ring())
    }
}

fn verdict(v: Verdict) -> &'static str {
    match v {
        Verdict::Holds => "holds",
        Verdict::Fails => "fails",
        Verdict::HoldsAtBound => "holds-at-bound",
    }
}

/// Decides `ā ⊗ b̄ = 0` for a right module `a` and a left module `b`.
/// Returns `(zero, witness formula or None)`.
#[pyfunction]
#[pyo3(signature = (a, abar, b, bbar, bound = None))]
fn tensor_zero(
    a: &PyModule_,
    abar: Vec<Vec<i64>>,
    b: &PyModule_,
    bbar: Vec<Vec<i64>>,
    bound: Option<(usize, usize, u64)>,
) -> PyResult<(bool, Option<String>)> {
    let x: Vec<ModElem> = abar.iter().map(|c| a.element(c)).collect::<PyResult<_>>()?;
    let y: Vec<ModElem> = bbar.iter().map(|c| b.element(c)).collect::<PyResult<_>>()?;
    let t = herzog_tensor_zero(&a.0, &x, &b.0, &y, &self::bound(bound)).map_err(err)?;
    Ok(match t {
        TensorZero::ZeroWithWitness(phi) => (true, Some(print_formula(&phi))),
        TensorZero::ZeroNoWitness => (true, None),
        TensorZero::Nonzero => (false, None),
    })
}

/// Re-checks a JSON artifact (certificate, countermodel or witness).
#[pyfunction]
fn verify(text: &str) -> PyResult<bool> {
    verify_artifact(&parse_artifact(text).map_err(err)?).map_err(err)
}

#[pymodule]
fn ppcalc(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyRing>()?;
    m.add_class::<PyFormula>()?;
    m.add_class::<PyModule_>()?;
    m.add_function(wrap_pyfunction!(tensor_zero, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
