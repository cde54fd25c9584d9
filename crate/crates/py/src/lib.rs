//! Python bindings: models and weights load from the same TOML documents the
//! CLI reads, and the main operations return plain dicts/lists.

use std::collections::HashMap;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use eiscomb_core::critical;
use eiscomb_core::field;
use eiscomb_core::fixtures;
use eiscomb_core::gamma;
use eiscomb_core::input;
use eiscomb_core::rational::Half;
use eiscomb_core::signature;
use eiscomb_core::sweep;
use eiscomb_core::weight;
use eiscomb_core::weyl;

fn err(e: eiscomb_core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// A field model plus the Galois elements its document carries.
#[pyclass(skip_from_py_object)]
#[derive(Clone)]
struct Model {
    inner: field::FieldModel,
    galois: Vec<field::GaloisElement>,
}

#[pymethods]
impl Model {
    /// Parses a model TOML document.
    #[staticmethod]
    fn from_toml(text: &str) -> PyResult<Model> {
        let parsed = input::parse_model(text).map_err(err)?;
        Ok(Model {
            inner: parsed.model,
            galois: parsed.galois,
        })
    }

    /// The two-embedding model with `F₁ = F`.
    #[staticmethod]
    fn imaginary_quadratic() -> Model {
        Model {
            inner: field::FieldModel::imaginary_quadratic(),
            galois: vec![
                field::GaloisElement {
                    name: "id".into(),
                    perm: vec![0, 1],
                },
                field::GaloisElement {
                    name: "conj".into(),
                    perm: vec![1, 0],
                },
            ],
        }
    }

    /// The degree-6 model with its full left-composition Galois action.
    #[staticmethod]
    fn s3() -> Model {
        Model {
            inner: fixtures::s3_model(),
            galois: fixtures::S3_LABELS
                .iter()
                .map(|g| fixtures::s3_galois(g))
                .collect(),
        }
    }

    /// The TR-case model with three real labels downstairs.
    #[staticmethod]
    fn tr_cubic() -> Model {
        Model {
            inner: fixtures::tr_model(),
            galois: Vec::new(),
        }
    }

    #[getter]
    fn labels(&self) -> Vec<String> {
        self.inner.labels().to_vec()
    }

    #[getter]
    fn galois_names(&self) -> Vec<String> {
        self.galois.iter().map(|g| g.name.clone()).collect()
    }

    /// Every structural check as `(name, ok, detail)`.
    fn validate(&self) -> Vec<(String, bool, String)> {
        self.inner
            .validate()
            .checks
            .into_iter()
            .map(|c| (c.name, c.ok, c.detail))
            .collect()
    }

    fn is_valid(&self) -> bool {
        self.inner.validate().is_valid()
    }

    /// `"CM"` or `"TR"`.
    fn classify(&self) -> PyResult<String> {
        Ok(format!("{:?}", self.inner.classify().map_err(err)?))
    }

    /// Place/fiber action of a named Galois element.
    fn galois_place_data<'py>(&self, py: Python<'py>, name: &str) -> PyResult<Bound<'py, PyDict>> {
        let g = self.galois_by_name(name)?;
        let data = self.inner.galois_place_data(&g).map_err(err)?;
        let out = PyDict::new(py);
        out.set_item("f1_perm", &data.f1_perm)?;
        out.set_item("place_perm", &data.f1_place_perm)?;
        out.set_item("j_gamma", &data.j_gamma)?;
        out.set_item("fiberwise", &data.fiberwise)?;
        out.set_item("place_perm_sign", data.place_perm_sign())?;
        out.set_item("fiberwise_sign", data.fiberwise_sign())?;
        Ok(out)
    }

    fn __repr__(&self) -> String {
        format!(
            "Model({} embeddings, {} conjugations)",
            self.inner.embedding_count(),
            self.inner.conjugations().len()
        )
    }
}

impl Model {
    fn galois_by_name(&self, name: &str) -> PyResult<field::GaloisElement> {
        self.galois
            .iter()
            .find(|g| g.name == name)
            .cloned()
            .ok_or_else(|| PyValueError::new_err(format!("no Galois element named `{name}`")))
    }
}

/// A highest weight in b-coordinates.
#[pyclass(skip_from_py_object)]
#[derive(Clone)]
struct PyWeight {
    inner: weight::Weight,
}

#[pymethods]
impl PyWeight {
    #[new]
    fn new(n: usize, components: HashMap<String, Vec<i64>>) -> PyResult<PyWeight> {
        let inner =
            weight::Weight::new(n, components.into_iter().collect()).map_err(err)?;
        Ok(PyWeight { inner })
    }

    #[staticmethod]
    fn from_toml(text: &str) -> PyResult<PyWeight> {
        Ok(PyWeight {
            inner: input::parse_weight(text).map_err(err)?,
        })
    }

    #[getter]
    fn rank(&self) -> usize {
        self.inner.rank()
    }

    fn component(&self, label: &str) -> PyResult<Vec<i64>> {
        Ok(self.inner.component(label).map_err(err)?.to_vec())
    }

    fn is_dominant(&self) -> bool {
        self.inner.is_dominant()
    }

    /// The common purity weight across the model's conjugations, or None.
    fn strongly_pure(&self, model: &Model) -> Option<i64> {
        self.inner.is_strongly_pure(&model.inner)
    }

    fn is_base_change(&self, model: &Model) -> PyResult<bool> {
        self.inner.is_base_change(&model.inner).map_err(err)
    }

    fn dual(&self) -> PyWeight {
        PyWeight {
            inner: self.inner.dual(),
        }
    }

    fn tate_twist(&self, m: i64) -> PyWeight {
        PyWeight {
            inner: self.inner.tate_twist(m),
        }
    }

    fn __repr__(&self) -> String {
        format!("Weight(n={}, {:?})", self.inner.rank(), self.inner.components())
    }
}

/// Abelian and cuspidal widths plus the critical set of a pair.
#[pyfunction]
fn critical_set<'py>(
    py: Python<'py>,
    model: &Model,
    mu: &PyWeight,
    mu_prime: &PyWeight,
) -> PyResult<Bound<'py, PyDict>> {
    let data = critical::widths(&mu.inner, &mu_prime.inner, &model.inner).map_err(err)?;
    let set = critical::critical_set_from_widths(&data);
    let out = PyDict::new(py);
    out.set_item("abelian_width", data.abelian.to_string())?;
    out.set_item("cuspidal_width", data.cuspidal)?;
    out.set_item("empty", set.is_empty())?;
    out.set_item("lower", set.lower.to_string())?;
    out.set_item("upper", set.upper.to_string())?;
    out.set_item(
        "points",
        set.points().iter().map(|m| m.to_string()).collect::<Vec<_>>(),
    )?;
    Ok(out)
}

/// The balanced Kostant representative straightening `μ + μ'`, as a list of
/// `(label, kappa, length)`, or None.
#[pyfunction]
#[allow(clippy::type_complexity)]
fn find_balanced_kostant(
    model: &Model,
    mu: &PyWeight,
    mu_prime: &PyWeight,
) -> PyResult<Option<Vec<(String, Vec<usize>, usize)>>> {
    let rep =
        critical::find_balanced_kostant(&mu.inner, &mu_prime.inner, &model.inner).map_err(err)?;
    Ok(rep.map(|w| {
        model
            .inner
            .labels()
            .iter()
            .zip(&w.components)
            .map(|(label, k)| (label.clone(), k.entries().to_vec(), k.length()))
            .collect()
    }))
}

/// All balanced representatives making `μ + μ'` dominant, by enumeration.
#[pyfunction]
#[pyo3(signature = (model, mu, mu_prime, budget = 10_000_000))]
fn brute_force_balanced(
    model: &Model,
    mu: &PyWeight,
    mu_prime: &PyWeight,
    budget: u64,
) -> PyResult<Vec<Vec<Vec<usize>>>> {
    let reps = critical::brute_force_balanced(&mu.inner, &mu_prime.inner, &model.inner, budget)
        .map_err(err)?;
    Ok(reps
        .into_iter()
        .map(|w| w.components.iter().map(|k| k.entries().to_vec()).collect())
        .collect())
}

/// The exact ratio `L_∞(m)/L_∞(m+1)` as
/// `{numerator, denominator, two_exponent, pi_exponent_times_2, display}`.
#[pyfunction]
fn rankin_selberg_ratio<'py>(
    py: Python<'py>,
    model: &Model,
    mu: &PyWeight,
    mu_prime: &PyWeight,
    m: &str,
) -> PyResult<Bound<'py, PyDict>> {
    let m = Half::parse(m).map_err(err)?;
    let ratio =
        gamma::rankin_selberg_ratio(&mu.inner, &mu_prime.inner, &model.inner, m).map_err(err)?;
    let schema = ratio.to_schema().map_err(err)?;
    let out = PyDict::new(py);
    out.set_item("numerator", schema.numerator)?;
    out.set_item("denominator", schema.denominator)?;
    out.set_item("two_exponent", schema.two_exponent)?;
    out.set_item("pi_exponent_times_2", schema.pi_exponent_times_2)?;
    out.set_item("display", ratio.to_string())?;
    out.set_item("value", ratio.to_f64())?;
    Ok(out)
}

/// `L(m, f)/L(m+1, f) = 2π/(m+e)` for exponents `(alpha, beta)`, rendered
/// symbolically.
#[pyfunction]
fn successive_ratio(alpha: &str, beta: &str, m: &str) -> PyResult<String> {
    let f = gamma::AbelianFactor::new(
        Half::parse(alpha).map_err(err)?,
        Half::parse(beta).map_err(err)?,
    );
    let ratio = gamma::successive_ratio(&f, Half::parse(m).map_err(err)?).map_err(err)?;
    Ok(ratio.to_string())
}

/// Numeric GL(2) intertwining integral, converging to `2π/(2m−1)`.
#[pyfunction]
#[pyo3(signature = (m, tolerance = 1e-7))]
fn gl2_intertwining_numeric(m: u32, tolerance: f64) -> f64 {
    let r_max = gamma::gl2_r_max_for_tolerance(m, tolerance);
    gamma::gl2_intertwining_numeric(m, r_max, gamma::Gl2Quadrature::Fast)
}

/// The minimal-word factorization schedule as `(reflection, i, j)` triples.
#[pyfunction]
fn factorization_schedule(n: usize, n_prime: usize) -> Vec<(usize, usize, usize)> {
    gamma::factorization_schedule(n, n_prime)
        .into_iter()
        .map(|s| (s.reflection, s.chi, s.chi_prime))
        .collect()
}

/// Signature report for one named Galois element, using the representative
/// built from the pair.
#[pyfunction]
fn signatures<'py>(
    py: Python<'py>,
    model: &Model,
    mu: &PyWeight,
    mu_prime: &PyWeight,
    galois: &str,
) -> PyResult<Bound<'py, PyDict>> {
    let g = model.galois_by_name(galois)?;
    let w = critical::find_balanced_kostant(&mu.inner, &mu_prime.inner, &model.inner)
        .map_err(err)?
        .ok_or_else(|| PyValueError::new_err("no balanced dominant representative"))?;
    let report = signature::product_identity(&w, &g, &model.inner).map_err(err)?;
    let out = PyDict::new(py);
    out.set_item("epsilon_direct", report.epsilon_direct)?;
    out.set_item("epsilon_formula", report.epsilon_formula)?;
    out.set_item("epsilon_input_ordering", report.epsilon_input_ordering)?;
    out.set_item("place_perm_sign", report.place_perm_sign)?;
    out.set_item("j_gamma", report.j_gamma)?;
    out.set_item("product", report.product)?;
    out.set_item("fiberwise_sign_pow", report.fiberwise_sign_pow)?;
    Ok(out)
}

/// Cohomology-degree numerology for the `(n, n')`-parabolic with `r` places.
#[pyfunction]
fn degree_table<'py>(
    py: Python<'py>,
    n: usize,
    n_prime: usize,
    r: usize,
) -> PyResult<Bound<'py, PyDict>> {
    let t = weyl::degree_table(n, n_prime, r);
    let out = PyDict::new(py);
    out.set_item("b_complex", t.b_complex)?;
    out.set_item("t_complex", t.t_complex)?;
    out.set_item("b_field", t.b_field)?;
    out.set_item("t_field", t.t_field)?;
    out.set_item("bottom_identity", t.bottom_identity)?;
    out.set_item("top_identity", t.top_identity)?;
    Ok(out)
}

/// Exhaustive combinatorial-lemma sweep; returns `(checked, counterexamples)`.
#[pyfunction]
#[pyo3(signature = (n, n_prime, lo, hi, budget = 10_000_000))]
fn comb_lemma_sweep(
    n: usize,
    n_prime: usize,
    lo: i64,
    hi: i64,
    budget: u64,
) -> PyResult<(u64, Vec<String>)> {
    let out =
        sweep::comb_lemma_sweep_exhaustive(n, n_prime, lo, hi, budget, false).map_err(err)?;
    Ok((out.checked, out.counterexamples))
}

#[pymodule]
fn eiscomb_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Model>()?;
    m.add_class::<PyWeight>()?;
    m.add_function(wrap_pyfunction!(critical_set, m)?)?;
    m.add_function(wrap_pyfunction!(find_balanced_kostant, m)?)?;
    m.add_function(wrap_pyfunction!(brute_force_balanced, m)?)?;
    m.add_function(wrap_pyfunction!(rankin_selberg_ratio, m)?)?;
    m.add_function(wrap_pyfunction!(successive_ratio, m)?)?;
    m.add_function(wrap_pyfunction!(gl2_intertwining_numeric, m)?)?;
    m.add_function(wrap_pyfunction!(factorization_schedule, m)?)?;
    m.add_function(wrap_pyfunction!(signatures, m)?)?;
    m.add_function(wrap_pyfunction!(degree_table, m)?)?;
    m.add_function(wrap_pyfunction!(comb_lemma_sweep, m)?)?;
    Ok(())
}
