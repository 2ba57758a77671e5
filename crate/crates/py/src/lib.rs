//! Python bindings: multivector arithmetic, solution-family fields, the
//! mass intertwining transform, quadrature rules, the integral-theorem
//! operations, and the verification suites.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use cliffcheck::algebra::{blade_product as core_blade_product, Multivector as CoreMv, Point};
use cliffcheck::basis;
use cliffcheck::field::{CliffordField, SolutionClass};
use cliffcheck::integral;
use cliffcheck::operators::{self, StencilSpec};
use cliffcheck::quadrature::{self, Domain, QuadratureRule as CoreRule};
use cliffcheck::report::SuiteConfig;
use cliffcheck::suites::{run_suite as core_run_suite, SuiteName};
use cliffcheck::transform::{self, MassTerm as CoreMass, TransformSpec};
use cliffcheck::Convention;

fn to_py_err(e: cliffcheck::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse_convention(text: &str) -> PyResult<Convention> {
    text.parse().map_err(to_py_err)
}

fn point_from(coords: &[f64], n: u8) -> PyResult<Point> {
    if coords.len() != n as usize + 1 {
        return Err(PyValueError::new_err(format!(
            "point needs {} coordinates (y0 first), got {}",
            n as usize + 1,
            coords.len()
        )));
    }
    Ok(Point::from_coords(coords))
}

/// Element of Cl(0,n) with real coefficients indexed by blade bitmask.
#[pyclass(name = "Multivector", from_py_object)]
#[derive(Clone)]
struct PyMultivector {
    inner: CoreMv<f64>,
}

#[pymethods]
impl PyMultivector {
    #[new]
    #[pyo3(signature = (n, coeffs = None))]
    fn new(n: u8, coeffs: Option<Vec<f64>>) -> PyResult<Self> {
        let inner = match coeffs {
            Some(c) => CoreMv::from_coeffs(n, c).map_err(to_py_err)?,
            None => CoreMv::zero(n),
        };
        Ok(PyMultivector { inner })
    }

    #[staticmethod]
    fn scalar(n: u8, value: f64) -> Self {
        PyMultivector {
            inner: CoreMv::scalar(n, value),
        }
    }

    /// Basis generator e_j (1-based); j = 0 gives the identity e0.
    #[staticmethod]
    fn basis(n: u8, j: usize) -> PyResult<Self> {
        if j > n as usize {
            return Err(PyValueError::new_err(format!("generator e{j} needs j <= {n}")));
        }
        Ok(PyMultivector {
            inner: CoreMv::basis(n, j),
        })
    }

    #[getter]
    fn n(&self) -> u8 {
        self.inner.n()
    }

    fn coeffs(&self) -> Vec<f64> {
        self.inner.coeffs().to_vec()
    }

    fn modulus(&self) -> f64 {
        self.inner.modulus()
    }

    fn conjugate(&self) -> Self {
        PyMultivector {
            inner: self.inner.conjugate(),
        }
    }

    fn grade(&self, k: usize) -> Self {
        PyMultivector {
            inner: self.inner.grade(k),
        }
    }

    fn scale(&self, k: f64) -> Self {
        PyMultivector {
            inner: self.inner.scale(k),
        }
    }

    /// Power-series Clifford exponential.
    fn exp(&self) -> PyResult<Self> {
        Ok(PyMultivector {
            inner: self.inner.clifford_exp().map_err(to_py_err)?,
        })
    }

    fn inverse_paravector(&self) -> PyResult<Self> {
        Ok(PyMultivector {
            inner: self.inner.inverse_paravector().map_err(to_py_err)?,
        })
    }

    fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.inner.n() == other.inner.n() && self.inner.distance(&other.inner) <= tol
    }

    fn __add__(&self, other: &Self) -> PyResult<Self> {
        self.check_n(other)?;
        Ok(PyMultivector {
            inner: &self.inner + &other.inner,
        })
    }

    fn __sub__(&self, other: &Self) -> PyResult<Self> {
        self.check_n(other)?;
        Ok(PyMultivector {
            inner: &self.inner - &other.inner,
        })
    }

    fn __neg__(&self) -> Self {
        PyMultivector {
            inner: -&self.inner,
        }
    }

    /// Geometric (Clifford) product.
    fn __mul__(&self, other: &Self) -> PyResult<Self> {
        Ok(PyMultivector {
            inner: self.inner.checked_mul(&other.inner).map_err(to_py_err)?,
        })
    }

    fn __repr__(&self) -> String {
        format!("Multivector(n={}, {})", self.inner.n(), self.inner)
    }
}

impl PyMultivector {
    fn check_n(&self, other: &Self) -> PyResult<()> {
        if self.inner.n() != other.inner.n() {
            return Err(PyValueError::new_err("signature mismatch"));
        }
        Ok(())
    }
}

/// Mass term: zero or right multiplication by a Clifford number.
#[pyclass(name = "MassTerm", from_py_object)]
#[derive(Clone)]
struct PyMassTerm {
    inner: CoreMass,
}

#[pymethods]
impl PyMassTerm {
    #[staticmethod]
    fn zero() -> Self {
        PyMassTerm {
            inner: CoreMass::Zero,
        }
    }

    #[staticmethod]
    fn scalar(value: f64) -> Self {
        PyMassTerm {
            inner: CoreMass::scalar(value),
        }
    }

    #[staticmethod]
    fn clifford(value: &PyMultivector) -> Self {
        PyMassTerm {
            inner: CoreMass::clifford(value.inner.clone()),
        }
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    /// The Clifford number exp(t * lambda).
    fn exp_factor(&self, t: f64, n: u8) -> PyResult<PyMultivector> {
        Ok(PyMultivector {
            inner: self.inner.exp_factor(t, n).map_err(to_py_err)?,
        })
    }

    fn __repr__(&self) -> String {
        format!("MassTerm({})", self.inner)
    }
}

/// Evaluatable Clifford-valued field.
#[pyclass(name = "Field", from_py_object)]
#[derive(Clone)]
struct PyField {
    inner: CliffordField<f64>,
}

#[pymethods]
impl PyField {
    #[staticmethod]
    fn constant(value: &PyMultivector) -> Self {
        PyField {
            inner: CliffordField::constant(value.inner.clone()),
        }
    }

    /// The monogenic symmetric power V_beta.
    #[staticmethod]
    #[pyo3(signature = (n, beta, convention = "ledger"))]
    fn symmetric_power(n: u8, beta: Vec<u8>, convention: &str) -> PyResult<Self> {
        let conv = parse_convention(convention)?;
        let idx = basis::MultiIndex::new(&beta);
        Ok(PyField {
            inner: basis::symmetric_power_field(n, &idx, conv).map_err(to_py_err)?,
        })
    }

    /// Truncated Taylor series with right-side coefficients and a trailing
    /// mass factor.
    #[staticmethod]
    #[pyo3(signature = (center, mass, terms, convention = "ledger"))]
    fn taylor(
        center: Vec<f64>,
        mass: &PyMassTerm,
        terms: Vec<(Vec<u8>, PyMultivector)>,
        convention: &str,
    ) -> PyResult<Self> {
        let conv = parse_convention(convention)?;
        if center.is_empty() {
            return Err(PyValueError::new_err("center needs at least one coordinate"));
        }
        let center = Point::from_coords(&center);
        let terms = terms
            .into_iter()
            .map(|(beta, c)| (basis::MultiIndex::new(&beta), c.inner))
            .collect();
        let series =
            basis::TaylorSeries::new(center, mass.inner.clone(), terms).map_err(to_py_err)?;
        Ok(PyField {
            inner: series.as_field(conv).map_err(to_py_err)?,
        })
    }

    #[getter]
    fn n(&self) -> u8 {
        self.inner.n()
    }

    fn eval(&self, point: Vec<f64>) -> PyResult<PyMultivector> {
        let p = point_from(&point, self.inner.n())?;
        Ok(PyMultivector {
            inner: self.inner.eval(&p),
        })
    }

    /// Carry this field from the m1 class to the m2 class.
    fn intertwine(&self, m1: &PyMassTerm, m2: &PyMassTerm) -> Self {
        PyField {
            inner: transform::intertwine(
                &self.inner,
                &TransformSpec::new(m1.inner.clone(), m2.inner.clone()),
            ),
        }
    }

    fn to_monogenic(&self, mass: &PyMassTerm) -> Self {
        PyField {
            inner: transform::to_monogenic(&self.inner, &mass.inner),
        }
    }

    // named for the transform direction, not a conversion constructor
    #[allow(clippy::wrong_self_convention)]
    fn from_monogenic(&self, mass: &PyMassTerm) -> Self {
        PyField {
            inner: transform::from_monogenic(&self.inner, &mass.inner),
        }
    }

    /// Central-difference application of D at a point.
    #[pyo3(signature = (point, h = 1e-3, convention = "ledger"))]
    fn apply_d(&self, point: Vec<f64>, h: f64, convention: &str) -> PyResult<PyMultivector> {
        let conv = parse_convention(convention)?;
        let p = point_from(&point, self.inner.n())?;
        Ok(PyMultivector {
            inner: operators::apply_d(&self.inner, &p, StencilSpec::new(h), conv),
        })
    }

    /// Max modulus of (D + M) applied to this field over the sample points.
    #[pyo3(signature = (mass, points, h = 1e-3, convention = "ledger"))]
    fn residual(
        &self,
        mass: &PyMassTerm,
        points: Vec<Vec<f64>>,
        h: f64,
        convention: &str,
    ) -> PyResult<f64> {
        let conv = parse_convention(convention)?;
        let samples: Vec<Point> = points
            .iter()
            .map(|c| point_from(c, self.inner.n()))
            .collect::<PyResult<_>>()?;
        operators::residual_norm(&self.inner, &mass.inner, &samples, StencilSpec::new(h), conv)
            .map_err(to_py_err)
    }

    fn __repr__(&self) -> String {
        format!("Field(n={})", self.inner.n())
    }
}

/// Quadrature rule with nodes, weights and (for surfaces) outward normals.
#[pyclass(name = "QuadratureRule", from_py_object)]
#[derive(Clone)]
struct PyRule {
    inner: CoreRule,
}

#[pymethods]
impl PyRule {
    #[staticmethod]
    fn sphere(center: Vec<f64>, radius: f64, refinement: u32) -> PyResult<Self> {
        if center.is_empty() {
            return Err(PyValueError::new_err("center needs at least one coordinate"));
        }
        let domain = Domain::SphereSurface {
            center: Point::from_coords(&center),
            radius,
        };
        Ok(PyRule {
            inner: quadrature::build_rule(&domain, refinement).map_err(to_py_err)?,
        })
    }

    #[staticmethod]
    #[pyo3(name = "box")]
    fn box_boundary(lo: Vec<f64>, hi: Vec<f64>, refinement: u32) -> PyResult<Self> {
        if lo.len() != hi.len() || lo.is_empty() {
            return Err(PyValueError::new_err("lo and hi need equal nonzero lengths"));
        }
        let domain = Domain::BoxBoundary {
            lo: Point::from_coords(&lo),
            hi: Point::from_coords(&hi),
        };
        Ok(PyRule {
            inner: quadrature::build_rule(&domain, refinement).map_err(to_py_err)?,
        })
    }

    #[staticmethod]
    fn ball(center: Vec<f64>, radius: f64, refinement: u32) -> PyResult<Self> {
        if center.is_empty() {
            return Err(PyValueError::new_err("center needs at least one coordinate"));
        }
        let domain = Domain::BallVolume {
            center: Point::from_coords(&center),
            radius,
        };
        Ok(PyRule {
            inner: quadrature::build_rule(&domain, refinement).map_err(to_py_err)?,
        })
    }

    /// Parse a rule from the plain-text columnar format.
    #[staticmethod]
    fn import_text(text: &str) -> PyResult<Self> {
        Ok(PyRule {
            inner: CoreRule::import(text).map_err(to_py_err)?,
        })
    }

    fn export_text(&self) -> String {
        self.inner.export()
    }

    #[getter]
    fn node_count(&self) -> usize {
        self.inner.len()
    }

    #[getter]
    fn n(&self) -> u8 {
        self.inner.n()
    }

    fn total_weight(&self) -> f64 {
        self.inner.total_weight()
    }

    fn is_surface(&self) -> bool {
        self.inner.is_surface()
    }

    fn __repr__(&self) -> String {
        format!(
            "QuadratureRule({}, n={}, nodes={})",
            self.inner.domain.kind(),
            self.inner.n(),
            self.inner.len()
        )
    }
}

/// Signed product of two basis blades: returns (sign, result_mask).
#[pyfunction]
fn blade_product(mask_a: usize, mask_b: usize, n: u8) -> PyResult<(i32, usize)> {
    if mask_a >= (1 << n) || mask_b >= (1 << n) {
        return Err(PyValueError::new_err("blade mask out of range for this n"));
    }
    Ok(core_blade_product(mask_a, mask_b, n))
}

/// The degree-one monomial zeta_j at a point.
#[pyfunction]
#[pyo3(signature = (j, point, convention = "ledger"))]
fn zeta(j: usize, point: Vec<f64>, convention: &str) -> PyResult<PyMultivector> {
    let conv = parse_convention(convention)?;
    if point.is_empty() {
        return Err(PyValueError::new_err("point needs at least one coordinate"));
    }
    let p = Point::from_coords(&point);
    Ok(PyMultivector {
        inner: basis::zeta(j, &p, conv).map_err(to_py_err)?,
    })
}

/// The k!-averaged symmetric product of the factor list.
#[pyfunction]
fn symmetric_product(factors: Vec<PyMultivector>) -> PyResult<PyMultivector> {
    let inner: Vec<CoreMv<f64>> = factors.into_iter().map(|f| f.inner).collect();
    Ok(PyMultivector {
        inner: basis::symmetric_product(&inner).map_err(to_py_err)?,
    })
}

/// Boundary-integral residual of the deformed Cauchy theorem.
#[pyfunction]
#[pyo3(signature = (field, mass, rule, convention = "ledger"))]
fn cauchy_theorem_residual(
    field: &PyField,
    mass: &PyMassTerm,
    rule: &PyRule,
    convention: &str,
) -> PyResult<f64> {
    let conv = parse_convention(convention)?;
    integral::cauchy_theorem_residual(&field.inner, &mass.inner, &rule.inner, conv)
        .map_err(to_py_err)
}

/// Deformed Cauchy integral; returns (value, ill_conditioned).
#[pyfunction]
#[pyo3(signature = (field, mass, rule, x, convention = "ledger"))]
fn cauchy_integral(
    field: &PyField,
    mass: &PyMassTerm,
    rule: &PyRule,
    x: Vec<f64>,
    convention: &str,
) -> PyResult<(PyMultivector, bool)> {
    let conv = parse_convention(convention)?;
    let x = point_from(&x, rule.inner.n())?;
    let out = integral::cauchy_integral(&field.inner, &mass.inner, &rule.inner, &x, conv)
        .map_err(to_py_err)?;
    Ok((PyMultivector { inner: out.value }, out.ill_conditioned))
}

/// Deformed mean value over a ball rule centered at x.
#[pyfunction]
fn mean_value(
    field: &PyField,
    mass: &PyMassTerm,
    rule: &PyRule,
    x: Vec<f64>,
) -> PyResult<PyMultivector> {
    let x = point_from(&x, rule.inner.n())?;
    Ok(PyMultivector {
        inner: integral::mean_value(&field.inner, &mass.inner, &rule.inner, &x)
            .map_err(to_py_err)?,
    })
}

/// Calibration scalar for the unit-ball Bergman kernel.
#[pyfunction]
#[pyo3(signature = (n, refinement = 6, convention = "ledger"))]
fn bergman_calibration(n: u8, refinement: u32, convention: &str) -> PyResult<f64> {
    let conv = parse_convention(convention)?;
    integral::calibrate_bergman(n, conv, refinement).map_err(to_py_err)
}

/// Deformed Bergman reproduction at an interior point of the unit ball.
#[pyfunction]
#[pyo3(signature = (field, mass, rule, x, calibration, convention = "ledger"))]
fn bergman_reproduce(
    field: &PyField,
    mass: &PyMassTerm,
    rule: &PyRule,
    x: Vec<f64>,
    calibration: f64,
    convention: &str,
) -> PyResult<PyMultivector> {
    let conv = parse_convention(convention)?;
    let x = point_from(&x, rule.inner.n())?;
    Ok(PyMultivector {
        inner: integral::bergman_reproduce(
            &field.inner,
            &mass.inner,
            &rule.inner,
            &x,
            conv,
            calibration,
        )
        .map_err(to_py_err)?,
    })
}

/// Run a verification suite; returns (passed, structured_report_json).
#[pyfunction]
#[pyo3(signature = (suite, n = 2, lambda = "0.5", convention = "ledger", h = 1e-3,
                    refine_lo = 2, refine_hi = 4, seed = 20260808))]
#[allow(clippy::too_many_arguments)]
fn run_suite(
    suite: &str,
    n: u8,
    lambda: &str,
    convention: &str,
    h: f64,
    refine_lo: u32,
    refine_hi: u32,
    seed: u64,
) -> PyResult<(bool, String)> {
    let name: SuiteName = suite.parse().map_err(to_py_err)?;
    if refine_lo == 0 || refine_hi < refine_lo {
        return Err(PyValueError::new_err("need 1 <= refine_lo <= refine_hi"));
    }
    let cfg = SuiteConfig {
        n,
        lambda: lambda.to_string(),
        convention: parse_convention(convention)?,
        h,
        refinements: (refine_lo..=refine_hi).collect(),
        tolerance_overrides: Default::default(),
        seed,
    };
    let report = core_run_suite(name, &cfg).map_err(to_py_err)?;
    Ok((report.passed, report.to_structured()))
}

/// Monogenic polynomial field drawn from a seed, for quick experiments.
#[pyfunction]
#[pyo3(signature = (n, max_order = 2, convention = "ledger", seed = 0))]
fn random_monogenic_field(n: u8, max_order: usize, convention: &str, seed: u64) -> PyResult<PyField> {
    let conv = parse_convention(convention)?;
    let poly = basis::seeded_monogenic_poly(n, max_order, 0.5, conv, seed);
    Ok(PyField {
        inner: CliffordField::from_poly(poly, SolutionClass::Monogenic),
    })
}

/// Least-squares fit of the lambda-linear increment form; returns the
/// fitted coefficients and the empirical remainder decay order.
#[pyfunction]
#[pyo3(signature = (field, point, mass, radius = 0.05, convention = "ledger", seed = 0))]
fn fit_lambda_linear_form(
    field: &PyField,
    point: Vec<f64>,
    mass: &PyMassTerm,
    radius: f64,
    convention: &str,
    seed: u64,
) -> PyResult<(Vec<PyMultivector>, f64)> {
    let conv = parse_convention(convention)?;
    let p = point_from(&point, field.inner.n())?;
    let (form, order) =
        basis::fit_lambda_linear_form_seeded(&field.inner, &p, &mass.inner, radius, conv, seed)
            .map_err(to_py_err)?;
    Ok((
        form.coefficients
            .into_iter()
            .map(|inner| PyMultivector { inner })
            .collect(),
        order,
    ))
}

#[pymodule]
fn cliffcheck_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyMultivector>()?;
    m.add_class::<PyMassTerm>()?;
    m.add_class::<PyField>()?;
    m.add_class::<PyRule>()?;
    m.add_function(wrap_pyfunction!(blade_product, m)?)?;
    m.add_function(wrap_pyfunction!(zeta, m)?)?;
    m.add_function(wrap_pyfunction!(symmetric_product, m)?)?;
    m.add_function(wrap_pyfunction!(cauchy_theorem_residual, m)?)?;
    m.add_function(wrap_pyfunction!(cauchy_integral, m)?)?;
    m.add_function(wrap_pyfunction!(mean_value, m)?)?;
    m.add_function(wrap_pyfunction!(bergman_calibration, m)?)?;
    m.add_function(wrap_pyfunction!(bergman_reproduce, m)?)?;
    m.add_function(wrap_pyfunction!(run_suite, m)?)?;
    m.add_function(wrap_pyfunction!(random_monogenic_field, m)?)?;
    m.add_function(wrap_pyfunction!(fit_lambda_linear_form, m)?)?;
    Ok(())
}
