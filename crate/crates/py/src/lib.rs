//! Python module `rrspace_py`. Field elements cross the boundary as integers
//! (prime fields) or strings such as `"t^2+1"`; polynomials as strings.

use pyo3::create_exception;
use pyo3::exceptions::PyException;
use pyo3::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rrspace::cli::{parse_divisor_file, rational_points};
use rrspace::codes;
use rrspace::divisors as div;
use rrspace::gf::{Elem, Field};
use rrspace::newton;
use rrspace::places::{CurveConfig, Point};
use rrspace::polyring::{parse_bipoly, parse_elem, parse_trihomog};
use rrspace::riemannroch;

create_exception!(rrspace_py, RRSpaceError, PyException);

fn err(e: rrspace::Error) -> PyErr {
    RRSpaceError::new_err(e.to_string())
}

fn field(s: &str) -> PyResult<Field> {
    Field::parse(s).map_err(err)
}

#[derive(FromPyObject)]
enum ElemArg {
    Int(i64),
    Str(String),
}

fn elem(f: Field, a: &ElemArg) -> PyResult<Elem> {
    match a {
        ElemArg::Int(v) => Ok(Elem::from_i64(f, *v)),
        ElemArg::Str(s) => parse_elem(s, f).map_err(err),
    }
}

fn matrix_rows(g: &codes::GeneratorMatrix) -> Vec<Vec<String>> {
    g.rows.iter().map(|r| r.iter().map(|e| e.to_string()).collect()).collect()
}

/// A plane projective curve `F(x, y, z) = 0`.
#[pyclass(module = "rrspace_py", frozen)]
struct Curve {
    inner: rrspace::places::Curve,
}

/// A divisor on a [`Curve`].
#[pyclass(module = "rrspace_py", frozen)]
struct Divisor {
    inner: div::Divisor,
}

/// Basis `G_1 / H, ..., G_l / H` of a Riemann-Roch space.
#[pyclass(module = "rrspace_py", frozen)]
struct RRBasis {
    inner: riemannroch::RRBasis,
}

impl Curve {
    fn point(&self, s: &str) -> PyResult<Point> {
        Point::parse(s, self.inner.field()).map_err(err)
    }
}

#[pymethods]
impl Curve {
    #[new]
    #[pyo3(signature = (field, polynomial, seed = 0, prec_cap = None))]
    fn new(field: &str, polynomial: &str, seed: u64, prec_cap: Option<usize>) -> PyResult<Self> {
        let k = self::field(field)?;
        let f = parse_trihomog(polynomial, k).map_err(err)?;
        let inner = rrspace::places::Curve::with_config(f, CurveConfig { seed, prec_cap }).map_err(err)?;
        Ok(Curve { inner })
    }

    #[getter]
    fn polynomial(&self) -> String {
        self.inner.polynomial().to_string()
    }

    #[getter]
    fn field(&self) -> String {
        self.inner.field().name()
    }

    #[getter]
    fn degree(&self) -> u32 {
        self.inner.degree()
    }

    fn genus(&self) -> PyResult<u64> {
        div::genus(&self.inner).map_err(err)
    }

    fn adjoint(&self) -> PyResult<Divisor> {
        Ok(Divisor { inner: div::adjoint_divisor(&self.inner).map_err(err)? })
    }

    fn singular_points(&self) -> PyResult<Vec<String>> {
        Ok(div::singular_locus(&self.inner).map_err(err)?.iter().map(|p| p.to_string()).collect())
    }

    fn rational_points(&self) -> PyResult<Vec<String>> {
        Ok(rational_points(&self.inner).map_err(err)?.iter().map(|p| p.to_string()).collect())
    }

    /// `(place, degree, ramification index)` for every branch at `point`.
    fn places_at(&self, point: &str) -> PyResult<Vec<(String, usize, usize)>> {
        let p = self.point(point)?;
        let places = self.inner.places_at(&p).map_err(err)?;
        Ok(places.iter().map(|pl| (pl.key().to_string(), pl.degree(), pl.ram_index())).collect())
    }

    /// Valuation of a form at a branch; `None` when the form is a multiple of `F`.
    #[pyo3(signature = (point, form, branch = 0))]
    fn valuation(&self, point: &str, form: &str, branch: usize) -> PyResult<Option<i64>> {
        let p = self.point(point)?;
        let g = parse_trihomog(form, self.inner.field()).map_err(err)?;
        let places = self.inner.places_at(&p).map_err(err)?;
        let pl = places.get(branch).ok_or_else(|| RRSpaceError::new_err(format!("no branch {branch} at {point}")))?;
        Ok(pl.valuation(&g).map_err(err)?.finite())
    }

    /// The divisor `mult * P` for the given branch at `point`.
    #[pyo3(signature = (point, mult = 1, branch = 0))]
    fn place(&self, point: &str, mult: i64, branch: usize) -> PyResult<Divisor> {
        let p = self.point(point)?;
        Ok(Divisor { inner: div::Divisor::at(&self.inner, &p, branch, mult).map_err(err)? })
    }

    /// Parses lines `point=(a:b:c) [branch=i] mult=m [in GF(q)]`.
    fn divisor(&self, text: &str) -> PyResult<Divisor> {
        Ok(Divisor { inner: parse_divisor_file(text, &self.inner).map_err(err)? })
    }

    fn zero_divisor(&self) -> Divisor {
        Divisor { inner: div::Divisor::zero(&self.inner) }
    }

    /// Intersection divisor of the curve with `G = 0`.
    fn divisor_of(&self, form: &str) -> PyResult<Divisor> {
        let g = parse_trihomog(form, self.inner.field()).map_err(err)?;
        Ok(Divisor { inner: div::global_divisor(&self.inner, &g).map_err(err)? })
    }

    fn rr_basis(&self, d: &Divisor) -> PyResult<RRBasis> {
        Ok(RRBasis { inner: riemannroch::rr_basis(&self.inner, &d.inner).map_err(err)? })
    }

    /// Violations found by checking the basis against `D`; empty when valid.
    fn verify(&self, d: &Divisor, basis: &RRBasis) -> Vec<String> {
        riemannroch::verify_basis(&self.inner, &d.inner, &basis.inner).violations
    }

    fn ag_generator_matrix(&self, d: &Divisor, points: Vec<String>) -> PyResult<Vec<Vec<String>>> {
        let pts = points.iter().map(|s| self.point(s)).collect::<PyResult<Vec<_>>>()?;
        Ok(matrix_rows(&codes::ag_generator_matrix(&self.inner, &d.inner, &pts).map_err(err)?))
    }

    fn __repr__(&self) -> String {
        format!("Curve({:?}, {:?})", self.inner.field().name(), self.inner.polynomial().to_string())
    }
}

#[pymethods]
impl Divisor {
    #[getter]
    fn degree(&self) -> i64 {
        self.inner.degree()
    }

    fn is_effective(&self) -> bool {
        self.inner.is_effective()
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    /// `(place, coefficient, degree)` for every place in the support.
    fn terms(&self) -> Vec<(String, i64, usize)> {
        self.inner.iter().map(|(k, c, d)| (k.to_string(), c, d)).collect()
    }

    fn scale(&self, k: i64) -> Divisor {
        Divisor { inner: self.inner.scale(k) }
    }

    fn __add__(&self, o: &Divisor) -> PyResult<Divisor> {
        Ok(Divisor { inner: self.inner.add(&o.inner).map_err(err)? })
    }

    fn __sub__(&self, o: &Divisor) -> PyResult<Divisor> {
        Ok(Divisor { inner: self.inner.sub(&o.inner).map_err(err)? })
    }

    fn __neg__(&self) -> Divisor {
        Divisor { inner: self.inner.neg() }
    }

    fn __eq__(&self, o: &Divisor) -> bool {
        self.inner == o.inner
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Divisor({})", self.inner)
    }
}

#[pymethods]
impl RRBasis {
    #[getter]
    fn denominator(&self) -> String {
        self.inner.h.to_string()
    }

    #[getter]
    fn numerators(&self) -> Vec<String> {
        self.inner.numerators.iter().map(|g| g.to_string()).collect()
    }

    fn __len__(&self) -> usize {
        self.inner.ell()
    }

    fn __repr__(&self) -> String {
        format!("RRBasis(H={}, G={:?})", self.inner.h, self.numerators())
    }
}

/// Vertices of the Newton polygon of a polynomial in `x, y`.
#[pyfunction]
fn newton_polygon(field: &str, poly: &str) -> PyResult<Vec<(u32, u32)>> {
    let f = parse_bipoly(poly, self::field(field)?).map_err(err)?;
    Ok(newton::newton_polygon_exact(&f).map_err(err)?.vertices)
}

/// Newton polynomial attached to the edge with endpoints `a` and `b`.
#[pyfunction]
fn newton_polynomial(field: &str, poly: &str, a: (u32, u32), b: (u32, u32)) -> PyResult<String> {
    let f = parse_bipoly(poly, self::field(field)?).map_err(err)?;
    Ok(newton::newton_polynomial_exact(&f, (a, b)).map_err(err)?.to_string())
}

#[pyfunction]
fn rs_generator_matrix(field: &str, k: usize, alphas: Vec<ElemArg>) -> PyResult<Vec<Vec<String>>> {
    let f = self::field(field)?;
    let a = alphas.iter().map(|x| elem(f, x)).collect::<PyResult<Vec<_>>>()?;
    Ok(matrix_rows(&codes::rs_generator_matrix(f, k, &a).map_err(err)?))
}

/// Shares `(id, value)` of `secret` with threshold `t`.
#[pyfunction]
#[pyo3(signature = (field, secret, threshold, ids, seed = 0))]
fn shamir_share(field: &str, secret: ElemArg, threshold: usize, ids: Vec<ElemArg>, seed: u64) -> PyResult<Vec<(String, String)>> {
    let f = self::field(field)?;
    let s = elem(f, &secret)?;
    let ids = ids.iter().map(|x| elem(f, x)).collect::<PyResult<Vec<_>>>()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sh = codes::shamir_share(&s, threshold, &ids, &mut rng).map_err(err)?;
    Ok(sh.shares.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect())
}

#[pyfunction]
fn shamir_reconstruct(field: &str, shares: Vec<(ElemArg, ElemArg)>, threshold: usize) -> PyResult<String> {
    let f = self::field(field)?;
    let sh = shares.iter().map(|(a, b)| Ok((elem(f, a)?, elem(f, b)?))).collect::<PyResult<Vec<_>>>()?;
    Ok(codes::shamir_reconstruct(&sh, threshold).map_err(err)?.to_string())
}

/// Runs the command-line interface; returns `(exit code, stdout, stderr)`.
#[pyfunction]
fn run_cli(args: Vec<String>) -> (i32, String, String) {
    let (mut out, mut e) = (Vec::new(), Vec::new());
    let mut full = vec!["rrspace".to_string()];
    full.extend(args);
    let code = rrspace::cli::run(full, &mut out, &mut e);
    (code, String::from_utf8_lossy(&out).into_owned(), String::from_utf8_lossy(&e).into_owned())
}

#[pymodule]
pub fn rrspace_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("RRSpaceError", m.py().get_type::<RRSpaceError>())?;
    m.add_class::<Curve>()?;
    m.add_class::<Divisor>()?;
    m.add_class::<RRBasis>()?;
    m.add_function(wrap_pyfunction!(newton_polygon, m)?)?;
    m.add_function(wrap_pyfunction!(newton_polynomial, m)?)?;
    m.add_function(wrap_pyfunction!(rs_generator_matrix, m)?)?;
    m.add_function(wrap_pyfunction!(shamir_share, m)?)?;
    m.add_function(wrap_pyfunction!(shamir_reconstruct, m)?)?;
    m.add_function(wrap_pyfunction!(run_cli, m)?)?;
    Ok(())
}
