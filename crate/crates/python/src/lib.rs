//! Python bindings. Rationals cross the boundary as `Rational` objects; any
//! argument that expects one also takes an int, a `fractions.Fraction` or a
//! string such as "-3/4".

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

use multisum::arith::pi_poly_numeric;
use multisum::identities::{self, IdentityId, IdentityParams, SweepRanges};
use multisum::multisum::{self as ms, SequenceSpec, SumProblem};
use multisum::partitions::{enumerate_partitions, PartitionMultiplicities};
use multisum::{polynomials, selftest, special, ExactRational, PiPolynomial};
use pyo3::basic::CompareOp;
use pyo3::exceptions::{PyValueError, PyZeroDivisionError};
use pyo3::prelude::*;
use pyo3::types::PyList;

fn to_py(e: multisum::Error) -> PyErr {
    match e {
        multisum::Error::DivisionByZero => PyZeroDivisionError::new_err(e.to_string()),
        other => PyValueError::new_err(other.to_string()),
    }
}

fn rational_arg(obj: &Bound<'_, PyAny>) -> PyResult<ExactRational> {
    if let Ok(r) = obj.cast::<Rational>() {
        return Ok(r.get().0.clone());
    }
    if obj.is_instance_of::<pyo3::types::PyFloat>() {
        return Err(PyValueError::new_err(
            "floats are not exact; pass an int, Fraction or string",
        ));
    }
    obj.str()?.to_str()?.parse().map_err(to_py)
}

fn rational_list(objs: &Bound<'_, PyAny>) -> PyResult<Vec<ExactRational>> {
    objs.try_iter()?.map(|o| rational_arg(&o?)).collect()
}

/// Exact rational number.
#[pyclass(frozen, skip_from_py_object, module = "pymultisum")]
#[derive(Clone)]
pub struct Rational(ExactRational);

#[pymethods]
impl Rational {
    #[new]
    fn py_new(value: &Bound<'_, PyAny>) -> PyResult<Self> {
        rational_arg(value).map(Rational)
    }

    #[getter]
    fn numerator<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        Ok(self.0.numer().clone().into_pyobject(py)?.into_any())
    }

    #[getter]
    fn denominator<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        Ok(self.0.denom().clone().into_pyobject(py)?.into_any())
    }

    fn to_fraction<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        py.import("fractions")?
            .getattr("Fraction")?
            .call1((self.numerator(py)?, self.denominator(py)?))
    }

    fn __float__(&self) -> f64 {
        self.0.to_f64()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Rational('{}')", self.0)
    }

    fn __hash__(&self) -> u64 {
        let mut h = DefaultHasher::new();
        self.0.hash(&mut h);
        h.finish()
    }

    fn __richcmp__(&self, other: &Bound<'_, PyAny>, op: CompareOp) -> PyResult<bool> {
        let Ok(other) = rational_arg(other) else {
            return match op {
                CompareOp::Eq => Ok(false),
                CompareOp::Ne => Ok(true),
                _ => Err(PyValueError::new_err("cannot order against a non-rational")),
            };
        };
        Ok(op.matches(self.0.cmp(&other)))
    }

    fn __neg__(&self) -> Self {
        Rational(-&self.0)
    }

    fn __add__(&self, other: &Bound<'_, PyAny>) -> PyResult<Self> {
        Ok(Rational(&self.0 + rational_arg(other)?))
    }

    fn __radd__(&self, other: &Bound<'_, PyAny>) -> PyResult<Self> {
        self.__add__(other)
    }

    fn __sub__(&self, other: &Bound<'_, PyAny>) -> PyResult<Self> {
        Ok(Rational(&self.0 - rational_arg(other)?))
    }

    fn __rsub__(&self, other: &Bound<'_, PyAny>) -> PyResult<Self> {
        Ok(Rational(rational_arg(other)? - &self.0))
    }

    fn __mul__(&self, other: &Bound<'_, PyAny>) -> PyResult<Self> {
        Ok(Rational(&self.0 * rational_arg(other)?))
    }

    fn __rmul__(&self, other: &Bound<'_, PyAny>) -> PyResult<Self> {
        self.__mul__(other)
    }

    fn __truediv__(&self, other: &Bound<'_, PyAny>) -> PyResult<Self> {
        self.0.checked_div(&rational_arg(other)?).map(Rational).map_err(to_py)
    }

    fn __rtruediv__(&self, other: &Bound<'_, PyAny>) -> PyResult<Self> {
        rational_arg(other)?.checked_div(&self.0).map(Rational).map_err(to_py)
    }

    fn __pow__(&self, exp: i32, _modulo: Option<&Bound<'_, PyAny>>) -> PyResult<Self> {
        self.0.pow(exp).map(Rational).map_err(to_py)
    }
}

/// Exact element of Q[pi], e.g. 1/90*pi^4.
#[pyclass(frozen, skip_from_py_object, module = "pymultisum")]
#[derive(Clone)]
pub struct PiValue(PiPolynomial);

#[pymethods]
impl PiValue {
    /// `[(power, coefficient), ...]` in increasing power.
    fn terms(&self) -> Vec<(u32, Rational)> {
        self.0.terms().iter().map(|(k, c)| (*k, Rational(c.clone()))).collect()
    }

    fn coefficient(&self, power: u32) -> Rational {
        Rational(self.0.coefficient(power))
    }

    fn numeric(&self, digits: usize) -> PyResult<String> {
        pi_poly_numeric(&self.0, digits).map_err(to_py)
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.0 == other.0
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("PiValue('{}')", self.0)
    }
}

/// A sequence a_N: explicit values from a base index, or N^exponent.
#[pyclass(frozen, from_py_object, module = "pymultisum")]
#[derive(Clone)]
pub struct Sequence(SequenceSpec);

#[pymethods]
impl Sequence {
    #[staticmethod]
    #[pyo3(signature = (values, base = 1))]
    fn explicit(values: &Bound<'_, PyAny>, base: i64) -> PyResult<Self> {
        Ok(Sequence(SequenceSpec::explicit(base, rational_list(values)?)))
    }

    #[staticmethod]
    fn index_power(exponent: i32) -> Self {
        Sequence(SequenceSpec::index_power(exponent))
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        serde_json::from_str(text)
            .map(Sequence)
            .map_err(|e| PyValueError::new_err(e.to_string()))
    }

    fn to_json(&self) -> String {
        serde_json::to_string(&self.0).expect("sequence serializes")
    }

    fn __call__(&self, index: i64) -> PyResult<Rational> {
        self.0.eval(index).map(Rational).map_err(to_py)
    }

    fn values(&self, q: i64, n: i64) -> PyResult<Vec<Rational>> {
        Ok(self.0.values(q, n).map_err(to_py)?.into_iter().map(Rational).collect())
    }

    fn __repr__(&self) -> String {
        format!("Sequence({})", self.to_json())
    }
}

/// Partitions of m as multiplicity vectors of length m.
#[pyfunction]
fn partitions(m: usize) -> Vec<Vec<u32>> {
    enumerate_partitions(m).iter().map(|y| y.padded(m)).collect()
}

#[pyfunction]
fn reduction_coefficient(y: Vec<u32>) -> Rational {
    Rational(ms::reduction_coefficient(
        &PartitionMultiplicities::from_multiplicities(y),
    ))
}

/// Sum over q <= N_1 < ... < N_m <= n of prod a_{N_i}, by nested enumeration.
#[pyfunction]
fn brute_multiple_sum(seq: &Sequence, m: usize, q: i64, n: i64) -> PyResult<Rational> {
    let p = SumProblem::uniform(seq.0.clone(), m, q, n).map_err(to_py)?;
    ms::brute_multiple_sum(&p).map(Rational).map_err(to_py)
}

/// The same sum through the partition reduction to power sums.
#[pyfunction]
fn reduce_multiple_sum(seq: &Sequence, m: usize, q: i64, n: i64) -> PyResult<Rational> {
    ms::reduce_multiple_sum(&seq.0, m, q, n).map(Rational).map_err(to_py)
}

/// Sum over all m! orderings of distinct sequences, by permutation and by set partitions.
#[pyfunction]
fn symmetrized_multiple_sum(seqs: Vec<Sequence>, q: i64, n: i64) -> PyResult<(Rational, Rational)> {
    let specs: Vec<SequenceSpec> = seqs.into_iter().map(|s| s.0).collect();
    let brute = ms::symmetrized_multiple_sum(&specs, q, n).map_err(to_py)?;
    let reduced = ms::reduce_symmetrized(&specs, q, n).map_err(to_py)?;
    Ok((Rational(brute), Rational(reduced)))
}

#[pyfunction]
fn coeff_ratio_from_roots(roots: &Bound<'_, PyAny>, m: usize) -> PyResult<Rational> {
    polynomials::coeff_ratio_from_roots(&rational_list(roots)?, m)
        .map(Rational)
        .map_err(to_py)
}

/// Coefficients, lowest degree first, of leading * prod (x - r).
#[pyfunction]
#[pyo3(signature = (roots, leading = None))]
fn poly_from_roots(roots: &Bound<'_, PyAny>, leading: Option<&Bound<'_, PyAny>>) -> PyResult<Vec<Rational>> {
    let lead = leading
        .map(rational_arg)
        .transpose()?
        .unwrap_or_else(ExactRational::one);
    let p = polynomials::poly_from_roots(&rational_list(roots)?, &lead).map_err(to_py)?;
    Ok(p.coeffs().iter().cloned().map(Rational).collect())
}

#[pyfunction]
fn derivative_mean_pair(roots: &Bound<'_, PyAny>, k: usize) -> PyResult<(Rational, Rational)> {
    let (a, b) = polynomials::derivative_mean_pair(&rational_list(roots)?, k).map_err(to_py)?;
    Ok((Rational(a), Rational(b)))
}

#[pyfunction]
fn faulhaber(n: u64, p: u32) -> Rational {
    Rational(special::faulhaber(n, p))
}

#[pyfunction]
fn multiple_power_sum(m: usize, n: u64, p: u32) -> PyResult<Rational> {
    special::multiple_power_sum(m, n, p).map(Rational).map_err(to_py)
}

#[pyfunction]
fn zeta_even(p: u32) -> PyResult<PiValue> {
    special::zeta_even(p).map(PiValue).map_err(to_py)
}

#[pyfunction]
fn mzv_even_reduced(m: usize, p: u32) -> PyResult<PiValue> {
    special::mzv_even_reduced(m, p).map(PiValue).map_err(to_py)
}

#[pyfunction]
fn mzv_closed_form(m: usize, p: u32) -> PyResult<PiValue> {
    special::mzv_closed_form(m, p).map(PiValue).map_err(to_py)
}

#[pyfunction]
fn identity_ids() -> Vec<&'static str> {
    IdentityId::ALL.iter().map(|id| id.wire_name()).collect()
}

/// Verifies an identity; keyword arguments are m, n, r, q, phi and spec.
/// With `sweep` (e.g. "m=0..6") returns one report per point. Reports are dicts.
#[pyfunction]
#[pyo3(signature = (identity, sweep = None, m = None, n = None, r = None, q = None, phi = None, spec = None))]
#[allow(clippy::too_many_arguments)]
fn verify<'py>(
    py: Python<'py>,
    identity: &str,
    sweep: Option<&str>,
    m: Option<i64>,
    n: Option<i64>,
    r: Option<i64>,
    q: Option<i64>,
    phi: Option<Vec<u32>>,
    spec: Option<Sequence>,
) -> PyResult<Bound<'py, PyAny>> {
    let id: IdentityId = identity.parse().map_err(to_py)?;
    let params = IdentityParams {
        m,
        n,
        r,
        q,
        phi,
        spec: spec.map(|s| s.0),
    };
    let json = match sweep {
        Some(s) => {
            let ranges: SweepRanges = s.parse().map_err(to_py)?;
            let reports = identities::verify_sweep(id, &params, &ranges).map_err(to_py)?;
            serde_json::to_string(&reports)
        }
        None => serde_json::to_string(&identities::verify(id, params).map_err(to_py)?),
    }
    .expect("reports serialize");
    py.import("json")?.call_method1("loads", (json,))
}

/// Runs the acceptance suite; one `(id, name, passed, detail)` per criterion.
#[pyfunction]
fn run_selftest(py: Python<'_>) -> Vec<(u32, &'static str, bool, String)> {
    let report = py.detach(selftest::run_all);
    report
        .criteria
        .into_iter()
        .map(|c| (c.id, c.name, c.passed, c.detail))
        .collect()
}

/// Runs the command line in-process; returns `(exit_code, stdout)`.
#[pyfunction]
fn run_cli(argv: &Bound<'_, PyList>) -> PyResult<(i32, String)> {
    let args: Vec<String> = argv.extract()?;
    let outcome = multisum::cli::run(std::iter::once("multisum".to_string()).chain(args));
    Ok((outcome.exit_code, outcome.stdout))
}

#[pymodule]
fn pymultisum(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Rational>()?;
    m.add_class::<PiValue>()?;
    m.add_class::<Sequence>()?;
    m.add_function(wrap_pyfunction!(partitions, m)?)?;
    m.add_function(wrap_pyfunction!(reduction_coefficient, m)?)?;
    m.add_function(wrap_pyfunction!(brute_multiple_sum, m)?)?;
    m.add_function(wrap_pyfunction!(reduce_multiple_sum, m)?)?;
    m.add_function(wrap_pyfunction!(symmetrized_multiple_sum, m)?)?;
    m.add_function(wrap_pyfunction!(coeff_ratio_from_roots, m)?)?;
    m.add_function(wrap_pyfunction!(poly_from_roots, m)?)?;
    m.add_function(wrap_pyfunction!(derivative_mean_pair, m)?)?;
    m.add_function(wrap_pyfunction!(faulhaber, m)?)?;
    m.add_function(wrap_pyfunction!(multiple_power_sum, m)?)?;
    m.add_function(wrap_pyfunction!(zeta_even, m)?)?;
    m.add_function(wrap_pyfunction!(mzv_even_reduced, m)?)?;
    m.add_function(wrap_pyfunction!(mzv_closed_form, m)?)?;
    m.add_function(wrap_pyfunction!(identity_ids, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(run_selftest, m)?)?;
    m.add_function(wrap_pyfunction!(run_cli, m)?)?;
    Ok(())
}
