use num_bigint::BigUint;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use lrcreal::cli::{self, OutputFormat};
use lrcreal::digit::parse_digits;
use lrcreal::engine::{Coeffs, ConsumeTable};
use lrcreal::{prefix_interval, Comparison, Rational};

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn rational(text: &str) -> PyResult<Rational> {
    text.parse().map_err(value_error)
}

/// An exact real number in [0, 1].
#[pyclass(name = "ExactReal", frozen, skip_from_py_object, module = "lrcreal_py")]
#[derive(Clone)]
pub struct PyExactReal(lrcreal::ExactReal);

#[pymethods]
impl PyExactReal {
    /// Build from a rational given as text, e.g. "1/3".
    #[new]
    fn new(value: &str) -> PyResult<Self> {
        let r = rational(value)?;
        Ok(PyExactReal(lrcreal::from_rational(&r).map_err(value_error)?))
    }

    /// Build from the leading digits of a stream; the rest repeats `fill`.
    #[staticmethod]
    #[pyo3(signature = (prefix, fill = "L"))]
    fn from_digits(prefix: &str, fill: &str) -> PyResult<Self> {
        let prefix = parse_digits(prefix).map_err(value_error)?;
        let fill = match parse_digits(fill).map_err(value_error)?.as_slice() {
            [d] => *d,
            _ => return Err(PyValueError::new_err("fill must be a single digit")),
        };
        let stream = prefix
            .into_iter()
            .rev()
            .fold(lrcreal::Stream::constant(fill), |tail, d| lrcreal::Stream::cons(d, tail));
        Ok(PyExactReal(lrcreal::ExactReal::from_digits(stream)))
    }

    fn digits(&self, n: usize) -> String {
        self.0.digit_string(n)
    }

    /// Bounds of the depth-`n` interval as ("p/q", "r/s").
    fn interval(&self, n: usize) -> (String, String) {
        let iv = self.0.to_interval(n);
        (iv.lo().to_string(), iv.hi().to_string())
    }

    fn decimal(&self, places: usize) -> String {
        self.0.to_decimal(places)
    }

    fn average(&self, other: &PyExactReal) -> PyExactReal {
        PyExactReal(self.0.average(&other.0))
    }

    /// "less", "greater", or "indistinguishable".
    fn compare(&self, other: &PyExactReal, depth: usize) -> &'static str {
        match self.0.compare(&other.0, depth) {
            Comparison::Less => "less",
            Comparison::Greater => "greater",
            Comparison::IndistinguishableAt { .. } => "indistinguishable",
        }
    }

    fn contains(&self, value: &str, depth: usize) -> PyResult<bool> {
        Ok(self.0.to_interval(depth).contains(&rational(value)?))
    }

    fn __repr__(&self) -> String {
        format!("ExactReal({}...)", self.0.digit_string(16))
    }
}

/// ca*x + cb*y + cc; coefficients are rationals given as text.
#[pyfunction]
#[pyo3(signature = (ca, cb, cc, x, y, checked = true))]
fn affine(ca: &str, cb: &str, cc: &str, x: &PyExactReal, y: &PyExactReal, checked: bool) -> PyResult<PyExactReal> {
    let (ca, cb, cc) = (rational(ca)?, rational(cb)?, rational(cc)?);
    lrcreal::affine(&ca, &cb, &cc, &x.0, &y.0, checked)
        .map(PyExactReal)
        .map_err(value_error)
}

/// Interval of a digit string such as "LCR", as ("p/q", "r/s").
#[pyfunction]
fn prefix_bounds(digits: &str) -> PyResult<(String, String)> {
    let iv = prefix_interval(&parse_digits(digits).map_err(value_error)?);
    Ok((iv.lo().to_string(), iv.hi().to_string()))
}

/// Engine decision for coefficients (a, a', b, b', c, c'): "R", "L", "C" or "consume".
#[pyfunction]
fn decide(a: i64, a_den: i64, b: i64, b_den: i64, c: i64, c_den: i64) -> PyResult<&'static str> {
    let x = Coeffs::new(a, a_den, b, b_den, c, c_den).map_err(value_error)?;
    Ok(match x.decide().digit() {
        Some(lrcreal::Digit::R) => "R",
        Some(lrcreal::Digit::L) => "L",
        Some(lrcreal::Digit::C) => "C",
        None => "consume",
    })
}

/// Evaluate an expression as the `lrcreal eval` command does.
#[pyfunction]
#[pyo3(signature = (expr, digits = 32, format = "digits", decimals = 10))]
fn eval(expr: &str, digits: usize, format: &str, decimals: usize) -> PyResult<String> {
    let format = match format {
        "digits" => OutputFormat::Digits,
        "interval" => OutputFormat::Interval,
        "decimal" => OutputFormat::Decimal,
        other => return Err(PyValueError::new_err(format!("unknown format {other:?}"))),
    };
    cli::eval_command(expr, digits, format, decimals).map_err(value_error)
}

/// Returns (passed, total) for the randomized oracle battery.
#[pyfunction]
#[pyo3(signature = (cases = 100, depth = 40, seed = 42))]
fn selftest(cases: usize, depth: usize, seed: u64) -> (usize, usize) {
    let rep = cli::selftest_command(cases, depth, seed, ConsumeTable::Correct);
    (rep.passed, rep.total)
}

/// First `count` elements of the Fibonacci stream starting 1, 1.
#[pyfunction]
fn fib(count: usize) -> Vec<BigUint> {
    lrcreal::stream::fib_stream(1u32.into(), 1u32.into()).take(count)
}

#[pymodule]
pub fn lrcreal_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyExactReal>()?;
    m.add_function(wrap_pyfunction!(affine, m)?)?;
    m.add_function(wrap_pyfunction!(prefix_bounds, m)?)?;
    m.add_function(wrap_pyfunction!(decide, m)?)?;
    m.add_function(wrap_pyfunction!(eval, m)?)?;
    m.add_function(wrap_pyfunction!(selftest, m)?)?;
    m.add_function(wrap_pyfunction!(fib, m)?)?;
    Ok(())
}
