//! Python bindings: a `Code` class wrapping the generator matrix plus
//! module-level helpers for parsing, priming, and Pauli strings.
//!
//! Build the extension with `cargo build --release -p ldikit-py`, copy
//! `libldikit_py.so` next to your script as `ldikit_py.so`, and import it.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use ldikit::{
    canonicalize, detection_distance, format_code_file, format_pauli_string, min_entanglement,
    oracle_distance, parse_code_file, rates, threshold, transform_with, verify, CodeSpec,
    MagnitudeMode, PrimeModulus,
};

fn err(e: ldikit::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn prime(v: u64) -> PyResult<PrimeModulus> {
    PrimeModulus::new(v).map_err(err)
}

/// A qudit code: `k` generator rows of `2n` integers over local dimension `q`.
#[pyclass(module = "ldikit_py", skip_from_py_object)]
#[derive(Clone)]
struct Code {
    inner: CodeSpec,
}

#[pymethods]
impl Code {
    #[new]
    #[pyo3(signature = (q, n, rows, unbounded = false))]
    fn new(q: u64, n: usize, rows: Vec<Vec<i64>>, unbounded: bool) -> PyResult<Self> {
        let q = prime(q)?;
        let inner = if unbounded {
            CodeSpec::new_unbounded(q, n, rows)
        } else {
            CodeSpec::new(q, n, rows)
        }
        .map_err(err)?;
        Ok(Self { inner })
    }

    /// Parse the flat-file format (same grammar as the CLI).
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Ok(Self {
            inner: parse_code_file(text).map_err(err)?,
        })
    }

    fn format(&self) -> String {
        format_code_file(&self.inner)
    }

    #[getter]
    fn q(&self) -> u64 {
        self.inner.q().value()
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn k(&self) -> usize {
        self.inner.k()
    }

    fn rows(&self) -> Vec<Vec<i64>> {
        self.inner.matrix().row_vecs()
    }

    /// The same generators read at a different prime.
    fn reduced(&self, p: u64) -> PyResult<Code> {
        Ok(Code {
            inner: self.inner.reduced(prime(p)?).map_err(err)?,
        })
    }

    /// `(c, s)`: entangled pairs needed and outright-commuting generators.
    fn min_entanglement(&self) -> PyResult<(usize, usize)> {
        let rep = min_entanglement(&self.inner).map_err(err)?;
        Ok((rep.c, rep.s))
    }

    /// Canonical form `[I_k X2 | Z1 Z2]` and the step log as a JSON string.
    fn canonical(&self) -> PyResult<(Code, String)> {
        let canon = canonicalize(&self.inner).map_err(err)?;
        let log = serde_json::to_string(canon.log()).expect("log serializes");
        Ok((
            Code {
                inner: canon.code().clone(),
            },
            log,
        ))
    }

    /// Lift to integer generators that commute mod `p`.
    #[pyo3(signature = (p, minimize = false))]
    fn transform(&self, p: u64, minimize: bool) -> PyResult<Transformed> {
        let mode = if minimize {
            MagnitudeMode::Minimize
        } else {
            MagnitudeMode::Exact
        };
        let result = transform_with(&self.inner, prime(p)?, mode).map_err(err)?;
        let report = verify(&result);
        Ok(Transformed {
            p,
            q: self.inner.q().value(),
            output: result.output.row_vecs(),
            l: result.l.row_vecs(),
            label: format!("{:?}", result.label),
            mod_q_preserved: report.mod_q_preserved,
            mod_p_commuting: report.mod_p_commuting,
            l_valid: report.l_valid,
            max_entry: report.max_entry_observed,
        })
    }

    /// Brute-force detection distance at `p` (default: the code's own q).
    #[pyo3(signature = (p = None, max_weight = None, exhaustive = false))]
    fn distance(
        &self,
        p: Option<u64>,
        max_weight: Option<usize>,
        exhaustive: bool,
    ) -> PyResult<Distance> {
        let p = match p {
            Some(v) => prime(v)?,
            None => self.inner.q(),
        };
        let cap = max_weight.unwrap_or(self.inner.n());
        let report = if exhaustive {
            oracle_distance(self.inner.matrix(), p).map_err(err)?
        } else {
            detection_distance(self.inner.matrix(), p, cap)
        };
        Ok(Distance {
            d_pure: report.d_pure,
            d: report.d,
            distance: report.distance(),
            witness: report.witness.as_ref().map(|w| w.entries().to_vec()),
            witness_pauli: report.witness.as_ref().map(format_pauli_string),
            degenerate: report.degenerate,
            cap_hit: report.cap_hit,
        })
    }

    /// `(B, p*)` as decimal strings; `p*` needs a distance.
    #[pyo3(signature = (d = None))]
    fn bounds(&self, d: Option<u64>) -> PyResult<(String, Option<String>)> {
        let d = d.or(self.inner.declared_d);
        let report = match d {
            Some(d) => threshold(&self.inner, d),
            None => ldikit::entry_bound(&self.inner),
        };
        Ok((report.b.to_string(), report.p_star.map(|v| v.to_string())))
    }

    /// `(ea, (ea, c/n), catalytic)` as reduced-fraction strings.
    fn rates(&self) -> PyResult<(String, (String, String), String)> {
        let c = min_entanglement(&self.inner).map_err(err)?.c;
        let r = rates(self.inner.n(), self.inner.k(), c);
        Ok((
            r.ea.to_string(),
            (r.tradeoff.0.to_string(), r.tradeoff.1.to_string()),
            r.catalytic.to_string(),
        ))
    }

    fn __repr__(&self) -> String {
        format!(
            "Code(q={}, n={}, k={})",
            self.inner.q(),
            self.inner.n(),
            self.inner.k()
        )
    }
}

/// Result of lifting a code to a new prime.
#[pyclass(module = "ldikit_py")]
struct Transformed {
    #[pyo3(get)]
    p: u64,
    #[pyo3(get)]
    q: u64,
    #[pyo3(get)]
    output: Vec<Vec<i64>>,
    #[pyo3(get)]
    l: Vec<Vec<i64>>,
    #[pyo3(get)]
    label: String,
    #[pyo3(get)]
    mod_q_preserved: bool,
    #[pyo3(get)]
    mod_p_commuting: bool,
    #[pyo3(get)]
    l_valid: bool,
    #[pyo3(get)]
    max_entry: i64,
}

#[pymethods]
impl Transformed {
    fn passed(&self) -> bool {
        self.mod_q_preserved && self.mod_p_commuting && self.l_valid
    }

    /// The lifted code re-read at its target prime (entanglement-free).
    fn at_target(&self) -> PyResult<Code> {
        let code = CodeSpec::new_unbounded(
            prime(self.q)?,
            self.output[0].len() / 2,
            self.output.clone(),
        )
        .map_err(err)?;
        Ok(Code {
            inner: code.reduced(prime(self.p)?).map_err(err)?,
        })
    }
}

#[pyclass(module = "ldikit_py")]
struct Distance {
    #[pyo3(get)]
    d_pure: Option<usize>,
    #[pyo3(get)]
    d: Option<usize>,
    #[pyo3(get)]
    distance: Option<usize>,
    #[pyo3(get)]
    witness: Option<Vec<i64>>,
    #[pyo3(get)]
    witness_pauli: Option<String>,
    #[pyo3(get)]
    degenerate: bool,
    #[pyo3(get)]
    cap_hit: bool,
}

#[pyfunction]
fn is_prime(v: u64) -> bool {
    ldikit::is_prime(v)
}

/// φ vector of a Pauli string like `"Z X^2Z I"` over GF(q).
#[pyfunction]
fn parse_pauli(text: &str, q: u64) -> PyResult<Vec<i64>> {
    Ok(ldikit::parse_pauli_string(text, prime(q)?)
        .map_err(err)?
        .entries()
        .to_vec())
}

#[pymodule]
fn ldikit_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Code>()?;
    m.add_class::<Transformed>()?;
    m.add_class::<Distance>()?;
    m.add_function(wrap_pyfunction!(is_prime, m)?)?;
    m.add_function(wrap_pyfunction!(parse_pauli, m)?)?;
    Ok(())
}
