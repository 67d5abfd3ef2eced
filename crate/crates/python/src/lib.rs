//! Python bindings. Counts come back as Python `int`s of arbitrary size.

use num_bigint::BigInt;
use pyo3::create_exception;
use pyo3::exceptions::{PyArithmeticError, PyValueError};
use pyo3::prelude::*;

use multiset_sieve::{apps, brute, identities, io, sieve, Error};

create_exception!(multiset_sieve, IntegrityError, PyArithmeticError);
create_exception!(multiset_sieve, InputError, PyValueError);

fn py_err(e: Error) -> PyErr {
    match e {
        Error::Integrity(_) | Error::BeyondTruncation { .. } => IntegrityError::new_err(e.to_string()),
        Error::InvalidInput(_) | Error::Refused(_) => InputError::new_err(e.to_string()),
    }
}

fn lift<T>(r: multiset_sieve::Result<T>) -> PyResult<T> {
    r.map_err(py_err)
}

/// A symmetric subset of `D^k`, given by labelled tuples.
#[pyclass(name = "ExplicitSet", frozen)]
struct PyExplicitSet {
    inner: sieve::SymmetricSet,
}

impl PyExplicitSet {
    fn explicit(&self) -> &multiset_sieve::ExplicitSet {
        self.inner.as_explicit().expect("always built from an explicit set")
    }

    fn wrap(x: multiset_sieve::ExplicitSet) -> Self {
        Self { inner: sieve::SymmetricSet::Explicit(x) }
    }
}

#[pymethods]
impl PyExplicitSet {
    #[new]
    #[pyo3(signature = (ground_set, k, tuples, symmetrize = false))]
    fn new(ground_set: Vec<String>, k: usize, tuples: Vec<Vec<String>>, symmetrize: bool) -> PyResult<Self> {
        let x = lift(multiset_sieve::ExplicitSet::from_labels(ground_set, k, &tuples, symmetrize))?;
        Ok(Self::wrap(x))
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(Self::wrap(lift(io::parse_set(text))?))
    }

    /// Canonical JSON: every tuple listed, `symmetrize` false.
    fn to_json(&self) -> String {
        io::dump_canonical(self.explicit())
    }

    #[getter]
    fn k(&self) -> usize {
        self.explicit().k()
    }

    #[getter]
    fn ground_set(&self) -> Vec<String> {
        self.explicit().ground_set().to_vec()
    }

    fn tuples(&self) -> Vec<Vec<String>> {
        let x = self.explicit();
        x.tuples().map(|t| x.render(t)).collect()
    }

    fn __len__(&self) -> usize {
        self.explicit().len()
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.explicit() == other.explicit()
    }

    fn __repr__(&self) -> String {
        let x = self.explicit();
        format!("ExplicitSet(k={}, |D|={}, |X|={})", x.k(), x.ground_set().len(), x.len())
    }

    /// `|M(X)|`.
    fn count(&self) -> PyResult<BigInt> {
        lift(sieve::count_multisets(&self.inner))
    }

    /// Multisets with every multiplicity at most `j`.
    fn count_bounded(&self, j: usize) -> PyResult<BigInt> {
        lift(sieve::count_multisets_bounded(&self.inner, j))
    }

    /// Multisets with exactly `d` distinct elements.
    fn count_distinct(&self, d: usize) -> PyResult<BigInt> {
        lift(sieve::count_multisets_distinct(&self.inner, d))
    }

    /// Tuples with pairwise distinct coordinates.
    fn count_distinct_tuples(&self) -> PyResult<BigInt> {
        lift(sieve::count_distinct_tuples(&self.inner))
    }

    /// The same four counts by enumeration: `kind` is one of "all",
    /// "bounded", "distinct", "distinct_tuples".
    #[pyo3(signature = (kind = "all", param = 0))]
    fn brute_count(&self, kind: &str, param: usize) -> PyResult<BigInt> {
        let x = self.explicit();
        lift(match kind {
            "all" => brute::brute_count_multisets(x),
            "bounded" => brute::brute_count_bounded(x, param),
            "distinct" => brute::brute_count_distinct(x, param),
            "distinct_tuples" => brute::brute_count_distinct_tuples(x),
            other => return Err(InputError::new_err(format!("unknown kind {other:?}"))),
        })
    }
}

/// Full `D^k` over the labels "0", …, "m-1".
#[pyfunction]
fn full_set(m: usize, k: usize) -> PyResult<PyExplicitSet> {
    Ok(PyExplicitSet::wrap(lift(multiset_sieve::ExplicitSet::full(m, k))?))
}

/// Partitions of `b` (residues, lowest degree first) into `k` nonzero parts
/// over `F_{p^a}`. `method` is "closed", "sieve" or "brute".
#[pyfunction]
#[pyo3(signature = (p, a, k, b, method = "closed"))]
fn partition_count(p: u32, a: u32, k: usize, b: Vec<u32>, method: &str) -> PyResult<BigInt> {
    let field = lift(multiset_sieve::FieldSpec::new(p, a))?;
    let b = lift(field.element(&b))?;
    lift(match method {
        "closed" => apps::partition_count_closed(&field, k, &b),
        "sieve" => apps::partition_count_sieve(&field, k, &b),
        "brute" => apps::partition_count_brute(&field, k, &b),
        other => return Err(InputError::new_err(format!("unknown method {other:?}"))),
    })
}

#[pyfunction]
#[pyo3(signature = (n, q, brute = false))]
fn necklace_count(n: u64, q: u64, brute: bool) -> PyResult<BigInt> {
    lift(if brute { apps::necklace_count_brute(n, q) } else { apps::necklace_count(n, q) })
}

/// `(count, coprime)`; the count equals the necklace count only when coprime.
#[pyfunction]
fn zerosum_total(n: u64, q: u64) -> PyResult<(BigInt, bool)> {
    let t = lift(apps::zerosum_total(n, q))?;
    Ok((t.count, t.coprime))
}

#[pyfunction]
fn zerosum_bounded_count(n: u64, q: u64, k: u64) -> PyResult<BigInt> {
    lift(apps::zerosum_bounded_count(n, q, k))
}

/// `[(suite, cases, failures)]` for every identity suite.
#[pyfunction]
fn run_identities(k_max: usize) -> PyResult<Vec<(String, usize, Vec<String>)>> {
    let reports = lift(identities::run_all(k_max))?;
    Ok(reports.into_iter().map(|r| (r.name.to_string(), r.cases, r.failures)).collect())
}

#[pymodule]
#[pyo3(name = "multiset_sieve")]
fn multiset_sieve_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyExplicitSet>()?;
    m.add_function(wrap_pyfunction!(full_set, m)?)?;
    m.add_function(wrap_pyfunction!(partition_count, m)?)?;
    m.add_function(wrap_pyfunction!(necklace_count, m)?)?;
    m.add_function(wrap_pyfunction!(zerosum_total, m)?)?;
    m.add_function(wrap_pyfunction!(zerosum_bounded_count, m)?)?;
    m.add_function(wrap_pyfunction!(run_identities, m)?)?;
    m.add("IntegrityError", m.py().get_type::<IntegrityError>())?;
    m.add("InputError", m.py().get_type::<InputError>())?;
    Ok(())
}
