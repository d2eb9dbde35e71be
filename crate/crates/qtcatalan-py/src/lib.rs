//! Python bindings: the labeled-path, window, and polynomial types with
//! the counting, bijection, and series entry points.
//!
//! Exact integers cross the boundary as native Python ints; every
//! library error surfaces as `ValueError`.

use num::BigInt;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use qtcatalan::affine::{
    from_affine_composition, standardize as core_standardize, to_affine_composition,
    AffineComposition,
};
use qtcatalan::lattice::{count_dyck_paths_closed, GridParams};
use qtcatalan::parking::{
    enumerate_parking_functions as core_enumerate_pf, enumerate_sspf as core_enumerate_sspf,
    Composition, SspfJson,
};
use qtcatalan::polyring::{
    ekls_deformation, gessel_truncated, higher_catalan, hikita_truncated, schur_expand, MultiPoly,
    PolyJson,
};
use qtcatalan::series::{bizley_counts as core_bizley, touch_profile as core_touch_profile};
use qtcatalan::statistics::{
    codinv_inversions, dinv as core_dinv, springer_poincare, springer_poincare_half,
};
use qtcatalan::verify::{run_verify_suite, VerifyLevel};
use std::collections::BTreeMap;

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// A term as Python sees it: `((eq, et, [extra exponents..]), coefficient)`.
type PyTerm = ((i64, i64, Vec<i64>), BigInt);

/// An exact polynomial in `q`, `t`, and `x_1..x_rank`.
#[pyclass(eq, frozen)]
#[derive(PartialEq)]
struct Poly {
    inner: MultiPoly,
}

#[pymethods]
impl Poly {
    #[getter]
    fn rank(&self) -> usize {
        self.inner.rank()
    }

    #[getter]
    fn num_terms(&self) -> usize {
        self.inner.num_terms()
    }

    /// Coefficient of `q^eq t^et x^ex` as a Python int.
    fn coefficient(&self, eq: i64, et: i64, ex: Vec<i64>) -> PyResult<BigInt> {
        if ex.len() != self.inner.rank() {
            return Err(value_err(format!(
                "expected {} x-exponents, got {}",
                self.inner.rank(),
                ex.len()
            )));
        }
        Ok(self.inner.coefficient(eq, et, &ex))
    }

    /// All terms as `((eq, et, [ex..]), coefficient)` pairs.
    fn terms(&self) -> Vec<PyTerm> {
        self.inner
            .terms()
            .map(|(e, c)| {
                let ex = e.exponents();
                (
                    (ex[0] + self.inner.qoffset(), ex[1], ex[2..].to_vec()),
                    c.clone(),
                )
            })
            .collect()
    }

    /// Value at `q = t = x_i = 1`.
    fn evaluate_all_ones(&self) -> BigInt {
        self.inner.evaluate_all_ones()
    }

    fn swap_qt(&self) -> PyResult<Poly> {
        if self.inner.qoffset() != 0 {
            return Err(value_err("cannot swap q,t on a Laurent value"));
        }
        Ok(Poly {
            inner: self.inner.swap_qt(),
        })
    }

    fn latex(&self) -> String {
        self.inner.to_latex()
    }

    fn to_json(&self) -> PyResult<String> {
        let dto = self.inner.to_json().map_err(value_err)?;
        serde_json::to_string(&dto).map_err(value_err)
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Poly> {
        let dto: PolyJson = serde_json::from_str(text).map_err(value_err)?;
        Ok(Poly {
            inner: MultiPoly::from_json(&dto).map_err(value_err)?,
        })
    }

    fn __add__(&self, other: &Poly) -> PyResult<Poly> {
        Ok(Poly {
            inner: self.inner.checked_add(&other.inner).map_err(value_err)?,
        })
    }

    fn __sub__(&self, other: &Poly) -> PyResult<Poly> {
        let negated = -&other.inner;
        Ok(Poly {
            inner: self.inner.checked_add(&negated).map_err(value_err)?,
        })
    }

    fn __mul__(&self, other: &Poly) -> PyResult<Poly> {
        Ok(Poly {
            inner: self.inner.checked_mul(&other.inner).map_err(value_err)?,
        })
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Poly({})", self.inner)
    }
}

/// A column-labeled lattice path: weakly increasing labels in `1..=r`
/// down each column run.
#[pyclass(eq, frozen)]
#[derive(PartialEq)]
struct Sspf {
    inner: qtcatalan::parking::SemistandardParkingFunction,
}

#[pymethods]
impl Sspf {
    #[new]
    fn new(m: i64, n: i64, r: i64, cols: Vec<i64>, labels: Vec<i64>) -> PyResult<Self> {
        let dto = SspfJson {
            m,
            n,
            r,
            cols,
            labels,
        };
        Ok(Sspf {
            inner: dto.into_sspf().map_err(value_err)?,
        })
    }

    #[getter]
    fn m(&self) -> i64 {
        self.inner.m()
    }

    #[getter]
    fn n(&self) -> i64 {
        self.inner.n()
    }

    #[getter]
    fn r(&self) -> i64 {
        self.inner.r()
    }

    #[getter]
    fn cols(&self) -> Vec<i64> {
        self.inner.path().cols().to_vec()
    }

    #[getter]
    fn labels(&self) -> Vec<i64> {
        self.inner.labels().to_vec()
    }

    #[getter]
    fn area(&self) -> i64 {
        self.inner.area()
    }

    /// Label multiplicities: entry `i` counts uses of label `i + 1`.
    #[getter]
    fn weight(&self) -> Vec<i64> {
        self.inner.weight().parts().to_vec()
    }

    fn dinv(&self) -> PyResult<i64> {
        core_dinv(&self.inner).map_err(value_err)
    }

    fn codinv(&self) -> PyResult<i64> {
        codinv_inversions(&self.inner).map_err(value_err)
    }

    /// The bijectively relabeled path (labels become `1..=m`).
    fn standardize(&self) -> PyResult<Sspf> {
        let p = core_standardize(&self.inner).map_err(value_err)?;
        Ok(Sspf { inner: p.as_sspf() })
    }

    /// The affine window on the other side of the bijection.
    fn window(&self) -> PyResult<Window> {
        Ok(Window {
            inner: to_affine_composition(&self.inner).map_err(value_err)?,
        })
    }

    fn __repr__(&self) -> String {
        format!(
            "Sspf(m={}, n={}, r={}, cols={:?}, labels={:?})",
            self.inner.m(),
            self.inner.n(),
            self.inner.r(),
            self.inner.path().cols(),
            self.inner.labels()
        )
    }
}

/// A normalized window of an affine composition, printed `[..]_r`.
#[pyclass(eq, frozen)]
#[derive(PartialEq)]
struct Window {
    inner: AffineComposition,
}

#[pymethods]
impl Window {
    #[new]
    fn new(values: Vec<i64>, r: i64) -> PyResult<Self> {
        Ok(Window {
            inner: AffineComposition::new(values, r).map_err(value_err)?,
        })
    }

    /// Parse the display form, e.g. `"[1,5,0,2,3]_3"`.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Window> {
        Ok(Window {
            inner: text.parse().map_err(value_err)?,
        })
    }

    #[getter]
    fn values(&self) -> Vec<i64> {
        self.inner.window().to_vec()
    }

    #[getter]
    fn m(&self) -> i64 {
        self.inner.m()
    }

    #[getter]
    fn r(&self) -> i64 {
        self.inner.r()
    }

    #[getter]
    fn weight(&self) -> Vec<i64> {
        self.inner.weight().parts().to_vec()
    }

    fn is_n_stable(&self, n: i64) -> bool {
        self.inner.is_n_stable(n)
    }

    /// Invert the bijection: rebuild the labeled path on the width-`n` grid.
    fn to_sspf(&self, n: i64) -> PyResult<Sspf> {
        Ok(Sspf {
            inner: from_affine_composition(&self.inner, n).map_err(value_err)?,
        })
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Window.parse({:?})", self.inner.to_string())
    }
}

fn weight_arg(weight: Option<Vec<i64>>) -> PyResult<Option<Composition>> {
    weight
        .map(|parts| Composition::new(parts).map_err(value_err))
        .transpose()
}

/// Count labeled paths: closed form on coprime grids, else enumeration.
#[pyfunction]
fn count_sspf(m: i64, n: i64, r: i64) -> PyResult<BigInt> {
    match qtcatalan::parking::count_sspf_closed(m, n, r) {
        Ok(v) => Ok(v),
        Err(qtcatalan::Error::NonCoprime { .. }) => {
            let grid = GridParams::new(m, n).map_err(value_err)?;
            let count = core_enumerate_sspf(&grid, r, None)
                .map_err(value_err)?
                .count();
            Ok(BigInt::from(count))
        }
        Err(e) => Err(value_err(e)),
    }
}

/// Count bijectively labeled paths (`n^(m-1)` on coprime grids).
#[pyfunction]
fn count_parking_functions(m: i64, n: i64) -> PyResult<BigInt> {
    let grid = GridParams::new(m, n).map_err(value_err)?;
    if grid.is_coprime() {
        Ok(BigInt::from(n).pow((m - 1) as u32))
    } else {
        Ok(BigInt::from(core_enumerate_pf(&grid).count()))
    }
}

/// Count bare paths by the cycle-lemma closed form.
#[pyfunction]
fn count_dyck_paths(m: i64, n: i64) -> PyResult<BigInt> {
    count_dyck_paths_closed(m, n).map_err(value_err)
}

/// The rank-`r` (q,t)-Catalan polynomial from the labeled-path sum.
#[pyfunction]
fn catalan(m: i64, n: i64, r: i64) -> PyResult<Poly> {
    Ok(Poly {
        inner: higher_catalan(m, n, r).map_err(value_err)?,
    })
}

/// The same polynomial by the independent descent-sum route.
#[pyfunction]
fn hikita(m: i64, n: i64, r: i64) -> PyResult<Poly> {
    Ok(Poly {
        inner: hikita_truncated(m, n, r).map_err(value_err)?,
    })
}

/// Exact q-deformation of the count for each divisor `d` of `r`.
#[pyfunction]
fn ekls(m: i64, n: i64, r: i64, d: i64) -> PyResult<Poly> {
    Ok(Poly {
        inner: ekls_deformation(m, n, r, d).map_err(value_err)?,
    })
}

/// Truncation to `r` variables of the fundamental quasisymmetric
/// function for the given strict-ascent positions.
#[pyfunction]
fn gessel(descents: Vec<i64>, m: i64, r: i64) -> PyResult<Poly> {
    let set = descents.into_iter().collect();
    Ok(Poly {
        inner: gessel_truncated(&set, m, r).map_err(value_err)?,
    })
}

/// Cell-paving Poincaré polynomial at a fixed label weight; `half`
/// grades by codinv instead of twice codinv.
#[pyfunction]
#[pyo3(signature = (m, n, weight, half = false))]
fn poincare(m: i64, n: i64, weight: Vec<i64>, half: bool) -> PyResult<Poly> {
    let w = Composition::new(weight).map_err(value_err)?;
    let inner = if half {
        springer_poincare_half(m, n, &w).map_err(value_err)?
    } else {
        springer_poincare(m, n, &w).map_err(value_err)?
    };
    Ok(Poly { inner })
}

/// Schur expansion: list of `((eq, et, partition), coefficient)`.
#[pyfunction]
fn schur_expansion(p: &Poly) -> PyResult<Vec<PyTerm>> {
    let expansion = schur_expand(&p.inner).map_err(value_err)?;
    Ok(expansion
        .into_iter()
        .map(|((eq, et, lambda), c)| ((eq, et, lambda.parts().to_vec()), c))
        .collect())
}

/// Every labeled path on the grid, optionally restricted to one weight.
#[pyfunction]
#[pyo3(signature = (m, n, r, weight = None))]
fn enumerate_sspf(m: i64, n: i64, r: i64, weight: Option<Vec<i64>>) -> PyResult<Vec<Sspf>> {
    let grid = GridParams::new(m, n).map_err(value_err)?;
    let weight = weight_arg(weight)?;
    Ok(core_enumerate_sspf(&grid, r, weight.as_ref())
        .map_err(value_err)?
        .map(|inner| Sspf { inner })
        .collect())
}

/// Every bijectively labeled path on the grid.
#[pyfunction]
fn enumerate_parking_functions(m: i64, n: i64) -> PyResult<Vec<Sspf>> {
    let grid = GridParams::new(m, n).map_err(value_err)?;
    Ok(core_enumerate_pf(&grid)
        .map(|p| Sspf { inner: p.as_sspf() })
        .collect())
}

/// Counts along the scaled ray `(mk, nk)` for `k = 1..=order`.
#[pyfunction]
fn bizley(m: i64, n: i64, r: i64, order: usize) -> PyResult<Vec<BigInt>> {
    core_bizley(m, n, r, order).map_err(value_err)
}

/// Diagonal-touch distribution at scale `k` and the single-touch counts:
/// a pair of dicts `(phi, psi)`.
#[pyfunction]
fn touch_profile(
    m: i64,
    n: i64,
    r: i64,
    k: i64,
) -> PyResult<(BTreeMap<i64, BigInt>, BTreeMap<i64, BigInt>)> {
    let profile = core_touch_profile(m, n, r, k).map_err(value_err)?;
    Ok((profile.phi, profile.psi))
}

/// Run the named invariant checks; returns `(all_pass, report_json)`.
#[pyfunction]
#[pyo3(signature = (level = "quick", seed = 1))]
fn run_verify(level: &str, seed: u64) -> PyResult<(bool, String)> {
    let level: VerifyLevel = level.parse().map_err(value_err)?;
    let report = run_verify_suite(level, seed);
    Ok((report.all_pass, report.to_json_string()))
}

#[pymodule]
#[pyo3(name = "qtcatalan")]
fn qtcatalan_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Poly>()?;
    m.add_class::<Sspf>()?;
    m.add_class::<Window>()?;
    m.add_function(wrap_pyfunction!(count_sspf, m)?)?;
    m.add_function(wrap_pyfunction!(count_parking_functions, m)?)?;
    m.add_function(wrap_pyfunction!(count_dyck_paths, m)?)?;
    m.add_function(wrap_pyfunction!(catalan, m)?)?;
    m.add_function(wrap_pyfunction!(hikita, m)?)?;
    m.add_function(wrap_pyfunction!(ekls, m)?)?;
    m.add_function(wrap_pyfunction!(gessel, m)?)?;
    m.add_function(wrap_pyfunction!(poincare, m)?)?;
    m.add_function(wrap_pyfunction!(schur_expansion, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_sspf, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_parking_functions, m)?)?;
    m.add_function(wrap_pyfunction!(bizley, m)?)?;
    m.add_function(wrap_pyfunction!(touch_profile, m)?)?;
    m.add_function(wrap_pyfunction!(run_verify, m)?)?;
    Ok(())
}
