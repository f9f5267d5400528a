//! Python bindings. Structured results come back as plain dicts and lists.

use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;
use serde_json::Value;

use gwf_core::builders::{self, BuilderSpec, Family};
use gwf_core::fchar::chi_orbit;
use gwf_core::gact::{self, Side, DEFAULT_GROUP_CAP};
use gwf_core::gggr::{GggrContext, OrbitSet};
use gwf_core::ungraded;
use gwf_core::verify::{run_suite, Suite, SuiteOptions};
use gwf_core::Error;

create_exception!(gwf, InvariantError, PyException, "A mathematical identity failed to hold.");

fn py_err(e: Error) -> PyErr {
    match e {
        Error::Invariant(_) | Error::NotACharacter(_) => InvariantError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn to_py<'py>(py: Python<'py>, v: &Value) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(v).map_err(|e| py_err(e.into()))?;
    py.import("json")?.call_method1("loads", (text,))
}

fn parse_side(side: &str) -> PyResult<Side> {
    match side {
        "primal" => Ok(Side::Primal),
        "dual" => Ok(Side::Dual),
        _ => Err(PyValueError::new_err(format!("side must be 'primal' or 'dual', not '{side}'"))),
    }
}

/// An algebra over a finite field together with its finite group action.
#[pyclass(module = "gwf", frozen)]
struct Workbench {
    inner: builders::Workbench,
}

impl Workbench {
    fn context(&self, degree: usize) -> PyResult<GggrContext<'_>> {
        GggrContext::new(&self.inner.algebra, &self.inner.group, degree).map_err(py_err)
    }

    fn point_in_range(&self, degree: usize, point: u64) -> PyResult<()> {
        let size = self.inner.algebra.piece_size(degree).map_err(py_err)?;
        if point >= size {
            return Err(PyValueError::new_err(format!("point {point} is out of range (piece has {size} points)")));
        }
        Ok(())
    }

    fn partitions(&self, set: &OrbitSet) -> PyResult<Vec<String>> {
        let alg = &self.inner.algebra;
        set.reps
            .iter()
            .map(|&r| ungraded::jordan_type(alg, &alg.eta_b(&alg.dual_point(set.degree, r))).map(|p| p.to_string()))
            .collect::<gwf_core::Result<_>>()
            .map_err(py_err)
    }
}

#[pymethods]
impl Workbench {
    /// One of the builtin algebras, e.g. ``Workbench.builtin("sl2", 5)``.
    #[staticmethod]
    #[pyo3(signature = (name, q, group_cap = DEFAULT_GROUP_CAP))]
    fn builtin(py: Python<'_>, name: &str, q: u32, group_cap: usize) -> PyResult<Self> {
        let spec = builders::builtin_spec(name, q).map_err(py_err)?.with_cap(group_cap);
        let inner = py.detach(|| builders::build(&spec)).map_err(py_err)?;
        Ok(Workbench { inner })
    }

    /// gl_n or sl_n with the Z/m grading given by integer weights.
    #[staticmethod]
    #[pyo3(signature = (family, n, q, weights, m, group_cap = DEFAULT_GROUP_CAP))]
    fn graded(py: Python<'_>, family: &str, n: usize, q: u32, weights: Vec<u32>, m: usize, group_cap: usize) -> PyResult<Self> {
        let family = match family {
            "gl" => Family::Gl,
            "sl" => Family::Sl,
            _ => return Err(PyValueError::new_err(format!("family must be 'gl' or 'sl', not '{family}'"))),
        };
        let spec = BuilderSpec::graded(family, n, q, weights, m).with_cap(group_cap);
        let inner = py.detach(|| builders::build(&spec)).map_err(py_err)?;
        Ok(Workbench { inner })
    }

    /// Reads an algebra description and a group generator file.
    #[staticmethod]
    #[pyo3(signature = (algebra, group, group_cap = DEFAULT_GROUP_CAP))]
    fn load(algebra: std::path::PathBuf, group: std::path::PathBuf, group_cap: usize) -> PyResult<Self> {
        Ok(Workbench { inner: builders::load(&algebra, &group, group_cap).map_err(py_err)? })
    }

    #[getter]
    fn label(&self) -> String {
        self.inner.algebra.label().to_string()
    }

    #[getter]
    fn p(&self) -> u32 {
        self.inner.algebra.field().p()
    }

    #[getter]
    fn q(&self) -> u32 {
        self.inner.algebra.field().q()
    }

    #[getter]
    fn dims(&self) -> Vec<usize> {
        self.inner.algebra.dims().to_vec()
    }

    #[getter]
    fn group_order(&self) -> usize {
        self.inner.group.order()
    }

    fn piece_size(&self, degree: usize) -> PyResult<u64> {
        self.inner.algebra.piece_size(degree).map_err(py_err)
    }

    /// Orbits on one piece as ``(representative, size)`` pairs.
    #[pyo3(signature = (degree = 0, side = "dual"))]
    fn orbits(&self, degree: usize, side: &str) -> PyResult<Vec<(u64, usize)>> {
        let list = gact::orbits(&self.inner.algebra, &self.inner.group, degree, parse_side(side)?).map_err(py_err)?;
        Ok(list.iter().map(|o| (o.rep, o.len())).collect())
    }

    /// Γ data for every nilpotent dual orbit of a degree.
    #[pyo3(signature = (degree = 0))]
    fn gggr_table<'py>(&self, py: Python<'py>, degree: usize) -> PyResult<Bound<'py, PyAny>> {
        let table = py.detach(|| self.context(degree)?.table().map_err(py_err))?;
        to_py(py, &serde_json::to_value(table).map_err(|e| py_err(e.into()))?)
    }

    /// Representatives of the nilpotent orbits in the wave front set of χ
    /// for the dual orbit through ``point``.
    #[pyo3(signature = (point, degree = 0))]
    fn wavefront_of_chi(&self, py: Python<'_>, point: u64, degree: usize) -> PyResult<Vec<u64>> {
        self.point_in_range(degree, point)?;
        py.detach(|| {
            let ctx = self.context(degree)?;
            let orbit = &ctx.dual_orbits()[ctx.orbit_of_point(point)];
            let f = chi_orbit(&self.inner.algebra, orbit).map_err(py_err)?;
            Ok(ctx.wavefront(&f).map_err(py_err)?.reps)
        })
    }

    /// Representatives of the nilpotent orbits in the asymptotic cone of the
    /// dual orbits through ``points``.
    #[pyo3(signature = (points, degree = 0))]
    fn cone(&self, py: Python<'_>, points: Vec<u64>, degree: usize) -> PyResult<Vec<u64>> {
        for &pt in &points {
            self.point_in_range(degree, pt)?;
        }
        py.detach(|| {
            let ctx = self.context(degree)?;
            let reps = points.iter().map(|&i| ctx.dual_orbits()[ctx.orbit_of_point(i)].rep).collect();
            Ok(ctx.cone(&OrbitSet::new(degree, reps)).map_err(py_err)?.reps)
        })
    }

    /// Jordan type of a nilpotent dual point of an ungraded type A algebra, as "(2,1)".
    fn jordan_type(&self, point: u64) -> PyResult<String> {
        self.point_in_range(0, point)?;
        let alg = &self.inner.algebra;
        Ok(ungraded::jordan_type(alg, &alg.eta_b(&alg.dual_point(0, point))).map_err(py_err)?.to_string())
    }

    /// The N map of a dual point of an ungraded type A algebra.
    fn n_map(&self, point: u64) -> PyResult<String> {
        self.point_in_range(0, point)?;
        Ok(ungraded::n_map_dual(&self.inner.algebra, &self.inner.algebra.dual_point(0, point)).map_err(py_err)?.to_string())
    }

    /// Jordan types of the wave front of χ for the orbit through ``point``.
    fn wavefront_partitions(&self, py: Python<'_>, point: u64) -> PyResult<Vec<String>> {
        let reps = self.wavefront_of_chi(py, point, 0)?;
        self.partitions(&OrbitSet::new(0, reps))
    }

    /// Runs a named verification suite and returns its result record.
    #[pyo3(signature = (name, seed = 0, degrees = None))]
    fn run_suite<'py>(&self, py: Python<'py>, name: &str, seed: u64, degrees: Option<Vec<usize>>) -> PyResult<Bound<'py, PyAny>> {
        let suite: Suite = name.parse().map_err(py_err)?;
        let opts = SuiteOptions { seed, degrees: degrees.unwrap_or_default(), ..SuiteOptions::default() };
        let result = py.detach(|| run_suite(suite, &self.inner, &opts)).map_err(py_err)?;
        to_py(py, &serde_json::to_value(result).map_err(|e| py_err(e.into()))?)
    }

    fn __repr__(&self) -> String {
        format!("Workbench({:?}, q={}, group_order={})", self.inner.algebra.label(), self.q(), self.group_order())
    }
}

#[pymodule]
fn gwf(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Workbench>()?;
    m.add("InvariantError", m.py().get_type::<InvariantError>())?;
    m.add("BUILTINS", builders::BUILTINS.to_vec())?;
    let suites: Vec<&str> = Suite::ALL.iter().map(|s| s.name()).collect();
    m.add("SUITES", suites)?;
    Ok(())
}
