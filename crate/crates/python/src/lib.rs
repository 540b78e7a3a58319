//! Python bindings: load or generate a context, cluster it, and query the
//! resulting store. Densities and similarities come back as
//! `fractions.Fraction`.

use std::sync::Arc;

use pyo3::exceptions::{PyKeyError, PyOSError, PyValueError};
use pyo3::prelude::*;
use triscope_core::ingestion::{
    generate_context, load_context, write_triples, GeneratorSpec, ResultsDocument,
};
use triscope_core::oracle::{enumerate_triconcepts, DEFAULT_TRICONCEPT_CAP};
use triscope_core::{
    coverage_map, enumerate_triclusters, largest_tricluster, order_by_density, recommend,
    ClusteringConfig, Error, Plane, Rational, SizePolicy, TriAxis, TriadicContext, Tricluster,
    TriclusterStore,
};

fn py_err(e: Error) -> PyErr {
    match e {
        Error::UnknownLabel { .. } | Error::UnknownId { .. } => PyKeyError::new_err(e.to_string()),
        Error::Io { .. } | Error::Stream(_) => PyOSError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn fraction<'py>(py: Python<'py>, r: Rational) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?
        .getattr("Fraction")?
        .call1((r.numer(), r.denom()))
}

/// Accepts anything whose `str()` is a fraction or decimal: `0`, `0.5`,
/// `"5/6"`, `Fraction(5, 6)`.
fn rational(value: &Bound<'_, PyAny>) -> PyResult<Rational> {
    value.str()?.to_str()?.parse().map_err(py_err)
}

type Box3 = (Vec<String>, Vec<String>, Vec<String>);
type Coverage = (Vec<String>, Vec<String>, Vec<Vec<u32>>);
type Advice<'py> = (Bound<'py, PyAny>, PyTricluster, Vec<String>, Vec<String>);

/// A triadic context of objects, attributes and conditions.
#[pyclass(name = "Context", module = "triscope", frozen)]
struct PyContext {
    inner: Arc<TriadicContext>,
}

impl PyContext {
    fn wrap(context: TriadicContext) -> Self {
        PyContext {
            inner: Arc::new(context),
        }
    }

    fn labels(&self, axis: TriAxis, ids: &triscope_core::ElementSet) -> Vec<String> {
        self.inner.axis(axis).labels_of(ids)
    }

    fn set(&self, axis: TriAxis, labels: Vec<String>) -> PyResult<triscope_core::ElementSet> {
        self.inner
            .axis(axis)
            .set_of(labels.iter().map(String::as_str))
            .map_err(py_err)
    }
}

#[pymethods]
impl PyContext {
    /// Parses tab-separated triples or a JSON document.
    #[staticmethod]
    fn from_text(text: &str) -> PyResult<Self> {
        Ok(Self::wrap(
            load_context(text.as_bytes()).map_err(py_err)?.context,
        ))
    }

    #[staticmethod]
    fn from_file(path: std::path::PathBuf) -> PyResult<Self> {
        let bytes = std::fs::read(&path).map_err(|e| py_err(Error::io(&path, e)))?;
        Ok(Self::wrap(load_context(&bytes).map_err(py_err)?.context))
    }

    #[staticmethod]
    fn from_triples(triples: Vec<(String, String, String)>) -> Self {
        let context = TriadicContext::from_labeled_triples(
            triples
                .iter()
                .map(|(g, m, b)| (g.as_str(), m.as_str(), b.as_str())),
        );
        Self::wrap(context.canonicalized())
    }

    /// Seeded uniform random context with labels `u*`, `t*`, `r*`.
    #[staticmethod]
    #[pyo3(signature = (objects, attributes, conditions, density, seed = 0))]
    fn generate(
        objects: usize,
        attributes: usize,
        conditions: usize,
        density: &Bound<'_, PyAny>,
        seed: u64,
    ) -> PyResult<Self> {
        let spec = GeneratorSpec {
            n_objects: objects,
            n_attributes: attributes,
            n_conditions: conditions,
            fill_density: rational(density)?,
            seed,
        };
        Ok(Self::wrap(generate_context(&spec).map_err(py_err)?))
    }

    #[getter]
    fn dims(&self) -> (usize, usize, usize) {
        let [g, m, b] = self.inner.dims();
        (g, m, b)
    }

    #[getter]
    fn objects(&self) -> Vec<String> {
        self.inner.objects().labels().to_vec()
    }

    #[getter]
    fn attributes(&self) -> Vec<String> {
        self.inner.attributes().labels().to_vec()
    }

    #[getter]
    fn conditions(&self) -> Vec<String> {
        self.inner.conditions().labels().to_vec()
    }

    fn __len__(&self) -> usize {
        self.inner.incidence_len()
    }

    fn triples(&self) -> PyResult<Vec<(String, String, String)>> {
        let c = &self.inner;
        c.triples()
            .iter()
            .map(|t| {
                Ok((
                    c.objects().label(t.object)?.to_string(),
                    c.attributes().label(t.attribute)?.to_string(),
                    c.conditions().label(t.condition)?.to_string(),
                ))
            })
            .collect::<Result<_, Error>>()
            .map_err(py_err)
    }

    fn to_tsv(&self) -> PyResult<String> {
        let mut out = Vec::new();
        write_triples(&self.inner, &mut out).map_err(py_err)?;
        String::from_utf8(out).map_err(|e| PyValueError::new_err(e.to_string()))
    }

    /// Density of the box `extent × intent × modus`.
    fn density<'py>(
        &self,
        py: Python<'py>,
        extent: Vec<String>,
        intent: Vec<String>,
        modus: Vec<String>,
    ) -> PyResult<Bound<'py, PyAny>> {
        let a = self.set(TriAxis::Object, extent)?;
        let b = self.set(TriAxis::Attribute, intent)?;
        let c = self.set(TriAxis::Condition, modus)?;
        fraction(
            py,
            self.inner.tricluster_density(&a, &b, &c).map_err(py_err)?,
        )
    }

    /// Brute-force triadic concepts; every axis must fit within `cap`.
    #[pyo3(signature = (cap = DEFAULT_TRICONCEPT_CAP))]
    fn triconcepts(&self, py: Python<'_>, cap: usize) -> PyResult<Vec<Box3>> {
        let found = py
            .detach(|| enumerate_triconcepts(&self.inner, cap))
            .map_err(py_err)?;
        Ok(found
            .iter()
            .map(|c| {
                (
                    self.labels(TriAxis::Object, &c.extent),
                    self.labels(TriAxis::Attribute, &c.intent),
                    self.labels(TriAxis::Condition, &c.modus),
                )
            })
            .collect())
    }

    /// Runs prime triclustering; `rho_min` is inclusive.
    #[pyo3(signature = (rho_min = None, threads = 0))]
    fn cluster(
        &self,
        py: Python<'_>,
        rho_min: Option<&Bound<'_, PyAny>>,
        threads: usize,
    ) -> PyResult<PyRun> {
        let config = ClusteringConfig {
            rho_min: rho_min.map(rational).transpose()?.unwrap_or(Rational::ZERO),
            parallelism: threads,
        };
        let store = py
            .detach(|| enumerate_triclusters(&self.inner, &config))
            .map_err(py_err)?;
        Ok(PyRun {
            context: Arc::clone(&self.inner),
            store: Arc::new(store),
        })
    }

    fn __repr__(&self) -> String {
        let [g, m, b] = self.inner.dims();
        format!(
            "Context({g}x{m}x{b}, {} triples)",
            self.inner.incidence_len()
        )
    }
}

#[pyclass(name = "Tricluster", module = "triscope", frozen, get_all)]
struct PyTricluster {
    key: String,
    extent: Vec<String>,
    intent: Vec<String>,
    modus: Vec<String>,
    generator: (String, String, String),
    volume: u64,
    numer: u64,
    denom: u64,
}

impl PyTricluster {
    fn new(context: &TriadicContext, t: &Tricluster) -> PyResult<Self> {
        let g = t.generator();
        let label = |axis: TriAxis, id| -> PyResult<String> {
            Ok(context.axis(axis).label(id).map_err(py_err)?.to_string())
        };
        let d = t.density();
        Ok(PyTricluster {
            key: t.key().to_string(),
            extent: context.objects().labels_of(t.extent()),
            intent: context.attributes().labels_of(t.intent()),
            modus: context.conditions().labels_of(t.modus()),
            generator: (
                label(TriAxis::Object, g.object)?,
                label(TriAxis::Attribute, g.attribute)?,
                label(TriAxis::Condition, g.condition)?,
            ),
            volume: t.volume(),
            numer: d.numer(),
            denom: d.denom(),
        })
    }
}

#[pymethods]
impl PyTricluster {
    #[getter]
    fn density<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        fraction(py, Rational::new(self.numer, self.denom))
    }

    fn __repr__(&self) -> String {
        format!(
            "Tricluster({{{}}}, {{{}}}, {{{}}}, density={}/{})",
            self.extent.join(","),
            self.intent.join(","),
            self.modus.join(","),
            self.numer,
            self.denom
        )
    }
}

/// The deduplicated triclusters of one clustering run.
#[pyclass(name = "Run", module = "triscope", frozen)]
struct PyRun {
    context: Arc<TriadicContext>,
    store: Arc<TriclusterStore>,
}

fn plane(name: &str) -> PyResult<Plane> {
    name.parse().map_err(py_err)
}

#[pymethods]
impl PyRun {
    #[getter]
    fn rho_min<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        fraction(py, self.store.rho_min())
    }

    fn __len__(&self) -> usize {
        self.store.len()
    }

    /// Canonical order: density descending, then key.
    fn triclusters(&self) -> PyResult<Vec<PyTricluster>> {
        self.store
            .iter()
            .map(|t| PyTricluster::new(&self.context, t))
            .collect()
    }

    /// Density descending, then volume descending, then key.
    fn by_density(&self) -> PyResult<Vec<PyTricluster>> {
        order_by_density(&self.store)
            .into_iter()
            .map(|t| PyTricluster::new(&self.context, t))
            .collect()
    }

    /// `(row_labels, col_labels, counts)` for plane `GM`, `GB` or `MB`.
    #[pyo3(signature = (plane_name = "GM"))]
    fn coverage(&self, plane_name: &str) -> PyResult<Coverage> {
        let map = coverage_map(&self.store, &self.context, plane(plane_name)?).map_err(py_err)?;
        Ok((map.rows, map.cols, map.counts))
    }

    /// The largest-volume tricluster covering a cell, or `None`.
    #[pyo3(signature = (row, col, plane_name = "GM"))]
    fn largest(&self, row: &str, col: &str, plane_name: &str) -> PyResult<Option<PyTricluster>> {
        let plane = plane(plane_name)?;
        let (ra, ca) = plane.axes();
        let r = self.context.axis(ra).id(row).map_err(py_err)?;
        let c = self.context.axis(ca).id(col).map_err(py_err)?;
        largest_tricluster(&self.store, plane, r, c, SizePolicy::Volume)
            .map_err(py_err)?
            .map(|t| PyTricluster::new(&self.context, t))
            .transpose()
    }

    /// `(similarity, best tricluster, new tags, new resources)` for a user.
    fn recommend<'py>(&self, py: Python<'py>, user: &str) -> PyResult<Advice<'py>> {
        let id = self.context.objects().id(user).map_err(py_err)?;
        let r = recommend(&self.context, &self.store, id).map_err(py_err)?;
        let best = self
            .store
            .get(&r.best_tricluster)
            .expect("key from this store");
        Ok((
            fraction(py, r.similarity)?,
            PyTricluster::new(&self.context, best)?,
            self.context.attributes().labels_of(&r.recommended_tags),
            self.context
                .conditions()
                .labels_of(&r.recommended_resources),
        ))
    }

    /// The JSON results document, byte-identical to the CLI and service.
    fn document(&self) -> PyResult<String> {
        String::from_utf8(ResultsDocument::new(&self.context, &self.store).to_bytes())
            .map_err(|e| PyValueError::new_err(e.to_string()))
    }

    fn __repr__(&self) -> String {
        format!(
            "Run(rho_min={}, {} triclusters)",
            self.store.rho_min(),
            self.store.len()
        )
    }
}

#[pymodule]
fn triscope(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyContext>()?;
    m.add_class::<PyRun>()?;
    m.add_class::<PyTricluster>()?;
    m.add("SPORTS_TSV", triscope_core::fixtures::SPORTS_TSV)?;
    Ok(())
}
