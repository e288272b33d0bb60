//! Python bindings: parse filter specs, run report commands and query
//! pc-backed filters directly.

use pyo3::create_exception;
use pyo3::exceptions::PyException;
use pyo3::prelude::*;

use pcfilter_core::cli::{self, index_name, Options};
use pcfilter_core::faithful;
use pcfilter_core::filter::Filter;
use pcfilter_core::fspec::{self, Document, PcBackend};
use pcfilter_core::inertia;
use pcfilter_core::lattice::SubgroupLattice;
use pcfilter_core::lie::GradedLieRing;
use pcfilter_core::pc::{PcGroup, Subgroup};

create_exception!(pcfilter, PcfilterError, PyException);

fn err(e: pcfilter_core::Error) -> PyErr {
    PcfilterError::new_err(e.to_string())
}

fn options(cap: Option<usize>, seed: u64, class_hint: Option<usize>) -> Options {
    Options { cap, seed, class_hint }
}

/// A parsed filter-spec document.
#[pyclass(name = "Document", frozen)]
struct PyDocument {
    doc: Document,
}

#[pymethods]
impl PyDocument {
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        fspec::parse(text).map(|doc| PyDocument { doc }).map_err(err)
    }

    #[staticmethod]
    fn load(path: std::path::PathBuf) -> PyResult<Self> {
        let text = std::fs::read_to_string(&path).map_err(|e| PcfilterError::new_err(format!("{}: {}", path.display(), e)))?;
        Self::parse(&text)
    }

    #[getter]
    fn monoid(&self) -> String {
        self.doc.monoid.description().to_string()
    }

    #[getter]
    fn monoid_size(&self) -> usize {
        self.doc.monoid.len()
    }

    /// Order of the group, or `None` for a table backend.
    #[getter]
    fn group_order(&self) -> Option<u128> {
        self.doc.pc().map(|be| be.group.group_order())
    }

    /// Run one report command; the result carries the text report and exit code.
    #[pyo3(signature = (command, cap=None, seed=0, class_hint=None))]
    fn run(&self, command: &str, cap: Option<usize>, seed: u64, class_hint: Option<usize>) -> PyResult<PyReport> {
        let cmd = cli::parse_command(command).ok_or_else(|| PcfilterError::new_err(format!("unknown command {:?}", command)))?;
        let out = cli::run(cmd, &self.doc, &options(cap, seed, class_hint));
        Ok(PyReport { report: out.report, dot: out.dot, code: out.code })
    }

    /// The filter the document describes, closing a prefilter if needed.
    #[pyo3(signature = (cap=None, class_hint=None))]
    fn filter(&self, cap: Option<usize>, class_hint: Option<usize>) -> PyResult<PyFilter> {
        let be = self.doc.pc().ok_or_else(|| PcfilterError::new_err("filters are only exposed for pc-backed documents"))?;
        let f = cli::pc_filter(&self.doc, &options(cap, 0, class_hint)).map_err(err)?;
        Ok(PyFilter { f, be: be.clone() })
    }

    fn __repr__(&self) -> String {
        format!("Document(monoid={:?}, size={})", self.doc.monoid.description(), self.doc.monoid.len())
    }
}

/// Output of a report command.
#[pyclass(name = "Report", frozen, get_all)]
struct PyReport {
    report: String,
    dot: Option<String>,
    code: i32,
}

#[pymethods]
impl PyReport {
    /// The `key: value` lines of the report, in order.
    fn fields(&self) -> Vec<(String, String)> {
        self.report
            .lines()
            .filter_map(|l| l.split_once(": "))
            .map(|(k, v)| (k.to_string(), v.to_string()))
            .collect()
    }

    fn get(&self, key: &str) -> Option<String> {
        self.report.lines().find_map(|l| l.strip_prefix(key)?.strip_prefix(": ")).map(str::to_string)
    }

    fn __repr__(&self) -> String {
        format!("Report(code={}, lines={})", self.code, self.report.lines().count())
    }
}

/// A filter of a finite polycyclic group.
#[pyclass(name = "Filter", frozen)]
struct PyFilter {
    f: Filter<PcGroup>,
    be: PcBackend,
}

impl PyFilter {
    fn name(&self, h: &Subgroup) -> String {
        self.be.name_of(h).map(str::to_string).unwrap_or_else(|| self.f.lattice.describe(h))
    }

    fn wrap(&self, f: Filter<PcGroup>) -> PyFilter {
        PyFilter { f, be: self.be.clone() }
    }
}

#[pymethods]
impl PyFilter {
    /// Index labels in linear-extension order.
    fn indices(&self) -> Vec<String> {
        self.f.monoid.linear_extension().into_iter().map(|s| index_name(&self.f.monoid, s)).collect()
    }

    /// `(index, subgroup name, order)` for every index, in linear-extension order.
    fn values(&self) -> Vec<(String, String, u128)> {
        self.f
            .monoid
            .linear_extension()
            .into_iter()
            .map(|s| {
                let v = &self.f.values[s];
                (index_name(&self.f.monoid, s), self.name(v), self.f.lattice.order(v))
            })
            .collect()
    }

    /// Name and order of the value at the given coordinates.
    fn value(&self, coords: Vec<u32>) -> PyResult<(String, u128)> {
        let s = self.f.monoid.index_of(&coords).ok_or_else(|| PcfilterError::new_err(format!("{:?} is not in the monoid", coords)))?;
        let v = &self.f.values[s];
        Ok((self.name(v), self.f.lattice.order(v)))
    }

    fn is_valid(&self) -> bool {
        self.f.validate().valid
    }

    fn is_progressive(&self) -> bool {
        self.f.is_progressive()
    }

    fn boundary(&self) -> PyResult<PyFilter> {
        Ok(self.wrap(self.f.boundary().map_err(err)?))
    }

    fn is_faithful(&self) -> PyResult<bool> {
        Ok(faithful::is_faithful_filter(&self.f).map_err(err)?.faithful)
    }

    fn is_fully_faithful(&self) -> PyResult<bool> {
        Ok(faithful::is_fully_faithful(&self.f).map_err(err)?.holds())
    }

    /// Names of the inert subgroups.
    fn inert_subgroups(&self) -> PyResult<Vec<String>> {
        Ok(inertia::inert_subgroups(&self.f).map_err(err)?.iter().map(|h| self.name(h)).collect())
    }

    /// Refresh until no inert subgroup remains; returns the new filter and
    /// the names of the refreshed subgroups.
    fn refresh_all(&self) -> PyResult<(PyFilter, Vec<String>)> {
        let r = inertia::refresh_all(&self.f).map_err(err)?;
        let names = r.refreshed.iter().map(|h| self.name(h)).collect();
        Ok((self.wrap(r.filter), names))
    }

    /// `(index, abelian invariants)` for each nonzero graded component.
    fn lie_components(&self) -> PyResult<Vec<(String, Vec<u64>)>> {
        Ok(GradedLieRing::from_filter(&self.f).map_err(err)?.hilbert_data())
    }

    fn lie_order(&self) -> PyResult<u128> {
        Ok(GradedLieRing::from_filter(&self.f).map_err(err)?.total_order())
    }

    fn __len__(&self) -> usize {
        self.f.monoid.len()
    }

    fn __repr__(&self) -> String {
        format!("Filter(monoid={:?}, group_order={})", self.f.monoid.description(), self.f.lattice.group_order())
    }
}

/// Parse a filter spec from text.
#[pyfunction]
fn parse(text: &str) -> PyResult<PyDocument> {
    PyDocument::parse(text)
}

/// Parse a filter spec from a file.
#[pyfunction]
fn load(path: std::path::PathBuf) -> PyResult<PyDocument> {
    PyDocument::load(path)
}

#[pymodule]
fn pcfilter(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyDocument>()?;
    m.add_class::<PyReport>()?;
    m.add_class::<PyFilter>()?;
    m.add_function(wrap_pyfunction!(parse, m)?)?;
    m.add_function(wrap_pyfunction!(load, m)?)?;
    m.add("PcfilterError", m.py().get_type::<PcfilterError>())?;
    Ok(())
}
