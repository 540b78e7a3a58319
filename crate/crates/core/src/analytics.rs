//! Exploration surfaces over a tricluster store: the coverage map and its
//! per-cell listings.

use std::fmt;
use std::io::Write;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::axis::ElementId;
use crate::error::{Error, Result};
use crate::triadic::{TriAxis, TriadicContext, Tricluster};
use crate::triclustering::{canonical_order, TriclusterStore};

/// A pair of axes onto which triclusters are projected.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub enum Plane {
    /// object × attribute
    #[default]
    GM,
    /// object × condition
    GB,
    /// attribute × condition
    MB,
}

impl Plane {
    pub fn axes(self) -> (TriAxis, TriAxis) {
        match self {
            Plane::GM => (TriAxis::Object, TriAxis::Attribute),
            Plane::GB => (TriAxis::Object, TriAxis::Condition),
            Plane::MB => (TriAxis::Attribute, TriAxis::Condition),
        }
    }
}

impl FromStr for Plane {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "GM" => Ok(Plane::GM),
            "GB" => Ok(Plane::GB),
            "MB" => Ok(Plane::MB),
            _ => Err(Error::InvalidPlane(s.to_string())),
        }
    }
}

impl fmt::Display for Plane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// How many stored triclusters contain each cell of a plane.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverageMap {
    pub plane: Plane,
    pub rows: Vec<String>,
    pub cols: Vec<String>,
    pub counts: Vec<Vec<u32>>,
}

impl CoverageMap {
    pub fn get(&self, row: ElementId, col: ElementId) -> u32 {
        self.counts[row as usize][col as usize]
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().flatten().map(|&c| c as u64).sum()
    }

    pub fn max(&self) -> u32 {
        self.counts.iter().flatten().copied().max().unwrap_or(0)
    }

    /// Header row of column labels, then one row per row label.
    pub fn write_csv<W: Write>(&self, sink: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(sink);
        let mut header = vec![self.plane.to_string()];
        header.extend(self.cols.iter().cloned());
        w.write_record(&header)?;
        for (label, row) in self.rows.iter().zip(&self.counts) {
            let mut record = vec![label.clone()];
            record.extend(row.iter().map(u32::to_string));
            w.write_record(&record)?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Accumulates every tricluster's projected rectangle onto `plane`.
pub fn coverage_map(
    store: &TriclusterStore,
    context: &TriadicContext,
    plane: Plane,
) -> Result<CoverageMap> {
    check_dims(store, context)?;
    let (ra, ca) = plane.axes();
    let (rows, cols) = (context.axis(ra), context.axis(ca));
    let mut counts = vec![vec![0u32; cols.len()]; rows.len()];
    for t in store {
        let col_ids: Vec<ElementId> = t.component(ca).iter().collect();
        for r in t.component(ra).iter() {
            let row = &mut counts[r as usize];
            for &c in &col_ids {
                row[c as usize] += 1;
            }
        }
    }
    Ok(CoverageMap {
        plane,
        rows: rows.labels().to_vec(),
        cols: cols.labels().to_vec(),
        counts,
    })
}

fn check_dims(store: &TriclusterStore, context: &TriadicContext) -> Result<()> {
    if store.dims() != context.dims() {
        return Err(Error::InvalidDocument(format!(
            "store built for a {:?} context, got {:?}",
            store.dims(),
            context.dims()
        )));
    }
    Ok(())
}

fn check_cell(store: &TriclusterStore, plane: Plane, row: ElementId, col: ElementId) -> Result<()> {
    let (ra, ca) = plane.axes();
    for (axis, id) in [(ra, row), (ca, col)] {
        let size = store.dims()[axis as usize];
        if id as usize >= size {
            return Err(Error::UnknownId {
                axis: axis_name(axis),
                id,
                size,
            });
        }
    }
    Ok(())
}

fn axis_name(axis: TriAxis) -> &'static str {
    match axis {
        TriAxis::Object => "object",
        TriAxis::Attribute => "attribute",
        TriAxis::Condition => "condition",
    }
}

/// Triclusters whose projection covers `(row, col)`, by descending density
/// then key.
pub fn triclusters_containing(
    store: &TriclusterStore,
    plane: Plane,
    row: ElementId,
    col: ElementId,
) -> Result<Vec<&Tricluster>> {
    check_cell(store, plane, row, col)?;
    let (ra, ca) = plane.axes();
    let mut out: Vec<&Tricluster> = store
        .iter()
        .filter(|t| t.component(ra).contains(row) && t.component(ca).contains(col))
        .collect();
    out.sort_by(|a, b| canonical_order(a, b));
    Ok(out)
}

/// What "biggest" means when highlighting a tricluster for a cell.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum SizePolicy {
    /// `|A|·|B|·|C|`
    #[default]
    Volume,
    /// `|A|`
    ExtentSize,
}

impl SizePolicy {
    fn size(self, t: &Tricluster) -> u64 {
        match self {
            SizePolicy::Volume => t.volume(),
            SizePolicy::ExtentSize => t.extent().len() as u64,
        }
    }
}

/// The biggest tricluster covering the cell; ties go to higher density, then
/// smaller key.
pub fn largest_tricluster(
    store: &TriclusterStore,
    plane: Plane,
    row: ElementId,
    col: ElementId,
    policy: SizePolicy,
) -> Result<Option<&Tricluster>> {
    Ok(triclusters_containing(store, plane, row, col)?
        .into_iter()
        .min_by(|a, b| {
            policy
                .size(b)
                .cmp(&policy.size(a))
                .then_with(|| canonical_order(a, b))
        }))
}

/// All triclusters by descending density, then descending volume, then key.
pub fn order_by_density(store: &TriclusterStore) -> Vec<&Tricluster> {
    let mut out: Vec<&Tricluster> = store.iter().collect();
    out.sort_by(|a, b| {
        b.density()
            .cmp(&a.density())
            .then_with(|| b.volume().cmp(&a.volume()))
            .then_with(|| a.key().cmp(b.key()))
    });
    out
}
