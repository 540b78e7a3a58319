//! Per-axis name tables mapping dense ids to display labels.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::set::ElementSet;

/// Dense index into an axis label table.
pub type ElementId = u32;

/// Bijection between ids `0..n` and distinct labels.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LabelTable {
    name: &'static str,
    labels: Vec<String>,
    index: HashMap<String, ElementId>,
}

impl LabelTable {
    pub fn new(name: &'static str) -> Self {
        LabelTable {
            name,
            labels: Vec::new(),
            index: HashMap::new(),
        }
    }

    /// Fails on duplicate labels.
    pub fn from_labels<S: Into<String>>(
        name: &'static str,
        labels: impl IntoIterator<Item = S>,
    ) -> Result<Self> {
        let mut table = LabelTable::new(name);
        for label in labels {
            let label = label.into();
            if table.index.contains_key(&label) {
                return Err(Error::InvalidDocument(format!(
                    "duplicate {name} label {label:?}"
                )));
            }
            table.intern(&label);
        }
        Ok(table)
    }

    /// Returns the id of `label`, appending it when new.
    pub fn intern(&mut self, label: &str) -> ElementId {
        if let Some(&id) = self.index.get(label) {
            return id;
        }
        let id = self.labels.len() as ElementId;
        self.labels.push(label.to_string());
        self.index.insert(label.to_string(), id);
        id
    }

    pub fn name(&self) -> &'static str {
        self.name
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, id: ElementId) -> Result<&str> {
        self.labels
            .get(id as usize)
            .map(String::as_str)
            .ok_or(Error::UnknownId {
                axis: self.name,
                id,
                size: self.labels.len(),
            })
    }

    pub fn id(&self, label: &str) -> Result<ElementId> {
        self.index
            .get(label)
            .copied()
            .ok_or_else(|| Error::UnknownLabel {
                axis: self.name,
                label: label.to_string(),
            })
    }

    pub fn check_id(&self, id: ElementId) -> Result<()> {
        self.label(id).map(|_| ())
    }

    pub fn check_set(&self, set: &ElementSet) -> Result<()> {
        if set.universe() != self.len() {
            return Err(Error::UniverseMismatch {
                axis: self.name,
                expected: self.len(),
                found: set.universe(),
            });
        }
        Ok(())
    }

    /// Builds a set from labels.
    pub fn set_of<S: AsRef<str>>(&self, labels: impl IntoIterator<Item = S>) -> Result<ElementSet> {
        let mut set = ElementSet::empty(self.len());
        for label in labels {
            set.insert(self.id(label.as_ref())?);
        }
        Ok(set)
    }

    pub fn labels_of(&self, set: &ElementSet) -> Vec<String> {
        set.iter()
            .map(|id| self.labels[id as usize].clone())
            .collect()
    }
}
