//! Finitely supported graded vector spaces with ordered, named bases.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};

/// A basis vector of a [`GradedSpace`]: its degree plus its index within the
/// ordered basis of that degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GenId {
    pub deg: i64,
    pub idx: usize,
}

impl GenId {
    pub fn new(deg: i64, idx: usize) -> Self {
        GenId { deg, idx }
    }
}

/// Degrees are signed and unbounded; storage is sparse by degree.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GradedSpace {
    degs: BTreeMap<i64, Vec<String>>,
}

impl GradedSpace {
    pub fn new() -> Self {
        Self::default()
    }

    /// Build from (degree, label) pairs; labels must be unique per degree.
    pub fn from_labels(labels: impl IntoIterator<Item = (i64, String)>) -> Result<Self> {
        let mut s = Self::new();
        for (deg, label) in labels {
            s.push(deg, label)?;
        }
        Ok(s)
    }

    pub fn push(&mut self, deg: i64, label: String) -> Result<GenId> {
        let v = self.degs.entry(deg).or_default();
        if v.contains(&label) {
            return Err(Error::input(format!(
                "duplicate basis label {label:?} in degree {deg}"
            )));
        }
        v.push(label);
        Ok(GenId::new(deg, v.len() - 1))
    }

    pub fn dim(&self, deg: i64) -> usize {
        self.degs.get(&deg).map_or(0, Vec::len)
    }

    pub fn total_dim(&self) -> usize {
        self.degs.values().map(Vec::len).sum()
    }

    pub fn is_trivial(&self) -> bool {
        self.total_dim() == 0
    }

    pub fn dims(&self) -> BTreeMap<i64, usize> {
        self.degs
            .iter()
            .filter(|(_, v)| !v.is_empty())
            .map(|(&d, v)| (d, v.len()))
            .collect()
    }

    pub fn degrees(&self) -> impl Iterator<Item = i64> + '_ {
        self.degs
            .iter()
            .filter(|(_, v)| !v.is_empty())
            .map(|(&d, _)| d)
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.degrees().next()
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.degrees().last()
    }

    pub fn label(&self, id: GenId) -> &str {
        &self.degs[&id.deg][id.idx]
    }

    pub fn labels(&self, deg: i64) -> &[String] {
        self.degs.get(&deg).map_or(&[], Vec::as_slice)
    }

    pub fn find(&self, label: &str) -> Option<GenId> {
        for (&deg, v) in &self.degs {
            if let Some(idx) = v.iter().position(|l| l == label) {
                return Some(GenId::new(deg, idx));
            }
        }
        None
    }

    pub fn contains(&self, id: GenId) -> bool {
        self.degs.get(&id.deg).is_some_and(|v| id.idx < v.len())
    }

    /// Iterate basis vectors in canonical order (degree ascending, then index).
    pub fn iter(&self) -> impl Iterator<Item = GenId> + '_ {
        self.degs
            .iter()
            .flat_map(|(&deg, v)| (0..v.len()).map(move |idx| GenId::new(deg, idx)))
    }

    /// Shift all degrees down by `k` (an element of degree `d` ends up in
    /// degree `d - k`).
    pub fn shifted_down(&self, k: i64) -> GradedSpace {
        GradedSpace {
            degs: self.degs.iter().map(|(&d, v)| (d - k, v.clone())).collect(),
        }
    }
}

impl fmt::Display for GradedSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let dims = self.dims();
        if dims.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = dims.iter().map(|(d, n)| format!("{d}:{n}")).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}
