use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite set of nonnegative integers kept in increasing order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct FiniteSet {
    elems: Vec<i64>,
}

impl FiniteSet {
    pub fn empty() -> Self {
        FiniteSet::default()
    }

    /// Sorts the input; rejects negative or repeated elements.
    pub fn new(mut elems: Vec<i64>) -> Result<Self> {
        elems.sort_unstable();
        if elems.first().is_some_and(|&e| e < 0) {
            return Err(Error::ParameterViolation(format!("negative set element in {elems:?}")));
        }
        if elems.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::ParameterViolation(format!("repeated set element in {elems:?}")));
        }
        Ok(FiniteSet { elems })
    }

    pub fn from_slice(elems: &[i64]) -> Self {
        FiniteSet::new(elems.to_vec()).expect("valid set literal")
    }

    pub fn elems(&self) -> &[i64] {
        &self.elems
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    /// Largest element, `-1` for the empty set.
    pub fn max(&self) -> i64 {
        self.elems.last().copied().unwrap_or(-1)
    }

    pub fn min(&self) -> Option<i64> {
        self.elems.first().copied()
    }

    pub fn sum(&self) -> i64 {
        self.elems.iter().sum()
    }

    pub fn contains(&self, e: i64) -> bool {
        self.elems.binary_search(&e).is_ok()
    }

    /// True when every element is positive.
    pub fn is_positive(&self) -> bool {
        self.elems.first().is_none_or(|&e| e >= 1)
    }

    /// `{1, ..., f_k} \ {f_k - f : f in F}`; the empty set maps to itself.
    pub fn involution_i(&self) -> FiniteSet {
        let top = self.max();
        let elems = (1..=top).filter(|v| !self.contains(top - v)).collect();
        FiniteSet { elems }
    }

    /// `{0, ..., f_k + h - 1} \ {f - 1 : f in F}` with `f_k = -1` for the empty set,
    /// so that `J_h(empty) = {0, ..., h-2}`.
    pub fn transform_j(&self, h: i64) -> FiniteSet {
        let top = self.max() + h - 1;
        let elems = (0..=top).filter(|v| !self.contains(v + 1)).collect();
        FiniteSet { elems }
    }

    /// `{f_k - f + 1 : f in F}`.
    pub fn reflect(&self) -> FiniteSet {
        let top = self.max();
        FiniteSet::new(self.elems.iter().map(|f| top - f + 1).collect()).expect("reflection keeps distinctness")
    }
}

impl TryFrom<Vec<i64>> for FiniteSet {
    type Error = Error;
    fn try_from(v: Vec<i64>) -> Result<Self> {
        FiniteSet::new(v)
    }
}

impl From<FiniteSet> for Vec<i64> {
    fn from(s: FiniteSet) -> Vec<i64> {
        s.elems
    }
}

impl fmt::Display for FiniteSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.elems.iter().map(|e| e.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}
