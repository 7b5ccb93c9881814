//! Finite universes and fuzzy sets over them, with the pointwise lattice
//! operations everything else is built from.

use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use serde::ser::{Serialize, SerializeMap, Serializer};

use crate::degree::Degree;
use crate::error::{Error, Result};

/// An ordered, non-empty list of distinct element labels.
///
/// Two universes are the same universe iff their label lists are equal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Universe(Arc<[String]>);

impl Universe {
    pub fn new<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(Error::BadUniverse("universe must be non-empty".into()));
        }
        let mut seen = HashSet::new();
        for label in &labels {
            if !seen.insert(label.as_str()) {
                return Err(Error::BadUniverse(format!("duplicate label {label:?}")));
            }
        }
        Ok(Universe(labels.into()))
    }

    /// `x1, x2, ..., xn`.
    pub fn numbered(size: usize) -> Result<Self> {
        Self::new((1..=size).map(|i| format!("x{i}")))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn labels(&self) -> &[String] {
        &self.0
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.0.iter().position(|l| l == label)
    }

    pub(crate) fn same_as(&self, other: &Universe) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl fmt::Debug for Universe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.0.join(", "))
    }
}

/// A fuzzy set over a finite universe: one degree per element, in universe order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FiniteFuzzySet {
    universe: Universe,
    degrees: Vec<Degree>,
}

impl FiniteFuzzySet {
    pub fn new(universe: Universe, degrees: Vec<Degree>) -> Result<Self> {
        if degrees.len() != universe.len() {
            return Err(Error::ArityMismatch {
                expected: universe.len(),
                got: degrees.len(),
            });
        }
        Ok(FiniteFuzzySet { universe, degrees })
    }

    pub fn constant(universe: &Universe, value: Degree) -> Self {
        FiniteFuzzySet {
            degrees: vec![value; universe.len()],
            universe: universe.clone(),
        }
    }

    pub fn zero(universe: &Universe) -> Self {
        Self::constant(universe, Degree::ZERO)
    }

    pub fn one(universe: &Universe) -> Self {
        Self::constant(universe, Degree::ONE)
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn degrees(&self) -> &[Degree] {
        &self.degrees
    }

    pub fn degree(&self, label: &str) -> Option<Degree> {
        self.universe.index_of(label).map(|i| self.degrees[i])
    }

    pub fn complement(&self) -> Self {
        FiniteFuzzySet {
            universe: self.universe.clone(),
            degrees: self.degrees.iter().map(Degree::complement).collect(),
        }
    }

    pub fn meet(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a.min(b))
    }

    pub fn join(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a.max(b))
    }

    /// Pointwise supremum; the empty family yields the all-zero set.
    pub fn join_family<'a, I>(universe: &Universe, sets: I) -> Result<Self>
    where
        I: IntoIterator<Item = &'a FiniteFuzzySet>,
    {
        sets.into_iter()
            .try_fold(Self::zero(universe), |acc, s| acc.join(s))
    }

    /// Pointwise infimum; the empty family yields the all-one set.
    pub fn inf_family<'a, I>(universe: &Universe, sets: I) -> Result<Self>
    where
        I: IntoIterator<Item = &'a FiniteFuzzySet>,
    {
        sets.into_iter()
            .try_fold(Self::one(universe), |acc, s| acc.meet(s))
    }

    pub fn leq(&self, other: &Self) -> Result<bool> {
        self.check_universe(other)?;
        Ok(self.degrees.iter().zip(&other.degrees).all(|(a, b)| a <= b))
    }

    pub fn is_zero(&self) -> bool {
        self.degrees.iter().all(Degree::is_zero)
    }

    /// Labels with strictly positive degree, in universe order.
    pub fn support(&self) -> Vec<&str> {
        self.universe
            .labels()
            .iter()
            .zip(&self.degrees)
            .filter(|(_, d)| !d.is_zero())
            .map(|(l, _)| l.as_str())
            .collect()
    }

    fn check_universe(&self, other: &Self) -> Result<()> {
        if self.universe.same_as(&other.universe) {
            Ok(())
        } else {
            Err(Error::UniverseMismatch {
                left: self.universe.labels().join(", "),
                right: other.universe.labels().join(", "),
            })
        }
    }

    fn zip_with(&self, other: &Self, op: impl Fn(Degree, Degree) -> Degree) -> Result<Self> {
        self.check_universe(other)?;
        Ok(FiniteFuzzySet {
            universe: self.universe.clone(),
            degrees: self
                .degrees
                .iter()
                .zip(&other.degrees)
                .map(|(a, b)| op(*a, *b))
                .collect(),
        })
    }
}

impl fmt::Debug for FiniteFuzzySet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (label, degree)) in self.universe.labels().iter().zip(&self.degrees).enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{label}: {degree}")?;
        }
        f.write_str("}")
    }
}

/// Serializes as `{"label": "p/q", ...}` in universe order.
impl Serialize for FiniteFuzzySet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.degrees.len()))?;
        for (label, degree) in self.universe.labels().iter().zip(&self.degrees) {
            map.serialize_entry(label, degree)?;
        }
        map.end()
    }
}
