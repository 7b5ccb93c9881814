//! The backend contract topology-level code is written against.

use std::fmt::Debug;
use std::hash::Hash;

use crate::error::{Error, Result};
use crate::lattice::{FiniteFuzzySet, Universe};
use crate::plin::PlFuzzySet;

/// A fuzzy-set backend: a bounded lattice with an involutive complement.
///
/// `Domain` identifies which sets may be combined (a universe for finite sets,
/// the unit interval for piecewise-linear ones) and is needed to build the
/// constants when no set is at hand.
pub trait FuzzySet: Clone + Eq + Hash + Debug + Send + Sync {
    type Domain: Clone + Eq + Debug + Send + Sync;

    fn domain(&self) -> Self::Domain;
    fn bottom(domain: &Self::Domain) -> Self;
    fn top(domain: &Self::Domain) -> Self;
    fn complement(&self) -> Self;
    fn meet(&self, other: &Self) -> Result<Self>;
    fn join(&self, other: &Self) -> Result<Self>;
    fn leq(&self, other: &Self) -> Result<bool>;
    fn is_zero(&self) -> bool;

    /// Checks that `other` lives in the same domain as `self`.
    fn compatible(&self, other: &Self) -> Result<()> {
        self.leq(other).map(|_| ())
    }
}

impl FuzzySet for FiniteFuzzySet {
    type Domain = Universe;

    fn domain(&self) -> Universe {
        self.universe().clone()
    }

    fn bottom(domain: &Universe) -> Self {
        FiniteFuzzySet::zero(domain)
    }

    fn top(domain: &Universe) -> Self {
        FiniteFuzzySet::one(domain)
    }

    fn complement(&self) -> Self {
        FiniteFuzzySet::complement(self)
    }

    fn meet(&self, other: &Self) -> Result<Self> {
        FiniteFuzzySet::meet(self, other)
    }

    fn join(&self, other: &Self) -> Result<Self> {
        FiniteFuzzySet::join(self, other)
    }

    fn leq(&self, other: &Self) -> Result<bool> {
        FiniteFuzzySet::leq(self, other)
    }

    fn is_zero(&self) -> bool {
        FiniteFuzzySet::is_zero(self)
    }
}

/// The unit interval; all piecewise-linear sets share it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct UnitInterval;

impl FuzzySet for PlFuzzySet {
    type Domain = UnitInterval;

    fn domain(&self) -> UnitInterval {
        UnitInterval
    }

    fn bottom(_: &UnitInterval) -> Self {
        PlFuzzySet::zero()
    }

    fn top(_: &UnitInterval) -> Self {
        PlFuzzySet::one()
    }

    fn complement(&self) -> Self {
        PlFuzzySet::complement(self)
    }

    fn meet(&self, other: &Self) -> Result<Self> {
        self.min(other)
    }

    fn join(&self, other: &Self) -> Result<Self> {
        self.max(other)
    }

    fn leq(&self, other: &Self) -> Result<bool> {
        PlFuzzySet::leq(self, other)
    }

    fn is_zero(&self) -> bool {
        PlFuzzySet::is_zero(self)
    }

    fn compatible(&self, _: &Self) -> Result<()> {
        Ok(())
    }
}

/// A fuzzy set from either backend, for callers that only learn the backend
/// at run time. Combining sets from different backends is an error.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FuzzySetValue {
    Finite(FiniteFuzzySet),
    Pl(PlFuzzySet),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum AnyDomain {
    Finite(Universe),
    Pl,
}

impl FuzzySetValue {
    pub fn backend(&self) -> &'static str {
        match self {
            FuzzySetValue::Finite(_) => "finite",
            FuzzySetValue::Pl(_) => "piecewise-linear",
        }
    }

    fn binary<T>(
        &self,
        other: &Self,
        finite: impl FnOnce(&FiniteFuzzySet, &FiniteFuzzySet) -> Result<T>,
        pl: impl FnOnce(&PlFuzzySet, &PlFuzzySet) -> Result<T>,
    ) -> Result<T> {
        match (self, other) {
            (FuzzySetValue::Finite(a), FuzzySetValue::Finite(b)) => finite(a, b),
            (FuzzySetValue::Pl(a), FuzzySetValue::Pl(b)) => pl(a, b),
            _ => Err(Error::BackendMismatch {
                left: self.backend(),
                right: other.backend(),
            }),
        }
    }
}

impl From<FiniteFuzzySet> for FuzzySetValue {
    fn from(s: FiniteFuzzySet) -> Self {
        FuzzySetValue::Finite(s)
    }
}

impl From<PlFuzzySet> for FuzzySetValue {
    fn from(s: PlFuzzySet) -> Self {
        FuzzySetValue::Pl(s)
    }
}

impl FuzzySet for FuzzySetValue {
    type Domain = AnyDomain;

    fn domain(&self) -> AnyDomain {
        match self {
            FuzzySetValue::Finite(s) => AnyDomain::Finite(s.universe().clone()),
            FuzzySetValue::Pl(_) => AnyDomain::Pl,
        }
    }

    fn bottom(domain: &AnyDomain) -> Self {
        match domain {
            AnyDomain::Finite(u) => FiniteFuzzySet::zero(u).into(),
            AnyDomain::Pl => PlFuzzySet::zero().into(),
        }
    }

    fn top(domain: &AnyDomain) -> Self {
        match domain {
            AnyDomain::Finite(u) => FiniteFuzzySet::one(u).into(),
            AnyDomain::Pl => PlFuzzySet::one().into(),
        }
    }

    fn complement(&self) -> Self {
        match self {
            FuzzySetValue::Finite(s) => s.complement().into(),
            FuzzySetValue::Pl(s) => s.complement().into(),
        }
    }

    fn meet(&self, other: &Self) -> Result<Self> {
        self.binary(other, |a, b| a.meet(b).map(Into::into), |a, b| a.min(b).map(Into::into))
    }

    fn join(&self, other: &Self) -> Result<Self> {
        self.binary(other, |a, b| a.join(b).map(Into::into), |a, b| a.max(b).map(Into::into))
    }

    fn leq(&self, other: &Self) -> Result<bool> {
        self.binary(other, |a, b| a.leq(b), |a, b| a.leq(b))
    }

    fn is_zero(&self) -> bool {
        match self {
            FuzzySetValue::Finite(s) => s.is_zero(),
            FuzzySetValue::Pl(s) => s.is_zero(),
        }
    }
}
