//! Semiopen and somewhat-open classes of fuzzy sets.
//!
//! A set `s` is semiopen when `s <= Cl(Int(s))`. The semi-interior is the
//! largest semiopen set below `s`; it is computed as `s ∧ Cl(Int(s))`, which
//! is semiopen (since `Int(s)` lies below it) and dominates every semiopen
//! `t <= s` (since `t <= Cl(Int(t)) <= Cl(Int(s))`). The brute-force grid
//! search in [`crate::oracle`] checks this independently.

use crate::error::Result;
use crate::set::FuzzySet;
use crate::topology::Topology;

pub fn is_semiopen<S: FuzzySet>(t: &Topology<S>, s: &S) -> Result<bool> {
    s.leq(&t.closure(&t.interior(s)?)?)
}

/// The complement is semiopen.
pub fn is_semiclosed<S: FuzzySet>(t: &Topology<S>, s: &S) -> Result<bool> {
    is_semiopen(t, &s.complement())
}

pub fn semi_interior<S: FuzzySet>(t: &Topology<S>, s: &S) -> Result<S> {
    s.meet(&t.closure(&t.interior(s)?)?)
}

/// Smallest semiclosed set above `s`: `s ∨ Int(Cl(s))`.
pub fn semi_closure<S: FuzzySet>(t: &Topology<S>, s: &S) -> Result<S> {
    s.join(&t.interior(&t.closure(s)?)?)
}

pub fn is_somewhat_open<S: FuzzySet>(t: &Topology<S>, s: &S) -> Result<bool> {
    Ok(s.is_zero() || !t.interior(s)?.is_zero())
}

pub fn is_somewhat_semiopen<S: FuzzySet>(t: &Topology<S>, s: &S) -> Result<bool> {
    Ok(s.is_zero() || !semi_interior(t, s)?.is_zero())
}

/// Where a set sits in the open ⟹ semiopen ⟹ somewhat-open hierarchy, with
/// the operator values that decided it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetClassification<S> {
    pub is_open: bool,
    pub is_closed: bool,
    pub is_semiopen: bool,
    pub is_semiclosed: bool,
    pub is_somewhat_open: bool,
    pub is_somewhat_semiopen: bool,
    pub interior: S,
    pub closure: S,
    pub semi_interior: S,
    pub semi_closure: S,
}

impl<S> SetClassification<S> {
    /// open ⟹ semiopen ⟹ somewhat open, and somewhat open = somewhat semiopen.
    pub fn is_consistent(&self) -> bool {
        (!self.is_open || self.is_semiopen)
            && (!self.is_semiopen || self.is_somewhat_open)
            && self.is_somewhat_open == self.is_somewhat_semiopen
    }
}

pub fn classify_set<S: FuzzySet>(t: &Topology<S>, s: &S) -> Result<SetClassification<S>> {
    let interior = t.interior(s)?;
    let closure = t.closure(s)?;
    let cl_int = t.closure(&interior)?;
    let semi_interior = s.meet(&cl_int)?;
    let semi_closure = s.join(&t.interior(&closure)?)?;
    Ok(SetClassification {
        is_open: t.is_open(s)?,
        is_closed: t.is_closed(s)?,
        is_semiopen: s.leq(&cl_int)?,
        is_semiclosed: is_semiclosed(t, s)?,
        is_somewhat_open: s.is_zero() || !interior.is_zero(),
        is_somewhat_semiopen: s.is_zero() || !semi_interior.is_zero(),
        interior,
        closure,
        semi_interior,
        semi_closure,
    })
}
