//! Finite fuzzy topologies: axiom validation, generation from a subbasis, and
//! the interior and closure operators.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::set::FuzzySet;

pub const DEFAULT_CAP: usize = 4096;

/// Why a family of fuzzy sets fails to be a topology.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "axiom", rename_all = "snake_case")]
pub enum AxiomViolation {
    MissingBottom,
    MissingTop,
    MeetNotMember { left: String, right: String },
    JoinNotMember { left: String, right: String },
    DuplicateMember { first: String, second: String },
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AxiomViolation::MissingBottom => f.write_str("the constant 0 set is not a member"),
            AxiomViolation::MissingTop => f.write_str("the constant 1 set is not a member"),
            AxiomViolation::MeetNotMember { left, right } => {
                write!(f, "meet of {left} and {right} is not a member")
            }
            AxiomViolation::JoinNotMember { left, right } => {
                write!(f, "join of {left} and {right} is not a member")
            }
            AxiomViolation::DuplicateMember { first, second } => {
                write!(f, "{first} and {second} are the same fuzzy set")
            }
        }
    }
}

/// A finite family of fuzzy sets containing 0 and 1 and closed under binary
/// meet and join. Immutable once built.
#[derive(Clone, Debug)]
pub struct Topology<S: FuzzySet> {
    domain: S::Domain,
    members: Vec<S>,
    names: Vec<String>,
    closed: Vec<S>,
    index: HashMap<S, usize>,
}

impl<S: FuzzySet> PartialEq for Topology<S> {
    fn eq(&self, other: &Self) -> bool {
        self.domain == other.domain && self.members == other.members && self.names == other.names
    }
}

impl<S: FuzzySet> Eq for Topology<S> {}

impl<S: FuzzySet> Topology<S> {
    /// Accepts `opens` as-is iff it satisfies the topology axioms.
    pub fn validate(opens: Vec<(String, S)>) -> Result<Self> {
        let domain = opens.first().ok_or(Error::EmptyFamily)?.1.domain();
        for (_, s) in &opens[1..] {
            opens[0].1.compatible(s)?;
        }
        let mut index: HashMap<S, usize> = HashMap::with_capacity(opens.len());
        for (i, (name, s)) in opens.iter().enumerate() {
            if let Some(&j) = index.get(s) {
                return Err(Error::NotATopology(AxiomViolation::DuplicateMember {
                    first: opens[j].0.clone(),
                    second: name.clone(),
                }));
            }
            index.insert(s.clone(), i);
        }
        if !index.contains_key(&S::bottom(&domain)) {
            return Err(Error::NotATopology(AxiomViolation::MissingBottom));
        }
        if !index.contains_key(&S::top(&domain)) {
            return Err(Error::NotATopology(AxiomViolation::MissingTop));
        }
        for i in 0..opens.len() {
            for j in i + 1..opens.len() {
                let (a, b) = (&opens[i], &opens[j]);
                if !index.contains_key(&a.1.meet(&b.1)?) {
                    return Err(Error::NotATopology(AxiomViolation::MeetNotMember {
                        left: a.0.clone(),
                        right: b.0.clone(),
                    }));
                }
                if !index.contains_key(&a.1.join(&b.1)?) {
                    return Err(Error::NotATopology(AxiomViolation::JoinNotMember {
                        left: a.0.clone(),
                        right: b.0.clone(),
                    }));
                }
            }
        }
        let (names, members): (Vec<_>, Vec<_>) = opens.into_iter().unzip();
        Ok(Self::assemble(domain, members, names, index))
    }

    /// The smallest topology containing `subbasis`, computed as a meet/join
    /// fixpoint. Fails once the family would exceed `cap` members.
    ///
    /// Member order: 0, 1, subbasis sets in the given order (duplicates
    /// dropped), then generated sets in discovery order, named `#k`.
    pub fn generate(domain: &S::Domain, subbasis: Vec<(String, S)>, cap: usize) -> Result<Self> {
        let bottom = S::bottom(domain);
        let mut members = vec![bottom.clone(), S::top(domain)];
        let mut names = vec!["0".to_string(), "1".to_string()];
        for (_, s) in &subbasis {
            bottom.compatible(s)?;
        }
        let mut index: HashMap<S, usize> = members.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
        let mut push = |s: S, name: String, members: &mut Vec<S>, names: &mut Vec<String>| -> Result<()> {
            if index.contains_key(&s) {
                return Ok(());
            }
            if members.len() >= cap {
                return Err(Error::CapExceeded { cap });
            }
            index.insert(s.clone(), members.len());
            members.push(s);
            names.push(name);
            Ok(())
        };
        for (name, s) in subbasis {
            push(s, name, &mut members, &mut names)?;
        }
        let mut j = 0;
        while j < members.len() {
            for i in 0..j {
                let meet = members[i].meet(&members[j])?;
                let name = format!("#{}", members.len());
                push(meet, name, &mut members, &mut names)?;
                let join = members[i].join(&members[j])?;
                let name = format!("#{}", members.len());
                push(join, name, &mut members, &mut names)?;
            }
            j += 1;
        }
        let index = members.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
        Ok(Self::assemble(domain.clone(), members, names, index))
    }

    fn assemble(domain: S::Domain, members: Vec<S>, names: Vec<String>, index: HashMap<S, usize>) -> Self {
        let closed = members.iter().map(FuzzySet::complement).collect();
        Topology {
            domain,
            members,
            names,
            closed,
            index,
        }
    }

    pub fn domain(&self) -> &S::Domain {
        &self.domain
    }

    pub fn members(&self) -> &[S] {
        &self.members
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &S)> {
        self.names.iter().map(String::as_str).zip(&self.members)
    }

    pub fn get(&self, name: &str) -> Option<&S> {
        self.names.iter().position(|n| n == name).map(|i| &self.members[i])
    }

    /// Name of the member semantically equal to `s`, if any.
    pub fn name_of(&self, s: &S) -> Option<&str> {
        self.index.get(s).map(|&i| self.names[i].as_str())
    }

    pub fn bottom(&self) -> S {
        S::bottom(&self.domain)
    }

    pub fn top(&self) -> S {
        S::top(&self.domain)
    }

    /// Join of every member below `s`.
    pub fn interior(&self, s: &S) -> Result<S> {
        let mut acc = self.bottom();
        for m in &self.members {
            if m.leq(s)? {
                acc = acc.join(m)?;
            }
        }
        Ok(acc)
    }

    /// Meet of every closed set above `s`.
    pub fn closure(&self, s: &S) -> Result<S> {
        let mut acc = self.top();
        for c in &self.closed {
            if s.leq(c)? {
                acc = acc.meet(c)?;
            }
        }
        Ok(acc)
    }

    pub fn is_open(&self, s: &S) -> Result<bool> {
        self.members[0].compatible(s)?;
        Ok(self.index.contains_key(s))
    }

    pub fn is_closed(&self, s: &S) -> Result<bool> {
        self.is_open(&s.complement())
    }
}
