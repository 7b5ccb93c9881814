//! Crisp point maps between finite fuzzy topological spaces, the fuzzy image
//! and preimage they induce, and the continuity/openness classifier.

use crate::degree::Degree;
use crate::error::{Error, Result};
use crate::lattice::{FiniteFuzzySet, Universe};
use crate::semiclass::classify_set;
use crate::topology::Topology;

pub type FiniteTopology = Topology<FiniteFuzzySet>;

/// A total map from the domain universe to the codomain universe, together
/// with the topologies on both sides.
#[derive(Clone, Debug)]
pub struct FuzzyFunction {
    domain: FiniteTopology,
    codomain: FiniteTopology,
    map: Vec<usize>,
}

impl FuzzyFunction {
    /// `map[i]` is the codomain index of the `i`-th domain element.
    pub fn new(domain: FiniteTopology, codomain: FiniteTopology, map: Vec<usize>) -> Result<Self> {
        let (x, y) = (domain.domain().len(), codomain.domain().len());
        if map.len() != x {
            return Err(Error::BadFunction(format!(
                "map assigns {} points but the domain has {x}",
                map.len()
            )));
        }
        if let Some(&bad) = map.iter().find(|&&j| j >= y) {
            return Err(Error::BadFunction(format!("image index {bad} outside a codomain of {y}")));
        }
        Ok(FuzzyFunction { domain, codomain, map })
    }

    /// Builds the map from `(domain label, codomain label)` pairs, which must
    /// cover every domain label exactly once.
    pub fn from_labels<'a, I>(domain: FiniteTopology, codomain: FiniteTopology, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (&'a str, &'a str)>,
    {
        let (x, y) = (domain.domain().clone(), codomain.domain().clone());
        let mut map: Vec<Option<usize>> = vec![None; x.len()];
        for (from, to) in pairs {
            let i = x
                .index_of(from)
                .ok_or_else(|| Error::BadFunction(format!("{from:?} is not in the domain")))?;
            let j = y
                .index_of(to)
                .ok_or_else(|| Error::BadFunction(format!("{to:?} is not in the codomain")))?;
            if map[i].replace(j).is_some() {
                return Err(Error::BadFunction(format!("{from:?} is mapped twice")));
            }
        }
        let map = map
            .into_iter()
            .zip(x.labels())
            .map(|(j, label)| j.ok_or_else(|| Error::BadFunction(format!("{label:?} has no image"))))
            .collect::<Result<_>>()?;
        Self::new(domain, codomain, map)
    }

    pub fn identity(space: FiniteTopology) -> Self {
        let n = space.domain().len();
        FuzzyFunction {
            codomain: space.clone(),
            domain: space,
            map: (0..n).collect(),
        }
    }

    pub fn domain(&self) -> &FiniteTopology {
        &self.domain
    }

    pub fn codomain(&self) -> &FiniteTopology {
        &self.codomain
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    fn x(&self) -> &Universe {
        self.domain.domain()
    }

    fn y(&self) -> &Universe {
        self.codomain.domain()
    }

    /// `f⁻¹(β)(x) = β(f(x))`.
    pub fn preimage(&self, beta: &FiniteFuzzySet) -> Result<FiniteFuzzySet> {
        require_universe(beta, self.y())?;
        let degrees = self.map.iter().map(|&j| beta.degrees()[j]).collect();
        FiniteFuzzySet::new(self.x().clone(), degrees)
    }

    /// `f(α)(y) = sup { α(x) : f(x) = y }`, and 0 on points with no preimage.
    pub fn image(&self, alpha: &FiniteFuzzySet) -> Result<FiniteFuzzySet> {
        require_universe(alpha, self.x())?;
        let mut degrees = vec![Degree::ZERO; self.y().len()];
        for (&j, &d) in self.map.iter().zip(alpha.degrees()) {
            degrees[j] = degrees[j].max(d);
        }
        FiniteFuzzySet::new(self.y().clone(), degrees)
    }

    /// Checks every class by exhaustive iteration over the member lists.
    pub fn classify(&self) -> Result<FunctionClassification> {
        let continuity = ClassVerdicts::check(&self.domain, self.codomain.iter(), |beta| self.preimage(beta))?;
        let openness = ClassVerdicts::check(&self.codomain, self.domain.iter(), |alpha| self.image(alpha))?;
        Ok(FunctionClassification { continuity, openness })
    }
}

fn require_universe(s: &FiniteFuzzySet, u: &Universe) -> Result<()> {
    if s.universe() == u {
        Ok(())
    } else {
        Err(Error::UniverseMismatch {
            left: s.universe().labels().join(", "),
            right: u.labels().join(", "),
        })
    }
}

/// A member whose transported set fails a class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub member: String,
    pub open: FiniteFuzzySet,
    pub transported: FiniteFuzzySet,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub holds: bool,
    /// First failing member in member order; present iff `holds` is false.
    pub witness: Option<Witness>,
}

impl Verdict {
    fn new() -> Self {
        Verdict {
            holds: true,
            witness: None,
        }
    }

    fn record(&mut self, ok: bool, witness: impl FnOnce() -> Witness) {
        if !ok && self.holds {
            self.holds = false;
            self.witness = Some(witness());
        }
    }
}

/// Verdicts for the four classes on one side. On the continuity side these
/// read continuous / semicontinuous / somewhat continuous / somewhat
/// semicontinuous; on the openness side open / semiopen / somewhat open /
/// somewhat semiopen.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassVerdicts {
    pub open: Verdict,
    pub semiopen: Verdict,
    pub somewhat_open: Verdict,
    pub somewhat_semiopen: Verdict,
}

impl ClassVerdicts {
    fn check<'a>(
        target: &FiniteTopology,
        sources: impl Iterator<Item = (&'a str, &'a FiniteFuzzySet)>,
        transport: impl Fn(&FiniteFuzzySet) -> Result<FiniteFuzzySet>,
    ) -> Result<Self> {
        let mut v = ClassVerdicts {
            open: Verdict::new(),
            semiopen: Verdict::new(),
            somewhat_open: Verdict::new(),
            somewhat_semiopen: Verdict::new(),
        };
        for (name, open) in sources {
            let moved = transport(open)?;
            let c = classify_set(target, &moved)?;
            let witness = || Witness {
                member: name.to_string(),
                open: open.clone(),
                transported: moved.clone(),
            };
            v.open.record(c.is_open, witness);
            v.semiopen.record(c.is_semiopen, witness);
            v.somewhat_open.record(c.is_somewhat_open, witness);
            v.somewhat_semiopen.record(c.is_somewhat_semiopen, witness);
        }
        Ok(v)
    }

    /// open ⟹ semiopen ⟹ somewhat open = somewhat semiopen.
    pub fn is_consistent(&self) -> bool {
        (!self.open.holds || self.semiopen.holds)
            && (!self.semiopen.holds || self.somewhat_open.holds)
            && self.somewhat_open.holds == self.somewhat_semiopen.holds
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FunctionClassification {
    /// Preimages of codomain opens, judged in the domain.
    pub continuity: ClassVerdicts,
    /// Images of domain opens, judged in the codomain.
    pub openness: ClassVerdicts,
}

impl FunctionClassification {
    pub fn fuzzy_continuous(&self) -> bool {
        self.continuity.open.holds
    }

    pub fn fuzzy_semicontinuous(&self) -> bool {
        self.continuity.semiopen.holds
    }

    pub fn somewhat_fuzzy_continuous(&self) -> bool {
        self.continuity.somewhat_open.holds
    }

    pub fn somewhat_fuzzy_semicontinuous(&self) -> bool {
        self.continuity.somewhat_semiopen.holds
    }

    pub fn fuzzy_open(&self) -> bool {
        self.openness.open.holds
    }

    pub fn fuzzy_semiopen_fn(&self) -> bool {
        self.openness.semiopen.holds
    }

    pub fn somewhat_fuzzy_open_fn(&self) -> bool {
        self.openness.somewhat_open.holds
    }

    pub fn somewhat_fuzzy_semiopen_fn(&self) -> bool {
        self.openness.somewhat_semiopen.holds
    }

    pub fn is_consistent(&self) -> bool {
        self.continuity.is_consistent() && self.openness.is_consistent()
    }
}
