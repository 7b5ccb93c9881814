//! Brute-force ground truth over finite grids of degrees.
//!
//! Fuzzy sets form a continuum, so exhaustive checks run over the sublattice
//! of sets whose degrees lie on `{0, 1/k, ..., 1}`. When every degree of the
//! topology is on the grid, interiors and closures of grid sets stay on the
//! grid (min, max and `1 - v` never leave it), so property checks there are exact.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::degree::Degree;
use crate::error::{Error, Result};
use crate::fuzzyfn::{FiniteTopology, FunctionClassification, FuzzyFunction};
use crate::lattice::{FiniteFuzzySet, Universe};
use crate::semiclass::{classify_set, is_semiopen, semi_closure, semi_interior};
use crate::topology::{Topology, DEFAULT_CAP};

pub const DEFAULT_BUDGET: u64 = 1 << 20;

/// Shape of a degree grid and the limits that guard enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GridSpec {
    pub universe_size: usize,
    /// Degrees are drawn from `{0, 1/k, ..., k/k}`.
    pub denominator: u32,
    /// Upper bound on `(k + 1)^universe_size`.
    pub budget: u64,
    /// Member cap passed to topology generation.
    pub cap: usize,
}

impl GridSpec {
    pub fn new(universe_size: usize, denominator: u32) -> Self {
        GridSpec {
            universe_size,
            denominator,
            budget: DEFAULT_BUDGET,
            cap: DEFAULT_CAP,
        }
    }

    pub fn with_budget(self, budget: u64) -> Self {
        GridSpec { budget, ..self }
    }

    pub fn with_cap(self, cap: usize) -> Self {
        GridSpec { cap, ..self }
    }

    /// Same denominator and limits, sized to `universe`.
    pub fn for_universe(self, universe: &Universe) -> Self {
        GridSpec {
            universe_size: universe.len(),
            ..self
        }
    }

    pub fn grid_size(&self) -> Result<u64> {
        let too_big = || Error::BudgetExceeded {
            size: format!("{}^{}", self.denominator as u64 + 1, self.universe_size),
            budget: self.budget,
        };
        let exp = u32::try_from(self.universe_size).map_err(|_| too_big())?;
        let size = (self.denominator as u64 + 1).checked_pow(exp).ok_or_else(too_big)?;
        if size > self.budget {
            return Err(Error::BudgetExceeded {
                size: size.to_string(),
                budget: self.budget,
            });
        }
        Ok(size)
    }

    fn degrees(&self) -> Vec<Degree> {
        let k = self.denominator as i64;
        (0..=k)
            .map(|i| Degree::new(i, k).expect("i/k lies in [0,1]"))
            .collect()
    }

    fn on_grid(&self, d: Degree) -> bool {
        (self.denominator as i64) % d.denom() == 0
    }

    /// Enumerates every grid set over `universe`, in lexicographic order with
    /// the first element most significant.
    pub fn enumerate_over(&self, universe: &Universe) -> Result<GridSets> {
        if self.denominator == 0 {
            return Err(Error::BadUniverse("grid denominator must be positive".into()));
        }
        let spec = self.for_universe(universe);
        spec.grid_size()?;
        Ok(GridSets {
            universe: universe.clone(),
            levels: spec.degrees(),
            digits: Some(vec![0; universe.len()]),
        })
    }

    /// Fails with the denominator that would place every given degree on the grid.
    pub fn require_on_grid<'a>(&self, sets: impl IntoIterator<Item = &'a FiniteFuzzySet>) -> Result<()> {
        let mut required = self.denominator as u64;
        let mut first_off: Option<Degree> = None;
        for s in sets {
            for &d in s.degrees() {
                if !self.on_grid(d) {
                    first_off.get_or_insert(d);
                    required = required.lcm(&(d.denom() as u64));
                }
            }
        }
        match first_off {
            None => Ok(()),
            Some(d) => Err(Error::OffGrid {
                degree: d.to_string(),
                denominator: self.denominator,
                required,
            }),
        }
    }

    fn check_topology(&self, t: &FiniteTopology) -> Result<()> {
        if t.domain().len() != self.universe_size {
            return Err(Error::GridUniverse {
                expected: self.universe_size,
                got: t.domain().len(),
            });
        }
        self.require_on_grid(t.members())
    }
}

/// Iterator over grid sets; see [`GridSpec::enumerate_over`].
pub struct GridSets {
    universe: Universe,
    levels: Vec<Degree>,
    digits: Option<Vec<usize>>,
}

impl Iterator for GridSets {
    type Item = FiniteFuzzySet;

    fn next(&mut self) -> Option<FiniteFuzzySet> {
        let digits = self.digits.as_mut()?;
        let set = FiniteFuzzySet::new(
            self.universe.clone(),
            digits.iter().map(|&i| self.levels[i]).collect(),
        )
        .expect("one digit per universe element");
        let top = self.levels.len() - 1;
        match digits.iter().rposition(|&i| i < top) {
            Some(pos) => {
                digits[pos] += 1;
                digits[pos + 1..].iter_mut().for_each(|i| *i = 0);
            }
            None => self.digits = None,
        }
        Some(set)
    }
}

/// Every grid set over `x1..xn` for `n = spec.universe_size`.
pub fn enumerate_grid_sets(spec: &GridSpec) -> Result<GridSets> {
    spec.enumerate_over(&Universe::numbered(spec.universe_size)?)
}

/// The semi-interior straight from its definition: the join of every grid
/// set below `s` that is semiopen.
pub fn brute_semi_interior(t: &FiniteTopology, s: &FiniteFuzzySet, spec: &GridSpec) -> Result<FiniteFuzzySet> {
    let spec = spec.for_universe(t.domain());
    spec.require_on_grid(t.members().iter().chain([s]))?;
    let mut acc = FiniteFuzzySet::zero(t.domain());
    for g in spec.enumerate_over(t.domain())? {
        if g.leq(s)? && is_semiopen(t, &g)? {
            acc = acc.join(&g)?;
        }
    }
    Ok(acc)
}

/// All semiopen grid sets of a topology, for repeated brute-force queries.
pub struct SemiopenCatalog {
    universe: Universe,
    semiopen: Vec<FiniteFuzzySet>,
}

impl SemiopenCatalog {
    pub fn new(t: &FiniteTopology, spec: &GridSpec) -> Result<Self> {
        let spec = spec.for_universe(t.domain());
        spec.require_on_grid(t.members())?;
        let mut semiopen = Vec::new();
        for g in spec.enumerate_over(t.domain())? {
            if is_semiopen(t, &g)? {
                semiopen.push(g);
            }
        }
        Ok(SemiopenCatalog {
            universe: t.domain().clone(),
            semiopen,
        })
    }

    pub fn semi_interior(&self, s: &FiniteFuzzySet) -> Result<FiniteFuzzySet> {
        let mut acc = FiniteFuzzySet::zero(&self.universe);
        for g in &self.semiopen {
            if g.leq(s)? {
                acc = acc.join(g)?;
            }
        }
        Ok(acc)
    }

    pub fn len(&self) -> usize {
        self.semiopen.len()
    }

    pub fn is_empty(&self) -> bool {
        self.semiopen.is_empty()
    }
}

fn random_grid_set(rng: &mut impl Rng, universe: &Universe, k: u32) -> FiniteFuzzySet {
    let degrees = (0..universe.len())
        .map(|_| Degree::new(rng.gen_range(0..=k) as i64, k as i64).expect("on grid"))
        .collect();
    FiniteFuzzySet::new(universe.clone(), degrees).expect("arity matches")
}

/// The topology generated by `subbasis_size` grid sets drawn from `seed`,
/// over `x1..xn`. Same inputs, same topology.
pub fn random_topology(spec: &GridSpec, seed: u64, subbasis_size: usize) -> Result<FiniteTopology> {
    let universe = Universe::numbered(spec.universe_size)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let subbasis = (1..=subbasis_size)
        .map(|i| (format!("s{i}"), random_grid_set(&mut rng, &universe, spec.denominator)))
        .collect();
    Topology::generate(&universe, subbasis, spec.cap)
}

/// Mixes `seed` with a tag so that independent draws per seed do not share a stream.
pub fn derive_seed(seed: u64, tag: u64) -> u64 {
    let mut z = seed ^ tag.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Size bounds for randomly drawn spaces.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SpaceBounds {
    pub max_universe: usize,
    pub max_denominator: u32,
    pub max_subbasis: usize,
    /// Draw universe size and denominator per seed instead of using the maxima.
    pub vary: bool,
}

/// A seeded random space: grid spec, subbasis size and the generated topology.
#[derive(Debug, Clone)]
pub struct RandomSpace {
    pub seed: u64,
    pub spec: GridSpec,
    pub subbasis_size: usize,
    pub topology: FiniteTopology,
}

pub fn random_space(bounds: &SpaceBounds, base: &GridSpec, seed: u64) -> Result<RandomSpace> {
    let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, 1));
    let (n, k) = if bounds.vary {
        (
            rng.gen_range(1..=bounds.max_universe),
            rng.gen_range(1..=bounds.max_denominator),
        )
    } else {
        (bounds.max_universe, bounds.max_denominator)
    };
    let subbasis_size = rng.gen_range(0..=bounds.max_subbasis);
    let spec = GridSpec {
        universe_size: n,
        denominator: k,
        ..*base
    };
    let topology = random_topology(&spec, seed, subbasis_size)?;
    Ok(RandomSpace {
        seed,
        spec,
        subbasis_size,
        topology,
    })
}

/// A random crisp map between two independently drawn random spaces.
pub fn random_function(bounds: &SpaceBounds, base: &GridSpec, seed: u64) -> Result<FuzzyFunction> {
    let domain = random_space(bounds, base, derive_seed(seed, 2))?.topology;
    let codomain = random_space(bounds, base, derive_seed(seed, 3))?.topology;
    let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, 4));
    let y = codomain.domain().len();
    let map = (0..domain.domain().len()).map(|_| rng.gen_range(0..y)).collect();
    FuzzyFunction::new(domain, codomain, map)
}

/// The properties [`check_space`] evaluates on every grid set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Property {
    /// `Int(s) <= s <= Cl(s)`.
    InteriorClosureBracket,
    /// `Int(s) <= Int_s(s)`.
    InteriorBelowSemiInterior,
    /// `Cl_s(s) <= Cl(s)`.
    SemiClosureBelowClosure,
    /// For non-zero `s`: semiopen iff `Cl(s) = Cl(Int(s))`.
    SemiopenIffClosuresAgree,
    /// For non-zero semiopen `s`: `Int(s) != 0`.
    SemiopenHasInterior,
    /// Somewhat open iff somewhat semiopen.
    SomewhatOpenIffSomewhatSemiopen,
    /// `Int_s(s)` is semiopen and below `s`.
    SemiInteriorIsSemiopen,
    /// `Cl_s(s) = 1 - Int_s(1 - s)`.
    SemiClosureDuality,
    /// Semiclosed iff `Int(Cl(s)) <= s`.
    SemiclosedCharacterization,
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text = serde_json::to_value(self).expect("unit variant");
        f.write_str(text.as_str().unwrap_or_default())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropertyViolation {
    pub property: Property,
    pub set: FiniteFuzzySet,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpaceCheck {
    pub sets_checked: u64,
    pub violation: Option<PropertyViolation>,
}

impl SpaceCheck {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }
}

/// First property that fails on `s`, if any.
pub fn check_set(t: &FiniteTopology, s: &FiniteFuzzySet) -> Result<Option<Property>> {
    let int = t.interior(s)?;
    let cl = t.closure(s)?;
    let cl_int = t.closure(&int)?;
    let sint = semi_interior(t, s)?;
    let scl = semi_closure(t, s)?;
    let semiopen = s.leq(&cl_int)?;
    let nonzero = !s.is_zero();
    let checks = [
        (Property::InteriorClosureBracket, int.leq(s)? && s.leq(&cl)?),
        (Property::InteriorBelowSemiInterior, int.leq(&sint)?),
        (Property::SemiClosureBelowClosure, scl.leq(&cl)?),
        (
            Property::SemiopenIffClosuresAgree,
            !nonzero || semiopen == (cl == cl_int),
        ),
        (
            Property::SemiopenHasInterior,
            !(nonzero && semiopen) || !int.is_zero(),
        ),
        (
            Property::SomewhatOpenIffSomewhatSemiopen,
            (s.is_zero() || !int.is_zero()) == (s.is_zero() || !sint.is_zero()),
        ),
        (
            Property::SemiInteriorIsSemiopen,
            is_semiopen(t, &sint)? && sint.leq(s)?,
        ),
        (
            Property::SemiClosureDuality,
            scl == semi_interior(t, &s.complement())?.complement(),
        ),
        (
            Property::SemiclosedCharacterization,
            is_semiopen(t, &s.complement())? == t.interior(&cl)?.leq(s)?,
        ),
    ];
    Ok(checks.into_iter().find(|(_, ok)| !ok).map(|(p, _)| p))
}

/// Evaluates every property on every grid set; stops at the first violation.
pub fn check_space(t: &FiniteTopology, spec: &GridSpec) -> Result<SpaceCheck> {
    spec.check_topology(t)?;
    let mut sets_checked = 0;
    for s in spec.enumerate_over(t.domain())? {
        sets_checked += 1;
        if let Some(property) = check_set(t, &s)? {
            return Ok(SpaceCheck {
                sets_checked,
                violation: Some(PropertyViolation { property, set: s }),
            });
        }
    }
    Ok(SpaceCheck {
        sets_checked,
        violation: None,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Disagreement {
    pub set: FiniteFuzzySet,
    pub closed_form: FiniteFuzzySet,
    pub brute_force: FiniteFuzzySet,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AgreementCheck {
    pub compared: u64,
    /// Sets whose closed-form semi-interior fell off the grid.
    pub skipped: u64,
    pub disagreement: Option<Disagreement>,
}

/// Compares the closed-form semi-interior with the brute-force one on every
/// grid set whose closed-form value lies on the grid.
pub fn closed_form_agreement(t: &FiniteTopology, spec: &GridSpec) -> Result<AgreementCheck> {
    spec.check_topology(t)?;
    let catalog = SemiopenCatalog::new(t, spec)?;
    let (mut compared, mut skipped) = (0, 0);
    for s in spec.enumerate_over(t.domain())? {
        let closed_form = semi_interior(t, &s)?;
        if spec.require_on_grid([&closed_form]).is_err() {
            skipped += 1;
            continue;
        }
        compared += 1;
        let brute_force = catalog.semi_interior(&s)?;
        if brute_force != closed_form {
            return Ok(AgreementCheck {
                compared,
                skipped,
                disagreement: Some(Disagreement {
                    set: s,
                    closed_form,
                    brute_force,
                }),
            });
        }
    }
    Ok(AgreementCheck {
        compared,
        skipped,
        disagreement: None,
    })
}

/// Every topology generated by a subbasis of at most `max_subbasis` distinct
/// grid sets, subbases taken in lexicographic order of grid indices.
pub fn exhaustive_topologies(spec: &GridSpec, max_subbasis: usize) -> Result<Vec<FiniteTopology>> {
    let grid: Vec<_> = enumerate_grid_sets(spec)?.collect();
    let universe = Universe::numbered(spec.universe_size)?;
    let mut out = Vec::new();
    let mut chosen: Vec<usize> = Vec::new();
    fn walk(
        grid: &[FiniteFuzzySet],
        universe: &Universe,
        spec: &GridSpec,
        max: usize,
        start: usize,
        chosen: &mut Vec<usize>,
        out: &mut Vec<FiniteTopology>,
    ) -> Result<()> {
        let subbasis = chosen
            .iter()
            .enumerate()
            .map(|(n, &i)| (format!("s{}", n + 1), grid[i].clone()))
            .collect();
        out.push(Topology::generate(universe, subbasis, spec.cap)?);
        if chosen.len() == max {
            return Ok(());
        }
        for i in start..grid.len() {
            chosen.push(i);
            walk(grid, universe, spec, max, i + 1, chosen, out)?;
            chosen.pop();
        }
        Ok(())
    }
    walk(&grid, &universe, spec, max_subbasis, 0, &mut chosen, &mut out)?;
    Ok(out)
}

/// A set-level class from the open/semiopen hierarchy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SetClass {
    Open,
    Closed,
    Semiopen,
    Semiclosed,
    SomewhatOpen,
    SomewhatSemiopen,
}

impl SetClass {
    pub const ALL: [SetClass; 6] = [
        SetClass::Open,
        SetClass::Closed,
        SetClass::Semiopen,
        SetClass::Semiclosed,
        SetClass::SomewhatOpen,
        SetClass::SomewhatSemiopen,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            SetClass::Open => "open",
            SetClass::Closed => "closed",
            SetClass::Semiopen => "semiopen",
            SetClass::Semiclosed => "semiclosed",
            SetClass::SomewhatOpen => "somewhat-open",
            SetClass::SomewhatSemiopen => "somewhat-semiopen",
        }
    }

    pub fn holds<S>(&self, c: &crate::semiclass::SetClassification<S>) -> bool {
        match self {
            SetClass::Open => c.is_open,
            SetClass::Closed => c.is_closed,
            SetClass::Semiopen => c.is_semiopen,
            SetClass::Semiclosed => c.is_semiclosed,
            SetClass::SomewhatOpen => c.is_somewhat_open,
            SetClass::SomewhatSemiopen => c.is_somewhat_semiopen,
        }
    }
}

impl FromStr for SetClass {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        SetClass::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| format!("unknown class {s:?}"))
    }
}

/// A set that is in `holds` but not in `fails`: a counterexample to the
/// implication `holds ⟹ fails`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchTarget {
    pub holds: SetClass,
    pub fails: SetClass,
}

impl SearchTarget {
    pub const SEMIOPEN_NOT_OPEN: SearchTarget = SearchTarget {
        holds: SetClass::Semiopen,
        fails: SetClass::Open,
    };
    pub const SOMEWHAT_OPEN_NOT_SEMIOPEN: SearchTarget = SearchTarget {
        holds: SetClass::SomewhatOpen,
        fails: SetClass::Semiopen,
    };
}

impl fmt::Display for SearchTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-not-{}", self.holds.name(), self.fails.name())
    }
}

impl Serialize for SearchTarget {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Parses `<class>-not-<class>`, e.g. `semiopen-not-open`.
impl FromStr for SearchTarget {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let (holds, fails) = s
            .split_once("-not-")
            .ok_or_else(|| format!("target {s:?} must look like <class>-not-<class>"))?;
        Ok(SearchTarget {
            holds: holds.parse()?,
            fails: fails.parse()?,
        })
    }
}

/// First grid set, in enumeration order, in `target.holds` but not
/// `target.fails`. `None` only means no such set exists on this grid.
pub fn find_witness(t: &FiniteTopology, target: SearchTarget, spec: &GridSpec) -> Result<Option<FiniteFuzzySet>> {
    spec.check_topology(t)?;
    for s in spec.enumerate_over(t.domain())? {
        let c = classify_set(t, &s)?;
        if target.holds.holds(&c) && !target.fails.holds(&c) {
            return Ok(Some(s));
        }
    }
    Ok(None)
}

/// A function-level class; the continuity and openness sides each carry the
/// four set classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FunctionClass {
    Continuous,
    Semicontinuous,
    SomewhatContinuous,
    SomewhatSemicontinuous,
    Open,
    Semiopen,
    SomewhatOpen,
    SomewhatSemiopen,
}

impl FunctionClass {
    pub fn holds(&self, c: &FunctionClassification) -> bool {
        match self {
            FunctionClass::Continuous => c.fuzzy_continuous(),
            FunctionClass::Semicontinuous => c.fuzzy_semicontinuous(),
            FunctionClass::SomewhatContinuous => c.somewhat_fuzzy_continuous(),
            FunctionClass::SomewhatSemicontinuous => c.somewhat_fuzzy_semicontinuous(),
            FunctionClass::Open => c.fuzzy_open(),
            FunctionClass::Semiopen => c.fuzzy_semiopen_fn(),
            FunctionClass::SomewhatOpen => c.somewhat_fuzzy_open_fn(),
            FunctionClass::SomewhatSemiopen => c.somewhat_fuzzy_semiopen_fn(),
        }
    }
}

/// Counts of instances separating adjacent classes of the function hierarchy.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Separations {
    pub semicontinuous_not_continuous: u64,
    pub somewhat_continuous_not_semicontinuous: u64,
    pub semiopen_not_open: u64,
    pub somewhat_open_not_semiopen: u64,
}

impl Separations {
    fn record(&mut self, c: &FunctionClassification) {
        let bump = |field: &mut u64, hold: FunctionClass, fail: FunctionClass| {
            if hold.holds(c) && !fail.holds(c) {
                *field += 1;
            }
        };
        bump(
            &mut self.semicontinuous_not_continuous,
            FunctionClass::Semicontinuous,
            FunctionClass::Continuous,
        );
        bump(
            &mut self.somewhat_continuous_not_semicontinuous,
            FunctionClass::SomewhatContinuous,
            FunctionClass::Semicontinuous,
        );
        bump(
            &mut self.semiopen_not_open,
            FunctionClass::Semiopen,
            FunctionClass::Open,
        );
        bump(
            &mut self.somewhat_open_not_semiopen,
            FunctionClass::SomewhatOpen,
            FunctionClass::Semiopen,
        );
    }

    fn merge(self, o: Separations) -> Separations {
        Separations {
            semicontinuous_not_continuous: self.semicontinuous_not_continuous + o.semicontinuous_not_continuous,
            somewhat_continuous_not_semicontinuous: self.somewhat_continuous_not_semicontinuous
                + o.somewhat_continuous_not_semicontinuous,
            semiopen_not_open: self.semiopen_not_open + o.semiopen_not_open,
            somewhat_open_not_semiopen: self.somewhat_open_not_semiopen + o.somewhat_open_not_semiopen,
        }
    }
}

/// What a verification campaign runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CampaignConfig {
    pub seeds: u64,
    pub first_seed: u64,
    pub bounds: SpaceBounds,
    pub budget: u64,
    pub cap: usize,
    pub agreement: bool,
    pub functions: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CampaignFailure {
    Property { seed: u64, violation: PropertyViolation },
    SemiInterior { seed: u64, disagreement: Disagreement },
    Hierarchy { seed: u64, detail: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CampaignReport {
    pub spaces_checked: u64,
    pub sets_checked: u64,
    pub semi_interiors_compared: u64,
    pub functions_checked: u64,
    pub separations: Separations,
    pub failures: Vec<CampaignFailure>,
}

impl CampaignReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn empty() -> Self {
        CampaignReport {
            spaces_checked: 0,
            sets_checked: 0,
            semi_interiors_compared: 0,
            functions_checked: 0,
            separations: Separations::default(),
            failures: Vec::new(),
        }
    }

    fn merge(mut self, o: CampaignReport) -> Self {
        self.spaces_checked += o.spaces_checked;
        self.sets_checked += o.sets_checked;
        self.semi_interiors_compared += o.semi_interiors_compared;
        self.functions_checked += o.functions_checked;
        self.separations = self.separations.merge(o.separations);
        self.failures.extend(o.failures);
        self
    }
}

fn run_seed(config: &CampaignConfig, seed: u64) -> Result<CampaignReport> {
    let base = GridSpec {
        universe_size: config.bounds.max_universe,
        denominator: config.bounds.max_denominator,
        budget: config.budget,
        cap: config.cap,
    };
    let mut report = CampaignReport::empty();
    let space = random_space(&config.bounds, &base, seed)?;
    let check = check_space(&space.topology, &space.spec)?;
    report.spaces_checked = 1;
    report.sets_checked = check.sets_checked;
    if let Some(violation) = check.violation {
        report.failures.push(CampaignFailure::Property { seed, violation });
    }
    if config.agreement {
        let agreement = closed_form_agreement(&space.topology, &space.spec)?;
        report.semi_interiors_compared = agreement.compared;
        if let Some(disagreement) = agreement.disagreement {
            report.failures.push(CampaignFailure::SemiInterior { seed, disagreement });
        }
    }
    if config.functions {
        let f = random_function(&config.bounds, &base, seed)?;
        let c = f.classify()?;
        report.functions_checked = 1;
        report.separations.record(&c);
        if !c.is_consistent() {
            report.failures.push(CampaignFailure::Hierarchy {
                seed,
                detail: format!("{c:?}"),
            });
        }
    }
    Ok(report)
}

/// Runs the campaign across seeds in parallel; the merged report is
/// independent of scheduling.
pub fn run_campaign(config: &CampaignConfig) -> Result<CampaignReport> {
    let seeds: Vec<u64> = (0..config.seeds).map(|i| config.first_seed + i).collect();
    let reports: Vec<CampaignReport> = seeds
        .par_iter()
        .map(|&seed| run_seed(config, seed))
        .collect::<Result<_>>()?;
    Ok(reports.into_iter().fold(CampaignReport::empty(), CampaignReport::merge))
}

/// First seed in `seeds` whose random function is in `holds` but not `fails`.
pub fn find_function_witness(
    bounds: &SpaceBounds,
    base: &GridSpec,
    seeds: std::ops::Range<u64>,
    holds: FunctionClass,
    fails: FunctionClass,
) -> Result<Option<(u64, FuzzyFunction)>> {
    for seed in seeds {
        let f = random_function(bounds, base, seed)?;
        let c = f.classify()?;
        if holds.holds(&c) && !fails.holds(&c) {
            return Ok(Some((seed, f)));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> Universe {
        Universe::new(["a", "b"]).unwrap()
    }

    fn set(a: &str, b: &str) -> FiniteFuzzySet {
        FiniteFuzzySet::new(ab(), vec![a.parse().unwrap(), b.parse().unwrap()]).unwrap()
    }

    fn t_fin() -> FiniteTopology {
        Topology::generate(
            &ab(),
            vec![("m1".into(), set("1/2", "0")), ("m2".into(), set("0", "1/3"))],
            DEFAULT_CAP,
        )
        .unwrap()
    }

    #[test]
    fn grid_counts() {
        assert_eq!(enumerate_grid_sets(&GridSpec::new(1, 1)).unwrap().count(), 2);
        assert_eq!(enumerate_grid_sets(&GridSpec::new(2, 2)).unwrap().count(), 9);
        assert_eq!(enumerate_grid_sets(&GridSpec::new(3, 4)).unwrap().count(), 125);
    }

    #[test]
    fn grid_is_lexicographic_and_distinct() {
        let sets: Vec<_> = enumerate_grid_sets(&GridSpec::new(2, 2)).unwrap().collect();
        let keys: Vec<Vec<Degree>> = sets.iter().map(|s| s.degrees().to_vec()).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(keys, sorted);
        assert_eq!(sets[1].degrees(), ["0".parse().unwrap(), "1/2".parse().unwrap()]);
    }

    #[test]
    fn budget_is_enforced() {
        let spec = GridSpec::new(4, 4).with_budget(624);
        assert!(matches!(enumerate_grid_sets(&spec), Err(Error::BudgetExceeded { .. })));
        assert!(enumerate_grid_sets(&GridSpec::new(4, 4).with_budget(625)).is_ok());
        assert!(matches!(
            GridSpec::new(64, 4).grid_size(),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn off_grid_reports_required_denominator() {
        let err = brute_semi_interior(&t_fin(), &set("3/4", "1/4"), &GridSpec::new(2, 4)).unwrap_err();
        assert_eq!(
            err,
            Error::OffGrid {
                degree: "1/3".into(),
                denominator: 4,
                required: 12
            }
        );
    }

    #[test]
    fn brute_semi_interior_examples() {
        let t = t_fin();
        let spec = GridSpec::new(2, 12);
        assert_eq!(brute_semi_interior(&t, &t.bottom(), &spec).unwrap(), t.bottom());
        assert_eq!(
            brute_semi_interior(&t, &set("3/4", "1/4"), &spec).unwrap(),
            set("1/2", "1/4")
        );
        for m in t.members() {
            assert_eq!(brute_semi_interior(&t, m, &spec).unwrap(), *m);
        }
    }

    #[test]
    fn random_topology_contract() {
        let spec = GridSpec::new(3, 3);
        let t0 = random_topology(&spec, 7, 0).unwrap();
        assert_eq!(t0.len(), 2);
        let a = random_topology(&spec, 42, 3).unwrap();
        let b = random_topology(&spec, 42, 3).unwrap();
        assert_eq!(a, b);
        let pairs = a.iter().map(|(n, s)| (n.to_string(), s.clone())).collect();
        assert!(Topology::validate(pairs).is_ok());
    }

    #[test]
    fn check_space_examples() {
        let u = Universe::numbered(3).unwrap();
        let indiscrete = Topology::<FiniteFuzzySet>::generate(&u, vec![], DEFAULT_CAP).unwrap();
        assert!(check_space(&indiscrete, &GridSpec::new(3, 3)).unwrap().passed());
        let r = check_space(&t_fin(), &GridSpec::new(2, 6)).unwrap();
        assert!(r.passed());
        assert_eq!(r.sets_checked, 49);
        assert!(matches!(
            check_space(&t_fin(), &GridSpec::new(3, 6)),
            Err(Error::GridUniverse { .. })
        ));
    }

    #[test]
    fn find_witness_examples() {
        let t = t_fin();
        // T's degree 1/3 is off the 1/2 and 1/4 grids
        assert!(matches!(
            find_witness(&t, SearchTarget::SEMIOPEN_NOT_OPEN, &GridSpec::new(2, 2)),
            Err(Error::OffGrid { required: 6, .. })
        ));
        assert!(matches!(
            find_witness(&t, SearchTarget::SOMEWHAT_OPEN_NOT_SEMIOPEN, &GridSpec::new(2, 4)),
            Err(Error::OffGrid { required: 12, .. })
        ));
        let spec = GridSpec::new(2, 6);
        assert_eq!(
            find_witness(&t, SearchTarget::SEMIOPEN_NOT_OPEN, &spec).unwrap(),
            Some(set("0", "1/2"))
        );
        assert_eq!(
            find_witness(&t, SearchTarget::SOMEWHAT_OPEN_NOT_SEMIOPEN, &spec).unwrap(),
            Some(set("0", "5/6"))
        );
        let spec12 = GridSpec::new(2, 12);
        assert_eq!(
            find_witness(&t, SearchTarget::SOMEWHAT_OPEN_NOT_SEMIOPEN, &spec12).unwrap(),
            Some(set("0", "3/4"))
        );

        let u = Universe::numbered(2).unwrap();
        let indiscrete = Topology::<FiniteFuzzySet>::generate(&u, vec![], DEFAULT_CAP).unwrap();
        for k in 1..=4 {
            assert_eq!(
                find_witness(&indiscrete, SearchTarget::SEMIOPEN_NOT_OPEN, &GridSpec::new(2, k)).unwrap(),
                None
            );
        }
    }

    #[test]
    fn search_target_parsing() {
        assert_eq!("semiopen-not-open".parse::<SearchTarget>().unwrap(), SearchTarget::SEMIOPEN_NOT_OPEN);
        assert_eq!(
            "somewhat-open-not-semiopen".parse::<SearchTarget>().unwrap(),
            SearchTarget::SOMEWHAT_OPEN_NOT_SEMIOPEN
        );
        assert_eq!(SearchTarget::SOMEWHAT_OPEN_NOT_SEMIOPEN.to_string(), "somewhat-open-not-semiopen");
        assert!("semiopen".parse::<SearchTarget>().is_err());
        assert!("fuzzy-not-open".parse::<SearchTarget>().is_err());
    }

    #[test]
    fn exhaustive_family_size() {
        // 1 + 9 + 36 subbases of distinct grid sets
        let family = exhaustive_topologies(&GridSpec::new(2, 2), 2).unwrap();
        assert_eq!(family.len(), 46);
    }

    #[test]
    fn derive_seed_separates_tags() {
        assert_ne!(derive_seed(5, 1), derive_seed(5, 2));
        assert_eq!(derive_seed(5, 1), derive_seed(5, 1));
    }
}
