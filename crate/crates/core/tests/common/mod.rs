#![allow(dead_code)]

use std::path::PathBuf;

use ftop::document::{FunctionDocument, NamedSpace, Space, SpaceDocument};
use ftop::fuzzyfn::FiniteTopology;
use ftop::oracle::{self, GridSpec, SpaceBounds};
use ftop::topology::DEFAULT_CAP;
use ftop::{Degree, FiniteFuzzySet, FuzzyFunction, PlFuzzySet, Topology, Universe};
use proptest::prelude::*;

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

pub fn d(text: &str) -> Degree {
    text.parse().unwrap()
}

pub fn pl(points: &[(&str, &str)]) -> PlFuzzySet {
    PlFuzzySet::new(points.iter().map(|(x, y)| (d(x), d(y))).collect()).unwrap()
}

pub fn ab() -> Universe {
    Universe::new(["a", "b"]).unwrap()
}

pub fn set2(a: &str, b: &str) -> FiniteFuzzySet {
    FiniteFuzzySet::new(ab(), vec![d(a), d(b)]).unwrap()
}

/// The two-point space generated by `{a: 1/2, b: 0}` and `{a: 0, b: 1/3}`.
pub fn t_fin() -> FiniteTopology {
    Topology::generate(
        &ab(),
        vec![("m1".into(), set2("1/2", "0")), ("m2".into(), set2("0", "1/3"))],
        DEFAULT_CAP,
    )
    .unwrap()
}

pub struct Example1 {
    pub mu: PlFuzzySet,
    pub lambda: PlFuzzySet,
    pub sigma: PlFuzzySet,
    pub alpha: PlFuzzySet,
    pub beta: PlFuzzySet,
}

pub fn example1() -> Example1 {
    Example1 {
        mu: pl(&[("0", "0"), ("1/2", "0"), ("1", "1")]),
        lambda: pl(&[("0", "1"), ("1/4", "1"), ("1/2", "0"), ("1", "0")]),
        sigma: pl(&[("0", "1"), ("1/4", "1"), ("1/2", "0"), ("1", "1")]),
        alpha: pl(&[("0", "0"), ("1/4", "0"), ("1", "1")]),
        beta: pl(&[("0", "0"), ("1/2", "1"), ("1", "1")]),
    }
}

pub fn example1_topology() -> Topology<PlFuzzySet> {
    let e = example1();
    Topology::validate(vec![
        ("0".into(), PlFuzzySet::zero()),
        ("mu".into(), e.mu),
        ("lambda".into(), e.lambda),
        ("sigma".into(), e.sigma),
        ("1".into(), PlFuzzySet::one()),
    ])
    .unwrap()
}

pub fn load_pl_space(name: &str) -> NamedSpace<PlFuzzySet> {
    let text = std::fs::read_to_string(fixture(name)).unwrap();
    match SpaceDocument::parse(&text).unwrap().build(DEFAULT_CAP).unwrap() {
        Space::Pl(s) => s,
        Space::Finite(_) => panic!("{name} is not a PL space"),
    }
}

pub fn load_function(name: &str) -> FuzzyFunction {
    let text = std::fs::read_to_string(fixture(name)).unwrap();
    FunctionDocument::parse(&text).unwrap().build(DEFAULT_CAP).unwrap()
}

/// Degrees `p/q` with `q <= 12`.
pub fn degree() -> impl Strategy<Value = Degree> {
    (1i64..=12)
        .prop_flat_map(|q| (0..=q, Just(q)))
        .prop_map(|(p, q)| Degree::new(p, q).unwrap())
}

pub fn finite_on(n: usize) -> impl Strategy<Value = FiniteFuzzySet> {
    let u = Universe::numbered(n).unwrap();
    prop::collection::vec(degree(), n).prop_map(move |ds| FiniteFuzzySet::new(u.clone(), ds).unwrap())
}

pub fn finite_triple() -> impl Strategy<Value = (FiniteFuzzySet, FiniteFuzzySet, FiniteFuzzySet)> {
    (1usize..=5).prop_flat_map(|n| (finite_on(n), finite_on(n), finite_on(n)))
}

/// PL sets with up to five interior breakpoints on denominators up to 12.
pub fn pl_set() -> impl Strategy<Value = PlFuzzySet> {
    let interior = prop::collection::btree_set(
        (2i64..=12).prop_flat_map(|q| (1..q, Just(q))).prop_map(|(p, q)| Degree::new(p, q).unwrap()),
        0..=5,
    );
    interior
        .prop_flat_map(|xs| {
            let n = xs.len() + 2;
            (Just(xs), prop::collection::vec(degree(), n))
        })
        .prop_map(|(xs, ys)| {
            let xs: Vec<Degree> = std::iter::once(Degree::ZERO).chain(xs).chain([Degree::ONE]).collect();
            PlFuzzySet::new(xs.into_iter().zip(ys).collect()).unwrap()
        })
}

pub fn pl_triple() -> impl Strategy<Value = (PlFuzzySet, PlFuzzySet, PlFuzzySet)> {
    (pl_set(), pl_set(), pl_set())
}

pub fn bounds(n: usize, k: u32, m: usize) -> SpaceBounds {
    SpaceBounds {
        max_universe: n,
        max_denominator: k,
        max_subbasis: m,
        vary: true,
    }
}

pub fn base(bounds: &SpaceBounds) -> GridSpec {
    GridSpec::new(bounds.max_universe, bounds.max_denominator)
}

/// A seeded random space on a grid of size at most 4 x 4 with up to 4
/// subbasis sets, together with an arbitrary (off-grid) set on its universe.
pub fn space_and_set() -> impl Strategy<Value = (FiniteTopology, FiniteFuzzySet)> {
    any::<u64>()
        .prop_map(|seed| {
            let b = bounds(4, 4, 4);
            oracle::random_space(&b, &base(&b), seed).unwrap().topology
        })
        .prop_flat_map(|t| {
            let n = t.domain().len();
            (Just(t), finite_on(n))
        })
}

pub fn space_and_pair() -> impl Strategy<Value = (FiniteTopology, FiniteFuzzySet, FiniteFuzzySet)> {
    space_and_set().prop_flat_map(|(t, s)| {
        let n = t.domain().len();
        (Just(t), Just(s), finite_on(n))
    })
}

pub fn random_function(seed: u64) -> FuzzyFunction {
    let b = bounds(4, 4, 3);
    oracle::random_function(&b, &base(&b), seed).unwrap()
}

/// A random function with an arbitrary domain set and codomain set.
pub fn function_with_sets() -> impl Strategy<Value = (FuzzyFunction, FiniteFuzzySet, FiniteFuzzySet)> {
    any::<u64>().prop_map(random_function).prop_flat_map(|f| {
        let (x, y) = (f.domain().domain().len(), f.codomain().domain().len());
        (Just(f), finite_on(x), finite_on(y))
    })
}

/// A random finite space document: sets named `s1..sm` and a subbasis list.
pub fn finite_document() -> impl Strategy<Value = SpaceDocument> {
    (1usize..=4)
        .prop_flat_map(|n| (prop::collection::vec(finite_on(n), 1..=4), any::<bool>()))
        .prop_map(|(sets, complete)| {
            let names: Vec<String> = (1..=sets.len()).map(|i| format!("s{i}")).collect();
            let doc = serde_json::json!({
                "kind": "finite",
                "universe": sets[0].universe().labels(),
                "sets": names.iter().zip(&sets).map(|(k, s)| (k.clone(), serde_json::to_value(s).unwrap())).collect::<serde_json::Map<_, _>>(),
                "topology": names,
                "topology_is": if complete { "complete" } else { "subbasis" },
            });
            SpaceDocument::parse(&doc.to_string()).unwrap()
        })
}

pub fn pl_document() -> impl Strategy<Value = SpaceDocument> {
    prop::collection::vec(pl_set(), 1..=4).prop_map(|sets| {
        let names: Vec<String> = (1..=sets.len()).map(|i| format!("p{i}")).collect();
        let doc = serde_json::json!({
            "kind": "pl",
            "sets": names.iter().zip(&sets).map(|(k, s)| (k.clone(), serde_json::to_value(s).unwrap())).collect::<serde_json::Map<_, _>>(),
            "topology": names,
            "topology_is": "subbasis",
        });
        SpaceDocument::parse(&doc.to_string()).unwrap()
    })
}
