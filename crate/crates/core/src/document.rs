//! Space and function description documents.
//!
//! A space document is a JSON object:
//!
//! ```json
//! {
//!   "kind": "finite",
//!   "universe": ["a", "b"],
//!   "sets": { "m1": { "a": "1/2", "b": "0" } },
//!   "topology": ["0", "m1", "1"],
//!   "topology_is": "complete"
//! }
//! ```
//!
//! `kind` is `"finite"` or `"pl"`; piecewise-linear bodies look like
//! `{"breakpoints": [["0", "0"], ["1/2", "0"], ["1", "1"]]}` and take no
//! `universe`. The names `"0"` and `"1"` always denote the constant sets and
//! cannot be redefined. `topology_is` is `"complete"` (validate the listed
//! family as-is) or `"subbasis"` (generate from it).

use indexmap::IndexMap;
use serde_json::{Map, Value};
use thiserror::Error;

use crate::degree::{decimal_hint, parse_rational, Degree};
use crate::error::Error as CoreError;
use crate::fuzzyfn::FuzzyFunction;
use crate::lattice::{FiniteFuzzySet, Universe};
use crate::plin::PlFuzzySet;
use crate::set::FuzzySet;
use crate::topology::Topology;

/// A document that failed to parse. `path` is a dotted JSON path to the
/// offending value.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DocumentError {
    #[error("malformed JSON at line {line}, column {column}: {message}")]
    Json { line: usize, column: usize, message: String },

    #[error("{path}: {message}")]
    Schema { path: String, message: String },

    #[error("{path}: unknown kind {kind:?} (expected \"finite\" or \"pl\")")]
    UnknownKind { path: String, kind: String },

    #[error("{path}: unknown topology_is {value:?} (expected \"complete\" or \"subbasis\")")]
    UnknownTopologyIs { path: String, value: String },

    #[error("{path}: unresolved name {name:?}")]
    UnresolvedName { path: String, name: String },

    #[error("{path}: {name:?} is reserved for the constant set")]
    ReservedName { path: String, name: String },

    #[error("{path}: floats forbidden; write {hint}")]
    FloatLiteral { path: String, hint: String },

    #[error("{path}: {message}")]
    BadRational { path: String, message: String },

    #[error("{path}: {value} is outside [0, 1]")]
    OutOfRange { path: String, value: String },

    #[error("{path}: {message}")]
    BadSet { path: String, message: String },
}

impl DocumentError {
    /// Stable machine-readable code.
    pub fn code(&self) -> &'static str {
        match self {
            DocumentError::Json { .. } => "malformed-json",
            DocumentError::Schema { .. } => "schema",
            DocumentError::UnknownKind { .. } => "unknown-kind",
            DocumentError::UnknownTopologyIs { .. } => "unknown-topology-is",
            DocumentError::UnresolvedName { .. } => "unresolved-name",
            DocumentError::ReservedName { .. } => "reserved-name",
            DocumentError::FloatLiteral { .. } => "float-literal",
            DocumentError::BadRational { .. } => "bad-rational",
            DocumentError::OutOfRange { .. } => "out-of-range",
            DocumentError::BadSet { .. } => "bad-set",
        }
    }
}

type DocResult<T> = std::result::Result<T, DocumentError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Finite,
    Pl,
}

impl Kind {
    fn as_str(&self) -> &'static str {
        match self {
            Kind::Finite => "finite",
            Kind::Pl => "pl",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TopologyIs {
    Complete,
    Subbasis,
}

impl TopologyIs {
    fn as_str(&self) -> &'static str {
        match self {
            TopologyIs::Complete => "complete",
            TopologyIs::Subbasis => "subbasis",
        }
    }
}

/// A set body of either backend.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SetBody {
    Finite(FiniteFuzzySet),
    Pl(PlFuzzySet),
}

impl SetBody {
    pub fn to_json(&self) -> Value {
        match self {
            SetBody::Finite(s) => serde_json::to_value(s),
            SetBody::Pl(s) => serde_json::to_value(s),
        }
        .expect("set bodies serialize to plain JSON")
    }
}

/// A parsed and checked space document.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpaceDocument {
    pub kind: Kind,
    pub universe: Option<Universe>,
    pub sets: IndexMap<String, SetBody>,
    pub topology: Vec<String>,
    pub topology_is: TopologyIs,
}

const RESERVED: [&str; 2] = ["0", "1"];

struct Path(String);

impl Path {
    fn root() -> Self {
        Path(String::new())
    }

    fn key(&self, k: &str) -> Path {
        if self.0.is_empty() {
            Path(k.to_string())
        } else {
            Path(format!("{}.{k}", self.0))
        }
    }

    fn index(&self, i: usize) -> Path {
        Path(format!("{}[{i}]", self.0))
    }

    fn display(&self) -> String {
        if self.0.is_empty() {
            "$".to_string()
        } else {
            self.0.clone()
        }
    }

    fn schema(&self, message: impl Into<String>) -> DocumentError {
        DocumentError::Schema {
            path: self.display(),
            message: message.into(),
        }
    }
}

fn parse_json(text: &str) -> DocResult<Value> {
    serde_json::from_str(text).map_err(|e| DocumentError::Json {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

fn as_object<'a>(v: &'a Value, path: &Path) -> DocResult<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| path.schema("expected an object"))
}

fn as_str<'a>(v: &'a Value, path: &Path) -> DocResult<&'a str> {
    v.as_str().ok_or_else(|| path.schema("expected a string"))
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str, path: &Path) -> DocResult<&'a Value> {
    obj.get(key)
        .ok_or_else(|| path.schema(format!("missing field {key:?}")))
}

fn reject_unknown_fields(obj: &Map<String, Value>, allowed: &[&str], path: &Path) -> DocResult<()> {
    match obj.keys().find(|k| !allowed.contains(&k.as_str())) {
        Some(k) => Err(path.key(k).schema("unknown field")),
        None => Ok(()),
    }
}

fn parse_degree(v: &Value, path: &Path) -> DocResult<Degree> {
    let text = match v {
        Value::String(s) => s.as_str(),
        Value::Number(n) => {
            let repr = n.to_string();
            return Err(match decimal_hint(&repr) {
                Some(hint) => DocumentError::FloatLiteral {
                    path: path.display(),
                    hint,
                },
                None => DocumentError::BadRational {
                    path: path.display(),
                    message: format!("write rationals as strings, e.g. \"{repr}\""),
                },
            });
        }
        _ => return Err(path.schema("expected a rational string")),
    };
    if let Some(hint) = decimal_hint(text) {
        return Err(DocumentError::FloatLiteral {
            path: path.display(),
            hint,
        });
    }
    let value = parse_rational(text).map_err(|e| DocumentError::BadRational {
        path: path.display(),
        message: e.to_string(),
    })?;
    Degree::from_ratio(value).map_err(|_| DocumentError::OutOfRange {
        path: path.display(),
        value: text.to_string(),
    })
}

fn parse_finite_body(v: &Value, universe: &Universe, path: &Path) -> DocResult<FiniteFuzzySet> {
    let obj = as_object(v, path)?;
    if let Some(k) = obj.keys().find(|k| universe.index_of(k).is_none()) {
        return Err(DocumentError::BadSet {
            path: path.key(k).display(),
            message: format!("{k:?} is not in the universe"),
        });
    }
    let degrees = universe
        .labels()
        .iter()
        .map(|label| match obj.get(label) {
            Some(d) => parse_degree(d, &path.key(label)),
            None => Err(DocumentError::BadSet {
                path: path.display(),
                message: format!("no degree for {label:?}"),
            }),
        })
        .collect::<DocResult<_>>()?;
    Ok(FiniteFuzzySet::new(universe.clone(), degrees).expect("one degree per label"))
}

fn parse_pl_body(v: &Value, path: &Path) -> DocResult<PlFuzzySet> {
    let obj = as_object(v, path)?;
    reject_unknown_fields(obj, &["breakpoints"], path)?;
    let bp_path = path.key("breakpoints");
    let list = field(obj, "breakpoints", path)?
        .as_array()
        .ok_or_else(|| bp_path.schema("expected an array of [x, y] pairs"))?;
    let points = list
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let p_path = bp_path.index(i);
            match p.as_array().map(Vec::as_slice) {
                Some([x, y]) => Ok((parse_degree(x, &p_path.index(0))?, parse_degree(y, &p_path.index(1))?)),
                _ => Err(p_path.schema("expected an [x, y] pair")),
            }
        })
        .collect::<DocResult<Vec<_>>>()?;
    PlFuzzySet::new(points).map_err(|e| DocumentError::BadSet {
        path: bp_path.display(),
        message: e.to_string(),
    })
}

impl SpaceDocument {
    pub fn parse(text: &str) -> DocResult<Self> {
        Self::from_value(&parse_json(text)?, &Path::root())
    }

    fn from_value(v: &Value, path: &Path) -> DocResult<Self> {
        let obj = as_object(v, path)?;
        reject_unknown_fields(obj, &["kind", "universe", "sets", "topology", "topology_is"], path)?;

        let kind_path = path.key("kind");
        let kind = match as_str(field(obj, "kind", path)?, &kind_path)? {
            "finite" => Kind::Finite,
            "pl" => Kind::Pl,
            other => {
                return Err(DocumentError::UnknownKind {
                    path: kind_path.display(),
                    kind: other.to_string(),
                })
            }
        };

        let universe_path = path.key("universe");
        let universe = match (kind, obj.get("universe")) {
            (Kind::Finite, Some(u)) => {
                let labels = u
                    .as_array()
                    .ok_or_else(|| universe_path.schema("expected an array of labels"))?
                    .iter()
                    .enumerate()
                    .map(|(i, l)| as_str(l, &universe_path.index(i)).map(str::to_string))
                    .collect::<DocResult<Vec<_>>>()?;
                Some(Universe::new(labels).map_err(|e| universe_path.schema(e.to_string()))?)
            }
            (Kind::Finite, None) => return Err(path.schema("finite spaces need a \"universe\"")),
            (Kind::Pl, Some(_)) => return Err(universe_path.schema("piecewise-linear spaces take no universe")),
            (Kind::Pl, None) => None,
        };

        let sets_path = path.key("sets");
        let mut sets = IndexMap::new();
        for (name, body) in as_object(field(obj, "sets", path)?, &sets_path)? {
            let set_path = sets_path.key(name);
            if RESERVED.contains(&name.as_str()) {
                return Err(DocumentError::ReservedName {
                    path: set_path.display(),
                    name: name.clone(),
                });
            }
            let body = match &universe {
                Some(u) => SetBody::Finite(parse_finite_body(body, u, &set_path)?),
                None => SetBody::Pl(parse_pl_body(body, &set_path)?),
            };
            sets.insert(name.clone(), body);
        }

        let top_path = path.key("topology");
        let topology = field(obj, "topology", path)?
            .as_array()
            .ok_or_else(|| top_path.schema("expected an array of set names"))?
            .iter()
            .enumerate()
            .map(|(i, n)| {
                let name = as_str(n, &top_path.index(i))?;
                if RESERVED.contains(&name) || sets.contains_key(name) {
                    Ok(name.to_string())
                } else {
                    Err(DocumentError::UnresolvedName {
                        path: top_path.index(i).display(),
                        name: name.to_string(),
                    })
                }
            })
            .collect::<DocResult<Vec<_>>>()?;

        let is_path = path.key("topology_is");
        let topology_is = match as_str(field(obj, "topology_is", path)?, &is_path)? {
            "complete" => TopologyIs::Complete,
            "subbasis" => TopologyIs::Subbasis,
            other => {
                return Err(DocumentError::UnknownTopologyIs {
                    path: is_path.display(),
                    value: other.to_string(),
                })
            }
        };

        Ok(SpaceDocument {
            kind,
            universe,
            sets,
            topology,
            topology_is,
        })
    }

    pub fn to_value(&self) -> Value {
        let mut obj = Map::new();
        obj.insert("kind".into(), self.kind.as_str().into());
        if let Some(u) = &self.universe {
            obj.insert("universe".into(), u.labels().into());
        }
        let sets: Map<String, Value> = self.sets.iter().map(|(n, b)| (n.clone(), b.to_json())).collect();
        obj.insert("sets".into(), sets.into());
        obj.insert("topology".into(), self.topology.clone().into());
        obj.insert("topology_is".into(), self.topology_is.as_str().into());
        obj.into()
    }

    /// Pretty-printed JSON that [`SpaceDocument::parse`] reads back unchanged.
    pub fn print(&self) -> String {
        serde_json::to_string_pretty(&self.to_value()).expect("documents serialize")
    }

    /// Builds the topology the document describes.
    pub fn build(&self, cap: usize) -> Result<Space, CoreError> {
        match &self.universe {
            Some(u) => {
                let sets = self
                    .sets
                    .iter()
                    .map(|(n, b)| match b {
                        SetBody::Finite(s) => (n.clone(), s.clone()),
                        SetBody::Pl(_) => unreachable!("finite documents hold finite bodies"),
                    })
                    .collect();
                NamedSpace::build(u, sets, &self.topology, self.topology_is, cap).map(Space::Finite)
            }
            None => {
                let sets = self
                    .sets
                    .iter()
                    .map(|(n, b)| match b {
                        SetBody::Pl(s) => (n.clone(), s.clone()),
                        SetBody::Finite(_) => unreachable!("pl documents hold pl bodies"),
                    })
                    .collect();
                NamedSpace::build(&crate::set::UnitInterval, sets, &self.topology, self.topology_is, cap)
                    .map(Space::Pl)
            }
        }
    }
}

/// A topology together with the named sets of its document.
#[derive(Debug, Clone)]
pub struct NamedSpace<S: FuzzySet> {
    pub topology: Topology<S>,
    pub sets: IndexMap<String, S>,
}

impl<S: FuzzySet> NamedSpace<S> {
    fn build(
        domain: &S::Domain,
        sets: IndexMap<String, S>,
        names: &[String],
        how: TopologyIs,
        cap: usize,
    ) -> Result<Self, CoreError> {
        let resolve = |name: &str| match name {
            "0" => S::bottom(domain),
            "1" => S::top(domain),
            other => sets[other].clone(),
        };
        let family: Vec<(String, S)> = names.iter().map(|n| (n.clone(), resolve(n))).collect();
        let topology = match how {
            TopologyIs::Complete => Topology::validate(family)?,
            TopologyIs::Subbasis => Topology::generate(domain, family, cap)?,
        };
        Ok(NamedSpace { topology, sets })
    }

    /// A named document set, a topology member, or one of the constants.
    pub fn lookup(&self, name: &str) -> Option<S> {
        match name {
            "0" => Some(self.topology.bottom()),
            "1" => Some(self.topology.top()),
            other => self.sets.get(other).cloned().or_else(|| self.topology.get(other).cloned()),
        }
    }
}

#[derive(Debug, Clone)]
pub enum Space {
    Finite(NamedSpace<FiniteFuzzySet>),
    Pl(NamedSpace<PlFuzzySet>),
}

/// A parsed function document: two finite spaces and a point map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FunctionDocument {
    pub domain: SpaceDocument,
    pub codomain: SpaceDocument,
    pub map: IndexMap<String, String>,
}

impl FunctionDocument {
    pub fn parse(text: &str) -> DocResult<Self> {
        let v = parse_json(text)?;
        let root = Path::root();
        let obj = as_object(&v, &root)?;
        reject_unknown_fields(obj, &["domain", "codomain", "map"], &root)?;
        let side = |key: &str| -> DocResult<SpaceDocument> {
            let p = root.key(key);
            let doc = SpaceDocument::from_value(field(obj, key, &root)?, &p)?;
            if doc.kind != Kind::Finite {
                return Err(p.key("kind").schema("functions are classified over finite spaces only"));
            }
            Ok(doc)
        };
        let domain = side("domain")?;
        let codomain = side("codomain")?;
        let map_path = root.key("map");
        let map = as_object(field(obj, "map", &root)?, &map_path)?
            .iter()
            .map(|(k, v)| Ok((k.clone(), as_str(v, &map_path.key(k))?.to_string())))
            .collect::<DocResult<IndexMap<_, _>>>()?;
        Ok(FunctionDocument { domain, codomain, map })
    }

    pub fn to_value(&self) -> Value {
        let map: Map<String, Value> = self.map.iter().map(|(k, v)| (k.clone(), v.clone().into())).collect();
        serde_json::json!({
            "domain": self.domain.to_value(),
            "codomain": self.codomain.to_value(),
            "map": map,
        })
    }

    pub fn print(&self) -> String {
        serde_json::to_string_pretty(&self.to_value()).expect("documents serialize")
    }

    pub fn build(&self, cap: usize) -> Result<FuzzyFunction, CoreError> {
        let finite = |doc: &SpaceDocument| match doc.build(cap)? {
            Space::Finite(s) => Ok(s.topology),
            Space::Pl(_) => unreachable!("function documents hold finite spaces"),
        };
        FuzzyFunction::from_labels(
            finite(&self.domain)?,
            finite(&self.codomain)?,
            self.map.iter().map(|(k, v)| (k.as_str(), v.as_str())),
        )
    }
}
