//! The `ftop` command line.
//!
//! Exit codes: 0 success or all checks passed, 1 negative verdict or property
//! violation, 2 input error, 3 resource limit exceeded.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::document::{DocumentError, FunctionDocument, NamedSpace, Space, SpaceDocument};
use crate::error::Error as CoreError;
use crate::fuzzyfn::{ClassVerdicts, Verdict};
use crate::oracle::{self, CampaignConfig, GridSpec, SearchTarget, SpaceBounds, DEFAULT_BUDGET};
use crate::semiclass::{classify_set, SetClassification};
use crate::set::FuzzySet;
use crate::topology::DEFAULT_CAP;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

pub const CAP_ENV: &str = "FTOP_CAP";

#[derive(Debug, Parser)]
#[command(name = "ftop", version, about = "Exact fuzzy-topology classifier and verifier")]
struct Cli {
    /// Report format on stdout.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    /// Include elapsed wall time in the report.
    #[arg(long, global = true)]
    timing: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check that a space document describes a fuzzy topology.
    Validate {
        space: PathBuf,
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Classify a set or a function.
    Classify {
        #[command(subcommand)]
        what: ClassifyCommand,
    },
    /// Run seeded verification campaigns over random finite spaces.
    Verify {
        #[arg(long, default_value_t = 100)]
        seeds: u64,
        #[arg(long, default_value_t = 0)]
        first_seed: u64,
        #[arg(long, default_value_t = 3)]
        universe_size: usize,
        #[arg(long, default_value_t = 3)]
        grid: u32,
        #[arg(long, default_value_t = 4)]
        subbasis_max: usize,
        /// Draw universe size and grid per seed, up to the given values.
        #[arg(long)]
        vary: bool,
        #[arg(long)]
        cap: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Search the grid for a set in one class but not another.
    Search {
        /// `<class>-not-<class>`, e.g. `semiopen-not-open`.
        #[arg(long)]
        target: SearchTarget,
        #[arg(long)]
        space: PathBuf,
        #[arg(long)]
        grid: u32,
        #[arg(long)]
        cap: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
}

#[derive(Debug, Subcommand)]
enum ClassifyCommand {
    /// Classify a named set of a space document.
    Set {
        name: String,
        #[arg(long)]
        space: PathBuf,
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Classify the function of a function document.
    Fn {
        #[arg(long = "fn")]
        function: PathBuf,
        #[arg(long)]
        cap: Option<usize>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    InputError,
    ResourceError,
}

impl Status {
    pub fn exit_code(&self) -> i32 {
        match self {
            Status::Pass => EXIT_OK,
            Status::Fail => EXIT_NEGATIVE,
            Status::InputError => EXIT_INPUT,
            Status::ResourceError => EXIT_RESOURCE,
        }
    }
}

/// The machine-readable result of one invocation. The text format is a
/// rendering of this structure's JSON form.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: Vec<String>,
    pub status: Status,
    pub exit_code: i32,
    pub result: Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn to_text(&self) -> String {
        let value = serde_json::to_value(self).expect("reports serialize");
        let mut out = String::new();
        render(&value, 0, &mut out);
        out
    }
}

fn render(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, item) in map {
                if is_inline(item) {
                    out.push_str(&format!("{pad}{k}: {}\n", inline(item)));
                } else {
                    out.push_str(&format!("{pad}{k}:\n"));
                    render(item, indent + 1, out);
                }
            }
        }
        Value::Array(items) => {
            for item in items {
                if is_inline(item) {
                    out.push_str(&format!("{pad}- {}\n", inline(item)));
                } else {
                    out.push_str(&format!("{pad}-\n"));
                    render(item, indent + 1, out);
                }
            }
        }
        scalar => out.push_str(&format!("{pad}{}\n", inline(scalar))),
    }
}

fn is_inline(v: &Value) -> bool {
    match v {
        Value::Object(m) => m.is_empty() || m.values().all(|x| !x.is_object() && !x.is_array()),
        Value::Array(a) => a.iter().all(|x| !x.is_object() && !matches!(x, Value::Array(inner) if !inner.iter().all(|y| !y.is_object() && !y.is_array()))),
        _ => true,
    }
}

fn inline(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "none".into(),
        Value::Array(a) => format!("[{}]", a.iter().map(inline).collect::<Vec<_>>().join(", ")),
        Value::Object(m) => format!(
            "{{{}}}",
            m.iter()
                .map(|(k, x)| format!("{k}: {}", inline(x)))
                .collect::<Vec<_>>()
                .join(", ")
        ),
        other => other.to_string(),
    }
}

/// A failed invocation: status plus a coded message.
struct Failure {
    status: Status,
    code: &'static str,
    message: String,
}

impl From<DocumentError> for Failure {
    fn from(e: DocumentError) -> Self {
        Failure {
            status: Status::InputError,
            code: e.code(),
            message: e.to_string(),
        }
    }
}

impl From<CoreError> for Failure {
    fn from(e: CoreError) -> Self {
        let (status, code) = match &e {
            CoreError::CapExceeded { .. } => (Status::ResourceError, "cap-exceeded"),
            CoreError::BudgetExceeded { .. } => (Status::ResourceError, "budget-exceeded"),
            CoreError::Overflow => (Status::ResourceError, "overflow"),
            CoreError::NotATopology(_) => (Status::InputError, "not-a-topology"),
            CoreError::OffGrid { .. } => (Status::InputError, "off-grid"),
            _ => (Status::InputError, "invalid-input"),
        };
        Failure {
            status,
            code,
            message: e.to_string(),
        }
    }
}

fn input_failure(code: &'static str, message: String) -> Failure {
    Failure {
        status: Status::InputError,
        code,
        message,
    }
}

type Outcome = std::result::Result<(Status, Value), Failure>;

fn resolve_cap(flag: Option<usize>) -> std::result::Result<usize, Failure> {
    if let Some(cap) = flag {
        return Ok(cap);
    }
    match std::env::var(CAP_ENV) {
        Ok(text) => text
            .trim()
            .parse()
            .map_err(|_| input_failure("bad-env", format!("{CAP_ENV}={text:?} is not a member count"))),
        Err(_) => Ok(DEFAULT_CAP),
    }
}

fn read(path: &Path) -> std::result::Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| input_failure("io", format!("{}: {e}", path.display())))
}

fn load_space(path: &Path, cap: usize) -> std::result::Result<Space, Failure> {
    let doc = SpaceDocument::parse(&read(path)?)?;
    Ok(doc.build(cap)?)
}

fn cmd_validate(path: &Path, cap: usize) -> Outcome {
    let doc = SpaceDocument::parse(&read(path)?)?;
    let kind = if doc.universe.is_some() { "finite" } else { "pl" };
    match doc.build(cap) {
        Ok(space) => {
            let members = match &space {
                Space::Finite(s) => s.topology.names().to_vec(),
                Space::Pl(s) => s.topology.names().to_vec(),
            };
            Ok((
                Status::Pass,
                json!({ "kind": kind, "valid": true, "members": members }),
            ))
        }
        Err(CoreError::NotATopology(violation)) => Ok((
            Status::Fail,
            json!({
                "kind": kind,
                "valid": false,
                "violation": violation,
                "message": violation.to_string(),
            }),
        )),
        Err(e) => Err(e.into()),
    }
}

fn set_json<S: serde::Serialize>(s: &S) -> Value {
    serde_json::to_value(s).expect("sets serialize")
}

fn classification_json<S: FuzzySet + serde::Serialize>(c: &SetClassification<S>) -> Value {
    json!({
        "open": c.is_open,
        "closed": c.is_closed,
        "semiopen": c.is_semiopen,
        "semiclosed": c.is_semiclosed,
        "somewhat_open": c.is_somewhat_open,
        "somewhat_semiopen": c.is_somewhat_semiopen,
        "evidence": {
            "interior": set_json(&c.interior),
            "closure": set_json(&c.closure),
            "semi_interior": set_json(&c.semi_interior),
            "semi_closure": set_json(&c.semi_closure),
        },
    })
}

fn classify_named<S: FuzzySet + serde::Serialize>(space: &NamedSpace<S>, name: &str) -> Outcome {
    let s = space
        .lookup(name)
        .ok_or_else(|| input_failure("unresolved-name", format!("no set named {name:?}")))?;
    let c = classify_set(&space.topology, &s)?;
    let mut result = json!({ "set": name, "body": set_json(&s) });
    if let (Value::Object(r), Value::Object(extra)) = (&mut result, classification_json(&c)) {
        r.extend(extra);
    }
    Ok((Status::Pass, result))
}

fn cmd_classify_set(name: &str, path: &Path, cap: usize) -> Outcome {
    match load_space(path, cap)? {
        Space::Finite(s) => classify_named(&s, name),
        Space::Pl(s) => classify_named(&s, name),
    }
}

fn verdict_json(v: &Verdict) -> Value {
    match &v.witness {
        None => json!({ "holds": v.holds }),
        Some(w) => json!({
            "holds": v.holds,
            "witness": {
                "member": w.member,
                "open": set_json(&w.open),
                "transported": set_json(&w.transported),
            },
        }),
    }
}

fn side_json(v: &ClassVerdicts, names: [&str; 4]) -> Value {
    let mut map = serde_json::Map::new();
    for (name, verdict) in names.into_iter().zip([&v.open, &v.semiopen, &v.somewhat_open, &v.somewhat_semiopen]) {
        map.insert(name.to_string(), verdict_json(verdict));
    }
    Value::Object(map)
}

fn cmd_classify_fn(path: &Path, cap: usize) -> Outcome {
    let doc = FunctionDocument::parse(&read(path)?)?;
    let f = doc.build(cap)?;
    let c = f.classify()?;
    Ok((
        Status::Pass,
        json!({
            "continuity": side_json(
                &c.continuity,
                ["fuzzy_continuous", "fuzzy_semicontinuous", "somewhat_fuzzy_continuous", "somewhat_fuzzy_semicontinuous"],
            ),
            "openness": side_json(
                &c.openness,
                ["fuzzy_open", "fuzzy_semiopen", "somewhat_fuzzy_open", "somewhat_fuzzy_semiopen"],
            ),
        }),
    ))
}

fn cmd_verify(config: CampaignConfig) -> Outcome {
    let report = oracle::run_campaign(&config)?;
    let status = if report.passed() { Status::Pass } else { Status::Fail };
    Ok((
        status,
        json!({ "config": config, "passed": report.passed(), "campaign": report }),
    ))
}

fn cmd_search(target: SearchTarget, path: &Path, grid: u32, cap: usize, budget: u64) -> Outcome {
    let space = match load_space(path, cap)? {
        Space::Finite(s) => s,
        Space::Pl(_) => {
            return Err(input_failure(
                "unsupported-kind",
                "grid search needs a finite space".into(),
            ))
        }
    };
    let spec = GridSpec::new(space.topology.domain().len(), grid)
        .with_budget(budget)
        .with_cap(cap);
    let witness = oracle::find_witness(&space.topology, target, &spec)?;
    let mut result = json!({ "target": target, "grid": grid, "found": witness.is_some() });
    if let (Some(w), Value::Object(r)) = (&witness, &mut result) {
        r.insert("witness".into(), set_json(w));
        r.insert(
            "classification".into(),
            classification_json(&classify_set(&space.topology, w)?),
        );
    }
    let status = if witness.is_some() { Status::Pass } else { Status::Fail };
    Ok((status, result))
}

fn dispatch(command: Command) -> Outcome {
    match command {
        Command::Validate { space, cap } => cmd_validate(&space, resolve_cap(cap)?),
        Command::Classify { what } => match what {
            ClassifyCommand::Set { name, space, cap } => cmd_classify_set(&name, &space, resolve_cap(cap)?),
            ClassifyCommand::Fn { function, cap } => cmd_classify_fn(&function, resolve_cap(cap)?),
        },
        Command::Verify {
            seeds,
            first_seed,
            universe_size,
            grid,
            subbasis_max,
            vary,
            cap,
            budget,
        } => {
            if universe_size == 0 || grid == 0 {
                return Err(input_failure(
                    "bad-flag",
                    "--universe-size and --grid must be positive".into(),
                ));
            }
            cmd_verify(CampaignConfig {
                seeds,
                first_seed,
                bounds: SpaceBounds {
                    max_universe: universe_size,
                    max_denominator: grid,
                    max_subbasis: subbasis_max,
                    vary,
                },
                budget,
                cap: resolve_cap(cap)?,
                agreement: true,
                functions: true,
            })
        }
        Command::Search {
            target,
            space,
            grid,
            cap,
            budget,
        } => {
            if grid == 0 {
                return Err(input_failure("bad-flag", "--grid must be positive".into()));
            }
            cmd_search(target, &space, grid, resolve_cap(cap)?, budget)
        }
    }
}

/// Runs one invocation; `args` includes the program name. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let command: Vec<String> = args.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect();
    let started = Instant::now();
    let (status, result) = match dispatch(cli.command) {
        Ok(ok) => ok,
        Err(f) => {
            let _ = writeln!(err, "error[{}]: {}", f.code, f.message);
            (f.status, json!({ "code": f.code, "message": f.message }))
        }
    };
    let report = Report {
        command,
        status,
        exit_code: status.exit_code(),
        result,
        elapsed_ms: cli.timing.then(|| started.elapsed().as_millis() as u64),
    };
    let rendered = match cli.format {
        Format::Json => report.to_json() + "\n",
        Format::Text => report.to_text(),
    };
    let _ = out.write_all(rendered.as_bytes());
    report.exit_code
}
