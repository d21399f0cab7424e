//! Flat TOML run configuration.
//!
//! Every command has a fixed key schema. Parsing rejects unknown keys, wrong
//! types and missing required keys, always naming the key. The resolved
//! config (defaults applied, keys sorted) is the canonical form: it is what
//! gets serialized, hashed and echoed into CSV provenance.

use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use sha2::{Digest, Sha256};

use crate::error::{CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Command {
    Bound,
    Spectrum,
    Respond,
    Validate,
    Sweep,
}

impl Command {
    pub const ALL: [Command; 5] = [
        Command::Bound,
        Command::Spectrum,
        Command::Respond,
        Command::Validate,
        Command::Sweep,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::Bound => "bound",
            Command::Spectrum => "spectrum",
            Command::Respond => "respond",
            Command::Validate => "validate",
            Command::Sweep => "sweep",
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Command {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self> {
        Command::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| CliError::InvalidValue {
                key: "command".into(),
                reason: format!("unknown command `{s}`"),
            })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Float,
    Int,
    Text(&'static [&'static str]),
    Path,
}

impl Kind {
    fn describe(self) -> &'static str {
        match self {
            Kind::Float => "number",
            Kind::Int => "integer",
            Kind::Text(_) => "string",
            Kind::Path => "path string",
        }
    }
}

/// A resolved scalar parameter.
#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Float(f64),
    Int(i64),
    Text(String),
}

impl Value {
    fn to_toml(&self) -> toml::Value {
        match self {
            Value::Float(v) => toml::Value::Float(*v),
            Value::Int(v) => toml::Value::Integer(*v),
            Value::Text(s) => toml::Value::String(s.clone()),
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Float(v) => write!(f, "{v:?}"),
            Value::Int(v) => write!(f, "{v}"),
            Value::Text(s) => f.write_str(s),
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub enum Fallback {
    Float(f64),
    Int(i64),
    Text(&'static str),
    /// Must be given.
    Required,
    /// May be left out; `note` says what happens then.
    Optional(&'static str),
}

#[derive(Debug, Clone, Copy)]
pub struct KeySpec {
    pub name: &'static str,
    pub kind: Kind,
    pub default: Fallback,
    pub help: &'static str,
}

const fn key(name: &'static str, kind: Kind, default: Fallback, help: &'static str) -> KeySpec {
    KeySpec {
        name,
        kind,
        default,
        help,
    }
}

const TRAJECTORIES: &[&str] = &["static", "tabulated"];
const MODES: &[&str] = &["bare", "leading", "symmetrized"];
const MEASURES: &[&str] = &["flat", "metric"];
const TARGETS: &[&str] = &["bound", "spectrum", "respond", "validate"];

const BOUND_KEYS: &[KeySpec] = &[
    key(
        "a",
        Kind::Float,
        Fallback::Float(0.0),
        "proper acceleration along the first frame axis",
    ),
    key(
        "alpha",
        Kind::Float,
        Fallback::Float(0.0),
        "constant curvature, R_0i0j = -alpha delta_ij",
    ),
    key(
        "trajectory",
        Kind::Text(TRAJECTORIES),
        Fallback::Text("static"),
        "static (from a, alpha) or tabulated (from frames)",
    ),
    key(
        "frames",
        Kind::Path,
        Fallback::Optional("required when trajectory = \"tabulated\""),
        "CSV of tau,a1,a2,a3,r11,r12,r13,r22,r23,r33 relative to the config file",
    ),
    key(
        "tau_min",
        Kind::Float,
        Fallback::Optional("0.0 for static; not allowed for tabulated"),
        "first proper time sample",
    ),
    key(
        "tau_max",
        Kind::Float,
        Fallback::Optional("1.0 for static; not allowed for tabulated"),
        "last proper time sample",
    ),
    key(
        "tau_samples",
        Kind::Int,
        Fallback::Optional("11 for static; tabulated uses the frame times"),
        "number of evenly spaced proper time samples; the infimum uses these points only",
    ),
];

const SPECTRUM_KEYS: &[KeySpec] = &[
    key("m", Kind::Float, Fallback::Float(1.0), "particle mass"),
    key("omega", Kind::Float, Fallback::Float(1.0), "trap frequency"),
    key(
        "alpha",
        Kind::Float,
        Fallback::Float(0.0),
        "constant curvature",
    ),
    key(
        "a",
        Kind::Float,
        Fallback::Float(0.0),
        "acceleration along the line",
    ),
    key(
        "mode",
        Kind::Text(MODES),
        Fallback::Text("leading"),
        "how the geometry enters the Hamiltonian",
    ),
    key(
        "measure",
        Kind::Text(MEASURES),
        Fallback::Text("flat"),
        "flat, or the induced metric volume along the line",
    ),
    key("x_min", Kind::Float, Fallback::Float(-10.0), "left wall"),
    key("x_max", Kind::Float, Fallback::Float(10.0), "right wall"),
    key(
        "n_points",
        Kind::Int,
        Fallback::Int(2001),
        "grid points, walls included",
    ),
    key(
        "levels",
        Kind::Int,
        Fallback::Int(5),
        "number of lowest levels reported",
    ),
    key(
        "stencil_order",
        Kind::Int,
        Fallback::Int(6),
        "finite difference order: 2, 4, 6 or 8",
    ),
];

const RESPOND_KEYS: &[KeySpec] = &[
    key(
        "omega",
        Kind::Float,
        Fallback::Float(1.0),
        "detector gap; rows are written for +omega and -omega",
    ),
    key(
        "a",
        Kind::Float,
        Fallback::Float(0.0),
        "proper acceleration; 0 is the inertial vacuum",
    ),
    key(
        "alpha",
        Kind::Float,
        Fallback::Float(0.0),
        "curvature seen by the internal oscillator (noise term only)",
    ),
    key(
        "switching_width",
        Kind::Float,
        Fallback::Float(1.0),
        "Gaussian switching width T",
    ),
    key(
        "tau0",
        Kind::Float,
        Fallback::Float(0.0),
        "switching centre",
    ),
    key(
        "coupling",
        Kind::Float,
        Fallback::Float(1.0),
        "coupling constant lambda",
    ),
    key(
        "epsilon",
        Kind::Float,
        Fallback::Optional("1e-3 * min(T, 1/a)"),
        "i-epsilon regulator",
    ),
    key(
        "osc_m",
        Kind::Float,
        Fallback::Optional("no internal oscillator, p_rel = 0"),
        "internal oscillator mass",
    ),
    key(
        "osc_omega",
        Kind::Float,
        Fallback::Float(1.0),
        "internal oscillator frequency",
    ),
    key(
        "transition_from",
        Kind::Int,
        Fallback::Int(0),
        "initial oscillator level for the +omega row",
    ),
    key(
        "transition_to",
        Kind::Int,
        Fallback::Int(1),
        "final oscillator level for the +omega row",
    ),
    key(
        "noise_threshold",
        Kind::Float,
        Fallback::Float(0.1),
        "probe is valid when p_rel/p_field is below this",
    ),
];

const VALIDATE_KEYS: &[KeySpec] = &[
    key("m", Kind::Float, Fallback::Float(1.0), "oscillator mass"),
    key("omega", Kind::Float, Fallback::Float(1.0), "trap frequency"),
    key(
        "alpha",
        Kind::Float,
        Fallback::Float(0.0),
        "constant curvature",
    ),
    key(
        "a",
        Kind::Float,
        Fallback::Float(0.0),
        "acceleration along the first frame axis",
    ),
    key(
        "level",
        Kind::Int,
        Fallback::Int(0),
        "oscillator level whose localization is checked",
    ),
    key(
        "energy_threshold",
        Kind::Float,
        Fallback::Float(0.01),
        "largest allowed <H_NR>/m",
    ),
    key(
        "hydrogen_n",
        Kind::Int,
        Fallback::Int(1),
        "principal quantum number for the hydrogen check",
    ),
    key(
        "a_si",
        Kind::Float,
        Fallback::Float(0.0),
        "acceleration in m/s^2 for the hydrogen check",
    ),
    key(
        "lambda_r_si",
        Kind::Float,
        Fallback::Float(0.0),
        "lambda_R in 1/m^2 for the hydrogen check",
    ),
];

const SWEEP_KEYS: &[KeySpec] = &[key(
    "target",
    Kind::Text(TARGETS),
    Fallback::Required,
    "command run at every point; its keys are accepted too, and any given as an array is swept",
)];

pub fn schema(command: Command) -> &'static [KeySpec] {
    match command {
        Command::Bound => BOUND_KEYS,
        Command::Spectrum => SPECTRUM_KEYS,
        Command::Respond => RESPOND_KEYS,
        Command::Validate => VALIDATE_KEYS,
        Command::Sweep => SWEEP_KEYS,
    }
}

/// Key reference appended to `--help`.
pub fn help(command: Command) -> String {
    let mut out = String::from("Config keys (flat TOML; `command` is optional but must match):\n");
    for k in schema(command) {
        let default = match k.default {
            Fallback::Float(v) => format!("{v:?}"),
            Fallback::Int(v) => v.to_string(),
            Fallback::Text(s) => format!("\"{s}\""),
            Fallback::Required => "required".into(),
            Fallback::Optional(note) => format!("optional: {note}"),
        };
        out.push_str(&format!(
            "  {:<16} {:<8} [{default}]\n      {}\n",
            k.name,
            k.kind.describe(),
            k.help
        ));
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    /// Resolved scalar parameters; optional keys that were left out are absent.
    pub params: BTreeMap<String, Value>,
    /// Swept parameters, in sorted key order. Empty unless `command` is sweep.
    pub sweep: BTreeMap<String, Vec<Value>>,
    /// Where the CSV goes. Not part of the canonical form.
    pub output_path: Option<PathBuf>,
    /// Directory against which relative paths in the config resolve.
    pub base_dir: Option<PathBuf>,
}

impl RunConfig {
    /// The command run at each point; itself unless this is a sweep.
    pub fn target(&self) -> Command {
        match (self.command, self.params.get("target")) {
            (Command::Sweep, Some(Value::Text(t))) => t.parse().unwrap_or(Command::Sweep),
            (c, _) => c,
        }
    }

    /// Canonical TOML: sorted keys, defaults applied, `command` included.
    pub fn canonical(&self) -> String {
        let mut table = toml::Table::new();
        table.insert(
            "command".into(),
            toml::Value::String(self.command.name().into()),
        );
        for (k, v) in &self.params {
            table.insert(k.clone(), v.to_toml());
        }
        for (k, vs) in &self.sweep {
            table.insert(
                k.clone(),
                toml::Value::Array(vs.iter().map(Value::to_toml).collect()),
            );
        }
        // toml::Table is a BTreeMap, so keys come out sorted.
        toml::to_string(&table).expect("a flat table of scalars and arrays always serializes")
    }

    /// Hex SHA-256 of the canonical form.
    pub fn hash(&self) -> String {
        Sha256::digest(self.canonical().as_bytes())
            .iter()
            .map(|b| format!("{b:02x}"))
            .collect()
    }

    pub fn float(&self, key: &str) -> f64 {
        match self.params.get(key) {
            Some(Value::Float(v)) => *v,
            Some(Value::Int(v)) => *v as f64,
            _ => f64::NAN,
        }
    }

    pub fn opt_float(&self, key: &str) -> Option<f64> {
        self.params.get(key).map(|_| self.float(key))
    }

    pub fn int(&self, key: &str) -> i64 {
        match self.params.get(key) {
            Some(Value::Int(v)) => *v,
            _ => 0,
        }
    }

    pub fn text(&self, key: &str) -> &str {
        match self.params.get(key) {
            Some(Value::Text(s)) => s,
            _ => "",
        }
    }

    /// One config per sweep point, last key varying fastest. A config that is
    /// not a sweep yields itself.
    pub fn expand(&self) -> Vec<RunConfig> {
        let target = self.target();
        let mut base = self.clone();
        base.command = target;
        base.sweep.clear();
        base.params.remove("target");
        let mut points = vec![base];
        for (k, values) in &self.sweep {
            points = points
                .into_iter()
                .flat_map(|p| {
                    values.iter().map(move |v| {
                        let mut q = p.clone();
                        q.params.insert(k.clone(), v.clone());
                        q
                    })
                })
                .collect();
        }
        points
    }
}

fn convert(key: &str, kind: Kind, value: &toml::Value) -> Result<Value> {
    let mismatch = || CliError::TypeMismatch {
        key: key.into(),
        expected: kind.describe(),
        found: value.type_str(),
    };
    match (kind, value) {
        (Kind::Float, toml::Value::Float(v)) => Ok(Value::Float(*v)),
        (Kind::Float, toml::Value::Integer(v)) => Ok(Value::Float(*v as f64)),
        (Kind::Int, toml::Value::Integer(v)) => Ok(Value::Int(*v)),
        (Kind::Path, toml::Value::String(s)) => Ok(Value::Text(s.clone())),
        (Kind::Text(choices), toml::Value::String(s)) => {
            if choices.contains(&s.as_str()) {
                Ok(Value::Text(s.clone()))
            } else {
                Err(CliError::InvalidValue {
                    key: key.into(),
                    reason: format!("`{s}` is not one of {}", choices.join(", ")),
                })
            }
        }
        _ => Err(mismatch()),
    }
}

fn default_value(spec: &KeySpec) -> Result<Option<Value>> {
    Ok(match spec.default {
        Fallback::Float(v) => Some(Value::Float(v)),
        Fallback::Int(v) => Some(Value::Int(v)),
        Fallback::Text(s) => Some(Value::Text(s.into())),
        Fallback::Optional(_) => None,
        Fallback::Required => return Err(CliError::MissingKey(spec.name.into())),
    })
}

/// Parses a config for `command`. A `command` key, if present, must agree.
pub fn parse_config_for(text: &str, command: Command) -> Result<RunConfig> {
    let table: toml::Table = text
        .parse()
        .map_err(|e: toml::de::Error| CliError::Syntax(e.message().to_string()))?;
    if let Some(c) = table.get("command") {
        let name = c.as_str().ok_or_else(|| CliError::TypeMismatch {
            key: "command".into(),
            expected: "string",
            found: c.type_str(),
        })?;
        let declared: Command = name.parse()?;
        if declared != command {
            return Err(CliError::CommandMismatch {
                declared: declared.name(),
                invoked: command.name(),
            });
        }
    }

    let mut specs: Vec<&KeySpec> = schema(command).iter().collect();
    if command == Command::Sweep {
        let target = match table.get("target") {
            Some(v) => match convert("target", SWEEP_KEYS[0].kind, v)? {
                Value::Text(t) => t.parse::<Command>()?,
                _ => unreachable!(),
            },
            None => return Err(CliError::MissingKey("target".into())),
        };
        specs.extend(schema(target));
    }

    let mut params = BTreeMap::new();
    let mut sweep = BTreeMap::new();
    for (k, v) in &table {
        if k == "command" {
            continue;
        }
        let spec = specs
            .iter()
            .find(|s| s.name == k)
            .ok_or_else(|| CliError::UnknownKey(k.clone()))?;
        match v {
            toml::Value::Array(items) if command == Command::Sweep && k != "target" => {
                if items.is_empty() {
                    return Err(CliError::InvalidValue {
                        key: k.clone(),
                        reason: "swept values must not be empty".into(),
                    });
                }
                let values = items
                    .iter()
                    .map(|item| convert(k, spec.kind, item))
                    .collect::<Result<Vec<_>>>()?;
                sweep.insert(k.clone(), values);
            }
            _ => {
                params.insert(k.clone(), convert(k, spec.kind, v)?);
            }
        }
    }
    for spec in &specs {
        if params.contains_key(spec.name) || sweep.contains_key(spec.name) {
            continue;
        }
        if let Some(v) = default_value(spec)? {
            params.insert(spec.name.into(), v);
        }
    }

    Ok(RunConfig {
        command,
        params,
        sweep,
        output_path: None,
        base_dir: None,
    })
}

/// Parses a config whose `command` key names the command.
pub fn parse_config(text: &str) -> Result<RunConfig> {
    let table: toml::Table = text
        .parse()
        .map_err(|e: toml::de::Error| CliError::Syntax(e.message().to_string()))?;
    let command = match table.get("command") {
        Some(toml::Value::String(s)) => s.parse()?,
        Some(v) => {
            return Err(CliError::TypeMismatch {
                key: "command".into(),
                expected: "string",
                found: v.type_str(),
            })
        }
        None => return Err(CliError::MissingKey("command".into())),
    };
    parse_config_for(text, command)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_bound_gets_flat_defaults() {
        let c = parse_config("command = \"bound\"\na = 2\n").unwrap();
        assert_eq!(c.command, Command::Bound);
        assert_eq!(c.float("a"), 2.0);
        assert_eq!(c.float("alpha"), 0.0);
        assert_eq!(c.text("trajectory"), "static");
        assert!(!c.params.contains_key("frames"));
    }

    #[test]
    fn errors_name_the_key() {
        let e = parse_config_for("omega_typo = 1.0", Command::Respond).unwrap_err();
        assert!(e.to_string().contains("omega_typo"));
        let e = parse_config_for("omega = \"one\"", Command::Respond).unwrap_err();
        assert!(matches!(e, CliError::TypeMismatch { ref key, .. } if key == "omega"));
        let e = parse_config_for("levels = 2.5", Command::Spectrum).unwrap_err();
        assert!(e.to_string().contains("levels"));
        let e = parse_config_for("a = [1, 2]", Command::Sweep).unwrap_err();
        assert_eq!(e, CliError::MissingKey("target".into()));
        let e = parse_config_for("command = \"bound\"", Command::Respond).unwrap_err();
        assert!(matches!(e, CliError::CommandMismatch { .. }));
        let e = parse_config_for("mode = \"weird\"", Command::Spectrum).unwrap_err();
        assert!(e.to_string().contains("mode"));
    }

    #[test]
    fn arrays_only_sweep() {
        assert!(parse_config_for("a = [1.0, 2.0]", Command::Bound).is_err());
        let c = parse_config_for(
            "target = \"bound\"\na = [1.0, 2.0]\nalpha = [0, 0.1, 0.2]",
            Command::Sweep,
        )
        .unwrap();
        let points = c.expand();
        assert_eq!(points.len(), 6);
        assert_eq!((points[1].float("a"), points[1].float("alpha")), (1.0, 0.1));
        assert!(points.iter().all(|p| p.command == Command::Bound));
    }
}
