//! Run configuration: scenario selection, global options and typed access
//! to scenario parameters with a record of every value actually used.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use emergent_core::infotheory::LogBase;

use crate::error::{CliError, CliResult};
use crate::params::Params;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scenario {
    VanillaBell,
    BellEnv,
    QuditBell,
    SpinMomentum,
    MomentumSweep,
    GraphReconstruct,
    PropertySuite,
    PhysicalScales,
}

impl Scenario {
    pub const ALL: [Scenario; 8] = [
        Scenario::VanillaBell,
        Scenario::BellEnv,
        Scenario::QuditBell,
        Scenario::SpinMomentum,
        Scenario::MomentumSweep,
        Scenario::GraphReconstruct,
        Scenario::PropertySuite,
        Scenario::PhysicalScales,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Scenario::VanillaBell => "vanilla-bell",
            Scenario::BellEnv => "bell-env",
            Scenario::QuditBell => "qudit-bell",
            Scenario::SpinMomentum => "spin-momentum",
            Scenario::MomentumSweep => "momentum-sweep",
            Scenario::GraphReconstruct => "graph-reconstruct",
            Scenario::PropertySuite => "property-suite",
            Scenario::PhysicalScales => "physical-scales",
        }
    }
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Scenario {
    type Err = CliError;

    fn from_str(s: &str) -> CliResult<Self> {
        Scenario::ALL
            .into_iter()
            .find(|sc| sc.name() == s.trim())
            .ok_or_else(|| {
                let known: Vec<&str> = Scenario::ALL.iter().map(|s| s.name()).collect();
                CliError::Config(format!("unknown scenario `{s}` (known: {})", known.join(", ")))
            })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = CliError;

    fn from_str(s: &str) -> CliResult<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(CliError::Config(format!("unknown format `{other}` (csv or json)"))),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Csv => "csv",
            Format::Json => "json",
        })
    }
}

pub const DEFAULT_SEED: u64 = 0;

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub scenario: Scenario,
    pub seed: u64,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub log_base: LogBase,
    /// Scenario parameters left after the global options are taken out.
    pub params: Params,
}

impl RunConfig {
    /// Build from a scenario name and the trailing `--key value` flags. A
    /// `--config` file is read first and every flag overrides it.
    pub fn from_args<S: AsRef<str>>(scenario: &str, args: &[S]) -> CliResult<Self> {
        let scenario: Scenario = scenario.parse()?;
        let mut flags = Params::parse_args(args)?;
        let params = match flags.remove("config") {
            Some(path) => load_config_file(Path::new(&path))?.overridden_by(&flags),
            None => flags,
        };
        Self::from_params(scenario, params)
    }

    pub fn from_params(scenario: Scenario, mut params: Params) -> CliResult<Self> {
        if params.get("config").is_some() {
            return Err(CliError::Config("`config` cannot appear inside a config file".into()));
        }
        let seed = match params.remove("seed") {
            Some(s) => s
                .trim()
                .parse()
                .map_err(|_| CliError::Config(format!("seed `{s}` is not an unsigned 64-bit integer")))?,
            None => DEFAULT_SEED,
        };
        let format = params.remove("format").map(|f| f.parse()).transpose()?.unwrap_or_default();
        let out = params.remove("out").map(PathBuf::from);
        let log_base = params
            .remove("log-base")
            .map(|b| {
                b.parse::<LogBase>()
                    .map_err(|e| CliError::Config(format!("log-base: {e}")))
            })
            .transpose()?
            .unwrap_or_default();
        Ok(Self {
            scenario,
            seed,
            format,
            out,
            log_base,
            params,
        })
    }
}

pub fn load_config_file(path: &Path) -> CliResult<Params> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("cannot read config `{}`: {e}", path.display())))?;
    Ok(Params::parse_config(&text)?)
}

/// Typed parameter lookup that remembers the effective value of every key
/// it hands out, defaults included, for the output metadata.
#[derive(Debug)]
pub struct Resolver {
    params: Params,
    used: BTreeMap<String, String>,
}

impl Resolver {
    pub fn new(params: Params) -> Self {
        Self {
            params,
            used: BTreeMap::new(),
        }
    }

    fn take<T: FromStr>(&mut self, key: &str, expected: &str) -> CliResult<Option<T>> {
        match self.params.remove(key) {
            None => Ok(None),
            Some(raw) => raw
                .trim()
                .parse()
                .map(Some)
                .map_err(|_| CliError::Config(format!("`{key}` = `{raw}` is not {expected}"))),
        }
    }

    fn record(&mut self, key: &str, shown: String) {
        self.used.insert(key.to_string(), shown);
    }

    pub fn f64(&mut self, key: &str, default: f64) -> CliResult<f64> {
        let v = self.take(key, "a number")?.unwrap_or(default);
        if !v.is_finite() {
            return Err(CliError::Config(format!("`{key}` must be finite")));
        }
        self.record(key, format!("{v:?}"));
        Ok(v)
    }

    pub fn positive_f64(&mut self, key: &str, default: f64) -> CliResult<f64> {
        let v = self.f64(key, default)?;
        if v <= 0.0 {
            return Err(CliError::Config(format!("`{key}` must be positive, got {v:?}")));
        }
        Ok(v)
    }

    pub fn opt_f64(&mut self, key: &str) -> CliResult<Option<f64>> {
        let v: Option<f64> = self.take(key, "a number")?;
        if let Some(x) = v {
            if !x.is_finite() {
                return Err(CliError::Config(format!("`{key}` must be finite")));
            }
            self.record(key, format!("{x:?}"));
        }
        Ok(v)
    }

    pub fn usize(&mut self, key: &str, default: usize) -> CliResult<usize> {
        let v = self.take(key, "a nonnegative integer")?.unwrap_or(default);
        self.record(key, v.to_string());
        Ok(v)
    }

    pub fn bool(&mut self, key: &str, default: bool) -> CliResult<bool> {
        let v = self.take(key, "true or false")?.unwrap_or(default);
        self.record(key, v.to_string());
        Ok(v)
    }

    pub fn string(&mut self, key: &str, default: &str) -> CliResult<String> {
        let v = self.params.remove(key).unwrap_or_else(|| default.to_string());
        self.record(key, v.clone());
        Ok(v)
    }

    pub fn opt_string(&mut self, key: &str) -> Option<String> {
        let v = self.params.remove(key);
        if let Some(s) = &v {
            self.record(key, s.clone());
        }
        v
    }

    /// One of `choices`, defaulting to the first.
    pub fn choice(&mut self, key: &str, choices: &[&str]) -> CliResult<String> {
        let v = self.string(key, choices[0])?;
        let norm = v.trim().to_ascii_lowercase();
        if !choices.contains(&norm.as_str()) {
            return Err(CliError::Config(format!(
                "`{key}` = `{v}` is not one of {}",
                choices.join(", ")
            )));
        }
        self.record(key, norm.clone());
        Ok(norm)
    }

    /// Comma-separated numbers.
    pub fn f64_list(&mut self, key: &str) -> CliResult<Option<Vec<f64>>> {
        let Some(raw) = self.params.remove(key) else {
            return Ok(None);
        };
        let list = raw
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<f64>()
                    .ok()
                    .filter(|x| x.is_finite())
                    .ok_or_else(|| CliError::Config(format!("`{key}`: `{t}` is not a finite number")))
            })
            .collect::<CliResult<Vec<_>>>()?;
        let shown: Vec<String> = list.iter().map(|x| format!("{x:?}")).collect();
        self.record(key, shown.join(","));
        Ok(Some(list))
    }

    /// Fails if any supplied key was never read. Scenarios call this once
    /// all parameters are resolved and before doing any work.
    pub fn finish(&self) -> CliResult<()> {
        if !self.params.is_empty() {
            let unknown: Vec<&str> = self.params.keys().collect();
            return Err(CliError::Config(format!("unknown parameter(s): {}", unknown.join(", "))));
        }
        Ok(())
    }

    /// Effective value of every parameter read so far.
    pub fn used(&self) -> &BTreeMap<String, String> {
        &self.used
    }
}
