//! Flat key-value parameters from `--key value` flags and TOML files.
//!
//! Keys are case-insensitive and `_` is interchangeable with `-`; both
//! sources store values as strings so flags can override file entries
//! without caring how the file typed them.

use std::collections::BTreeMap;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParamError {
    #[error("flag `--{0}` needs a value")]
    MissingValue(String),
    #[error("unexpected argument `{0}`; parameters are given as `--key value`")]
    UnexpectedArgument(String),
    #[error("parameter `{0}` given more than once")]
    Duplicate(String),
    #[error("empty parameter name")]
    EmptyKey,
    #[error("config file: {0}")]
    Toml(String),
    #[error("config key `{0}` must be a scalar or a flat array of scalars")]
    NotFlat(String),
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Params {
    values: BTreeMap<String, String>,
}

pub fn normalize_key(key: &str) -> String {
    key.trim().to_ascii_lowercase().replace('_', "-")
}

impl Params {
    pub fn new() -> Self {
        Self::default()
    }

    /// Parse `--key value` and `--key=value` pairs.
    pub fn parse_args<S: AsRef<str>>(args: &[S]) -> Result<Self, ParamError> {
        let mut out = Self::new();
        let mut it = args.iter().map(AsRef::as_ref);
        while let Some(arg) = it.next() {
            let Some(body) = arg.strip_prefix("--") else {
                return Err(ParamError::UnexpectedArgument(arg.to_string()));
            };
            let (key, value) = match body.split_once('=') {
                Some((k, v)) => (k.to_string(), v.to_string()),
                None => {
                    let v = it.next().ok_or_else(|| ParamError::MissingValue(body.to_string()))?;
                    (body.to_string(), v.to_string())
                }
            };
            out.insert(&key, value)?;
        }
        Ok(out)
    }

    /// Parse a flat TOML document. Arrays of scalars become comma-separated
    /// strings.
    pub fn parse_config(text: &str) -> Result<Self, ParamError> {
        let table: toml::Table = text.parse().map_err(|e: toml::de::Error| ParamError::Toml(e.message().to_string()))?;
        let mut out = Self::new();
        for (key, value) in &table {
            let rendered = match value {
                toml::Value::Array(items) => items
                    .iter()
                    .map(|v| scalar(key, v))
                    .collect::<Result<Vec<_>, _>>()?
                    .join(","),
                v => scalar(key, v)?,
            };
            out.insert(key, rendered)?;
        }
        Ok(out)
    }

    fn insert(&mut self, key: &str, value: String) -> Result<(), ParamError> {
        let key = normalize_key(key);
        if key.is_empty() {
            return Err(ParamError::EmptyKey);
        }
        if self.values.contains_key(&key) {
            return Err(ParamError::Duplicate(key));
        }
        self.values.insert(key, value);
        Ok(())
    }

    /// `self` with every entry of `overrides` replacing its own.
    pub fn overridden_by(mut self, overrides: &Params) -> Self {
        for (k, v) in &overrides.values {
            self.values.insert(k.clone(), v.clone());
        }
        self
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.values.get(&normalize_key(key)).map(String::as_str)
    }

    pub fn remove(&mut self, key: &str) -> Option<String> {
        self.values.remove(&normalize_key(key))
    }

    pub fn keys(&self) -> impl Iterator<Item = &str> {
        self.values.keys().map(String::as_str)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

fn scalar(key: &str, value: &toml::Value) -> Result<String, ParamError> {
    match value {
        toml::Value::String(s) => Ok(s.clone()),
        toml::Value::Integer(i) => Ok(i.to_string()),
        toml::Value::Float(f) => Ok(format!("{f:?}")),
        toml::Value::Boolean(b) => Ok(b.to_string()),
        _ => Err(ParamError::NotFlat(key.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_in_both_spellings() {
        let p = Params::parse_args(&["--n-modes", "64", "--l_rc=2.5", "--Channel", "localize"]).unwrap();
        assert_eq!(p.get("n_modes"), Some("64"));
        assert_eq!(p.get("l-rc"), Some("2.5"));
        assert_eq!(p.get("channel"), Some("localize"));
        assert_eq!(p.len(), 3);
    }

    #[test]
    fn flag_errors() {
        assert_eq!(
            Params::parse_args(&["--steps"]),
            Err(ParamError::MissingValue("steps".into()))
        );
        assert_eq!(
            Params::parse_args(&["steps", "8"]),
            Err(ParamError::UnexpectedArgument("steps".into()))
        );
        assert_eq!(
            Params::parse_args(&["--l-rc", "1", "--l_rc", "2"]),
            Err(ParamError::Duplicate("l-rc".into()))
        );
        assert_eq!(Params::parse_args(&["--", "x"]), Err(ParamError::EmptyKey));
    }

    #[test]
    fn negative_values_are_values() {
        let p = Params::parse_args(&["--offset", "-3"]).unwrap();
        assert_eq!(p.get("offset"), Some("-3"));
    }

    #[test]
    fn toml_scalars_and_arrays() {
        let p = Params::parse_config(
            "n_modes = 64\nl-rc = 1.5\nchannel = \"dephase\"\ndense = true\nweights = [0.5, 0.25, 0.25]\nlambda_cc = 1e-52\n",
        )
        .unwrap();
        assert_eq!(p.get("n-modes"), Some("64"));
        assert_eq!(p.get("l-rc"), Some("1.5"));
        assert_eq!(p.get("channel"), Some("dephase"));
        assert_eq!(p.get("dense"), Some("true"));
        assert_eq!(p.get("weights"), Some("0.5,0.25,0.25"));
        assert_eq!(p.get("lambda-cc").unwrap().parse::<f64>().unwrap(), 1e-52);
    }

    #[test]
    fn toml_rejects_nesting_and_collisions() {
        assert!(matches!(Params::parse_config("[sweep]\nsteps = 3\n"), Err(ParamError::NotFlat(_))));
        assert!(matches!(Params::parse_config("a = [[1]]\n"), Err(ParamError::NotFlat(_))));
        assert!(matches!(Params::parse_config("l_rc = 1\nl-rc = 2\n"), Err(ParamError::Duplicate(_))));
        assert!(matches!(Params::parse_config("= 3"), Err(ParamError::Toml(_))));
    }

    #[test]
    fn flags_override_file() {
        let file = Params::parse_config("steps = 4\nchannel = \"dephase\"\n").unwrap();
        let flags = Params::parse_args(&["--steps", "8"]).unwrap();
        let merged = file.overridden_by(&flags);
        assert_eq!(merged.get("steps"), Some("8"));
        assert_eq!(merged.get("channel"), Some("dephase"));
    }
}
