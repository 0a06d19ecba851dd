//! `key=value` defaults and the precision override.

use std::collections::BTreeMap;
use std::path::Path;
use std::str::FromStr;

use hypstable::EvalPrecision;

use crate::CliError;

pub const PRECISION_ENV: &str = "HYPSTABLE_PRECISION";

#[derive(Debug, Clone, Default)]
pub struct ConfigFile {
    values: BTreeMap<String, String>,
}

impl ConfigFile {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// Blank lines and lines starting with `#` are ignored.
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut values = BTreeMap::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| CliError::Usage(format!("config line {}: expected key=value", i + 1)))?;
            values.insert(k.trim().replace('_', "-"), v.trim().to_string());
        }
        Ok(Self { values })
    }

    pub fn get<T: FromStr>(&self, key: &str) -> Result<Option<T>, CliError> {
        match self.values.get(key) {
            None => Ok(None),
            Some(raw) => raw
                .parse()
                .map(Some)
                .map_err(|_| CliError::Usage(format!("config key {key}: cannot parse {raw:?}"))),
        }
    }

    /// The flag value if given, else the file value.
    pub fn pick<T: FromStr>(&self, flag: Option<T>, key: &str) -> Result<Option<T>, CliError> {
        match flag {
            Some(v) => Ok(Some(v)),
            None => self.get(key),
        }
    }

    /// Precision from `precision=` in the file, overridden by the environment.
    pub fn precision(&self) -> Result<EvalPrecision, CliError> {
        let mut rel_tol: Option<f64> = self.get("precision")?;
        if let Ok(raw) = std::env::var(PRECISION_ENV) {
            rel_tol = Some(
                raw.trim()
                    .parse()
                    .map_err(|_| CliError::Usage(format!("{PRECISION_ENV}: cannot parse {raw:?}")))?,
            );
        }
        match rel_tol {
            None => Ok(EvalPrecision::default()),
            Some(t) => EvalPrecision::with_rel_tol(t).map_err(|e| CliError::Usage(e.to_string())),
        }
    }
}
