//! `key = value` run configuration. Command-line flags override file values.

use std::collections::BTreeMap;
use std::path::{Component, Path, PathBuf};
use std::str::FromStr;

use crate::error::CliError;

pub const KEYS: &[&str] = &[
    "out_dir",
    "tolerance_fraction",
    "ladder",
    "seed",
    "jobs",
    "source_threshold",
    "step_size",
    "max_steps",
    "eps",
    "min_samples",
    "line_threshold",
    "max_distance",
    "quiver_stride",
];

#[derive(Debug, Default, Clone, PartialEq)]
pub struct ConfigFile {
    values: BTreeMap<String, String>,
}

impl ConfigFile {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut values = BTreeMap::new();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| CliError::Usage(format!("config line {}: expected key = value", n + 1)))?;
            let key = key.trim();
            if !KEYS.contains(&key) {
                return Err(CliError::Usage(format!("config line {}: unknown key {key:?}", n + 1)));
            }
            values.insert(key.to_string(), value.trim().to_string());
        }
        Ok(Self { values })
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        Self::parse(&text)
    }

    /// The flag if given, else the file value, else `default`.
    pub fn pick<T: FromStr>(&self, flag: Option<T>, key: &str, default: T) -> Result<T, CliError> {
        if let Some(v) = flag {
            return Ok(v);
        }
        match self.values.get(key) {
            Some(s) => s
                .parse()
                .map_err(|_| CliError::Usage(format!("config key {key}: cannot parse {s:?}"))),
            None => Ok(default),
        }
    }
}

/// Resolves `name` inside `out_dir`, refusing anything that could escape it.
pub fn output_path(out_dir: &Path, name: &Path) -> Result<PathBuf, CliError> {
    let escapes = name
        .components()
        .any(|c| !matches!(c, Component::Normal(_) | Component::CurDir));
    if escapes || name.as_os_str().is_empty() {
        return Err(CliError::Usage(format!(
            "output {} must be a relative path inside the output directory",
            name.display()
        )));
    }
    Ok(out_dir.join(name))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_win_over_file() {
        let c = ConfigFile::parse("ladder = 20\n# comment\ntolerance_fraction=0.01 # trailing\n").unwrap();
        assert_eq!(c.pick(None, "ladder", 99usize).unwrap(), 20);
        assert_eq!(c.pick(Some(5), "ladder", 99usize).unwrap(), 5);
        assert_eq!(c.pick(None, "tolerance_fraction", 0.0025).unwrap(), 0.01);
        assert_eq!(c.pick(None, "seed", 7u64).unwrap(), 7);
    }

    #[test]
    fn rejects_unknown_keys_and_junk() {
        assert!(ConfigFile::parse("ladderr = 3").is_err());
        assert!(ConfigFile::parse("ladder").is_err());
        let c = ConfigFile::parse("ladder = many").unwrap();
        assert!(c.pick(None, "ladder", 99usize).is_err());
    }

    #[test]
    fn outputs_stay_inside() {
        let dir = Path::new("out");
        assert_eq!(output_path(dir, Path::new("a/b.png")).unwrap(), Path::new("out/a/b.png"));
        assert!(output_path(dir, Path::new("../b.png")).is_err());
        assert!(output_path(dir, Path::new("a/../../b.png")).is_err());
        assert!(output_path(dir, Path::new("/tmp/b.png")).is_err());
        assert!(output_path(dir, Path::new("")).is_err());
    }
}
