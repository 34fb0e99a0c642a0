use std::path::Path;

use dshuffle_core::padic::PAdicContext;
use num_rational::BigRational;
use serde::Deserialize;

use crate::UsageError;

pub const DIGITS_ENV: &str = "DSHUFFLE_DIGITS";
pub const MAX_DIGITS: u32 = 2000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Text,
}

/// Settings shared by all subcommands. Later sources override earlier ones:
/// defaults, the TOML file, the environment, command-line flags.
#[derive(Debug, Clone, PartialEq)]
pub struct Config {
    pub digits: u32,
    pub p: u64,
    pub precision: u32,
    pub branch: BigRational,
    pub format: Format,
    pub degree: usize,
    pub seed: u64,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            digits: 30,
            p: 7,
            precision: 15,
            branch: BigRational::from_integer(0.into()),
            format: Format::Json,
            degree: 5,
            seed: 0,
        }
    }
}

/// The TOML file; every key is optional.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub digits: Option<u32>,
    pub p: Option<u64>,
    pub precision: Option<u32>,
    pub branch: Option<String>,
    pub format: Option<Format>,
    pub degree: Option<usize>,
    pub seed: Option<u64>,
}

impl Config {
    pub fn apply_file(&mut self, path: &Path) -> Result<(), UsageError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| UsageError(format!("cannot read config {}: {e}", path.display())))?;
        let file: ConfigFile =
            toml::from_str(&text).map_err(|e| UsageError(format!("bad config {}: {e}", path.display())))?;
        if let Some(d) = file.digits {
            self.digits = d;
        }
        if let Some(p) = file.p {
            self.p = p;
        }
        if let Some(n) = file.precision {
            self.precision = n;
        }
        if let Some(b) = file.branch {
            self.branch = parse_rational_arg(&b)?;
        }
        if let Some(f) = file.format {
            self.format = f;
        }
        if let Some(d) = file.degree {
            self.degree = d;
        }
        if let Some(s) = file.seed {
            self.seed = s;
        }
        Ok(())
    }

    pub fn apply_env(&mut self, value: Option<String>) -> Result<(), UsageError> {
        if let Some(v) = value {
            self.digits = v
                .trim()
                .parse()
                .map_err(|_| UsageError(format!("{DIGITS_ENV} must be a positive integer, got `{v}`")))?;
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<(), UsageError> {
        if self.digits == 0 || self.digits > MAX_DIGITS {
            return Err(UsageError(format!("digits must be in 1..={MAX_DIGITS}, got {}", self.digits)));
        }
        if self.degree == 0 {
            return Err(UsageError("degree must be positive".into()));
        }
        self.padic()?;
        Ok(())
    }

    pub fn padic(&self) -> Result<PAdicContext, UsageError> {
        PAdicContext::new(self.p, self.precision, &self.branch).map_err(|e| UsageError(e.to_string()))
    }
}

pub fn parse_rational_arg(s: &str) -> Result<BigRational, UsageError> {
    dshuffle_core::word_algebra::parse_rational(s).map_err(|e| UsageError(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn file_then_env() {
        let dir = std::env::temp_dir().join(format!("dshuffle-config-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("c.toml");
        std::fs::write(&path, "digits = 40\np = 11\nbranch = \"1/2\"\nformat = \"text\"\n").unwrap();
        let mut c = Config::default();
        c.apply_file(&path).unwrap();
        assert_eq!((c.digits, c.p, c.format), (40, 11, Format::Text));
        assert_eq!(c.branch, BigRational::new(1.into(), 2.into()));
        c.apply_env(Some("12".into())).unwrap();
        assert_eq!(c.digits, 12);
        assert!(c.apply_env(Some("x".into())).is_err());
        std::fs::write(&path, "colour = 1\n").unwrap();
        assert!(Config::default().apply_file(&path).is_err());
    }

    #[test]
    fn validation() {
        assert!(Config::default().validate().is_ok());
        assert!(Config { p: 9, ..Config::default() }.validate().is_err());
        assert!(Config { precision: 0, ..Config::default() }.validate().is_err());
        assert!(Config { digits: 0, ..Config::default() }.validate().is_err());
    }
}
