//! Run configuration from flags and an optional `key=value` file; flags win.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::error::{CliError, CliResult};

/// Largest accepted truncation degree.
pub const MAX_DEGREE: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.extension())
    }
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            _ => Err(format!("format must be csv or json, got `{s}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub problem_id: String,
    pub lambda: f64,
    pub kappa: u32,
    pub degree: usize,
    pub quad_margin: usize,
    pub output_dir: PathBuf,
    pub format: Format,
}

/// Any subset of the settings, as read from one source.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct PartialConfig {
    pub problem_id: Option<String>,
    pub lambda: Option<f64>,
    pub kappa: Option<u32>,
    pub degree: Option<usize>,
    pub quad_margin: Option<usize>,
    pub output_dir: Option<PathBuf>,
    pub format: Option<Format>,
}

impl PartialConfig {
    /// Fields set in `self` take precedence over `base`.
    pub fn over(self, base: PartialConfig) -> PartialConfig {
        PartialConfig {
            problem_id: self.problem_id.or(base.problem_id),
            lambda: self.lambda.or(base.lambda),
            kappa: self.kappa.or(base.kappa),
            degree: self.degree.or(base.degree),
            quad_margin: self.quad_margin.or(base.quad_margin),
            output_dir: self.output_dir.or(base.output_dir),
            format: self.format.or(base.format),
        }
    }

    pub fn parse(text: &str, path: &Path) -> CliResult<Self> {
        let mut out = PartialConfig::default();
        for (i, raw) in text.lines().enumerate() {
            let err = |message: String| CliError::ConfigFile {
                path: path.to_path_buf(),
                line: i + 1,
                message,
            };
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| err(format!("expected key=value, got `{line}`")))?;
            let (key, value) = (key.trim(), value.trim());
            fn num<T: FromStr>(v: &str) -> Result<T, String> {
                v.parse().map_err(|_| format!("cannot parse `{v}`"))
            }
            match key {
                "problem" => out.problem_id = Some(value.to_string()),
                "lambda" => out.lambda = Some(num(value).map_err(err)?),
                "kappa" => out.kappa = Some(num(value).map_err(err)?),
                "degree" | "N" => out.degree = Some(num(value).map_err(err)?),
                "quad_margin" | "quad-margin" => out.quad_margin = Some(num(value).map_err(err)?),
                "out" => out.output_dir = Some(PathBuf::from(value)),
                "format" => out.format = Some(value.parse().map_err(err)?),
                _ => return Err(err(format!("unknown key `{key}`"))),
            }
        }
        Ok(out)
    }

    pub fn from_file(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::parse(&text, path)
    }

    /// Fills defaults and validates.
    pub fn resolve(self) -> CliResult<RunConfig> {
        let cfg = RunConfig {
            problem_id: self.problem_id.unwrap_or_else(|| "exp2d".into()),
            lambda: self.lambda.unwrap_or(8.0),
            kappa: self.kappa.unwrap_or(0),
            degree: self.degree.unwrap_or(3),
            quad_margin: self.quad_margin.unwrap_or(0),
            output_dir: self.output_dir.unwrap_or_else(|| PathBuf::from(".")),
            format: self.format.unwrap_or_default(),
        };
        if !(cfg.lambda > 0.0) || !cfg.lambda.is_finite() {
            return Err(CliError::Usage(format!("lambda must be positive, got {}", cfg.lambda)));
        }
        if cfg.degree > MAX_DEGREE {
            return Err(CliError::Usage(format!(
                "degree {} exceeds the supported maximum {MAX_DEGREE}",
                cfg.degree
            )));
        }
        Ok(cfg)
    }
}
