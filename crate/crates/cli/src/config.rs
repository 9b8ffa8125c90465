//! Run configuration: flags over an optional TOML file over defaults.

use std::path::{Path, PathBuf};

use cmzv_core::fcv::{default_primes, prime_range};
use serde::Deserialize;

use crate::UsageError;

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub level: Option<u32>,
    pub max_weight: Option<u32>,
    pub primes: Option<String>,
    pub digits: Option<u32>,
    pub tolerance: Option<f64>,
    pub threads: Option<usize>,
    pub out_dir: Option<PathBuf>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self, UsageError> {
        let text = std::fs::read_to_string(path).map_err(|e| UsageError(format!("{}: {e}", path.display())))?;
        toml::from_str(&text).map_err(|e| UsageError(format!("{}: {e}", path.display())))
    }
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub level: u32,
    pub max_weight: u32,
    pub primes: Vec<u64>,
    prime_spec: Option<String>,
    pub digits: u32,
    pub tolerance: f64,
    pub threads: Option<usize>,
    pub out_dir: PathBuf,
}

pub struct Overrides {
    pub level: Option<u32>,
    pub max_weight: Option<u32>,
    pub primes: Option<String>,
    pub digits: Option<u32>,
    pub tolerance: Option<f64>,
    pub threads: Option<usize>,
    pub out_dir: Option<PathBuf>,
}

impl RunConfig {
    pub fn resolve(flags: Overrides, file: FileConfig) -> Result<Self, UsageError> {
        let level = flags.level.or(file.level).ok_or_else(|| UsageError("--level is required".into()))?;
        if level == 0 {
            return Err(UsageError("level must be positive".into()));
        }
        let digits = flags.digits.or(file.digits).unwrap_or(60);
        if digits < 20 {
            return Err(UsageError(format!("precision of {digits} digits is below the minimum of 20")));
        }
        let tolerance = flags.tolerance.or(file.tolerance).unwrap_or(1e-10);
        let floor = 10f64.powi(-(digits as i32 - 10));
        if tolerance.is_nan() || tolerance <= 0.0 || tolerance < floor {
            return Err(UsageError(format!("tolerance {tolerance:e} is below 1e-{} for {digits} digits", digits - 10)));
        }
        let prime_spec = flags.primes.or(file.primes);
        let primes = match &prime_spec {
            Some(spec) => parse_primes(spec, level)?,
            None => default_primes(level),
        };
        Ok(RunConfig {
            level,
            max_weight: flags.max_weight.or(file.max_weight).unwrap_or(4),
            primes,
            prime_spec,
            digits,
            tolerance,
            threads: flags.threads.or(file.threads),
            out_dir: flags.out_dir.or(file.out_dir).unwrap_or_else(|| PathBuf::from(".")),
        })
    }
}

impl RunConfig {
    /// The configured primes read at another level.
    pub fn primes_for(&self, level: u32) -> Result<Vec<u64>, UsageError> {
        match &self.prime_spec {
            Some(spec) => parse_primes(spec, level),
            None => Ok(default_primes(level)),
        }
    }
}

/// `a..b` (half-open), `a..=b`, or a comma-separated list; ranges keep p ≡ −1 mod N only.
pub fn parse_primes(spec: &str, level: u32) -> Result<Vec<u64>, UsageError> {
    let bad = |t: &str| UsageError(format!("invalid prime specification at `{t}`"));
    if let Some((lo, hi)) = spec.split_once("..") {
        let lo: u64 = lo.trim().parse().map_err(|_| bad(lo))?;
        let (hi, inclusive) = match hi.strip_prefix('=') {
            Some(h) => (h, true),
            None => (hi, false),
        };
        let hi: u64 = hi.trim().parse().map_err(|_| bad(hi))?;
        let hi = if inclusive { hi } else { hi.saturating_sub(1) };
        return Ok(prime_range(level, lo, hi));
    }
    let mut out = spec
        .split(',')
        .map(|t| t.trim().parse::<u64>().map_err(|_| bad(t)))
        .collect::<Result<Vec<_>, _>>()?;
    out.sort_unstable();
    out.dedup();
    Ok(out)
}
