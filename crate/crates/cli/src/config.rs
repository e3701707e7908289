//! Run settings assembled from flags and an optional JSON document.

use std::path::{Path, PathBuf};

use clap::Args;
use serde::Deserialize;

use multiquadric::scalar::parse_rational;
use multiquadric::{ExactRational, Interval, MultiquadricParams, ScatteredSequence};

use crate::failure::{CliResult, Failure};

/// Flags shared by the approximation commands.
#[derive(Args, Debug, Clone)]
pub struct RunArgs {
    /// Order of the multiquadric.
    #[arg(long, default_value_t = 1)]
    pub k: u32,
    /// Shape parameter, decimal or p/q.
    #[arg(long, default_value = "1")]
    pub c: String,
    /// Closed interval as `a,b`.
    #[arg(long, default_value = "0,1", allow_hyphen_values = true)]
    pub interval: String,
    /// `lattice`, `jitter:RADIUS:SEED` or `file:PATH`.
    #[arg(long, default_value = "lattice")]
    pub sequence: String,
    /// Number of evaluation grid points.
    #[arg(long = "grid", default_value_t = 2049)]
    pub grid_points: usize,
    /// Worker threads for grid evaluation.
    #[arg(long, default_value_t = 1)]
    pub threads: usize,
    /// JSON run configuration; its fields override the flags.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

/// JSON form of a run. Every field is optional.
#[derive(Deserialize, Debug, Default)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub k: Option<u32>,
    pub c: Option<Literal>,
    pub interval: Option<[f64; 2]>,
    pub epsilon: Option<f64>,
    pub sequence: Option<String>,
    pub grid_points: Option<usize>,
    pub lp: Option<Vec<f64>>,
    pub expr: Option<String>,
    pub threads: Option<usize>,
    pub out_json: Option<PathBuf>,
    pub out_csv: Option<PathBuf>,
}

#[derive(Deserialize, Debug)]
#[serde(untagged)]
pub enum Literal {
    Text(String),
    Number(f64),
}

impl RunConfig {
    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure::Config(format!("{}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| Failure::Config(format!("{}: {e}", path.display())))
    }
}

/// Validated settings for one run.
#[derive(Debug, Clone)]
pub struct Settings {
    pub params: MultiquadricParams,
    pub interval: Interval,
    pub sequence: ScatteredSequence,
    pub grid_points: usize,
    pub threads: usize,
}

/// Flags after the config file has been applied, before validation.
pub struct Merged {
    pub run: RunArgs,
    pub config: RunConfig,
}

impl Merged {
    pub fn new(mut run: RunArgs) -> CliResult<Self> {
        let config = match &run.config {
            Some(path) => RunConfig::load(path)?,
            None => RunConfig::default(),
        };
        if let Some(k) = config.k {
            run.k = k;
        }
        if let Some(c) = &config.c {
            run.c = match c {
                Literal::Text(s) => s.clone(),
                Literal::Number(v) => v.to_string(),
            };
        }
        if let Some([a, b]) = config.interval {
            run.interval = format!("{a},{b}");
        }
        if let Some(s) = &config.sequence {
            run.sequence = s.clone();
        }
        if let Some(g) = config.grid_points {
            run.grid_points = g;
        }
        if let Some(t) = config.threads {
            run.threads = t;
        }
        Ok(Self { run, config })
    }

    pub fn settings(&self) -> CliResult<Settings> {
        let r = &self.run;
        let c = parse_rational(&r.c)?;
        if r.grid_points < 2 {
            return Err(Failure::Config("grid needs at least 2 points".into()));
        }
        if r.threads == 0 {
            return Err(Failure::Config("threads must be >= 1".into()));
        }
        Ok(Settings {
            params: MultiquadricParams::new(r.k, c)?,
            interval: parse_interval(&r.interval)?,
            sequence: parse_sequence(&r.sequence)?,
            grid_points: r.grid_points,
            threads: r.threads,
        })
    }
}

pub fn parse_interval(text: &str) -> CliResult<Interval> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    let [a, b] = parts.as_slice() else {
        return Err(Failure::Config(format!("interval `{text}` must be `a,b`")));
    };
    let num = |s: &str| {
        s.parse::<f64>()
            .map_err(|_| Failure::Config(format!("bad interval endpoint `{s}`")))
    };
    Ok(Interval::new(num(a)?, num(b)?)?)
}

pub fn parse_sequence(text: &str) -> CliResult<ScatteredSequence> {
    if text == "lattice" {
        return Ok(ScatteredSequence::integer_lattice());
    }
    if let Some(rest) = text.strip_prefix("jitter:") {
        let (radius, seed) = rest
            .split_once(':')
            .ok_or_else(|| Failure::Config(format!("sequence `{text}` must be jitter:RADIUS:SEED")))?;
        let radius: f64 = radius
            .parse()
            .map_err(|_| Failure::Config(format!("bad jitter radius `{radius}`")))?;
        let seed: u64 = seed
            .parse()
            .map_err(|_| Failure::Config(format!("bad jitter seed `{seed}`")))?;
        return Ok(ScatteredSequence::jittered_lattice(radius, seed)?);
    }
    if let Some(path) = text.strip_prefix("file:") {
        return Ok(ScatteredSequence::from_file(path)?);
    }
    Err(Failure::Config(format!(
        "unknown sequence `{text}`; expected lattice, jitter:RADIUS:SEED or file:PATH"
    )))
}

pub fn parse_list(text: &str) -> CliResult<Vec<ExactRational>> {
    text.split(',')
        .map(|s| parse_rational(s.trim()).map_err(Failure::from))
        .collect()
}

/// Seventeen significant digits.
pub fn sci(v: f64) -> String {
    format!("{v:.16e}")
}
