//! Flags shared by every subcommand, and the JSON config file that may
//! supply them.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, ensure, Context, Result};
use clap::Args;
use cone_min_lab::shooting::StepConfig;
use cone_min_lab::{DecideConfig, Format, Mode, QuadratureConfig, ScanConfig};
use serde::Deserialize;

#[derive(Debug, Clone, Default, Args, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Settings {
    /// Absolute quadrature tolerance.
    #[arg(long, global = true)]
    pub abs_tol: Option<f64>,
    /// Relative quadrature tolerance.
    #[arg(long, global = true)]
    pub rel_tol: Option<f64>,
    /// Maximum bisection depth of adaptive quadrature.
    #[arg(long, global = true)]
    pub max_depth: Option<u32>,
    /// Local error tolerance of the shooting integrator.
    #[arg(long, global = true)]
    pub step_tol: Option<f64>,
    /// `H` at or below this counts as reaching the floor.
    #[arg(long, global = true)]
    pub h_floor: Option<f64>,
    /// Distance from pi/2 at which a shot is classified.
    #[arg(long, global = true)]
    pub end_gap: Option<f64>,
    #[arg(long, global = true)]
    pub max_steps: Option<usize>,
    /// Dimensions: `3`, `2..6` (inclusive) or `2,4,6`.
    #[arg(long, global = true)]
    pub n: Option<String>,
    /// λ values: `0.9`, `lo:hi:count` or `0.5,0.9,1`.
    #[arg(long, global = true)]
    pub lambda: Option<String>,
    /// Output file; standard output when absent.
    #[arg(short, long, global = true)]
    pub output: Option<PathBuf>,
    /// csv, json or svg (scan only; other commands write json).
    #[arg(long, global = true)]
    pub format: Option<String>,
    /// Worker threads for scans.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// certified or formula-only.
    #[arg(long, global = true)]
    pub mode: Option<String>,
    #[arg(long, global = true)]
    pub barrier_samples: Option<usize>,
    /// Bound evaluations per competitor search.
    #[arg(long, global = true)]
    pub search_budget: Option<usize>,
    /// Record wall time per scan point.
    #[arg(long, global = true)]
    #[serde(default)]
    pub timing: bool,
}

macro_rules! prefer {
    ($cli:ident, $file:ident; $($field:ident),*) => {
        Settings { $($field: $cli.$field.or($file.$field),)* timing: $cli.timing || $file.timing }
    };
}

impl Settings {
    pub fn load(path: &Path) -> Result<Self> {
        let text =
            fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
    }

    /// Fields set here win over `file`.
    pub fn over(self, file: Settings) -> Settings {
        let cli = self;
        prefer!(cli, file; abs_tol, rel_tol, max_depth, step_tol, h_floor, end_gap, max_steps, n, lambda,
            output, format, threads, mode, barrier_samples, search_budget)
    }

    pub fn quadrature(&self) -> Result<QuadratureConfig> {
        let d = QuadratureConfig::default();
        Ok(QuadratureConfig::new(
            self.abs_tol.unwrap_or(d.abs_tol),
            self.rel_tol.unwrap_or(d.rel_tol),
            self.max_depth.unwrap_or(d.max_depth),
        )?)
    }

    pub fn steps(&self) -> Result<StepConfig> {
        let d = StepConfig::default();
        let cfg = StepConfig {
            tol: self.step_tol.unwrap_or(d.tol),
            h_floor: self.h_floor.unwrap_or(d.h_floor),
            end_gap: self.end_gap.unwrap_or(d.end_gap),
            max_steps: self.max_steps.unwrap_or(d.max_steps),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn scan_config(&self) -> Result<ScanConfig> {
        let d = DecideConfig::default();
        let mode = match &self.mode {
            Some(m) => m.parse::<Mode>()?,
            None => Mode::Certified,
        };
        ensure!(self.threads != Some(0), "--threads must be positive");
        Ok(ScanConfig {
            mode,
            decide: DecideConfig {
                barrier_samples: self.barrier_samples.unwrap_or(d.barrier_samples),
                search_budget: self.search_budget.unwrap_or(d.search_budget),
            },
            threads: self.threads,
            timing: self.timing,
        })
    }

    pub fn format(&self) -> Result<Format> {
        Ok(self
            .format
            .as_deref()
            .map(str::parse)
            .transpose()?
            .unwrap_or_default())
    }

    /// Refuses any format but json for commands without tabular output.
    pub fn require_json(&self, command: &str) -> Result<()> {
        match (&self.format, self.format()?) {
            (None, _) | (_, Format::Json) => Ok(()),
            (Some(f), _) => bail!("{command} writes json only, not {f}"),
        }
    }

    pub fn dimensions(&self, default: &str) -> Result<Vec<u32>> {
        parse_dimensions(self.n.as_deref().unwrap_or(default))
    }

    pub fn lambdas(&self, default: &str) -> Result<Vec<f64>> {
        parse_reals(self.lambda.as_deref().unwrap_or(default))
    }
}

pub fn parse_dimensions(spec: &str) -> Result<Vec<u32>> {
    let spec = spec.trim();
    if let Some((lo, hi)) = spec.split_once("..") {
        let lo: u32 = lo
            .trim()
            .parse()
            .with_context(|| format!("bad dimension range {spec:?}"))?;
        let hi: u32 = hi
            .trim()
            .parse()
            .with_context(|| format!("bad dimension range {spec:?}"))?;
        ensure!(lo <= hi, "empty dimension range {spec:?}");
        return Ok((lo..=hi).collect());
    }
    spec.split(',')
        .map(|s| {
            s.trim()
                .parse()
                .with_context(|| format!("bad dimension {s:?}"))
        })
        .collect()
}

/// `x`, `a,b,c` or `lo:hi:count` (evenly spaced, both ends included).
pub fn parse_reals(spec: &str) -> Result<Vec<f64>> {
    let spec = spec.trim();
    let parts: Vec<&str> = spec.split(':').collect();
    match parts.as_slice() {
        [lo, hi, count] => {
            let lo: f64 = lo
                .trim()
                .parse()
                .with_context(|| format!("bad grid {spec:?}"))?;
            let hi: f64 = hi
                .trim()
                .parse()
                .with_context(|| format!("bad grid {spec:?}"))?;
            let count: usize = count
                .trim()
                .parse()
                .with_context(|| format!("bad grid {spec:?}"))?;
            ensure!(lo <= hi, "grid {spec:?} runs backwards");
            Ok(cone_min_lab::scan::linspace(lo, hi, count))
        }
        [list] if !list.is_empty() => list
            .split(',')
            .map(|s| {
                s.trim()
                    .parse()
                    .with_context(|| format!("bad number {s:?}"))
            })
            .collect(),
        _ => bail!("bad grid {spec:?}; expected x, a,b,c or lo:hi:count"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_specs() {
        assert_eq!(parse_dimensions("2..4").unwrap(), vec![2, 3, 4]);
        assert_eq!(parse_dimensions("3, 5").unwrap(), vec![3, 5]);
        assert!(parse_dimensions("5..2").is_err());
        assert_eq!(parse_reals("0.5:1:3").unwrap(), vec![0.5, 0.75, 1.0]);
        assert_eq!(parse_reals("0.9").unwrap(), vec![0.9]);
        assert_eq!(parse_reals("0.5:1:0").unwrap(), Vec::<f64>::new());
        assert!(parse_reals("a:b").is_err());
    }

    #[test]
    fn command_line_wins_over_file() {
        let file: Settings =
            serde_json::from_str(r#"{"n": "2..6", "abs_tol": 1e-8, "timing": true}"#).unwrap();
        let cli = Settings {
            n: Some("3".into()),
            ..Settings::default()
        };
        let merged = cli.over(file);
        assert_eq!(merged.n.as_deref(), Some("3"));
        assert_eq!(merged.abs_tol, Some(1e-8));
        assert!(merged.timing);
        assert!(serde_json::from_str::<Settings>(r#"{"nn": 3}"#).is_err());
    }
}
