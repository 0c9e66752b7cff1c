//! Command-line flags, the optional key-value config file, and their merge
//! into one [`ExperimentConfig`].

use std::path::{Path, PathBuf};

use apollonian::stats::Region;
use apollonian::GasketSpec;
use clap::{Args, Parser, Subcommand};
use ini::Ini;

use crate::error::{CliError, Result};

#[derive(Debug, Parser)]
#[command(
    name = "apollonian",
    version,
    about = "Apollonian gasket enumeration and center statistics"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write every circle with curvature below each T.
    Generate(Flags),
    /// Pair correlation F and its difference quotient F'.
    Paircorr(Flags),
    /// Nearest-neighbour spacing distribution H.
    Nearest(Flags),
    /// Electrostatic energy G(T).
    Energy(Flags),
    /// Circle counts against T^δ.
    Count(Flags),
    /// Expected number of neighbours within s/T.
    Visible(Flags),
    /// The full battery of experiments, one subdirectory each.
    Sweep(Flags),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Generate(_) => "generate",
            Command::Paircorr(_) => "paircorr",
            Command::Nearest(_) => "nearest",
            Command::Energy(_) => "energy",
            Command::Count(_) => "count",
            Command::Visible(_) => "visible",
            Command::Sweep(_) => "sweep",
        }
    }

    pub fn flags(&self) -> &Flags {
        match self {
            Command::Generate(f)
            | Command::Paircorr(f)
            | Command::Nearest(f)
            | Command::Energy(f)
            | Command::Count(f)
            | Command::Visible(f)
            | Command::Sweep(f) => f,
        }
    }
}

/// Every flag may also be given as `name = value` in the `--config` file,
/// using the flag's long name without dashes. Flags win.
#[derive(Debug, Clone, Default, Args)]
pub struct Flags {
    /// Key-value config file.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// First tangency angle as a multiple of π (`0.6` or `1.8/3`).
    #[arg(long)]
    pub theta1: Option<String>,
    /// Second tangency angle as a multiple of π.
    #[arg(long)]
    pub theta2: Option<String>,
    /// Single curvature bound.
    #[arg(long, conflicts_with = "t_list")]
    pub tmax: Option<f64>,
    /// Comma-separated increasing curvature bounds.
    #[arg(long)]
    pub t_list: Option<String>,
    #[arg(long)]
    pub smax: Option<f64>,
    #[arg(long)]
    pub sstep: Option<f64>,
    /// Step of the difference quotient F'.
    #[arg(long)]
    pub delta: Option<f64>,
    /// plane | halfplane | quadrant | disk:cx,cy,r | rect:x0,y0,x1,y1 (repeatable).
    #[arg(long)]
    pub region: Vec<String>,
    #[arg(long, value_name = "true|false")]
    pub include_bounding: Option<bool>,
    /// Fixed summation order for the energy.
    #[arg(long)]
    pub deterministic: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub threads: Option<usize>,
    /// Normalized radius for `visible`.
    #[arg(long)]
    pub s: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    /// Angles as multiples of π, as given.
    pub theta: (f64, f64),
    pub spec: GasketSpec,
    pub t_list: Vec<f64>,
    pub regions: Vec<Region>,
    pub s_max: f64,
    pub s_step: f64,
    pub delta: f64,
    pub include_bounding: bool,
    pub deterministic: bool,
    pub output_dir: PathBuf,
    pub threads: Option<usize>,
    pub s_visible: f64,
}

/// Default gasket: P(1.8/3 π, 3.7/3 π).
pub const DEFAULT_THETA: (f64, f64) = (1.8 / 3.0, 3.7 / 3.0);

/// Default bounds per command when neither `--tmax` nor `--t-list` is set.
pub fn default_t_list(command: &str) -> Vec<f64> {
    match command {
        "generate" => vec![100.0],
        "energy" => (1..=10).map(|i| 100.0 * i as f64).collect(),
        "count" => vec![200.0, 400.0, 800.0, 1600.0],
        "visible" => vec![250.0, 500.0, 1000.0, 2000.0],
        _ => vec![250.0, 500.0, 1000.0],
    }
}

/// `"0.6"` or `"1.8/3"`, read as a multiple of π.
pub fn parse_pi_multiple(text: &str) -> Result<f64> {
    let bad = || {
        CliError::Config(format!(
            "cannot read angle {text:?} (expected x or a/b, in units of π)"
        ))
    };
    let num = |s: &str| s.trim().parse::<f64>().map_err(|_| bad());
    let value = match text.split_once('/') {
        Some((a, b)) => num(a)? / num(b)?,
        None => num(text)?,
    };
    if value.is_finite() {
        Ok(value)
    } else {
        Err(bad())
    }
}

fn parse_t_list(text: &str) -> Result<Vec<f64>> {
    text.split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| CliError::Config(format!("cannot read bound {t:?} in t-list")))
        })
        .collect()
}

fn parse_regions(items: &[String]) -> Result<Vec<Region>> {
    items
        .iter()
        .flat_map(|s| s.split(';'))
        .filter(|s| !s.trim().is_empty())
        .map(|s| s.trim().parse::<Region>().map_err(CliError::from))
        .collect()
}

/// Values read from the config file, keyed like the flags.
#[derive(Debug, Default)]
struct FileValues(Vec<(String, String)>);

impl FileValues {
    fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        let ini = Ini::load_from_str(&text)
            .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        let mut values = Vec::new();
        for (section, props) in ini.iter() {
            if let Some(name) = section {
                return Err(CliError::Config(format!(
                    "{}: sections are not used, found [{name}]",
                    path.display()
                )));
            }
            for (k, v) in props.iter() {
                let key = k.trim().trim_start_matches("--").replace('_', "-");
                if !KNOWN_KEYS.contains(&key.as_str()) {
                    return Err(CliError::Config(format!(
                        "{}: unknown key {k:?}",
                        path.display()
                    )));
                }
                values.push((key, v.trim().to_string()));
            }
        }
        Ok(FileValues(values))
    }

    fn get(&self, key: &str) -> Option<&str> {
        self.0
            .iter()
            .rev()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    fn num(&self, key: &str) -> Result<Option<f64>> {
        self.get(key)
            .map(|v| {
                v.parse::<f64>()
                    .map_err(|_| CliError::Config(format!("{key}: cannot read {v:?}")))
            })
            .transpose()
    }

    fn boolean(&self, key: &str) -> Result<Option<bool>> {
        self.get(key)
            .map(|v| match v.to_ascii_lowercase().as_str() {
                "true" | "yes" | "1" => Ok(true),
                "false" | "no" | "0" => Ok(false),
                _ => Err(CliError::Config(format!(
                    "{key}: expected true or false, got {v:?}"
                ))),
            })
            .transpose()
    }
}

const KNOWN_KEYS: [&str; 13] = [
    "theta1",
    "theta2",
    "tmax",
    "t-list",
    "smax",
    "sstep",
    "delta",
    "region",
    "include-bounding",
    "deterministic",
    "out",
    "threads",
    "s",
];

impl ExperimentConfig {
    /// Merges flags over the config file over the command's defaults and
    /// checks the result.
    pub fn resolve(command: &str, flags: &Flags) -> Result<Self> {
        let file = match &flags.config {
            Some(path) => FileValues::load(path)?,
            None => FileValues::default(),
        };
        let angle = |flag: &Option<String>, key: &str, default: f64| -> Result<f64> {
            match flag.as_deref().or(file.get(key)) {
                Some(text) => parse_pi_multiple(text),
                None => Ok(default),
            }
        };
        let theta = (
            angle(&flags.theta1, "theta1", DEFAULT_THETA.0)?,
            angle(&flags.theta2, "theta2", DEFAULT_THETA.1)?,
        );

        let t_list = if let Some(t) = flags.tmax {
            vec![t]
        } else if let Some(list) = &flags.t_list {
            parse_t_list(list)?
        } else if let Some(list) = file.get("t-list") {
            parse_t_list(list)?
        } else if let Some(t) = file.num("tmax")? {
            vec![t]
        } else {
            default_t_list(command)
        };

        let region_items = if !flags.region.is_empty() {
            flags.region.clone()
        } else {
            file.get("region")
                .map(|r| vec![r.to_string()])
                .unwrap_or_default()
        };
        let mut regions = parse_regions(&region_items)?;
        if regions.is_empty() {
            regions.push(Region::WholePlane);
        }

        let threads = match flags.threads {
            Some(n) => Some(n),
            None => file
                .get("threads")
                .map(|v| {
                    v.parse::<usize>()
                        .map_err(|_| CliError::Config(format!("threads: cannot read {v:?}")))
                })
                .transpose()?,
        };

        let config = ExperimentConfig {
            theta,
            spec: GasketSpec::from_pi_multiples(theta.0, theta.1)?,
            t_list,
            regions,
            s_max: flags.smax.or(file.num("smax")?).unwrap_or(20.0),
            s_step: flags.sstep.or(file.num("sstep")?).unwrap_or(0.05),
            delta: flags.delta.or(file.num("delta")?).unwrap_or(0.1),
            include_bounding: match flags.include_bounding {
                Some(b) => b,
                None => file.boolean("include-bounding")?.unwrap_or(true),
            },
            deterministic: flags.deterministic || file.boolean("deterministic")?.unwrap_or(false),
            output_dir: flags
                .out
                .clone()
                .or_else(|| file.get("out").map(PathBuf::from))
                .unwrap_or_else(|| PathBuf::from("out")),
            threads,
            s_visible: flags.s.or(file.num("s")?).unwrap_or(10.0),
        };
        config.check()?;
        Ok(config)
    }

    fn check(&self) -> Result<()> {
        let fail = |msg: String| Err(CliError::Config(msg));
        if self.t_list.is_empty() {
            return fail("empty list of bounds".into());
        }
        if self.t_list.iter().any(|t| !(t.is_finite() && *t > 0.0)) {
            return fail(format!("bounds must be positive: {:?}", self.t_list));
        }
        if self.t_list.windows(2).any(|w| w[0] >= w[1]) {
            return fail(format!("bounds must be increasing: {:?}", self.t_list));
        }
        if !(self.s_max.is_finite() && self.s_max > 0.0) {
            return fail(format!("smax must be positive, got {}", self.s_max));
        }
        if !(self.s_step.is_finite() && self.s_step > 0.0 && self.s_step <= self.s_max) {
            return fail(format!("sstep must be in (0, smax], got {}", self.s_step));
        }
        if !(self.delta.is_finite() && self.delta > 0.0 && self.delta <= self.s_max) {
            return fail(format!("delta must be in (0, smax], got {}", self.delta));
        }
        let ratio = self.delta / self.s_step;
        if (ratio - ratio.round()).abs() > 1e-9 * ratio.max(1.0) {
            return fail(format!(
                "sstep {} does not divide delta {}",
                self.s_step, self.delta
            ));
        }
        if !(self.s_visible.is_finite() && self.s_visible >= 0.0) {
            return fail(format!("s must be non-negative, got {}", self.s_visible));
        }
        if self.threads == Some(0) {
            return fail("threads must be at least 1".into());
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fractions_and_decimals() {
        assert_eq!(parse_pi_multiple("0.6").unwrap(), 0.6);
        assert_eq!(parse_pi_multiple("1.8/3").unwrap(), 1.8 / 3.0);
        assert_eq!(parse_pi_multiple(" 3.5 / 4.2 ").unwrap(), 3.5 / 4.2);
        assert!(parse_pi_multiple("pi").is_err());
        assert!(parse_pi_multiple("1/0").is_err());
    }

    #[test]
    fn defaults() {
        let c = ExperimentConfig::resolve("paircorr", &Flags::default()).unwrap();
        assert_eq!(c.theta, DEFAULT_THETA);
        assert_eq!(c.t_list, vec![250.0, 500.0, 1000.0]);
        assert_eq!(c.regions, vec![Region::WholePlane]);
        assert_eq!((c.s_max, c.s_step, c.delta), (20.0, 0.05, 0.1));
        assert!(c.include_bounding && !c.deterministic);
    }

    #[test]
    fn bad_values_are_config_errors() {
        let with = |f: fn(&mut Flags)| {
            let mut flags = Flags::default();
            f(&mut flags);
            ExperimentConfig::resolve("paircorr", &flags)
                .unwrap_err()
                .exit_code()
        };
        assert_eq!(with(|f| f.t_list = Some("500,250".into())), 2);
        assert_eq!(with(|f| f.t_list = Some("0".into())), 2);
        assert_eq!(with(|f| f.sstep = Some(0.03)), 2);
        assert_eq!(with(|f| f.region = vec!["disk:0,0,-1".into()]), 2);
        assert_eq!(with(|f| f.theta1 = Some("2.5".into())), 2);
        // Coinciding tangency points are a degeneracy, not a typo.
        assert_eq!(
            with(|f| {
                f.theta1 = Some("2.5/3".into());
                f.theta2 = Some("3.5/4.2".into());
            }),
            3
        );
    }

    #[test]
    fn regions_split_on_semicolons() {
        let flags = Flags {
            region: vec!["plane;halfplane".into(), "quadrant".into()],
            ..Flags::default()
        };
        let c = ExperimentConfig::resolve("paircorr", &flags).unwrap();
        assert_eq!(
            c.regions,
            vec![
                Region::WholePlane,
                Region::HalfPlaneRePos,
                Region::FirstQuadrant
            ]
        );
    }
}
