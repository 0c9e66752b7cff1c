//! The subcommands. Each one writes its CSVs (plus JSON sidecars) into a
//! directory and returns the paths it wrote, in a fixed order.

use std::path::{Path, PathBuf};

use apollonian::io::{fmt_num, write_circles, write_energy, write_series};
use apollonian::stats::{
    empirical_derivative, energy_with, expected_visible, nearest_spacing, pair_correlation,
    restrict, sup_distance, uniform_grid, EnergyValue, Region, StatSeries,
};
use apollonian::{count_ratio, enumerate, CircleSet, GasketSpec};
use rayon::prelude::*;

use crate::config::ExperimentConfig;
use crate::error::{CliError, Result};
use crate::output::{ensure_dir, write_atomic, Metadata};

/// The three gaskets compared in the gasket-independence experiment.
/// The middle pair is sometimes quoted as `(2.5/3, 3.5/4.2)`, but those two
/// angles are equal and the gasket degenerates; `4.2/3` is used.
pub const COMPARISON_GASKETS: [(f64, f64); 3] = [
    (1.1 / 3.0, 3.5 / 3.0),
    (2.5 / 3.0, 4.2 / 3.0),
    (2.9 / 3.0, 3.2 / 3.0),
];

fn t_label(t: f64) -> String {
    fmt_num(t)
}

fn csv_err(e: csv::Error) -> Box<dyn std::error::Error> {
    Box::new(e)
}

/// Passes a series through its 12-digit CSV form, so later arithmetic on it
/// sees exactly the numbers a reader of the file sees.
fn as_written(mut series: StatSeries) -> StatSeries {
    let round = |x: &mut f64| *x = fmt_num(*x).parse().expect("formatted number parses");
    series.s_grid.iter_mut().for_each(round);
    series.values.iter_mut().for_each(round);
    series
}

fn write_checked_series(path: &Path, series: &StatSeries) -> Result<()> {
    series.check()?;
    write_atomic(path, |buf| write_series(buf, series).map_err(csv_err))
}

fn enumerate_all(
    spec: &GasketSpec,
    bounds: &[f64],
    include_bounding: bool,
) -> Result<Vec<CircleSet>> {
    Ok(bounds
        .par_iter()
        .map(|&t| enumerate(spec, t, include_bounding))
        .collect::<apollonian::Result<Vec<_>>>()?)
}

pub fn generate(config: &ExperimentConfig, dir: &Path) -> Result<Vec<PathBuf>> {
    ensure_dir(dir)?;
    let sets = enumerate_all(&config.spec, &config.t_list, config.include_bounding)?;
    let mut written = Vec::new();
    for set in &sets {
        let path = dir.join(format!("circles_T{}.csv", t_label(set.bound())));
        write_atomic(&path, |buf| write_circles(buf, set).map_err(csv_err))?;
        let meta = Metadata::new("generate", config, vec![set.bound()]).n_points(set.len());
        written.push(path.clone());
        written.push(meta.write_beside(&path)?);
    }
    Ok(written)
}

/// One series to compute: a gasket, a bound, and a region.
struct Case {
    tag: Option<String>,
    theta: (f64, f64),
    spec: GasketSpec,
    bound: f64,
    region: Region,
}

impl Case {
    fn stem(&self, prefix: &str) -> String {
        let mut s = format!("{prefix}_");
        if let Some(tag) = &self.tag {
            s.push_str(tag);
            s.push('_');
        }
        s.push_str(&format!(
            "T{}_{}",
            t_label(self.bound),
            self.region.file_label()
        ));
        s
    }
}

fn cases_for(config: &ExperimentConfig) -> Vec<Case> {
    let mut cases = Vec::new();
    for &bound in &config.t_list {
        for &region in &config.regions {
            cases.push(Case {
                tag: None,
                theta: config.theta,
                spec: config.spec,
                bound,
                region,
            });
        }
    }
    cases
}

fn case_points(case: &Case, include_bounding: bool) -> Result<Vec<apollonian::PlanePoint>> {
    let set = enumerate(&case.spec, case.bound, include_bounding)?;
    Ok(restrict(&set, &case.region))
}

pub fn paircorr(config: &ExperimentConfig, dir: &Path) -> Result<Vec<PathBuf>> {
    paircorr_cases(config, &cases_for(config), dir)
}

fn paircorr_cases(config: &ExperimentConfig, cases: &[Case], dir: &Path) -> Result<Vec<PathBuf>> {
    ensure_dir(dir)?;
    let grid = uniform_grid(config.s_max, config.s_step)?;
    let computed: Vec<(StatSeries, StatSeries)> = cases
        .par_iter()
        .map(|case| -> Result<_> {
            let points = case_points(case, config.include_bounding)?;
            let f = pair_correlation(&points, case.bound, &grid)?.with_region(case.region);
            let f = as_written(f);
            let df = empirical_derivative(&f, config.delta)?;
            Ok((f, df))
        })
        .collect::<Result<_>>()?;

    let mut written = Vec::new();
    for (case, (f, df)) in cases.iter().zip(&computed) {
        for (prefix, series) in [("F", f), ("dF", df)] {
            let path = dir.join(format!("{}.csv", case.stem(prefix)));
            write_checked_series(&path, series)?;
            let mut meta = Metadata::new("paircorr", config, vec![case.bound])
                .region(case.region)
                .n_points(series.n_points);
            meta.theta1 = case.theta.0;
            meta.theta2 = case.theta.1;
            written.push(path.clone());
            written.push(meta.write_beside(&path)?);
        }
    }
    if cases.len() > 1 {
        let labeled: Vec<(String, &StatSeries)> = cases
            .iter()
            .zip(&computed)
            .map(|(c, (f, _))| (c.stem("F"), f))
            .collect();
        written.push(write_summary(
            &dir.join("summary.csv"),
            &labeled,
            config.s_max,
        )?);
    }
    Ok(written)
}

/// Pairwise sup-norm distances between series on `[0, s_max]`.
fn write_summary(path: &Path, series: &[(String, &StatSeries)], s_max: f64) -> Result<PathBuf> {
    let mut rows = Vec::new();
    for i in 0..series.len() {
        for j in (i + 1)..series.len() {
            let d = sup_distance(series[i].1, series[j].1, 0.0, s_max)?;
            rows.push([series[i].0.clone(), series[j].0.clone(), fmt_num(d)]);
        }
    }
    write_atomic(path, |buf| {
        let mut w = csv::Writer::from_writer(buf);
        w.write_record(["a", "b", "sup_norm"])?;
        for r in &rows {
            w.write_record(r)?;
        }
        w.flush()?;
        Ok(())
    })?;
    Ok(path.to_path_buf())
}

pub fn nearest(config: &ExperimentConfig, dir: &Path) -> Result<Vec<PathBuf>> {
    ensure_dir(dir)?;
    let grid = uniform_grid(config.s_max, config.s_step)?;
    let cases = cases_for(config);
    let computed: Vec<StatSeries> = cases
        .par_iter()
        .map(|case| -> Result<_> {
            let points = case_points(case, config.include_bounding)?;
            Ok(nearest_spacing(&points, case.bound, &grid)?.with_region(case.region))
        })
        .collect::<Result<_>>()?;
    let mut written = Vec::new();
    for (case, h) in cases.iter().zip(&computed) {
        let path = dir.join(format!("{}.csv", case.stem("H")));
        write_checked_series(&path, h)?;
        let meta = Metadata::new("nearest", config, vec![case.bound])
            .region(case.region)
            .n_points(h.n_points);
        written.push(path.clone());
        written.push(meta.write_beside(&path)?);
    }
    Ok(written)
}

pub fn energy(config: &ExperimentConfig, dir: &Path) -> Result<Vec<PathBuf>> {
    ensure_dir(dir)?;
    let sets = enumerate_all(&config.spec, &config.t_list, config.include_bounding)?;
    let values: Vec<EnergyValue> = sets
        .iter()
        .map(|set| energy_with(&set.centers(), set.bound(), config.deterministic))
        .collect::<apollonian::Result<_>>()?;
    if let Some(bad) = values.iter().find(|v| !(v.value > 0.0)) {
        return Err(CliError::Numeric(apollonian::GasketError::SeriesViolation(
            format!("energy {} at T = {} is not positive", bad.value, bad.bound),
        )));
    }
    let path = dir.join("energy.csv");
    write_atomic(&path, |buf| write_energy(buf, &values).map_err(csv_err))?;
    let meta = Metadata::new("energy", config, config.t_list.clone());
    Ok(vec![path.clone(), meta.write_beside(&path)?])
}

pub fn count(config: &ExperimentConfig, dir: &Path) -> Result<Vec<PathBuf>> {
    ensure_dir(dir)?;
    let sets = enumerate_all(&config.spec, &config.t_list, config.include_bounding)?;
    let ratios = sets
        .iter()
        .map(count_ratio)
        .collect::<apollonian::Result<Vec<_>>>()?;
    let path = dir.join("count.csv");
    write_atomic(&path, |buf| {
        let mut w = csv::Writer::from_writer(buf);
        w.write_record(["T", "N", "ratio", "rel_change"])?;
        for (i, r) in ratios.iter().enumerate() {
            let change = match i {
                0 => String::new(),
                _ => fmt_num((r.ratio - ratios[i - 1].ratio).abs() / ratios[i - 1].ratio),
            };
            w.write_record([
                fmt_num(r.bound),
                r.count.to_string(),
                fmt_num(r.ratio),
                change,
            ])?;
        }
        w.flush()?;
        Ok(())
    })?;
    let meta = Metadata::new("count", config, config.t_list.clone());
    Ok(vec![path.clone(), meta.write_beside(&path)?])
}

pub fn visible(config: &ExperimentConfig, dir: &Path) -> Result<Vec<PathBuf>> {
    ensure_dir(dir)?;
    let s = config.s_visible;
    let sets = enumerate_all(&config.spec, &config.t_list, config.include_bounding)?;
    let values = sets
        .par_iter()
        .map(|set| expected_visible(&set.centers(), set.bound(), s))
        .collect::<apollonian::Result<Vec<f64>>>()?;
    let path = dir.join("visible.csv");
    write_atomic(&path, |buf| {
        let mut w = csv::Writer::from_writer(buf);
        w.write_record(["T", "s", "visible"])?;
        for (set, v) in sets.iter().zip(&values) {
            w.write_record([fmt_num(set.bound()), fmt_num(s), fmt_num(*v)])?;
        }
        w.flush()?;
        Ok(())
    })?;
    for (set, v) in sets.iter().zip(&values) {
        println!(
            "T = {}: {} neighbours within {}/T",
            fmt_num(set.bound()),
            fmt_num(*v),
            fmt_num(s)
        );
    }
    let meta = Metadata::new("visible", config, config.t_list.clone()).s(s);
    Ok(vec![path.clone(), meta.write_beside(&path)?])
}

/// The full battery, one subdirectory per experiment. Bounds and regions are
/// fixed by the battery; the gasket, grid, and flags come from `config`.
pub fn sweep(config: &ExperimentConfig, dir: &Path) -> Result<Vec<PathBuf>> {
    let with = |t_list: Vec<f64>, regions: Vec<Region>| ExperimentConfig {
        t_list,
        regions,
        ..config.clone()
    };
    let plane = || vec![Region::WholePlane];
    let mut written = Vec::new();
    written.extend(paircorr(
        &with(vec![250.0, 500.0, 1000.0], plane()),
        &dir.join("pair_bounds"),
    )?);
    written.extend(paircorr(
        &with(
            vec![1000.0],
            vec![
                Region::WholePlane,
                Region::HalfPlaneRePos,
                Region::FirstQuadrant,
            ],
        ),
        &dir.join("pair_regions"),
    )?);
    written.extend(energy(
        &with(crate::config::default_t_list("energy"), plane()),
        &dir.join("energy"),
    )?);

    let cases = COMPARISON_GASKETS
        .iter()
        .enumerate()
        .map(|(i, &theta)| {
            Ok(Case {
                tag: Some(format!("g{}", i + 1)),
                theta,
                spec: GasketSpec::from_pi_multiples(theta.0, theta.1)?,
                bound: 1000.0,
                region: Region::WholePlane,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    written.extend(paircorr_cases(config, &cases, &dir.join("pair_gaskets"))?);

    written.extend(nearest(
        &with(vec![250.0, 500.0, 1000.0], plane()),
        &dir.join("nearest"),
    )?);
    written.extend(count(
        &with(crate::config::default_t_list("count"), plane()),
        &dir.join("count"),
    )?);
    written.extend(visible(
        &with(crate::config::default_t_list("visible"), plane()),
        &dir.join("visible"),
    )?);
    Ok(written)
}
