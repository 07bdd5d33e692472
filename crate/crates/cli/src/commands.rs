use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use anyhow::{Context, Result};
use cone_min_lab::competitors::{competitor_search, sec5_bound_log, SearchPoint};
use cone_min_lab::emit::{write_csv, write_json, write_svg};
use cone_min_lab::shooting::{
    boundary_flux, find_extending, initial_slope, reconstruct_f, shoot, write_trajectory, ExitKind,
    ShootingOutcome,
};
use cone_min_lab::stability::{ricci_constant, stability_gap_ln, InstabilityCertificate};
use cone_min_lab::{
    cone_ricci, cone_sectional, density_ratio, empirical_threshold, instability_certificate,
    s_functional, scan, threshold, CompetitorReport, ConeSpace, Direction, Format, Plane, Surface,
};
use serde::Serialize;

use crate::settings::{parse_reals, Settings};

fn sink(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("creating {}", p.display()))?,
        )),
        None => Box::new(io::stdout().lock()),
    })
}

fn write_json_value<T: Serialize>(value: &T, settings: &Settings) -> Result<()> {
    let mut out = sink(settings.output.as_deref())?;
    serde_json::to_writer_pretty(&mut out, value)?;
    writeln!(out)?;
    out.flush()?;
    Ok(())
}

pub fn run_scan(settings: &Settings) -> Result<()> {
    let ns = settings.dimensions("2..6")?;
    let lambdas = settings.lambdas("0.5:1:101")?;
    let cfg = settings.scan_config()?;
    let format = settings.format()?;
    let records = scan(&ns, &lambdas, &cfg)?;
    let mut out = sink(settings.output.as_deref())?;
    match format {
        Format::Csv => write_csv(&records, &mut out)?,
        Format::Json => write_json(&records, &mut out)?,
        Format::Svg => write_svg(&records, &mut out)?,
    }
    out.flush()?;
    for &n in &ns {
        let star = threshold(n)?;
        match empirical_threshold(&records, n) {
            Some(l) => eprintln!("n = {n}: crossover {l:.6}, λ* = {star:.6}"),
            None => eprintln!("n = {n}: no crossover on the grid, λ* = {star:.6}"),
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct ShotReport {
    n: u32,
    lambda: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    h0: Option<f64>,
    #[serde(flatten, skip_serializing_if = "Option::is_none")]
    exit: Option<ExitKind>,
    #[serde(skip_serializing_if = "Option::is_none")]
    theta_error: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    steps: Option<usize>,
    /// Boundary slope and the two values of the area functional, for
    /// extending shots.
    #[serde(skip_serializing_if = "Option::is_none")]
    slope: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    flux: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    s_functional: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
}

impl ShotReport {
    fn failed(space: &ConeSpace, error: String) -> Self {
        Self {
            n: space.n(),
            lambda: space.lambda(),
            h0: None,
            exit: None,
            theta_error: None,
            steps: None,
            slope: None,
            flux: None,
            s_functional: None,
            error: Some(error),
        }
    }
}

fn shot_report(
    space: &ConeSpace,
    out: &ShootingOutcome,
    settings: &Settings,
) -> Result<ShotReport> {
    let (mut slope, mut flux, mut s) = (None, None, None);
    if out.extends() {
        let a = initial_slope(out.h0, space.lambda());
        let f = reconstruct_f(out, space)?;
        slope = Some(a);
        flux = Some(boundary_flux(a, space));
        s = Some(s_functional(&f, space, &settings.quadrature()?)?.value);
    }
    Ok(ShotReport {
        n: space.n(),
        lambda: space.lambda(),
        h0: Some(out.h0),
        exit: Some(out.kind.clone()),
        theta_error: out.theta_error,
        steps: Some(out.steps),
        slope,
        flux,
        s_functional: s,
        error: None,
    })
}

/// Shoots from `h0` when given, otherwise bisects for an extending shot.
pub fn run_shoot(settings: &Settings, h0: Option<f64>, trajectory: Option<&Path>) -> Result<()> {
    settings.require_json("shoot")?;
    let step = settings.steps()?;
    let mut reports = Vec::new();
    let mut dumps = Vec::new();
    for n in settings.dimensions("3")? {
        for lambda in settings.lambdas("0.9")? {
            let space = ConeSpace::new(n, lambda)?;
            let outcome = match h0 {
                Some(h0) => shoot(&space, h0, &step),
                None => find_extending(&space, None, 0.0, &step).map(|s| s.outcome),
            };
            match outcome {
                Ok(out) => {
                    reports.push(shot_report(&space, &out, settings)?);
                    dumps.push(out);
                }
                Err(e) => reports.push(ShotReport::failed(&space, e.to_string())),
            }
        }
    }
    if let Some(path) = trajectory {
        let mut w = sink(Some(path))?;
        for out in &dumps {
            write_trajectory(out, &mut w)?;
            writeln!(w)?;
        }
        w.flush()?;
    }
    write_json_value(&reports, settings)
}

#[derive(Serialize)]
#[serde(untagged)]
enum CompetitorEntry {
    Found(CompetitorReport),
    Missing { n: u32, lambda: f64, error: String },
}

pub fn run_competitor(settings: &Settings, point: Option<(f64, f64)>, numeric: bool) -> Result<()> {
    settings.require_json("competitor")?;
    let budget = settings.scan_config()?.decide.search_budget;
    let quad = settings.quadrature()?;
    let mut entries = Vec::new();
    for n in settings.dimensions("3")? {
        for lambda in settings.lambdas("0.9")? {
            let space = ConeSpace::new(n, lambda)?;
            let best = match point {
                Some((delta, alpha)) => {
                    let neg_ln_delta = -delta.ln();
                    let bound = sec5_bound_log(&space, neg_ln_delta, alpha)?;
                    Some(SearchPoint {
                        alpha,
                        neg_ln_delta,
                        bound,
                    })
                }
                None => competitor_search(&space, budget).best,
            };
            let Some(best) = best else {
                entries.push(CompetitorEntry::Missing {
                    n,
                    lambda,
                    error: "search budget admits no evaluation".into(),
                });
                continue;
            };
            let mut report = CompetitorReport::from_point(&space, &best);
            if numeric {
                report = report.with_numeric(&space, &quad)?;
            }
            entries.push(CompetitorEntry::Found(report));
        }
    }
    write_json_value(&entries, settings)
}

#[derive(Serialize)]
struct StabilityReport {
    lambda: f64,
    ricci_constant: f64,
    certificate: Option<InstabilityCertificate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    ln_ratio: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    gap: Option<f64>,
}

pub fn run_stability(settings: &Settings, ln_ratio: Option<f64>) -> Result<()> {
    settings.require_json("stability")?;
    let mut reports = Vec::new();
    for lambda in settings.lambdas("0.5,0.7,0.9,1")? {
        reports.push(StabilityReport {
            lambda,
            ricci_constant: ricci_constant(lambda),
            certificate: instability_certificate(lambda)?,
            ln_ratio,
            gap: ln_ratio.map(|x| stability_gap_ln(lambda, x)).transpose()?,
        });
    }
    write_json_value(&reports, settings)
}

#[derive(Serialize)]
struct CurvatureReport {
    n: u32,
    lambda: f64,
    t: f64,
    sectional_tangential: f64,
    sectional_radial: f64,
    ricci_tangential: f64,
    ricci_radial: f64,
}

pub fn run_curvature(settings: &Settings, radii: &str) -> Result<()> {
    settings.require_json("curvature")?;
    let ts = parse_reals(radii)?;
    let mut reports = Vec::new();
    for n in settings.dimensions("3")? {
        for lambda in settings.lambdas("0.9")? {
            let space = ConeSpace::new(n, lambda)?;
            for &t in &ts {
                reports.push(CurvatureReport {
                    n,
                    lambda,
                    t,
                    sectional_tangential: cone_sectional(&space, t, Plane::Tangential)?,
                    sectional_radial: cone_sectional(&space, t, Plane::Radial)?,
                    ricci_tangential: cone_ricci(&space, t, Direction::Tangential)?,
                    ricci_radial: cone_ricci(&space, t, Direction::Radial)?,
                });
            }
        }
    }
    write_json_value(&reports, settings)
}

#[derive(Serialize)]
struct DensityReport {
    surface: String,
    radii: Vec<f64>,
    ratios: Vec<f64>,
    nondecreasing: bool,
    /// Largest relative deviation from the first ratio.
    spread: f64,
}

fn density_report(
    surface: &Surface<'_>,
    name: String,
    radii: &[f64],
    settings: &Settings,
) -> Result<DensityReport> {
    let cfg = settings.quadrature()?;
    let ratios = radii
        .iter()
        .map(|&r| density_ratio(surface, r, &cfg))
        .collect::<cone_min_lab::Result<Vec<f64>>>()?;
    let tol = cfg.abs_tol.max(cfg.rel_tol);
    let nondecreasing = ratios
        .windows(2)
        .all(|w| w[1] >= w[0] - tol * w[0].abs().max(1.0));
    let spread = ratios
        .iter()
        .map(|v| (v / ratios[0] - 1.0).abs())
        .fold(0.0, f64::max);
    Ok(DensityReport {
        surface: name,
        radii: radii.to_vec(),
        ratios,
        nondecreasing,
        spread,
    })
}

/// Density ratios of the equatorial cones, or of a Euclidean catenoid when
/// a neck radius is given.
pub fn run_monotonicity(
    settings: &Settings,
    radii: &str,
    catenoid_neck: Option<f64>,
) -> Result<()> {
    settings.require_json("monotonicity")?;
    let mut radii = parse_reals(radii)?;
    anyhow::ensure!(!radii.is_empty(), "no radii given");
    radii.sort_by(f64::total_cmp);
    let mut reports = Vec::new();
    if let Some(neck) = catenoid_neck {
        let surface = Surface::EuclideanCatenoid { neck };
        reports.push(density_report(
            &surface,
            format!("catenoid neck {neck}"),
            &radii,
            settings,
        )?);
    } else {
        for n in settings.dimensions("3")? {
            for lambda in settings.lambdas("0.9")? {
                let surface = Surface::EquatorialCone {
                    space: ConeSpace::new(n, lambda)?,
                };
                let name = format!("equatorial cone n {n} lambda {lambda}");
                reports.push(density_report(&surface, name, &radii, settings)?);
            }
        }
    }
    write_json_value(&reports, settings)
}
