use std::f64::consts::PI;
use std::fs::File;

use serde::Serialize;

use flatgap::billiards::{reflection_group_order, RationalPolygon};
use flatgap::enumeration::{direction_set, enumerate_cylinders, enumerate_saddle_connections, EnumerationLimits, HolonomySet};
use flatgap::gaps::{gap_report, theta_level_measure, GapReport, LevelMeasure};
use flatgap::geometry::{build_barrier_surface_exact, TranslationSurface};
use flatgap::homogeneous::{count_distribution, covering_torus};
use flatgap::FlatError;

use crate::output::{bar_chart_svg, OutDir};
use crate::{schedule, sources};
use crate::{BilliardArgs, CapArgs, CompareArgs, EnumerateArgs, GapsArgs, MonteCarloArgs, SweepArgs};

fn limits(c: &CapArgs) -> EnumerationLimits {
    EnumerationLimits { max_triangles: c.cap_triangles, max_connections: c.cap_connections }
}

fn largest(radii: &[f64]) -> f64 {
    *radii.last().expect("schedules are nonempty")
}

fn surface_line(s: &TranslationSurface) -> anyhow::Result<String> {
    let stratum = s.stratum()?;
    Ok(format!("surface    polygons={} area={:.12} genus={} stratum={}", s.polygons().len(), s.area(), stratum.genus, stratum))
}

pub fn enumerate(a: &EnumerateArgs) -> anyhow::Result<()> {
    let s = sources::surface(&a.surface)?;
    let r = largest(&schedule::radii(&a.r)?);
    let set = enumerate_saddle_connections(&s, r, &limits(&a.caps))?;
    let out = OutDir::create(&a.out.out)?;
    set.write_csv(File::create(out.path("holonomy.csv")).map_err(FlatError::from)?)?;
    let dirs = direction_set(&set);
    let mut lines = vec![
        surface_line(&s)?,
        format!("radius     {r}"),
        format!("N          {}", dirs.total_count()),
        format!("N_distinct {}", dirs.distinct_count()),
        format!("max_mult   {}", dirs.max_multiplicity()),
    ];
    #[derive(Serialize)]
    struct Results {
        count: usize,
        distinct_directions: usize,
        max_multiplicity: usize,
        cylinders: Option<usize>,
    }
    let mut cylinders = None;
    if a.cylinders {
        let cyls = enumerate_cylinders(&s, r, &limits(&a.caps))?;
        let rows: Vec<CylinderRow> = cyls
            .cylinders
            .iter()
            .map(|c| CylinderRow {
                x: c.core_holonomy.x,
                y: c.core_holonomy.y,
                length: c.length(),
                width: c.width,
                area: c.area,
                direction: c.direction,
                boundary_connections: c.boundary_connections,
            })
            .collect();
        out.csv("cylinders.csv", &rows)?;
        lines.push(format!("cylinders  {} (undecomposed directions {})", cyls.len(), cyls.undecomposed));
        cylinders = Some(cyls.len());
    }
    out.report(
        "enumerate",
        a,
        Results {
            count: set.len(),
            distinct_directions: dirs.distinct_count(),
            max_multiplicity: dirs.max_multiplicity(),
            cylinders,
        },
    )?;
    out.summary(&lines)
}

#[derive(Serialize)]
struct CylinderRow {
    x: f64,
    y: f64,
    length: f64,
    width: f64,
    area: f64,
    direction: f64,
    boundary_connections: usize,
}

#[derive(Serialize)]
struct GapRow {
    radius: f64,
    distinct: usize,
    total: usize,
    gamma: f64,
    scaled_gamma: f64,
    eps: f64,
    small_gap_fraction: f64,
}

fn gap_rows(reports: &[GapReport], eps: &[f64]) -> Vec<GapRow> {
    reports
        .iter()
        .flat_map(|g| {
            eps.iter().map(move |&e| GapRow {
                radius: g.radius,
                distinct: g.distinct,
                total: g.total,
                gamma: g.gamma,
                scaled_gamma: g.scaled_gamma,
                eps: e,
                small_gap_fraction: g.small_gap_fraction(e),
            })
        })
        .collect()
}

fn gap_series(set: &HolonomySet, radii: &[f64]) -> anyhow::Result<Vec<GapReport>> {
    radii.iter().map(|&r| Ok(gap_report(&direction_set(&set.restrict(r)), r)?)).collect()
}

#[derive(Serialize)]
struct SeriesEntry {
    radius: f64,
    distinct: usize,
    total: usize,
    gamma: f64,
    scaled_gamma: f64,
    small_gap_fractions: Vec<(f64, f64)>,
}

fn series_entries(reports: &[GapReport], eps: &[f64]) -> Vec<SeriesEntry> {
    reports
        .iter()
        .map(|g| SeriesEntry {
            radius: g.radius,
            distinct: g.distinct,
            total: g.total,
            gamma: g.gamma,
            scaled_gamma: g.scaled_gamma,
            small_gap_fractions: eps.iter().map(|&e| (e, g.small_gap_fraction(e))).collect(),
        })
        .collect()
}

fn series_lines(reports: &[GapReport]) -> Vec<String> {
    let mut lines = vec![format!("{:>10} {:>10} {:>10} {:>22}", "R", "N", "N_dist", "R^2*gamma")];
    lines.extend(reports.iter().map(|g| format!("{:>10} {:>10} {:>10} {:>22.15e}", g.radius, g.total, g.distinct, g.scaled_gamma)));
    lines
}

pub fn gaps(a: &GapsArgs) -> anyhow::Result<()> {
    let s = sources::surface(&a.surface)?;
    let radii = schedule::radii(&a.r)?;
    let eps = schedule::list(&a.eps)?;
    let set = enumerate_saddle_connections(&s, largest(&radii), &limits(&a.caps))?;
    let reports = gap_series(&set, &radii)?;
    let out = OutDir::create(&a.out.out)?;
    out.csv("gaps.csv", &gap_rows(&reports, &eps))?;
    out.report("gaps", a, series_entries(&reports, &eps))?;
    let mut lines = vec![surface_line(&s)?];
    lines.extend(series_lines(&reports));
    lines.push(format!("torus_bound 3/pi^2 = {:.15e}", 3.0 / (PI * PI)));
    out.summary(&lines)
}

#[derive(Serialize)]
struct LevelRow {
    radius: f64,
    sigma: f64,
    c: f64,
    k: usize,
    measure: f64,
    probability: f64,
}

fn level_rows(m: &LevelMeasure) -> Vec<LevelRow> {
    (0..m.measure.len())
        .map(|k| LevelRow { radius: m.radius, sigma: m.sigma, c: m.c, k, measure: m.measure_of(k), probability: m.probability(k) })
        .collect()
}

pub fn sweep(a: &SweepArgs) -> anyhow::Result<()> {
    let s = sources::surface(&a.surface)?;
    let radii = schedule::radii(&a.r)?;
    let sigmas = schedule::list(&a.sigma)?;
    let set = enumerate_saddle_connections(&s, largest(&radii), &limits(&a.caps))?;
    let mut measures = Vec::new();
    for &r in &radii {
        let sub = set.restrict(r);
        for &sigma in &sigmas {
            measures.push(theta_level_measure(&sub, r, sigma, a.c));
        }
    }
    let out = OutDir::create(&a.out.out)?;
    let rows: Vec<LevelRow> = measures.iter().flat_map(level_rows).collect();
    out.csv("level_measure.csv", &rows)?;
    if a.svg {
        if let Some(m) = measures.last() {
            let probs: Vec<f64> = (0..m.measure.len()).map(|k| m.probability(k)).collect();
            out.text("level_measure.svg", &bar_chart_svg(&format!("level measures R={} sigma={} c={}", m.radius, m.sigma, m.c), &probs))?;
        }
    }
    out.report("sweep", a, &measures)?;
    let mut lines = vec![surface_line(&s)?, format!("{:>10} {:>8} {:>4} {:>22}", "R", "sigma", "k", "lambda/2pi")];
    for m in &measures {
        for k in 0..m.measure.len() {
            lines.push(format!("{:>10} {:>8} {:>4} {:>22.15e}", m.radius, m.sigma, k, m.probability(k)));
        }
    }
    out.summary(&lines)
}

pub fn montecarlo(a: &MonteCarloArgs) -> anyhow::Result<()> {
    let trials = schedule::trials(&a.trials)?;
    let sigmas = schedule::list(&a.sigma)?;
    let ks = schedule::counts(&a.k)?;
    let mut estimates = Vec::new();
    for &sigma in &sigmas {
        let d = count_distribution(a.c, sigma, trials, a.seed, a.covolume, a.ymax)?;
        estimates.extend(ks.iter().map(|&k| d.estimate(k)));
    }
    let out = OutDir::create(&a.out.out)?;
    out.csv("pk.csv", &estimates)?;
    out.text("pk.json", &(serde_json::to_string_pretty(&estimates)? + "\n"))?;
    out.report("montecarlo", a, &estimates)?;
    let mut lines = vec![format!("{:>8} {:>4} {:>22} {:>22}", "sigma", "k", "estimate", "stderr")];
    lines.extend(estimates.iter().map(|e| format!("{:>8} {:>4} {:>22.15e} {:>22.15e}", e.sigma, e.k, e.estimate, e.stderr)));
    lines.push(format!("trials {trials} seed {} truncation_mass {:.3e}", a.seed, flatgap::homogeneous::truncation_mass(a.ymax)));
    out.summary(&lines)
}

pub fn billiard(a: &BilliardArgs) -> anyhow::Result<()> {
    let p: RationalPolygon = sources::polygon(a.polygon.as_deref(), a.file.as_deref())?;
    let radii = schedule::radii(&a.r)?;
    let eps = schedule::list(&a.eps)?;
    let surface = p.unfold()?;
    let set = enumerate_saddle_connections(&surface, largest(&radii), &limits(&a.caps))?;
    let reports = gap_series(&set, &radii)?;
    let out = OutDir::create(&a.out.out)?;
    out.csv("gaps.csv", &gap_rows(&reports, &eps))?;
    out.text("unfolded.json", &(flatgap::geometry::io::surface_to_json(&surface)? + "\n"))?;
    #[derive(Serialize)]
    struct Results {
        group_order: u64,
        angle_fractions: Vec<(u64, u64)>,
        series: Vec<SeriesEntry>,
    }
    out.report(
        "billiard",
        a,
        Results {
            group_order: reflection_group_order(&p),
            angle_fractions: p.angle_fractions().to_vec(),
            series: series_entries(&reports, &eps),
        },
    )?;
    let mut lines = vec![format!("group_order {}", reflection_group_order(&p)), surface_line(&surface)?];
    lines.extend(series_lines(&reports));
    out.summary(&lines)
}

#[derive(Serialize)]
struct CompareRow {
    k: usize,
    sweep: f64,
    montecarlo: f64,
    stderr: f64,
    discrepancy: f64,
    tolerance: f64,
    within: bool,
}

pub fn compare(a: &CompareArgs) -> anyhow::Result<()> {
    let r = largest(&schedule::radii(&a.r)?);
    let ks = schedule::counts(&a.k)?;
    let trials = schedule::trials(&a.trials)?;
    let s = build_barrier_surface_exact(&sources::alpha(&a.alpha)?)?;
    let lim = limits(&a.caps);
    let torus = covering_torus(&s, &lim)?;
    let set = enumerate_saddle_connections(&s, r, &lim)?;
    let lhs = theta_level_measure(&set, r, a.sigma, a.c);
    let rhs = count_distribution(a.c, a.sigma, trials, a.seed, torus.covolume, a.ymax)?;
    let rows: Vec<CompareRow> = ks
        .iter()
        .map(|&k| {
            let e = rhs.estimate(k);
            let sweep = lhs.probability(k);
            let tolerance = 3.0 * e.stderr + a.slack;
            let discrepancy = (sweep - e.estimate).abs();
            CompareRow { k, sweep, montecarlo: e.estimate, stderr: e.stderr, discrepancy, tolerance, within: discrepancy <= tolerance }
        })
        .collect();
    let out = OutDir::create(&a.out.out)?;
    out.csv("compare.csv", &rows)?;
    #[derive(Serialize)]
    struct Results<'a> {
        covolume: f64,
        lattice_basis: [[f64; 2]; 2],
        translate: [f64; 2],
        truncation_mass: f64,
        rows: &'a [CompareRow],
    }
    out.report(
        "compare",
        a,
        Results {
            covolume: torus.covolume,
            lattice_basis: [[torus.basis[0].x, torus.basis[0].y], [torus.basis[1].x, torus.basis[1].y]],
            translate: [torus.translate.x, torus.translate.y],
            truncation_mass: rhs.truncation_mass,
            rows: &rows,
        },
    )?;
    let mut lines = vec![
        surface_line(&s)?,
        format!("radius {r} sigma {} c {} trials {trials} seed {}", a.sigma, a.c, a.seed),
        format!("{:>4} {:>22} {:>22} {:>22} {:>6}", "k", "sweep", "montecarlo", "discrepancy", "ok"),
    ];
    lines.extend(
        rows.iter().map(|x| format!("{:>4} {:>22.15e} {:>22.15e} {:>22.15e} {:>6}", x.k, x.sweep, x.montecarlo, x.discrepancy, x.within)),
    );
    out.summary(&lines)
}
