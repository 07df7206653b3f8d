//! Surfaces and polygons named on the command line.

use std::path::Path;

use anyhow::{bail, Context};
use serde::Deserialize;

use flatgap::billiards::RationalPolygon;
use flatgap::geometry::io::read_surface;
use flatgap::geometry::{build_barrier_surface_exact, build_regular_octagon, build_square_torus, ExactReal, PlanarVector, TranslationSurface};
use flatgap::FlatError;

use crate::SurfaceArgs;

pub fn alpha(arg: &str) -> Result<ExactReal, FlatError> {
    let text = if arg.trim() == "irrational" { "1/sqrt(2)" } else { arg };
    ExactReal::parse(text)
}

pub fn surface(args: &SurfaceArgs) -> anyhow::Result<TranslationSurface> {
    match (&args.surface, &args.file) {
        (Some(_), Some(_)) => bail!(FlatError::InvalidParameter("give either --surface or --file, not both".into())),
        (None, None) => bail!(FlatError::InvalidParameter("one of --surface or --file is required".into())),
        (None, Some(path)) => Ok(read_surface(path)?),
        (Some(name), None) => match name.as_str() {
            "square-torus" | "torus" => Ok(build_square_torus()),
            "octagon" => Ok(build_regular_octagon()),
            "barrier" => {
                let a = args.alpha.as_deref().unwrap_or("irrational");
                Ok(build_barrier_surface_exact(&alpha(a)?)?)
            }
            other => bail!(FlatError::InvalidParameter(format!("unknown surface {other:?}"))),
        },
    }
}

#[derive(Deserialize)]
struct PolygonFile {
    vertices: Vec<[f64; 2]>,
    angles: Option<Vec<[u64; 2]>>,
}

fn read_polygon(path: &Path) -> anyhow::Result<RationalPolygon> {
    let text = std::fs::read_to_string(path).map_err(FlatError::from).with_context(|| format!("reading {}", path.display()))?;
    let file: PolygonFile = serde_json::from_str(&text).map_err(FlatError::from)?;
    let vertices = file.vertices.iter().map(|&[x, y]| PlanarVector::new(x, y)).collect();
    Ok(match file.angles {
        Some(a) => RationalPolygon::new(vertices, a.iter().map(|&[p, q]| (p, q)).collect())?,
        None => RationalPolygon::from_vertices(vertices)?,
    })
}

pub fn polygon(name: Option<&str>, file: Option<&Path>) -> anyhow::Result<RationalPolygon> {
    let v = PlanarVector::new;
    match (name, file) {
        (Some(_), Some(_)) => bail!(FlatError::InvalidParameter("give either --polygon or --file, not both".into())),
        (None, None) => bail!(FlatError::InvalidParameter("one of --polygon or --file is required".into())),
        (None, Some(path)) => read_polygon(path),
        (Some(name), None) => {
            let p = match name {
                "square" => RationalPolygon::new(
                    vec![v(0.0, 0.0), v(1.0, 0.0), v(1.0, 1.0), v(0.0, 1.0)],
                    vec![(1, 2); 4],
                )?,
                "octagon-triangle" => {
                    let t = (std::f64::consts::PI / 8.0).tan();
                    RationalPolygon::new(vec![v(0.0, 0.0), v(1.0, 0.0), v(1.0, t)], vec![(1, 8), (1, 2), (3, 8)])?
                }
                "equilateral" => RationalPolygon::new(
                    vec![v(0.0, 0.0), v(1.0, 0.0), v(0.5, 3f64.sqrt() / 2.0)],
                    vec![(1, 3); 3],
                )?,
                other => bail!(FlatError::InvalidParameter(format!("unknown polygon {other:?}"))),
            };
            Ok(p)
        }
    }
}
