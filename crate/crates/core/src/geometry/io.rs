//! JSON surface files.
//!
//! ```json
//! {"polygons": [[[0,0],[1,0],[1,1],[0,1]]],
//!  "gluings": [[[0,0],[0,2]], [[0,1],[0,3]]],
//!  "labels": [["z", null, null, null]]}
//! ```
//! Coordinates are JSON numbers or strings holding exact values such as
//! `"3/4"` or `"sqrt(2)/2"`.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::exact::ExactReal;
use super::surface::{EdgeRef, TranslationSurface};
use super::vector::PlanarVector;
use crate::error::{FlatError, Result};

#[derive(Debug, Serialize, Deserialize)]
struct SurfaceFile {
    polygons: Vec<Vec<[Value; 2]>>,
    gluings: Vec<[[usize; 2]; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<Vec<Option<String>>>>,
}

fn coordinate(v: &Value) -> Result<ExactReal> {
    match v {
        Value::Number(n) => ExactReal::parse(&n.to_string()),
        Value::String(s) => ExactReal::parse(s),
        other => Err(FlatError::Parse(format!("coordinate must be a number or string, got {other}"))),
    }
}

pub fn parse_surface(text: &str) -> Result<TranslationSurface> {
    let file: SurfaceFile = serde_json::from_str(text)?;
    let gluings: Vec<(EdgeRef, EdgeRef)> = file.gluings.iter().map(|[a, b]| ((a[0], a[1]), (b[0], b[1]))).collect();
    let exact = file
        .polygons
        .iter()
        .map(|p| p.iter().map(|[x, y]| Ok((coordinate(x)?, coordinate(y)?))).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    match TranslationSurface::from_exact(&exact, gluings.clone(), file.labels.clone()) {
        Ok(s) => Ok(s),
        // Values that do not share one quadratic field still work in floating point.
        Err(FlatError::MixedRadicands(..) | FlatError::Overflow) => {
            let polys = exact
                .iter()
                .map(|p| p.iter().map(|(x, y)| PlanarVector::new(x.to_f64(), y.to_f64())).collect())
                .collect();
            Ok(TranslationSurface::from_parts(polys, gluings, file.labels))
        }
        Err(e) => Err(e),
    }
}

pub fn read_surface(path: &std::path::Path) -> Result<TranslationSurface> {
    parse_surface(&std::fs::read_to_string(path)?)
}

/// Serialize; exact coordinates are written as strings.
pub fn surface_to_json(s: &TranslationSurface) -> Result<String> {
    let polygons = match s.exact() {
        Some(ex) => ex
            .polygons
            .iter()
            .map(|p| {
                p.iter()
                    .map(|v| [Value::String(ex.field.decode(v.x).to_string()), Value::String(ex.field.decode(v.y).to_string())])
                    .collect()
            })
            .collect(),
        None => s
            .polygons()
            .iter()
            .map(|p| p.iter().map(|v| [Value::from(v.x), Value::from(v.y)]).collect())
            .collect(),
    };
    let file = SurfaceFile {
        polygons,
        gluings: s.gluings().iter().map(|&(a, b)| [[a.0, a.1], [b.0, b.1]]).collect(),
        labels: s.labels().iter().any(|l| l.iter().any(Option::is_some)).then(|| s.labels().to_vec()),
    };
    Ok(serde_json::to_string_pretty(&file)?)
}
