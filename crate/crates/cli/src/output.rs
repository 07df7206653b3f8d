//! Report files: a JSON record with config and tolerances, CSV tables, a
//! fixed-format text summary and an optional SVG bar chart.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::Context;
use serde::Serialize;

use flatgap::enumeration::engine::RADIUS_SLACK;
use flatgap::geometry::exact::{ANGLE_TOLERANCE, KEY_RESOLUTION};

#[derive(Serialize)]
pub struct Tolerances {
    pub radius_slack: f64,
    pub angle_tolerance: f64,
    pub key_resolution: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { radius_slack: RADIUS_SLACK, angle_tolerance: ANGLE_TOLERANCE, key_resolution: KEY_RESOLUTION }
    }
}

#[derive(Serialize)]
pub struct Report<'a, C: Serialize, R: Serialize> {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'a str,
    pub config: &'a C,
    pub tolerances: Tolerances,
    pub results: R,
}

pub struct OutDir {
    dir: PathBuf,
}

impl OutDir {
    pub fn create(dir: &Path) -> anyhow::Result<Self> {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        Ok(OutDir { dir: dir.to_path_buf() })
    }

    pub fn path(&self, name: &str) -> PathBuf {
        self.dir.join(name)
    }

    pub fn report<C: Serialize, R: Serialize>(&self, command: &str, config: &C, results: R) -> anyhow::Result<()> {
        let report = Report {
            tool: "flatgap",
            version: flatgap::VERSION,
            command,
            config,
            tolerances: Tolerances::default(),
            results,
        };
        let text = serde_json::to_string_pretty(&report)?;
        self.text("report.json", &(text + "\n"))
    }

    pub fn text(&self, name: &str, body: &str) -> anyhow::Result<()> {
        let path = self.path(name);
        fs::write(&path, body).with_context(|| format!("writing {}", path.display()))
    }

    pub fn csv<T: Serialize>(&self, name: &str, rows: &[T]) -> anyhow::Result<()> {
        let path = self.path(name);
        let mut w = csv::Writer::from_path(&path).with_context(|| format!("writing {}", path.display()))?;
        for r in rows {
            w.serialize(r)?;
        }
        w.flush()?;
        Ok(())
    }

    /// Print the summary and keep a copy as `summary.txt`.
    pub fn summary(&self, lines: &[String]) -> anyhow::Result<()> {
        let body = lines.join("\n") + "\n";
        print!("{body}");
        self.text("summary.txt", &body)
    }
}

/// A plain bar chart of `values` labelled by index.
pub fn bar_chart_svg(title: &str, values: &[f64]) -> String {
    let (w, h, pad) = (640.0, 360.0, 40.0);
    let max = values.iter().cloned().fold(0.0, f64::max).max(f64::MIN_POSITIVE);
    let n = values.len().max(1) as f64;
    let bw = (w - 2.0 * pad) / n;
    let mut s = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">\n\
         <rect width=\"{w}\" height=\"{h}\" fill=\"white\"/>\n\
         <text x=\"{pad}\" y=\"24\" font-family=\"sans-serif\" font-size=\"14\">{title}</text>\n"
    );
    for (i, &v) in values.iter().enumerate() {
        let bh = (h - 2.0 * pad) * v / max;
        let x = pad + bw * i as f64;
        let y = h - pad - bh;
        s += &format!(
            "<rect x=\"{x:.2}\" y=\"{y:.2}\" width=\"{:.2}\" height=\"{bh:.2}\" fill=\"steelblue\"/>\n\
             <text x=\"{:.2}\" y=\"{:.2}\" font-family=\"sans-serif\" font-size=\"10\" text-anchor=\"middle\">{i}</text>\n",
            (bw - 2.0).max(1.0),
            x + bw / 2.0,
            h - pad + 14.0
        );
    }
    s + "</svg>\n"
}
