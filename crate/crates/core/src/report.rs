//! Output helpers: header blocks that echo the run configuration, CSV
//! tables, JSON reports and a small SVG line chart.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde::Serialize;

use crate::error::Result;
use crate::numeric::fmt_f64;

pub const ARTIFACT: &str = env!("CARGO_PKG_NAME");
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Header carried by every output file.
#[derive(Clone, Debug, Serialize)]
pub struct Header<C: Serialize> {
    pub artifact: &'static str,
    pub version: &'static str,
    pub config: C,
}

impl<C: Serialize> Header<C> {
    pub fn new(config: C) -> Self {
        Header {
            artifact: ARTIFACT,
            version: VERSION,
            config,
        }
    }

    /// Two `#` comment lines: artifact and version, then the config as
    /// compact JSON.
    pub fn comment_block(&self) -> Result<String> {
        Ok(format!(
            "# {} {}\n# config: {}\n",
            self.artifact,
            self.version,
            serde_json::to_string(&self.config)?
        ))
    }
}

/// A CSV table assembled in memory.
#[derive(Clone, Debug, Default)]
pub struct CsvTable {
    columns: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl CsvTable {
    pub fn new<S: AsRef<str>>(columns: &[S]) -> Self {
        CsvTable {
            columns: columns.iter().map(|c| c.as_ref().to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn render<C: Serialize>(&self, header: &Header<C>) -> Result<String> {
        let mut out = header.comment_block()?;
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.join(","));
            out.push('\n');
        }
        Ok(out)
    }
}

/// Shorthand for a float cell.
pub fn cell(v: f64) -> String {
    fmt_f64(v)
}

#[derive(Serialize)]
struct Wrapped<'a, C: Serialize, B: Serialize> {
    header: &'a Header<C>,
    #[serde(flatten)]
    body: &'a B,
}

/// Pretty JSON with a top-level `header` field next to the body's fields.
pub fn render_json<C: Serialize, B: Serialize>(header: &Header<C>, body: &B) -> Result<String> {
    let mut s = serde_json::to_string_pretty(&Wrapped { header, body })?;
    s.push('\n');
    Ok(s)
}

/// Writes `contents` to `path` through a temporary file in the same
/// directory, so readers never see a partial file.
pub fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let tmp = path.with_extension(format!(
        "{}.tmp",
        path.extension().and_then(|e| e.to_str()).unwrap_or("")
    ));
    fs::write(&tmp, contents)?;
    fs::rename(&tmp, path)?;
    Ok(())
}

/// A self-contained SVG line chart of one series. Non-finite points are
/// dropped.
pub fn svg_line_chart(title: &str, x_label: &str, y_label: &str, points: &[(f64, f64)]) -> String {
    const W: f64 = 640.0;
    const H: f64 = 400.0;
    const PAD: f64 = 56.0;
    let pts: Vec<(f64, f64)> = points
        .iter()
        .copied()
        .filter(|(x, y)| x.is_finite() && y.is_finite())
        .collect();
    let (mut x0, mut x1, mut y0, mut y1) = (
        f64::INFINITY,
        f64::NEG_INFINITY,
        f64::INFINITY,
        f64::NEG_INFINITY,
    );
    for &(x, y) in &pts {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    if pts.is_empty() {
        (x0, x1, y0, y1) = (0.0, 1.0, 0.0, 1.0);
    }
    if x1 == x0 {
        x1 = x0 + 1.0;
    }
    if y1 == y0 {
        y1 = y0 + 1.0;
    }
    let sx = |x: f64| PAD + (x - x0) / (x1 - x0) * (W - 2.0 * PAD);
    let sy = |y: f64| H - PAD - (y - y0) / (y1 - y0) * (H - 2.0 * PAD);
    let escape = |s: &str| {
        s.replace('&', "&amp;")
            .replace('<', "&lt;")
            .replace('>', "&gt;")
    };

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(svg, r#"<rect width="{W}" height="{H}" fill="white"/>"#);
    let _ = writeln!(
        svg,
        r#"<text x="{}" y="20" text-anchor="middle" font-size="14">{}</text>"#,
        W / 2.0,
        escape(title)
    );
    let _ = writeln!(
        svg,
        r#"<path d="M{PAD} {PAD} V{} H{}" fill="none" stroke="black"/>"#,
        H - PAD,
        W - PAD
    );
    let _ = writeln!(
        svg,
        r#"<text x="{}" y="{}" text-anchor="middle">{}</text>"#,
        W / 2.0,
        H - 12.0,
        escape(x_label)
    );
    let _ = writeln!(
        svg,
        r#"<text x="14" y="{}" text-anchor="middle" transform="rotate(-90 14 {})">{}</text>"#,
        H / 2.0,
        H / 2.0,
        escape(y_label)
    );
    for (v, x, y, anchor) in [
        (x0, sx(x0), H - PAD + 16.0, "start"),
        (x1, sx(x1), H - PAD + 16.0, "end"),
    ] {
        let _ = writeln!(
            svg,
            r#"<text x="{x:.2}" y="{y:.2}" text-anchor="{anchor}">{}</text>"#,
            short(v)
        );
    }
    for (v, y) in [(y0, sy(y0)), (y1, sy(y1))] {
        let _ = writeln!(
            svg,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{}</text>"#,
            PAD - 4.0,
            y + 4.0,
            short(v)
        );
    }
    let path: Vec<String> = pts
        .iter()
        .map(|&(x, y)| format!("{:.2},{:.2}", sx(x), sy(y)))
        .collect();
    let _ = writeln!(
        svg,
        r#"<polyline points="{}" fill="none" stroke="steelblue" stroke-width="1.5"/>"#,
        path.join(" ")
    );
    svg.push_str("</svg>\n");
    svg
}

fn short(v: f64) -> String {
    if v != 0.0 && (v.abs() >= 1e5 || v.abs() < 1e-3) {
        format!("{v:.3e}")
    } else {
        format!("{v:.4}")
    }
}
