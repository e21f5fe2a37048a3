//! Minimal deterministic SVG line plots of study reports.
//!
//! The output depends only on the report and the axes specs: fixed 800x600
//! viewport, fixed palette, fixed number formatting.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::report::{format_number, StudyReport};

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 600.0;
const PALETTE: [&str; 8] = ["#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf"];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scale {
    Linear,
    Log,
}

/// Horizontal reference line.
#[derive(Debug, Clone, PartialEq)]
pub struct HLine {
    pub y: f64,
    pub label: String,
}

/// One panel: a y column against an x column, split into series by the
/// distinct values of `series_by`.
#[derive(Debug, Clone, PartialEq)]
pub struct AxesSpec {
    pub title: String,
    pub x: String,
    pub y: String,
    pub x_scale: Scale,
    pub y_scale: Scale,
    pub series_by: Vec<String>,
    pub hlines: Vec<HLine>,
}

impl AxesSpec {
    pub fn new(title: &str, x: &str, y: &str) -> Self {
        Self {
            title: title.into(),
            x: x.into(),
            y: y.into(),
            x_scale: Scale::Linear,
            y_scale: Scale::Linear,
            series_by: Vec::new(),
            hlines: Vec::new(),
        }
    }

    pub fn log_x(mut self) -> Self {
        self.x_scale = Scale::Log;
        self
    }

    pub fn log_y(mut self) -> Self {
        self.y_scale = Scale::Log;
        self
    }

    pub fn series(mut self, columns: &[&str]) -> Self {
        self.series_by = columns.iter().map(|c| c.to_string()).collect();
        self
    }

    pub fn hline(mut self, y: f64, label: &str) -> Self {
        self.hlines.push(HLine { y, label: label.into() });
        self
    }
}

/// Default panels for each study.
pub fn recipe(study: &str) -> Result<Vec<AxesSpec>> {
    Ok(match study {
        "pass" => vec![
            AxesSpec::new("Elevation", "t_s", "elevation_deg"),
            AxesSpec::new("Range", "t_s", "range_km"),
            AxesSpec::new("System transmittance", "t_s", "eta_sys_db"),
            AxesSpec::new("Slew rate", "t_s", "slew_rad_s"),
        ],
        "skl" => vec![AxesSpec::new("Secret-key length", "dt_s", "skl_bits").series(&["pe_label"])],
        "fidelity" => vec![AxesSpec::new("Entanglement fidelity", "radiance", "fidelity")
            .log_x()
            .series(&["pe_label", "divergence_rad"])
            .hline(0.8, "F = 0.8")],
        "turbulence" => vec![
            AxesSpec::new("Greenwood frequency", "zenith_deg", "greenwood_hz")
                .series(&["wavelength_nm"])
                .hline(1500.0, "1.5 kHz"),
            AxesSpec::new("Fried length", "zenith_deg", "fried_m").series(&["wavelength_nm"]),
            AxesSpec::new("Scintillation index", "zenith_deg", "si").series(&["wavelength_nm"]).log_y(),
        ],
        other => return Err(Error::domain(format!("no plot recipe for study {other:?}"))),
    })
}

struct Series {
    label: String,
    points: Vec<(f64, f64)>,
}

/// The value as it appears in the CSV, so plotting a report and plotting
/// its parsed CSV give the same bytes.
fn as_written(v: f64) -> f64 {
    format_number(v).parse().unwrap_or(v)
}

fn usable(v: f64, scale: Scale) -> bool {
    v.is_finite() && (scale == Scale::Linear || v > 0.0)
}

fn collect_series(report: &StudyReport, spec: &AxesSpec) -> Result<Vec<Series>> {
    let col = |name: &str| {
        report
            .column_index(name)
            .ok_or_else(|| Error::domain(format!("report has no column {name:?}")))
    };
    let xi = col(&spec.x)?;
    let yi = col(&spec.y)?;
    let keys: Vec<usize> = spec.series_by.iter().map(|c| col(c)).collect::<Result<_>>()?;

    let mut series: Vec<Series> = Vec::new();
    for row in &report.rows {
        let label = keys
            .iter()
            .zip(&spec.series_by)
            .map(|(&k, name)| format!("{name}={}", row[k]))
            .collect::<Vec<_>>()
            .join(" ");
        let (Some(x), Some(y)) = (row[xi].as_f64().map(as_written), row[yi].as_f64().map(as_written)) else { continue };
        if !usable(x, spec.x_scale) || !usable(y, spec.y_scale) {
            continue;
        }
        match series.iter_mut().find(|s| s.label == label) {
            Some(s) => s.points.push((x, y)),
            None => series.push(Series { label, points: vec![(x, y)] }),
        }
    }
    Ok(series)
}

struct Axis {
    lo: f64,
    hi: f64,
    scale: Scale,
}

impl Axis {
    fn fit(values: impl Iterator<Item = f64>, scale: Scale) -> Self {
        let (mut lo, mut hi) = values.fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), v| (a.min(v), b.max(v)));
        if !lo.is_finite() {
            (lo, hi) = if scale == Scale::Log { (1.0, 10.0) } else { (0.0, 1.0) };
        }
        match scale {
            Scale::Log => {
                lo = 10f64.powf(lo.log10().floor());
                hi = 10f64.powf(hi.log10().ceil());
                if hi <= lo {
                    hi = lo * 10.0;
                }
            }
            Scale::Linear => {
                if hi <= lo {
                    let pad = if lo == 0.0 { 1.0 } else { lo.abs() * 0.1 };
                    lo -= pad;
                    hi += pad;
                }
                let step = nice_step((hi - lo) / 5.0);
                lo = (lo / step).floor() * step;
                hi = (hi / step).ceil() * step;
            }
        }
        Self { lo, hi, scale }
    }

    fn frac(&self, v: f64) -> f64 {
        match self.scale {
            Scale::Linear => (v - self.lo) / (self.hi - self.lo),
            Scale::Log => (v.log10() - self.lo.log10()) / (self.hi.log10() - self.lo.log10()),
        }
    }

    fn ticks(&self) -> Vec<f64> {
        match self.scale {
            Scale::Log => {
                let (a, b) = (self.lo.log10().round() as i32, self.hi.log10().round() as i32);
                let stride = ((b - a) as f64 / 8.0).ceil().max(1.0) as i32;
                (a..=b).step_by(stride as usize).map(|e| 10f64.powi(e)).collect()
            }
            Scale::Linear => {
                let step = nice_step((self.hi - self.lo) / 5.0);
                let first = (self.lo / step).round() as i64;
                let n = ((self.hi - self.lo) / step).round() as i64;
                (first..=first + n).map(|i| i as f64 * step).collect()
            }
        }
    }
}

fn nice_step(raw: f64) -> f64 {
    let mag = 10f64.powf(raw.log10().floor());
    let r = raw / mag;
    let m = if r <= 1.0 {
        1.0
    } else if r <= 2.0 {
        2.0
    } else if r <= 5.0 {
        5.0
    } else {
        10.0
    };
    m * mag
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}


fn panel(out: &mut String, spec: &AxesSpec, series: &[Series], x0: f64, y0: f64, w: f64, h: f64) {
    let (ml, mr, mt, mb) = (70.0, 15.0, 28.0, 45.0);
    let (px, py, pw, ph) = (x0 + ml, y0 + mt, w - ml - mr, h - mt - mb);
    let xs = series.iter().flat_map(|s| s.points.iter().map(|p| p.0));
    let ys = series
        .iter()
        .flat_map(|s| s.points.iter().map(|p| p.1))
        .chain(spec.hlines.iter().map(|l| l.y).filter(|y| usable(*y, spec.y_scale)));
    let ax = Axis::fit(xs, spec.x_scale);
    let ay = Axis::fit(ys, spec.y_scale);
    let sx = |v: f64| px + ax.frac(v) * pw;
    let sy = |v: f64| py + ph - ay.frac(v) * ph;

    let _ = writeln!(out, "<g>");
    let _ = writeln!(
        out,
        "<text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"middle\" font-size=\"14\">{}</text>",
        px + pw / 2.0,
        y0 + 18.0,
        escape(&spec.title)
    );
    let _ = writeln!(
        out,
        "<rect x=\"{px:.2}\" y=\"{py:.2}\" width=\"{pw:.2}\" height=\"{ph:.2}\" fill=\"none\" stroke=\"#000\"/>"
    );
    for t in ax.ticks() {
        let x = sx(t);
        let _ = writeln!(out, "<line x1=\"{x:.2}\" y1=\"{:.2}\" x2=\"{x:.2}\" y2=\"{:.2}\" stroke=\"#000\"/>", py + ph, py + ph + 4.0);
        let _ = writeln!(
            out,
            "<text x=\"{x:.2}\" y=\"{:.2}\" text-anchor=\"middle\" font-size=\"10\">{}</text>",
            py + ph + 15.0,
            format_number(t)
        );
    }
    for t in ay.ticks() {
        let y = sy(t);
        let _ = writeln!(out, "<line x1=\"{:.2}\" y1=\"{y:.2}\" x2=\"{px:.2}\" y2=\"{y:.2}\" stroke=\"#000\"/>", px - 4.0);
        let _ = writeln!(
            out,
            "<text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"end\" font-size=\"10\">{}</text>",
            px - 6.0,
            y + 3.0,
            format_number(t)
        );
    }
    let _ = writeln!(
        out,
        "<text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"middle\" font-size=\"11\">{}</text>",
        px + pw / 2.0,
        py + ph + 32.0,
        escape(&spec.x)
    );
    let _ = writeln!(
        out,
        "<text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"middle\" font-size=\"11\" transform=\"rotate(-90 {:.2} {:.2})\">{}</text>",
        x0 + 14.0,
        py + ph / 2.0,
        x0 + 14.0,
        py + ph / 2.0,
        escape(&spec.y)
    );

    for line in spec.hlines.iter().filter(|l| usable(l.y, spec.y_scale)) {
        let y = sy(line.y);
        let _ = writeln!(
            out,
            "<line x1=\"{px:.2}\" y1=\"{y:.2}\" x2=\"{:.2}\" y2=\"{y:.2}\" stroke=\"#555\" stroke-dasharray=\"6 4\"/>",
            px + pw
        );
        let _ = writeln!(
            out,
            "<text x=\"{:.2}\" y=\"{:.2}\" font-size=\"10\" fill=\"#555\">{}</text>",
            px + 4.0,
            y - 4.0,
            escape(&line.label)
        );
    }

    for (i, s) in series.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        if let [(x, y)] = s.points.as_slice() {
            let _ = writeln!(out, "<circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"3\" fill=\"{color}\"/>", sx(*x), sy(*y));
        } else {
            let pts: Vec<String> = s.points.iter().map(|(x, y)| format!("{:.2},{:.2}", sx(*x), sy(*y))).collect();
            let _ = writeln!(
                out,
                "<polyline points=\"{}\" fill=\"none\" stroke=\"{color}\" stroke-width=\"1.5\"/>",
                pts.join(" ")
            );
        }
    }

    let labelled: Vec<(usize, &Series)> = series.iter().enumerate().filter(|(_, s)| !s.label.is_empty()).collect();
    if !labelled.is_empty() {
        let _ = writeln!(out, "<g font-size=\"10\">");
        for (row, (i, s)) in labelled.iter().enumerate() {
            let y = py + 12.0 + row as f64 * 13.0;
            let x = px + pw - 190.0;
            let color = PALETTE[i % PALETTE.len()];
            let _ = writeln!(
                out,
                "<line x1=\"{x:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke=\"{color}\" stroke-width=\"2\"/>",
                y - 3.0,
                x + 16.0,
                y - 3.0
            );
            let _ = writeln!(out, "<text x=\"{:.2}\" y=\"{y:.2}\">{}</text>", x + 20.0, escape(&s.label));
        }
        let _ = writeln!(out, "</g>");
    }
    let _ = writeln!(out, "</g>");
}

/// Renders the panels as one SVG document. Panels fill a grid of up to two
/// columns.
pub fn emit_svg(report: &StudyReport, axes: &[AxesSpec]) -> Result<String> {
    if report.rows.is_empty() {
        return Err(Error::EmptyReport(format!("study {:?} has no rows to plot", report.study)));
    }
    if axes.is_empty() {
        return Err(Error::domain("no axes to draw"));
    }
    let cols = axes.len().min(2);
    let rows = axes.len().div_ceil(cols);
    let (w, h) = (WIDTH / cols as f64, HEIGHT / rows as f64);

    let mut out = String::new();
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" viewBox=\"0 0 {WIDTH} {HEIGHT}\" font-family=\"sans-serif\">"
    );
    let _ = writeln!(out, "<rect width=\"{WIDTH}\" height=\"{HEIGHT}\" fill=\"#fff\"/>");
    for (i, spec) in axes.iter().enumerate() {
        let series = collect_series(report, spec)?;
        let (c, r) = (i % cols, i / cols);
        panel(&mut out, spec, &series, c as f64 * w, r as f64 * h, w, h);
    }
    out.push_str("</svg>\n");
    Ok(out)
}
