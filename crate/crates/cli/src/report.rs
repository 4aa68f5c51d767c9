//! Output: byte-deterministic CSV and a dependency-free quick-look SVG
//! (polyline for one swept axis, heatmap panels for two).

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use crate::config::{Emit, Scan};
use crate::rows::Row;
use crate::CliError;

pub const CSV_HEADER: &str =
    "channel,sector,p,ra,rb,omega,T,k,concurrence_analytic,concurrence_numeric,abs_delta";

/// Fixed-width scientific notation, 17 significant digits: byte-identical
/// for equal inputs on every platform.
pub fn fmt_float(x: f64) -> String {
    format!("{x:.16e}")
}

fn fmt_opt(x: Option<f64>) -> String {
    // unused fields stay empty, never 0
    x.map(fmt_float).unwrap_or_default()
}

pub fn csv_line(row: &Row) -> String {
    format!(
        "{},{},{},{},{},{},{},{},{},{},{}",
        row.channel_label(),
        row.sector,
        fmt_float(row.p),
        fmt_float(row.ra),
        fmt_float(row.rb),
        fmt_opt(row.omega),
        fmt_opt(row.temp),
        fmt_opt(row.k),
        fmt_float(row.analytic),
        fmt_float(row.numeric),
        fmt_float((row.analytic - row.numeric).abs()),
    )
}

pub fn csv_document(rows: &[Row]) -> String {
    let mut doc = String::with_capacity(64 * (rows.len() + 1));
    doc.push_str(CSV_HEADER);
    doc.push('\n');
    for row in rows {
        doc.push_str(&csv_line(row));
        doc.push('\n');
    }
    doc
}

pub fn write_file(path: &Path, content: &str) -> Result<(), CliError> {
    std::fs::write(path, content).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

/// Write the scan output(s): CSV verbatim to `--out`; with `both`, the
/// extension is replaced so `base.csv` and `base.svg` sit side by side.
pub fn emit(scan: &Scan, rows: &[Row]) -> Result<(), CliError> {
    let out = scan.out.as_deref().expect("sweep always has an out path");
    match scan.emit {
        Emit::Csv => write_file(out, &csv_document(rows)),
        Emit::Svg => write_file(out, &render_svg(scan, rows)?),
        Emit::Both => {
            let base: PathBuf = match out.extension() {
                Some(_) => out.with_extension(""),
                None => out.to_path_buf(),
            };
            write_file(&base.with_extension("csv"), &csv_document(rows))?;
            write_file(&base.with_extension("svg"), &render_svg(scan, rows)?)
        }
    }
}

// ---------------------------------------------------------------------------
// SVG
// ---------------------------------------------------------------------------

/// The value of the swept axis named `axis` at a given row.
fn axis_value(axis: &str, row: &Row) -> f64 {
    match axis {
        "p" => row.p,
        "ra" => row.ra,
        "rb" => row.rb,
        "omega" => row.omega.unwrap_or(f64::NAN),
        "T" => row.temp.unwrap_or(f64::NAN),
        "k" => row.k.unwrap_or(f64::NAN),
        _ => f64::NAN,
    }
}

const SERIES_COLORS: [&str; 4] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd"];

fn render_svg(scan: &Scan, rows: &[Row]) -> Result<String, CliError> {
    let swept = scan.swept_axes();
    match swept.as_slice() {
        [x] => Ok(render_lines(scan, rows, x)),
        [y, x] => Ok(render_heatmaps(scan, rows, x, y)),
        _ => Err(CliError::Usage(format!(
            "SVG needs one or two swept axes, got {}",
            swept.len()
        ))),
    }
}

/// One chart, concurrence vs the swept axis, one polyline per sector.
fn render_lines(scan: &Scan, rows: &[Row], axis: &str) -> String {
    let (w, h) = (800.0, 500.0);
    let (left, right, top, bottom) = (70.0, 770.0, 40.0, 440.0);

    let xs: Vec<f64> = rows.iter().map(|r| axis_value(axis, r)).collect();
    let (xmin, xmax) = bounds(&xs);
    let ymax = rows
        .iter()
        .map(|r| r.analytic)
        .fold(0.0f64, f64::max)
        .max(1e-12);
    let to_x = |v: f64| left + (right - left) * (v - xmin) / (xmax - xmin).max(1e-300);
    let to_y = |v: f64| bottom - (bottom - top) * v / ymax;

    let mut svg = svg_open(w, h);
    chart_frame(&mut svg, left, right, top, bottom, xmin, xmax, ymax, axis);

    for (i, &sector) in scan.sectors.iter().enumerate() {
        let color = SERIES_COLORS[i % SERIES_COLORS.len()];
        let mut points = String::new();
        for row in rows.iter().filter(|r| r.sector == sector) {
            let _ = write!(
                points,
                "{:.2},{:.2} ",
                to_x(axis_value(axis, row)),
                to_y(row.analytic)
            );
        }
        let _ = writeln!(
            svg,
            r#"<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{}"/>"#,
            points.trim_end()
        );
        // legend swatch + label
        let ly = top + 16.0 * i as f64;
        let _ = writeln!(
            svg,
            r#"<line x1="{0}" y1="{ly}" x2="{1}" y2="{ly}" stroke="{color}" stroke-width="3"/><text x="{2}" y="{3}" font-size="12">{sector}</text>"#,
            right - 130.0,
            right - 105.0,
            right - 100.0,
            ly + 4.0
        );
    }
    svg.push_str("</svg>\n");
    svg
}

/// One heatmap panel per sector, analytic concurrence as cell brightness.
fn render_heatmaps(scan: &Scan, rows: &[Row], x_axis: &str, y_axis: &str) -> String {
    let panel = 260.0;
    let (margin, gap) = (60.0, 40.0);
    let n = scan.sectors.len() as f64;
    let w = margin + n * (panel + gap);
    let h = panel + 2.0 * margin;
    let mut svg = svg_open(w, h);

    let vmax = rows
        .iter()
        .map(|r| r.analytic)
        .fold(0.0f64, f64::max)
        .max(1e-12);

    for (i, &sector) in scan.sectors.iter().enumerate() {
        let x0 = margin + i as f64 * (panel + gap);
        let y0 = margin;
        let sub: Vec<&Row> = rows.iter().filter(|r| r.sector == sector).collect();
        let mut xs: Vec<f64> = sub.iter().map(|r| axis_value(x_axis, r)).collect();
        let mut ys: Vec<f64> = sub.iter().map(|r| axis_value(y_axis, r)).collect();
        dedup_sorted(&mut xs);
        dedup_sorted(&mut ys);
        let (nx, ny) = (xs.len() as f64, ys.len() as f64);
        let (cw, ch) = (panel / nx, panel / ny);
        for row in &sub {
            let ix = index_of(&xs, axis_value(x_axis, row));
            let iy = index_of(&ys, axis_value(y_axis, row));
            let t = row.analytic / vmax;
            // white (0) → deep blue (max)
            let c = (255.0 * (1.0 - t)) as u8;
            let _ = writeln!(
                svg,
                r#"<rect x="{:.2}" y="{:.2}" width="{cw:.2}" height="{ch:.2}" fill="rgb({c},{c},255)"/>"#,
                x0 + ix as f64 * cw,
                y0 + panel - (iy + 1) as f64 * ch,
            );
        }
        let _ = writeln!(
            svg,
            r#"<rect x="{x0}" y="{y0}" width="{panel}" height="{panel}" fill="none" stroke="black"/><text x="{}" y="{}" font-size="13" text-anchor="middle">{sector}</text><text x="{}" y="{}" font-size="12" text-anchor="middle">{x_axis}</text>"#,
            x0 + panel / 2.0,
            y0 - 8.0,
            x0 + panel / 2.0,
            y0 + panel + 24.0,
        );
        if i == 0 {
            let _ = writeln!(
                svg,
                r#"<text x="{}" y="{}" font-size="12" text-anchor="middle" transform="rotate(-90 {} {})">{y_axis}</text>"#,
                x0 - 24.0,
                y0 + panel / 2.0,
                x0 - 24.0,
                y0 + panel / 2.0,
            );
        }
    }
    let _ = writeln!(
        svg,
        r#"<text x="{margin}" y="{}" font-size="11">scale: white = 0, blue = {}</text>"#,
        h - 12.0,
        fmt_float(vmax)
    );
    svg.push_str("</svg>\n");
    svg
}

fn svg_open(w: f64, h: f64) -> String {
    format!(
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}" font-family="sans-serif">
<rect width="{w}" height="{h}" fill="white"/>
"#
    )
}

#[allow(clippy::too_many_arguments)]
fn chart_frame(
    svg: &mut String,
    left: f64,
    right: f64,
    top: f64,
    bottom: f64,
    xmin: f64,
    xmax: f64,
    ymax: f64,
    axis: &str,
) {
    let _ = writeln!(
        svg,
        r#"<rect x="{left}" y="{top}" width="{}" height="{}" fill="none" stroke="black"/>"#,
        right - left,
        bottom - top
    );
    for i in 0..=4 {
        let f = i as f64 / 4.0;
        let x = left + (right - left) * f;
        let y = bottom - (bottom - top) * f;
        let _ = writeln!(
            svg,
            r#"<text x="{x:.1}" y="{}" font-size="11" text-anchor="middle">{:.4}</text>
<text x="{}" y="{:.1}" font-size="11" text-anchor="end">{:.4}</text>"#,
            bottom + 16.0,
            xmin + (xmax - xmin) * f,
            left - 6.0,
            y + 4.0,
            ymax * f,
        );
    }
    let _ = writeln!(
        svg,
        r#"<text x="{}" y="{}" font-size="13" text-anchor="middle">{axis}</text>
<text x="16" y="{}" font-size="13" text-anchor="middle" transform="rotate(-90 16 {})">concurrence</text>"#,
        (left + right) / 2.0,
        bottom + 36.0,
        (top + bottom) / 2.0,
        (top + bottom) / 2.0,
    );
}

fn bounds(values: &[f64]) -> (f64, f64) {
    let lo = values.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    (lo, hi)
}

fn dedup_sorted(values: &mut Vec<f64>) {
    values.sort_by(|a, b| a.partial_cmp(b).expect("finite axis values"));
    values.dedup();
}

fn index_of(sorted: &[f64], v: f64) -> usize {
    sorted
        .iter()
        .position(|&x| x == v)
        .expect("axis value came from the same rows")
}
