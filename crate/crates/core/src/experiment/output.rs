use std::fmt::Write as _;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use super::ResultRow;
use crate::error::{Error, Result};

pub const CSV_HEADER: [&str; 12] = [
    "family",
    "n",
    "k",
    "trial",
    "seed",
    "connected",
    "diam_lower",
    "diam_upper",
    "diam_exact",
    "covering_radius",
    "ratio",
    "elapsed_ms",
];

/// Header plus one record per row; `None` becomes an empty field.
pub fn write_csv<W: Write>(rows: &[ResultRow], out: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    w.write_record(CSV_HEADER)?;
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

pub fn emit_csv(rows: &[ResultRow], path: &Path) -> Result<()> {
    write_csv(rows, BufWriter::new(File::create(path)?))
}

pub fn read_csv(path: &Path) -> Result<Vec<ResultRow>> {
    let mut r = csv::Reader::from_path(path)?;
    let rows = r.deserialize().collect::<std::result::Result<Vec<ResultRow>, _>>()?;
    Ok(rows)
}

pub fn write_json<W: Write>(rows: &[ResultRow], mut out: W) -> Result<()> {
    serde_json::to_writer_pretty(&mut out, rows)?;
    out.write_all(b"\n")?;
    Ok(())
}

pub fn emit_json(rows: &[ResultRow], path: &Path) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    write_json(rows, &mut w)?;
    w.flush()?;
    Ok(())
}

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 400.0;
const LEFT: f64 = 70.0;
const RIGHT: f64 = 20.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 50.0;

/// (ln n, max ratio, median ratio) per distinct n, ascending.
fn series(rows: &[ResultRow]) -> Vec<(f64, f64, f64)> {
    let mut sorted: Vec<&ResultRow> = rows.iter().filter(|r| r.ratio.is_some()).collect();
    sorted.sort_by_key(|r| r.n);
    sorted
        .chunk_by(|a, b| a.n == b.n)
        .map(|cell| {
            let mut ratios: Vec<f64> = cell.iter().filter_map(|r| r.ratio).collect();
            ratios.sort_by(f64::total_cmp);
            let mid = ratios.len() / 2;
            let median = if ratios.len() % 2 == 1 { ratios[mid] } else { (ratios[mid - 1] + ratios[mid]) / 2.0 };
            ((cell[0].n as f64).ln(), ratios[ratios.len() - 1], median)
        })
        .collect()
}

fn scale(v: f64, lo: f64, hi: f64, out_lo: f64, out_hi: f64) -> f64 {
    if hi > lo {
        out_lo + (v - lo) / (hi - lo) * (out_hi - out_lo)
    } else {
        (out_lo + out_hi) / 2.0
    }
}

/// Line plot of the max and median ratio against ln n, as a standalone SVG
/// document.
pub fn render_svg(rows: &[ResultRow]) -> Result<String> {
    let family = rows.first().map(|r| r.family.as_str()).unwrap_or("");
    if rows.iter().any(|r| r.family != family) {
        return Err(Error::PreconditionUnmet("plot rows must share one family".into()));
    }
    let pts = series(rows);
    let (x_lo, x_hi) = pts.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), p| (lo.min(p.0), hi.max(p.0)));
    let y_hi = pts.iter().map(|p| p.1).fold(0.0, f64::max);
    let px = |x: f64| scale(x, x_lo, x_hi, LEFT, WIDTH - RIGHT);
    let py = |y: f64| scale(y, 0.0, y_hi, HEIGHT - BOTTOM, TOP);

    let mut s = String::new();
    s.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" viewBox=\"0 0 {WIDTH} {HEIGHT}\">"
    );
    let _ = writeln!(s, "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>");
    let _ = writeln!(
        s,
        "<text x=\"{}\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"15\">{}: diam_upper \u{b7} ln k / ln n</text>",
        WIDTH / 2.0,
        escape(family)
    );
    let (x0, y0, x1, y1) = (LEFT, HEIGHT - BOTTOM, WIDTH - RIGHT, TOP);
    let _ = writeln!(s, "<path d=\"M{x0} {y1} L{x0} {y0} L{x1} {y0}\" stroke=\"black\" fill=\"none\"/>");
    let _ = writeln!(
        s,
        "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">ln n</text>",
        (x0 + x1) / 2.0,
        HEIGHT - 12.0
    );
    let _ = writeln!(
        s,
        "<text x=\"{x0}\" y=\"{}\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">0</text>",
        y0 + 4.0
    );
    if !pts.is_empty() {
        let _ = writeln!(
            s,
            "<text x=\"{}\" y=\"{}\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">{y_hi:.2}</text>",
            x0 - 4.0,
            y1 + 4.0
        );
        for (x, label) in [(x_lo, x_lo), (x_hi, x_hi)] {
            let _ = writeln!(
                s,
                "<text x=\"{:.2}\" y=\"{}\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">{label:.2}</text>",
                px(x),
                y0 + 16.0
            );
        }
    }
    let median: Vec<String> = pts.iter().map(|p| format!("{:.2},{:.2}", px(p.0), py(p.2))).collect();
    if median.len() > 1 {
        let _ = writeln!(
            s,
            "<polyline class=\"median\" points=\"{}\" fill=\"none\" stroke=\"#2c6fbb\" stroke-width=\"2\" stroke-dasharray=\"6 4\"/>",
            median.join(" ")
        );
    }
    let max: Vec<(f64, f64)> = pts.iter().map(|p| (px(p.0), py(p.1))).collect();
    if max.len() > 1 {
        let points: Vec<String> = max.iter().map(|(x, y)| format!("{x:.2},{y:.2}")).collect();
        let _ = writeln!(
            s,
            "<polyline class=\"max\" points=\"{}\" fill=\"none\" stroke=\"#c0392b\" stroke-width=\"2\"/>",
            points.join(" ")
        );
    }
    for (x, y) in &max {
        let _ = writeln!(s, "<circle class=\"max\" cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"3.5\" fill=\"#c0392b\"/>");
    }
    let _ = writeln!(
        s,
        "<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"11\" fill=\"#c0392b\">max</text>",
        x1 - 90.0,
        y1 + 12.0
    );
    let _ = writeln!(
        s,
        "<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"11\" fill=\"#2c6fbb\">median</text>",
        x1 - 50.0,
        y1 + 12.0
    );
    s.push_str("</svg>\n");
    Ok(s)
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

pub fn emit_plot(rows: &[ResultRow], path: &Path) -> Result<()> {
    std::fs::write(path, render_svg(rows)?)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(n: usize, ratio: Option<f64>) -> ResultRow {
        ResultRow {
            family: "cyclic".into(),
            n,
            k: 3,
            trial: 0,
            seed: 1,
            connected: ratio.is_some(),
            diam_lower: None,
            diam_upper: None,
            diam_exact: None,
            covering_radius: None,
            ratio,
            elapsed_ms: None,
        }
    }

    #[test]
    fn empty_rows_give_header_only() {
        let mut buf = Vec::new();
        write_csv(&[], &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), CSV_HEADER.join(",") + "\n");
    }

    #[test]
    fn missing_values_are_empty_fields() {
        let mut buf = Vec::new();
        write_csv(&[row(10, None)], &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().nth(1).unwrap(), "cyclic,10,3,0,1,false,,,,,,");
    }

    #[test]
    fn single_point_plot() {
        let svg = render_svg(&[row(100, Some(1.5))]).unwrap();
        assert!(svg.starts_with("<?xml"));
        assert_eq!(svg.matches("<circle").count(), 1);
        assert!(!svg.contains("<polyline"));
    }

    #[test]
    fn mixed_families_rejected() {
        let mut other = row(10, Some(1.0));
        other.family = "sym".into();
        assert!(render_svg(&[row(10, Some(1.0)), other]).is_err());
    }
}
