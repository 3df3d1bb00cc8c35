//! Minimal SVG 1.1 scatter plots of 2-D labelings.

use std::fmt::Write as _;

use crate::types::{Dataset, OUTLIER};

/// Fill colors cycled by cluster id.
pub const PALETTE: [&str; 10] = [
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#17becf",
    "#bcbd22", "#393b79",
];

pub const OUTLIER_COLOR: &str = "#9e9e9e";

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 480.0;
const MARGIN: f64 = 40.0;

pub fn label_color(label: i64) -> &'static str {
    if label == OUTLIER || label < 0 {
        OUTLIER_COLOR
    } else {
        PALETTE[label as usize % PALETTE.len()]
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

/// Renders the first two coordinates of every point as one `<circle>`,
/// colored by label. Datasets with one coordinate are drawn on a line.
pub fn scatter_svg(ds: &Dataset, labels: &[i64], title: &str) -> String {
    assert_eq!(labels.len(), ds.len(), "one label per point");
    let lo = ds.lower_bounds();
    let hi = ds.upper_bounds();
    let axis = |k: usize| -> (f64, f64) {
        if k < ds.dim() {
            let span = hi[k] - lo[k];
            (lo[k], if span > 0.0 { span } else { 1.0 })
        } else {
            (0.0, 1.0)
        }
    };
    let (x0, xs) = axis(0);
    let (y0, ys) = axis(1);
    let pw = WIDTH - 2.0 * MARGIN;
    let ph = HEIGHT - 2.0 * MARGIN;

    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(
        out,
        r#"<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#
    );
    let _ = writeln!(
        out,
        r##"<rect x="{MARGIN}" y="{MARGIN}" width="{pw}" height="{ph}" fill="none" stroke="#cccccc"/>"##
    );
    let _ = writeln!(
        out,
        r#"<text x="{}" y="{}" font-family="sans-serif" font-size="14" text-anchor="middle">{}</text>"#,
        WIDTH / 2.0,
        MARGIN / 2.0 + 5.0,
        escape(title)
    );
    let _ = writeln!(out, "<g>");
    for (p, &l) in ds.points().zip(labels) {
        let px = MARGIN + (p[0] - x0) / xs * pw;
        let py = if ds.dim() > 1 {
            HEIGHT - MARGIN - (p[1] - y0) / ys * ph
        } else {
            HEIGHT / 2.0
        };
        let _ = writeln!(
            out,
            r#"<circle cx="{px:.2}" cy="{py:.2}" r="3" fill="{}" fill-opacity="0.85"/>"#,
            label_color(l)
        );
    }
    let _ = writeln!(out, "</g>");
    let _ = writeln!(out, "</svg>");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::types::validate_dataset;

    #[test]
    fn one_circle_per_point() {
        let ds = validate_dataset(&[vec![0.0, 0.0], vec![1.0, 2.0], vec![1.0, 2.0]]).unwrap();
        let svg = scatter_svg(&ds, &[0, -1, 12], "a <b> & c");
        assert_eq!(svg.matches("<circle").count(), 3);
        assert!(svg.contains(OUTLIER_COLOR));
        assert!(svg.contains(PALETTE[2]));
        assert!(svg.contains("a &lt;b&gt; &amp; c"));
    }

    #[test]
    fn degenerate_extent() {
        let ds = validate_dataset(&[vec![5.0], vec![5.0]]).unwrap();
        let svg = scatter_svg(&ds, &[0, 0], "");
        assert!(!svg.contains("NaN") && !svg.contains("inf"));
    }
}
