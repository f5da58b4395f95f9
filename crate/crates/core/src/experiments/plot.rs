//! Log-log SVG plots of error against mesh size.

use std::fmt::Write as _;

use super::convergence::ConvergenceRow;
use crate::error::{Error, Result};

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 480.0;
const MARGIN: f64 = 60.0;
const COLORS: [&str; 4] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd"];

/// Error curves for every available norm plus dashed reference slopes 1 and 2
/// through the coarsest point of the first curve.
pub fn emit_plot(rows: &[ConvergenceRow]) -> Result<String> {
    if rows.len() < 2 {
        return Err(Error::TooFewPoints(rows.len()));
    }
    let mut series: Vec<(&str, Vec<(f64, f64)>)> = vec![
        ("L2", rows.iter().map(|r| (r.h, r.err_l2)).collect()),
        ("H1 broken", rows.iter().map(|r| (r.h, r.err_h1)).collect()),
    ];
    if rows.iter().all(|r| r.err_p_l2.is_some()) {
        series.push(("pressure L2", rows.iter().map(|r| (r.h, r.err_p_l2.unwrap())).collect()));
    }
    if rows.iter().all(|r| r.err_h2.is_some()) {
        series.push(("H2 broken", rows.iter().map(|r| (r.h, r.err_h2.unwrap())).collect()));
    }

    let (h0, e0) = series[0].1[0];
    let h1 = rows.last().unwrap().h;
    let references: Vec<(String, Vec<(f64, f64)>)> = [1.0, 2.0]
        .iter()
        .map(|&k: &f64| (format!("slope {k}"), vec![(h0, e0), (h1, e0 * (h1 / h0).powf(k))]))
        .collect();

    let all = series.iter().flat_map(|s| s.1.iter()).chain(references.iter().flat_map(|r| r.1.iter()));
    let (mut xmin, mut xmax, mut ymin, mut ymax) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for &(h, e) in all {
        if h <= 0.0 || e <= 0.0 || !h.is_finite() || !e.is_finite() {
            continue;
        }
        xmin = xmin.min(h.log10());
        xmax = xmax.max(h.log10());
        ymin = ymin.min(e.log10());
        ymax = ymax.max(e.log10());
    }
    if xmax <= xmin {
        xmax = xmin + 1.0;
    }
    if ymax <= ymin {
        ymax = ymin + 1.0;
    }
    // one axis scale for both directions keeps slopes geometric
    let span = (xmax - xmin).max(ymax - ymin);
    let scale = ((WIDTH - 2.0 * MARGIN) / span).min((HEIGHT - 2.0 * MARGIN) / span);
    let px = |h: f64| MARGIN + (h.log10() - xmin) * scale;
    let py = |e: f64| HEIGHT - MARGIN - (e.log10() - ymin) * scale;
    let path = |pts: &[(f64, f64)]| {
        pts.iter()
            .filter(|(h, e)| *h > 0.0 && *e > 0.0)
            .map(|&(h, e)| format!("{:.2},{:.2}", px(h), py(e)))
            .collect::<Vec<_>>()
            .join(" ")
    };

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<text x="{:.2}" y="{:.2}" font-size="12" text-anchor="middle">h (log scale)</text>"#,
        WIDTH / 2.0,
        HEIGHT - 15.0
    );
    let _ = writeln!(
        s,
        r#"<text x="15" y="{:.2}" font-size="12" transform="rotate(-90 15 {:.2})" text-anchor="middle">error (log scale)</text>"#,
        HEIGHT / 2.0,
        HEIGHT / 2.0
    );
    for (name, pts) in &references {
        let _ = writeln!(
            s,
            r##"<polyline points="{}" fill="none" stroke="#888888" stroke-dasharray="6,4"><title>{name}</title></polyline>"##,
            path(pts)
        );
    }
    for (i, (name, pts)) in series.iter().enumerate() {
        let color = COLORS[i % COLORS.len()];
        let _ = writeln!(
            s,
            r#"<polyline points="{}" fill="none" stroke="{color}" stroke-width="2"><title>{name}</title></polyline>"#,
            path(pts)
        );
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" font-size="12" fill="{color}">{name}</text>"#,
            WIDTH - MARGIN - 90.0,
            MARGIN + 16.0 * i as f64
        );
    }
    s.push_str("</svg>\n");
    Ok(s)
}
