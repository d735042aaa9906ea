//! Minimal SVG rendering: the curve as a polyline path plus witness markers
//! with labels. No styling framework, just enough to eyeball a report.

use crate::curve::SampledCurve;
use crate::geom::Point2;

/// A marked point, drawn as a circle with an optional label and radius
/// (radius 0 draws a dot scaled to the canvas).
#[derive(Debug, Clone)]
pub struct Marker {
    pub at: Point2,
    pub radius: f64,
    pub label: String,
}

pub fn render_svg(curve: &SampledCurve, markers: &[Marker]) -> String {
    let xs = curve.vertices().iter().map(|p| p.x);
    let ys = curve.vertices().iter().map(|p| p.y);
    let (mut xmin, mut xmax) = (f64::INFINITY, f64::NEG_INFINITY);
    let (mut ymin, mut ymax) = (f64::INFINITY, f64::NEG_INFINITY);
    for x in xs {
        xmin = xmin.min(x);
        xmax = xmax.max(x);
    }
    for y in ys {
        ymin = ymin.min(y);
        ymax = ymax.max(y);
    }
    for m in markers {
        xmin = xmin.min(m.at.x - m.radius);
        xmax = xmax.max(m.at.x + m.radius);
        ymin = ymin.min(m.at.y - m.radius);
        ymax = ymax.max(m.at.y + m.radius);
    }
    let span = (xmax - xmin).max(ymax - ymin).max(1e-9);
    let margin = 0.05 * span;
    let (x0, y0) = (xmin - margin, ymin - margin);
    let w = xmax - xmin + 2.0 * margin;
    let h = ymax - ymin + 2.0 * margin;
    // Flip y so the curve appears in the usual orientation.
    let fy = |y: f64| y0 + h - (y - y0);
    let stroke = 0.004 * span;
    let dot = 0.008 * span;
    let font = 0.04 * span;

    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{x0} {y0} {w} {h}\">\n"
    ));
    let mut d = String::new();
    for (i, p) in curve.vertices().iter().enumerate() {
        let cmd = if i == 0 { 'M' } else { 'L' };
        d.push_str(&format!("{cmd}{} {} ", p.x, fy(p.y)));
    }
    if curve.is_closed() {
        d.push('Z');
    }
    out.push_str(&format!(
        "  <path d=\"{d}\" fill=\"none\" stroke=\"black\" stroke-width=\"{stroke}\"/>\n"
    ));
    for m in markers {
        let r = if m.radius > 0.0 { m.radius } else { dot };
        let fill = if m.radius > 0.0 { "none" } else { "red" };
        out.push_str(&format!(
            "  <circle cx=\"{}\" cy=\"{}\" r=\"{r}\" fill=\"{fill}\" stroke=\"red\" stroke-width=\"{stroke}\"/>\n",
            m.at.x,
            fy(m.at.y)
        ));
        if !m.label.is_empty() {
            out.push_str(&format!(
                "  <text x=\"{}\" y=\"{}\" font-size=\"{font}\" fill=\"red\">{}</text>\n",
                m.at.x + dot,
                fy(m.at.y) - dot,
                xml_escape(&m.label)
            ));
        }
    }
    out.push_str("</svg>\n");
    out
}

fn xml_escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
