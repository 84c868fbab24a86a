use std::fmt::Write;

use num_complex::Complex64;

pub const RED: &str = "#c0392b";
pub const BLUE: &str = "#2166ac";
const PALETTE: [&str; 6] = [RED, BLUE, "#1b7837", "#762a83", "#e08214", "#35978f"];

pub fn palette(i: usize) -> &'static str {
    PALETTE[i % PALETTE.len()]
}

pub struct Series<'a> {
    pub label: String,
    pub colour: &'a str,
    pub points: Vec<Complex64>,
}

/// Affine map from the u-plane onto the unit square, same scale on both
/// axes, fitted to the points and the lines Re u = 0, 1 with a 5% margin.
struct Frame {
    centre: Complex64,
    scale: f64,
}

impl Frame {
    fn fit(points: &[Complex64]) -> Frame {
        let (mut x0, mut x1, mut y0, mut y1) = (0.0f64, 1.0f64, 0.0f64, 0.0f64);
        for z in points {
            x0 = x0.min(z.re);
            x1 = x1.max(z.re);
            y0 = y0.min(z.im);
            y1 = y1.max(z.im);
        }
        let span = (x1 - x0).max(y1 - y0).max(1e-12);
        Frame { centre: Complex64::new((x0 + x1) / 2.0, (y0 + y1) / 2.0), scale: 0.9 / span }
    }

    fn x(&self, re: f64) -> f64 {
        0.5 + (re - self.centre.re) * self.scale
    }

    fn y(&self, im: f64) -> f64 {
        0.5 - (im - self.centre.im) * self.scale
    }
}

/// Scatter plot in a `0 0 1 1` view box. Each series is a `<g>` of circles;
/// `marks` are drawn as crosses.
pub fn scatter(title: &str, series: &[Series], marks: &[Complex64]) -> String {
    let all: Vec<Complex64> =
        series.iter().flat_map(|s| s.points.iter().copied()).chain(marks.iter().copied()).collect();
    let frame = Frame::fit(&all);
    let mut svg = String::new();
    let _ = writeln!(svg, r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 1 1" width="600" height="600">"#);
    let _ = writeln!(svg, "<title>{}</title>", escape(title));
    let _ = writeln!(svg, r#"<rect x="0" y="0" width="1" height="1" fill="white"/>"#);
    let _ = writeln!(
        svg,
        r##"<line class="real-axis" x1="0" y1="{y:.6}" x2="1" y2="{y:.6}" stroke="#bbbbbb" stroke-width="0.002"/>"##,
        y = frame.y(0.0)
    );
    for re in [0.0, 1.0] {
        let _ = writeln!(
            svg,
            r#"<line class="axis" data-re="{re}" x1="{x:.6}" y1="0" x2="{x:.6}" y2="1" stroke="black" stroke-width="0.003"/>"#,
            x = frame.x(re)
        );
    }
    for s in series {
        let _ = writeln!(svg, r#"<g class="series" data-label="{}" fill="{}">"#, escape(&s.label), s.colour);
        for z in &s.points {
            let _ = writeln!(
                svg,
                r#"<circle class="point" cx="{:.6}" cy="{:.6}" r="0.006"/>"#,
                frame.x(z.re),
                frame.y(z.im)
            );
        }
        svg.push_str("</g>\n");
    }
    for z in marks {
        let (x, y, d) = (frame.x(z.re), frame.y(z.im), 0.012);
        let _ = writeln!(
            svg,
            r#"<path class="mark" d="M{:.6} {:.6}L{:.6} {:.6}M{:.6} {:.6}L{:.6} {:.6}" stroke="black" stroke-width="0.003"/>"#,
            x - d,
            y - d,
            x + d,
            y + d,
            x - d,
            y + d,
            x + d,
            y - d
        );
    }
    svg.push_str("</svg>\n");
    svg
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}
